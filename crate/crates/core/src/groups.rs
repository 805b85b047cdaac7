//! Grading groups: finite groups given by Cayley tables, and the integers.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("not a group: {0}")]
    NotAGroup(NotAGroupReason),
    #[error("element does not belong to this group")]
    GroupMismatch,
    #[error("cyclic group order must be at least 1")]
    EmptyGroup,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotAGroupReason {
    BadShape,
    NotAssociative,
    NoIdentity,
    NoInverse,
}

impl fmt::Display for NotAGroupReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NotAGroupReason::BadShape => "table shape does not match labels",
            NotAGroupReason::NotAssociative => "not associative",
            NotAGroupReason::NoIdentity => "no two-sided identity",
            NotAGroupReason::NoInverse => "some element has no inverse",
        };
        f.write_str(s)
    }
}

/// An element of a [`GradingGroup`]: a table index or an integer exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Finite(usize),
    Int(i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GradingGroup {
    Finite {
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
        identity: usize,
        inverses: Vec<usize>,
    },
    Integers,
}

impl GradingGroup {
    /// Validates a Cayley table (`table[a][b]` is the index of `a * b`).
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = labels.len();
        let bad = |r| Err(GroupError::NotAGroup(r));
        if n == 0 || table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return bad(NotAGroupReason::BadShape);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(NotAGroupReason::NotAssociative);
                    }
                }
            }
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g)) else {
            return bad(NotAGroupReason::NoIdentity);
        };
        let mut inverses = Vec::with_capacity(n);
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == identity && table[h][g] == identity) {
                Some(h) => inverses.push(h),
                None => return bad(NotAGroupReason::NoInverse),
            }
        }
        Ok(GradingGroup::Finite {
            labels,
            table,
            identity,
            inverses,
        })
    }

    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::EmptyGroup);
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(labels, table)
    }

    pub fn integers() -> Self {
        GradingGroup::Integers
    }

    /// Direct product of two finite groups; labels are `(a,b)`, ordered
    /// with the second factor varying fastest.
    pub fn direct_product(g: &GradingGroup, h: &GradingGroup) -> Result<Self, GroupError> {
        let (
            GradingGroup::Finite {
                labels: lg, table: tg, ..
            },
            GradingGroup::Finite {
                labels: lh, table: th, ..
            },
        ) = (g, h)
        else {
            return Err(GroupError::GroupMismatch);
        };
        let m = lh.len();
        let mut labels = Vec::new();
        for a in lg {
            for b in lh {
                labels.push(format!("({a},{b})"));
            }
        }
        let n = labels.len();
        let table = (0..n)
            .map(|x| (0..n).map(|y| tg[x / m][y / m] * m + th[x % m][y % m]).collect())
            .collect();
        Self::from_table(labels, table)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, GradingGroup::Finite { .. })
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            GradingGroup::Finite { labels, .. } => Some(labels.len()),
            GradingGroup::Integers => None,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GradingGroup::Finite { identity, .. } => GroupElement::Finite(*identity),
            GradingGroup::Integers => GroupElement::Int(0),
        }
    }

    pub fn contains(&self, g: GroupElement) -> bool {
        match (self, g) {
            (GradingGroup::Finite { labels, .. }, GroupElement::Finite(i)) => i < labels.len(),
            (GradingGroup::Integers, GroupElement::Int(_)) => true,
            _ => false,
        }
    }

    fn check(&self, g: GroupElement) -> Result<(), GroupError> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(GroupError::GroupMismatch)
        }
    }

    pub fn try_mul(&self, g: GroupElement, h: GroupElement) -> Result<GroupElement, GroupError> {
        self.check(g)?;
        self.check(h)?;
        Ok(match (self, g, h) {
            (GradingGroup::Finite { table, .. }, GroupElement::Finite(a), GroupElement::Finite(b)) => {
                GroupElement::Finite(table[a][b])
            }
            (GradingGroup::Integers, GroupElement::Int(a), GroupElement::Int(b)) => {
                GroupElement::Int(a.checked_add(b).expect("integer degree overflow"))
            }
            _ => unreachable!(),
        })
    }

    pub fn try_inv(&self, g: GroupElement) -> Result<GroupElement, GroupError> {
        self.check(g)?;
        Ok(match (self, g) {
            (GradingGroup::Finite { inverses, .. }, GroupElement::Finite(a)) => GroupElement::Finite(inverses[a]),
            (GradingGroup::Integers, GroupElement::Int(a)) => GroupElement::Int(-a),
            _ => unreachable!(),
        })
    }

    /// Panicking form for elements already known to belong to the group.
    pub fn mul(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        self.try_mul(g, h).expect("element of a different group")
    }

    pub fn inv(&self, g: GroupElement) -> GroupElement {
        self.try_inv(g).expect("element of a different group")
    }

    /// All elements of a finite group in table order.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        self.order().map(|n| (0..n).map(GroupElement::Finite).collect())
    }

    pub fn label(&self, g: GroupElement) -> String {
        match (self, g) {
            (GradingGroup::Finite { labels, .. }, GroupElement::Finite(i)) => labels[i].clone(),
            (_, GroupElement::Int(k)) => k.to_string(),
            (_, GroupElement::Finite(i)) => format!("#{i}"),
        }
    }

    pub fn parse_element(&self, label: &str) -> Option<GroupElement> {
        match self {
            GradingGroup::Finite { labels, .. } => {
                let t = label.trim();
                labels
                    .iter()
                    .position(|l| l == t || l.replace(' ', "") == t.replace(' ', ""))
                    .map(GroupElement::Finite)
            }
            GradingGroup::Integers => label.trim().parse().ok().map(GroupElement::Int),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        match self {
            GradingGroup::Finite { labels, .. } => Some(labels),
            GradingGroup::Integers => None,
        }
    }

    pub fn table(&self) -> Option<&[Vec<usize>]> {
        match self {
            GradingGroup::Finite { table, .. } => Some(table),
            GradingGroup::Integers => None,
        }
    }
}

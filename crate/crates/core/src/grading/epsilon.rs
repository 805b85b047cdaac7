//! The idempotents `eps_g`, their decompositions, `gamma_g` and the trace.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::GradedRing;
use crate::algebra::StructureAlgebra;
use crate::exactnum::Scalar;
use crate::groups::GroupElement;
use crate::linalg::{self, vector, AffineSolution, Matrix, Subspace, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpsilonFailure {
    /// `S_g S_{g^-1}` has no identity element.
    NotUnital,
    /// `eps_g s != s` for some `s` in `S_g`.
    LeftIdentityFails,
    /// `s eps_{g^-1} != s` for some `s` in `S_g`.
    RightIdentityFails,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EpsilonError {
    #[error("grading is not epsilon-strong at degree {degree:?}: {reason:?}")]
    NotEpsilonStrong { degree: GroupElement, reason: EpsilonFailure },
    #[error("supplied decomposition of eps at {0:?} is wrong")]
    BadDecomposition(GroupElement),
    #[error("element is not in Z(R)_fin")]
    NotInZFin,
}

/// How to pick a solution of `sum c_ab x_a y_b = eps_g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompositionChoice {
    /// The solver's pivot solution (free variables zero).
    Pivot,
    /// Pivot solution plus a seeded random element of the solution kernel.
    Perturbed(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonEntry {
    pub epsilon: Vector,
    /// Pairs `(u, v)` with `u` in `S_g`, `v` in `S_{g^-1}` and `sum u v = eps_g`.
    pub pairs: Vec<(Vector, Vector)>,
}

/// The `eps_g` of an epsilon-strong grading. Degrees without an entry have `eps_g = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonData {
    algebra: StructureAlgebra,
    center: Subspace,
    entries: BTreeMap<GroupElement, EpsilonEntry>,
}

impl EpsilonData {
    pub fn compute(ring: &GradedRing) -> Result<Self, EpsilonError> {
        Self::compute_with(ring, DecompositionChoice::Pivot)
    }

    pub fn compute_with(ring: &GradedRing, choice: DecompositionChoice) -> Result<Self, EpsilonError> {
        let alg = ring.algebra();
        let group = ring.group();
        let e = group.identity();
        let r = ring.principal();
        let degrees = ring.relevant_degrees();
        let mut eps: BTreeMap<GroupElement, Vector> = BTreeMap::new();
        for &g in &degrees {
            let ginv = group.inv(g);
            if g == e {
                eps.insert(g, alg.unit().clone());
                continue;
            }
            let ideal = ring.component_product(g, ginv);
            let x = alg.ideal_identity_within(&r, &ideal).map_err(|_| EpsilonError::NotEpsilonStrong {
                degree: g,
                reason: EpsilonFailure::NotUnital,
            })?;
            eps.insert(g, x);
        }
        let zero = alg.zero();
        for &g in &degrees {
            let left = &eps[&g];
            let right = eps.get(&group.inv(g)).unwrap_or(&zero);
            for s in ring.component_basis(g) {
                if alg.mul_unchecked(left, &s) != s {
                    return Err(EpsilonError::NotEpsilonStrong {
                        degree: g,
                        reason: EpsilonFailure::LeftIdentityFails,
                    });
                }
                if alg.mul_unchecked(&s, right) != s {
                    return Err(EpsilonError::NotEpsilonStrong {
                        degree: g,
                        reason: EpsilonFailure::RightIdentityFails,
                    });
                }
            }
        }
        let mut rng = match choice {
            DecompositionChoice::Perturbed(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            DecompositionChoice::Pivot => None,
        };
        let mut entries = BTreeMap::new();
        for (g, epsilon) in eps {
            if vector::is_zero(&epsilon) {
                continue;
            }
            let pairs = if g == e {
                vec![(alg.unit().clone(), alg.unit().clone())]
            } else {
                decompose(ring, g, &epsilon, rng.as_mut())
            };
            entries.insert(g, EpsilonEntry { epsilon, pairs });
        }
        Ok(EpsilonData {
            algebra: alg.clone(),
            center: ring.principal_center(),
            entries,
        })
    }

    /// Replaces the decomposition at `g` after checking it.
    pub fn with_decomposition(
        mut self,
        ring: &GradedRing,
        g: GroupElement,
        pairs: Vec<(Vector, Vector)>,
    ) -> Result<Self, EpsilonError> {
        let ginv = ring.group().inv(g);
        let mut sum = self.algebra.zero();
        for (u, v) in &pairs {
            if u.len() != ring.dim() || v.len() != ring.dim() || !ring.is_in_component(u, g) || !ring.is_in_component(v, ginv) {
                return Err(EpsilonError::BadDecomposition(g));
            }
            sum = vector::add(&sum, &self.algebra.mul_unchecked(u, v));
        }
        if sum != self.epsilon(g) || g == ring.group().identity() {
            return Err(EpsilonError::BadDecomposition(g));
        }
        match self.entries.get_mut(&g) {
            Some(entry) => entry.pairs = pairs,
            None => return Err(EpsilonError::BadDecomposition(g)),
        }
        Ok(self)
    }

    pub fn algebra(&self) -> &StructureAlgebra {
        &self.algebra
    }

    /// `eps_g`, zero when `g` has no entry.
    pub fn epsilon(&self, g: GroupElement) -> Vector {
        self.entries.get(&g).map(|e| e.epsilon.clone()).unwrap_or_else(|| self.algebra.zero())
    }

    pub fn pairs(&self, g: GroupElement) -> &[(Vector, Vector)] {
        self.entries.get(&g).map(|e| e.pairs.as_slice()).unwrap_or(&[])
    }

    /// Degrees with `eps_g != 0`.
    pub fn nonzero_degrees(&self) -> Vec<GroupElement> {
        self.entries.keys().copied().collect()
    }

    pub fn entries(&self) -> &BTreeMap<GroupElement, EpsilonEntry> {
        &self.entries
    }

    /// `Z(R)`
    pub fn center(&self) -> &Subspace {
        &self.center
    }

    /// `gamma_g(s) = sum u s v` over the stored decomposition.
    pub fn gamma(&self, g: GroupElement, s: &[Scalar]) -> Vector {
        let mut out = self.algebra.zero();
        for (u, v) in self.pairs(g) {
            out = vector::add(&out, &self.algebra.mul3(u, s, v));
        }
        out
    }

    /// `Z(R)_fin`. Only finitely many `eps_g` are nonzero, so this is `Z(R)`.
    pub fn z_fin(&self) -> Subspace {
        self.center.clone()
    }

    /// `Z(R)^gamma_fin = { r in Z(R)_fin : gamma_g(r) = r eps_g for all g }`.
    pub fn z_fin_gamma_fixed(&self) -> Subspace {
        let z = self.z_fin();
        if z.is_zero() {
            return z;
        }
        let defects: Vec<Vector> = z
            .basis()
            .iter()
            .map(|r| {
                let mut d = Vec::new();
                for (g, entry) in &self.entries {
                    d.extend(vector::sub(&self.gamma(*g, r), &self.algebra.mul_unchecked(r, &entry.epsilon)));
                }
                d
            })
            .collect();
        let rows = defects[0].len();
        if rows == 0 {
            return z;
        }
        let m = Matrix::from_columns(self.algebra.field(), rows, &defects).expect("shape");
        let k = linalg::kernel(&m);
        Subspace::span(self.algebra.field(), self.algebra.dim(), k.basis().iter().map(|c| z.combine(c)))
    }

    /// `tr(r) = sum_g gamma_g(r)` over degrees with `eps_g != 0`.
    pub fn trace(&self, r: &[Scalar]) -> Result<Vector, EpsilonError> {
        if r.len() != self.algebra.dim() || !self.center.contains(r) {
            return Err(EpsilonError::NotInZFin);
        }
        Ok(self.trace_unchecked(r))
    }

    pub(crate) fn trace_unchecked(&self, r: &[Scalar]) -> Vector {
        let mut out = self.algebra.zero();
        for g in self.entries.keys() {
            out = vector::add(&out, &self.gamma(*g, r));
        }
        out
    }

    /// Dual basis `(v_i, u_i)` for `S_g` as a left R-module, taken from the
    /// decomposition of `eps_{g^-1}`: `f_i(s) = s u_i` and `s = sum f_i(s) v_i`.
    pub fn dual_basis(&self, ring: &GradedRing, g: GroupElement) -> Result<Vec<(Vector, Vector)>, EpsilonError> {
        let ginv = ring.group().inv(g);
        let pairs: Vec<(Vector, Vector)> = self.pairs(ginv).iter().map(|(u, v)| (v.clone(), u.clone())).collect();
        for s in ring.component_basis(g) {
            let mut sum = self.algebra.zero();
            for (v, u) in &pairs {
                sum = vector::add(&sum, &self.algebra.mul3(&s, u, v));
            }
            if sum != s {
                return Err(EpsilonError::NotEpsilonStrong {
                    degree: g,
                    reason: EpsilonFailure::RightIdentityFails,
                });
            }
        }
        Ok(pairs)
    }
}

/// Solves `sum_{a,b} c_ab x_a y_b = eps` over basis vectors `x_a` of `S_g`,
/// `y_b` of `S_{g^-1}`, and groups the solution as `(x_a, sum_b c_ab y_b)`.
fn decompose(ring: &GradedRing, g: GroupElement, eps: &[Scalar], rng: Option<&mut ChaCha8Rng>) -> Vec<(Vector, Vector)> {
    let alg = ring.algebra();
    let field = alg.field();
    let xs = ring.component_indices(g).to_vec();
    let ys = ring.component_indices(ring.group().inv(g)).to_vec();
    let mut cols = Vec::with_capacity(xs.len() * ys.len());
    for &a in &xs {
        for &b in &ys {
            cols.push(vector::from_sparse(field, alg.dim(), alg.basis_product(a, b)));
        }
    }
    let m = Matrix::from_columns(field, alg.dim(), &cols).expect("shape");
    let AffineSolution::Feasible { particular, kernel } = linalg::solve_affine(&m, eps).expect("shape") else {
        unreachable!("eps_g lies in S_g S_g^-1")
    };
    let mut c = particular;
    if let Some(rng) = rng {
        for k in kernel.basis() {
            let t = field.from_i64(rng.gen_range(-3..=3));
            c = vector::add(&c, &vector::scale(&t, k));
        }
    }
    let mut pairs = Vec::new();
    for (ai, &a) in xs.iter().enumerate() {
        let mut v = alg.zero();
        for (bi, &b) in ys.iter().enumerate() {
            v[b] = c[ai * ys.len() + bi].clone();
        }
        if !vector::is_zero(&v) {
            pairs.push((alg.basis_vector(a), v));
        }
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::super::tests::{f, m2_z2, z2};
    use super::*;
    use crate::exactnum::FieldSpec;
    use crate::groups::GradingGroup;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn trivial_grading() {
        let s = GradedRing::trivial(StructureAlgebra::diagonal(Q, 2), z2());
        let eps = EpsilonData::compute(&s).unwrap();
        assert_eq!(eps.epsilon(f(0)), vec![Q.one(), Q.one()]);
        assert!(vector::is_zero(&eps.epsilon(f(1))));
        let r = vec![Q.from_i64(3), Q.from_i64(-1)];
        assert_eq!(eps.trace(&r).unwrap(), r);
        assert_eq!(eps.gamma(f(0), &r), r);
    }

    #[test]
    fn truncated_polynomial_is_not_epsilon_strong() {
        let a = StructureAlgebra::truncated_polynomial(Q, 3);
        let degrees = (0..3).map(GroupElement::Int).collect();
        let s = GradedRing::new(a, GradingGroup::integers(), degrees).unwrap();
        assert_eq!(
            EpsilonData::compute(&s),
            Err(EpsilonError::NotEpsilonStrong {
                degree: GroupElement::Int(1),
                reason: EpsilonFailure::LeftIdentityFails,
            })
        );
    }

    #[test]
    fn strongly_graded_matrices() {
        let s = m2_z2(Q);
        let eps = EpsilonData::compute(&s).unwrap();
        let one = s.algebra().unit().clone();
        assert_eq!(eps.epsilon(f(1)), one);
        // pair sums reproduce eps
        let mut sum = s.algebra().zero();
        for (u, v) in eps.pairs(f(1)) {
            sum = vector::add(&sum, &s.algebra().mul_unchecked(u, v));
        }
        assert_eq!(sum, one);
        let perturbed = EpsilonData::compute_with(&s, DecompositionChoice::Perturbed(9)).unwrap();
        let r = vec![Q.from_i64(5), Q.zero(), Q.zero(), Q.from_i64(5)];
        assert_eq!(eps.gamma(f(1), &r), perturbed.gamma(f(1), &r));
        assert_eq!(eps.trace(&r).unwrap(), vector::scale(&Q.from_i64(2), &r));
        // R is the diagonal, so e11 is central there and its trace is e11 + e22
        assert_eq!(eps.trace(&s.algebra().basis_vector(0)).unwrap(), one);
        let outside = s.algebra().basis_vector(1);
        assert_eq!(eps.trace(&outside), Err(EpsilonError::NotInZFin));
    }

    #[test]
    fn supplied_decompositions_are_checked() {
        let s = m2_z2(Q);
        let eps = EpsilonData::compute(&s).unwrap();
        let e = |i| s.algebra().basis_vector(i);
        // 1 = e12 e21 + e21 e12
        let good = vec![(e(1), e(2)), (e(2), e(1))];
        let eps = eps.with_decomposition(&s, f(1), good).unwrap();
        assert_eq!(eps.pairs(f(1)).len(), 2);
        let bad = vec![(e(1), e(2))];
        assert_eq!(eps.with_decomposition(&s, f(1), bad), Err(EpsilonError::BadDecomposition(f(1))));
    }

    #[test]
    fn dual_basis_identity() {
        let s = m2_z2(FieldSpec::Prime(5));
        let eps = EpsilonData::compute(&s).unwrap();
        let pairs = eps.dual_basis(&s, f(0)).unwrap();
        assert_eq!(pairs.len(), 1);
        assert!(eps.dual_basis(&s, f(1)).is_ok());
    }
}

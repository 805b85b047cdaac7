//! Unital twisted partial actions, their crossed products, and the passage
//! back from epsilon-crossed products to action data.

mod crossed;
mod extract;

pub use crossed::{crossed_product, CrossedProduct, CrossedProductError};
pub use extract::{
    epsilon_inverse, extract_action, find_epsilon_invertible, find_sections, graded_iso_check, roundtrip_map,
    ExtractError, SearchOutcome,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::algebra::StructureAlgebra;
use crate::exactnum::Scalar;
use crate::groups::{GradingGroup, GroupElement};
use crate::linalg::{self, vector, AffineSolution, Matrix, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("bad shape: {0}")]
    Shape(String),
    #[error("{0:?} is not an element of the group")]
    ForeignElement(GroupElement),
    #[error("1_e is not the unit of the base")]
    IdentityIdempotent,
    #[error("1_g at {0:?} is not a central idempotent")]
    NotCentralIdempotent(GroupElement),
    #[error("no alpha given for {0:?}")]
    MissingAlpha(GroupElement),
    #[error("alpha at {0:?} does not map D_g^-1 bijectively onto D_g")]
    NotBijective(GroupElement),
    #[error("alpha at {0:?} is not multiplicative and unital on D_g^-1")]
    NotRingMap(GroupElement),
    #[error("twist at ({0:?}, {1:?}) is outside D_g D_gh")]
    TwistOutsideCorner(GroupElement, GroupElement),
    #[error("twist at ({0:?}, {1:?}) is not invertible in D_g D_gh")]
    TwistNotInvertible(GroupElement, GroupElement),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    P1,
    P2,
    P3,
    P4,
    P5,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A failed axiom instance: the degrees quantified over and, where the axiom
/// is checked elementwise, the basis element of the corner that fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionViolation {
    pub axiom: Axiom,
    pub degrees: Vec<GroupElement>,
    pub element: Option<Vector>,
}

/// `({D_g}, {alpha_g}, {w_gh})` on a base algebra `R` with `D_g = R 1_g`.
///
/// Degrees without an idempotent have `D_g = 0`. Missing twists default to
/// the corner identity `1_g 1_gh`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedPartialAction {
    base: StructureAlgebra,
    group: GradingGroup,
    idempotents: BTreeMap<GroupElement, Vector>,
    alpha: BTreeMap<GroupElement, Matrix>,
    twist: BTreeMap<(GroupElement, GroupElement), Vector>,
}

impl TwistedPartialAction {
    /// Checks the structural invariants; the axioms are checked by [`Self::validate`].
    pub fn new(
        base: StructureAlgebra,
        group: GradingGroup,
        idempotents: BTreeMap<GroupElement, Vector>,
        alpha: BTreeMap<GroupElement, Matrix>,
        twist: BTreeMap<(GroupElement, GroupElement), Vector>,
    ) -> Result<Self, ActionError> {
        let n = base.dim();
        let idempotents: BTreeMap<GroupElement, Vector> =
            idempotents.into_iter().filter(|(_, v)| !vector::is_zero(v) || v.len() != n).collect();
        for (&g, v) in &idempotents {
            if !group.contains(g) {
                return Err(ActionError::ForeignElement(g));
            }
            if v.len() != n {
                return Err(ActionError::Shape(format!("1_g at {g:?} has length {}", v.len())));
            }
        }
        for (&g, m) in &alpha {
            if !group.contains(g) {
                return Err(ActionError::ForeignElement(g));
            }
            if m.rows() != n || m.cols() != n {
                return Err(ActionError::Shape(format!("alpha at {g:?} is {}x{}", m.rows(), m.cols())));
            }
        }
        for (&(g, h), w) in &twist {
            if !group.contains(g) || !group.contains(h) {
                return Err(ActionError::ForeignElement(if group.contains(g) { h } else { g }));
            }
            if w.len() != n {
                return Err(ActionError::Shape(format!("twist at ({g:?}, {h:?}) has length {}", w.len())));
            }
        }
        let a = TwistedPartialAction {
            base,
            group,
            idempotents,
            alpha,
            twist,
        };
        a.check_structure()?;
        Ok(a)
    }

    /// A global action (`D_g = R` for all `g`) with trivial twist.
    pub fn global(base: StructureAlgebra, group: GradingGroup, alpha: BTreeMap<GroupElement, Matrix>) -> Result<Self, ActionError> {
        let degrees: Vec<GroupElement> = match group.elements() {
            Some(all) => all,
            None => alpha.keys().copied().collect(),
        };
        let idempotents = degrees.iter().map(|&g| (g, base.unit().clone())).collect();
        Self::new(base, group, idempotents, alpha, BTreeMap::new())
    }

    fn check_structure(&self) -> Result<(), ActionError> {
        let alg = &self.base;
        let e = self.group.identity();
        if self.idempotents.get(&e) != Some(alg.unit()) {
            return Err(ActionError::IdentityIdempotent);
        }
        let everything = Subspace::full(alg.field(), alg.dim());
        for (&g, one) in &self.idempotents {
            if !alg.is_idempotent(one) || !everything.basis().iter().all(|b| alg.commutator(one, b) == alg.zero()) {
                return Err(ActionError::NotCentralIdempotent(g));
            }
        }
        for g in self.support() {
            let ginv = self.group.inv(g);
            let m = self.alpha.get(&g).ok_or(ActionError::MissingAlpha(g))?;
            let src = self.domain(ginv);
            let tgt = self.domain(g);
            let images: Vec<Vector> = src.basis().iter().map(|b| m.mul_vec(b).expect("shape")).collect();
            let image = Subspace::span(alg.field(), alg.dim(), images.iter().cloned());
            if image.dim() != src.dim() || image != tgt {
                return Err(ActionError::NotBijective(g));
            }
            if m.mul_vec(&self.one(ginv)).expect("shape") != self.one(g) {
                return Err(ActionError::NotRingMap(g));
            }
            for (i, a) in src.basis().iter().enumerate() {
                for (j, b) in src.basis().iter().enumerate() {
                    let lhs = m.mul_vec(&alg.mul_unchecked(a, b)).expect("shape");
                    if lhs != alg.mul_unchecked(&images[i], &images[j]) {
                        return Err(ActionError::NotRingMap(g));
                    }
                }
            }
        }
        for (&(g, h), w) in &self.twist {
            let corner = alg.mul_unchecked(&self.one(g), &self.one(self.group.mul(g, h)));
            if alg.mul_unchecked(&corner, w) != *w {
                return Err(ActionError::TwistOutsideCorner(g, h));
            }
            if alg.corner_inverse(w, &corner).is_err() {
                return Err(ActionError::TwistNotInvertible(g, h));
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &StructureAlgebra {
        &self.base
    }

    pub fn group(&self) -> &GradingGroup {
        &self.group
    }

    /// Degrees with `D_g != 0`, ascending.
    pub fn support(&self) -> Vec<GroupElement> {
        self.idempotents.keys().copied().collect()
    }

    pub fn idempotents(&self) -> &BTreeMap<GroupElement, Vector> {
        &self.idempotents
    }

    pub fn alpha_matrices(&self) -> &BTreeMap<GroupElement, Matrix> {
        &self.alpha
    }

    /// Twists that were given explicitly.
    pub fn stored_twists(&self) -> &BTreeMap<(GroupElement, GroupElement), Vector> {
        &self.twist
    }

    /// `1_g`
    pub fn one(&self, g: GroupElement) -> Vector {
        self.idempotents.get(&g).cloned().unwrap_or_else(|| self.base.zero())
    }

    /// `D_g = R 1_g`
    pub fn domain(&self, g: GroupElement) -> Subspace {
        let alg = &self.base;
        let one = self.one(g);
        Subspace::span(alg.field(), alg.dim(), (0..alg.dim()).map(|i| alg.mul_unchecked(&alg.basis_vector(i), &one)))
    }

    /// `alpha_g(r 1_g^-1)`; zero outside the support.
    pub fn alpha(&self, g: GroupElement, r: &[Scalar]) -> Vector {
        match self.alpha.get(&g) {
            Some(m) if self.idempotents.contains_key(&g) => {
                let masked = self.base.mul_unchecked(r, &self.one(self.group.inv(g)));
                m.mul_vec(&masked).expect("shape")
            }
            _ => self.base.zero(),
        }
    }

    /// `w_gh`
    pub fn w(&self, g: GroupElement, h: GroupElement) -> Vector {
        match self.twist.get(&(g, h)) {
            Some(w) => w.clone(),
            None => self.base.mul_unchecked(&self.one(g), &self.one(self.group.mul(g, h))),
        }
    }

    fn w_inverse(&self, g: GroupElement, h: GroupElement) -> Vector {
        let corner = self.base.mul_unchecked(&self.one(g), &self.one(self.group.mul(g, h)));
        self.base.corner_inverse(&self.w(g, h), &corner).expect("checked at construction")
    }

    /// Basis of `D_a D_b ...`
    fn corner_basis(&self, degrees: &[GroupElement]) -> Vec<Vector> {
        let alg = &self.base;
        let mut one = alg.unit().clone();
        for &g in degrees {
            one = alg.mul_unchecked(&one, &self.one(g));
        }
        if vector::is_zero(&one) {
            return Vec::new();
        }
        Subspace::span(alg.field(), alg.dim(), (0..alg.dim()).map(|i| alg.mul_unchecked(&alg.basis_vector(i), &one)))
            .basis()
            .to_vec()
    }

    /// Checks (P1) to (P5). Instances whose corners are zero hold vacuously and
    /// are skipped. Violations come sorted by axiom.
    pub fn validate(&self) -> Result<(), Vec<ActionViolation>> {
        let alg = &self.base;
        let grp = &self.group;
        let e = grp.identity();
        let supp = self.support();
        let supp_set: BTreeSet<GroupElement> = supp.iter().copied().collect();
        let mut out = Vec::new();

        for i in 0..alg.dim() {
            let b = alg.basis_vector(i);
            if self.alpha(e, &b) != b {
                out.push(ActionViolation {
                    axiom: Axiom::P1,
                    degrees: vec![e],
                    element: Some(b),
                });
                break;
            }
        }

        for &g in &supp {
            let ginv = grp.inv(g);
            let mut hs: BTreeSet<GroupElement> = supp_set.clone();
            hs.extend(supp.iter().map(|&k| grp.mul(ginv, k)));
            for h in hs {
                let gh = grp.mul(g, h);
                let lhs = Subspace::span(
                    alg.field(),
                    alg.dim(),
                    self.corner_basis(&[ginv, h]).iter().map(|r| self.alpha(g, r)),
                );
                let rhs = Subspace::span(alg.field(), alg.dim(), self.corner_basis(&[g, gh]));
                if lhs != rhs {
                    out.push(ActionViolation {
                        axiom: Axiom::P2,
                        degrees: vec![g, h],
                        element: None,
                    });
                }
            }
        }

        for &h in &supp {
            for &gh in &supp {
                let g = grp.mul(gh, grp.inv(h));
                let w = self.w(g, h);
                let winv = self.w_inverse(g, h);
                for r in self.corner_basis(&[grp.inv(h), grp.inv(gh)]) {
                    let lhs = self.alpha(g, &self.alpha(h, &r));
                    let rhs = alg.mul3(&w, &self.alpha(gh, &r), &winv);
                    if lhs != rhs {
                        out.push(ActionViolation {
                            axiom: Axiom::P3,
                            degrees: vec![g, h],
                            element: Some(r),
                        });
                        break;
                    }
                }
            }
        }

        for &g in &supp {
            let one = self.one(g);
            for (a, b) in [(e, g), (g, e)] {
                if self.w(a, b) != one {
                    out.push(ActionViolation {
                        axiom: Axiom::P4,
                        degrees: vec![a, b],
                        element: None,
                    });
                }
            }
        }

        for &g in &supp {
            for &h in &supp {
                for &hl in &supp {
                    let l = grp.mul(grp.inv(h), hl);
                    let gh = grp.mul(g, h);
                    for r in self.corner_basis(&[grp.inv(g), h, hl]) {
                        let lhs = alg.mul_unchecked(&self.alpha(g, &alg.mul_unchecked(&r, &self.w(h, l))), &self.w(g, hl));
                        let rhs = alg.mul3(&self.alpha(g, &r), &self.w(g, h), &self.w(gh, l));
                        if lhs != rhs {
                            out.push(ActionViolation {
                                axiom: Axiom::P5,
                                degrees: vec![g, h, l],
                                element: Some(r),
                            });
                            break;
                        }
                    }
                }
            }
        }

        if out.is_empty() {
            Ok(())
        } else {
            out.sort_by_key(|v| v.axiom);
            Err(out)
        }
    }

    /// `tr_alpha(r) = sum_g alpha_g(r 1_g^-1)` for `r` in `Z(R)`.
    pub fn trace_alpha(&self, r: &[Scalar]) -> Result<Vector, ActionError> {
        let alg = &self.base;
        if r.len() != alg.dim() {
            return Err(ActionError::Shape(format!("element has length {}", r.len())));
        }
        if !alg.center().contains(r) {
            return Err(ActionError::Shape("element is not central".into()));
        }
        let mut out = alg.zero();
        for g in self.support() {
            out = vector::add(&out, &self.alpha(g, r));
        }
        Ok(out)
    }

    /// Some `c` in `Z(R)` with `tr_alpha(c) = 1`, if one exists.
    pub fn trace_alpha_preimage_of_one(&self) -> Option<Vector> {
        let alg = &self.base;
        let z = alg.center();
        if z.is_zero() {
            return None;
        }
        let cols: Vec<Vector> = z.basis().iter().map(|c| self.trace_alpha(c).expect("central")).collect();
        let m = Matrix::from_columns(alg.field(), alg.dim(), &cols).expect("shape");
        match linalg::solve_affine(&m, alg.unit()).expect("shape") {
            AffineSolution::Feasible { particular, .. } => Some(z.combine(&particular)),
            AffineSolution::Infeasible { .. } => None,
        }
    }
}

use std::collections::BTreeMap;

use thiserror::Error;

use super::{ActionViolation, TwistedPartialAction};
use crate::algebra::{AlgebraViolation, StructureAlgebra};
use crate::exactnum::Scalar;
use crate::grading::{EpsilonData, EpsilonError, GradedRing, GradingViolation};
use crate::groups::GroupElement;
use crate::linalg::{vector, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrossedProductError {
    #[error("action violates {} axiom instance(s), first {:?}", .0.len(), .0[0].axiom)]
    Axioms(Vec<ActionViolation>),
    /// Cannot happen for a valid action.
    #[error("crossed product is not associative: {0}")]
    Associativity(AlgebraViolation),
    #[error("crossed product grading is broken: {0}")]
    Grading(GradingViolation),
    #[error("crossed product is not epsilon-strong: {0}")]
    NotEpsilonStrong(EpsilonError),
    #[error("eps at {0:?} differs from 1_g delta_e")]
    EpsilonMismatch(GroupElement),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Block {
    offset: usize,
    basis: Subspace,
}

/// `R *_alpha^w G = sum_g D_g delta_g`, with the basis of each `D_g delta_g`
/// taken from the echelon basis of `D_g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedProduct {
    ring: GradedRing,
    action: TwistedPartialAction,
    blocks: BTreeMap<GroupElement, Block>,
}

/// Builds the crossed product of a valid action and checks that it is an
/// epsilon-strongly graded ring with `eps_g = 1_g delta_e`.
pub fn crossed_product(action: &TwistedPartialAction) -> Result<CrossedProduct, CrossedProductError> {
    action.validate().map_err(CrossedProductError::Axioms)?;
    let base = action.base();
    let field = base.field();
    let grp = action.group();
    let mut blocks = BTreeMap::new();
    let mut labels: Vec<(GroupElement, Vector)> = Vec::new();
    let mut offset = 0;
    for g in action.support() {
        let basis = action.domain(g);
        for b in basis.basis() {
            labels.push((g, b.clone()));
        }
        let d = basis.dim();
        blocks.insert(g, Block { offset, basis });
        offset += d;
    }
    let dim = offset;
    let place = |g: GroupElement, r: &[Scalar]| -> Vector {
        let mut out = vector::zeros(field, dim);
        if let Some(b) = blocks.get(&g) {
            let c = b.basis.coordinates(r).expect("product lands in D_gh");
            for (k, x) in c.into_iter().enumerate() {
                out[b.offset + k] = x;
            }
        } else {
            assert!(vector::is_zero(r), "product lands outside the support");
        }
        out
    };
    let e = grp.identity();
    let unit = place(e, base.unit());
    let alg = StructureAlgebra::from_fn(field, dim, unit, |i, j| {
        let (g, r) = &labels[i];
        let (h, s) = &labels[j];
        let inner = action.alpha(*g, &base.mul_unchecked(s, &action.one(grp.inv(*g))));
        let value = base.mul3(r, &inner, &action.w(*g, *h));
        place(grp.mul(*g, *h), &value)
    })
    .expect("shape");
    alg.validate().map_err(CrossedProductError::Associativity)?;
    let degrees = labels.iter().map(|(g, _)| *g).collect();
    let ring = GradedRing::new(alg, grp.clone(), degrees).expect("degrees come from the group");
    ring.validate().map_err(CrossedProductError::Grading)?;
    let cp = CrossedProduct {
        ring,
        action: action.clone(),
        blocks,
    };
    let eps = EpsilonData::compute(&cp.ring).map_err(CrossedProductError::NotEpsilonStrong)?;
    for g in cp.ring.relevant_degrees() {
        if eps.epsilon(g) != cp.embed(e, &action.one(g)) {
            return Err(CrossedProductError::EpsilonMismatch(g));
        }
    }
    Ok(cp)
}

impl CrossedProduct {
    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn action(&self) -> &TwistedPartialAction {
        &self.action
    }

    pub fn into_ring(self) -> GradedRing {
        self.ring
    }

    /// `r delta_g` for `r` in `D_g`.
    pub fn embed(&self, g: GroupElement, r: &[Scalar]) -> Vector {
        let field = self.action.base().field();
        let mut out = vector::zeros(field, self.ring.dim());
        if let Some(b) = self.blocks.get(&g) {
            let c = b.basis.coordinates(r).expect("element of D_g");
            for (k, x) in c.into_iter().enumerate() {
                out[b.offset + k] = x;
            }
        } else {
            assert!(vector::is_zero(r), "D_g is zero");
        }
        out
    }

    /// The `D_g` coefficient of the degree-`g` part of `x`.
    pub fn coefficient(&self, g: GroupElement, x: &[Scalar]) -> Vector {
        match self.blocks.get(&g) {
            Some(b) => b.basis.combine(&x[b.offset..b.offset + b.basis.dim()]),
            None => self.action.base().zero(),
        }
    }

    /// The sections `s_g = 1_g delta_g` used to rebuild the action.
    pub fn canonical_sections(&self) -> BTreeMap<GroupElement, Vector> {
        self.blocks
            .keys()
            .map(|&g| (g, self.embed(g, &self.action.one(g))))
            .collect()
    }
}

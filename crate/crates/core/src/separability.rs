//! Separability of `S` over its principal component: the trace criterion with
//! an explicit separability element, a direct tensor-product oracle,
//! Frobenius systems, and the Kadison-style criterion.

use thiserror::Error;

use crate::algebra::{StructureAlgebra, TensorOverBase};
use crate::exactnum::Scalar;
use crate::grading::{EpsilonData, GradedRing};
use crate::linalg::{self, vector, AffineSolution, Matrix, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparabilityError {
    #[error("witness is not in Z(R)_fin")]
    NotInZFin,
    #[error("Frobenius identities fail and the grading group is infinite")]
    InfiniteGroupUnsupported,
    #[error("Frobenius identity fails on e{0}")]
    FrobeniusIdentityFails(usize),
}

/// `x = sum u c (x) v`, checked in `S (x)_R S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparabilityCertificate {
    pub witness_c: Vector,
    pub trace_is_one: bool,
    pub element_pairs: Vec<(Vector, Vector)>,
    /// Coordinates of `x` over the quotient basis of the tensor product.
    pub element: Vector,
    pub m_of_x_is_one: bool,
    pub x_central: bool,
}

impl SeparabilityCertificate {
    pub fn verified(&self) -> bool {
        self.trace_is_one && self.m_of_x_is_one && self.x_central
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparabilityVerdict {
    Separable(SeparabilityCertificate),
    /// A functional `y` on S with `y(tr(z)) = 0` for all `z` in `Z(R)_fin` and `y(1) = 1`.
    NotSeparable { functional: Vector },
}

impl SeparabilityVerdict {
    pub fn is_separable(&self) -> bool {
        matches!(self, SeparabilityVerdict::Separable(_))
    }
}

/// Decides separability by solving `tr(c) = 1` over a basis of `Z(R)_fin`.
pub fn decide_separability(ring: &GradedRing, eps: &EpsilonData) -> SeparabilityVerdict {
    decide_separability_with(ring, eps, &ring.tensor_over_principal())
}

pub fn decide_separability_with(ring: &GradedRing, eps: &EpsilonData, tensor: &TensorOverBase) -> SeparabilityVerdict {
    let alg = ring.algebra();
    let z = eps.z_fin();
    let images: Vec<Vector> = z.basis().iter().map(|b| eps.trace_unchecked(b)).collect();
    let m = if images.is_empty() {
        Matrix::zeros(alg.field(), alg.dim(), 1)
    } else {
        Matrix::from_columns(alg.field(), alg.dim(), &images).expect("shape")
    };
    match linalg::solve_affine(&m, alg.unit()).expect("shape") {
        AffineSolution::Feasible { particular, .. } => {
            let c = if images.is_empty() { alg.zero() } else { z.combine(&particular) };
            SeparabilityVerdict::Separable(certificate_with(ring, eps, tensor, &c).expect("c lies in Z(R)"))
        }
        AffineSolution::Infeasible { certificate } => SeparabilityVerdict::NotSeparable { functional: certificate },
    }
}

/// Builds and checks the separability element for a given `c`.
pub fn certificate_for_witness(
    ring: &GradedRing,
    eps: &EpsilonData,
    c: &[Scalar],
) -> Result<SeparabilityCertificate, SeparabilityError> {
    certificate_with(ring, eps, &ring.tensor_over_principal(), c)
}

pub fn certificate_with(
    ring: &GradedRing,
    eps: &EpsilonData,
    tensor: &TensorOverBase,
    c: &[Scalar],
) -> Result<SeparabilityCertificate, SeparabilityError> {
    let alg = ring.algebra();
    let tr = eps.trace(c).map_err(|_| SeparabilityError::NotInZFin)?;
    let mut pairs = Vec::new();
    for g in eps.nonzero_degrees() {
        for (u, v) in eps.pairs(g) {
            pairs.push((alg.mul_unchecked(u, c), v.clone()));
        }
    }
    let x = tensor.class_of_pairs(&pairs);
    let m_of_x_is_one = tensor.multiply_out(&x) == *alg.unit();
    let x_central = (0..alg.dim()).all(|i| {
        let s = alg.basis_vector(i);
        tensor.left_mul(&s, &x) == tensor.right_mul(&x, &s)
    });
    Ok(SeparabilityCertificate {
        witness_c: c.to_vec(),
        trace_is_one: tr == *alg.unit(),
        element_pairs: pairs,
        element: x,
        m_of_x_is_one,
        x_central,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    /// Quotient coordinates of a separability element.
    Feasible(Vector),
    Infeasible,
}

impl OracleVerdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, OracleVerdict::Feasible(_))
    }
}

/// Looks for `x` in `S (x)_R S` with `m(x) = 1` and `s x = x s` directly,
/// without using any grading.
pub fn oracle_separability(alg: &StructureAlgebra, base: &Subspace) -> Result<OracleVerdict, crate::algebra::TensorError> {
    let t = TensorOverBase::new(alg, base)?;
    Ok(oracle_with(&t))
}

pub fn oracle_with(t: &TensorOverBase) -> OracleVerdict {
    let alg = t.algebra();
    let field = alg.field();
    let q = t.dim();
    if q == 0 {
        return OracleVerdict::Infeasible;
    }
    let mut rows = t.multiplication_matrix().row_vectors();
    let mut rhs = alg.unit().clone();
    for i in 0..alg.dim() {
        let c = t.commutator_matrix(&alg.basis_vector(i));
        rows.extend(c.row_vectors().into_iter().filter(|r| !vector::is_zero(r)));
    }
    rhs.resize(rows.len(), field.zero());
    let m = Matrix::from_rows(field, q, rows).expect("shape");
    match linalg::solve_affine(&m, &rhs).expect("shape") {
        AffineSolution::Feasible { particular, .. } => OracleVerdict::Feasible(particular),
        AffineSolution::Infeasible { .. } => OracleVerdict::Infeasible,
    }
}

/// `E(s) = s_e` with pairs `(u, v)` from every decomposition of `eps_g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusSystem {
    pub pairs: Vec<(Vector, Vector)>,
    /// False when the group is infinite; the identities were still verified.
    pub finite_group_hypothesis: bool,
}

impl FrobeniusSystem {
    pub fn counit(ring: &GradedRing, s: &[Scalar]) -> Vector {
        let e = ring.group().identity();
        s.iter()
            .enumerate()
            .map(|(i, x)| if ring.degree(i) == e { x.clone() } else { x.field().zero() })
            .collect()
    }
}

pub fn frobenius_system(ring: &GradedRing, eps: &EpsilonData) -> Result<FrobeniusSystem, SeparabilityError> {
    let alg = ring.algebra();
    let mut pairs = Vec::new();
    for g in eps.nonzero_degrees() {
        pairs.extend(eps.pairs(g).iter().cloned());
    }
    let finite = ring.group().is_finite();
    let fail = |i| {
        if finite {
            SeparabilityError::FrobeniusIdentityFails(i)
        } else {
            SeparabilityError::InfiniteGroupUnsupported
        }
    };
    let e_of = |s: &[Scalar]| FrobeniusSystem::counit(ring, s);
    let r_basis = ring.component_basis(ring.group().identity());
    for i in 0..alg.dim() {
        let s = alg.basis_vector(i);
        // E is an R-bimodule map
        for r in &r_basis {
            for r2 in &r_basis {
                if e_of(&alg.mul3(r, &s, r2)) != alg.mul3(r, &e_of(&s), r2) {
                    return Err(fail(i));
                }
            }
        }
        let mut left = alg.zero();
        let mut right = alg.zero();
        for (x, y) in &pairs {
            left = vector::add(&left, &alg.mul_unchecked(x, &e_of(&alg.mul_unchecked(y, &s))));
            right = vector::add(&right, &alg.mul_unchecked(&e_of(&alg.mul_unchecked(&s, x)), y));
        }
        if left != s || right != s {
            return Err(fail(i));
        }
    }
    Ok(FrobeniusSystem {
        pairs,
        finite_group_hypothesis: finite,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KadisonReport {
    /// Some `d` in `C_S(R)` with `sum x_j d y_j = 1`.
    pub d: Option<Vector>,
    pub agrees: bool,
}

/// Solves `sum x_j d y_j = 1` for `d` in `C_S(R)` and compares with a separability verdict.
pub fn kadison_check(ring: &GradedRing, fs: &FrobeniusSystem, separable: bool) -> KadisonReport {
    let alg = ring.algebra();
    let c = alg.centralizer(&ring.principal());
    let images: Vec<Vector> = c
        .basis()
        .iter()
        .map(|d| {
            let mut acc = alg.zero();
            for (x, y) in &fs.pairs {
                acc = vector::add(&acc, &alg.mul3(x, d, y));
            }
            acc
        })
        .collect();
    let d = if images.is_empty() {
        None
    } else {
        let m = Matrix::from_columns(alg.field(), alg.dim(), &images).expect("shape");
        linalg::solve_affine(&m, alg.unit())
            .expect("shape")
            .particular()
            .map(|p| c.combine(p))
    };
    KadisonReport {
        agrees: d.is_some() == separable,
        d,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceOfOne {
    pub trace: Vector,
    pub invertible: bool,
    /// Invertibility was followed by a successful separability decision.
    pub implies_separable_checked: bool,
}

/// Tests whether `tr(1)` is invertible in R; when it is, confirms separability.
pub fn trace_of_one_invertible(ring: &GradedRing, eps: &EpsilonData) -> TraceOfOne {
    let alg = ring.algebra();
    let trace = eps.trace_unchecked(alg.unit());
    let invertible = alg.inverse_within(&ring.principal(), &trace).is_some();
    let implies_separable_checked = invertible && decide_separability(ring, eps).is_separable();
    TraceOfOne {
        trace,
        invertible,
        implies_separable_checked,
    }
}

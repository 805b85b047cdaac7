//! Graded ideals, nondegeneracy, and simplicity by enumeration over prime fields.

use thiserror::Error;

use super::GradedRing;
use crate::exactnum::{FieldSpec, Scalar};
use crate::linalg::{self, vector, Matrix, SparseEchelon, Subspace, Vector};

pub const DEFAULT_BUDGET: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("generator {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("ideal does not split along the grading")]
    NotGraded,
    #[error("enumeration needs {needed} elements, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("exhaustive checks need a prime field")]
    FieldUnsupported,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub right_nondegenerate: bool,
    pub maximal_commutative: bool,
    pub graded_simple: Result<bool, StructureError>,
    pub simple: Result<bool, StructureError>,
}

impl GradedRing {
    /// Smallest two-sided ideal containing homogeneous generators, checked to
    /// be the direct sum of its homogeneous parts.
    pub fn graded_ideal_closure(&self, gens: &[Vector]) -> Result<Subspace, StructureError> {
        for (i, g) in gens.iter().enumerate() {
            if !vector::is_zero(g) && self.homogeneous_degree(g).is_none() {
                return Err(StructureError::NotHomogeneous(i));
            }
        }
        let ideal = self.algebra().two_sided_ideal(gens);
        let mut parts = 0;
        for g in self.support() {
            parts += ideal.intersect(&self.component(g)).expect("same ambient").dim();
        }
        if parts != ideal.dim() {
            return Err(StructureError::NotGraded);
        }
        Ok(ideal)
    }

    /// No nonzero `s` in any `S_g` has `s S_{g^-1} = 0`. Decided exactly as
    /// triviality of the kernel of `s -> (s t)_t`.
    pub fn right_nondegenerate(&self) -> bool {
        let alg = self.algebra();
        let field = alg.field();
        for g in self.support() {
            let src = self.component_basis(g);
            let tgt = self.component_basis(self.group().inv(g));
            if tgt.is_empty() {
                return false;
            }
            let cols: Vec<Vector> = src
                .iter()
                .map(|s| tgt.iter().flat_map(|t| alg.mul_unchecked(s, t)).collect())
                .collect();
            let m = Matrix::from_columns(field, tgt.len() * alg.dim(), &cols).expect("shape");
            if !linalg::kernel(&m).is_zero() {
                return false;
            }
        }
        true
    }

    /// `C_S(R) = R`
    pub fn is_maximal_commutative(&self) -> bool {
        let r = self.principal();
        self.algebra().centralizer(&r) == r
    }

    /// Every nonzero homogeneous element generates `S` as a two-sided ideal.
    pub fn is_graded_simple(&self, budget: u64) -> Result<bool, StructureError> {
        let p = prime_of(self.algebra().field())?;
        let needed: u128 = self
            .support()
            .iter()
            .map(|&g| (p as u128).saturating_pow(self.component_indices(g).len() as u32))
            .sum();
        check_budget(needed, budget)?;
        for g in self.support() {
            let idx = self.component_indices(g).to_vec();
            if !for_each_projective_point(p, idx.len(), |coords| {
                let mut x = self.algebra().zero();
                for (k, &i) in idx.iter().enumerate() {
                    x[i] = self.algebra().field().from_i64(coords[k] as i64);
                }
                self.generates_everything(&x)
            }) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every nonzero element generates `S` as a two-sided ideal.
    pub fn is_simple(&self, budget: u64) -> Result<bool, StructureError> {
        let p = prime_of(self.algebra().field())?;
        let n = self.dim();
        check_budget((p as u128).saturating_pow(n as u32), budget)?;
        let field = self.algebra().field();
        Ok(for_each_projective_point(p, n, |coords| {
            let x: Vector = coords.iter().map(|&c| field.from_i64(c as i64)).collect();
            self.generates_everything(&x)
        }))
    }

    pub fn structure_checks(&self, budget: u64) -> StructureReport {
        StructureReport {
            right_nondegenerate: self.right_nondegenerate(),
            maximal_commutative: self.is_maximal_commutative(),
            graded_simple: self.is_graded_simple(budget),
            simple: self.is_simple(budget),
        }
    }

    fn generates_everything(&self, x: &[Scalar]) -> bool {
        let alg = self.algebra();
        let n = alg.dim();
        let mut e = SparseEchelon::new(alg.field(), n);
        for i in 0..n {
            let l = alg.mul_unchecked(&alg.basis_vector(i), x);
            if vector::is_zero(&l) {
                continue;
            }
            for j in 0..n {
                e.insert_dense(&alg.mul_unchecked(&l, &alg.basis_vector(j)));
                if e.rank() == n {
                    return true;
                }
            }
        }
        false
    }
}

fn prime_of(field: FieldSpec) -> Result<u64, StructureError> {
    match field {
        FieldSpec::Prime(p) => Ok(p),
        FieldSpec::Rationals => Err(StructureError::FieldUnsupported),
    }
}

fn check_budget(needed: u128, budget: u64) -> Result<(), StructureError> {
    if needed > budget as u128 {
        Err(StructureError::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// Calls `f` on one representative per line through the origin in `GF(p)^d`
/// (first nonzero coordinate 1); stops and returns false as soon as `f` does.
fn for_each_projective_point<F: FnMut(&[u64]) -> bool>(p: u64, d: usize, mut f: F) -> bool {
    for lead in 0..d {
        let free = d - lead - 1;
        let mut tail = vec![0u64; free];
        loop {
            let mut coords = vec![0u64; d];
            coords[lead] = 1;
            coords[lead + 1..].copy_from_slice(&tail);
            if !f(&coords) {
                return false;
            }
            // odometer increment
            let mut k = 0;
            while k < free {
                tail[k] += 1;
                if tail[k] < p {
                    break;
                }
                tail[k] = 0;
                k += 1;
            }
            if k == free {
                break;
            }
        }
    }
    true
}

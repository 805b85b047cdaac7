//! `S (x)_R S` as a quotient of `S (x)_k S` by the balancing relations.

use thiserror::Error;

use super::StructureAlgebra;
use crate::exactnum::Scalar;
use crate::linalg::{vector, Matrix, SparseEchelon, SparseVec, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("base subspace is not a unital subalgebra")]
    NotASubalgebra,
    #[error("multiplication map does not vanish on a relation")]
    MultiplicationNotWellDefined,
    #[error("{side} action of e{basis} does not preserve the relations")]
    ActionDoesNotDescend { side: &'static str, basis: usize },
}

/// Ambient index `a * n + b` stands for `e_a (x) e_b`. The quotient basis is
/// the set of non-pivot columns of the fully reduced relation span, so
/// projecting is reduction followed by reading those columns.
#[derive(Debug, Clone)]
pub struct TensorOverBase {
    algebra: StructureAlgebra,
    base: Subspace,
    relations: SparseEchelon,
    free: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl TensorOverBase {
    pub fn new(algebra: &StructureAlgebra, base: &Subspace) -> Result<Self, TensorError> {
        if !algebra.is_unital_subalgebra(base) {
            return Err(TensorError::NotASubalgebra);
        }
        let n = algebra.dim();
        let field = algebra.field();
        let mut relations = SparseEchelon::new(field, n * n);
        // (e_i r) (x) e_j - e_i (x) (r e_j)
        for r in base.basis() {
            let left: Vec<Vector> = (0..n).map(|i| algebra.mul_unchecked(&algebra.basis_vector(i), r)).collect();
            let right: Vec<Vector> = (0..n).map(|j| algebra.mul_unchecked(r, &algebra.basis_vector(j))).collect();
            for i in 0..n {
                for j in 0..n {
                    let mut rel: SparseVec = Vec::new();
                    for (a, x) in left[i].iter().enumerate() {
                        if !x.is_zero() {
                            rel.push((a * n + j, x.clone()));
                        }
                    }
                    for (b, y) in right[j].iter().enumerate() {
                        if !y.is_zero() {
                            rel.push((i * n + b, -y));
                        }
                    }
                    rel.sort_by_key(|(k, _)| *k);
                    let rel = merge(rel);
                    if !rel.is_empty() {
                        relations.insert(&rel);
                    }
                }
            }
        }
        let free: Vec<usize> = (0..n * n).filter(|&c| !relations.is_pivot(c)).collect();
        let mut position = vec![None; n * n];
        for (q, &c) in free.iter().enumerate() {
            position[c] = Some(q);
        }
        Ok(TensorOverBase {
            algebra: algebra.clone(),
            base: base.clone(),
            relations,
            free,
            position,
        })
    }

    pub fn algebra(&self) -> &StructureAlgebra {
        &self.algebra
    }

    pub fn base(&self) -> &Subspace {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.relations.rank()
    }

    /// The pair `(a, b)` whose class `e_a (x) e_b` is the `q`-th quotient basis vector.
    pub fn basis_pair(&self, q: usize) -> (usize, usize) {
        let n = self.algebra.dim();
        (self.free[q] / n, self.free[q] % n)
    }

    pub fn zero(&self) -> Vector {
        vector::zeros(self.algebra.field(), self.dim())
    }

    /// Quotient coordinates of an ambient element given sparsely.
    pub fn project_sparse(&self, x: &[(usize, Scalar)]) -> Vector {
        let mut out = self.zero();
        for (c, v) in self.relations.reduce(x) {
            let q = self.position[c].expect("reduced vectors live on free columns");
            out[q] = v;
        }
        out
    }

    fn ambient_pairs(&self, pairs: &[(Vector, Vector)]) -> SparseVec {
        let n = self.algebra.dim();
        let mut acc: SparseVec = Vec::new();
        for (a, b) in pairs {
            let mut term: SparseVec = Vec::new();
            for (i, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    if !y.is_zero() {
                        term.push((i * n + j, x * y));
                    }
                }
            }
            acc = vector::sparse_axpy(&acc, &self.algebra.field().one(), &term);
        }
        acc
    }

    /// Class of `sum a_i (x) b_i`.
    pub fn class_of_pairs(&self, pairs: &[(Vector, Vector)]) -> Vector {
        self.project_sparse(&self.ambient_pairs(pairs))
    }

    /// The multiplication map `a (x) b -> a b` on quotient coordinates.
    pub fn multiply_out(&self, x: &[Scalar]) -> Vector {
        let mut out = self.algebra.zero();
        for (q, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (a, b) = self.basis_pair(q);
            for (k, v) in self.algebra.basis_product(a, b) {
                out[*k] = &out[*k] + &(c * v);
            }
        }
        out
    }

    /// `s x` for `s` in S and `x` in quotient coordinates.
    pub fn left_mul(&self, s: &[Scalar], x: &[Scalar]) -> Vector {
        self.act(x, |a, b, alg| (alg.mul_unchecked(s, &alg.basis_vector(a)), alg.basis_vector(b)))
    }

    /// `x s`
    pub fn right_mul(&self, x: &[Scalar], s: &[Scalar]) -> Vector {
        self.act(x, |a, b, alg| (alg.basis_vector(a), alg.mul_unchecked(&alg.basis_vector(b), s)))
    }

    fn act<F>(&self, x: &[Scalar], f: F) -> Vector
    where
        F: Fn(usize, usize, &StructureAlgebra) -> (Vector, Vector),
    {
        let mut pairs = Vec::new();
        for (q, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (a, b) = self.basis_pair(q);
            let (l, r) = f(a, b, &self.algebra);
            pairs.push((vector::scale(c, &l), r));
        }
        self.class_of_pairs(&pairs)
    }

    /// Matrix of `x -> s x - x s` on the quotient.
    pub fn commutator_matrix(&self, s: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim())
            .map(|q| {
                let e = vector::unit(self.algebra.field(), self.dim(), q);
                vector::sub(&self.left_mul(s, &e), &self.right_mul(&e, s))
            })
            .collect();
        Matrix::from_columns(self.algebra.field(), self.dim(), &cols).expect("square")
    }

    /// Matrix of the multiplication map (columns are images of quotient basis vectors).
    pub fn multiplication_matrix(&self) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim())
            .map(|q| self.multiply_out(&vector::unit(self.algebra.field(), self.dim(), q)))
            .collect();
        Matrix::from_columns(self.algebra.field(), self.algebra.dim(), &cols).expect("shape")
    }

    /// Checks on every relation basis row that `m` vanishes and both
    /// S-actions by basis vectors map relations to relations. The rows span
    /// the same space as the generators, so by linearity this is the same test.
    pub fn verify(&self) -> Result<(), TensorError> {
        let n = self.algebra.dim();
        let field = self.algebra.field();
        for p in self.relations.pivots() {
            let row = self.relations.row(p).expect("pivot row");
            let mut m = self.algebra.zero();
            for (c, v) in row {
                for (k, y) in self.algebra.basis_product(c / n, c % n) {
                    m[*k] = &m[*k] + &(v * y);
                }
            }
            if !vector::is_zero(&m) {
                return Err(TensorError::MultiplicationNotWellDefined);
            }
            for s in 0..n {
                let mut left: SparseVec = Vec::new();
                let mut right: SparseVec = Vec::new();
                for (c, v) in row {
                    let (a, b) = (c / n, c % n);
                    let l: SparseVec = self.algebra.basis_product(s, a).iter().map(|(k, y)| (k * n + b, v * y)).collect();
                    left = vector::sparse_axpy(&left, &field.one(), &l);
                    let r: SparseVec = self.algebra.basis_product(b, s).iter().map(|(k, y)| (a * n + k, v * y)).collect();
                    right = vector::sparse_axpy(&right, &field.one(), &sorted(r));
                }
                if !self.relations.contains(&left) {
                    return Err(TensorError::ActionDoesNotDescend { side: "left", basis: s });
                }
                if !self.relations.contains(&right) {
                    return Err(TensorError::ActionDoesNotDescend { side: "right", basis: s });
                }
            }
        }
        Ok(())
    }
}

fn sorted(mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|(k, _)| *k);
    merge(v)
}

/// Combines equal indices of a sorted sparse vector and drops zeros.
fn merge(v: SparseVec) -> SparseVec {
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (k, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == k => *y = &*y + &x,
            _ => out.push((k, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

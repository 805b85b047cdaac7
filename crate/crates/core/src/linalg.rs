//! Dense exact linear algebra and subspace calculus.
//!
//! Subspaces are stored by their reduced row echelon basis, so two subspaces
//! are equal exactly when their stored bases are.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exactnum::{FieldSpec, Scalar};

pub type Vector = Vec<Scalar>;
/// Sorted `(index, nonzero coefficient)` pairs.
pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("second subspace is not contained in the first")]
    NotASubspace,
    #[error("vector does not lie in the subspace")]
    NotInSubspace,
}

fn check_dim(expected: usize, found: usize) -> Result<(), LinalgError> {
    if expected == found {
        Ok(())
    } else {
        Err(LinalgError::DimensionMismatch { expected, found })
    }
}

pub mod vector {
    use super::*;

    pub fn zeros(field: FieldSpec, n: usize) -> Vector {
        vec![field.zero(); n]
    }

    pub fn unit(field: FieldSpec, n: usize, i: usize) -> Vector {
        let mut v = zeros(field, n);
        v[i] = field.one();
        v
    }

    pub fn is_zero(v: &[Scalar]) -> bool {
        v.iter().all(Scalar::is_zero)
    }

    pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(c: &Scalar, v: &[Scalar]) -> Vector {
        v.iter().map(|x| c * x).collect()
    }

    pub fn neg(v: &[Scalar]) -> Vector {
        v.iter().map(|x| -x).collect()
    }

    /// `acc += c * v`
    pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
        if c.is_zero() {
            return;
        }
        for (a, x) in acc.iter_mut().zip(v) {
            if !x.is_zero() {
                *a = &*a + &(c * x);
            }
        }
    }

    pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
        let field = a.first().or(b.first()).map(Scalar::field).unwrap_or(FieldSpec::Rationals);
        let mut acc = field.zero();
        for (x, y) in a.iter().zip(b) {
            if !x.is_zero() && !y.is_zero() {
                acc = &acc + &(x * y);
            }
        }
        acc
    }

    pub fn to_sparse(v: &[Scalar]) -> SparseVec {
        v.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect()
    }

    pub fn from_sparse(field: FieldSpec, n: usize, s: &[(usize, Scalar)]) -> Vector {
        let mut v = zeros(field, n);
        for (i, x) in s {
            v[*i] = x.clone();
        }
        v
    }

    /// Merge `a + c * b` for sorted sparse vectors.
    pub fn sparse_axpy(a: &[(usize, Scalar)], c: &Scalar, b: &[(usize, Scalar)]) -> SparseVec {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i].clone());
                i += 1;
            } else if take_b {
                let v = c * &b[j].1;
                if !v.is_zero() {
                    out.push((b[j].0, v));
                }
                j += 1;
            } else {
                let v = &a[i].1 + &(c * &b[j].1);
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vector>) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            check_dim(cols, r.len())?;
            for x in &r {
                if x.field() != field {
                    return Err(LinalgError::FieldMismatch(field, x.field()));
                }
            }
            data.extend(r);
        }
        Ok(Matrix {
            field,
            rows: n,
            cols,
            data,
        })
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vector]) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            check_dim(rows, c.len())?;
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector, LinalgError> {
        check_dim(self.cols, v.len())?;
        Ok((0..self.rows).map(|r| vector::dot(self.row(r), v)).collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        check_dim(self.cols, other.rows)?;
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + &(a * b);
                        out.set(r, c, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        rref(self).rows
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }
}

/// In-place Gauss-Jordan elimination. Pivots are searched in the first
/// `pivot_cols` columns only; row operations act on whole rows. Zero rows
/// (within the pivot range) are dropped. Returns the pivot columns.
fn eliminate(rows: &mut Vec<Vector>, pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        let Some(i) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, i);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (k, p) in pivot_row.iter().enumerate().skip(c) {
                if !p.is_zero() {
                    row[k] = &row[k] - &(&f * p);
                }
            }
            // entries left of c in the pivot row are zero
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Reduced row echelon form with zero rows removed.
pub fn rref(m: &Matrix) -> Matrix {
    let mut rows = m.row_vectors();
    eliminate(&mut rows, m.cols);
    Matrix::from_rows(m.field, m.cols, rows).expect("shape preserved")
}

/// Null space `{x : m x = 0}`.
pub fn kernel(m: &Matrix) -> Subspace {
    let mut rows = m.row_vectors();
    let pivots = eliminate(&mut rows, m.cols);
    kernel_from_rref(m.field, m.cols, &rows, &pivots)
}

fn kernel_from_rref(field: FieldSpec, cols: usize, rows: &[Vector], pivots: &[usize]) -> Subspace {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut x = vector::zeros(field, cols);
        x[f] = field.one();
        for (row, &p) in rows.iter().zip(pivots) {
            x[p] = -&row[f];
        }
        basis.push(x);
    }
    Subspace::span(field, cols, basis)
}

/// Fully reduced sparse echelon basis, grown one vector at a time.
///
/// Invariant: every stored row has a leading 1 at its pivot and zeros in all
/// other pivot columns.
#[derive(Debug, Clone)]
pub struct SparseEchelon {
    field: FieldSpec,
    ambient: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl SparseEchelon {
    pub fn new(field: FieldSpec, ambient: usize) -> Self {
        SparseEchelon {
            field,
            ambient,
            rows: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.rows.contains_key(&c)
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, x) in v {
            match self.rows.get(c) {
                Some(row) => {
                    for (k, y) in row {
                        if k == c {
                            continue;
                        }
                        let e = acc.entry(*k).or_insert_with(|| self.field.zero());
                        *e = &*e - &(x * y);
                    }
                }
                None => {
                    let e = acc.entry(*c).or_insert_with(|| self.field.zero());
                    *e = &*e + x;
                }
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.first().cloned() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero lead");
        let r: SparseVec = r.into_iter().map(|(k, x)| (k, &x * &inv)).collect();
        for row in self.rows.values_mut() {
            if let Ok(pos) = row.binary_search_by_key(&pivot, |(k, _)| *k) {
                let f = -&row[pos].1;
                *row = vector::sparse_axpy(row, &f, &r);
            }
        }
        self.rows.insert(pivot, r);
        true
    }

    pub fn insert_dense(&mut self, v: &[Scalar]) -> bool {
        self.insert(&vector::to_sparse(v))
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn to_subspace(&self) -> Subspace {
        let basis = self
            .rows
            .values()
            .map(|r| vector::from_sparse(self.field, self.ambient, r))
            .collect();
        Subspace {
            field: self.field,
            ambient: self.ambient,
            basis,
            pivots: self.rows.keys().copied().collect(),
        }
    }
}

/// A subspace of `field^ambient` held in canonical (RREF) form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span<I: IntoIterator<Item = Vector>>(field: FieldSpec, ambient: usize, vectors: I) -> Self {
        let mut e = SparseEchelon::new(field, ambient);
        for v in vectors {
            debug_assert_eq!(v.len(), ambient);
            e.insert_dense(&v);
        }
        e.to_subspace()
    }

    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Self::coordinate(field, ambient, 0..ambient)
    }

    /// Span of the standard basis vectors at `indices`.
    pub fn coordinate<I: IntoIterator<Item = usize>>(field: FieldSpec, ambient: usize, indices: I) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        Subspace {
            field,
            ambient,
            basis: idx.iter().map(|&i| vector::unit(field, ambient, i)).collect(),
            pivots: idx,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.ambient, self.basis.clone()).expect("consistent basis")
    }

    fn residual(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r[p].clone();
            if !c.is_zero() {
                vector::axpy(&mut r, &-&c, b);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient && vector::is_zero(&self.residual(v))
    }

    /// Coefficients of `v` over the stored basis.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Linear combination of the stored basis.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vector {
        let mut out = vector::zeros(self.field, self.ambient);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            vector::axpy(&mut out, c, b);
        }
        out
    }

    fn compatible(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch(self.field, other.field));
        }
        check_dim(self.ambient, other.ambient)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.compatible(other)?;
        Ok(Subspace::span(
            self.field,
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        ))
    }

    /// `{y : y . b = 0 for every b in self}`
    pub fn annihilator(&self) -> Subspace {
        kernel(&self.matrix())
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field, self.ambient));
        }
        // x = a . self.basis lies in other iff ann(other) x = 0
        let ann = other.annihilator();
        let constraints: Vec<Vector> = ann
            .basis
            .iter()
            .map(|y| self.basis.iter().map(|b| vector::dot(y, b)).collect())
            .collect();
        let m = Matrix::from_rows(self.field, self.dim(), constraints)?;
        let coeffs = kernel(&m);
        Ok(Subspace::span(
            self.field,
            self.ambient,
            coeffs.basis.iter().map(|a| self.combine(a)),
        ))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.compatible(other)?;
        Ok(self.basis.iter().all(|b| other.contains(b)))
    }

    pub fn equals(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.compatible(other)?;
        Ok(self == other)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffineSolution {
    Feasible { particular: Vector, kernel: Subspace },
    /// `certificate . a = 0` and `certificate . b = 1`.
    Infeasible { certificate: Vector },
}

impl AffineSolution {
    pub fn particular(&self) -> Option<&Vector> {
        match self {
            AffineSolution::Feasible { particular, .. } => Some(particular),
            AffineSolution::Infeasible { .. } => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, AffineSolution::Feasible { .. })
    }
}

/// Solves `a x = b` exactly.
pub fn solve_affine(a: &Matrix, b: &[Scalar]) -> Result<AffineSolution, LinalgError> {
    check_dim(a.rows, b.len())?;
    let field = a.field;
    let n = a.cols;
    let mut rows: Vec<Vector> = (0..a.rows)
        .map(|r| {
            let mut row = a.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();
    let pivots = eliminate(&mut rows, n + 1);
    if pivots.last() == Some(&n) {
        // rerun with row bookkeeping to extract the separating functional
        let mut tracked: Vec<Vector> = (0..a.rows)
            .map(|r| {
                let mut row = a.row(r).to_vec();
                row.push(b[r].clone());
                row.extend(vector::unit(field, a.rows, r));
                row
            })
            .collect();
        let pv = eliminate(&mut tracked, n + 1);
        let i = pv.iter().position(|&p| p == n).expect("inconsistent row");
        return Ok(AffineSolution::Infeasible {
            certificate: tracked[i][n + 1..].to_vec(),
        });
    }
    let mut particular = vector::zeros(field, n);
    for (row, &p) in rows.iter().zip(&pivots) {
        particular[p] = row[n].clone();
    }
    let stripped: Vec<Vector> = rows.iter().map(|r| r[..n].to_vec()).collect();
    Ok(AffineSolution::Feasible {
        particular,
        kernel: kernel_from_rref(field, n, &stripped, &pivots),
    })
}

/// A complement basis for `w` inside `v` together with the projection onto it.
#[derive(Debug, Clone)]
pub struct Quotient {
    v: Subspace,
    w: Subspace,
    coset: Subspace,
}

impl Quotient {
    /// Lifts of a basis of `v / w`.
    pub fn coset_basis(&self) -> &[Vector] {
        self.coset.basis()
    }

    pub fn dim(&self) -> usize {
        self.coset.dim()
    }

    /// Coordinates of the class of `x` (which must lie in `v`).
    pub fn project(&self, x: &[Scalar]) -> Result<Vector, LinalgError> {
        if !self.v.contains(x) {
            return Err(LinalgError::NotInSubspace);
        }
        let r = self.w.residual(x);
        Ok(self.coset.pivots.iter().map(|&p| r[p].clone()).collect())
    }
}

pub fn quotient_with_section(v: &Subspace, w: &Subspace) -> Result<Quotient, LinalgError> {
    v.compatible(w)?;
    if !w.is_subspace_of(v)? {
        return Err(LinalgError::NotASubspace);
    }
    let coset = Subspace::span(v.field, v.ambient, v.basis.iter().map(|b| w.residual(b)));
    Ok(Quotient {
        v: v.clone(),
        w: w.clone(),
        coset,
    })
}

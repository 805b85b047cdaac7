//! Finite-dimensional unital associative algebras given by structure constants.

mod tensor;

pub use tensor::{TensorError, TensorOverBase};

use thiserror::Error;

use crate::exactnum::{FieldSpec, Scalar};
use crate::linalg::{self, vector, AffineSolution, Matrix, SparseEchelon, SparseVec, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("structure table has wrong shape: {0}")]
    BadShape(String),
    #[error("elements have length {found}, algebra has dimension {expected}")]
    AlgebraMismatch { expected: usize, found: usize },
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error("ideal has no identity element")]
    NotUnital,
    #[error("corner data is inconsistent: {0}")]
    BadCorner(&'static str),
    #[error("element is not invertible in the corner")]
    NotInvertible,
    #[error("subspace is not a unital subalgebra")]
    NotASubalgebra,
    #[error(transparent)]
    Linalg(#[from] linalg::LinalgError),
}

/// First failing structural law, with the offending basis indices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraViolation {
    #[error("(e{0} e{1}) e{2} != e{0} (e{1} e{2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit vector is zero")]
    NoUnit,
    #[error("unit does not act as identity on e{0}")]
    UnitFails(usize),
}

/// Unital associative algebra with basis `e_0 .. e_{n-1}` and
/// `e_i e_j = table[i * n + j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureAlgebra {
    field: FieldSpec,
    dim: usize,
    table: Vec<SparseVec>,
    unit: Vector,
}

impl StructureAlgebra {
    /// Builds from a dense product function; performs shape checks only.
    pub fn from_fn<F>(field: FieldSpec, dim: usize, unit: Vector, mut product: F) -> Result<Self, AlgebraError>
    where
        F: FnMut(usize, usize) -> Vector,
    {
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = product(i, j);
                if v.len() != dim {
                    return Err(AlgebraError::BadShape(format!("e{i} e{j} has length {}", v.len())));
                }
                table.push(vector::to_sparse(&v));
            }
        }
        Self::from_sparse_table(field, dim, table, unit)
    }

    pub fn from_sparse_table(
        field: FieldSpec,
        dim: usize,
        table: Vec<SparseVec>,
        unit: Vector,
    ) -> Result<Self, AlgebraError> {
        if table.len() != dim * dim {
            return Err(AlgebraError::BadShape(format!("{} products for dimension {dim}", table.len())));
        }
        if unit.len() != dim {
            return Err(AlgebraError::BadShape(format!("unit has length {}", unit.len())));
        }
        for entry in &table {
            for (k, x) in entry {
                if *k >= dim || x.field() != field {
                    return Err(AlgebraError::BadShape("coordinate out of range or wrong field".into()));
                }
            }
        }
        if unit.iter().any(|x| x.field() != field) {
            return Err(AlgebraError::BadShape("unit over wrong field".into()));
        }
        let table = table
            .into_iter()
            .map(|mut e| {
                e.sort_by_key(|(k, _)| *k);
                e.retain(|(_, x)| !x.is_zero());
                e
            })
            .collect();
        Ok(StructureAlgebra { field, dim, table, unit })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn zero(&self) -> Vector {
        vector::zeros(self.field, self.dim)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        vector::unit(self.field, self.dim, i)
    }

    /// `e_i e_j` as sparse coordinates.
    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim + j]
    }

    /// Checks associativity on all basis triples and the unit laws.
    pub fn validate(&self) -> Result<(), AlgebraViolation> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j);
                for k in 0..n {
                    let jk = self.basis_product(j, k);
                    let mut left: SparseVec = Vec::new();
                    for (a, x) in ij {
                        left = vector::sparse_axpy(&left, x, self.basis_product(*a, k));
                    }
                    let mut right: SparseVec = Vec::new();
                    for (b, y) in jk {
                        right = vector::sparse_axpy(&right, y, self.basis_product(i, *b));
                    }
                    if left != right {
                        return Err(AlgebraViolation::NotAssociative(i, j, k));
                    }
                }
            }
        }
        if vector::is_zero(&self.unit) {
            return Err(AlgebraViolation::NoUnit);
        }
        for i in 0..n {
            let e = self.basis_vector(i);
            if self.mul_unchecked(&self.unit, &e) != e || self.mul_unchecked(&e, &self.unit) != e {
                return Err(AlgebraViolation::UnitFails(i));
            }
        }
        Ok(())
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector, AlgebraError> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(AlgebraError::AlgebraMismatch {
                    expected: self.dim,
                    found: v.len(),
                });
            }
        }
        Ok(self.mul_unchecked(x, y))
    }

    /// Bilinear product; callers guarantee both lengths equal `dim`.
    pub fn mul_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = self.zero();
        let ys: Vec<(usize, &Scalar)> = y.iter().enumerate().filter(|(_, b)| !b.is_zero()).collect();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in &ys {
                let c = a * *b;
                for (k, s) in self.basis_product(i, *j) {
                    out[*k] = &out[*k] + &(&c * s);
                }
            }
        }
        out
    }

    pub fn mul3(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        self.mul_unchecked(&self.mul_unchecked(x, y), z)
    }

    /// `x y - y x`
    pub fn commutator(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        vector::sub(&self.mul_unchecked(x, y), &self.mul_unchecked(y, x))
    }

    /// Matrix of `v -> x v` (columns are images of basis vectors).
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| self.mul_unchecked(x, &self.basis_vector(j)))
            .collect();
        Matrix::from_columns(self.field, self.dim, &cols).expect("square")
    }

    pub fn right_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| self.mul_unchecked(&self.basis_vector(j), x))
            .collect();
        Matrix::from_columns(self.field, self.dim, &cols).expect("square")
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// `span { v w : v in basis(a), w in basis(b) }`
    pub fn product_space(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut e = SparseEchelon::new(self.field, self.dim);
        for v in a.basis() {
            for w in b.basis() {
                e.insert_dense(&self.mul_unchecked(v, w));
            }
        }
        e.to_subspace()
    }

    /// Elements of `within` commuting with every basis vector of `t`.
    pub fn centralizer_within(&self, within: &Subspace, t: &Subspace) -> Subspace {
        if within.is_zero() || t.is_zero() {
            return within.clone();
        }
        // unknown: coefficients over within's basis
        let mut rows = Vec::new();
        let brackets: Vec<Vec<Vector>> = within
            .basis()
            .iter()
            .map(|w| t.basis().iter().map(|v| self.commutator(w, v)).collect())
            .collect();
        for vi in 0..t.dim() {
            for k in 0..self.dim {
                rows.push(brackets.iter().map(|b| b[vi][k].clone()).collect());
            }
        }
        let m = Matrix::from_rows(self.field, within.dim(), rows).expect("shape");
        let coeffs = linalg::kernel(&m);
        Subspace::span(self.field, self.dim, coeffs.basis().iter().map(|c| within.combine(c)))
    }

    pub fn centralizer(&self, t: &Subspace) -> Subspace {
        self.centralizer_within(&Subspace::full(self.field, self.dim), t)
    }

    pub fn center(&self) -> Subspace {
        let full = Subspace::full(self.field, self.dim);
        self.centralizer_within(&full, &full)
    }

    /// Smallest two-sided ideal containing `gens`: the span of
    /// `e_i g e_j`. One pass suffices because `1` is among the `e_i`-combinations.
    pub fn two_sided_ideal(&self, gens: &[Vector]) -> Subspace {
        let mut e = SparseEchelon::new(self.field, self.dim);
        for g in gens {
            let lefts: Vec<Vector> = (0..self.dim)
                .map(|i| self.mul_unchecked(&self.basis_vector(i), g))
                .collect();
            for l in &lefts {
                for j in 0..self.dim {
                    e.insert_dense(&self.mul_unchecked(l, &self.basis_vector(j)));
                }
            }
        }
        e.to_subspace()
    }

    /// Whether `i` is a two-sided ideal of the subalgebra `ring`.
    pub fn is_ideal_within(&self, ring: &Subspace, i: &Subspace) -> bool {
        for r in ring.basis() {
            for v in i.basis() {
                if !i.contains(&self.mul_unchecked(r, v)) || !i.contains(&self.mul_unchecked(v, r)) {
                    return false;
                }
            }
        }
        true
    }

    /// Identity element of an ideal of the subalgebra `ring`. The zero ideal
    /// has identity `0`.
    pub fn ideal_identity_within(&self, ring: &Subspace, i: &Subspace) -> Result<Vector, AlgebraError> {
        if !i.is_subspace_of(ring)? || !self.is_ideal_within(ring, i) {
            return Err(AlgebraError::NotAnIdeal);
        }
        self.identity_of(i)
    }

    pub fn ideal_identity(&self, i: &Subspace) -> Result<Vector, AlgebraError> {
        self.ideal_identity_within(&Subspace::full(self.field, self.dim), i)
    }

    /// Solves for `eps` in `i` with `eps v = v = v eps` for all basis `v` of `i`.
    fn identity_of(&self, i: &Subspace) -> Result<Vector, AlgebraError> {
        if i.is_zero() {
            return Ok(self.zero());
        }
        let k = i.dim();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for v in i.basis() {
            let lefts: Vec<Vector> = i.basis().iter().map(|b| self.mul_unchecked(b, v)).collect();
            let rights: Vec<Vector> = i.basis().iter().map(|b| self.mul_unchecked(v, b)).collect();
            for c in 0..self.dim {
                rows.push(lefts.iter().map(|l| l[c].clone()).collect());
                rhs.push(v[c].clone());
                rows.push(rights.iter().map(|r| r[c].clone()).collect());
                rhs.push(v[c].clone());
            }
        }
        let m = Matrix::from_rows(self.field, k, rows)?;
        match linalg::solve_affine(&m, &rhs)? {
            AffineSolution::Feasible { particular, kernel } => {
                // identities are unique; a nonzero kernel would contradict that
                debug_assert!(kernel.is_zero());
                Ok(i.combine(&particular))
            }
            AffineSolution::Infeasible { .. } => Err(AlgebraError::NotUnital),
        }
    }

    pub fn is_idempotent(&self, x: &[Scalar]) -> bool {
        self.mul_unchecked(x, x) == x
    }

    /// `unit A unit` as a subspace.
    pub fn corner(&self, unit: &[Scalar]) -> Subspace {
        let mut e = SparseEchelon::new(self.field, self.dim);
        for i in 0..self.dim {
            e.insert_dense(&self.mul3(unit, &self.basis_vector(i), unit));
        }
        e.to_subspace()
    }

    /// Inverse of `x` inside the corner ring with identity `unit`.
    pub fn corner_inverse(&self, x: &[Scalar], unit: &[Scalar]) -> Result<Vector, AlgebraError> {
        self.mul(x, unit)?;
        if !self.is_idempotent(unit) {
            return Err(AlgebraError::BadCorner("unit is not idempotent"));
        }
        if self.mul3(unit, x, unit) != x {
            return Err(AlgebraError::BadCorner("element is not in the corner"));
        }
        let corner = self.corner(unit);
        if corner.is_zero() {
            return Ok(self.zero());
        }
        let lefts: Vec<Vector> = corner.basis().iter().map(|b| self.mul_unchecked(x, b)).collect();
        let rights: Vec<Vector> = corner.basis().iter().map(|b| self.mul_unchecked(b, x)).collect();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for c in 0..self.dim {
            rows.push(lefts.iter().map(|l| l[c].clone()).collect());
            rhs.push(unit[c].clone());
            rows.push(rights.iter().map(|r| r[c].clone()).collect());
            rhs.push(unit[c].clone());
        }
        let m = Matrix::from_rows(self.field, corner.dim(), rows)?;
        match linalg::solve_affine(&m, &rhs)? {
            AffineSolution::Feasible { particular, .. } => Ok(corner.combine(&particular)),
            AffineSolution::Infeasible { .. } => Err(AlgebraError::NotInvertible),
        }
    }

    /// Two-sided inverse of `x` lying in `sub`, if any.
    pub fn inverse_within(&self, sub: &Subspace, x: &[Scalar]) -> Option<Vector> {
        if sub.is_zero() {
            return None;
        }
        let images: Vec<Vector> = sub.basis().iter().map(|b| self.mul_unchecked(x, b)).collect();
        let m = Matrix::from_columns(self.field, self.dim, &images).ok()?;
        let y = sub.combine(linalg::solve_affine(&m, &self.unit).ok()?.particular()?);
        (self.mul_unchecked(&y, x) == self.unit).then_some(y)
    }

    /// Whether `sub` contains `1` and is closed under multiplication.
    pub fn is_unital_subalgebra(&self, sub: &Subspace) -> bool {
        sub.ambient_dim() == self.dim
            && sub.contains(&self.unit)
            && sub
                .basis()
                .iter()
                .all(|a| sub.basis().iter().all(|b| sub.contains(&self.mul_unchecked(a, b))))
    }

    /// The subalgebra on `sub`'s stored basis, with its embedding matrix
    /// (columns are the basis vectors in ambient coordinates).
    pub fn subalgebra(&self, sub: &Subspace) -> Result<(StructureAlgebra, Matrix), AlgebraError> {
        if !self.is_unital_subalgebra(sub) {
            return Err(AlgebraError::NotASubalgebra);
        }
        let basis = sub.basis();
        let unit = sub.coordinates(&self.unit).expect("unit in subalgebra");
        let alg = StructureAlgebra::from_fn(self.field, sub.dim(), unit, |i, j| {
            sub.coordinates(&self.mul_unchecked(&basis[i], &basis[j]))
                .expect("closed")
        })?;
        let emb = Matrix::from_columns(self.field, self.dim, basis)?;
        Ok((alg, emb))
    }

    /// Direct product `self x other` with block-diagonal structure.
    pub fn product(&self, other: &StructureAlgebra) -> Result<StructureAlgebra, AlgebraError> {
        if self.field != other.field {
            return Err(AlgebraError::BadShape("field mismatch".into()));
        }
        let (n, m) = (self.dim, other.dim);
        let mut unit = self.unit.clone();
        unit.extend(other.unit.iter().cloned());
        let mut table = Vec::with_capacity((n + m) * (n + m));
        for i in 0..n + m {
            for j in 0..n + m {
                let e = if i < n && j < n {
                    self.basis_product(i, j).clone()
                } else if i >= n && j >= n {
                    other.basis_product(i - n, j - n).iter().map(|(k, x)| (k + n, x.clone())).collect()
                } else {
                    Vec::new()
                };
                table.push(e);
            }
        }
        StructureAlgebra::from_sparse_table(self.field, n + m, table, unit)
    }

    /// The algebra `field^m` with orthogonal idempotent basis.
    pub fn diagonal(field: FieldSpec, m: usize) -> StructureAlgebra {
        StructureAlgebra::from_fn(field, m, vec![field.one(); m], |i, j| {
            if i == j {
                vector::unit(field, m, i)
            } else {
                vector::zeros(field, m)
            }
        })
        .expect("well-formed")
    }

    /// Full matrix algebra `M_n(field)` with basis `e_{ij}` at index `i * n + j`.
    pub fn matrix_algebra(field: FieldSpec, n: usize) -> StructureAlgebra {
        let d = n * n;
        let mut unit = vector::zeros(field, d);
        for i in 0..n {
            unit[i * n + i] = field.one();
        }
        StructureAlgebra::from_fn(field, d, unit, |a, b| {
            let (i, j) = (a / n, a % n);
            let (k, l) = (b / n, b % n);
            if j == k {
                vector::unit(field, d, i * n + l)
            } else {
                vector::zeros(field, d)
            }
        })
        .expect("well-formed")
    }

    /// `M_n(base)`: basis `e_{ij} (x) b_k` at index `(i * n + j) * dim(base) + k`.
    pub fn matrices_over(base: &StructureAlgebra, n: usize) -> StructureAlgebra {
        let db = base.dim;
        let d = n * n * db;
        let field = base.field;
        let mut unit = vector::zeros(field, d);
        for i in 0..n {
            for (k, x) in base.unit.iter().enumerate() {
                unit[(i * n + i) * db + k] = x.clone();
            }
        }
        let mut table = Vec::with_capacity(d * d);
        for a in 0..d {
            let (pa, ka) = (a / db, a % db);
            let (i, j) = (pa / n, pa % n);
            for b in 0..d {
                let (pb, kb) = (b / db, b % db);
                let (k, l) = (pb / n, pb % n);
                if j == k {
                    let off = (i * n + l) * db;
                    table.push(base.basis_product(ka, kb).iter().map(|(c, x)| (off + c, x.clone())).collect());
                } else {
                    table.push(Vec::new());
                }
            }
        }
        StructureAlgebra::from_sparse_table(field, d, table, unit).expect("well-formed")
    }

    /// `field[t] / (t^n)` with basis `1, t, .., t^{n-1}`.
    pub fn truncated_polynomial(field: FieldSpec, n: usize) -> StructureAlgebra {
        StructureAlgebra::from_fn(field, n, vector::unit(field, n, 0), |i, j| {
            if i + j < n {
                vector::unit(field, n, i + j)
            } else {
                vector::zeros(field, n)
            }
        })
        .expect("well-formed")
    }
}

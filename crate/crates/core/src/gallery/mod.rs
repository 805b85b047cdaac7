//! Named example families and a seeded random corpus of epsilon-strongly
//! graded rings.

mod morita;
mod random;

pub use morita::{gen_morita_from_strong, gen_morita_ring, morita_ring_graded, MoritaContext, MoritaError};
pub use random::{
    corpus, gen_random_epsilon_strong, negatives, random_partial_action, CorpusInstance, Family, RandomParams, CORPUS_FIELDS,
};

use std::collections::BTreeMap;

use crate::algebra::StructureAlgebra;
use crate::exactnum::{FieldSpec, Scalar};
use crate::grading::GradedRing;
use crate::groups::{GradingGroup, GroupElement};
use crate::linalg::{vector, Matrix, Subspace, Vector};
use crate::partialaction::TwistedPartialAction;

/// The algebra carried by `sub` inside `alg`, with identity `unit` (which
/// need not be the identity of `alg`). Basis is the stored basis of `sub`.
pub(crate) fn algebra_on(alg: &StructureAlgebra, sub: &Subspace, unit: &[Scalar]) -> StructureAlgebra {
    let basis = sub.basis();
    let u = sub.coordinates(unit).expect("unit lies in the subspace");
    StructureAlgebra::from_fn(alg.field(), sub.dim(), u, |i, j| {
        sub.coordinates(&alg.mul_unchecked(&basis[i], &basis[j]))
            .expect("subspace is closed under multiplication")
    })
    .expect("shape")
}

/// Group algebra of a finite group, `deg(u_h) = h`.
pub fn gen_group_algebra(group: &GradingGroup, field: FieldSpec) -> GradedRing {
    let elems = group.elements().expect("finite group");
    let n = elems.len();
    let index = |g: GroupElement| elems.iter().position(|&x| x == g).expect("element");
    let unit = vector::unit(field, n, index(group.identity()));
    let alg = StructureAlgebra::from_fn(field, n, unit, |i, j| vector::unit(field, n, index(group.mul(elems[i], elems[j]))))
        .expect("shape");
    GradedRing::new(alg, group.clone(), elems).expect("degrees from the group")
}

/// `field[t]/(t^n)` with `deg(t^i) = step^i`.
pub fn truncated_polynomial_graded(field: FieldSpec, n: usize, group: &GradingGroup, step: GroupElement) -> GradedRing {
    let mut degrees = Vec::with_capacity(n);
    let mut g = group.identity();
    for _ in 0..n {
        degrees.push(g);
        g = group.mul(g, step);
    }
    GradedRing::new(StructureAlgebra::truncated_polynomial(field, n), group.clone(), degrees).expect("degrees from the group")
}

/// `M_n(base)` with `deg(e_ij (x) b) = g_i g_j^-1`.
pub fn elementary_grading(base: &StructureAlgebra, group: &GradingGroup, tuple: &[GroupElement]) -> GradedRing {
    let n = tuple.len();
    let db = base.dim();
    let alg = StructureAlgebra::matrices_over(base, n);
    let degrees = (0..alg.dim())
        .map(|a| {
            let p = a / db;
            group.mul(tuple[p / n], group.inv(tuple[p % n]))
        })
        .collect();
    GradedRing::new(alg, group.clone(), degrees).expect("degrees from the group")
}

/// `Z_2` acting partially on `field x field`: `D_1 = field x 0`, both maps
/// the identity, trivial twist.
pub fn half_action(field: FieldSpec) -> TwistedPartialAction {
    let z2 = GradingGroup::cyclic(2).expect("group");
    let idem = BTreeMap::from([
        (GroupElement::Finite(0), vec![field.one(), field.one()]),
        (GroupElement::Finite(1), vec![field.one(), field.zero()]),
    ]);
    let alpha = BTreeMap::from([
        (GroupElement::Finite(0), Matrix::identity(field, 2)),
        (GroupElement::Finite(1), Matrix::identity(field, 2)),
    ]);
    TwistedPartialAction::new(StructureAlgebra::diagonal(field, 2), z2, idem, alpha, BTreeMap::new()).expect("valid data")
}

/// Upper triangular `n x n` matrices over `field` with `deg(e_ij) = g_i g_j^-1`.
pub fn triangular_grading(field: FieldSpec, group: &GradingGroup, tuple: &[GroupElement]) -> GradedRing {
    let n = tuple.len();
    let full = StructureAlgebra::matrix_algebra(field, n);
    let idx: Vec<usize> = (0..n * n).filter(|a| a / n <= a % n).collect();
    let (alg, _) = full
        .subalgebra(&Subspace::coordinate(field, n * n, idx.iter().copied()))
        .expect("triangular matrices form a subalgebra");
    let degrees = idx.iter().map(|a| group.mul(tuple[a / n], group.inv(tuple[a % n]))).collect();
    GradedRing::new(alg, group.clone(), degrees).expect("degrees from the group")
}

/// `3 x 3` matrices whose entries come from a commutative algebra `A`,
/// with the entries at positions outside the `{0,1} x {0,1}` block and
/// `(2,2)` restricted to the ideal `B = A b` for an idempotent `b`.
/// Graded by `Z_2`, degree 1 on the positions `(i,2)` and `(2,i)`, `i < 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DadeRing {
    ring: GradedRing,
    a: StructureAlgebra,
    /// Per position `(i, j)`: offset of its block and the subspace of `A` it holds.
    slots: Vec<(usize, Subspace)>,
}

impl DadeRing {
    pub fn new(a: &StructureAlgebra, b_unit: &[Scalar]) -> Self {
        assert!(a.is_commutative() && a.is_idempotent(b_unit), "A commutative, b idempotent");
        let field = a.field();
        let full = Subspace::full(field, a.dim());
        let ideal = Subspace::span(field, a.dim(), (0..a.dim()).map(|i| a.mul_unchecked(&a.basis_vector(i), b_unit)));
        let bucket = |i: usize| usize::from(i == 2);
        let mut slots = Vec::new();
        let mut degrees = Vec::new();
        let mut offset = 0;
        for i in 0..3 {
            for j in 0..3 {
                let odd = (bucket(i) + bucket(j)) % 2 == 1;
                let sub = if odd { ideal.clone() } else { full.clone() };
                degrees.extend(std::iter::repeat_n(GroupElement::Finite(usize::from(odd)), sub.dim()));
                let d = sub.dim();
                slots.push((offset, sub));
                offset += d;
            }
        }
        let dim = offset;
        let place = |slots: &[(usize, Subspace)], i: usize, j: usize, x: &[Scalar]| -> Vector {
            let mut out = vector::zeros(field, dim);
            let (off, sub) = &slots[i * 3 + j];
            for (k, c) in sub.coordinates(x).expect("entry in slot").into_iter().enumerate() {
                out[off + k] = c;
            }
            out
        };
        let mut labels = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                for b in slots[i * 3 + j].1.basis() {
                    labels.push((i, j, b.clone()));
                }
            }
        }
        let mut unit = vector::zeros(field, dim);
        for i in 0..3 {
            unit = vector::add(&unit, &place(&slots, i, i, a.unit()));
        }
        let alg = StructureAlgebra::from_fn(field, dim, unit, |x, y| {
            let (i, j, p) = &labels[x];
            let (k, l, q) = &labels[y];
            if j == k {
                place(&slots, *i, *l, &a.mul_unchecked(p, q))
            } else {
                vector::zeros(field, dim)
            }
        })
        .expect("shape");
        let z2 = GradingGroup::cyclic(2).expect("group");
        let ring = GradedRing::new(alg, z2, degrees).expect("degrees from the group");
        DadeRing {
            ring,
            a: a.clone(),
            slots,
        }
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn into_ring(self) -> GradedRing {
        self.ring
    }

    /// The element with the given `A`-entries; unlisted positions are zero.
    pub fn element(&self, entries: &[(usize, usize, Vector)]) -> Vector {
        let mut out = self.ring.algebra().zero();
        for (i, j, x) in entries {
            let (off, sub) = &self.slots[i * 3 + j];
            for (k, c) in sub.coordinates(x).expect("entry in slot").into_iter().enumerate() {
                out[off + k] = c;
            }
        }
        out
    }

    /// `diag(x, y, z)`
    pub fn diagonal(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        self.element(&[(0, 0, x.to_vec()), (1, 1, y.to_vec()), (2, 2, z.to_vec())])
    }

    pub fn entry_algebra(&self) -> &StructureAlgebra {
        &self.a
    }
}

/// `A = field x field` and the idempotent `1_B = (1, 0)`.
fn field_pair(field: FieldSpec) -> (StructureAlgebra, Vector) {
    (StructureAlgebra::diagonal(field, 2), vec![field.one(), field.zero()])
}

/// The modified ring with `A = field x field`, `B = field x 0`.
pub fn dade_modified(field: FieldSpec) -> DadeRing {
    let (a, b) = field_pair(field);
    DadeRing::new(&a, &b)
}

/// `M_3(field x field)` with the checkerboard grading.
pub fn dade_original(field: FieldSpec) -> DadeRing {
    let (a, _) = field_pair(field);
    let one = a.unit().clone();
    DadeRing::new(&a, &one)
}

pub fn gen_dade_modified(field: FieldSpec) -> GradedRing {
    dade_modified(field).into_ring()
}

pub fn gen_dade_original(field: FieldSpec) -> GradedRing {
    dade_original(field).into_ring()
}

use thiserror::Error;

use super::algebra_on;
use crate::algebra::{AlgebraViolation, StructureAlgebra};
use crate::exactnum::FieldSpec;
use crate::grading::{EpsilonData, GradedRing};
use crate::groups::{GradingGroup, GroupElement};
use crate::linalg::{vector, Matrix, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoritaError {
    #[error("context tables have the wrong shape: {0}")]
    Shape(String),
    #[error("context axiom fails: {0}")]
    InvalidContext(String),
    #[error("pairing {0} is not surjective")]
    NotStrict(&'static str),
    #[error("ring is not strongly graded")]
    NotStronglyGraded,
    #[error("the off-diagonal degree must not be the identity")]
    IdentityDegree,
    /// Cannot happen for a strict context.
    #[error("eps of the Morita ring is not 1_A / 1_B")]
    EpsilonMismatch,
}

/// `(A, B, M, N, phi, psi)` in coordinates. Actions are stored one matrix
/// per basis element of the acting algebra; column `j` of `a_on_m[i]` is
/// `a_i m_j`, and likewise for the other three. `phi[j * dim N + l]` is
/// `phi(m_j (x) n_l)` in `A`, `psi[l * dim M + j]` is `psi(n_l (x) m_j)` in `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoritaContext {
    pub a: StructureAlgebra,
    pub b: StructureAlgebra,
    pub dim_m: usize,
    pub dim_n: usize,
    pub a_on_m: Vec<Matrix>,
    pub m_by_b: Vec<Matrix>,
    pub b_on_n: Vec<Matrix>,
    pub n_by_a: Vec<Matrix>,
    pub phi: Vec<Vector>,
    pub psi: Vec<Vector>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Block {
    A,
    M,
    N,
    B,
}

impl Block {
    fn name(self) -> &'static str {
        match self {
            Block::A => "a",
            Block::M => "m",
            Block::N => "n",
            Block::B => "b",
        }
    }
}

impl MoritaContext {
    /// Reads a context off subspaces of one ambient algebra, all products
    /// taken there.
    fn from_pieces(
        alg: &StructureAlgebra,
        (a_sub, a_unit): (&Subspace, &Vector),
        (b_sub, b_unit): (&Subspace, &Vector),
        m_sub: &Subspace,
        n_sub: &Subspace,
    ) -> MoritaContext {
        let field = alg.field();
        let a = algebra_on(alg, a_sub, a_unit);
        let b = algebra_on(alg, b_sub, b_unit);
        let act = |acting: &Subspace, on: &Subspace, left: bool| -> Vec<Matrix> {
            acting
                .basis()
                .iter()
                .map(|x| {
                    let cols: Vec<Vector> = on
                        .basis()
                        .iter()
                        .map(|y| {
                            let p = if left { alg.mul_unchecked(x, y) } else { alg.mul_unchecked(y, x) };
                            on.coordinates(&p).expect("bimodule closed")
                        })
                        .collect();
                    if cols.is_empty() {
                        Matrix::zeros(field, on.dim(), 0)
                    } else {
                        Matrix::from_columns(field, on.dim(), &cols).expect("shape")
                    }
                })
                .collect()
        };
        let pair = |first: &Subspace, second: &Subspace, target: &Subspace| -> Vec<Vector> {
            let mut out = Vec::new();
            for x in first.basis() {
                for y in second.basis() {
                    out.push(target.coordinates(&alg.mul_unchecked(x, y)).expect("pairing lands in the corner"));
                }
            }
            out
        };
        MoritaContext {
            dim_m: m_sub.dim(),
            dim_n: n_sub.dim(),
            a_on_m: act(a_sub, m_sub, true),
            m_by_b: act(b_sub, m_sub, false),
            b_on_n: act(b_sub, n_sub, true),
            n_by_a: act(a_sub, n_sub, false),
            phi: pair(m_sub, n_sub, a_sub),
            psi: pair(n_sub, m_sub, b_sub),
            a,
            b,
        }
    }

    /// The Peirce context of an idempotent `f`: `A = fSf`, `B = f'Sf'`,
    /// `M = fSf'`, `N = f'Sf` with `f' = 1 - f`.
    pub fn from_corners(s: &StructureAlgebra, f: &[crate::exactnum::Scalar]) -> MoritaContext {
        assert!(s.is_idempotent(f), "f must be idempotent");
        let f = f.to_vec();
        let g = vector::sub(s.unit(), &f);
        let piece = |x: &Vector, y: &Vector| {
            Subspace::span(s.field(), s.dim(), (0..s.dim()).map(|i| s.mul3(x, &s.basis_vector(i), y)))
        };
        MoritaContext::from_pieces(s, (&piece(&f, &f), &f), (&piece(&g, &g), &g), &piece(&f, &g), &piece(&g, &f))
    }

    /// `(k, k, k, k, id, id)`; its Morita ring is `M_2(k)`.
    pub fn trivial(field: FieldSpec) -> MoritaContext {
        let m2 = StructureAlgebra::matrix_algebra(field, 2);
        MoritaContext::from_corners(&m2, &vector::unit(field, 4, 0))
    }

    /// `(M_n(R), R, R^n, R^n, outer product, inner product)`.
    pub fn free(base: &StructureAlgebra, n: usize) -> MoritaContext {
        let s = StructureAlgebra::matrices_over(base, n + 1);
        let db = base.dim();
        let mut f = s.zero();
        for i in 0..n {
            for (k, x) in base.unit().iter().enumerate() {
                f[(i * (n + 1) + i) * db + k] = x.clone();
            }
        }
        MoritaContext::from_corners(&s, &f)
    }

    /// `(T_e, T_e, T_g, T_g^-1, mult, mult)` for a strongly graded `T`.
    pub fn from_strong(t: &GradedRing, g: GroupElement) -> Result<MoritaContext, MoritaError> {
        if !t.classify().is_strong {
            return Err(MoritaError::NotStronglyGraded);
        }
        let alg = t.algebra();
        let r = t.principal();
        let one = alg.unit().clone();
        Ok(MoritaContext::from_pieces(
            alg,
            (&r, &one),
            (&r, &one),
            &t.component(g),
            &t.component(t.group().inv(g)),
        ))
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }

    fn check_shapes(&self) -> Result<(), MoritaError> {
        let (da, db, dm, dn) = (self.a.dim(), self.b.dim(), self.dim_m, self.dim_n);
        if da == 0 || db == 0 {
            return Err(MoritaError::Shape("A and B must be nonzero".into()));
        }
        let sq = |ms: &[Matrix], count: usize, d: usize, what: &str| {
            if ms.len() != count || ms.iter().any(|m| m.rows() != d || m.cols() != d) {
                Err(MoritaError::Shape(format!("{what} action tables")))
            } else {
                Ok(())
            }
        };
        sq(&self.a_on_m, da, dm, "A on M")?;
        sq(&self.m_by_b, db, dm, "B on M")?;
        sq(&self.b_on_n, db, dn, "B on N")?;
        sq(&self.n_by_a, da, dn, "A on N")?;
        if self.phi.len() != dm * dn || self.phi.iter().any(|v| v.len() != da) {
            return Err(MoritaError::Shape("phi".into()));
        }
        if self.psi.len() != dm * dn || self.psi.iter().any(|v| v.len() != db) {
            return Err(MoritaError::Shape("psi".into()));
        }
        Ok(())
    }
}

/// The Morita ring `[[A, M], [N, B]]`, graded with `A, B` in degree `e`,
/// `M` in degree `g` and `N` in degree `g^-1`.
pub fn morita_ring_graded(ctx: &MoritaContext, group: &GradingGroup, g: GroupElement) -> Result<GradedRing, MoritaError> {
    ctx.check_shapes()?;
    if g == group.identity() {
        return Err(MoritaError::IdentityDegree);
    }
    let field = ctx.field();
    let (da, dm, dn, db) = (ctx.a.dim(), ctx.dim_m, ctx.dim_n, ctx.b.dim());
    let (om, on, ob) = (da, da + dm, da + dm + dn);
    let dim = ob + db;
    let locate = |x: usize| -> (Block, usize) {
        if x < om {
            (Block::A, x)
        } else if x < on {
            (Block::M, x - om)
        } else if x < ob {
            (Block::N, x - on)
        } else {
            (Block::B, x - ob)
        }
    };
    let place = |off: usize, v: &[crate::exactnum::Scalar]| {
        let mut out = vector::zeros(field, dim);
        for (k, c) in v.iter().enumerate() {
            out[off + k] = c.clone();
        }
        out
    };
    let mut unit = place(0, ctx.a.unit());
    unit = vector::add(&unit, &place(ob, ctx.b.unit()));
    let alg = StructureAlgebra::from_fn(field, dim, unit, |x, y| {
        let (bx, i) = locate(x);
        let (by, j) = locate(y);
        match (bx, by) {
            (Block::A, Block::A) => place(0, &vector::from_sparse(field, da, ctx.a.basis_product(i, j))),
            (Block::A, Block::M) => place(om, &ctx.a_on_m[i].column(j)),
            (Block::M, Block::N) => place(0, &ctx.phi[i * dn + j]),
            (Block::M, Block::B) => place(om, &ctx.m_by_b[j].column(i)),
            (Block::N, Block::A) => place(on, &ctx.n_by_a[j].column(i)),
            (Block::N, Block::M) => place(ob, &ctx.psi[i * dm + j]),
            (Block::B, Block::N) => place(on, &ctx.b_on_n[i].column(j)),
            (Block::B, Block::B) => place(ob, &vector::from_sparse(field, db, ctx.b.basis_product(i, j))),
            _ => vector::zeros(field, dim),
        }
    })
    .map_err(|e| MoritaError::Shape(e.to_string()))?;
    if let Err(v) = alg.validate() {
        let msg = match v {
            AlgebraViolation::NotAssociative(i, j, k) => {
                let (x, y, z) = (locate(i).0.name(), locate(j).0.name(), locate(k).0.name());
                format!("({x} {y}) {z} != {x} ({y} {z})")
            }
            AlgebraViolation::NoUnit => "unit is zero".into(),
            AlgebraViolation::UnitFails(i) => format!("unit does not act on a basis element of {}", locate(i).0.name()),
        };
        return Err(MoritaError::InvalidContext(msg));
    }
    let span = |vs: &[Vector], d: usize| Subspace::span(field, d, vs.iter().cloned()).dim() == d;
    if !span(&ctx.phi, da) {
        return Err(MoritaError::NotStrict("phi"));
    }
    if !span(&ctx.psi, db) {
        return Err(MoritaError::NotStrict("psi"));
    }
    let ginv = group.inv(g);
    let e = group.identity();
    let degrees = (0..dim)
        .map(|x| match locate(x).0 {
            Block::A | Block::B => e,
            Block::M => g,
            Block::N => ginv,
        })
        .collect();
    let ring = GradedRing::new(alg, group.clone(), degrees).map_err(|e| MoritaError::Shape(e.to_string()))?;
    let eps = EpsilonData::compute(&ring).map_err(|_| MoritaError::EpsilonMismatch)?;
    let one_a = place(0, ctx.a.unit());
    let one_b = place(ob, ctx.b.unit());
    let ok = if g == ginv {
        eps.epsilon(g) == *ring.algebra().unit()
    } else {
        eps.epsilon(g) == one_a && eps.epsilon(ginv) == one_b
    };
    if !ok || eps.epsilon(e) != vector::add(&one_a, &one_b) {
        return Err(MoritaError::EpsilonMismatch);
    }
    Ok(ring)
}

/// The Morita ring graded by the integers, `M` in degree 1.
pub fn gen_morita_ring(ctx: &MoritaContext) -> Result<GradedRing, MoritaError> {
    morita_ring_graded(ctx, &GradingGroup::integers(), GroupElement::Int(1))
}

pub fn gen_morita_from_strong(t: &GradedRing, g: GroupElement) -> Result<GradedRing, MoritaError> {
    gen_morita_ring(&MoritaContext::from_strong(t, g)?)
}

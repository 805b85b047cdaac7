use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{ActionError, ActionViolation, CrossedProduct, TwistedPartialAction};
use crate::exactnum::{FieldSpec, Scalar};
use crate::grading::{EpsilonData, GradedRing};
use crate::groups::GroupElement;
use crate::linalg::{self, vector, AffineSolution, Matrix, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("element is not in the component of degree {0:?}")]
    WrongComponent(GroupElement),
    #[error("the section at the identity must be 1")]
    NotNormalized,
    #[error("no section given for {0:?}")]
    MissingSection(GroupElement),
    #[error("section at {0:?} is not epsilon-invertible")]
    NotEpsilonInvertible(GroupElement),
    #[error("extracted data is malformed: {0}")]
    Structural(ActionError),
    /// Cannot happen for an epsilon-strong ring with valid sections.
    #[error("extracted action violates {} axiom instance(s)", .0.len())]
    Axioms(Vec<ActionViolation>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { element: Vector, inverse: Vector },
    /// With `exhaustive` set, every element of the component was tested.
    NotFound { exhaustive: bool, tried: u64 },
    BudgetExceeded { needed: u128, budget: u64 },
}

/// The unique `t` in `S_g^-1` with `s t = eps_g` and `t s = eps_g^-1`.
pub fn epsilon_inverse(
    ring: &GradedRing,
    eps: &EpsilonData,
    g: GroupElement,
    s: &[Scalar],
) -> Result<Option<Vector>, ExtractError> {
    let alg = ring.algebra();
    if s.len() != alg.dim() || !ring.group().contains(g) || !ring.is_in_component(s, g) {
        return Err(ExtractError::WrongComponent(g));
    }
    let ginv = ring.group().inv(g);
    let left = eps.epsilon(g);
    let right = eps.epsilon(ginv);
    let idx = ring.component_indices(ginv);
    if idx.is_empty() {
        return Ok((vector::is_zero(&left) && vector::is_zero(&right)).then(|| alg.zero()));
    }
    let cols: Vec<Vector> = idx
        .iter()
        .map(|&b| {
            let t = alg.basis_vector(b);
            let mut c = alg.mul_unchecked(s, &t);
            c.extend(alg.mul_unchecked(&t, s));
            c
        })
        .collect();
    let mut rhs = left;
    rhs.extend(right);
    let m = Matrix::from_columns(alg.field(), 2 * alg.dim(), &cols).expect("shape");
    match linalg::solve_affine(&m, &rhs).expect("shape") {
        AffineSolution::Feasible { particular, kernel } => {
            assert!(kernel.is_zero(), "epsilon-inverse at {g:?} is not unique");
            let mut t = alg.zero();
            for (k, &b) in idx.iter().enumerate() {
                t[b] = particular[k].clone();
            }
            Ok(Some(t))
        }
        AffineSolution::Infeasible { .. } => Ok(None),
    }
}

/// Searches `S_g` for an epsilon-invertible element. Over a prime field the
/// whole component is enumerated, so `NotFound` is a proof of absence. Over
/// the rationals only structured and random small-integer probes are tried.
pub fn find_epsilon_invertible(
    ring: &GradedRing,
    eps: &EpsilonData,
    g: GroupElement,
    budget: u64,
    seed: u64,
) -> SearchOutcome {
    let alg = ring.algebra();
    let field = alg.field();
    let idx = ring.component_indices(g).to_vec();
    let d = idx.len();
    let embed = |coords: &[Scalar]| {
        let mut x = alg.zero();
        for (k, &i) in idx.iter().enumerate() {
            x[i] = coords[k].clone();
        }
        x
    };
    let test = |x: Vector| -> Option<SearchOutcome> {
        epsilon_inverse(ring, eps, g, &x)
            .expect("candidate lies in S_g")
            .map(|inverse| SearchOutcome::Found { element: x, inverse })
    };
    match field {
        FieldSpec::Prime(p) => {
            let needed = (p as u128).saturating_pow(d as u32);
            if needed > budget as u128 {
                return SearchOutcome::BudgetExceeded { needed, budget };
            }
            let mut digits = vec![0u64; d];
            let mut tried = 0u64;
            loop {
                tried += 1;
                let coords: Vec<Scalar> = digits.iter().map(|&c| field.from_i64(c as i64)).collect();
                if let Some(found) = test(embed(&coords)) {
                    return found;
                }
                let mut k = 0;
                while k < d {
                    digits[k] += 1;
                    if digits[k] < p {
                        break;
                    }
                    digits[k] = 0;
                    k += 1;
                }
                if k == d {
                    return SearchOutcome::NotFound { exhaustive: true, tried };
                }
            }
        }
        FieldSpec::Rationals => {
            let mut probes: Vec<Vector> = vec![vector::zeros(field, d)];
            for a in 0..d {
                probes.push(vector::unit(field, d, a));
            }
            for a in 0..d {
                for b in a + 1..d {
                    let (ua, ub) = (vector::unit(field, d, a), vector::unit(field, d, b));
                    probes.push(vector::add(&ua, &ub));
                    probes.push(vector::sub(&ua, &ub));
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            if d > 0 {
                for _ in 0..256 {
                    probes.push((0..d).map(|_| field.from_i64(rng.gen_range(-3..=3))).collect());
                }
            }
            let mut tried = 0u64;
            for c in probes {
                if tried >= budget {
                    break;
                }
                tried += 1;
                if let Some(found) = test(embed(&c)) {
                    return found;
                }
            }
            SearchOutcome::NotFound { exhaustive: false, tried }
        }
    }
}

/// Sections `s_g` for every degree in the support, with `s_e = 1`. On failure
/// returns the degree and the search outcome there.
pub fn find_sections(
    ring: &GradedRing,
    eps: &EpsilonData,
    budget: u64,
    seed: u64,
) -> Result<BTreeMap<GroupElement, Vector>, (GroupElement, SearchOutcome)> {
    let e = ring.group().identity();
    let mut out = BTreeMap::new();
    for g in ring.support() {
        if g == e {
            out.insert(g, ring.algebra().unit().clone());
            continue;
        }
        match find_epsilon_invertible(ring, eps, g, budget, seed) {
            SearchOutcome::Found { element, .. } => {
                out.insert(g, element);
            }
            other => return Err((g, other)),
        }
    }
    Ok(out)
}

fn inverses(
    ring: &GradedRing,
    eps: &EpsilonData,
    sections: &BTreeMap<GroupElement, Vector>,
) -> Result<BTreeMap<GroupElement, Vector>, ExtractError> {
    let e = ring.group().identity();
    if sections.get(&e) != Some(ring.algebra().unit()) {
        return Err(ExtractError::NotNormalized);
    }
    let mut out = BTreeMap::new();
    for g in ring.support() {
        let s = sections.get(&g).ok_or(ExtractError::MissingSection(g))?;
        let t = epsilon_inverse(ring, eps, g, s)?.ok_or(ExtractError::NotEpsilonInvertible(g))?;
        out.insert(g, t);
    }
    Ok(out)
}

/// Action data of an epsilon-crossed product: `D_g = R eps_g`,
/// `alpha_g(r) = s_g r t_g^-1` and `w_gh = s_g s_h t_(gh)^-1`, where `t_g^-1`
/// is the epsilon-inverse of `s_g`. Coordinates on `R` follow the basis of
/// the principal component. The result is required to satisfy the axioms.
pub fn extract_action(
    ring: &GradedRing,
    eps: &EpsilonData,
    sections: &BTreeMap<GroupElement, Vector>,
) -> Result<TwistedPartialAction, ExtractError> {
    let alg = ring.algebra();
    let grp = ring.group();
    let field = alg.field();
    let principal = ring.principal();
    let (base, _) = alg.subalgebra(&principal).expect("principal component is a unital subalgebra");
    let inv = inverses(ring, eps, sections)?;
    let coords = |x: &[Scalar]| principal.coordinates(x).expect("element of R");
    let supp = ring.support();

    let idempotents = supp.iter().map(|&g| (g, coords(&eps.epsilon(g)))).collect();
    let mut alpha = BTreeMap::new();
    for &g in &supp {
        let mask = eps.epsilon(grp.inv(g));
        let cols: Vec<Vector> = principal
            .basis()
            .iter()
            .map(|b| coords(&alg.mul3(&sections[&g], &alg.mul_unchecked(b, &mask), &inv[&g])))
            .collect();
        alpha.insert(g, Matrix::from_columns(field, base.dim(), &cols).expect("shape"));
    }
    let mut twist = BTreeMap::new();
    for &g in &supp {
        for &h in &supp {
            let gh = grp.mul(g, h);
            if let Some(t) = inv.get(&gh) {
                twist.insert((g, h), coords(&alg.mul3(&sections[&g], &sections[&h], t)));
            }
        }
    }
    let action = TwistedPartialAction::new(base, grp.clone(), idempotents, alpha, twist).map_err(ExtractError::Structural)?;
    action.validate().map_err(ExtractError::Axioms)?;
    Ok(action)
}

/// The linear map `x -> (x t_g^-1) delta_g` on `S_g`, from `ring` to the
/// crossed product of its extracted action.
pub fn roundtrip_map(
    ring: &GradedRing,
    eps: &EpsilonData,
    sections: &BTreeMap<GroupElement, Vector>,
    rebuilt: &CrossedProduct,
) -> Result<Matrix, ExtractError> {
    let alg = ring.algebra();
    let principal = ring.principal();
    let inv = inverses(ring, eps, sections)?;
    let cols: Vec<Vector> = (0..ring.dim())
        .map(|i| {
            let g = ring.degree(i);
            let r = alg.mul_unchecked(&alg.basis_vector(i), &inv[&g]);
            rebuilt.embed(g, &principal.coordinates(&r).expect("element of R"))
        })
        .collect();
    Ok(Matrix::from_columns(alg.field(), rebuilt.ring().dim(), &cols).expect("shape"))
}

/// Whether `map` (columns are images of basis vectors) is a degree-preserving
/// unital ring isomorphism from `s1` onto `s2`.
pub fn graded_iso_check(s1: &GradedRing, s2: &GradedRing, map: &Matrix) -> bool {
    let (a1, a2) = (s1.algebra(), s2.algebra());
    if s1.group() != s2.group() || a1.field() != a2.field() {
        return false;
    }
    let n = a1.dim();
    if a2.dim() != n || map.rows() != n || map.cols() != n || map.rank() != n {
        return false;
    }
    if map.mul_vec(a1.unit()).expect("shape") != *a2.unit() {
        return false;
    }
    let images: Vec<Vector> = (0..n).map(|i| map.column(i)).collect();
    for (i, img) in images.iter().enumerate() {
        if !s2.is_in_component(img, s1.degree(i)) {
            return false;
        }
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = map.mul_vec(&vector::from_sparse(a1.field(), n, a1.basis_product(i, j))).expect("shape");
            if lhs != a2.mul_unchecked(&images[i], &images[j]) {
                return false;
            }
        }
    }
    true
}

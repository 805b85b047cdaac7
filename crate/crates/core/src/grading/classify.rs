//! Strong, symmetric and epsilon-strong gradings, with the four
//! characterizations of epsilon-strongness evaluated independently.

use std::collections::HashMap;

use super::{EpsilonData, GradedRing};
use crate::exactnum::Scalar;
use crate::groups::GroupElement;
use crate::linalg::{self, vector, Matrix, SparseEchelon, Subspace, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Failure {
    Degree(GroupElement),
    Pair(GroupElement, GroupElement),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub failure: Option<Failure>,
}

impl Verdict {
    fn from(failure: Option<Failure>) -> Self {
        Verdict {
            holds: failure.is_none(),
            failure,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub is_strong: bool,
    pub strong_failure: Option<Failure>,
    pub is_symmetric: bool,
    pub symmetric_failure: Option<GroupElement>,
    pub is_epsilon_strong: bool,
    /// Definition: unital `S_g S_{g^-1}` and `S_g S_h = S_g S_{g^-1} S_gh = S_gh S_{h^-1} S_h`.
    pub char_i: Verdict,
    /// Symmetric with unital `S_g S_{g^-1}`.
    pub char_ii: Verdict,
    /// Some `eps_g` in `S_g S_{g^-1}` with `eps_g s = s = s eps_{g^-1}` on `S_g`.
    pub char_iii: Verdict,
    /// `S_g` projective over R and `n_g` bijective.
    pub char_iv: Verdict,
    /// When epsilon-strong: whether every `eps_g` equals 1.
    pub strong_via_epsilon: Option<bool>,
}

impl Classification {
    /// All four characterizations agree.
    pub fn coherent(&self) -> bool {
        let v = self.char_i.holds;
        self.char_ii.holds == v && self.char_iii.holds == v && self.char_iv.holds == v
    }
}

/// Outcome of testing `n_g : S_g -> Hom_R(S_{g^-1}, R)`, `n_g(s)(t) = t s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualMapReport {
    pub source_dim: usize,
    pub hom_dim: usize,
    pub rank: usize,
    pub bijective: bool,
}

struct Products<'a> {
    ring: &'a GradedRing,
    cache: HashMap<(GroupElement, GroupElement), Subspace>,
}

impl<'a> Products<'a> {
    fn new(ring: &'a GradedRing) -> Self {
        Products {
            ring,
            cache: HashMap::new(),
        }
    }

    fn pair(&mut self, g: GroupElement, h: GroupElement) -> Subspace {
        let ring = self.ring;
        self.cache
            .entry((g, h))
            .or_insert_with(|| ring.component_product(g, h))
            .clone()
    }
}

impl GradedRing {
    pub fn classify(&self) -> Classification {
        let group = self.group();
        let degrees = self.relevant_degrees();
        let r = self.principal();
        let alg = self.algebra();
        let mut prods = Products::new(self);

        let mut strong_failure = None;
        'strong: for &g in &degrees {
            for &h in &degrees {
                if prods.pair(g, h) != self.component(group.mul(g, h)) {
                    strong_failure = Some(Failure::Pair(g, h));
                    break 'strong;
                }
            }
        }

        let mut symmetric_failure = None;
        let mut unital_failure = None;
        for &g in &degrees {
            let ideal = prods.pair(g, group.inv(g));
            if symmetric_failure.is_none() && alg.product_space(&ideal, &self.component(g)) != self.component(g) {
                symmetric_failure = Some(g);
            }
            if unital_failure.is_none() && alg.ideal_identity_within(&r, &ideal).is_err() {
                unital_failure = Some(g);
            }
        }

        let mut char_i_failure = unital_failure.map(Failure::Degree);
        if char_i_failure.is_none() {
            'pairs: for &g in &degrees {
                let ginv = group.inv(g);
                for &h in &degrees {
                    let gh = group.mul(g, h);
                    let lhs = prods.pair(g, h);
                    let mid = alg.product_space(&prods.pair(g, ginv), &self.component(gh));
                    let right = alg.product_space(&prods.pair(gh, group.inv(h)), &self.component(h));
                    if lhs != mid || lhs != right {
                        char_i_failure = Some(Failure::Pair(g, h));
                        break 'pairs;
                    }
                }
            }
        }
        let char_i = Verdict::from(char_i_failure);
        let char_ii = Verdict::from(symmetric_failure.or(unital_failure).map(Failure::Degree));

        let char_iii = Verdict::from(
            degrees
                .iter()
                .copied()
                .find(|&g| !self.has_local_identity(g, &prods.pair(g, group.inv(g))))
                .map(Failure::Degree),
        );
        let char_iv = Verdict::from(
            degrees
                .iter()
                .copied()
                .find(|&g| !(self.is_projective(g) && self.right_dual_map(g).bijective))
                .map(Failure::Degree),
        );

        let strong_via_epsilon = if char_i.holds {
            EpsilonData::compute(self)
                .ok()
                .map(|eps| degrees.iter().all(|&g| eps.epsilon(g) == *alg.unit()))
        } else {
            None
        };
        Classification {
            is_strong: strong_failure.is_none(),
            strong_failure,
            is_symmetric: symmetric_failure.is_none(),
            symmetric_failure,
            is_epsilon_strong: char_i.holds,
            char_i,
            char_ii,
            char_iii,
            char_iv,
            strong_via_epsilon,
        }
    }

    /// Whether some `x` in `ideal` has `x s = s` for `s` in `S_g` and
    /// `t x = t` for `t` in `S_{g^-1}`.
    fn has_local_identity(&self, g: GroupElement, ideal: &Subspace) -> bool {
        let alg = self.algebra();
        let ginv = self.group().inv(g);
        let mut rows: Vec<Vector> = Vec::new();
        let mut rhs: Vec<Scalar> = Vec::new();
        let mut constrain = |images: Vec<Vector>, target: &Vector| {
            for c in 0..alg.dim() {
                rows.push(images.iter().map(|v| v[c].clone()).collect());
                rhs.push(target[c].clone());
            }
        };
        for s in self.component_basis(g) {
            constrain(ideal.basis().iter().map(|x| alg.mul_unchecked(x, &s)).collect(), &s);
        }
        for t in self.component_basis(ginv) {
            constrain(ideal.basis().iter().map(|x| alg.mul_unchecked(&t, x)).collect(), &t);
        }
        if rows.is_empty() {
            return true;
        }
        if ideal.is_zero() {
            return rhs.iter().all(Scalar::is_zero);
        }
        let m = Matrix::from_rows(alg.field(), ideal.dim(), rows).expect("shape");
        linalg::solve_affine(&m, &rhs).expect("shape").is_feasible()
    }

    /// Left R-linear maps from the span of `source` basis indices into R,
    /// as vectors indexed by `(source position) * dim(R) + (R position)`.
    fn left_hom_to_principal(&self, source: &[usize]) -> Subspace {
        let alg = self.algebra();
        let field = alg.field();
        let r_idx = self.component_indices(self.group().identity());
        let nr = r_idx.len();
        let unknowns = source.len() * nr;
        let r_pos: HashMap<usize, usize> = r_idx.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let s_pos: HashMap<usize, usize> = source.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        if unknowns == 0 {
            return Subspace::zero(field, 0);
        }
        let mut rows = Vec::new();
        // f(e_k s_a) - e_k f(s_a) = 0, read on each R coordinate
        for &k in r_idx {
            for (a, &sa) in source.iter().enumerate() {
                let mut block = vec![vec![field.zero(); unknowns]; nr];
                for (b, lam) in alg.basis_product(k, sa) {
                    let bp = s_pos[b];
                    for c in 0..nr {
                        let idx = bp * nr + c;
                        block[c][idx] = &block[c][idx] + lam;
                    }
                }
                for (c, &rc) in r_idx.iter().enumerate() {
                    for (out, mu) in alg.basis_product(k, rc) {
                        let row = r_pos[out];
                        let idx = a * nr + c;
                        block[row][idx] = &block[row][idx] - mu;
                    }
                }
                rows.extend(block);
            }
        }
        let m = Matrix::from_rows(field, unknowns, rows).expect("shape");
        linalg::kernel(&m)
    }

    /// Exact projectivity test for `S_g` as a left R-module: the identity of
    /// `S_g` must be a sum of maps `s -> f(s) b` with `f` left R-linear into R.
    pub fn is_projective(&self, g: GroupElement) -> bool {
        let src = self.component_indices(g).to_vec();
        let d = src.len();
        if d == 0 {
            return true;
        }
        let alg = self.algebra();
        let field = alg.field();
        let r_idx = self.component_indices(self.group().identity()).to_vec();
        let nr = r_idx.len();
        let pos: HashMap<usize, usize> = src.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let hom = self.left_hom_to_principal(&src);
        let mut span = SparseEchelon::new(field, d * d);
        for f in hom.basis() {
            for &b in &src {
                let mut map = Vec::new();
                for a in 0..d {
                    // f(s_a) b, written in S_g coordinates at column a
                    for (c, &rc) in r_idx.iter().enumerate() {
                        let coeff = &f[a * nr + c];
                        if coeff.is_zero() {
                            continue;
                        }
                        for (k, y) in alg.basis_product(rc, b) {
                            map.push((pos[k] * d + a, coeff * y));
                        }
                    }
                }
                map.sort_by_key(|(k, _)| *k);
                let mut merged: Vec<(usize, Scalar)> = Vec::new();
                for (k, x) in map {
                    match merged.last_mut() {
                        Some((j, y)) if *j == k => *y = &*y + &x,
                        _ => merged.push((k, x)),
                    }
                }
                merged.retain(|(_, x)| !x.is_zero());
                span.insert(&merged);
            }
        }
        let id: Vec<(usize, Scalar)> = (0..d).map(|a| (a * d + a, field.one())).collect();
        span.contains(&id)
    }

    /// Tests whether `n_g` is a bijection onto the left R-linear maps `S_{g^-1} -> R`.
    pub fn right_dual_map(&self, g: GroupElement) -> DualMapReport {
        let alg = self.algebra();
        let field = alg.field();
        let src = self.component_indices(g).to_vec();
        let tgt = self.component_indices(self.group().inv(g)).to_vec();
        let hom = self.left_hom_to_principal(&tgt);
        let r_idx = self.component_indices(self.group().identity()).to_vec();
        let nr = r_idx.len();
        let r_pos: HashMap<usize, usize> = r_idx.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let images: Vec<Vector> = src
            .iter()
            .map(|&s| {
                let mut v = vector::zeros(field, tgt.len() * nr);
                for (t_p, &t) in tgt.iter().enumerate() {
                    for (k, y) in alg.basis_product(t, s) {
                        v[t_p * nr + r_pos[k]] = y.clone();
                    }
                }
                debug_assert!(hom.contains(&v));
                v
            })
            .collect();
        let rank = if images.is_empty() || tgt.is_empty() {
            0
        } else {
            Subspace::span(field, tgt.len() * nr, images).dim()
        };
        let hom_dim = if tgt.is_empty() { 0 } else { hom.dim() };
        DualMapReport {
            source_dim: src.len(),
            hom_dim,
            rank,
            bijective: rank == src.len() && rank == hom_dim,
        }
    }

    /// Every stored `eps_g` commutes with `R`.
    pub fn epsilon_is_central(&self, eps: &EpsilonData) -> bool {
        let alg = self.algebra();
        let r = self.component_basis(self.group().identity());
        eps.entries()
            .values()
            .all(|e| r.iter().all(|x| vector::is_zero(&alg.commutator(&e.epsilon, x))))
    }
}

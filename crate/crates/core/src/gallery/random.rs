use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::morita::{morita_ring_graded, MoritaContext};
use super::{elementary_grading, gen_group_algebra, triangular_grading, truncated_polynomial_graded};
use crate::algebra::StructureAlgebra;
use crate::exactnum::{FieldSpec, Scalar};
use crate::grading::GradedRing;
use crate::groups::{GradingGroup, GroupElement};
use crate::linalg::{Matrix, Vector};
use crate::partialaction::{crossed_product, CrossedProduct, TwistedPartialAction};

pub const CORPUS_FIELDS: [FieldSpec; 4] = [
    FieldSpec::Prime(2),
    FieldSpec::Prime(3),
    FieldSpec::Prime(5),
    FieldSpec::Rationals,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    CrossedProduct,
    Morita,
    MatrixGrading,
    /// Not epsilon-strong.
    Negative,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusInstance {
    pub label: String,
    pub family: Family,
    pub ring: GradedRing,
    /// Present for crossed products; carries the action and canonical sections.
    pub crossed: Option<CrossedProduct>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomParams {
    pub field: FieldSpec,
    pub group: GradingGroup,
    pub max_dim: usize,
    /// Produce a non-example instead.
    pub broken: bool,
}

impl RandomParams {
    pub fn new(field: FieldSpec, group: GradingGroup) -> Self {
        RandomParams {
            field,
            group,
            max_dim: 10,
            broken: false,
        }
    }
}

fn nonzero_scalar<R: Rng>(rng: &mut R, field: FieldSpec) -> Scalar {
    match field {
        FieldSpec::Prime(p) => field.from_i64(rng.gen_range(1..p) as i64),
        FieldSpec::Rationals => {
            let n = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
            field.from_ratio(n, rng.gen_range(1..=3)).expect("nonzero denominator")
        }
    }
}

fn non_identity<R: Rng>(rng: &mut R, group: &GradingGroup) -> Option<GroupElement> {
    match group.elements() {
        Some(all) => all.into_iter().filter(|&g| g != group.identity()).collect::<Vec<_>>().choose(rng).copied(),
        None => Some(GroupElement::Int(if rng.gen_bool(0.8) { 1 } else { 2 })),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Point {
    Group(GroupElement),
    Fixed(usize),
}

/// A global action on a finite set restricted to a random subset `X`, made
/// into an action on `field^X`, with a random coboundary twist. For finite
/// groups the set is the regular orbit plus two fixed points; for the
/// integers it is a window of translations.
pub fn random_partial_action(seed: u64, field: FieldSpec, group: &GradingGroup, max_dim: usize) -> TwistedPartialAction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let act = |g: GroupElement, x: Point| match x {
        Point::Group(y) => Point::Group(group.mul(g, y)),
        Point::Fixed(_) => x,
    };
    let universe: Vec<Point> = match group.elements() {
        Some(all) => all.into_iter().map(Point::Group).chain([Point::Fixed(0), Point::Fixed(1)]).collect(),
        None => (0..4).map(|k| Point::Group(GroupElement::Int(k))).collect(),
    };
    let mut xs: Vec<Point> = universe.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    if xs.is_empty() {
        xs.push(*universe.choose(&mut rng).expect("nonempty universe"));
    }
    let degrees_for = |xs: &[Point]| -> Vec<GroupElement> {
        match group.elements() {
            Some(all) => all,
            None => {
                let mut set = BTreeSet::new();
                for a in xs {
                    for b in xs {
                        if let (Point::Group(p), Point::Group(q)) = (a, b) {
                            set.insert(group.mul(*p, group.inv(*q)));
                        }
                    }
                }
                set.into_iter().collect()
            }
        }
    };
    let domain = |xs: &[Point], g: GroupElement| -> Vec<Point> {
        let set: BTreeSet<Point> = xs.iter().copied().collect();
        xs.iter().copied().filter(|&x| set.contains(&act(group.inv(g), x))).collect()
    };
    loop {
        let dim: usize = degrees_for(&xs).iter().map(|&g| domain(&xs, g).len()).sum();
        if dim <= max_dim || xs.len() == 1 {
            break;
        }
        let k = rng.gen_range(0..xs.len());
        xs.remove(k);
    }
    let n = xs.len();
    let pos: BTreeMap<Point, usize> = xs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let base = StructureAlgebra::diagonal(field, n);
    let indicator = |pts: &[Point]| {
        let mut v = base.zero();
        for p in pts {
            v[pos[p]] = field.one();
        }
        v
    };
    let e = group.identity();
    let mut idempotents = BTreeMap::new();
    let mut alpha = BTreeMap::new();
    let mut units: BTreeMap<GroupElement, Vector> = BTreeMap::new();
    for g in degrees_for(&xs) {
        let dg = domain(&xs, g);
        if dg.is_empty() {
            continue;
        }
        idempotents.insert(g, indicator(&dg));
        let mut m = Matrix::zeros(field, n, n);
        for x in domain(&xs, group.inv(g)) {
            m.set(pos[&act(g, x)], pos[&x], field.one());
        }
        alpha.insert(g, m);
        let mut u = base.zero();
        for p in &dg {
            u[pos[p]] = if g == e { field.one() } else { nonzero_scalar(&mut rng, field) };
        }
        units.insert(g, u);
    }
    let supp: Vec<GroupElement> = idempotents.keys().copied().collect();
    let pointwise = |a: &Vector, b: &Vector| base.mul_unchecked(a, b);
    let invert = |a: &Vector| -> Vector {
        a.iter()
            .map(|x| if x.is_zero() { field.zero() } else { x.inv().expect("nonzero") })
            .collect()
    };
    let apply = |g: GroupElement, r: &Vector| -> Vector {
        let ginv = group.inv(g);
        let masked = pointwise(r, idempotents.get(&ginv).expect("support is symmetric"));
        alpha[&g].mul_vec(&masked).expect("shape")
    };
    let mut twist = BTreeMap::new();
    for &g in &supp {
        for &h in &supp {
            let gh = group.mul(g, h);
            let Some(ugh) = units.get(&gh) else { continue };
            let corner = pointwise(&idempotents[&g], &idempotents[&gh]);
            let w = pointwise(&pointwise(&units[&g], &apply(g, &units[&h])), &pointwise(&invert(ugh), &corner));
            twist.insert((g, h), w);
        }
    }
    let action = TwistedPartialAction::new(base.clone(), group.clone(), idempotents.clone(), alpha.clone(), twist.clone())
        .expect("restricted actions are well formed");
    assert!(action.validate().is_ok(), "coboundary twist satisfies the axioms");
    // A scalar multiple on an involution is a cocycle exactly when the axioms say so.
    let involutions: Vec<GroupElement> = supp.iter().copied().filter(|&g| g != e && group.mul(g, g) == e).collect();
    if let Some(&g) = involutions.choose(&mut rng) {
        let lambda = nonzero_scalar(&mut rng, field);
        let mut scaled = twist;
        let w = scaled.get_mut(&(g, g)).expect("w_gg stored");
        *w = w.iter().map(|x| x.try_mul(&lambda).expect("same field")).collect();
        if let Ok(b) = TwistedPartialAction::new(base, group.clone(), idempotents, alpha, scaled) {
            if b.validate().is_ok() {
                return b;
            }
        }
    }
    action
}

fn small_base<R: Rng>(rng: &mut R, field: FieldSpec, max_dim: usize) -> StructureAlgebra {
    let choices: Vec<StructureAlgebra> = [
        StructureAlgebra::diagonal(field, 1),
        StructureAlgebra::diagonal(field, 2),
        StructureAlgebra::truncated_polynomial(field, 2),
    ]
    .into_iter()
    .filter(|c| c.dim() <= max_dim)
    .collect();
    choices.choose(rng).expect("k itself always fits").clone()
}

fn gen_crossed<R: Rng>(rng: &mut R, p: &RandomParams) -> CorpusInstance {
    let action = random_partial_action(rng.gen(), p.field, &p.group, p.max_dim);
    let cp = crossed_product(&action).expect("valid action");
    CorpusInstance {
        label: format!("crossed product, |X| = {}", action.base().dim()),
        family: Family::CrossedProduct,
        ring: cp.ring().clone(),
        crossed: Some(cp),
    }
}

fn gen_matrix<R: Rng>(rng: &mut R, p: &RandomParams) -> CorpusInstance {
    let c = small_base(rng, p.field, p.max_dim);
    let max_n = (1..=3).filter(|n| n * n * c.dim() <= p.max_dim).max().unwrap_or(1);
    let n = rng.gen_range(1..=max_n);
    let tuple: Vec<GroupElement> = (0..n)
        .map(|_| match p.group.elements() {
            Some(all) => *all.choose(rng).expect("nonempty group"),
            None => GroupElement::Int(rng.gen_range(-2..=2)),
        })
        .collect();
    CorpusInstance {
        label: format!("elementary grading of M_{n} over a dim-{} base, tuple {tuple:?}", c.dim()),
        family: Family::MatrixGrading,
        ring: elementary_grading(&c, &p.group, &tuple),
        crossed: None,
    }
}

fn gen_morita<R: Rng>(rng: &mut R, p: &RandomParams) -> CorpusInstance {
    let Some(g) = non_identity(rng, &p.group) else {
        return gen_matrix(rng, p);
    };
    let (label, ctx) = if rng.gen_bool(0.2) {
        let z = GradingGroup::cyclic(rng.gen_range(2..=3)).expect("group");
        let t = gen_group_algebra(&z, p.field);
        let ctx = MoritaContext::from_strong(&t, GroupElement::Finite(1)).expect("group algebras are strongly graded");
        ("Morita ring of a group algebra".to_string(), ctx)
    } else {
        let c = small_base(rng, p.field, p.max_dim / 4);
        let max_n = if 9 * c.dim() <= p.max_dim { 3 } else { 2 };
        let n = rng.gen_range(2..=max_n);
        let s = StructureAlgebra::matrices_over(&c, n);
        let k = rng.gen_range(1..n);
        let mut rows: Vec<usize> = (0..n).collect();
        rows.shuffle(rng);
        let mut f = s.zero();
        for &i in &rows[..k] {
            for (j, x) in c.unit().iter().enumerate() {
                f[(i * n + i) * c.dim() + j] = x.clone();
            }
        }
        (format!("Peirce context of M_{n} over a dim-{} base", c.dim()), MoritaContext::from_corners(&s, &f))
    };
    CorpusInstance {
        label: format!("{label}, off-diagonal degree {g:?}"),
        family: Family::Morita,
        ring: morita_ring_graded(&ctx, &p.group, g).expect("Peirce contexts of matrix rings are strict"),
        crossed: None,
    }
}

fn gen_negative<R: Rng>(rng: &mut R, p: &RandomParams) -> CorpusInstance {
    let group = match non_identity(rng, &p.group) {
        Some(_) => p.group.clone(),
        None => GradingGroup::integers(),
    };
    let g = non_identity(rng, &group).expect("nontrivial group");
    if rng.gen_bool(0.5) {
        let n = rng.gen_range(2..=4.min(p.max_dim.max(2)));
        CorpusInstance {
            label: format!("truncated polynomials k[t]/(t^{n}), deg t = {g:?}"),
            family: Family::Negative,
            ring: truncated_polynomial_graded(p.field, n, &group, g),
            crossed: None,
        }
    } else {
        let e = group.identity();
        CorpusInstance {
            label: format!("upper triangular 2x2, deg e_12 = {g:?}"),
            family: Family::Negative,
            ring: triangular_grading(p.field, &group, &[g, e]),
            crossed: None,
        }
    }
}

/// One instance per seed. Epsilon-strong families are drawn from
/// constructions that are epsilon-strong by design. With `broken` set the
/// result is a non-example; for the trivial group, which has none, the
/// integers are used instead.
pub fn gen_random_epsilon_strong(seed: u64, params: &RandomParams) -> CorpusInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if params.broken {
        return gen_negative(&mut rng, params);
    }
    match rng.gen_range(0..3) {
        0 => gen_crossed(&mut rng, params),
        1 => gen_morita(&mut rng, params),
        _ => gen_matrix(&mut rng, params),
    }
}

fn corpus_groups() -> Vec<GradingGroup> {
    let z2 = GradingGroup::cyclic(2).expect("group");
    vec![
        GradingGroup::cyclic(1).expect("group"),
        z2.clone(),
        GradingGroup::cyclic(3).expect("group"),
        GradingGroup::direct_product(&z2, &z2).expect("group"),
        GradingGroup::integers(),
    ]
}

/// `count` epsilon-strong instances cycling through the corpus fields, the
/// groups `Z_1, Z_2, Z_3, Z_2 x Z_2, Z` and the three positive families.
pub fn corpus(count: usize, seed: u64) -> Vec<CorpusInstance> {
    let groups = corpus_groups();
    (0..count)
        .map(|i| {
            let params = RandomParams::new(CORPUS_FIELDS[i % 4], groups[(i / 4) % 5].clone());
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(i as u64));
            let mut inst = match (i / 20) % 3 {
                0 => gen_crossed(&mut rng, &params),
                1 => gen_morita(&mut rng, &params),
                _ => gen_matrix(&mut rng, &params),
            };
            inst.label = format!("#{i} {}", inst.label);
            inst
        })
        .collect()
}

/// Non-examples over the same fields and groups.
pub fn negatives(count: usize, seed: u64) -> Vec<CorpusInstance> {
    let groups = corpus_groups();
    (0..count)
        .map(|i| {
            let mut params = RandomParams::new(CORPUS_FIELDS[i % 4], groups[(i / 4) % 5].clone());
            params.broken = true;
            gen_random_epsilon_strong(seed.wrapping_add(i as u64), &params)
        })
        .collect()
}

//! Acceptance criteria, one line each. Runs with its own harness so the
//! output is exactly the list of verdicts.

use std::collections::{BTreeMap, BTreeSet};
use std::panic;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use epsgrade::algebra::StructureAlgebra;
use epsgrade::exactnum::FieldSpec;
use epsgrade::gallery::{self, CorpusInstance, MoritaContext, CORPUS_FIELDS};
use epsgrade::grading::{DecompositionChoice, EpsilonData, GradedRing, DEFAULT_BUDGET};
use epsgrade::groups::{GradingGroup, GroupElement};
use epsgrade::linalg::{vector, Matrix, Vector};
use epsgrade::partialaction::{
    crossed_product, extract_action, find_epsilon_invertible, graded_iso_check, roundtrip_map, Axiom, SearchOutcome,
    TwistedPartialAction,
};
use epsgrade::separability::{
    certificate_for_witness, decide_separability, frobenius_system, kadison_check, oracle_separability,
    trace_of_one_invertible, FrobeniusSystem,
};

type Outcome = Result<String, String>;
/// Name, check and time limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

const CORPUS_SIZE: usize = 200;
const CORPUS_SEED: u64 = 20;
const Q: FieldSpec = FieldSpec::Rationals;
const GF2: FieldSpec = FieldSpec::Prime(2);
const GF3: FieldSpec = FieldSpec::Prime(3);
const GF5: FieldSpec = FieldSpec::Prime(5);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn corpus() -> &'static [CorpusInstance] {
    static CORPUS: OnceLock<Vec<CorpusInstance>> = OnceLock::new();
    CORPUS.get_or_init(|| gallery::corpus(CORPUS_SIZE, CORPUS_SEED))
}

fn fin(i: usize) -> GroupElement {
    GroupElement::Finite(i)
}

fn vec_of(field: FieldSpec, xs: &[i64]) -> Vector {
    xs.iter().map(|&x| field.from_i64(x)).collect()
}

fn eps_of(ring: &GradedRing) -> Result<EpsilonData, String> {
    EpsilonData::compute(ring).map_err(|e| e.to_string())
}

fn dade_modified_table() -> Outcome {
    for (field, invertible) in [(GF2, false), (GF3, true), (Q, true)] {
        let d = gallery::dade_modified(field);
        let s = d.ring();
        let c = s.classify();
        ensure!(c.is_epsilon_strong && !c.is_strong, "{field}: classified strong={} eps={}", c.is_strong, c.is_epsilon_strong);
        let eps = eps_of(s)?;
        let one_a = vec_of(field, &[1, 1]);
        let one_b = vec_of(field, &[1, 0]);
        let witness = d.diagonal(&one_a, &one_a, &vector::sub(&one_a, &one_b));
        let cert = certificate_for_witness(s, &eps, &witness).map_err(|e| e.to_string())?;
        ensure!(cert.verified(), "{field}: witness certificate rejected");
        ensure!(decide_separability(s, &eps).is_separable(), "{field}: decided not separable");
        let t = trace_of_one_invertible(s, &eps);
        ensure!(t.invertible == invertible, "{field}: tr(1) invertible = {}", t.invertible);
    }
    Ok("GF(2), GF(3), Q: epsilon-strong, not strong, witness verified, tr(1) invertible only off char 2".into())
}

fn no_crossed_product_structure_over_gf2() -> Outcome {
    let s = gallery::gen_dade_modified(GF2);
    let eps = eps_of(&s)?;
    let g = fin(1);
    let outcome = find_epsilon_invertible(&s, &eps, g, 1 << 14, 0);
    ensure!(
        outcome == SearchOutcome::NotFound { exhaustive: true, tried: 16 },
        "search returned {outcome:?}"
    );
    // independent brute force: no x in S_1 has y in S_1 with xy = eps_1 = yx
    let alg = s.algebra();
    let idx = s.component_indices(g);
    let elems: Vec<Vector> = (0..16u32)
        .map(|m| {
            let mut x = alg.zero();
            for (k, &i) in idx.iter().enumerate() {
                x[i] = GF2.from_i64(i64::from((m >> k) & 1));
            }
            x
        })
        .collect();
    let e1 = eps.epsilon(g);
    for x in &elems {
        for y in &elems {
            ensure!(
                alg.mul_unchecked(x, y) != e1 || alg.mul_unchecked(y, x) != e1,
                "brute force found an epsilon-invertible element"
            );
        }
    }
    Ok("all 16 elements of the 4-dimensional S_1 tested, none epsilon-invertible".into())
}

fn group_key(g: &GradingGroup) -> String {
    match g.order() {
        Some(n) if g.labels().is_some_and(|l| l.iter().any(|x| x.starts_with('('))) => format!("Z2xZ2({n})"),
        Some(n) => format!("Z{n}"),
        None => "Z".into(),
    }
}

fn separability_matches_oracle() -> Outcome {
    let corpus = corpus();
    ensure!(corpus.len() >= 200, "corpus has {} instances", corpus.len());
    let mut fields = BTreeSet::new();
    let mut groups = BTreeSet::new();
    let mut families = BTreeSet::new();
    let mut verdicts = [0usize; 2];
    for inst in corpus {
        let s = &inst.ring;
        ensure!(s.dim() <= 10, "{} has dimension {}", inst.label, s.dim());
        fields.insert(s.algebra().field().to_string());
        groups.insert(group_key(s.group()));
        families.insert(format!("{:?}", inst.family));
        let eps = eps_of(s)?;
        let decided = decide_separability(s, &eps).is_separable();
        let oracle = oracle_separability(s.algebra(), &s.principal()).map_err(|e| e.to_string())?.is_feasible();
        ensure!(decided == oracle, "{}: decide {decided}, oracle {oracle}", inst.label);
        verdicts[usize::from(decided)] += 1;
    }
    ensure!(fields.len() == 4 && groups.len() == 5 && families.len() == 3, "coverage {fields:?} {groups:?} {families:?}");
    ensure!(verdicts[0] > 0 && verdicts[1] > 0, "verdicts are one-sided: {verdicts:?}");
    Ok(format!("{} instances agree ({} separable, {} not)", corpus.len(), verdicts[1], verdicts[0]))
}

/// `S x k[t]/(t^2)` with `deg t = g`: the new part of `S_g` has no partner in `S_{g^-1}`.
fn with_nilpotent(s: &GradedRing, g: GroupElement) -> GradedRing {
    let field = s.algebra().field();
    let alg = s.algebra().product(&StructureAlgebra::truncated_polynomial(field, 2)).expect("same field");
    let mut degrees = s.degrees().to_vec();
    degrees.extend([s.group().identity(), g]);
    GradedRing::new(alg, s.group().clone(), degrees).expect("degrees from the group")
}

fn characterizations_agree() -> Outcome {
    let mut positives = 0;
    for inst in corpus() {
        let c = inst.ring.classify();
        ensure!(c.coherent() && c.is_epsilon_strong, "{}: {:?}", inst.label, c);
        positives += 1;
    }
    let mut negatives: Vec<(String, GradedRing)> =
        gallery::negatives(40, CORPUS_SEED).into_iter().map(|i| (i.label, i.ring)).collect();
    for n in 2..6 {
        for (step, group) in [(GroupElement::Int(1), GradingGroup::integers()), (fin(1), GradingGroup::cyclic(n).unwrap())] {
            let field = CORPUS_FIELDS[n % 4];
            negatives.push((format!("k[t]/(t^{n})"), gallery::truncated_polynomial_graded(field, n, &group, step)));
        }
    }
    for inst in corpus().iter().step_by(5) {
        let grp = inst.ring.group();
        let g = match grp.elements() {
            Some(es) if es.len() > 1 => es[es.len() - 1],
            Some(_) => continue,
            None => GroupElement::Int(2),
        };
        negatives.push((format!("{} + nilpotent", inst.label), with_nilpotent(&inst.ring, g)));
    }
    for (label, s) in &negatives {
        ensure!(s.validate().is_ok(), "{label}: invalid grading");
        let c = s.classify();
        ensure!(c.coherent() && !c.is_epsilon_strong, "{label}: {c:?}");
        ensure!(EpsilonData::compute(s).is_err(), "{label}: epsilon data computed");
    }
    Ok(format!("{positives} positives and {} negatives coherent", negatives.len()))
}

fn gamma_laws() -> Outcome {
    let mut perturbed = 0;
    for (i, inst) in corpus().iter().enumerate() {
        let s = &inst.ring;
        let alg = s.algebra();
        let grp = s.group();
        let a = EpsilonData::compute_with(s, DecompositionChoice::Pivot).map_err(|e| e.to_string())?;
        let b = EpsilonData::compute_with(s, DecompositionChoice::Perturbed(i as u64 + 1)).map_err(|e| e.to_string())?;
        let supp = a.nonzero_degrees();
        if supp.iter().any(|&g| a.pairs(g) != b.pairs(g)) {
            perturbed += 1;
        }
        let z = a.z_fin();
        let zb = z.basis();
        for &g in &supp {
            let eg = a.epsilon(g);
            for r in zb {
                let gr = a.gamma(g, r);
                ensure!(gr == b.gamma(g, r), "{}: gamma at {g:?} depends on the decomposition", inst.label);
                for sg in s.component_basis(g) {
                    ensure!(alg.mul_unchecked(&gr, &sg) == alg.mul_unchecked(&sg, r), "{}: gamma(r) s != s r", inst.label);
                }
                for &h in &supp {
                    let lhs = a.gamma(g, &a.gamma(h, r));
                    let rhs = alg.mul_unchecked(&a.gamma(grp.mul(g, h), r), &eg);
                    ensure!(lhs == rhs, "{}: composition law fails at ({g:?}, {h:?})", inst.label);
                }
                for r2 in zb {
                    let lhs = a.gamma(g, &alg.mul_unchecked(r, r2));
                    ensure!(lhs == alg.mul_unchecked(&gr, &a.gamma(g, r2)), "{}: gamma not multiplicative", inst.label);
                }
            }
        }
        let fixed = a.z_fin_gamma_fixed();
        for r in zb {
            let tr = a.trace(r).map_err(|e| e.to_string())?;
            for r1 in fixed.basis() {
                for r2 in fixed.basis() {
                    let lhs = a.trace(&alg.mul3(r1, r, r2)).map_err(|e| e.to_string())?;
                    ensure!(lhs == alg.mul3(r1, &tr, r2), "{}: trace is not a bimodule map", inst.label);
                }
            }
        }
    }
    ensure!(perturbed > 0, "no instance had a second decomposition");
    Ok(format!("{} instances, {perturbed} with distinct decompositions", corpus().len()))
}

fn frobenius_identities(s: &GradedRing, fs: &FrobeniusSystem) -> bool {
    let alg = s.algebra();
    let e = |x: &[epsgrade::Scalar]| FrobeniusSystem::counit(s, x);
    (0..s.dim()).all(|i| {
        let b = alg.basis_vector(i);
        let mut left = alg.zero();
        let mut right = alg.zero();
        for (x, y) in &fs.pairs {
            left = vector::add(&left, &alg.mul_unchecked(x, &e(&alg.mul_unchecked(y, &b))));
            right = vector::add(&right, &alg.mul_unchecked(&e(&alg.mul_unchecked(&b, x)), y));
        }
        left == b && right == b
    })
}

fn frobenius_and_kadison() -> Outcome {
    let mut finite = 0;
    let mut agree = [0usize; 2];
    let kz2 = gallery::gen_group_algebra(&GradingGroup::cyclic(2).unwrap(), GF2);
    let extra = [("k[Z2] over GF(2)".to_string(), kz2)];
    let all = corpus().iter().map(|i| (&i.label, &i.ring)).chain(extra.iter().map(|(l, r)| (l, r)));
    for (label, s) in all {
        let eps = eps_of(s)?;
        let fs = frobenius_system(s, &eps).map_err(|e| format!("{label}: {e}"))?;
        if s.group().is_finite() {
            ensure!(frobenius_identities(s, &fs), "{label}: Frobenius identity fails");
            finite += 1;
        }
        let sep = decide_separability(s, &eps).is_separable();
        let k = kadison_check(s, &fs, sep);
        ensure!(k.agrees, "{label}: Kadison element exists = {}, separable = {sep}", k.d.is_some());
        agree[usize::from(sep)] += 1;
    }
    ensure!(agree[0] > 0, "no non-separable instance checked");
    Ok(format!("identities on {finite} finite-group instances; Kadison agrees on {} ({} not separable)", agree[0] + agree[1], agree[0]))
}

fn extraction_roundtrip() -> Outcome {
    let mut count = 0;
    for inst in corpus() {
        let Some(cp) = &inst.crossed else { continue };
        let s = cp.ring();
        let eps = eps_of(s)?;
        let sections = cp.canonical_sections();
        let action = extract_action(s, &eps, &sections).map_err(|e| format!("{}: {e}", inst.label))?;
        ensure!(action.validate().is_ok(), "{}: extracted action fails the axioms", inst.label);
        let rebuilt = crossed_product(&action).map_err(|e| format!("{}: {e}", inst.label))?;
        let map = roundtrip_map(s, &eps, &sections, &rebuilt).map_err(|e| e.to_string())?;
        ensure!(graded_iso_check(s, rebuilt.ring(), &map), "{}: rebuild is not isomorphic", inst.label);

        // traces: the original action against the ring, and the extracted one against its principal coordinates
        let orig = cp.action();
        let e = s.group().identity();
        let principal = s.principal();
        for r in orig.base().center().basis() {
            let ta = orig.trace_alpha(r).map_err(|e| e.to_string())?;
            let tg = eps.trace(&cp.embed(e, r)).map_err(|e| e.to_string())?;
            ensure!(cp.embed(e, &ta) == tg, "{}: trace of the action differs from tr_gamma", inst.label);
        }
        for r in action.base().center().basis() {
            let ta = action.trace_alpha(r).map_err(|e| e.to_string())?;
            let tg = eps.trace(&principal.combine(r)).map_err(|e| e.to_string())?;
            ensure!(principal.combine(&ta) == tg, "{}: extracted trace differs from tr_gamma", inst.label);
        }
        count += 1;
    }
    ensure!(count >= 50, "only {count} crossed products in the corpus");
    Ok(format!("{count} crossed products extracted, rebuilt and matched"))
}

fn morita_suite() -> Outcome {
    let s = gallery::gen_morita_ring(&MoritaContext::trivial(Q)).map_err(|e| e.to_string())?;
    let eps = eps_of(&s)?;
    let (g, ginv) = (GroupElement::Int(1), GroupElement::Int(-1));
    let e11 = vec_of(Q, &[1, 0, 0, 0]);
    let e22 = vec_of(Q, &[0, 0, 0, 1]);
    ensure!(eps.epsilon(g) == e11 && eps.epsilon(ginv) == e22, "epsilon table {:?}", eps.entries().keys());
    ensure!(eps.trace(&e11).map_err(|e| e.to_string())? == *s.algebra().unit(), "tr(e11) != 1");
    ensure!(decide_separability(&s, &eps).is_separable(), "trivial context ring is not separable");
    ensure!(
        !s.component_indices(g).is_empty() && s.component_indices(GroupElement::Int(2)).is_empty(),
        "support {:?}",
        s.support()
    );
    let big = gallery::gen_morita_from_strong(&gallery::gen_dade_original(GF3), fin(1)).map_err(|e| e.to_string())?;
    ensure!(big.classify().is_epsilon_strong, "Morita ring of the strong grading is not epsilon-strong");
    let beps = eps_of(&big)?;
    ensure!(decide_separability(&big, &beps).is_separable(), "Morita ring of the strong grading is not separable");
    Ok(format!("trivial context checks hold; ring from the strong grading (dim {}) separable", big.dim()))
}

fn simplicity() -> Outcome {
    let mut tested = 0;
    let mut simple = 0;
    let mut nondegenerate = 0;
    let extra: Vec<GradedRing> = [GF2, GF3]
        .into_iter()
        .flat_map(|f| {
            let k = StructureAlgebra::diagonal(f, 1);
            let z3 = GradingGroup::cyclic(3).unwrap();
            [
                gallery::elementary_grading(&k, &z3, &[fin(0), fin(1), fin(2)]),
                crossed_product(&regular_action(f, &z3)).unwrap().into_ring(),
            ]
        })
        .collect();
    let rings = corpus().iter().map(|i| (i.label.clone(), &i.ring)).chain(extra.iter().map(|r| ("extra".into(), r)));
    for (label, s) in rings {
        ensure!(s.right_nondegenerate(), "{label}: right degenerate");
        nondegenerate += 1;
        let field = s.algebra().field();
        if field == Q || !s.is_maximal_commutative() {
            continue;
        }
        let (Ok(a), Ok(b)) = (s.is_simple(DEFAULT_BUDGET), s.is_graded_simple(DEFAULT_BUDGET)) else { continue };
        ensure!(a == b, "{label}: simple = {a}, graded simple = {b}");
        tested += 1;
        simple += usize::from(a);
    }
    ensure!(tested > 0 && simple > 0 && simple < tested, "{tested} tested, {simple} simple");
    Ok(format!("{tested} maximal-commutative instances ({simple} simple); {nondegenerate} right nondegenerate"))
}

fn permutation(field: FieldSpec, perm: &[usize]) -> Matrix {
    let mut m = Matrix::zeros(field, perm.len(), perm.len());
    for (i, &j) in perm.iter().enumerate() {
        m.set(j, i, field.one());
    }
    m
}

/// `G` acting on `field^G` by translation of coordinates.
fn regular_action(field: FieldSpec, group: &GradingGroup) -> TwistedPartialAction {
    let els = group.elements().unwrap();
    let pos = |g: GroupElement| els.iter().position(|&x| x == g).unwrap();
    let alpha = els
        .iter()
        .map(|&g| (g, permutation(field, &els.iter().map(|&x| pos(group.mul(g, x))).collect::<Vec<_>>())))
        .collect();
    TwistedPartialAction::global(StructureAlgebra::diagonal(field, els.len()), group.clone(), alpha).unwrap()
}

/// The regular action of `group` restricted to the complement of one element.
fn restricted_regular(field: FieldSpec, group: &GradingGroup, removed: usize) -> (Vec<GroupElement>, BTreeMap<GroupElement, Vector>, BTreeMap<GroupElement, Matrix>) {
    let els = group.elements().unwrap();
    let x: Vec<GroupElement> = els.iter().enumerate().filter(|&(i, _)| i != removed).map(|(_, &g)| g).collect();
    let n = x.len();
    let pos = |g: GroupElement| x.iter().position(|&y| y == g);
    let mut idem = BTreeMap::new();
    let mut alpha = BTreeMap::new();
    for &g in &els {
        let one: Vector = x
            .iter()
            .map(|&y| if pos(group.mul(group.inv(g), y)).is_some() { field.one() } else { field.zero() })
            .collect();
        let mut m = Matrix::zeros(field, n, n);
        for (i, &y) in x.iter().enumerate() {
            if let Some(j) = pos(group.mul(g, y)) {
                m.set(j, i, field.one());
            }
        }
        idem.insert(g, one);
        alpha.insert(g, m);
    }
    (x, idem, alpha)
}

struct Tamper {
    label: String,
    axiom: Axiom,
    action: TwistedPartialAction,
}

fn tampers() -> Vec<Tamper> {
    let mut out = Vec::new();
    let mut push = |label: &str, axiom, action| {
        out.push(Tamper {
            label: label.to_string(),
            axiom,
            action,
        })
    };
    let z1 = GradingGroup::cyclic(1).unwrap();
    let z2 = GradingGroup::cyclic(2).unwrap();
    let z3 = GradingGroup::cyclic(3).unwrap();
    let klein = GradingGroup::direct_product(&z2, &z2).unwrap();
    let global = |f: FieldSpec, g: &GradingGroup, alpha: Vec<Matrix>, twist: BTreeMap<(GroupElement, GroupElement), Vector>| {
        let n = alpha[0].rows();
        let els = g.elements().unwrap();
        let idem = els.iter().map(|&e| (e, vec![f.one(); n])).collect();
        TwistedPartialAction::new(StructureAlgebra::diagonal(f, n), g.clone(), idem, els.into_iter().zip(alpha).collect(), twist)
            .unwrap()
    };
    let none = BTreeMap::new;
    let swap = |f| permutation(f, &[1, 0]);
    let shift = |f, k: usize| permutation(f, &[k % 3, (1 + k) % 3, (2 + k) % 3]);

    // alpha_e is not the identity
    push("Z1 swap on k^2 over Q", Axiom::P1, global(Q, &z1, vec![swap(Q)], none()));
    push("Z2 alpha_0 = swap over GF(2)", Axiom::P1, global(GF2, &z2, vec![swap(GF2), Matrix::identity(GF2, 2)], none()));
    push("Z3 alpha_0 = shift over GF(3)", Axiom::P1, global(GF3, &z3, vec![shift(GF3, 1), shift(GF3, 1), shift(GF3, 2)], none()));
    push("Z1 3-cycle over GF(5)", Axiom::P1, global(GF5, &z1, vec![shift(GF5, 1)], none()));

    // alpha_g replaced by the identity on D_g in the restricted Klein action
    for (field, c) in [(Q, 3), (GF2, 1), (GF3, 2), (GF5, 3)] {
        let (x, idem, mut alpha) = restricted_regular(field, &klein, 3);
        let g = klein.elements().unwrap()[c];
        alpha.insert(g, Matrix::identity(field, x.len()));
        let a = TwistedPartialAction::new(StructureAlgebra::diagonal(field, x.len()), klein.clone(), idem, alpha, none()).unwrap();
        push(&format!("Klein restricted, alpha_{} = id over {field}", klein.label(g)), Axiom::P2, a);
    }

    // alpha_g alpha_h != alpha_gh in the regular Z3 action
    for (field, alphas) in [
        (Q, [0, 0, 2]),
        (GF2, [0, 1, 0]),
        (GF3, [0, 2, 2]),
        (GF5, [0, 1, 1]),
    ] {
        let a = global(field, &z3, alphas.iter().map(|&k| shift(field, k)).collect(), none());
        push(&format!("Z3 shifts {alphas:?} over {field}"), Axiom::P3, a);
    }

    // twist not normalized
    for (field, key, w) in [
        (Q, (fin(0), fin(1)), [2, 2]),
        (Q, (fin(1), fin(0)), [3, 1]),
        (GF3, (fin(0), fin(1)), [1, 2]),
        (GF5, (fin(1), fin(0)), [4, 1]),
    ] {
        let twist = BTreeMap::from([(key, vec_of(field, &w))]);
        let a = global(field, &z2, vec![Matrix::identity(field, 2), swap(field)], twist);
        push(&format!("Z2 swap, w{key:?} = {w:?} over {field}"), Axiom::P4, a);
    }

    // twist fails the cocycle identity
    for (field, lambda) in [(Q, 2), (GF3, 2)] {
        let twist = BTreeMap::from([((fin(1), fin(1)), vec_of(field, &[1, lambda]))]);
        let a = global(field, &z2, vec![Matrix::identity(field, 2), swap(field)], twist);
        push(&format!("Z2 swap, w(1,1) = (1, {lambda}) over {field}"), Axiom::P5, a);
    }
    for (field, lambda) in [(Q, 2), (GF5, 3)] {
        let twist = BTreeMap::from([((fin(1), fin(1)), vec_of(field, &[lambda]))]);
        let one = Matrix::identity(field, 1);
        let a = global(field, &z3, vec![one.clone(), one.clone(), one], twist);
        push(&format!("Z3 trivial, scalar w(1,1) = {lambda} over {field}"), Axiom::P5, a);
    }
    out
}

fn axiom_sensitivity() -> Outcome {
    let z2 = GradingGroup::cyclic(2).unwrap();
    let klein = GradingGroup::direct_product(&z2, &z2).unwrap();
    let (x, idem, alpha) = restricted_regular(Q, &klein, 3);
    let controls = [
        TwistedPartialAction::new(StructureAlgebra::diagonal(Q, x.len()), klein.clone(), idem, alpha, BTreeMap::new()).unwrap(),
        regular_action(GF3, &GradingGroup::cyclic(3).unwrap()),
        regular_action(GF2, &z2),
    ];
    for (i, c) in controls.iter().enumerate() {
        ensure!(c.validate().is_ok(), "control {i} rejected: {:?}", c.validate());
    }
    let all = tampers();
    ensure!(all.len() == 20, "{} tampers", all.len());
    let mut tags = BTreeMap::new();
    for t in &all {
        let Err(vs) = t.action.validate() else {
            return Err(format!("{}: accepted", t.label));
        };
        let first = &vs[0];
        ensure!(first.axiom == t.axiom, "{}: first violation {} instead of {}", t.label, first.axiom, t.axiom);
        ensure!(!first.degrees.is_empty(), "{}: violation without degrees", t.label);
        if matches!(t.axiom, Axiom::P1 | Axiom::P3 | Axiom::P5) {
            ensure!(first.element.is_some(), "{}: violation without an element", t.label);
        }
        *tags.entry(t.axiom.to_string()).or_insert(0) += 1;
    }
    Ok(format!("20 tampers caught with the right tag {tags:?}; 3 controls accepted"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("dade-modified verdict table", dade_modified_table, Some(5)),
        ("exhaustive search refutes sections over GF(2)", no_crossed_product_structure_over_gf2, Some(1)),
        ("separability decision equals tensor oracle", separability_matches_oracle, Some(60)),
        ("four characterizations of epsilon-strongness agree", characterizations_agree, None),
        ("gamma and trace laws", gamma_laws, None),
        ("Frobenius identities and Kadison agreement", frobenius_and_kadison, None),
        ("extraction roundtrip and trace agreement", extraction_roundtrip, None),
        ("Morita suite", morita_suite, Some(5)),
        ("simple iff graded simple", simplicity, None),
        ("axiom validator sensitivity", axiom_sensitivity, None),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(check).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(l)) if took > Duration::from_secs(l) => Err(format!("took {took:.2?}, limit {l}s")),
            (r, _) => r,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name} [{took:.2?}]: {detail}", i + 1);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

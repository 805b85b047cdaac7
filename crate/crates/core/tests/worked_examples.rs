//! Hand-computed values for the named example rings, checked against the library.

use epsgrade::algebra::StructureAlgebra;
use epsgrade::exactnum::FieldSpec;
use epsgrade::gallery::{self, MoritaContext};
use epsgrade::grading::{EpsilonData, GradedRing, DEFAULT_BUDGET};
use epsgrade::groups::{GradingGroup, GroupElement};
use epsgrade::linalg::{vector, Subspace, Vector};
use epsgrade::partialaction::{epsilon_inverse, extract_action};
use epsgrade::separability::{decide_separability, frobenius_system, oracle_separability, SeparabilityVerdict};

const Q: FieldSpec = FieldSpec::Rationals;
const ONE: GroupElement = GroupElement::Finite(1);

fn v(field: FieldSpec, xs: &[i64]) -> Vector {
    xs.iter().map(|&x| field.from_i64(x)).collect()
}

#[test]
fn dade_center_gamma_and_trace() {
    for field in [FieldSpec::Prime(2), FieldSpec::Prime(3), Q] {
        let d = gallery::dade_modified(field);
        let s = d.ring();
        let a = d.entry_algebra();
        let eps = EpsilonData::compute(s).unwrap();
        let one_b = v(field, &[1, 0]);

        // Z(R) = { diag(a, a, a') }
        assert_eq!(eps.center().dim(), 2 * a.dim());
        let basis = [v(field, &[1, 0]), v(field, &[0, 1])];
        for x in &basis {
            for y in &basis {
                let r = d.diagonal(x, x, y);
                assert!(eps.center().contains(&r));
                let bx = a.mul_unchecked(&one_b, x);
                let by = a.mul_unchecked(&one_b, y);
                assert_eq!(eps.gamma(ONE, &r), d.diagonal(&by, &by, &bx));
            }
        }

        let sum = vector::add(a.unit(), &one_b);
        assert_eq!(eps.trace(s.algebra().unit()).unwrap(), d.diagonal(&sum, &sum, &sum));
        assert!(eps.z_fin_gamma_fixed().contains(s.algebra().unit()));
    }
}

#[test]
fn dade_epsilon_three_term_decomposition() {
    let field = FieldSpec::Prime(3);
    let d = gallery::dade_modified(field);
    let s = d.ring();
    let alg = s.algebra();
    let b = v(field, &[1, 0]);
    let at = |i, j| d.element(&[(i, j, b.clone())]);
    let pairs = vec![(at(0, 2), at(2, 0)), (at(1, 2), at(2, 1)), (at(2, 0), at(0, 2))];
    let mut sum = alg.zero();
    for (x, y) in &pairs {
        sum = vector::add(&sum, &alg.mul_unchecked(x, y));
    }
    let eps = EpsilonData::compute(s).unwrap();
    assert_eq!(sum, eps.epsilon(ONE));
    assert_eq!(eps.epsilon(ONE), d.diagonal(&b, &b, &b));

    // Frobenius identities over the three-term decomposition
    let eps = eps.with_decomposition(s, ONE, pairs).unwrap();
    let fs = frobenius_system(s, &eps).unwrap();
    assert_eq!(fs.pairs.len(), 1 + 3);
}

#[test]
fn morita_gamma_inverse_and_extraction() {
    let s = gallery::gen_morita_ring(&MoritaContext::trivial(Q)).unwrap();
    let (g, ginv) = (GroupElement::Int(1), GroupElement::Int(-1));
    let eps = EpsilonData::compute(&s).unwrap();
    // basis e11, e12, e21, e22
    let (a, b) = (Q.from_i64(5), Q.from_i64(-2));
    let diag = vec![a, Q.zero(), Q.zero(), b.clone()];
    assert_eq!(eps.gamma(g, &diag), vec![b, Q.zero(), Q.zero(), Q.zero()]);

    let e12 = v(Q, &[0, 1, 0, 0]);
    let e21 = v(Q, &[0, 0, 1, 0]);
    assert_eq!(epsilon_inverse(&s, &eps, g, &e12).unwrap(), Some(e21.clone()));
    let sections = [(GroupElement::Int(0), s.algebra().unit().clone()), (g, e12), (ginv, e21)].into_iter().collect();
    let action = extract_action(&s, &eps, &sections).unwrap();
    assert_eq!(action.one(g), v(Q, &[1, 0]));
    assert_eq!(action.one(ginv), v(Q, &[0, 1]));
    assert_eq!(action.w(g, ginv), v(Q, &[1, 0]));
}

#[test]
fn strongly_graded_matrices_over_gf2() {
    let f = FieldSpec::Prime(2);
    let z2 = GradingGroup::cyclic(2).unwrap();
    let m2 = gallery::elementary_grading(&StructureAlgebra::diagonal(f, 1), &z2, &[GroupElement::Finite(0), ONE]);
    assert!(m2.classify().is_strong);
    assert!(m2.is_maximal_commutative());
    assert_eq!(m2.is_simple(DEFAULT_BUDGET), Ok(true));
    assert_eq!(m2.is_graded_simple(DEFAULT_BUDGET), Ok(true));
    // e12 + e21 squares to 1
    let eps = EpsilonData::compute(&m2).unwrap();
    let swap = v(f, &[0, 1, 1, 0]);
    assert_eq!(epsilon_inverse(&m2, &eps, ONE, &swap).unwrap(), Some(swap));

    let kk = GradedRing::trivial(StructureAlgebra::diagonal(f, 2), z2);
    assert_eq!(kk.is_simple(DEFAULT_BUDGET), Ok(false));
}

#[test]
fn oracle_on_classical_examples() {
    let z2 = GradingGroup::cyclic(2).unwrap();
    for field in [Q, FieldSpec::Prime(3), FieldSpec::Prime(2)] {
        let dual = StructureAlgebra::truncated_polynomial(field, 2);
        let k = Subspace::span(field, 2, [dual.unit().clone()]);
        assert!(!oracle_separability(&dual, &k).unwrap().is_feasible());
    }
    let s = gallery::gen_group_algebra(&z2, Q);
    let eps = EpsilonData::compute(&s).unwrap();
    match decide_separability(&s, &eps) {
        SeparabilityVerdict::Separable(cert) => assert_eq!(cert.witness_c, vec![Q.from_ratio(1, 2).unwrap(), Q.zero()]),
        other => panic!("{other:?}"),
    }
    let g2 = gallery::gen_group_algebra(&z2, FieldSpec::Prime(2));
    let eps = EpsilonData::compute(&g2).unwrap();
    assert!(!decide_separability(&g2, &eps).is_separable());
    assert!(frobenius_system(&g2, &eps).is_ok());
}

#[test]
fn half_action_crossed_product() {
    let a = gallery::half_action(Q);
    assert_eq!(a.validate(), Ok(()));
    let cp = epsgrade::partialaction::crossed_product(&a).unwrap();
    let s = cp.ring();
    assert_eq!(s.dim(), 3);
    assert_eq!(s.component_indices(ONE).len(), 1);
    let eps = EpsilonData::compute(s).unwrap();
    assert_eq!(cp.coefficient(GroupElement::Finite(0), &eps.epsilon(ONE)), v(Q, &[1, 0]));
    // tr_alpha(c1, c2) = (2 c1, c2): separable iff 2 is invertible
    for (field, sep) in [(Q, true), (FieldSpec::Prime(3), true), (FieldSpec::Prime(2), false)] {
        let cp = epsgrade::partialaction::crossed_product(&gallery::half_action(field)).unwrap();
        let eps = EpsilonData::compute(cp.ring()).unwrap();
        assert_eq!(decide_separability(cp.ring(), &eps).is_separable(), sep);
    }
}

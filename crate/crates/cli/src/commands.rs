use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use epsgrade::exactnum::FieldSpec;
use epsgrade::gallery::{self, Family, MoritaContext, RandomParams};
use epsgrade::grading::{EpsilonData, EpsilonError, EpsilonFailure, GradedRing};
use epsgrade::groups::{GradingGroup, GroupElement};
use epsgrade::partialaction::{
    crossed_product, extract_action, find_sections, graded_iso_check, roundtrip_map, CrossedProductError, ExtractError,
    SearchOutcome,
};
use epsgrade::separability::{
    decide_separability_with, frobenius_system, kadison_check, oracle_separability, oracle_with, trace_of_one_invertible,
    SeparabilityVerdict,
};

use crate::files::{self, LoadError};
use crate::report::{self, label, labels, vector};
use crate::{
    Cli, Command, ExampleName, Format, EXIT_ACTION_AXIOM, EXIT_INVALID, EXIT_NOT_EPSILON_STRONG, EXIT_OK, EXIT_PARSE,
    EXIT_SEARCH, EXIT_THEOREM_VIOLATION,
};

struct Outcome {
    report: Value,
    code: u8,
    /// A ring or action document to write to `-o` (or stdout without `-o`).
    document: Option<Value>,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome {
            report,
            code: EXIT_OK,
            document: None,
        }
    }

    fn fail(code: u8, report: Value) -> Self {
        Outcome {
            report,
            code,
            document: None,
        }
    }

    fn error(code: u8, message: impl ToString) -> Self {
        Outcome::fail(code, json!({ "error": message.to_string() }))
    }
}

fn load_failure(e: LoadError) -> Outcome {
    let code = match e {
        LoadError::Io { .. } | LoadError::Malformed(_) => EXIT_PARSE,
        LoadError::Violation(_) => EXIT_INVALID,
        LoadError::Action(_) => EXIT_ACTION_AXIOM,
    };
    Outcome::error(code, e)
}

pub fn dispatch(cli: &Cli) -> u8 {
    let out = match &cli.command {
        Command::Validate { path } => validate(path),
        Command::Classify { path } => with_ring(path, classify),
        Command::Separability { path } => with_ring(path, separability),
        Command::Frobenius { path } => with_ring(path, frobenius),
        Command::CrossedProduct { path } => crossed(path),
        Command::ExtractAction {
            path,
            sections,
            seed,
            budget,
            verify_roundtrip,
        } => extract(path, sections.as_deref(), *seed, *budget, *verify_roundtrip),
        Command::Example { name, field, seed } => example(*name, *field, *seed),
        Command::CorpusRun { count, seed } => corpus_run(*count, *seed),
    };
    if let Some(err) = out.report.get("error").and_then(Value::as_str) {
        eprintln!("error: {err}");
    }
    let written = match (&out.document, &cli.output) {
        (Some(doc), Some(path)) => write(path, &pretty(doc)),
        (Some(doc), None) => {
            emit(&pretty(doc));
            return out.code;
        }
        _ => Ok(()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_PARSE;
    }
    let rendered = match cli.format {
        Format::Json => pretty(&out.report),
        Format::Text => report::text(&out.report),
    };
    match (&out.document, &cli.output) {
        (None, Some(path)) => {
            if let Err(e) = write(path, &rendered) {
                eprintln!("error: {e}");
                return EXIT_PARSE;
            }
        }
        _ => emit(&rendered),
    }
    out.code
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", text.trim_end());
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn write(path: &Path, text: &str) -> std::io::Result<()> {
    std::fs::write(path, format!("{}\n", text.trim_end()))
}

fn with_ring(path: &Path, f: fn(&GradedRing) -> Outcome) -> Outcome {
    match files::load_ring(path) {
        Ok(ring) => f(&ring),
        Err(e) => load_failure(e),
    }
}

fn validate(path: &Path) -> Outcome {
    let is_action = match files::is_action_file(path) {
        Ok(b) => b,
        Err(e) => return load_failure(e),
    };
    if !is_action {
        return with_ring(path, |ring| {
            Outcome::ok(json!({
                "kind": "ring",
                "valid": true,
                "dim": ring.dim(),
                "support": labels(ring.group(), &ring.support()),
            }))
        });
    }
    let action = match files::load_action(path) {
        Ok(a) => a,
        Err(e) => return load_failure(e),
    };
    let group = action.group();
    match action.validate() {
        Ok(()) => Outcome::ok(json!({
            "kind": "action",
            "valid": true,
            "support": labels(group, &action.support()),
        })),
        Err(vs) => Outcome::fail(
            EXIT_ACTION_AXIOM,
            json!({ "kind": "action", "valid": false, "violations": report::violations(group, &vs) }),
        ),
    }
}

fn epsilon_table(ring: &GradedRing, eps: &EpsilonData) -> Value {
    let map: serde_json::Map<String, Value> = eps
        .nonzero_degrees()
        .into_iter()
        .map(|g| (ring.group().label(g), vector(&eps.epsilon(g))))
        .collect();
    Value::Object(map)
}

fn epsilon_witness(group: &GradingGroup, e: &EpsilonError) -> Value {
    match e {
        EpsilonError::NotEpsilonStrong { degree, reason } => {
            json!({ "degree": group.label(*degree), "reason": format!("{reason:?}") })
        }
        _ => Value::Null,
    }
}

fn epsilon_error(group: &GradingGroup, e: &EpsilonError) -> String {
    match e {
        EpsilonError::NotEpsilonStrong { degree, reason } => {
            let why = match reason {
                EpsilonFailure::NotUnital => "S_g S_g^-1 has no identity element",
                EpsilonFailure::LeftIdentityFails => "eps_g s != s for some s in S_g",
                EpsilonFailure::RightIdentityFails => "s eps_g^-1 != s for some s in S_g",
            };
            format!("not epsilon-strong at degree {}: {why}", group.label(*degree))
        }
        other => other.to_string(),
    }
}

fn classify(ring: &GradedRing) -> Outcome {
    let group = ring.group();
    let c = ring.classify();
    let eps = EpsilonData::compute(ring);
    let mut report = json!({
        "dim": ring.dim(),
        "support": labels(group, &ring.support()),
        "strong": c.is_strong,
        "strong_failure": report::failure(group, c.strong_failure),
        "symmetric": c.is_symmetric,
        "symmetric_failure": c.symmetric_failure.map(|g| label(group, g)),
        "epsilon_strong": c.is_epsilon_strong,
        "char_i": report::verdict(group, &c.char_i),
        "char_ii": report::verdict(group, &c.char_ii),
        "char_iii": report::verdict(group, &c.char_iii),
        "char_iv": report::verdict(group, &c.char_iv),
        "characterizations_agree": c.coherent(),
    });
    let code = match &eps {
        Ok(eps) => {
            report["epsilon"] = epsilon_table(ring, eps);
            report["strong_via_epsilon"] = json!(c.strong_via_epsilon);
            EXIT_OK
        }
        Err(e) => {
            report["epsilon"] = Value::Null;
            report["witness"] = epsilon_witness(group, e);
            report["error"] = json!(epsilon_error(group, e));
            EXIT_NOT_EPSILON_STRONG
        }
    };
    if !c.coherent() || eps.is_ok() != c.is_epsilon_strong {
        report["error"] = json!("characterizations of epsilon-strongness disagree");
        return Outcome::fail(EXIT_THEOREM_VIOLATION, report);
    }
    Outcome::fail(code, report)
}

fn separability(ring: &GradedRing) -> Outcome {
    let alg = ring.algebra();
    let eps = match EpsilonData::compute(ring) {
        Ok(eps) => eps,
        Err(e) => {
            let oracle = match oracle_separability(alg, &ring.principal()) {
                Ok(o) => o,
                Err(t) => return Outcome::error(EXIT_THEOREM_VIOLATION, t),
            };
            return Outcome::fail(
                EXIT_NOT_EPSILON_STRONG,
                json!({
                    "epsilon_strong": false,
                    "error": epsilon_error(ring.group(), &e),
                    "witness": epsilon_witness(ring.group(), &e),
                    "oracle_verdict": oracle.is_feasible(),
                }),
            );
        }
    };
    let tensor = ring.tensor_over_principal();
    let verdict = decide_separability_with(ring, &eps, &tensor);
    let separable = verdict.is_separable();
    let oracle = oracle_with(&tensor).is_feasible();
    let fs = match frobenius_system(ring, &eps) {
        Ok(fs) => fs,
        Err(e) => return Outcome::error(EXIT_THEOREM_VIOLATION, e),
    };
    let kadison = kadison_check(ring, &fs, separable);
    let t1 = trace_of_one_invertible(ring, &eps);
    let (witness, checks, certified) = match &verdict {
        SeparabilityVerdict::Separable(cert) => (
            vector(&cert.witness_c),
            json!({
                "trace_is_one": cert.trace_is_one,
                "m_of_x_is_one": cert.m_of_x_is_one,
                "x_central": cert.x_central,
                "verified": cert.verified(),
            }),
            cert.verified(),
        ),
        SeparabilityVerdict::NotSeparable { functional } => (Value::Null, json!({ "functional": vector(functional) }), true),
    };
    let agree = oracle == separable && kadison.agrees && certified && (!t1.invertible || separable);
    let mut report = json!({
        "epsilon_strong": true,
        "separable": separable,
        "witness_c": witness,
        "certificate_checks": checks,
        "oracle_verdict": oracle,
        "trace_of_one": { "trace": vector(&t1.trace), "invertible": t1.invertible },
        "kadison": { "d": kadison.d.as_deref().map(vector), "separable": kadison.d.is_some() },
        "channels_agree": agree,
    });
    if !agree {
        report["error"] = json!("separability channels disagree");
        return Outcome::fail(EXIT_THEOREM_VIOLATION, report);
    }
    Outcome::ok(report)
}

fn frobenius(ring: &GradedRing) -> Outcome {
    let eps = match EpsilonData::compute(ring) {
        Ok(eps) => eps,
        Err(e) => return Outcome::error(EXIT_NOT_EPSILON_STRONG, epsilon_error(ring.group(), &e)),
    };
    let fs = match frobenius_system(ring, &eps) {
        Ok(fs) => fs,
        Err(e) => return Outcome::error(EXIT_THEOREM_VIOLATION, e),
    };
    let tensor = ring.tensor_over_principal();
    let separable = decide_separability_with(ring, &eps, &tensor).is_separable();
    let kadison = kadison_check(ring, &fs, separable);
    let pairs: Vec<Value> = fs.pairs.iter().map(|(u, v)| json!([vector(u), vector(v)])).collect();
    let report = json!({
        "identities_hold": true,
        "finite_group": fs.finite_group_hypothesis,
        "pairs": pairs,
        "separable": separable,
        "kadison_d": kadison.d.as_deref().map(vector),
        "kadison_agrees": kadison.agrees,
    });
    if !kadison.agrees {
        return Outcome::fail(EXIT_THEOREM_VIOLATION, report);
    }
    Outcome::ok(report)
}

fn crossed(path: &Path) -> Outcome {
    let action = match files::load_action(path) {
        Ok(a) => a,
        Err(e) => return load_failure(e),
    };
    match crossed_product(&action) {
        Ok(cp) => {
            let ring = cp.ring();
            Outcome {
                report: json!({ "dim": ring.dim(), "support": labels(ring.group(), &ring.support()) }),
                code: EXIT_OK,
                document: Some(serde_json::to_value(files::ring_to_file(ring)).expect("serializable")),
            }
        }
        Err(CrossedProductError::Axioms(vs)) => Outcome::fail(
            EXIT_ACTION_AXIOM,
            json!({
                "error": format!("action violates {}", vs[0].axiom),
                "violations": report::violations(action.group(), &vs),
            }),
        ),
        Err(e) => Outcome::error(EXIT_THEOREM_VIOLATION, e),
    }
}

fn search_note(ring: &GradedRing, g: GroupElement, outcome: &SearchOutcome) -> Value {
    let at = ring.group().label(g);
    let d = ring.component_indices(g).len();
    match outcome {
        SearchOutcome::NotFound { exhaustive: true, tried } => json!({
            "degree": at,
            "conclusive": true,
            "note": format!(
                "exhaustive: all {tried} elements of the {d}-dimensional component S_{at} were tested and none is \
                 epsilon-invertible, so the ring is not an epsilon-crossed product"
            ),
        }),
        SearchOutcome::NotFound { tried, .. } => json!({
            "degree": at,
            "conclusive": false,
            "note": format!("inconclusive: {tried} probes in S_{at} over Q found no epsilon-invertible element"),
        }),
        SearchOutcome::BudgetExceeded { needed, budget } => json!({
            "degree": at,
            "conclusive": false,
            "note": format!("inconclusive: S_{at} has {needed} elements, over the budget of {budget}"),
        }),
        SearchOutcome::Found { .. } => json!({ "degree": at }),
    }
}

fn extract(path: &Path, sections: Option<&Path>, seed: u64, budget: u64, verify: bool) -> Outcome {
    let ring = match files::load_ring(path) {
        Ok(r) => r,
        Err(e) => return load_failure(e),
    };
    let eps = match EpsilonData::compute(&ring) {
        Ok(eps) => eps,
        Err(e) => return Outcome::error(EXIT_NOT_EPSILON_STRONG, epsilon_error(ring.group(), &e)),
    };
    let sections = match sections {
        Some(p) => match files::load_sections(p, &ring) {
            Ok(s) => s,
            Err(e) => return load_failure(e),
        },
        None => match find_sections(&ring, &eps, budget, seed) {
            Ok(s) => s,
            Err((g, outcome)) => {
                let mut report = search_note(&ring, g, &outcome);
                report["error"] = json!("no epsilon-invertible section found");
                return Outcome::fail(EXIT_SEARCH, report);
            }
        },
    };
    let action = match extract_action(&ring, &eps, &sections) {
        Ok(a) => a,
        Err(ExtractError::Axioms(vs)) => {
            return Outcome::fail(
                EXIT_THEOREM_VIOLATION,
                json!({ "error": "extracted action violates the axioms", "violations": report::violations(ring.group(), &vs) }),
            )
        }
        Err(e) => return Outcome::error(EXIT_INVALID, e),
    };
    let mut report = json!({
        "support": labels(action.group(), &action.support()),
        "sections": sections_report(ring.group(), &sections),
    });
    if verify {
        let iso = crossed_product(&action)
            .ok()
            .and_then(|cp| roundtrip_map(&ring, &eps, &sections, &cp).ok().map(|m| graded_iso_check(&ring, cp.ring(), &m)));
        report["roundtrip_isomorphic"] = json!(iso == Some(true));
        if iso != Some(true) {
            report["error"] = json!("rebuilt crossed product is not graded-isomorphic to the input");
            return Outcome::fail(EXIT_THEOREM_VIOLATION, report);
        }
    }
    Outcome {
        report,
        code: EXIT_OK,
        document: Some(serde_json::to_value(files::action_to_file(&action)).expect("serializable")),
    }
}

fn sections_report(group: &GradingGroup, s: &BTreeMap<GroupElement, epsgrade::Vector>) -> Value {
    Value::Object(s.iter().map(|(&g, v)| (group.label(g), vector(v))).collect())
}

fn example(name: ExampleName, field: FieldSpec, seed: u64) -> Outcome {
    let z2 = GradingGroup::cyclic(2).expect("group");
    let ring = match name {
        ExampleName::DadeModified => gallery::gen_dade_modified(field),
        ExampleName::DadeOriginal => gallery::gen_dade_original(field),
        ExampleName::MoritaTrivial => gallery::gen_morita_ring(&MoritaContext::trivial(field)).expect("valid context"),
        ExampleName::MoritaFromDade => {
            gallery::gen_morita_from_strong(&gallery::gen_dade_original(field), GroupElement::Finite(1)).expect("strong grading")
        }
        ExampleName::GroupAlgebraZ2 => gallery::gen_group_algebra(&z2, field),
        ExampleName::GroupAlgebraZ3 => gallery::gen_group_algebra(&GradingGroup::cyclic(3).expect("group"), field),
        ExampleName::GroupAlgebraKlein => {
            gallery::gen_group_algebra(&GradingGroup::direct_product(&z2, &z2).expect("group"), field)
        }
        ExampleName::Truncated => {
            gallery::truncated_polynomial_graded(field, 3, &GradingGroup::integers(), GroupElement::Int(1))
        }
        ExampleName::Random => gallery::gen_random_epsilon_strong(seed, &RandomParams::new(field, z2)).ring,
        ExampleName::HalfAction => {
            let a = gallery::half_action(field);
            return Outcome {
                report: json!({ "kind": "action", "support": labels(a.group(), &a.support()) }),
                code: EXIT_OK,
                document: Some(serde_json::to_value(files::action_to_file(&a)).expect("serializable")),
            };
        }
    };
    Outcome {
        report: json!({ "kind": "ring", "dim": ring.dim(), "field": field.to_string() }),
        code: EXIT_OK,
        document: Some(serde_json::to_value(files::ring_to_file(&ring)).expect("serializable")),
    }
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::CrossedProduct => "crossed_product",
        Family::Morita => "morita",
        Family::MatrixGrading => "matrix_grading",
        Family::Negative => "negative",
    }
}

fn corpus_run(count: usize, seed: u64) -> Outcome {
    let mut disagreements = Vec::new();
    let mut families: BTreeMap<&str, usize> = BTreeMap::new();
    let mut separable = 0;
    for inst in gallery::corpus(count, seed) {
        *families.entry(family_name(inst.family)).or_default() += 1;
        let ring = &inst.ring;
        let tensor = ring.tensor_over_principal();
        let oracle = oracle_with(&tensor).is_feasible();
        let decided = EpsilonData::compute(ring).map(|eps| decide_separability_with(ring, &eps, &tensor).is_separable());
        match decided {
            Ok(d) if d == oracle => separable += usize::from(d),
            Ok(d) => disagreements.push(json!({ "label": inst.label, "decide": d, "oracle": oracle })),
            Err(e) => disagreements.push(json!({ "label": inst.label, "error": e.to_string() })),
        }
    }
    let report = json!({
        "instances": count,
        "seed": seed,
        "families": families,
        "separable": separable,
        "agreement": count - disagreements.len(),
        "disagreements": disagreements,
    });
    if report["disagreements"].as_array().is_some_and(|d| !d.is_empty()) {
        return Outcome::fail(EXIT_THEOREM_VIOLATION, report);
    }
    Outcome::ok(report)
}

use std::fmt::Write as _;

use serde_json::{json, Value};

use epsgrade::grading::{Failure, Verdict};
use epsgrade::groups::{GradingGroup, GroupElement};
use epsgrade::partialaction::ActionViolation;
use epsgrade::Scalar;

pub fn vector(v: &[Scalar]) -> Value {
    Value::from(crate::files::strings(v))
}

pub fn label(group: &GradingGroup, g: GroupElement) -> Value {
    Value::from(group.label(g))
}

pub fn labels(group: &GradingGroup, gs: &[GroupElement]) -> Value {
    Value::from(gs.iter().map(|&g| group.label(g)).collect::<Vec<_>>())
}

pub fn failure(group: &GradingGroup, f: Option<Failure>) -> Value {
    match f {
        None => Value::Null,
        Some(Failure::Degree(g)) => json!({ "degree": group.label(g) }),
        Some(Failure::Pair(g, h)) => json!({ "pair": [group.label(g), group.label(h)] }),
    }
}

pub fn verdict(group: &GradingGroup, v: &Verdict) -> Value {
    json!({ "holds": v.holds, "failure": failure(group, v.failure) })
}

pub fn violations(group: &GradingGroup, vs: &[ActionViolation]) -> Value {
    Value::from(
        vs.iter()
            .map(|v| {
                json!({
                    "axiom": v.axiom.to_string(),
                    "degrees": labels(group, &v.degrees),
                    "element": v.element.as_deref().map(vector),
                })
            })
            .collect::<Vec<_>>(),
    )
}

/// `key: value` lines, nested objects indented by two spaces.
pub fn text(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", xs.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(xs) if xs.iter().all(|x| x.is_array()) => {
            let rows: Option<Vec<_>> = xs.iter().map(scalar).collect();
            rows.map(|r| format!("[{}]", r.join(", ")))
        }
        _ => None,
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_rendering() {
        let v = json!({ "b": { "x": ["1", "1/2"] }, "a": true, "c": [{ "k": null }] });
        assert_eq!(text(&v), "a: true\nb:\n  x: [1, 1/2]\nc:\n  -\n    k: -\n");
    }
}

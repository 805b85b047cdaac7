//! JSON ring and action files.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use epsgrade::algebra::StructureAlgebra;
use epsgrade::exactnum::{FieldSpec, Scalar};
use epsgrade::grading::GradedRing;
use epsgrade::groups::{GradingGroup, GroupElement};
use epsgrade::linalg::{vector, Matrix, Vector};
use epsgrade::partialaction::{ActionError, TwistedPartialAction};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    /// Malformed document; the message carries the position.
    #[error("{0}")]
    Malformed(String),
    /// Well-formed but the algebra or grading axioms fail.
    #[error("{0}")]
    Violation(String),
    /// Action data whose maps or idempotents are not of the required kind.
    #[error("{0}")]
    Action(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldDoc {
    Q,
    Gf { p: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GroupDoc {
    Cyclic { n: usize },
    Integers,
    Table { labels: Vec<String>, table: Vec<Vec<usize>> },
    Product { factors: Vec<GroupDoc> },
}

/// `structure` lists the nonzero products `e_i e_j` as `[i, j, coordinates]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub field: FieldDoc,
    pub dim: usize,
    pub unit: Vec<String>,
    pub structure: Vec<(usize, usize, Vec<String>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    pub field: FieldDoc,
    pub group: GroupDoc,
    pub dim: usize,
    pub unit: Vec<String>,
    pub structure: Vec<(usize, usize, Vec<String>)>,
    pub degrees: Vec<String>,
}

/// `alpha` matrices are lists of rows acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub base: AlgebraDoc,
    pub group: GroupDoc,
    pub support: Vec<String>,
    pub idempotents: BTreeMap<String, Vec<String>>,
    pub alpha: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    pub twist: Vec<(String, String, Vec<String>)>,
}

pub fn field_from_doc(doc: &FieldDoc) -> Result<FieldSpec, LoadError> {
    match doc {
        FieldDoc::Q => Ok(FieldSpec::Rationals),
        FieldDoc::Gf { p } => FieldSpec::prime(*p).map_err(|e| LoadError::Malformed(format!("field: {e}"))),
    }
}

pub fn field_to_doc(field: FieldSpec) -> FieldDoc {
    match field {
        FieldSpec::Rationals => FieldDoc::Q,
        FieldSpec::Prime(p) => FieldDoc::Gf { p },
    }
}

/// Parses `q` or `gf:p`.
pub fn parse_field_flag(text: &str) -> Result<FieldSpec, String> {
    let t = text.trim().to_ascii_lowercase();
    if t == "q" {
        return Ok(FieldSpec::Rationals);
    }
    let p = t
        .strip_prefix("gf:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| format!("expected q or gf:p, got {text:?}"))?;
    FieldSpec::prime(p).map_err(|e| e.to_string())
}

pub fn group_from_doc(doc: &GroupDoc) -> Result<GradingGroup, LoadError> {
    let bad = |e: epsgrade::GroupError| LoadError::Malformed(format!("group: {e}"));
    match doc {
        GroupDoc::Cyclic { n } => GradingGroup::cyclic(*n).map_err(bad),
        GroupDoc::Integers => Ok(GradingGroup::integers()),
        GroupDoc::Table { labels, table } => GradingGroup::from_table(labels.clone(), table.clone()).map_err(bad),
        GroupDoc::Product { factors } => {
            let mut it = factors.iter();
            let first = it
                .next()
                .ok_or_else(|| LoadError::Malformed("group: product needs factors".into()))?;
            let mut g = group_from_doc(first)?;
            for f in it {
                g = GradingGroup::direct_product(&g, &group_from_doc(f)?).map_err(bad)?;
            }
            Ok(g)
        }
    }
}

pub fn group_to_doc(group: &GradingGroup) -> GroupDoc {
    match (group.labels(), group.table()) {
        (Some(labels), Some(table)) => {
            let n = labels.len();
            if let Ok(c) = GradingGroup::cyclic(n) {
                if c == *group {
                    return GroupDoc::Cyclic { n };
                }
            }
            GroupDoc::Table {
                labels: labels.to_vec(),
                table: table.to_vec(),
            }
        }
        _ => GroupDoc::Integers,
    }
}

fn scalars(field: FieldSpec, xs: &[String], at: &str) -> Result<Vector, LoadError> {
    xs.iter()
        .enumerate()
        .map(|(k, x)| field.parse(x).map_err(|e| LoadError::Malformed(format!("{at}[{k}]: {e}"))))
        .collect()
}

fn vector_of(field: FieldSpec, dim: usize, xs: &[String], at: &str) -> Result<Vector, LoadError> {
    if xs.len() != dim {
        return Err(LoadError::Malformed(format!("{at}: expected {dim} coordinates, found {}", xs.len())));
    }
    scalars(field, xs, at)
}

pub fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn element(group: &GradingGroup, label: &str, at: &str) -> Result<GroupElement, LoadError> {
    group
        .parse_element(label)
        .ok_or_else(|| LoadError::Malformed(format!("{at}: {label:?} is not a group element")))
}

pub fn algebra_from_doc(doc: &AlgebraDoc, at: &str) -> Result<StructureAlgebra, LoadError> {
    let field = field_from_doc(&doc.field)?;
    let n = doc.dim;
    let unit = vector_of(field, n, &doc.unit, &format!("{at}unit"))?;
    let mut table = vec![Vec::new(); n * n];
    for (k, (i, j, v)) in doc.structure.iter().enumerate() {
        let here = format!("{at}structure[{k}]");
        if *i >= n || *j >= n {
            return Err(LoadError::Malformed(format!("{here}: index out of range for dimension {n}")));
        }
        if !table[i * n + j].is_empty() {
            return Err(LoadError::Malformed(format!("{here}: product e{i} e{j} given twice")));
        }
        table[i * n + j] = vector::to_sparse(&vector_of(field, n, v, &here)?);
    }
    StructureAlgebra::from_sparse_table(field, n, table, unit).map_err(|e| LoadError::Malformed(format!("{at}structure: {e}")))
}

pub fn algebra_to_doc(alg: &StructureAlgebra) -> AlgebraDoc {
    let n = alg.dim();
    let mut structure = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let p = alg.basis_product(i, j);
            if !p.is_empty() {
                structure.push((i, j, strings(&vector::from_sparse(alg.field(), n, p))));
            }
        }
    }
    AlgebraDoc {
        field: field_to_doc(alg.field()),
        dim: n,
        unit: strings(alg.unit()),
        structure,
    }
}

/// Parses and checks the algebra and grading axioms.
pub fn ring_from_file(doc: &RingFile) -> Result<GradedRing, LoadError> {
    let alg = algebra_from_doc(
        &AlgebraDoc {
            field: doc.field.clone(),
            dim: doc.dim,
            unit: doc.unit.clone(),
            structure: doc.structure.clone(),
        },
        "",
    )?;
    let group = group_from_doc(&doc.group)?;
    if doc.degrees.len() != doc.dim {
        return Err(LoadError::Malformed(format!(
            "degrees: expected {} labels, found {}",
            doc.dim,
            doc.degrees.len()
        )));
    }
    let degrees = doc
        .degrees
        .iter()
        .enumerate()
        .map(|(k, l)| element(&group, l, &format!("degrees[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    alg.validate()
        .map_err(|v| LoadError::Violation(format!("algebra: {v}")))?;
    let ring = GradedRing::new(alg, group, degrees).map_err(|e| LoadError::Malformed(format!("degrees: {e}")))?;
    ring.validate()
        .map_err(|v| LoadError::Violation(format!("grading: {v}")))?;
    Ok(ring)
}

pub fn ring_to_file(ring: &GradedRing) -> RingFile {
    let a = algebra_to_doc(ring.algebra());
    RingFile {
        field: a.field,
        group: group_to_doc(ring.group()),
        dim: a.dim,
        unit: a.unit,
        structure: a.structure,
        degrees: ring.degrees().iter().map(|&g| ring.group().label(g)).collect(),
    }
}

/// Parses an action file; structural invariants are checked, the axioms are not.
pub fn action_from_file(doc: &ActionFile) -> Result<TwistedPartialAction, LoadError> {
    let base = algebra_from_doc(&doc.base, "base.")?;
    base.validate()
        .map_err(|v| LoadError::Violation(format!("base algebra: {v}")))?;
    let group = group_from_doc(&doc.group)?;
    let field = base.field();
    let n = base.dim();
    let mut idempotents = BTreeMap::new();
    let mut alpha = BTreeMap::new();
    for (k, label) in doc.support.iter().enumerate() {
        let g = element(&group, label, &format!("support[{k}]"))?;
        let one = doc
            .idempotents
            .get(label)
            .ok_or_else(|| LoadError::Malformed(format!("idempotents: missing entry for {label:?}")))?;
        idempotents.insert(g, vector_of(field, n, one, &format!("idempotents.{label}"))?);
        let rows = doc
            .alpha
            .get(label)
            .ok_or_else(|| LoadError::Malformed(format!("alpha: missing entry for {label:?}")))?;
        if rows.len() != n {
            return Err(LoadError::Malformed(format!("alpha.{label}: expected {n} rows")));
        }
        let rows = rows
            .iter()
            .enumerate()
            .map(|(r, row)| vector_of(field, n, row, &format!("alpha.{label}[{r}]")))
            .collect::<Result<Vec<_>, _>>()?;
        alpha.insert(g, Matrix::from_rows(field, n, rows).map_err(|e| LoadError::Malformed(e.to_string()))?);
    }
    for label in doc.idempotents.keys().chain(doc.alpha.keys()) {
        if !doc.support.contains(label) {
            return Err(LoadError::Malformed(format!("{label:?} is not listed in support")));
        }
    }
    let mut twist = BTreeMap::new();
    for (k, (g, h, w)) in doc.twist.iter().enumerate() {
        let here = format!("twist[{k}]");
        let key = (element(&group, g, &here)?, element(&group, h, &here)?);
        if twist.insert(key, vector_of(field, n, w, &here)?).is_some() {
            return Err(LoadError::Malformed(format!("{here}: pair given twice")));
        }
    }
    TwistedPartialAction::new(base, group, idempotents, alpha, twist).map_err(|e| match e {
        ActionError::Shape(_) | ActionError::ForeignElement(_) => LoadError::Malformed(e.to_string()),
        _ => LoadError::Action(e.to_string()),
    })
}

pub fn action_to_file(a: &TwistedPartialAction) -> ActionFile {
    let group = a.group();
    let label = |g: GroupElement| group.label(g);
    ActionFile {
        base: algebra_to_doc(a.base()),
        group: group_to_doc(group),
        support: a.support().into_iter().map(label).collect(),
        idempotents: a.idempotents().iter().map(|(&g, v)| (label(g), strings(v))).collect(),
        alpha: a
            .alpha_matrices()
            .iter()
            .filter(|(g, _)| a.idempotents().contains_key(g))
            .map(|(&g, m)| (label(g), m.row_vectors().iter().map(|r| strings(r)).collect()))
            .collect(),
        twist: a
            .stored_twists()
            .iter()
            .map(|(&(g, h), w)| (label(g), label(h), strings(w)))
            .collect(),
    }
}

fn read(path: &Path) -> Result<String, LoadError> {
    std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T, LoadError> {
    serde_json::from_str(text).map_err(|e| LoadError::Malformed(format!("{}: {e}", path.display())))
}

pub fn load_ring(path: &Path) -> Result<GradedRing, LoadError> {
    let doc: RingFile = parse(path, &read(path)?)?;
    ring_from_file(&doc).map_err(|e| prefix(path, e))
}

pub fn load_action(path: &Path) -> Result<TwistedPartialAction, LoadError> {
    let doc: ActionFile = parse(path, &read(path)?)?;
    action_from_file(&doc).map_err(|e| prefix(path, e))
}

/// Whether the document looks like an action file.
pub fn is_action_file(path: &Path) -> Result<bool, LoadError> {
    let v: serde_json::Value = parse(path, &read(path)?)?;
    Ok(v.get("idempotents").is_some())
}

pub fn load_sections(path: &Path, ring: &GradedRing) -> Result<BTreeMap<GroupElement, Vector>, LoadError> {
    let doc: BTreeMap<String, Vec<String>> = parse(path, &read(path)?)?;
    let mut out = BTreeMap::new();
    for (label, v) in &doc {
        let g = element(ring.group(), label, &format!("{}: {label}", path.display()))?;
        out.insert(g, vector_of(ring.algebra().field(), ring.dim(), v, label)?);
    }
    Ok(out)
}

fn prefix(path: &Path, e: LoadError) -> LoadError {
    match e {
        LoadError::Malformed(m) => LoadError::Malformed(format!("{}: {m}", path.display())),
        LoadError::Violation(m) => LoadError::Violation(format!("{}: {m}", path.display())),
        LoadError::Action(m) => LoadError::Action(format!("{}: {m}", path.display())),
        other => other,
    }
}

//! The JSON fixture format.
//!
//! ```json
//! {"kind": "parity_structure", "name": "globe-1", "schema_version": 1,
//!  "payload": {"elements": [{"dim": 0, "id": "e0-", "neg": [], "pos": []}, …]}}
//! ```
//!
//! Faces and cell columns are arrays of names, or of `[name, count]` pairs
//! when some count exceeds one. Morphism payloads hold their source and
//! target either inline (a structure fixture object) or as a family name
//! such as `"oriental-2"`. Keys are written in sorted order.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cells::{AtomExpression, CellError, CellTable};
use crate::families::{FamilyError, FamilySpec};
use crate::morphism::{GradedMorphism, MorphismError};
use crate::multiset::{GeneratorId, Multiset, MultisetError};
use crate::structure::{AdditiveParityStructure, ParityStructure, StructureBuilder, StructureError};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("unsupported schema version {0}")]
    SchemaVersion(u64),
    #[error("malformed fixture: {0}")]
    Malformed(String),
    #[error("expected a {expected} fixture, found {found}")]
    WrongKind {
        expected: &'static str,
        found: &'static str,
    },
    #[error("name {0:?} is ambiguous: it occurs in several dimensions")]
    Ambiguous(String),
    #[error("no generator named {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Multiset(#[from] MultisetError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

impl From<serde_json::Error> for FixtureError {
    fn from(e: serde_json::Error) -> Self {
        FixtureError::Json(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureKind {
    ParityStructure,
    AdditiveParityStructure,
    Cell,
    Morphism,
}

impl FixtureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FixtureKind::ParityStructure => "parity_structure",
            FixtureKind::AdditiveParityStructure => "additive_parity_structure",
            FixtureKind::Cell => "cell",
            FixtureKind::Morphism => "morphism",
        }
    }

    fn parse(s: &str) -> Result<Self, FixtureError> {
        Ok(match s {
            "parity_structure" => FixtureKind::ParityStructure,
            "additive_parity_structure" => FixtureKind::AdditiveParityStructure,
            "cell" => FixtureKind::Cell,
            "morphism" => FixtureKind::Morphism,
            other => return Err(FixtureError::Malformed(format!("unknown kind {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Structure(AdditiveParityStructure),
    Cell(CellTable),
    Morphism(GradedMorphism),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub kind: FixtureKind,
    pub payload: Payload,
}

/// A face or column entry: a bare name or a `[name, count]` pair.
#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Name(String),
    Counted(String, u64),
}

impl Entry {
    fn into_pair(self) -> (String, u64) {
        match self {
            Entry::Name(n) => (n, 1),
            Entry::Counted(n, c) => (n, c),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawElement {
    id: String,
    dim: usize,
    #[serde(default)]
    neg: Vec<Entry>,
    #[serde(default)]
    pos: Vec<Entry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStructure {
    elements: Vec<RawElement>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCell {
    dim: usize,
    neg: Vec<Vec<Entry>>,
    pos: Vec<Vec<Entry>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMorphism {
    source: Value,
    target: Value,
    assignment: BTreeMap<String, BTreeMap<String, Vec<Entry>>>,
}

fn entries_value(m: &Multiset) -> Value {
    if m.is_radical() {
        Value::Array(m.support().map(|g| Value::from(g.name())).collect())
    } else {
        Value::Array(m.iter().map(|(g, c)| json!([g.name(), c])).collect())
    }
}

fn column(dim: usize, entries: Vec<Entry>) -> Result<Multiset, FixtureError> {
    let pairs = entries
        .into_iter()
        .map(|e| {
            let (n, c) = e.into_pair();
            Ok((GeneratorId::new(n, dim)?, c))
        })
        .collect::<Result<Vec<_>, FixtureError>>()?;
    Ok(Multiset::from_counts(dim, pairs)?)
}

pub fn structure_to_value(b: &AdditiveParityStructure) -> Value {
    let elements: Vec<Value> = b
        .iter()
        .map(|g| {
            let (neg, pos) = match b.faces(g) {
                Some(f) => (entries_value(&f.neg), entries_value(&f.pos)),
                None => (json!([]), json!([])),
            };
            json!({"id": g.name(), "dim": g.dim(), "neg": neg, "pos": pos})
        })
        .collect();
    json!({ "elements": elements })
}

pub fn structure_from_value(v: Value) -> Result<AdditiveParityStructure, FixtureError> {
    let raw: RawStructure = serde_json::from_value(v)?;
    let mut builder = StructureBuilder::new();
    for e in raw.elements {
        builder.push(
            e.id,
            e.dim,
            e.neg.into_iter().map(Entry::into_pair).collect(),
            e.pos.into_iter().map(Entry::into_pair).collect(),
        );
    }
    Ok(builder.build()?)
}

pub fn cell_to_value(t: &CellTable) -> Value {
    json!({
        "dim": t.dim(),
        "neg": t.neg().iter().map(entries_value).collect::<Vec<_>>(),
        "pos": t.pos().iter().map(entries_value).collect::<Vec<_>>(),
    })
}

pub fn cell_from_value(v: Value) -> Result<CellTable, FixtureError> {
    let raw: RawCell = serde_json::from_value(v)?;
    if raw.neg.len() != raw.dim + 1 || raw.pos.len() != raw.dim + 1 {
        return Err(FixtureError::Malformed(format!(
            "a {}-cell needs {} columns per row",
            raw.dim,
            raw.dim + 1
        )));
    }
    let row = |r: Vec<Vec<Entry>>| -> Result<Vec<Multiset>, FixtureError> {
        r.into_iter()
            .enumerate()
            .map(|(k, entries)| column(k, entries))
            .collect()
    };
    Ok(CellTable::new(row(raw.neg)?, row(raw.pos)?)?)
}

fn endpoint_to_value(b: &AdditiveParityStructure) -> Value {
    let kind = if b.has_subset_faces() {
        FixtureKind::ParityStructure
    } else {
        FixtureKind::AdditiveParityStructure
    };
    envelope("", kind, structure_to_value(b))
}

fn endpoint_from_value(v: Value) -> Result<AdditiveParityStructure, FixtureError> {
    match v {
        Value::String(s) => Ok(s.parse::<FamilySpec>()?.build().into_additive()),
        other => match Fixture::from_value(other)?.payload {
            Payload::Structure(b) => Ok(b),
            _ => Err(FixtureError::Malformed("morphism endpoint is not a structure".into())),
        },
    }
}

pub fn morphism_to_value(f: &GradedMorphism) -> Value {
    let mut assignment: BTreeMap<String, BTreeMap<String, Value>> = BTreeMap::new();
    for (g, m) in f.assignment() {
        assignment
            .entry(g.dim().to_string())
            .or_default()
            .insert(g.name().to_string(), entries_value(m));
    }
    json!({
        "source": endpoint_to_value(f.source()),
        "target": endpoint_to_value(f.target()),
        "assignment": assignment,
    })
}

pub fn morphism_from_value(v: Value) -> Result<GradedMorphism, FixtureError> {
    let raw: RawMorphism = serde_json::from_value(v)?;
    let source = Arc::new(endpoint_from_value(raw.source)?);
    let target = Arc::new(endpoint_from_value(raw.target)?);
    let mut builder = GradedMorphism::builder(source, target);
    for (dim, images) in raw.assignment {
        let dim: usize = dim
            .parse()
            .map_err(|_| FixtureError::Malformed(format!("assignment key {dim:?} is not a dimension")))?;
        for (name, entries) in images {
            builder.push(name, dim, entries.into_iter().map(Entry::into_pair).collect());
        }
    }
    Ok(builder.build()?)
}

/// Resolves a generator by name alone; fails if the name occurs in more than
/// one dimension.
pub fn resolve_name<'a>(b: &'a AdditiveParityStructure, name: &str) -> Result<&'a GeneratorId, FixtureError> {
    match b.find_by_name(name).as_slice() {
        [] => Err(FixtureError::UnknownName(name.to_string())),
        [g] => Ok(g),
        _ => Err(FixtureError::Ambiguous(name.to_string())),
    }
}

pub fn expression_to_value(e: &AtomExpression) -> Value {
    match e {
        AtomExpression::Atom(x) => json!(["atom", x.name()]),
        AtomExpression::Identity(inner) => json!(["id", expression_to_value(inner)]),
        AtomExpression::Compose { k, left, right } => {
            json!(["compose", k, expression_to_value(left), expression_to_value(right)])
        }
    }
}

pub fn expression_from_value(v: &Value, b: &AdditiveParityStructure) -> Result<AtomExpression, FixtureError> {
    let bad = || FixtureError::Malformed(format!("not an atom expression: {v}"));
    let items = v.as_array().ok_or_else(bad)?;
    match (items.first().and_then(Value::as_str), items.len()) {
        (Some("atom"), 2) => {
            let name = items[1].as_str().ok_or_else(bad)?;
            Ok(AtomExpression::atom(resolve_name(b, name)?.clone()))
        }
        (Some("id"), 2) => Ok(AtomExpression::identity(expression_from_value(&items[1], b)?)),
        (Some("compose"), 4) => {
            let k = items[1].as_u64().ok_or_else(bad)? as usize;
            Ok(AtomExpression::compose(
                k,
                expression_from_value(&items[2], b)?,
                expression_from_value(&items[3], b)?,
            ))
        }
        _ => Err(bad()),
    }
}

fn envelope(name: &str, kind: FixtureKind, payload: Value) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "name": name,
        "kind": kind.as_str(),
        "payload": payload,
    })
}

impl Fixture {
    /// A structure fixture; the kind is `parity_structure` exactly when all
    /// faces are subsets.
    pub fn structure(name: impl Into<String>, b: AdditiveParityStructure) -> Self {
        let kind = if b.has_subset_faces() {
            FixtureKind::ParityStructure
        } else {
            FixtureKind::AdditiveParityStructure
        };
        Self {
            name: name.into(),
            kind,
            payload: Payload::Structure(b),
        }
    }

    pub fn cell(name: impl Into<String>, t: CellTable) -> Self {
        Self {
            name: name.into(),
            kind: FixtureKind::Cell,
            payload: Payload::Cell(t),
        }
    }

    pub fn morphism(name: impl Into<String>, f: GradedMorphism) -> Self {
        Self {
            name: name.into(),
            kind: FixtureKind::Morphism,
            payload: Payload::Morphism(f),
        }
    }

    pub fn to_value(&self) -> Value {
        let payload = match &self.payload {
            Payload::Structure(b) => structure_to_value(b),
            Payload::Cell(t) => cell_to_value(t),
            Payload::Morphism(f) => morphism_to_value(f),
        };
        envelope(&self.name, self.kind, payload)
    }

    pub fn from_value(v: Value) -> Result<Self, FixtureError> {
        let Value::Object(mut map) = v else {
            return Err(FixtureError::Malformed("fixture must be an object".into()));
        };
        let version = map
            .get("schema_version")
            .and_then(Value::as_u64)
            .ok_or_else(|| FixtureError::Malformed("missing schema_version".into()))?;
        if version != SCHEMA_VERSION {
            return Err(FixtureError::SchemaVersion(version));
        }
        let name = map.get("name").and_then(Value::as_str).unwrap_or_default().to_string();
        let kind = FixtureKind::parse(
            map.get("kind")
                .and_then(Value::as_str)
                .ok_or_else(|| FixtureError::Malformed("missing kind".into()))?,
        )?;
        let payload = map
            .remove("payload")
            .ok_or_else(|| FixtureError::Malformed("missing payload".into()))?;
        let payload = match kind {
            FixtureKind::ParityStructure => {
                let b = structure_from_value(payload)?;
                Payload::Structure(ParityStructure::try_from(b)?.into_additive())
            }
            FixtureKind::AdditiveParityStructure => Payload::Structure(structure_from_value(payload)?),
            FixtureKind::Cell => Payload::Cell(cell_from_value(payload)?),
            FixtureKind::Morphism => Payload::Morphism(morphism_from_value(payload)?),
        };
        Ok(Self { name, kind, payload })
    }

    pub fn parse(text: &str) -> Result<Self, FixtureError> {
        Self::from_value(serde_json::from_str(text)?)
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("JSON values serialize");
        s.push('\n');
        s
    }

    pub fn into_structure(self) -> Result<AdditiveParityStructure, FixtureError> {
        match self.payload {
            Payload::Structure(b) => Ok(b),
            _ => Err(FixtureError::WrongKind {
                expected: "structure",
                found: self.kind.as_str(),
            }),
        }
    }

    pub fn into_cell(self) -> Result<CellTable, FixtureError> {
        match self.payload {
            Payload::Cell(t) => Ok(t),
            _ => Err(FixtureError::WrongKind {
                expected: "cell",
                found: self.kind.as_str(),
            }),
        }
    }

    pub fn into_morphism(self) -> Result<GradedMorphism, FixtureError> {
        match self.payload {
            Payload::Morphism(f) => Ok(f),
            _ => Err(FixtureError::WrongKind {
                expected: "morphism",
                found: self.kind.as_str(),
            }),
        }
    }
}

//! Structured (JSON) records for evaluated values, one record per line.
//!
//! ```json
//! {"kind":"simple","members":[{"dimension":"d","tag":1},{"dimension":"e","tag":2}]}
//! {"kind":"set","members":[[{"dimension":"e","tag":2}],[...]]}
//! {"kind":"boolean","value":true}
//! {"kind":"dimset","members":["d","f"]}
//! ```
//!
//! Integer tags are JSON numbers and symbol tags are JSON strings. Members
//! appear in canonical order, so identical values render to identical bytes.
//! A bound statement adds a leading `"binding"` field. The JSON schema is
//! in `docs/structured-output.schema.json`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::context::{ContextSet, ContextValue, MicroContext, SimpleContext};
use crate::eval::Value;
use crate::tagset::{Ident, TagValue};

#[derive(Debug, Error)]
pub enum StructuredError {
    #[error("malformed record: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid record: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum JsonTag {
    Int(i64),
    Symbol(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Pair {
    dimension: String,
    tag: JsonTag,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Record {
    Boolean { value: bool },
    Simple { members: Vec<Pair> },
    Set { members: Vec<Vec<Pair>> },
    Dimset { members: Vec<String> },
}

#[derive(Debug, Serialize, Deserialize)]
struct Line {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    binding: Option<String>,
    #[serde(flatten)]
    record: Record,
}

fn pairs(c: &SimpleContext) -> Vec<Pair> {
    c.micros()
        .map(|m| Pair {
            dimension: m.dimension.to_string(),
            tag: match m.tag {
                TagValue::Int(n) => JsonTag::Int(n),
                TagValue::Symbol(s) => JsonTag::Symbol(s.to_string()),
            },
        })
        .collect()
}

fn record(v: &Value) -> Record {
    match v {
        Value::Boolean(b) => Record::Boolean { value: *b },
        Value::Context(ContextValue::Simple(c)) => Record::Simple { members: pairs(c) },
        Value::Context(ContextValue::Set(s)) => Record::Set {
            members: s.canonical_members().into_iter().map(pairs).collect(),
        },
        Value::DimSet(d) => Record::Dimset {
            members: d.iter().map(|n| n.to_string()).collect(),
        },
    }
}

fn to_line(line: &Line) -> String {
    serde_json::to_string(line).expect("records always serialize")
}

pub fn render_structured(v: &Value) -> String {
    to_line(&Line {
        binding: None,
        record: record(v),
    })
}

/// Like [`render_structured`], tagging the record with the name it was bound to.
pub fn render_binding(name: &Ident, v: &Value) -> String {
    to_line(&Line {
        binding: Some(name.to_string()),
        record: record(v),
    })
}

fn ident(s: String) -> Result<Ident, StructuredError> {
    Ident::new(s).map_err(|e| StructuredError::Invalid(e.to_string()))
}

fn simple_from(pairs: Vec<Pair>) -> Result<SimpleContext, StructuredError> {
    let micros = pairs
        .into_iter()
        .map(|p| {
            let tag = match p.tag {
                JsonTag::Int(n) => TagValue::Int(n),
                JsonTag::Symbol(s) => TagValue::Symbol(ident(s)?),
            };
            Ok(MicroContext::new(ident(p.dimension)?, tag))
        })
        .collect::<Result<Vec<_>, StructuredError>>()?;
    SimpleContext::from_micros(micros).map_err(|e| StructuredError::Invalid(e.to_string()))
}

/// Reads one record back. Returns the binding name, if any, and the value.
pub fn parse_structured(line: &str) -> Result<(Option<Ident>, Value), StructuredError> {
    let line: Line = serde_json::from_str(line)?;
    let binding = line.binding.map(ident).transpose()?;
    let value = match line.record {
        Record::Boolean { value } => Value::Boolean(value),
        Record::Simple { members } => Value::Context(simple_from(members)?.into()),
        Record::Set { members } => Value::Context(
            members
                .into_iter()
                .map(simple_from)
                .collect::<Result<ContextSet, _>>()?
                .into(),
        ),
        Record::Dimset { members } => {
            Value::DimSet(members.into_iter().map(ident).collect::<Result<_, _>>()?)
        }
    };
    Ok((binding, value))
}

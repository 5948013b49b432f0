//! Reading and sniffing JSON documents.
//!
//! Every subcommand takes one JSON document. The top-level keys decide what it
//! is, and the document is then decoded straight from the text so decoding
//! errors keep their line and column.

use affine_atlas::dev_chart::{ChartComplex, DevPath};
use affine_atlas::fixtures::Example;
use affine_atlas::flows::Ball;
use affine_atlas::line_groups::BlockForm;
use affine_atlas::tiling::TilingJob;
use affine_atlas::{AffineMap, GroupPresentation};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::CliError;

/// A chart complex together with a path through it.
#[derive(Debug, Clone, Deserialize)]
pub struct DevJob {
    pub complex: ChartComplex,
    pub path: DevPath,
}

/// A ball and a batch of query points.
#[derive(Debug, Clone, Deserialize)]
pub struct SaturateJob {
    pub ball: Ball,
    pub points: Vec<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub enum Document {
    Map(AffineMap),
    Block(BlockForm),
    Group(GroupPresentation),
    Example(Example),
    Tiling(TilingJob),
    Dev(DevJob),
    Saturate(SaturateJob),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Map(_) => "affine map",
            Document::Block(_) => "block form",
            Document::Group(_) => "group presentation",
            Document::Example(_) => "example",
            Document::Tiling(_) => "tiling job",
            Document::Dev(_) => "chart complex and path",
            Document::Saturate(_) => "ball and query points",
        }
    }

    /// The generators carried by a presentation or example.
    pub fn group(&self) -> Option<&GroupPresentation> {
        match self {
            Document::Group(g) => Some(g),
            Document::Example(e) => Some(&e.presentation),
            Document::Tiling(t) => Some(&t.group),
            _ => None,
        }
    }
}

fn decode<T: DeserializeOwned>(text: &str, source: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::json(source, &e))
}

pub fn parse(text: &str, source: &str) -> Result<Document, CliError> {
    let value: Value = decode(text, source)?;
    let Value::Object(obj) = &value else {
        return Err(CliError::Invalid(format!(
            "{source}: expected a JSON object, found {}",
            type_name(&value)
        )));
    };
    let has = |k: &str| obj.contains_key(k);
    let doc = if has("linear") {
        Document::Map(decode(text, source)?)
    } else if has("r") && has("A") {
        Document::Block(decode(text, source)?)
    } else if has("polygon") {
        Document::Tiling(decode(text, source)?)
    } else if has("presentation") {
        Document::Example(decode(text, source)?)
    } else if has("generators") {
        Document::Group(decode(text, source)?)
    } else if has("complex") {
        Document::Dev(decode(text, source)?)
    } else if has("ball") {
        Document::Saturate(decode(text, source)?)
    } else {
        let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        return Err(CliError::Invalid(format!(
            "{source}: unrecognised document with keys {keys:?}"
        )));
    };
    Ok(doc)
}

fn type_name(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

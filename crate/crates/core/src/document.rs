//! JSON documents for bodies.
//!
//! ```json
//! {
//!   "model": "klein",
//!   "dim": 2,
//!   "vertices": [[0.5, 0.0], [0.0, 0.5], [-0.5, -0.5]],
//!   "metadata": { "shape": "triangle" }
//! }
//! ```
//!
//! Coordinates have `dim` entries in the ball models and `dim + 1` in the
//! hyperboloid model, time last. Bodies are always written in Klein
//! coordinates.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::body::Body;
use crate::error::GeomError;
use crate::hyperboloid::{HPoint, Model};
use crate::vector::{Vector, MAX_DIM, MIN_DIM};

/// Tolerance on `B(x, x) = 1` for hyperboloid rows.
pub const LOAD_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BodyDocument {
    pub model: Model,
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
    #[serde(default)]
    pub metadata: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{}: {message}", Loc(*line))]
    Invalid { line: Option<usize>, message: String },
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

struct Loc(Option<usize>);

impl fmt::Display for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(l) => write!(f, "line {l}"),
            None => f.write_str("document"),
        }
    }
}

fn invalid(line: Option<usize>, message: impl Into<String>) -> DocumentError {
    DocumentError::Invalid {
        line,
        message: message.into(),
    }
}

impl From<serde_json::Error> for DocumentError {
    fn from(e: serde_json::Error) -> Self {
        DocumentError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

/// Line numbers (1-based) on which the items of the array under `key`
/// start. The first occurrence of the quoted key is taken.
pub(crate) fn array_item_lines(text: &str, key: &str) -> Vec<usize> {
    let quoted = format!("\"{key}\"");
    let Some(at) = text.find(&quoted) else {
        return Vec::new();
    };
    let mut line = 1 + text[..at].matches('\n').count();
    let mut rows = Vec::new();
    let mut depth = 0usize;
    let mut in_str = false;
    let mut escaped = false;
    for ch in text[at + quoted.len()..].chars() {
        if ch == '\n' {
            line += 1;
        }
        if in_str {
            match (escaped, ch) {
                (true, _) => escaped = false,
                (false, '\\') => escaped = true,
                (false, '"') => in_str = false,
                _ => {}
            }
            continue;
        }
        match ch {
            '"' => in_str = true,
            '[' | '{' => {
                depth += 1;
                if depth == 2 {
                    rows.push(line);
                }
            }
            ']' | '}' => {
                depth = depth.saturating_sub(1);
                if depth == 0 {
                    break;
                }
            }
            _ => {}
        }
    }
    rows
}

impl BodyDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Checks the document invariants and converts the vertices to points.
    /// `lines` gives the line of each vertex row for diagnostics.
    pub fn points(&self, lines: &[usize]) -> Result<Vec<HPoint>, DocumentError> {
        let n = self.dim;
        if !(MIN_DIM..=MAX_DIM).contains(&n) {
            return Err(invalid(
                None,
                format!("unsupported dimension {n} (supported: {MIN_DIM}..={MAX_DIM})"),
            ));
        }
        if self.vertices.is_empty() {
            return Err(invalid(None, "a body needs at least one vertex"));
        }
        let arity = self.model.arity(n);
        let mut pts = Vec::with_capacity(self.vertices.len());
        for (i, row) in self.vertices.iter().enumerate() {
            let line = lines.get(i).copied();
            let here = |m: String| invalid(line, format!("vertex {i}: {m}"));
            if row.len() != arity {
                return Err(here(format!(
                    "expected {arity} coordinates for the {:?} model in H^{n}, found {}",
                    self.model,
                    row.len()
                )));
            }
            if row.iter().any(|x| !x.is_finite()) {
                return Err(here("non-finite coordinate".into()));
            }
            if self.model != Model::Hyperboloid {
                let r = row.iter().map(|x| x * x).sum::<f64>().sqrt();
                if r >= 1.0 {
                    return Err(here(format!(
                        "norm {r} is not below 1: ideal or outer points are not points of H^{n}"
                    )));
                }
            }
            let p = self.model.to_point(row, LOAD_TOL).map_err(|e| here(e.to_string()))?;
            pts.push(p);
        }
        Ok(pts)
    }

    /// The body spanned by the vertices. Klein documents keep their
    /// coordinates bit for bit.
    pub fn to_body(&self, lines: &[usize]) -> Result<Body, DocumentError> {
        let pts = self.points(lines)?;
        let body = if self.model == Model::Klein {
            let kv: Vec<Vector> = self.vertices.iter().map(|r| Vector::from_slice(r)).collect();
            Body::from_klein(&kv)?
        } else {
            Body::hull(&pts)?
        };
        Ok(body)
    }

    /// Klein document of a body.
    pub fn from_body(k: &Body, metadata: BTreeMap<String, serde_json::Value>) -> Self {
        BodyDocument {
            model: Model::Klein,
            dim: k.dim(),
            vertices: k.klein_vertices().iter().map(|v| v.to_vec()).collect(),
            metadata,
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain document");
        s.push('\n');
        s
    }
}

/// Parses a body document, reporting invariant violations with the line of
/// the offending vertex.
pub fn parse_body(text: &str) -> Result<(BodyDocument, Body), DocumentError> {
    let doc = BodyDocument::parse(text)?;
    let body = doc.to_body(&array_item_lines(text, "vertices"))?;
    Ok((doc, body))
}

pub fn load_body(path: &Path) -> Result<Body, DocumentError> {
    let text = read(path)?;
    Ok(parse_body(&text)?.1)
}

pub fn save_body(
    path: &Path,
    k: &Body,
    metadata: BTreeMap<String, serde_json::Value>,
) -> Result<(), DocumentError> {
    write(path, &BodyDocument::from_body(k, metadata).to_json_string())
}

pub(crate) fn read(path: &Path) -> Result<String, DocumentError> {
    std::fs::read_to_string(path).map_err(|e| DocumentError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub(crate) fn write(path: &Path, text: &str) -> Result<(), DocumentError> {
    std::fs::write(path, text).map_err(|e| DocumentError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

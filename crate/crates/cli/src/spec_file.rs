//! Line-oriented quiver spec files.
//!
//! ```text
//! # '#' starts a comment
//! vertex c dim=2 alpha=2
//! vertex e1 dim=1 alpha=-1
//! edge e1 -> c
//! ```
//!
//! Vertices must be declared before an edge names them. Weights are exact
//! rationals written `p` or `p/q`; decimal points are rejected.

use std::collections::HashMap;
use std::fmt::Write as _;

use quiverstab_core::{DimensionVector, Quiver, QuiverSetup, Rational, StabilityParameter};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("{0}")]
    Setup(String),
}

fn at(line: usize, message: impl Into<String>) -> SpecError {
    SpecError::Line {
        line,
        message: message.into(),
    }
}

fn valid_id(id: &str) -> bool {
    !id.is_empty()
        && id != "->"
        && !id.contains('=')
        && !id.contains('#')
        && !id.chars().any(char::is_whitespace)
}

/// Parses `p` or `p/q` with an optional leading minus sign.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let body = text.strip_prefix('-').unwrap_or(text);
    let well_formed = match body.split_once('/') {
        Some((p, q)) => digits(p) && digits(q),
        None => digits(body),
    };
    if !well_formed {
        return Err(format!("malformed rational `{text}` (expected p or p/q)"));
    }
    text.parse::<Rational>()
        .map_err(|_| format!("malformed rational `{text}` (zero denominator)"))
}

pub fn parse_quiver_file(text: &str) -> Result<QuiverSetup, SpecError> {
    let mut ids: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut dims = Vec::new();
    let mut alphas = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split_once('#').map_or(raw, |(c, _)| c);
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            ["vertex", id, rest @ ..] => {
                if !valid_id(id) {
                    return Err(at(line, format!("invalid vertex id `{id}`")));
                }
                if index.contains_key(*id) {
                    return Err(at(line, format!("duplicate vertex id `{id}`")));
                }
                let (mut dim, mut alpha) = (None, None);
                for field in rest {
                    match field.split_once('=') {
                        Some(("dim", value)) if dim.is_none() => {
                            dim = Some(value.parse::<usize>().map_err(|_| {
                                at(line, format!("dim must be a nonnegative integer, got `{value}`"))
                            })?);
                        }
                        Some(("alpha", value)) if alpha.is_none() => {
                            alpha = Some(parse_rational(value).map_err(|m| at(line, m))?);
                        }
                        Some((key @ ("dim" | "alpha"), _)) => {
                            return Err(at(line, format!("`{key}` given twice")));
                        }
                        _ => return Err(at(line, format!("unexpected field `{field}`"))),
                    }
                }
                let dim = dim.ok_or_else(|| at(line, format!("vertex `{id}` lacks dim=")))?;
                let alpha = alpha.ok_or_else(|| at(line, format!("vertex `{id}` lacks alpha=")))?;
                index.insert(id.to_string(), ids.len());
                ids.push(id.to_string());
                dims.push(dim);
                alphas.push(alpha);
            }
            ["vertex"] => return Err(at(line, "vertex needs an id")),
            ["edge", tail, "->", head] => {
                for id in [tail, head] {
                    if !index.contains_key(*id) {
                        return Err(at(line, format!("edge endpoint `{id}` is not a declared vertex")));
                    }
                }
                edges.push((tail.to_string(), head.to_string()));
            }
            ["edge", ..] => return Err(at(line, "expected `edge <tail> -> <head>`")),
            [directive, ..] => return Err(at(line, format!("unknown directive `{directive}`"))),
        }
    }
    if ids.is_empty() {
        return Err(SpecError::Setup("no vertices declared".into()));
    }
    let quiver = Quiver::new(ids, &edges).map_err(|e| SpecError::Setup(e.to_string()))?;
    QuiverSetup::new(
        quiver,
        DimensionVector::new(dims),
        StabilityParameter::new(alphas),
    )
    .map_err(|e| SpecError::Setup(e.to_string()))
}

pub fn serialize_quiver_file(setup: &QuiverSetup) -> String {
    let q = setup.quiver();
    let mut out = String::new();
    for (j, id) in q.vertices().iter().enumerate() {
        let _ = writeln!(
            out,
            "vertex {id} dim={} alpha={}",
            setup.dims().get(j),
            setup.alpha().get(j)
        );
    }
    for e in q.edges() {
        let _ = writeln!(out, "edge {} -> {}", q.vertex_id(e.tail), q.vertex_id(e.head));
    }
    out
}

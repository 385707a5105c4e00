//! Representation files.
//!
//! ```text
//! {
//!   "dims": {"c": 2, "e1": 1},
//!   "edges": [
//!     {"tail": "e1", "head": "c", "matrix": [[[0.5, -1.25]], [[0, 1]]]}
//!   ]
//! }
//! ```
//!
//! Matrices are row-major with shape `dim(head) × dim(tail)`, entries are
//! `[re, im]` pairs and edges appear in the spec file's order. Numbers are
//! written in shortest round-trip form, so serializing a parsed file
//! reproduces it byte for byte.

use std::fmt::Write as _;

use quiverstab_core::{CMatrix, QuiverSetup, Representation, C64};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("representation file: {0}")]
pub struct RepError(pub String);

fn err<T>(message: impl Into<String>) -> Result<T, RepError> {
    Err(RepError(message.into()))
}

pub fn parse_representation(text: &str, setup: &QuiverSetup) -> Result<Representation, RepError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| RepError(e.to_string()))?;
    let q = setup.quiver();
    let Some(obj) = doc.as_object() else {
        return err("expected a JSON object");
    };
    if let Some(key) = obj.keys().find(|k| *k != "dims" && *k != "edges") {
        return err(format!("unexpected key `{key}`"));
    }
    let Some(dims) = obj.get("dims").and_then(Value::as_object) else {
        return err("missing object `dims`");
    };
    if let Some(extra) = dims.keys().find(|k| q.vertex_index(k).is_none()) {
        return err(format!("dims names unknown vertex `{extra}`"));
    }
    for (j, id) in q.vertices().iter().enumerate() {
        let want = setup.dims().get(j);
        match dims.get(id).and_then(Value::as_u64) {
            Some(d) if d == want as u64 => {}
            Some(d) => return err(format!("dims[{id}] = {d} but the quiver spec has {want}")),
            None => return err(format!("dims lacks a nonnegative integer for `{id}`")),
        }
    }
    let Some(edges) = obj.get("edges").and_then(Value::as_array) else {
        return err("missing array `edges`");
    };
    if edges.len() != q.edges().len() {
        return err(format!(
            "{} edges given but the quiver has {}",
            edges.len(),
            q.edges().len()
        ));
    }
    let mut matrices = Vec::with_capacity(edges.len());
    for (i, (entry, e)) in edges.iter().zip(q.edges()).enumerate() {
        let (tail, head) = (q.vertex_id(e.tail), q.vertex_id(e.head));
        let field = |name: &str| entry.get(name).and_then(Value::as_str);
        if field("tail") != Some(tail) || field("head") != Some(head) {
            return err(format!("edge {i} must run {tail} -> {head}"));
        }
        let (rows, cols) = (setup.dims().get(e.head), setup.dims().get(e.tail));
        let shape_err = || RepError(format!("edge {i}: matrix must be {rows} x {cols} of [re, im] pairs"));
        let data = entry.get("matrix").and_then(Value::as_array).ok_or_else(shape_err)?;
        if data.len() != rows {
            return Err(shape_err());
        }
        let mut m = CMatrix::zeros(rows, cols);
        for (r, row) in data.iter().enumerate() {
            let row = row.as_array().filter(|row| row.len() == cols).ok_or_else(shape_err)?;
            for (c, z) in row.iter().enumerate() {
                let pair = z.as_array().filter(|p| p.len() == 2).ok_or_else(shape_err)?;
                let (Some(re), Some(im)) = (pair[0].as_f64(), pair[1].as_f64()) else {
                    return Err(shape_err());
                };
                m[(r, c)] = C64::new(re, im);
            }
        }
        matrices.push(m);
    }
    Representation::new(q, setup.dims().clone(), matrices).map_err(|e| RepError(e.to_string()))
}

fn number(x: f64) -> String {
    serde_json::Number::from_f64(x).map_or_else(|| "null".into(), |n| n.to_string())
}

fn string(s: &str) -> String {
    Value::from(s).to_string()
}

pub fn serialize_representation(setup: &QuiverSetup, rep: &Representation) -> String {
    let q = setup.quiver();
    let dims: Vec<String> = q
        .vertices()
        .iter()
        .enumerate()
        .map(|(j, id)| format!("{}: {}", string(id), rep.dims().get(j)))
        .collect();
    let mut out = format!("{{\n  \"dims\": {{{}}},\n  \"edges\": [", dims.join(", "));
    for (i, (e, m)) in q.edges().iter().zip(rep.matrices()).enumerate() {
        let rows: Vec<String> = (0..m.nrows())
            .map(|r| {
                let entries: Vec<String> = (0..m.ncols())
                    .map(|c| format!("[{}, {}]", number(m[(r, c)].re), number(m[(r, c)].im)))
                    .collect();
                format!("[{}]", entries.join(", "))
            })
            .collect();
        let _ = write!(
            out,
            "{}\n    {{\"tail\": {}, \"head\": {}, \"matrix\": [{}]}}",
            if i == 0 { "" } else { "," },
            string(q.vertex_id(e.tail)),
            string(q.vertex_id(e.head)),
            rows.join(", ")
        );
    }
    out.push_str(if q.edges().is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use quiverstab_core::numeric::plant_instance;
    use quiverstab_core::{gen_adhm, gen_polygon, rat};

    #[test]
    fn round_trip_is_byte_stable() {
        let s = gen_polygon(&[rat(1), rat(2), rat(2), rat(1)]).unwrap();
        let rep = plant_instance(&s, None, 9).unwrap();
        let text = serialize_representation(&s, &rep);
        let back = parse_representation(&text, &s).unwrap();
        assert_eq!(back, rep);
        assert_eq!(serialize_representation(&s, &back), text);
    }

    #[test]
    fn layout() {
        let s = gen_adhm(1, 1).unwrap();
        let rep = Representation::zero(s.quiver(), s.dims());
        let text = serialize_representation(&s, &rep);
        assert!(text.starts_with("{\n  \"dims\": {\"ck\": 1, \"c\": 1},\n  \"edges\": [\n    {\"tail\": \"ck\", \"head\": \"c\", \"matrix\": [[[0.0, 0.0]]]},"));
    }

    #[test]
    fn rejects_mismatches() {
        let s = gen_adhm(2, 1).unwrap();
        let good = serialize_representation(&s, &plant_instance(&s, None, 1).unwrap());
        let cases = [
            good.replacen("\"ck\": 2", "\"ck\": 3", 1),
            good.replacen("\"tail\": \"ck\"", "\"tail\": \"c\"", 1),
            good.replacen("[[[", "[[[1.0, 2.0], [", 1),
            good.replacen("\"dims\"", "\"sizes\"", 1),
            "[]".into(),
            "{".into(),
        ];
        for text in cases {
            assert!(parse_representation(&text, &s).is_err(), "{text}");
        }
    }

    #[test]
    fn integers_read_as_reals() {
        let s = gen_adhm(1, 1).unwrap();
        let text = r#"{"dims": {"c": 1, "ck": 1}, "edges": [
            {"tail": "ck", "head": "c", "matrix": [[[1, 0]]]},
            {"tail": "c", "head": "ck", "matrix": [[[0, -2]]]},
            {"tail": "ck", "head": "ck", "matrix": [[[0.5, 0]]]},
            {"tail": "ck", "head": "ck", "matrix": [[[0, 0]]]}]}"#;
        let rep = parse_representation(text, &s).unwrap();
        assert_eq!(rep.matrix(1)[(0, 0)], C64::new(0.0, -2.0));
    }
}

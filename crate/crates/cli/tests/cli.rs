use std::fs;
use std::path::{Path, PathBuf};

use proptest::prelude::*;
use quiverstab::{parse_quiver_file, run, serialize_quiver_file, CommandResult};
use quiverstab_core::slope::destabilizing_dimension_vectors;
use quiverstab_core::{DimensionVector, Quiver, QuiverSetup, Rational, StabilityParameter};
use serde_json::Value;
use tempfile::TempDir;

fn exec(args: &[&str]) -> CommandResult {
    run(std::iter::once("quiverstab").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> String {
    let r = exec(args);
    assert_eq!(r.exit_code, 0, "{args:?}: {}", r.text);
    r.rendered()
}

fn json(args: &[&str]) -> Value {
    let v: Value = serde_json::from_str(&ok(args)).expect("valid JSON");
    assert_eq!(v["schema_version"], 1);
    v
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn square(dir: &TempDir) -> PathBuf {
    let p = path(dir, "square.q");
    ok(&["gen", "polygon", "--sides", "1,1,1,1", "-o", s(&p)]);
    p
}

#[test]
fn dmin_on_adhm_2_1() {
    let dir = TempDir::new().unwrap();
    let p = path(&dir, "a.q");
    ok(&["gen", "adhm", "--k", "2", "--n", "1", "-o", s(&p)]);
    let out = ok(&["dmin", s(&p)]);
    assert!(out.contains("d_min = 4\n"));
    assert!(out.contains("witness: (0,1)\n"));
    assert!(out.contains("minimizers: (0,1) (1,0) (1,1) (2,0)\n"));

    let doc = json(&["dmin", s(&p), "--json"]);
    assert_eq!(doc["d_min"], 4);
    assert_eq!(doc["witness"], serde_json::json!([0, 1]));
    assert!(doc["minimizers"].as_array().unwrap().contains(&serde_json::json!([1, 1])));
    assert_eq!(doc["candidates"].as_array().unwrap().len(), 4);
}

#[test]
fn homotopy_on_square_is_connected_only() {
    let dir = TempDir::new().unwrap();
    let p = square(&dir);
    let out = ok(&["homotopy", s(&p), "--max-degree", "3"]);
    assert!(out.contains("n=0: connected\n"));
    for n in 1..=3 {
        assert!(out.contains(&format!("n={n}: no conclusion")));
    }
    let doc = json(&["homotopy", s(&p), "--max-degree", "3", "--json"]);
    let entries = doc["entries"].as_array().unwrap();
    assert_eq!(entries[0]["conclusion"], true);
    assert!(entries[1..].iter().all(|e| e["conclusion"] == false));
}

#[test]
fn planted_parallel_pair_is_strictly_semistable() {
    let dir = TempDir::new().unwrap();
    let p = square(&dir);
    let rep = path(&dir, "rep.json");
    ok(&["plant", s(&p), "--sub", "c=1", "e1=1", "e2=1", "--seed", "11", "-o", s(&rep)]);
    let out = ok(&["stability", s(&p), "--rep", s(&rep)]);
    assert!(out.contains("verdict: StrictlySemistable\n"), "{out}");
    assert!(out.contains("witness: (1,1,1,0,0)"));
    let doc = json(&["stability", s(&p), "--rep", s(&rep), "--json"]);
    assert_eq!(doc["verdict"], "StrictlySemistable");
    assert_eq!(doc["evidence"]["sub"], serde_json::json!([1, 1, 1, 0, 0]));
    assert!(doc["evidence"]["residual"].as_f64().unwrap() < 1e-8);
}

#[test]
fn outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let p = square(&dir);
    let (a, b) = (path(&dir, "a.json"), path(&dir, "b.json"));
    ok(&["plant", s(&p), "--seed", "5", "-o", s(&a)]);
    ok(&["plant", s(&p), "--seed", "5", "-o", s(&b)]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let args = ["stability", s(&p), "--rep", s(&a), "--seed", "3", "--json"];
    assert_eq!(ok(&args), ok(&args));
    let (ta, tb) = (path(&dir, "ta.csv"), path(&dir, "tb.csv"));
    let fa = ok(&["flow", s(&p), "--rep", s(&a), "--trace", s(&ta)]);
    let fb = ok(&["flow", s(&p), "--rep", s(&a), "--trace", s(&tb)]);
    assert_eq!(fa, fb);
    assert_eq!(fs::read(&ta).unwrap(), fs::read(&tb).unwrap());
}

#[test]
fn flow_trace_is_monotone() {
    let dir = TempDir::new().unwrap();
    let p = square(&dir);
    let rep = path(&dir, "g.json");
    let trace = path(&dir, "t.csv");
    let fin = path(&dir, "final.json");
    ok(&["plant", s(&p), "--seed", "2", "-o", s(&rep)]);
    let doc = json(&["flow", s(&p), "--rep", s(&rep), "--trace", s(&trace), "-o", s(&fin), "--json"]);
    assert_eq!(doc["converged"], true);
    assert!(doc["final_energy"].as_f64().unwrap() < 1e-10);

    let mut reader = csv::Reader::from_path(&trace).unwrap();
    assert_eq!(reader.headers().unwrap(), vec!["step", "time", "energy", "grad_norm"]);
    let energies: Vec<f64> = reader
        .records()
        .map(|r| r.unwrap()[2].parse().unwrap())
        .collect();
    assert_eq!(energies.len() as u64, doc["accepted_steps"].as_u64().unwrap() + 1);
    assert!(energies.windows(2).all(|w| w[1] <= w[0]));

    // the final representation is a valid input and already at the minimum
    let again = json(&["flow", s(&p), "--rep", s(&fin), "--json"]);
    assert_eq!(again["iterations"], 0);
}

#[test]
fn destab_count_matches_library() {
    let dir = TempDir::new().unwrap();
    let p = path(&dir, "pentagon.q");
    ok(&["gen", "polygon", "--sides", "1,2,3/2,1,1", "-o", s(&p)]);
    let setup = parse_quiver_file(&fs::read_to_string(&p).unwrap()).unwrap();
    let expected = destabilizing_dimension_vectors(&setup).unwrap().items.len();
    let doc = json(&["destab", s(&p), "--json"]);
    assert_eq!(doc["count"].as_u64().unwrap() as usize, expected);
    assert_eq!(doc["destabilizers"].as_array().unwrap().len(), expected);
    let text = ok(&["destab", s(&p)]);
    assert!(text.contains(&format!("destabilizing: {expected} of ")));
}

#[test]
fn json_matches_text() {
    let dir = TempDir::new().unwrap();
    let p = square(&dir);
    let text = ok(&["slope", s(&p), "--sub", "c=1", "e1=1", "e2=1"]);
    let doc = json(&["slope", s(&p), "--sub", "c=1", "e1=1", "e2=1", "--json"]);
    let sub = &doc["sub"];
    let line = format!(
        "sub (1,1,1,0,0): rank {}, degree {}, slope {}",
        sub["rank"],
        sub["degree"].as_str().unwrap(),
        sub["slope"].as_str().unwrap()
    );
    assert!(text.contains(&line), "{text}");
    assert!(text.contains(sub["status"].as_str().unwrap()));
    assert_eq!(sub["status"], "destabilizing (equal slope)");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let p = square(&dir);
    assert_eq!(exec(&[]).exit_code, 2);
    assert_eq!(exec(&["frobnicate"]).exit_code, 2);
    assert_eq!(exec(&["homotopy", s(&p)]).exit_code, 2);
    assert_eq!(exec(&["gen", "polygon", "--sides", "1,0.5,1"]).exit_code, 2);
    assert_eq!(exec(&["slope", s(&p), "--sub", "c"]).exit_code, 2);
    assert_eq!(exec(&["--help"]).exit_code, 0);

    assert_eq!(exec(&["dmin", s(&path(&dir, "missing.q"))]).exit_code, 1);
    assert_eq!(exec(&["gen", "polygon", "--sides", "1,1"]).exit_code, 1);
    assert_eq!(exec(&["slope", s(&p), "--sub", "zz=1"]).exit_code, 1);
    let bad = path(&dir, "bad.q");
    fs::write(&bad, "vertex a dim=2 alpha=1/2\nedge a -> b\n").unwrap();
    let r = exec(&["dmin", s(&bad)]);
    assert_eq!(r.exit_code, 1);
    assert!(r.text.contains("line 2"), "{}", r.text);
    let rep = path(&dir, "rep.json");
    fs::write(&rep, "{\"dims\": {}}").unwrap();
    assert_eq!(exec(&["stability", s(&p), "--rep", s(&rep)]).exit_code, 1);
}

fn arb_setup() -> impl Strategy<Value = QuiverSetup> {
    (1usize..5)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(0usize..4, n),
                prop::collection::vec((-20i64..20, 1i64..7), n),
                prop::collection::vec((0..n, 0..n), 0..8),
            )
        })
        .prop_map(|(n, dims, alphas, edges)| {
            let ids: Vec<String> = (0..n).map(|j| format!("v{j}")).collect();
            let named: Vec<(String, String)> =
                edges.iter().map(|&(t, h)| (ids[t].clone(), ids[h].clone())).collect();
            let quiver = Quiver::new(ids, &named).unwrap();
            let alpha = alphas
                .into_iter()
                .map(|(p, q)| Rational::new(p.into(), q.into()))
                .collect();
            QuiverSetup::new(quiver, DimensionVector::new(dims), StabilityParameter::new(alpha)).unwrap()
        })
}

proptest! {
    #[test]
    fn spec_file_round_trips(setup in arb_setup()) {
        let text = serialize_quiver_file(&setup);
        let back = parse_quiver_file(&text).unwrap();
        prop_assert_eq!(&back, &setup);
        prop_assert_eq!(serialize_quiver_file(&back), text);
    }
}

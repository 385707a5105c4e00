use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_traits::Signed;
use quiverstab_core::numeric::{
    endomorphism_dimension_with, flow, plant_instance, stability_verdict, FlowOptions, SearchOptions,
    VerdictOptions,
};
use quiverstab_core::slope::{destabilizing_dimension_vectors, normalize_alpha, slope_report};
use quiverstab_core::{
    d_min, gen_adhm, gen_polygon, hom_dims, homotopy_report, DimensionVector, Dmin, HomotopyEntry,
    QuiverSetup, Rational, Representation,
};
use serde_json::{json, Map, Value};

use crate::output::{dims, float, fmt_float, rational};
use crate::rep_json::{parse_representation, serialize_representation};
use crate::spec_file::{parse_quiver_file, parse_rational, serialize_quiver_file};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("error: {0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

/// Outcome of one invocation. On success `text` is the human-readable report
/// and `json` carries the same content when `--json` was given; on failure
/// `text` is the diagnostic.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub text: String,
    pub json: Option<Value>,
}

impl CommandResult {
    /// What belongs on stdout (success) or stderr (failure).
    pub fn rendered(&self) -> String {
        match &self.json {
            Some(doc) => {
                let mut s = serde_json::to_string_pretty(doc).expect("JSON values always serialize");
                s.push('\n');
                s
            }
            None => self.text.clone(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "quiverstab", version, about = "Stability, minimal dimensions and homotopy of quiver moduli")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the spec file of an example family
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Rank, degree and slope of the ambient and an optional sub-dimension vector
    Slope {
        file: PathBuf,
        /// Sub-dimension vector as vertex=k pairs; omitted vertices are 0
        #[arg(long, num_args = 1.., value_parser = parse_sub_pair)]
        sub: Vec<(String, usize)>,
        #[arg(long)]
        json: bool,
    },
    /// List destabilizing sub-dimension vectors with -2 chi
    Destab {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Minimal dimension d_min and its witness
    Dmin {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Homotopy groups of the stable moduli space up to a degree
    Homotopy {
        file: PathBuf,
        #[arg(long)]
        max_degree: u32,
        #[arg(long)]
        json: bool,
    },
    /// Numerical stability verdict for an explicit representation
    Stability {
        file: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 5000)]
        max_iters: usize,
        /// Residual acceptance threshold, relative to the squared norm
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Singular value cutoff for the endomorphism count, relative
        #[arg(long, default_value_t = 1e-8)]
        nullity_threshold: f64,
        #[arg(long)]
        json: bool,
    },
    /// Gradient flow of the moment map energy
    Flow {
        file: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        max_steps: usize,
        /// Stop once the gradient norm is below this
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Write step,time,energy,grad_norm rows here
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write the final representation here
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Seeded random representation, optionally with a planted subrepresentation
    Plant {
        file: PathBuf,
        #[arg(long, num_args = 1.., value_parser = parse_sub_pair)]
        sub: Vec<(String, usize)>,
        #[arg(long)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Doubled ADHM quiver with dimensions (k, 1)
    Adhm {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Star quiver of a polygon with the given side lengths
    Polygon {
        #[arg(long, value_delimiter = ',', required = true, value_parser = parse_rational)]
        sides: Vec<Rational>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

fn parse_sub_pair(s: &str) -> Result<(String, usize), String> {
    let (id, k) = s
        .split_once('=')
        .ok_or_else(|| format!("expected vertex=k, got `{s}`"))?;
    let k = k
        .parse()
        .map_err(|_| format!("`{k}` is not a nonnegative integer"))?;
    Ok((id.to_string(), k))
}

/// Runs one command line. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return CommandResult {
                exit_code: code,
                text: e.render().to_string(),
                json: None,
            };
        }
    };
    match dispatch(cli.command) {
        Ok((text, json)) => CommandResult {
            exit_code: 0,
            text,
            json,
        },
        Err(e) => CommandResult {
            exit_code: e.exit_code(),
            text: format!("{e}\n"),
            json: None,
        },
    }
}

type Output = (String, Option<Value>);

fn dispatch(command: Command) -> Result<Output, CliError> {
    match command {
        Command::Gen { family } => gen(family),
        Command::Slope { file, sub, json } => with_json(slope(&load(&file)?, &sub), json),
        Command::Destab { file, json } => with_json(destab(&load(&file)?), json),
        Command::Dmin { file, json } => with_json(dmin(&load(&file)?), json),
        Command::Homotopy {
            file,
            max_degree,
            json,
        } => with_json(homotopy(&load(&file)?, max_degree), json),
        Command::Stability {
            file,
            rep,
            restarts,
            max_iters,
            tol,
            seed,
            nullity_threshold,
            json,
        } => {
            positive("--tol", tol)?;
            positive("--nullity-threshold", nullity_threshold)?;
            let setup = load(&file)?;
            let rep = load_rep(&rep, &setup)?;
            let search = SearchOptions {
                restarts,
                max_iters,
                tol,
                seed,
                ..SearchOptions::default()
            };
            with_json(stability(&setup, &rep, search, nullity_threshold), json)
        }
        Command::Flow {
            file,
            rep,
            max_steps,
            tol,
            trace,
            output,
            json,
        } => {
            positive("--tol", tol)?;
            let setup = load(&file)?;
            let rep = load_rep(&rep, &setup)?;
            let opts = FlowOptions {
                max_steps,
                tol,
                ..FlowOptions::default()
            };
            with_json(
                run_flow(&setup, &rep, opts, trace.as_deref(), output.as_deref()),
                json,
            )
        }
        Command::Plant {
            file,
            sub,
            seed,
            output,
        } => {
            let setup = load(&file)?;
            let sub = if sub.is_empty() {
                None
            } else {
                Some(setup.sub_vector(&sub).map_err(domain)?)
            };
            let rep = plant_instance(&setup, sub.as_ref(), seed).map_err(domain)?;
            emit(serialize_representation(&setup, &rep), output.as_deref())
        }
    }
}

fn positive(flag: &str, x: f64) -> Result<(), CliError> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("error: {flag} must be a positive number, got {x}\n")))
    }
}

fn with_json(report: Result<(String, Value), CliError>, json: bool) -> Result<Output, CliError> {
    let (text, mut doc) = report?;
    if !json {
        return Ok((text, None));
    }
    if let Value::Object(map) = &mut doc {
        map.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
    }
    Ok((text, Some(doc)))
}

fn load(path: &Path) -> Result<QuiverSetup, CliError> {
    let text = fs::read_to_string(path).map_err(|e| domain(format!("{}: {e}", path.display())))?;
    parse_quiver_file(&text).map_err(|e| domain(format!("{}: {e}", path.display())))
}

fn load_rep(path: &Path, setup: &QuiverSetup) -> Result<Representation, CliError> {
    let text = fs::read_to_string(path).map_err(|e| domain(format!("{}: {e}", path.display())))?;
    parse_representation(&text, setup).map_err(|e| domain(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| domain(format!("{}: {e}", path.display())))
}

/// Writes `contents` to `path`, or returns it as the text output.
fn emit(contents: String, path: Option<&Path>) -> Result<Output, CliError> {
    match path {
        Some(p) => {
            write_file(p, &contents)?;
            Ok((format!("wrote {}\n", p.display()), None))
        }
        None => Ok((contents, None)),
    }
}

fn gen(family: Family) -> Result<Output, CliError> {
    let (setup, output) = match family {
        Family::Adhm { k, n, output } => (gen_adhm(k, n), output),
        Family::Polygon { sides, output } => (gen_polygon(&sides), output),
    };
    let setup = setup.map_err(domain)?;
    emit(serialize_quiver_file(&setup), output.as_deref())
}

fn tuple(v: &DimensionVector) -> String {
    v.to_string()
}

fn header(setup: &QuiverSetup, text: &mut String, doc: &mut Map<String, Value>) {
    let _ = writeln!(text, "vertices: {}", setup.quiver().vertices().join(" "));
    let _ = writeln!(text, "dims: {}", tuple(setup.dims()));
    doc.insert("vertices".into(), Value::from(setup.quiver().vertices().to_vec()));
    doc.insert("dims".into(), dims(setup.dims()));
}

fn slope(setup: &QuiverSetup, sub: &[(String, usize)]) -> Result<(String, Value), CliError> {
    let mut text = String::new();
    let mut doc = Map::new();
    header(setup, &mut text, &mut doc);
    let alpha: Vec<String> = setup.alpha().as_slice().iter().map(ToString::to_string).collect();
    let _ = writeln!(text, "alpha: ({})", alpha.join(","));
    doc.insert("alpha".into(), Value::from(alpha));
    for w in setup.validate().warnings() {
        let _ = writeln!(text, "warning: {w}");
    }
    let norm = normalize_alpha(setup).map_err(domain)?;
    let ambient = slope_report(setup.dims(), setup.alpha()).map_err(domain)?;
    let _ = writeln!(
        text,
        "ambient: rank {}, degree {}, slope {}",
        ambient.rank, ambient.degree, ambient.slope
    );
    let _ = writeln!(text, "normalization shift: {}", norm.shift);
    doc.insert(
        "ambient".into(),
        json!({"rank": ambient.rank, "degree": rational(&ambient.degree), "slope": rational(&ambient.slope)}),
    );
    doc.insert("shift".into(), rational(&norm.shift));
    if sub.is_empty() {
        doc.insert("sub".into(), Value::Null);
        return Ok((text, Value::Object(doc)));
    }
    let v = setup.sub_vector(sub).map_err(domain)?;
    let raw = slope_report(&v, setup.alpha()).map_err(domain)?;
    let normalized = slope_report(&v, &norm.alpha).map_err(domain)?;
    let status = if normalized.slope.is_positive() {
        "strictly destabilizing"
    } else if normalized.slope.is_negative() {
        "not destabilizing"
    } else {
        "destabilizing (equal slope)"
    };
    let _ = writeln!(
        text,
        "sub {}: rank {}, degree {}, slope {}",
        tuple(&v),
        raw.rank,
        raw.degree,
        raw.slope
    );
    let _ = writeln!(
        text,
        "normalized: degree {}, slope {}: {status}",
        normalized.degree, normalized.slope
    );
    doc.insert(
        "sub".into(),
        json!({
            "dims": dims(&v),
            "rank": raw.rank,
            "degree": rational(&raw.degree),
            "slope": rational(&raw.slope),
            "normalized_degree": rational(&normalized.degree),
            "normalized_slope": rational(&normalized.slope),
            "status": status,
        }),
    );
    Ok((text, Value::Object(doc)))
}

fn destab(setup: &QuiverSetup) -> Result<(String, Value), CliError> {
    let mut text = String::new();
    let mut doc = Map::new();
    header(setup, &mut text, &mut doc);
    let list = destabilizing_dimension_vectors(setup).map_err(domain)?;
    let _ = writeln!(
        text,
        "destabilizing: {} of {} candidates",
        list.items.len(),
        list.candidates_examined
    );
    let mut items = Vec::with_capacity(list.items.len());
    for d in &list.items {
        let hom = hom_dims(setup.quiver(), setup.dims(), &d.sub).map_err(domain)?;
        let value = hom.codimension_excess();
        let _ = writeln!(
            text,
            "{}  slope {}  -2chi {}{}",
            tuple(&d.sub),
            d.report.slope,
            value,
            if d.is_strict() { "  strict" } else { "" }
        );
        items.push(json!({
            "sub": dims(&d.sub),
            "slope": rational(&d.report.slope),
            "strict": d.is_strict(),
            "minus_two_chi": value,
        }));
    }
    doc.insert("candidates_examined".into(), Value::from(list.candidates_examined as u64));
    doc.insert("count".into(), Value::from(items.len()));
    doc.insert("destabilizers".into(), Value::from(items));
    Ok((text, Value::Object(doc)))
}

fn dmin_value(d: Dmin) -> Value {
    match d {
        Dmin::Finite(x) => Value::from(x),
        Dmin::Infinite => Value::from("inf"),
    }
}

fn dmin(setup: &QuiverSetup) -> Result<(String, Value), CliError> {
    let mut text = String::new();
    let mut doc = Map::new();
    header(setup, &mut text, &mut doc);
    let report = d_min(setup).map_err(domain)?;
    let _ = writeln!(text, "d_min = {}", report.d_min);
    let witness = report.witness.as_ref().map_or_else(|| "none".into(), tuple);
    let _ = writeln!(text, "witness: {witness}");
    let minimizers: Vec<&DimensionVector> = report.minimizers().collect();
    let shown: Vec<String> = minimizers.iter().map(|v| tuple(v)).collect();
    let _ = writeln!(text, "minimizers: {}", if shown.is_empty() { "none".into() } else { shown.join(" ") });
    let _ = writeln!(text, "candidates: {}", report.per_candidate.len());
    let mut candidates = Vec::new();
    for c in &report.per_candidate {
        let _ = writeln!(
            text,
            "{}  slope {}  hom0 {}  hom1 {}  -2chi {}",
            tuple(&c.sub),
            c.slope,
            c.hom.hom0_complex,
            c.hom.hom1_complex,
            c.value()
        );
        candidates.push(json!({
            "sub": dims(&c.sub),
            "slope": rational(&c.slope),
            "hom0_complex": c.hom.hom0_complex,
            "hom1_complex": c.hom.hom1_complex,
            "minus_two_chi": c.value(),
        }));
    }
    doc.insert("d_min".into(), dmin_value(report.d_min));
    doc.insert("witness".into(), report.witness.as_ref().map_or(Value::Null, dims));
    doc.insert(
        "minimizers".into(),
        Value::from(minimizers.into_iter().map(dims).collect::<Vec<_>>()),
    );
    doc.insert("candidates".into(), Value::from(candidates));
    doc.insert("shift".into(), rational(&report.normalization.shift));
    Ok((text, Value::Object(doc)))
}

fn homotopy(setup: &QuiverSetup, max_degree: u32) -> Result<(String, Value), CliError> {
    let mut text = String::new();
    let mut doc = Map::new();
    header(setup, &mut text, &mut doc);
    let report = homotopy_report(setup, max_degree).map_err(domain)?;
    let _ = writeln!(text, "d_min = {}", report.d_min);
    let mut entries = Vec::new();
    for e in &report.entries {
        match e {
            HomotopyEntry::Conclusion { degree: 0, moduli } if moduli.is_trivial() => {
                let _ = writeln!(text, "n=0: connected");
                entries.push(json!({"degree": 0, "conclusion": true, "group": moduli.to_string()}));
            }
            HomotopyEntry::Conclusion { degree, moduli } => {
                let _ = writeln!(text, "n={degree}: pi_{degree}(M^st) = {moduli}");
                entries.push(json!({"degree": degree, "conclusion": true, "group": moduli.to_string()}));
            }
            HomotopyEntry::NoConclusion { degree } => {
                let _ = writeln!(text, "n={degree}: no conclusion (needs n+1 < d_min)");
                entries.push(json!({"degree": degree, "conclusion": false, "group": Value::Null}));
            }
        }
    }
    for note in &report.notes {
        let _ = writeln!(text, "note: {note}");
    }
    doc.insert("d_min".into(), dmin_value(report.d_min));
    doc.insert("entries".into(), Value::from(entries));
    doc.insert("notes".into(), Value::from(report.notes.clone()));
    Ok((text, Value::Object(doc)))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn stability(
    setup: &QuiverSetup,
    rep: &Representation,
    search: SearchOptions,
    nullity_threshold: f64,
) -> Result<(String, Value), CliError> {
    let mut text = String::new();
    let mut doc = Map::new();
    header(setup, &mut text, &mut doc);
    let opts = VerdictOptions {
        search,
        ..VerdictOptions::default()
    };
    let v = stability_verdict(setup, rep, &opts).map_err(domain)?;
    let endo = endomorphism_dimension_with(setup.quiver(), rep, nullity_threshold);
    let _ = writeln!(text, "verdict: {}", v.verdict.as_str());
    let _ = writeln!(
        text,
        "flow energy: {} (converged: {})",
        fmt_float(v.flow_energy),
        yes_no(v.flow_converged)
    );
    let _ = writeln!(text, "endomorphism dimension: {endo}");
    let evidence = match &v.evidence {
        Some(ev) => {
            let ranks: Vec<Value> = ev.projections.ranks().into_iter().map(float).collect();
            let _ = writeln!(
                text,
                "witness: {}  slope {}  residual {}",
                tuple(&ev.sub),
                ev.slope,
                fmt_float(ev.residual)
            );
            json!({"sub": dims(&ev.sub), "slope": rational(&ev.slope), "residual": float(ev.residual), "projection_ranks": ranks})
        }
        None => {
            let _ = writeln!(text, "witness: none");
            Value::Null
        }
    };
    let _ = writeln!(text, "searches: {}", v.searches.len());
    let mut searches = Vec::new();
    for s in &v.searches {
        let _ = writeln!(
            text,
            "{}  strict {}  found {}  exhausted {}  best residual {}",
            tuple(&s.sub),
            yes_no(s.strict),
            yes_no(s.found),
            yes_no(s.exhausted),
            fmt_float(s.best_residual)
        );
        searches.push(json!({
            "sub": dims(&s.sub),
            "strict": s.strict,
            "found": s.found,
            "exhausted": s.exhausted,
            "best_residual": float(s.best_residual),
        }));
    }
    doc.insert("verdict".into(), Value::from(v.verdict.as_str()));
    doc.insert("flow_energy".into(), float(v.flow_energy));
    doc.insert("flow_converged".into(), Value::from(v.flow_converged));
    doc.insert("endomorphism_dimension".into(), Value::from(endo));
    doc.insert("evidence".into(), evidence);
    doc.insert("searches".into(), Value::from(searches));
    doc.insert(
        "options".into(),
        json!({
            "restarts": search.restarts,
            "max_iters": search.max_iters,
            "tol": float(search.tol),
            "seed": search.seed,
            "nullity_threshold": float(nullity_threshold),
        }),
    );
    Ok((text, Value::Object(doc)))
}

fn run_flow(
    setup: &QuiverSetup,
    rep: &Representation,
    opts: FlowOptions,
    trace: Option<&Path>,
    output: Option<&Path>,
) -> Result<(String, Value), CliError> {
    let mut text = String::new();
    let mut doc = Map::new();
    header(setup, &mut text, &mut doc);
    let norm = normalize_alpha(setup).map_err(domain)?;
    let result = flow(setup.quiver(), rep, &norm.alpha, &opts).map_err(domain)?;
    let last = result.energy_trace.last().copied().expect("the trace holds the start point");
    if let Some(path) = trace {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| domain(format!("{}: {e}", path.display()));
        w.write_record(["step", "time", "energy", "grad_norm"]).map_err(csv_err)?;
        for s in &result.energy_trace {
            w.write_record([
                s.step.to_string(),
                s.time.to_string(),
                s.energy.to_string(),
                s.grad_norm.to_string(),
            ])
            .map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| domain(e.to_string()))?;
        fs::write(path, bytes).map_err(|e| domain(format!("{}: {e}", path.display())))?;
    }
    if let Some(path) = output {
        write_file(path, &serialize_representation(setup, &result.final_rep))?;
    }
    let _ = writeln!(text, "normalization shift: {}", norm.shift);
    let _ = writeln!(text, "converged: {}", yes_no(result.converged));
    let _ = writeln!(text, "iterations: {}", result.iterations);
    let _ = writeln!(text, "accepted steps: {}", result.energy_trace.len() - 1);
    let _ = writeln!(text, "time: {}", fmt_float(last.time));
    let _ = writeln!(text, "initial energy: {}", fmt_float(result.energy_trace[0].energy));
    let _ = writeln!(text, "final energy: {}", fmt_float(last.energy));
    let _ = writeln!(text, "final gradient norm: {}", fmt_float(last.grad_norm));
    doc.insert("shift".into(), rational(&norm.shift));
    doc.insert("converged".into(), Value::from(result.converged));
    doc.insert("iterations".into(), Value::from(result.iterations));
    doc.insert("accepted_steps".into(), Value::from(result.energy_trace.len() - 1));
    doc.insert("time".into(), float(last.time));
    doc.insert("initial_energy".into(), float(result.energy_trace[0].energy));
    doc.insert("final_energy".into(), float(last.energy));
    doc.insert("final_grad_norm".into(), float(last.grad_norm));
    Ok((text, Value::Object(doc)))
}

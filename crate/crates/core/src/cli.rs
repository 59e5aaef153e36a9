//! Batch front end: one command per invocation, JSON or CSV report out.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Error;
use crate::io::{IfsInput, PolytopeInput};
use crate::metrics;
use crate::neighbourhood;
use crate::oracle;
use crate::polytope::{validate_body, Body};
use crate::projective::{self, MatrixNorm};

pub const TOOL: &str = "inbody";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const DEFAULT_GRID: usize = 33;
pub const DEFAULT_SAMPLES: usize = 1_000_000;
pub const DEFAULT_DEPTH: usize = 12;
pub const DEFAULT_TOL: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Volume, surface area, inradius and the Heron-type bounds.
    Metrics,
    /// Inner-neighbourhood volume and envelopes at one ε.
    Inner,
    /// Envelopes and scale-copy containment at ε ∈ {0, In/4, In/2, 3In/4, In}.
    Bounds,
    /// ε-profile of vol(L_ε) as CSV.
    Profile,
    /// Monte Carlo estimates next to the exact values.
    Oracle,
    /// Hole-series exponent and box-counting estimate for an IFS.
    Attractor,
    /// Word-norm series exponent for an IFS.
    Norms,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormArg {
    Spectral,
    Frobenius,
    Maxentry,
}

impl From<NormArg> for MatrixNorm {
    fn from(n: NormArg) -> Self {
        match n {
            NormArg::Spectral => MatrixNorm::Spectral,
            NormArg::Frobenius => MatrixNorm::Frobenius,
            NormArg::Maxentry => MatrixNorm::MaxEntry,
        }
    }
}

#[derive(Debug, Clone, Parser, Serialize)]
#[command(name = TOOL, version, about = "Convex polytope metrics and self-projective dimension estimates")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Polytope JSON (metrics, inner, bounds, profile, oracle) or IFS JSON
    /// (attractor, norms).
    #[arg(long = "input")]
    pub input_path: PathBuf,
    /// Report path; standard output when omitted.
    #[arg(long = "output")]
    pub output_path: Option<PathBuf>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long = "max-depth")]
    pub max_depth: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum)]
    pub norm: Option<NormArg>,
}

impl RunConfig {
    pub fn new(command: Command, input_path: impl Into<PathBuf>) -> Self {
        RunConfig {
            command,
            input_path: input_path.into(),
            output_path: None,
            eps: None,
            grid: None,
            samples: None,
            seed: None,
            max_depth: None,
            tol: None,
            norm: None,
        }
    }
}

#[derive(Debug)]
pub enum RunError {
    Io(String),
    Parse(String),
    Usage(String),
    Validation(Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Validation(_) => 1,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            RunError::Io(_) => "Io",
            RunError::Parse(_) => "Parse",
            RunError::Usage(_) => "Usage",
            RunError::Validation(e) => e.kind(),
        }
    }

    pub fn detail(&self) -> String {
        match self {
            RunError::Io(s) | RunError::Parse(s) | RunError::Usage(s) => s.clone(),
            RunError::Validation(e) => e.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        json!({ "error": self.kind(), "detail": self.detail() }).to_string()
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Validation(e)
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, RunError> {
    let text =
        fs::read_to_string(path).map_err(|e| RunError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| RunError::Parse(format!("{}: {e}", path.display())))
}

fn load_body(path: &Path) -> Result<Body, RunError> {
    let input: PolytopeInput = read_json(path)?;
    Ok(validate_body(&input.into_system()?)?)
}

fn envelope(config: &RunConfig, result: Value) -> String {
    let report = json!({
        "tool": TOOL,
        "version": VERSION,
        "config": config,
        "result": result,
    });
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    text
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn metrics_report(body: &Body) -> Result<Value, RunError> {
    let heron = metrics::heron_bounds(body);
    let inc = metrics::incentre(body);
    let circumscribed = metrics::is_circumscribed(body, crate::tol::FACET * body.scale())?;
    let mut v = to_value(&heron);
    let obj = v.as_object_mut().unwrap();
    obj.insert("dim".into(), json!(body.dim()));
    obj.insert("facets".into(), json!(body.system().halfspaces.len()));
    obj.insert("vertices".into(), json!(body.vertices().len()));
    obj.insert("incentre".into(), json!(inc.incentre));
    obj.insert("touching_facets".into(), json!(inc.touching_facets));
    obj.insert("circumscribed".into(), json!(circumscribed));
    Ok(v)
}

fn inner_report(body: &Body, eps: f64) -> Result<Value, RunError> {
    let bounds = neighbourhood::bounds_report(body, eps)?;
    let scale_copy = neighbourhood::scale_copy_containment_check(body, eps)?;
    let inner = neighbourhood::inner_parallel_body(body, eps)?;
    let mut v = to_value(&bounds);
    let obj = v.as_object_mut().unwrap();
    obj.insert("inradius".into(), json!(metrics::inradius(body)));
    obj.insert("scale_copy_contained".into(), json!(scale_copy));
    obj.insert(
        "inner_body".into(),
        inner.map_or(Value::Null, |b| to_value(b.system())),
    );
    Ok(v)
}

fn bounds_sweep(body: &Body) -> Result<Value, RunError> {
    let r = metrics::inradius(body);
    let mut rows = Vec::new();
    let mut all_ok = true;
    for frac in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let eps = frac * r;
        let b = neighbourhood::bounds_report(body, eps)?;
        let contained = neighbourhood::scale_copy_containment_check(body, eps)?;
        all_ok &= b.ok && contained;
        let mut v = to_value(&b);
        v.as_object_mut()
            .unwrap()
            .insert("scale_copy_contained".into(), json!(contained));
        rows.push(v);
    }
    let heron = metrics::heron_bounds(body);
    all_ok &= heron.satisfied;
    Ok(json!({ "heron": heron, "sweep": rows, "all_ok": all_ok }))
}

fn oracle_report(body: &Body, config: &RunConfig) -> Result<Value, RunError> {
    let samples = config.samples.unwrap_or(DEFAULT_SAMPLES);
    let seed = config.seed.unwrap_or(0);
    let r = metrics::inradius(body);
    let eps = config.eps.unwrap_or(0.5 * r);
    let exact_vol = metrics::volume(body);
    let exact_inner = neighbourhood::vol_inner_neighbourhood(body, eps)?;
    let mc_vol = oracle::mc_volume(body, samples, seed)?;
    let mc_inner = oracle::mc_inner_volume(body, eps, samples, seed)?;
    let entry = |exact: f64, est: &oracle::McEstimate| {
        json!({
            "exact": exact,
            "estimate": est,
            "z": est.z_score(exact),
            "within_4_sigma": est.agrees_with(exact, 4.0),
        })
    };
    Ok(json!({
        "volume": entry(exact_vol, &mc_vol),
        "inner": { "eps": eps, "check": entry(exact_inner, &mc_inner) },
    }))
}

fn attractor_report(config: &RunConfig) -> Result<Value, RunError> {
    let input: IfsInput = read_json(&config.input_path)?;
    let (ifs, seeds) = input.into_parts()?;
    let depth = config.max_depth.unwrap_or(DEFAULT_DEPTH);
    let tol = config.tol.unwrap_or(DEFAULT_TOL);
    let validation = projective::validate_ifs(&ifs, &seeds)?;
    let holes = projective::generate_holes(&ifs, &seeds, depth)?;
    let estimate = projective::exponent_from_holes(&holes, ifs.n, depth, tol)?;
    let smallest = holes
        .iter()
        .map(|h| 2.0 * h.inradius)
        .fold(f64::INFINITY, f64::min);
    let resolutions = projective::dyadic_resolutions(ifs.n, smallest);
    let box_counting = if resolutions.len() < 3 {
        Err(Error::InsufficientDepth(format!(
            "smallest hole width {smallest:e} leaves fewer than 3 usable resolutions"
        )))
    } else {
        projective::box_counting_from_holes(ifs.n, &holes, &resolutions)
    };
    let (bc_value, bc_error) = match box_counting {
        Ok(v) => (json!(v), Value::Null),
        Err(e) => (
            Value::Null,
            json!({ "error": e.kind(), "detail": e.to_string() }),
        ),
    };
    Ok(json!({
        "s_star": estimate.s_star,
        "max_depth": estimate.max_depth,
        "bracket_width": estimate.bracket_width,
        "flags": estimate.flags,
        "partial_sums": estimate.partial_sums,
        "holes": holes.len(),
        "validation": validation,
        "box_counting": { "dimension": bc_value, "resolutions": resolutions, "error": bc_error },
    }))
}

fn norms_report(config: &RunConfig) -> Result<Value, RunError> {
    let input: IfsInput = read_json(&config.input_path)?;
    let (ifs, _) = input.into_parts()?;
    let depth = config.max_depth.unwrap_or(DEFAULT_DEPTH);
    let tol = config.tol.unwrap_or(DEFAULT_TOL);
    let norm: MatrixNorm = config.norm.map(Into::into).unwrap_or_default();
    let estimate = projective::norm_series_exponent(&ifs, depth, tol, norm)?;
    Ok(json!({
        "s_star": estimate.s_star,
        "max_depth": estimate.max_depth,
        "bracket_width": estimate.bracket_width,
        "flags": estimate.flags,
        "norm": norm,
        "partial_sums": estimate.partial_sums,
    }))
}

/// Runs one command and returns the report text.
pub fn run(config: &RunConfig) -> Result<String, RunError> {
    if let Some(t) = config.tol {
        if !(t > 0.0) {
            return Err(RunError::Usage(format!("--tol must be positive, got {t}")));
        }
    }
    let out = match config.command {
        Command::Metrics => {
            let body = load_body(&config.input_path)?;
            envelope(config, metrics_report(&body)?)
        }
        Command::Inner => {
            let eps = config
                .eps
                .ok_or_else(|| RunError::Usage("inner needs --eps".into()))?;
            let body = load_body(&config.input_path)?;
            envelope(config, inner_report(&body, eps)?)
        }
        Command::Bounds => {
            let body = load_body(&config.input_path)?;
            envelope(config, bounds_sweep(&body)?)
        }
        Command::Profile => {
            let body = load_body(&config.input_path)?;
            let grid = config.grid.unwrap_or(DEFAULT_GRID);
            let profile = neighbourhood::neighbourhood_profile(&body, grid)?;
            let header = format!(
                "# {TOOL} {VERSION}\n# config: {}\n",
                serde_json::to_string(config).expect("config serializes")
            );
            header + &profile.to_csv()
        }
        Command::Oracle => {
            let body = load_body(&config.input_path)?;
            envelope(config, oracle_report(&body, config)?)
        }
        Command::Attractor => envelope(config, attractor_report(config)?),
        Command::Norms => envelope(config, norms_report(config)?),
    };
    Ok(out)
}

/// Writes via a temporary file in the target directory and renames it into
/// place.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Runs, writes the report, and returns the process exit code. Errors go to
/// standard error as `{"error": kind, "detail": text}`.
pub fn execute(config: &RunConfig) -> i32 {
    let result = run(config).and_then(|text| match &config.output_path {
        Some(path) => {
            write_atomic(path, &text).map_err(|e| RunError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}

//! `avenum`: approximate vertex enumeration from the command line.
//!
//! Exit codes: 0 ok, 1 a requested check failed, 2 usage, 3 input error,
//! 4 internal invariant violation.

mod export;
mod input;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use avenum::error::AlgError;
use avenum::exec::Execution;
use avenum::ga::{AuditLevel, CheckOptions};
use avenum::hrep::{prepend_bounding_simplex, AffineTransform, HPolytope};
use avenum::io::{print_canonical_ine, print_ext};
use avenum::numerics::{format_rational, parse_decimal, parse_rational, BigRational, Scalar};
use avenum::run::{run, Algorithm, RunOptions, RunOutput, ADDM_VERTEX_LIMIT};
use avenum::suite::{prepare, run_cell, Backend, CellResult, Prepared};
use avenum::verify::{check_sandwich, float_error_audit, AuditReport, SandwichReport};
use clap::{Args, Parser, Subcommand, ValueEnum};

use input::Loaded;

#[derive(Debug)]
pub enum Failure {
    Check(String),
    Usage(String),
    Input(String),
    Invariant(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Input(_) => 3,
            Failure::Invariant(_) => 4,
        }
    }
}

impl From<AlgError> for Failure {
    fn from(e: AlgError) -> Self {
        match e {
            e if e.is_invariant_violation() => Failure::Invariant(e.to_string()),
            AlgError::InvalidInput(m) => Failure::Usage(m),
            AlgError::Hrep(e) => Failure::Input(e.to_string()),
            e => Failure::Check(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "avenum", version, about = "Approximate vertex enumeration of H-polytopes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run an algorithm on an .ine file and write the vertices as .ext.
    Run(RunArgs),
    /// Check a point set against an .ine file.
    Verify(VerifyArgs),
    /// Vertex counts and runtimes over fixtures and tolerances, as CSV.
    Bench(BenchArgs),
    /// Run the graph algorithm and export the result for viewing.
    Export(ExportArgs),
    /// Write a fixture as an .ine file.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgArg {
    Ga,
    Addm,
}

impl From<AlgArg> for Algorithm {
    fn from(a: AlgArg) -> Self {
        match a {
            AlgArg::Ga => Algorithm::Ga,
            AlgArg::Addm => Algorithm::Addm,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Float,
    Rational,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Float => Backend::Float,
            BackendArg::Rational => Backend::Rational,
        }
    }
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "ga")]
    alg: AlgArg,
    /// Positive tolerance, decimal (`1e-3`) or fraction (`1/1000`).
    #[arg(long)]
    eps: String,
    #[arg(long, value_enum, default_value = "rational")]
    backend: BackendArg,
    /// Seed for the parity probes of `--checks`.
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Allow the incidence method in dimension four and up.
    #[arg(long)]
    experimental: bool,
    /// Size limit for the incidence method.
    #[arg(long, default_value_t = ADDM_VERTEX_LIMIT)]
    max_vertices: usize,
}

#[derive(Args)]
struct RunArgs {
    input: PathBuf,
    #[command(flatten)]
    common: Common,
    /// Check the sandwich exactly afterwards.
    #[arg(long)]
    verify: bool,
    /// Measure the float error against an exact shadow run.
    #[arg(long)]
    audit: bool,
    /// Structural audits after every mutation plus parity and label checks.
    #[arg(long)]
    checks: bool,
    /// Output file; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    input: PathBuf,
    points: PathBuf,
    #[arg(long)]
    eps: String,
}

#[derive(Args)]
struct BenchArgs {
    /// Fixture specs, e.g. `cube3`, `ball3:20:7`, `zonotope:13`, `pm:2`, `corpus:40` or an .ine path.
    #[arg(long, value_delimiter = ',', required = true)]
    fixtures: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "1,0.1,0.01,0.001")]
    eps: Vec<String>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "ga,addm")]
    alg: Vec<AlgArg>,
    #[arg(long, value_enum, default_value = "rational")]
    backend: BackendArg,
    #[arg(long)]
    verify: bool,
    /// Run the cells one after another.
    #[arg(long)]
    sequential: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Off,
    Svg,
    Csv,
}

#[derive(Args)]
struct ExportArgs {
    input: PathBuf,
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum)]
    format: Format,
    /// Fan-triangulate the OFF faces.
    #[arg(long)]
    triangulate: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    /// `simplex2`, `cube3`, `ball3:M:SEED`, `zonotope:K`, `pm:K`, `example`, ...
    fixture: String,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn parse_eps(s: &str) -> Result<BigRational, Failure> {
    let q = if s.contains('/') { parse_rational(s) } else { parse_decimal(s) };
    match q {
        Some(q) if q > BigRational::from_integer(0.into()) => Ok(q),
        Some(_) => Err(Failure::Usage(format!("eps must be positive, got `{s}`"))),
        None => Err(Failure::Usage(format!("bad eps `{s}`"))),
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Input(e.to_string())),
    }
}

fn run_options(c: &Common, checks: bool) -> RunOptions {
    let mut o = RunOptions { experimental: c.experimental, max_vertices: Some(c.max_vertices), ..Default::default() };
    if checks {
        o.audit = AuditLevel::PerMutation;
        o.checks = Some(CheckOptions { seed: c.seed, ..Default::default() });
    }
    o
}

struct Prefixed {
    loaded: Loaded,
    prefixed: HPolytope<BigRational>,
}

fn prefixed(loaded: Loaded) -> Result<Prefixed, Failure> {
    let prefixed = prepend_bounding_simplex(&loaded.poly).map_err(|e| Failure::Input(e.to_string()))?;
    Ok(Prefixed { loaded, prefixed })
}

/// Run in the chosen backend. Points come back exact in the canonical frame,
/// the graph in the frame of the input.
fn run_exact(p: &HPolytope<BigRational>, frame: &AffineTransform<BigRational>, eps: &BigRational, alg: Algorithm, backend: Backend, opts: &RunOptions) -> Result<(Vec<Vec<BigRational>>, Option<export::Geometry>), AlgError> {
    fn go<S: Scalar>(p: &HPolytope<BigRational>, eps: &BigRational, alg: Algorithm, opts: &RunOptions) -> Result<RunOutput<S>, AlgError> {
        run(alg, &p.convert::<S>(), &S::from_rational(eps), opts)
    }
    fn exact<S: Scalar>(o: &RunOutput<S>) -> Vec<Vec<BigRational>> {
        o.points.iter().map(|v| v.iter().map(Scalar::to_rational).collect()).collect()
    }
    match backend {
        Backend::Rational => {
            let o = go::<BigRational>(p, eps, alg, opts)?;
            Ok((exact(&o), o.ga.as_ref().map(|g| export::geometry(g, frame))))
        }
        Backend::Float => {
            let o = go::<f64>(p, eps, alg, opts)?;
            Ok((exact(&o), o.ga.as_ref().map(|g| export::geometry(g, frame))))
        }
    }
}

fn report_line(name: &str, alg: Algorithm, eps: &BigRational, backend: Backend, s: Option<&SandwichReport>, a: Option<&AuditReport>, n: usize, seed: u64) -> String {
    let flag = |b: Option<bool>| b.map_or("-".to_string(), |b| b.to_string());
    let (e, bound) = a.map_or(("-".into(), "-".into()), |a| (format!("{:.3e}", a.e), format!("{:.3e}", a.bound)));
    format!(
        "{name} {alg} {} {backend} {} {} {e} {bound} {n} {seed}",
        format_rational(eps),
        flag(s.map(|s| s.inner_ok)),
        flag(s.map(|s| s.outer_ok))
    )
}

fn cmd_run(a: &RunArgs) -> Result<(), Failure> {
    let eps = parse_eps(&a.common.eps)?;
    let alg: Algorithm = a.common.alg.into();
    let backend: Backend = a.common.backend.into();
    let pre = prefixed(input::load_ine(&a.input)?)?;
    let opts = run_options(&a.common, a.checks);
    let (points, _) = run_exact(&pre.prefixed, &pre.loaded.frame, &eps, alg, backend, &opts)?;
    let mut failed = Vec::new();
    let audit = if a.audit {
        let r = float_error_audit(&pre.prefixed, &eps, alg, &opts)?;
        if !r.within_bound() {
            // no output: the float result carries no guarantee
            eprintln!("{}", report_line(&pre.loaded.name, alg, &eps, backend, None, Some(&r), points.len(), a.common.seed));
            return Err(Failure::Check(format!("audit: {}", r.summary())));
        }
        if !r.passed() {
            failed.push(format!("audit: {}", r.summary()));
        }
        Some(r)
    } else {
        None
    };
    let sandwich = if a.verify {
        let s = check_sandwich(&pre.loaded.poly, &points, &eps).map_err(|e| Failure::Check(e.to_string()))?;
        if !s.passed() {
            failed.push(format!("sandwich: {}", s.detail.join("; ")));
        }
        Some(s)
    } else {
        None
    };
    let original: Vec<Vec<BigRational>> = points.iter().map(|p| pre.loaded.frame.to_original(p)).collect();
    emit(a.output.as_deref(), &print_ext(&original, Some(&pre.loaded.name)))?;
    if a.verify || a.audit {
        eprintln!("{}", report_line(&pre.loaded.name, alg, &eps, backend, sandwich.as_ref(), audit.as_ref(), points.len(), a.common.seed));
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(failed.join("\n")))
    }
}

fn cmd_verify(a: &VerifyArgs) -> Result<(), Failure> {
    let eps = parse_eps(&a.eps)?;
    let loaded = input::load_ine(&a.input)?;
    let pts: Vec<Vec<BigRational>> = input::load_ext(&a.points)?.iter().map(|p| loaded.frame.to_canonical(p)).collect();
    if pts.iter().any(|p| p.len() != loaded.poly.d()) {
        return Err(Failure::Input("point dimension differs from the polytope".into()));
    }
    let s = check_sandwich(&loaded.poly, &pts, &eps).map_err(|e| Failure::Check(e.to_string()))?;
    println!("inner_ok {} outer_ok {} oracle_vertices {} points {}", s.inner_ok, s.outer_ok, s.oracle_vertices, pts.len());
    for line in &s.detail {
        println!("{line}");
    }
    if s.passed() {
        Ok(())
    } else {
        Err(Failure::Check("sandwich failed".into()))
    }
}

fn cmd_bench(a: &BenchArgs) -> Result<(), Failure> {
    let eps: Vec<BigRational> = a.eps.iter().map(|s| parse_eps(s)).collect::<Result<_, _>>()?;
    let algs: Vec<Algorithm> = a.alg.iter().map(|&x| x.into()).collect();
    let mut preps: Vec<Prepared> = Vec::new();
    for spec in &a.fixtures {
        for l in input::resolve(spec)? {
            let f = avenum::generators::Fixture { name: l.name, poly: l.poly, vertices: None, note: String::new() };
            preps.push(prepare(&f)?);
        }
    }
    let cells = avenum::suite::cells(preps.len(), &eps, &algs);
    let exec = if a.sequential { Execution::Sequential } else { Execution::default() };
    let results: Vec<CellResult> = avenum::exec::map(exec, &cells, |c| run_cell(&preps[c.fixture], c.alg, &c.eps, a.backend.into(), &RunOptions::default(), a.verify));
    let mut out = String::from(CellResult::csv_header());
    out.push('\n');
    for r in &results {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    emit(a.output.as_deref(), &out)?;
    let bad = results.iter().filter(|r| r.error.is_some() || (a.verify && r.verified() != Some(true))).count();
    if bad == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!("{bad} of {} rows failed", results.len())))
    }
}

fn cmd_export(a: &ExportArgs) -> Result<(), Failure> {
    let eps = parse_eps(&a.common.eps)?;
    let alg: Algorithm = a.common.alg.into();
    let pre = prefixed(input::load_ine(&a.input)?)?;
    let d = pre.loaded.poly.d();
    match (a.format, alg, d) {
        (Format::Off, Algorithm::Ga, 3) | (Format::Svg, Algorithm::Ga, 2) | (Format::Csv, _, _) => {}
        (Format::Off | Format::Svg, Algorithm::Addm, _) => return Err(Failure::Usage("the incidence method only exports points (csv)".into())),
        (Format::Off, _, _) => return Err(Failure::Usage("off export needs a three-dimensional input".into())),
        (Format::Svg, _, _) => return Err(Failure::Usage("svg export needs a two-dimensional input".into())),
    }
    let (points, geo) = run_exact(&pre.prefixed, &pre.loaded.frame, &eps, alg, a.common.backend.into(), &run_options(&a.common, false))?;
    let text = match a.format {
        Format::Csv => export::csv(&points.iter().map(|p| pre.loaded.frame.to_original(p)).collect::<Vec<_>>()),
        Format::Off => export::off(&geo.expect("graph run"), a.triangulate),
        Format::Svg => export::svg(&geo.expect("graph run")),
    };
    emit(a.output.as_deref(), &text)
}

fn cmd_generate(a: &GenerateArgs) -> Result<(), Failure> {
    let mut fixtures = input::resolve(&a.fixture)?;
    if fixtures.len() != 1 {
        return Err(Failure::Usage("generate writes a single fixture".into()));
    }
    let f = fixtures.remove(0);
    emit(a.output.as_deref(), &print_canonical_ine(f.poly.rows(), Some(&f.name)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Run(a) => cmd_run(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Bench(a) => cmd_bench(a),
        Cmd::Export(a) => cmd_export(a),
        Cmd::Generate(a) => cmd_generate(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Check(m) | Failure::Usage(m) | Failure::Input(m) | Failure::Invariant(m)) = &f;
            eprintln!("avenum: {m}");
            ExitCode::from(f.code())
        }
    }
}

//! Batches of independent runs: the fixture corpus, ε sweeps and the
//! paired-script property runs. Cells run through [`crate::exec`], so the
//! batch is parallel when the feature is on while each run stays
//! single-threaded.

use std::time::Instant;

use num_rational::BigRational;

use crate::error::AlgError;
use crate::exec::{self, Execution};
use crate::ga::{paired_core_run, GaOptions, GaStats, PairedRun};
use crate::generators::{grid_generators, standard, zonotope3, Fixture, GenError, Standard};
use crate::hrep::{prepend_bounding_simplex, HPolytope};
use crate::numerics::{format_rational, ratio, Scalar};
use crate::partition::RandomScript;
use crate::run::{run, Algorithm, RunOptions};
use crate::verify::{brute_force_vertices, check_sandwich_against, float_error_audit, AuditReport, SandwichReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Float,
    Rational,
}

impl std::str::FromStr for Backend {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "float" => Ok(Backend::Float),
            "rational" => Ok(Backend::Rational),
            _ => Err(format!("unknown backend `{s}`")),
        }
    }
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Backend::Float => "float",
            Backend::Rational => "rational",
        })
    }
}

/// The tolerances used throughout the experiments.
pub fn eps_decades() -> Vec<BigRational> {
    vec![ratio(1, 1), ratio(1, 10), ratio(1, 100), ratio(1, 1000)]
}

/// Cube and cross-polytope in both dimensions, random tangent polytopes
/// (`count` per dimension, sizes cycling up to 30 rows in the plane and 40 in
/// space) and zonotopes on 4, 7 and 13 of the grid directions.
pub fn corpus(count: usize) -> Result<Vec<Fixture>, GenError> {
    let mut out = Vec::new();
    for d in [2, 3] {
        out.push(standard(Standard::Cube, d)?);
        out.push(standard(Standard::Crosspolytope, d)?);
    }
    for i in 0..count {
        let m = 4 + (i * 7) % 27;
        out.push(standard(Standard::BallTangent { m, seed: 1000 + i as u64 }, 2)?);
    }
    for i in 0..count {
        let m = 5 + (i * 11) % 36;
        out.push(standard(Standard::BallTangent { m, seed: 2000 + i as u64 }, 3)?);
    }
    let g = grid_generators();
    for k in [4, 7, 13] {
        out.push(zonotope3(&g[13 - k..])?);
    }
    Ok(out)
}

/// A fixture with its bounding-simplex prefix and oracle vertices.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub fixture: Fixture,
    pub prefixed: HPolytope<BigRational>,
    pub vertices: Vec<Vec<BigRational>>,
}

pub fn prepare(f: &Fixture) -> Result<Prepared, AlgError> {
    let prefixed = prepend_bounding_simplex(&f.poly)?;
    let vertices = match &f.vertices {
        Some(v) => v.clone(),
        None => brute_force_vertices(&f.poly)?,
    };
    Ok(Prepared { fixture: f.clone(), prefixed, vertices })
}

#[derive(Debug, Clone)]
pub struct Cell {
    pub fixture: usize,
    pub alg: Algorithm,
    pub eps: BigRational,
}

/// Every `(fixture, ε, algorithm)` combination, graph algorithm first.
pub fn cells(fixtures: usize, eps: &[BigRational], algs: &[Algorithm]) -> Vec<Cell> {
    let mut out = Vec::new();
    for fixture in 0..fixtures {
        for e in eps {
            for &alg in algs {
                out.push(Cell { fixture, alg, eps: e.clone() });
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct CellResult {
    pub fixture: String,
    pub alg: Algorithm,
    pub eps: BigRational,
    pub backend: Backend,
    pub runtime_ms: f64,
    /// Surviving vertex keys, sorted.
    pub keys: Vec<u64>,
    /// Exact coordinates of the output, in key order.
    pub points: Vec<Vec<BigRational>>,
    pub sandwich: Option<SandwichReport>,
    pub ga_stats: Option<GaStats>,
    pub error: Option<AlgError>,
}

impl CellResult {
    pub fn n_vertices(&self) -> usize {
        self.keys.len()
    }

    pub fn verified(&self) -> Option<bool> {
        self.sandwich.as_ref().map(SandwichReport::passed)
    }

    pub fn csv_header() -> &'static str {
        "fixture,alg,eps,backend,n_vertices,runtime_ms,verified"
    }

    pub fn csv_row(&self) -> String {
        let verified = match (&self.error, self.verified()) {
            (Some(e), _) => format!("error: {}", e.to_string().replace(',', ";")),
            (None, Some(v)) => v.to_string(),
            (None, None) => "-".into(),
        };
        format!(
            "{},{},{},{},{},{:.3},{}",
            self.fixture,
            self.alg,
            format_rational(&self.eps),
            self.backend,
            self.n_vertices(),
            self.runtime_ms,
            verified
        )
    }
}

fn timed<S: Scalar>(alg: Algorithm, p: &HPolytope<BigRational>, eps: &BigRational, opts: &RunOptions) -> (f64, Result<crate::run::RunOutput<S>, AlgError>) {
    let ps: HPolytope<S> = p.convert();
    let es = S::from_rational(eps);
    let t = Instant::now();
    let out = run(alg, &ps, &es, opts);
    (t.elapsed().as_secs_f64() * 1e3, out)
}

/// One run, timed around the algorithm only, optionally followed by the
/// exact sandwich check of its output.
pub fn run_cell(prep: &Prepared, alg: Algorithm, eps: &BigRational, backend: Backend, opts: &RunOptions, verify: bool) -> CellResult {
    let (runtime_ms, out) = match backend {
        Backend::Rational => {
            let (t, o) = timed::<BigRational>(alg, &prep.prefixed, eps, opts);
            (t, o.map(|o| (o.keys, o.points, o.ga.map(|g| g.stats))))
        }
        Backend::Float => {
            let (t, o) = timed::<f64>(alg, &prep.prefixed, eps, opts);
            (t, o.map(|o| (o.keys, o.points.iter().map(|v| v.iter().map(Scalar::to_rational).collect()).collect(), o.ga.map(|g| g.stats))))
        }
    };
    let mut res = CellResult {
        fixture: prep.fixture.name.clone(),
        alg,
        eps: eps.clone(),
        backend,
        runtime_ms,
        keys: Vec::new(),
        points: Vec::new(),
        sandwich: None,
        ga_stats: None,
        error: None,
    };
    match out {
        Ok((keys, points, stats)) => {
            let mut both: Vec<(u64, Vec<BigRational>)> = keys.into_iter().zip(points).collect();
            both.sort_by_key(|(k, _)| *k);
            res.keys = both.iter().map(|(k, _)| *k).collect();
            res.points = both.into_iter().map(|(_, p)| p).collect();
            res.ga_stats = stats;
            if verify {
                res.sandwich = Some(check_sandwich_against(&prep.fixture.poly, &prep.vertices, &res.points, eps, Execution::Sequential));
            }
        }
        Err(e) => res.error = Some(e),
    }
    res
}

pub fn run_cells(preps: &[Prepared], cells: &[Cell], backend: Backend, opts: &RunOptions, verify: bool, exec: Execution) -> Vec<CellResult> {
    exec::map(exec, cells, |c| run_cell(&preps[c.fixture], c.alg, &c.eps, backend, opts, verify))
}

/// Float error audits of the same cells.
pub fn audit_cells(preps: &[Prepared], cells: &[Cell], opts: &RunOptions, exec: Execution) -> Vec<(String, Result<AuditReport, AlgError>)> {
    exec::map(exec, cells, |c| {
        let prep = &preps[c.fixture];
        let name = format!("{} {} eps={}", prep.fixture.name, c.alg, format_rational(&c.eps));
        (name, float_error_audit(&prep.prefixed, &c.eps, c.alg, opts))
    })
}

/// Shape of one random-script case: dimension, row count and seed.
#[derive(Debug, Clone, Copy)]
pub struct ScriptCase {
    pub d: usize,
    pub m: usize,
    pub seed: u64,
}

/// `count` cases alternating between the plane and space, with row counts
/// spread over `d+2..=max_m`.
pub fn script_cases(count: usize, max_m: usize) -> Vec<ScriptCase> {
    (0..count as u64)
        .map(|seed| {
            let d = 2 + (seed % 2) as usize;
            let span = max_m - d - 1;
            ScriptCase { d, m: d + 2 + (seed as usize / 2) % span, seed }
        })
        .collect()
}

/// Incidence-graph size above which a script case stops early.
pub const SCRIPT_CAP: usize = 300;

pub fn run_script_cases(cases: &[ScriptCase], opts: GaOptions, exec: Execution) -> Vec<(ScriptCase, Result<PairedRun, AlgError>)> {
    exec::map(exec, cases, |&c| (c, paired_core_run(c.d, c.m, &RandomScript::new(c.seed), opts.clone(), SCRIPT_CAP)))
}

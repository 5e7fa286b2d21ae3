//! Single entry point over both algorithms.

use std::fmt;
use std::str::FromStr;

use crate::addm::{addm_run, AddmOptions};
use crate::error::AlgError;
use crate::ga::{ga_run, AuditLevel, CheckOptions, GaOptions, GaResult};
use crate::hrep::HPolytope;
use crate::numerics::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Ga,
    Addm,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Ga => "ga",
            Algorithm::Addm => "addm",
        })
    }
}

impl FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ga" => Ok(Algorithm::Ga),
            "addm" => Ok(Algorithm::Addm),
            _ => Err(format!("unknown algorithm `{s}`")),
        }
    }
}

/// Default size limit for the incidence method. Its intermediate graphs can
/// grow far beyond the output for some tolerances.
pub const ADDM_VERTEX_LIMIT: usize = 50_000;

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub audit: AuditLevel,
    /// Parity and label checks after each row (graph algorithm only).
    pub checks: Option<CheckOptions>,
    /// Let the incidence method run in dimension four and up.
    pub experimental: bool,
    /// Size limit for the incidence method.
    pub max_vertices: Option<usize>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { audit: AuditLevel::Off, checks: None, experimental: false, max_vertices: Some(ADDM_VERTEX_LIMIT) }
    }
}

impl RunOptions {
    pub fn verifying() -> Self {
        let g = GaOptions::verifying();
        RunOptions { audit: g.audit, checks: g.checks, ..Default::default() }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutput<S> {
    pub alg: Algorithm,
    /// Coordinates of the surviving vertices.
    pub points: Vec<Vec<S>>,
    /// Coordinates of every vertex created during the run.
    pub created: Vec<Vec<S>>,
    /// Identity keys of the surviving vertices, in the order of `points`.
    pub keys: Vec<u64>,
    /// The plane graph, kept for export.
    pub ga: Option<GaResult<S>>,
}

/// Run `alg` on `P`, which must start with a bounding simplex
/// (see [`crate::hrep::prepend_bounding_simplex`]).
pub fn run<S: Scalar>(alg: Algorithm, p: &HPolytope<S>, eps: &S, opts: &RunOptions) -> Result<RunOutput<S>, AlgError> {
    match alg {
        Algorithm::Ga => {
            let res = ga_run(p, eps, GaOptions { audit: opts.audit, checks: opts.checks.clone() })?;
            let keys = res.vertices.iter().map(|&v| res.log.get(v).key).collect();
            let created = res.log.records().iter().filter_map(|r| r.coord.clone()).collect();
            Ok(RunOutput { alg, points: res.coords(), created, keys, ga: Some(res) })
        }
        Algorithm::Addm => {
            let res = addm_run(p, eps, &AddmOptions { experimental: opts.experimental, max_vertices: opts.max_vertices })?;
            let keys = res.vertices.iter().map(|&v| res.log.get(v).key).collect();
            let created = res.log.records().iter().filter_map(|r| r.coord.clone()).collect();
            Ok(RunOutput { alg, points: res.coords(), created, keys, ga: None })
        }
    }
}

//! Float run measured against its exact shadow.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::AlgError;
use crate::hrep::{inradius_sq, HPolytope};
use crate::numerics::{rational_to_f64, Paired, Scalar};
use crate::run::{run, Algorithm, RunOptions};

use super::{check_sandwich, SandwichReport};

#[derive(Debug, Clone)]
pub struct AuditReport {
    pub alg: Algorithm,
    /// Largest Euclidean distance between a float coordinate and its shadow.
    pub e: f64,
    /// `ε·δ/4`.
    pub bound: f64,
    pub e_sq: BigRational,
    pub bound_sq: BigRational,
    /// Vertices created by the run.
    pub vertices: usize,
    /// Output of the float run, converted exactly.
    pub points: Vec<Vec<BigRational>>,
    /// Sandwich of `points`; absent when the error bound already failed.
    pub sandwich: Option<SandwichReport>,
}

impl AuditReport {
    pub fn within_bound(&self) -> bool {
        self.e_sq <= self.bound_sq
    }

    pub fn passed(&self) -> bool {
        self.within_bound() && self.sandwich.as_ref().is_some_and(SandwichReport::passed)
    }

    /// One-line diagnostic.
    pub fn summary(&self) -> String {
        let verdict = match (&self.sandwich, self.within_bound()) {
            (_, false) => "error bound exceeded, output not certified".to_string(),
            (Some(s), true) if s.passed() => "pass".to_string(),
            (Some(s), true) => format!("sandwich failed (inner {}, outer {})", s.inner_ok, s.outer_ok),
            (None, true) => "no sandwich".to_string(),
        };
        format!("{} E={:.3e} bound={:.3e} vertices={} {verdict}", self.alg, self.e, self.bound, self.vertices)
    }
}

/// Run `alg` over paired float/exact scalars so that every decision follows
/// the float half, then measure the worst drift `E` over all created
/// vertices and compare with `ε·δ/4` exactly (as squares). When the bound
/// holds the float output is checked against the sandwich exactly.
///
/// `p` must start with a bounding simplex.
pub fn float_error_audit(
    p: &HPolytope<BigRational>,
    eps: &BigRational,
    alg: Algorithm,
    opts: &RunOptions,
) -> Result<AuditReport, AlgError> {
    let pp: HPolytope<Paired> = p.convert();
    let pe = Paired::from_rational(eps);
    let out = run(alg, &pp, &pe, opts)?;
    let mut e_sq = <BigRational as Zero>::zero();
    for v in &out.created {
        let d2 = v.iter().map(|x| x.drift() * x.drift()).fold(<BigRational as Zero>::zero(), |a, b| a + b);
        if d2 > e_sq {
            e_sq = d2;
        }
    }
    let bound_sq = eps.clone() * eps.clone() * inradius_sq(p) / BigRational::from_integer(16.into());
    let points: Vec<Vec<BigRational>> = out.points.iter().map(|v| v.iter().map(Scalar::to_rational).collect()).collect();
    let mut report = AuditReport {
        alg,
        e: rational_to_f64(&e_sq).sqrt(),
        bound: rational_to_f64(&bound_sq).sqrt(),
        e_sq,
        bound_sq,
        vertices: out.created.len(),
        points,
        sandwich: None,
    };
    if report.within_bound() {
        report.sandwich = Some(check_sandwich(p, &report.points, eps)?);
    }
    Ok(report)
}

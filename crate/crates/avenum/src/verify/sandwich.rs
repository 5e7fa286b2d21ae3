use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::Zero;

use crate::exec::{self, Execution};
use crate::hrep::HPolytope;
use crate::numerics::{feasible_basis_f64, feasible_standard, rational_to_f64, solve_linear, Scalar};

use super::{brute_force_vertices_with, VerifyError};

/// `u ∈ conv V`, decided by the feasibility LP `Σλv = u, Σλ = 1, λ ≥ 0`.
pub fn point_in_vpolytope<S: Scalar>(u: &[S], v: &[Vec<S>]) -> bool {
    if v.is_empty() {
        return false;
    }
    let d = u.len();
    let mut a: Vec<Vec<S>> = (0..d).map(|k| v.iter().map(|p| p[k].clone()).collect()).collect();
    a.push(vec![S::one(); v.len()]);
    let mut b = u.to_vec();
    b.push(S::one());
    feasible_standard(&a, &b).is_some()
}

/// Exact membership test that first asks a float LP for a basis and then
/// confirms it with one exact square solve; the exact LP is the fallback.
pub fn point_in_vpolytope_fast(u: &[BigRational], v: &[Vec<BigRational>], v_f64: &[Vec<f64>]) -> bool {
    if v.is_empty() {
        return false;
    }
    let d = u.len();
    let mut a: Vec<Vec<f64>> = (0..d).map(|k| v_f64.iter().map(|p| p[k]).collect()).collect();
    a.push(vec![1.0; v.len()]);
    let mut b: Vec<f64> = u.iter().map(rational_to_f64).collect();
    b.push(1.0);
    if let Some(basis) = feasible_basis_f64(&a, &b) {
        if basis.iter().all(|&j| j < v.len()) {
            let m: Vec<Vec<BigRational>> = (0..=d)
                .map(|k| basis.iter().map(|&j| if k < d { v[j][k].clone() } else { <BigRational as Scalar>::one() }).collect())
                .collect();
            let mut rhs = u.to_vec();
            rhs.push(<BigRational as Scalar>::one());
            if let Ok(lambda) = solve_linear(&m, &rhs) {
                if lambda.iter().all(|x| *x >= <BigRational as Zero>::zero()) {
                    return true;
                }
            }
        }
    }
    point_in_vpolytope(u, v)
}

/// Outcome of the two containments `P ⊆ conv V ⊆ (1+ε)P`.
#[derive(Debug, Clone, PartialEq)]
pub struct SandwichReport {
    pub inner_ok: bool,
    pub outer_ok: bool,
    pub oracle_vertices: usize,
    /// Vertices of `P` that are not in `conv V`.
    pub uncovered: Vec<Vec<BigRational>>,
    /// Indices into `V` of points outside `(1+ε)P`.
    pub outside: Vec<usize>,
    /// Largest `max_i A_i v - (1+ε)` over `V`; non-positive when outer holds.
    pub worst_outer_excess: f64,
    /// Outer violations no larger than `1e-9·(1+ε)`.
    pub outer_within_float_tol: usize,
    pub detail: Vec<String>,
}

impl SandwichReport {
    pub fn passed(&self) -> bool {
        self.inner_ok && self.outer_ok
    }

    /// Pass when outer violations all sit inside the float tolerance band.
    pub fn passed_within_float_tolerance(&self) -> bool {
        self.inner_ok && self.outside.len() == self.outer_within_float_tol
    }
}

/// Check `P ⊆ conv V ⊆ (1+ε)P` exactly.
pub fn check_sandwich(
    p: &HPolytope<BigRational>,
    v: &[Vec<BigRational>],
    eps: &BigRational,
) -> Result<SandwichReport, VerifyError> {
    check_sandwich_with(p, v, eps, Execution::default())
}

pub fn check_sandwich_with(
    p: &HPolytope<BigRational>,
    v: &[Vec<BigRational>],
    eps: &BigRational,
    exec: Execution,
) -> Result<SandwichReport, VerifyError> {
    let verts = brute_force_vertices_with(p, exec)?;
    Ok(check_sandwich_against(p, &verts, v, eps, exec))
}

/// Sandwich check with precomputed vertices of `P`.
pub fn check_sandwich_against(
    p: &HPolytope<BigRational>,
    p_vertices: &[Vec<BigRational>],
    v: &[Vec<BigRational>],
    eps: &BigRational,
    exec: Execution,
) -> SandwichReport {
    let factor = <BigRational as Scalar>::one() + eps.clone();
    let tol = rational_to_f64(&factor) * 1e-9;
    let mut outside = Vec::new();
    let mut within = 0;
    let mut worst: Option<BigRational> = None;
    for (k, x) in v.iter().enumerate() {
        let excess = p.max_eval(x) - factor.clone();
        if excess > <BigRational as Zero>::zero() {
            outside.push(k);
            if rational_to_f64(&excess) <= tol {
                within += 1;
            }
        }
        if worst.as_ref().is_none_or(|w| excess > *w) {
            worst = Some(excess);
        }
    }
    let present: HashSet<&Vec<BigRational>> = v.iter().collect();
    let v_f64: Vec<Vec<f64>> = v.iter().map(|x| x.iter().map(rational_to_f64).collect()).collect();
    let flags = exec::map(exec, p_vertices, |u| present.contains(u) || point_in_vpolytope_fast(u, v, &v_f64));
    let uncovered: Vec<Vec<BigRational>> =
        p_vertices.iter().zip(&flags).filter(|(_, ok)| !**ok).map(|(u, _)| u.clone()).collect();
    let mut detail = Vec::new();
    for u in uncovered.iter().take(8) {
        detail.push(format!("vertex of P outside conv V: {}", fmt_point(u)));
    }
    for &k in outside.iter().take(8) {
        detail.push(format!("point {k} outside (1+eps)P: {}", fmt_point(&v[k])));
    }
    SandwichReport {
        inner_ok: uncovered.is_empty(),
        outer_ok: outside.is_empty(),
        oracle_vertices: p_vertices.len(),
        uncovered,
        outside,
        worst_outer_excess: worst.map_or(f64::NEG_INFINITY, |w| rational_to_f64(&w)),
        outer_within_float_tol: within,
        detail,
    }
}

fn fmt_point(u: &[BigRational]) -> String {
    let parts: Vec<String> = u.iter().map(|x| format!("{:.6}", rational_to_f64(x))).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;

    fn cube() -> HPolytope<BigRational> {
        let mut rows = Vec::new();
        for i in 0..3 {
            for s in [1, -1] {
                let mut r = vec![ratio(0, 1); 3];
                r[i] = ratio(s, 1);
                rows.push(r);
            }
        }
        HPolytope::new(rows).unwrap()
    }

    fn corners() -> Vec<Vec<BigRational>> {
        let mut out = Vec::new();
        for x in [-1, 1] {
            for y in [-1, 1] {
                for z in [-1, 1] {
                    out.push(vec![ratio(x, 1), ratio(y, 1), ratio(z, 1)]);
                }
            }
        }
        out
    }

    #[test]
    fn membership() {
        let c = corners();
        assert!(point_in_vpolytope(&[ratio(0, 1), ratio(0, 1), ratio(0, 1)], &c));
        assert!(!point_in_vpolytope(&[ratio(2, 1), ratio(0, 1), ratio(0, 1)], &c));
    }

    #[test]
    fn exact_vertices_pass() {
        let r = check_sandwich(&cube(), &corners(), &ratio(0, 1)).unwrap();
        assert!(r.passed());
        assert_eq!(r.oracle_vertices, 8);
    }

    #[test]
    fn scaled_vertices_pass_tight() {
        let eps = ratio(1, 10);
        let v: Vec<Vec<BigRational>> =
            corners().into_iter().map(|p| p.into_iter().map(|x| x * ratio(11, 10)).collect()).collect();
        let r = check_sandwich(&cube(), &v, &eps).unwrap();
        assert!(r.passed());
        assert_eq!(r.worst_outer_excess, 0.0);
    }

    #[test]
    fn dropped_corner_is_reported() {
        let mut v = corners();
        let dropped = v.pop().unwrap();
        let r = check_sandwich(&cube(), &v, &ratio(1, 100)).unwrap();
        assert!(!r.inner_ok);
        assert!(r.outer_ok);
        assert_eq!(r.uncovered, vec![dropped]);
    }

    #[test]
    fn tiny_outer_excess_is_flagged_as_float_noise() {
        let mut v = corners();
        v[0][0] = ratio(-1, 1) - ratio(1, 1_000_000_000_000);
        let r = check_sandwich(&cube(), &v, &ratio(0, 1)).unwrap();
        assert!(!r.outer_ok);
        assert!(r.passed_within_float_tolerance());
    }
}

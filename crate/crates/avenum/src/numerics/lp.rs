//! Dense tableau simplex with Bland's rule.
//!
//! The public entry point [`lp_solve`] takes the inequality form
//! `max cᵀx s.t. Gx ≤ h` with free `x`. Because `x` has at most a handful of
//! coordinates while `G` may have hundreds of rows, it is solved through the
//! dual `min hᵀy s.t. Gᵀy = c, y ≥ 0`, whose tableau has only `d` rows. The
//! primal optimum is read off the dual multipliers.

use super::scalar::Scalar;

/// `max objectiveᵀx` subject to `g x ≤ h`, `x` free.
#[derive(Debug, Clone)]
pub struct LpProblem<S> {
    pub objective: Vec<S>,
    pub g: Vec<Vec<S>>,
    pub h: Vec<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<S> {
    Optimal { x: Vec<S>, value: S },
    Infeasible,
    Unbounded,
}

impl<S: Scalar> LpOutcome<S> {
    pub fn value(&self) -> Option<&S> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// Result of a standard-form solve `min cᵀy, Ay = b, y ≥ 0`.
#[derive(Debug, Clone)]
pub(crate) enum StdOutcome<S> {
    Optimal { y: Vec<S>, duals: Vec<S>, basis: Vec<usize> },
    Infeasible,
    Unbounded,
}

struct Tableau<S> {
    rows: Vec<Vec<S>>,
    z: Vec<S>,
    basis: Vec<usize>,
    n: usize,
}

impl<S: Scalar> Tableau<S> {
    fn rhs(&self) -> usize {
        self.z.len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.z.len();
        let p = self.rows[r][c].clone();
        for j in 0..w {
            if !self.rows[r][j].is_zero() {
                self.rows[r][j] = self.rows[r][j].clone() / p.clone();
            }
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in 0..w {
                if !prow[j].is_zero() {
                    row[j] = row[j].clone() - f.clone() * prow[j].clone();
                }
            }
        }
        if !self.z[c].is_zero() {
            let f = self.z[c].clone();
            for j in 0..w {
                if !prow[j].is_zero() {
                    self.z[j] = self.z[j].clone() - f.clone() * prow[j].clone();
                }
            }
        }
        self.basis[r] = c;
    }

    /// Run simplex iterations with Bland's rule over columns `< limit`.
    /// Returns false when the objective is unbounded below.
    fn optimize(&mut self, limit: usize) -> bool {
        let tol = S::lp_tol();
        let neg_tol = -tol.clone();
        let rhs = self.rhs();
        loop {
            let entering = (0..limit).find(|&j| self.z[j] < neg_tol);
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, S)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c] > tol {
                    let ratio = row[rhs].clone() / row[c].clone();
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

/// Solve `min cᵀy s.t. Ay = b, y ≥ 0` by the two-phase method.
pub(crate) fn simplex_standard<S: Scalar>(a: &[Vec<S>], b: &[S], c: &[S]) -> StdOutcome<S> {
    let p = a.len();
    let n = c.len();
    debug_assert!(a.iter().all(|r| r.len() == n));
    let width = n + p + 1;
    let mut flip = vec![false; p];
    let mut rows = Vec::with_capacity(p);
    for i in 0..p {
        let neg = b[i] < S::zero();
        flip[i] = neg;
        let mut row = Vec::with_capacity(width);
        for j in 0..n {
            row.push(if neg { -a[i][j].clone() } else { a[i][j].clone() });
        }
        for k in 0..p {
            row.push(if k == i { S::one() } else { S::zero() });
        }
        row.push(if neg { -b[i].clone() } else { b[i].clone() });
        rows.push(row);
    }
    // phase one: minimize the sum of artificials
    let mut z = vec![S::zero(); width];
    for row in &rows {
        for j in 0..n {
            z[j] = z[j].clone() - row[j].clone();
        }
        z[width - 1] = z[width - 1].clone() - row[width - 1].clone();
    }
    let mut t = Tableau { rows, z, basis: (n..n + p).collect(), n };
    t.optimize(n);
    let rhs = t.rhs();
    let mut bscale = S::one();
    for bi in b {
        let v = bi.abs();
        if v > bscale {
            bscale = v;
        }
    }
    let infeas = -t.z[rhs].clone();
    if infeas > S::lp_tol() * bscale {
        return StdOutcome::Infeasible;
    }
    // push artificials out of the basis where possible
    for r in 0..p {
        if t.basis[r] >= n {
            if let Some(j) = (0..n).find(|&j| t.rows[r][j].abs() > S::lp_tol()) {
                t.pivot(r, j);
            }
        }
    }
    // phase two
    let mut z = vec![S::zero(); width];
    z[..n].clone_from_slice(c);
    for (r, row) in t.rows.iter().enumerate() {
        let bc = t.basis[r];
        let cb = if bc < n { c[bc].clone() } else { S::zero() };
        if cb.is_zero() {
            continue;
        }
        for j in 0..width {
            z[j] = z[j].clone() - cb.clone() * row[j].clone();
        }
    }
    t.z = z;
    if !t.optimize(t.n) {
        return StdOutcome::Unbounded;
    }
    let mut y = vec![S::zero(); n];
    for (r, row) in t.rows.iter().enumerate() {
        if t.basis[r] < n {
            y[t.basis[r]] = row[rhs].clone();
        }
    }
    let duals = (0..p)
        .map(|i| {
            let v = -t.z[n + i].clone();
            if flip[i] {
                -v
            } else {
                v
            }
        })
        .collect();
    StdOutcome::Optimal { y, duals, basis: t.basis.clone() }
}

/// Find `y ≥ 0` with `Ay = b`, if one exists.
pub fn feasible_standard<S: Scalar>(a: &[Vec<S>], b: &[S]) -> Option<Vec<S>> {
    let n = a.first().map_or(0, Vec::len);
    match simplex_standard(a, b, &vec![S::zero(); n]) {
        StdOutcome::Optimal { y, .. } => Some(y),
        _ => None,
    }
}

/// Basic columns of a feasible point of `{y ≥ 0 | Ay = b}` found in floating
/// point, for callers that certify the answer exactly afterwards. Columns at
/// or past `A`'s width are leftover artificials.
pub fn feasible_basis_f64(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<usize>> {
    let n = a.first().map_or(0, Vec::len);
    match simplex_standard(a, b, &vec![0.0; n]) {
        StdOutcome::Optimal { basis, .. } => Some(basis),
        _ => None,
    }
}

/// Maximize a linear objective over `{x | Gx ≤ h}`.
pub fn lp_solve<S: Scalar>(p: &LpProblem<S>) -> LpOutcome<S> {
    let d = p.objective.len();
    let k = p.g.len();
    assert_eq!(p.h.len(), k, "rhs length");
    // dual: min hᵀy, Gᵀy = c, y ≥ 0
    let gt: Vec<Vec<S>> = (0..d).map(|j| p.g.iter().map(|row| row[j].clone()).collect()).collect();
    match simplex_standard(&gt, &p.objective, &p.h) {
        StdOutcome::Optimal { duals, .. } => {
            let value = super::dot(&p.objective, &duals);
            LpOutcome::Optimal { x: duals, value }
        }
        StdOutcome::Unbounded => LpOutcome::Infeasible,
        StdOutcome::Infeasible => {
            // primal is infeasible or unbounded; Farkas: y ≥ 0, Gᵀy = 0, hᵀy = -1
            let mut a = gt;
            a.push(p.h.clone());
            let mut b = vec![S::zero(); d];
            b.push(-S::one());
            if feasible_standard(&a, &b).is_some() {
                LpOutcome::Infeasible
            } else {
                LpOutcome::Unbounded
            }
        }
    }
}

//! H-polytopes in the canonical form `{x | Ax ≤ 1}`.

use num_rational::BigRational;

use crate::numerics::{dot, lp_solve, solve_linear, LpOutcome, LpProblem, Scalar};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HrepError {
    #[error("polytope is empty or has no interior")]
    InfeasibleOrFlat,
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("row {row} has length {got}, expected {expected}")]
    Dimension { row: usize, got: usize, expected: usize },
    #[error("need at least one row and dimension at least 1")]
    Empty,
    #[error("the first d+1 rows do not form a bounded simplex")]
    NotASimplex,
}

/// `P = {x | Ax ≤ 1}` with the origin strictly inside.
#[derive(Debug, Clone, PartialEq)]
pub struct HPolytope<S> {
    rows: Vec<Vec<S>>,
    d: usize,
    simplex_prefix: bool,
}

impl<S: Scalar> HPolytope<S> {
    /// Wrap canonical rows. Boundedness is not checked here; see
    /// [`check_bounded`].
    pub fn new(rows: Vec<Vec<S>>) -> Result<Self, HrepError> {
        let d = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || d == 0 {
            return Err(HrepError::Empty);
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != d {
                return Err(HrepError::Dimension { row: i, got: r.len(), expected: d });
            }
        }
        Ok(HPolytope { rows, d, simplex_prefix: false })
    }

    /// Wrap rows whose first `d+1` entries are claimed to bound a simplex.
    /// The claim is verified.
    pub fn with_simplex_prefix(rows: Vec<Vec<S>>) -> Result<Self, HrepError> {
        let mut p = Self::new(rows)?;
        if !prefix_is_simplex(&p) {
            return Err(HrepError::NotASimplex);
        }
        p.simplex_prefix = true;
        Ok(p)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.rows[i]
    }

    pub fn simplex_prefix(&self) -> bool {
        self.simplex_prefix
    }

    /// `A_i x`.
    pub fn eval(&self, i: usize, x: &[S]) -> S {
        dot(&self.rows[i], x)
    }

    /// Largest `A_i x` over all rows.
    pub fn max_eval(&self, x: &[S]) -> S {
        let mut best = self.eval(0, x);
        for i in 1..self.m() {
            let v = self.eval(i, x);
            if v > best {
                best = v;
            }
        }
        best
    }

    /// `x ∈ factor · P`.
    pub fn contains_scaled(&self, x: &[S], factor: &S) -> bool {
        (0..self.m()).all(|i| self.eval(i, x) <= *factor)
    }

    pub fn contains(&self, x: &[S]) -> bool {
        self.contains_scaled(x, &S::one())
    }

    /// Same polytope over another backend, converted through exact rationals.
    pub fn convert<T: Scalar>(&self) -> HPolytope<T> {
        HPolytope {
            rows: self.rows.iter().map(|r| r.iter().map(|x| T::from_rational(&x.to_rational())).collect()).collect(),
            d: self.d,
            simplex_prefix: self.simplex_prefix,
        }
    }

    /// Append a row, keeping the prefix flag.
    pub fn with_row(&self, row: Vec<S>) -> Result<Self, HrepError> {
        if row.len() != self.d {
            return Err(HrepError::Dimension { row: self.m(), got: row.len(), expected: self.d });
        }
        let mut p = self.clone();
        p.rows.push(row);
        Ok(p)
    }

    /// Keep only the first `m` rows.
    pub fn truncated(&self, m: usize) -> Self {
        let mut p = self.clone();
        p.rows.truncate(m);
        p
    }
}

impl HPolytope<BigRational> {
    /// Exact lift of a float polytope, convenient for checks.
    pub fn from_f64_rows(rows: &[Vec<f64>]) -> Result<Self, HrepError> {
        Self::new(rows.iter().map(|r| r.iter().map(|&v| crate::numerics::rat(v)).collect()).collect())
    }
}

/// Maps canonical coordinates back to the input frame: `x = y + t`.
/// `row_scale[i]` is the positive right-hand side row `i` was divided by.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineTransform<S> {
    pub translation: Vec<S>,
    pub row_scale: Vec<S>,
}

impl<S: Scalar> AffineTransform<S> {
    pub fn identity(d: usize, m: usize) -> Self {
        AffineTransform { translation: vec![S::zero(); d], row_scale: vec![S::one(); m] }
    }

    pub fn to_original(&self, y: &[S]) -> Vec<S> {
        y.iter().zip(&self.translation).map(|(a, b)| a.clone() + b.clone()).collect()
    }

    pub fn to_canonical(&self, x: &[S]) -> Vec<S> {
        x.iter().zip(&self.translation).map(|(a, b)| a.clone() - b.clone()).collect()
    }
}

fn norm1<S: Scalar>(row: &[S]) -> S {
    row.iter().fold(S::zero(), |acc, x| acc + x.abs())
}

/// Bring `{x | A_raw x ≤ b_raw}` into canonical form.
///
/// The interior point is the centre of the largest inscribed cube
/// (`max r s.t. A_i x + r‖A_i‖₁ ≤ b_i`); the 1-norm keeps the LP rational.
pub fn canonical_form<S: Scalar>(
    a_raw: &[Vec<S>],
    b_raw: &[S],
) -> Result<(HPolytope<S>, AffineTransform<S>), HrepError> {
    let probe = HPolytope::new(a_raw.to_vec())?;
    let d = probe.d();
    assert_eq!(a_raw.len(), b_raw.len(), "rhs length");
    let mut g = Vec::with_capacity(a_raw.len());
    for row in a_raw {
        let mut r = row.clone();
        r.push(norm1(row));
        g.push(r);
    }
    let mut objective = vec![S::zero(); d];
    objective.push(S::one());
    let lp = LpProblem { objective, g, h: b_raw.to_vec() };
    let center = match lp_solve(&lp) {
        LpOutcome::Optimal { x, value } => {
            if value <= S::zero() {
                return Err(HrepError::InfeasibleOrFlat);
            }
            x[..d].to_vec()
        }
        LpOutcome::Infeasible => return Err(HrepError::InfeasibleOrFlat),
        LpOutcome::Unbounded => return Err(HrepError::Unbounded),
    };
    let mut rows = Vec::with_capacity(a_raw.len());
    let mut scale = Vec::with_capacity(a_raw.len());
    for (row, b) in a_raw.iter().zip(b_raw) {
        let rhs = b.clone() - dot(row, &center);
        if rhs <= S::zero() {
            return Err(HrepError::InfeasibleOrFlat);
        }
        rows.push(row.iter().map(|x| x.clone() / rhs.clone()).collect());
        scale.push(rhs);
    }
    let p = HPolytope::new(rows)?;
    check_bounded(&p)?;
    Ok((p, AffineTransform { translation: center, row_scale: scale }))
}

/// Axis-aligned bounding box `(lower, upper)` by `2d` LPs.
pub fn bounding_box<S: Scalar>(p: &HPolytope<S>) -> Result<(Vec<S>, Vec<S>), HrepError> {
    let d = p.d();
    let mut lo = Vec::with_capacity(d);
    let mut hi = Vec::with_capacity(d);
    for k in 0..d {
        for sign in [1i64, -1] {
            let mut objective = vec![S::zero(); d];
            objective[k] = S::from_i64(sign);
            let lp = LpProblem { objective, g: p.rows().to_vec(), h: vec![S::one(); p.m()] };
            match lp_solve(&lp) {
                LpOutcome::Optimal { value, .. } => {
                    if sign > 0 {
                        hi.push(value);
                    } else {
                        lo.push(-value);
                    }
                }
                LpOutcome::Unbounded => return Err(HrepError::Unbounded),
                LpOutcome::Infeasible => return Err(HrepError::InfeasibleOrFlat),
            }
        }
    }
    Ok((lo, hi))
}

/// A canonical polytope is bounded iff every coordinate is bounded both ways.
pub fn check_bounded<S: Scalar>(p: &HPolytope<S>) -> Result<(), HrepError> {
    bounding_box(p).map(|_| ())
}

fn prefix_is_simplex<S: Scalar>(p: &HPolytope<S>) -> bool {
    let d = p.d();
    if p.m() < d + 1 {
        return false;
    }
    let prefix = p.truncated(d + 1);
    if simplex_corners(&prefix, &S::one()).is_err() {
        return false;
    }
    check_bounded(&prefix).is_ok()
}

/// Points `u_j` with `A_i u_j = level` for all `i ≤ d, i ≠ j`.
pub(crate) fn simplex_corners<S: Scalar>(p: &HPolytope<S>, level: &S) -> Result<Vec<Vec<S>>, crate::numerics::Singular> {
    let d = p.d();
    (0..=d)
        .map(|j| {
            let m: Vec<Vec<S>> = (0..=d).filter(|&i| i != j).map(|i| p.row(i).to_vec()).collect();
            solve_linear(&m, &vec![level.clone(); d])
        })
        .collect()
}

/// Prefix `P` with `d+1` redundant rows bounding a simplex around it.
///
/// The simplex is `{x_i ≥ l_i − margin, Σx ≤ Σu_i + margin}` for the bounding
/// box `[l, u]`, with `margin` a tenth of the box diagonal (rounded up to a
/// multiple of 1/1024 so it stays a short rational).
pub fn prepend_bounding_simplex<S: Scalar>(p: &HPolytope<S>) -> Result<HPolytope<S>, HrepError> {
    if p.simplex_prefix() {
        return Ok(p.clone());
    }
    let d = p.d();
    let (lo, hi) = bounding_box(p)?;
    let diag: f64 = lo.iter().zip(&hi).map(|(l, u)| (u.to_f64() - l.to_f64()).powi(2)).sum::<f64>().sqrt();
    let ticks = ((0.1 * diag * 1024.0).ceil() as i64).max(1);
    let margin = S::from_ratio(ticks, 1024);
    let mut rows = Vec::with_capacity(p.m() + d + 1);
    for (i, l) in lo.iter().enumerate() {
        let rhs = margin.clone() - l.clone();
        let mut row = vec![S::zero(); d];
        row[i] = -S::one() / rhs;
        rows.push(row);
    }
    let upper = hi.iter().fold(S::zero(), |acc, u| acc + u.clone()) + margin;
    rows.push(vec![S::one() / upper; d]);
    rows.extend(p.rows().iter().cloned());
    let mut out = HPolytope::new(rows)?;
    out.simplex_prefix = true;
    Ok(out)
}

/// Comparison used by [`index_set`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Gt,
    Ge,
    Eq,
    Ne,
    Lt,
    Le,
}

/// `J_rel(u) = {i | A_i u rel 1}`, zero-based row indices in increasing order.
pub fn index_set<S: Scalar>(p: &HPolytope<S>, u: &[S], rel: Rel) -> Vec<usize> {
    let one = S::one();
    (0..p.m())
        .filter(|&i| {
            let v = p.eval(i, u);
            match rel {
                Rel::Gt => v > one,
                Rel::Ge => v >= one,
                Rel::Eq => v == one,
                Rel::Ne => v != one,
                Rel::Lt => v < one,
                Rel::Le => v <= one,
            }
        })
        .collect()
}

/// `δ² = 1 / max_i ‖A_i‖²`, exact under the rational backend.
pub fn inradius_sq<S: Scalar>(p: &HPolytope<S>) -> S {
    let mut best = S::zero();
    for r in p.rows() {
        let n = dot(r, r);
        if n > best {
            best = n;
        }
    }
    S::one() / best
}

/// `δ = 1 / max_i ‖A_i‖`. Row norms are irrational in general, so this is a
/// float even for exact polytopes; use [`inradius_sq`] for exact comparisons.
pub fn inradius<S: Scalar>(p: &HPolytope<S>) -> f64 {
    inradius_sq(p).to_f64().sqrt()
}

/// `factor · P`, i.e. rows divided by `factor`.
pub fn scale<S: Scalar>(p: &HPolytope<S>, factor: &S) -> HPolytope<S> {
    HPolytope {
        rows: p.rows.iter().map(|r| r.iter().map(|x| x.clone() / factor.clone()).collect()).collect(),
        d: p.d,
        simplex_prefix: p.simplex_prefix,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;

    fn q(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&v| ratio(v, 1)).collect()).collect()
    }

    fn cube_rows(d: usize) -> Vec<Vec<BigRational>> {
        let mut rows = Vec::new();
        for i in 0..d {
            for s in [1, -1] {
                let mut r = vec![ratio(0, 1); d];
                r[i] = ratio(s, 1);
                rows.push(r);
            }
        }
        rows
    }

    #[test]
    fn canonical_cube_is_fixed() {
        let rows = cube_rows(3);
        let (p, t) = canonical_form(&rows, &vec![ratio(1, 1); 6]).unwrap();
        assert_eq!(p.rows(), &rows[..]);
        assert_eq!(t.translation, vec![ratio(0, 1); 3]);
    }

    #[test]
    fn square_is_recentred() {
        let a = q(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        let b = vec![ratio(2, 1), ratio(0, 1), ratio(2, 1), ratio(0, 1)];
        let (p, t) = canonical_form(&a, &b).unwrap();
        assert_eq!(t.translation, vec![ratio(1, 1), ratio(1, 1)]);
        assert_eq!(p.rows(), &a[..]);
        assert_eq!(t.to_original(&[ratio(0, 1), ratio(0, 1)]), vec![ratio(1, 1), ratio(1, 1)]);
    }

    #[test]
    fn half_space_is_unbounded() {
        let a = q(&[&[1, 0]]);
        assert_eq!(canonical_form(&a, &[ratio(1, 1)]), Err(HrepError::Unbounded));
        let slab = q(&[&[1, 0], &[-1, 0]]);
        assert_eq!(canonical_form(&slab, &[ratio(1, 1), ratio(1, 1)]), Err(HrepError::Unbounded));
    }

    #[test]
    fn flat_and_empty_are_rejected() {
        let a = q(&[&[1], &[-1]]);
        assert_eq!(canonical_form(&a, &[ratio(0, 1), ratio(0, 1)]), Err(HrepError::InfeasibleOrFlat));
        assert_eq!(canonical_form(&a, &[ratio(-1, 1), ratio(0, 1)]), Err(HrepError::InfeasibleOrFlat));
    }

    #[test]
    fn triangle_prefix_contains_vertices() {
        let p = HPolytope::new(q(&[&[-1, 0], &[0, -1], &[1, 1]])).unwrap();
        let s = prepend_bounding_simplex(&p).unwrap();
        assert!(s.simplex_prefix());
        assert_eq!(s.m(), 6);
        assert_eq!(&s.rows()[3..], p.rows());
        let prefix = s.truncated(3);
        for v in [[-1, -1], [-1, 2], [2, -1]] {
            let v = [ratio(v[0], 1), ratio(v[1], 1)];
            assert!(prefix.max_eval(&v) < ratio(1, 1), "strictly inside");
        }
        let again = prepend_bounding_simplex(&s).unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn declared_prefix_is_validated() {
        assert!(HPolytope::with_simplex_prefix(q(&[&[-2, 0], &[0, -2], &[1, 1]])).is_ok());
        assert_eq!(
            HPolytope::with_simplex_prefix(q(&[&[1, 0], &[0, 1], &[1, 1]])),
            Err(HrepError::NotASimplex)
        );
    }

    #[test]
    fn index_sets_and_origin() {
        let p = HPolytope::new(cube_rows(2)).unwrap();
        let corner = [ratio(1, 1), ratio(-1, 1)];
        assert_eq!(index_set(&p, &corner, Rel::Eq), vec![0, 3]);
        assert_eq!(index_set(&p, &[ratio(0, 1), ratio(0, 1)], Rel::Eq), Vec::<usize>::new());
        assert_eq!(index_set(&p, &corner, Rel::Lt), vec![1, 2]);
    }

    #[test]
    fn inradius_and_scale() {
        let p = HPolytope::new(cube_rows(3)).unwrap();
        assert_eq!(inradius_sq(&p), ratio(1, 1));
        let two = scale(&p, &ratio(2, 1));
        assert!(two.contains(&[ratio(2, 1), ratio(-2, 1), ratio(2, 1)]));
        assert_eq!(inradius_sq(&two), ratio(4, 1));
        assert_eq!(scale(&p, &ratio(1, 1)), p);
    }
}

//! Test and experiment instances, all exact and already canonical.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exec::{self, Execution};
use crate::hrep::{check_bounded, HPolytope, HrepError};
use crate::numerics::{cross3, dot, lp_solve, ratio, LpOutcome, LpProblem};
use crate::verify::{brute_force_vertices, facets_of_points, VerifyError};

type Q = BigRational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GenError {
    #[error("generators do not span the space")]
    DegenerateGenerators,
    #[error("unsupported dimension {0}")]
    Dimension(usize),
    #[error("no bounded instance after {0} draws")]
    Unlucky(usize),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Hrep(#[from] HrepError),
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub poly: HPolytope<Q>,
    /// Exact vertex list when known in closed form, sorted.
    pub vertices: Option<Vec<Vec<Q>>>,
    pub note: String,
}

impl Fixture {
    fn new(name: impl Into<String>, rows: Vec<Vec<Q>>, vertices: Option<Vec<Vec<Q>>>, note: &str) -> Result<Self, GenError> {
        let poly = HPolytope::new(rows)?;
        let vertices = vertices.map(|mut v| {
            v.sort();
            v
        });
        Ok(Fixture { name: name.into(), poly, vertices, note: note.to_string() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Standard {
    Simplex,
    Cube,
    Crosspolytope,
    BallTangent { m: usize, seed: u64 },
}

fn q(n: i64) -> Q {
    ratio(n, 1)
}

fn unit(d: usize, i: usize, s: i64) -> Vec<Q> {
    (0..d).map(|k| if k == i { q(s) } else { Q::zero() }).collect()
}

fn sign_vectors(d: usize) -> Vec<Vec<Q>> {
    (0..1u32 << d).map(|mask| (0..d).map(|k| q(if mask >> k & 1 == 1 { -1 } else { 1 })).collect()).collect()
}

pub fn standard(kind: Standard, d: usize) -> Result<Fixture, GenError> {
    if d < 2 {
        return Err(GenError::Dimension(d));
    }
    match kind {
        Standard::Simplex => {
            let mut rows: Vec<Vec<Q>> = (0..d).map(|i| unit(d, i, -1)).collect();
            rows.push(vec![Q::one(); d]);
            let verts = (0..=d)
                .map(|j| (0..d).map(|i| if j < d && i == j { q(d as i64) } else { q(-1) }).collect())
                .collect();
            Fixture::new(format!("simplex{d}"), rows, Some(verts), "x_i >= -1, sum x <= 1")
        }
        Standard::Cube => {
            let rows = (0..d).flat_map(|i| [unit(d, i, 1), unit(d, i, -1)]).collect();
            Fixture::new(format!("cube{d}"), rows, Some(sign_vectors(d)), "[-1,1]^d")
        }
        Standard::Crosspolytope => {
            let verts = (0..d).flat_map(|i| [unit(d, i, 1), unit(d, i, -1)]).collect();
            Fixture::new(format!("cross{d}"), sign_vectors(d), Some(verts), "unit 1-norm ball")
        }
        Standard::BallTangent { m, seed } => ball_tangent(d, m, seed),
    }
}

/// Rational point on the unit sphere by inverse stereographic projection.
fn sphere_point(rng: &mut ChaCha8Rng, d: usize) -> Vec<Q> {
    let mut t = || ratio(rng.gen_range(-96..=96), 32);
    match d {
        2 => {
            let s = t();
            let den = Q::one() + &s * &s;
            vec![(Q::one() - &s * &s) / &den, (q(2) * &s) / &den]
        }
        _ => {
            let (a, b) = (t(), t());
            let n2 = &a * &a + &b * &b;
            let den = &n2 + Q::one();
            vec![q(2) * &a / &den, q(2) * &b / &den, (n2 - Q::one()) / &den]
        }
    }
}

/// `m` tangent planes of the unit ball at random rational points.
fn ball_tangent(d: usize, m: usize, seed: u64) -> Result<Fixture, GenError> {
    if !(2..=3).contains(&d) {
        return Err(GenError::Dimension(d));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const DRAWS: usize = 200;
    for _ in 0..DRAWS {
        let mut seen = BTreeSet::new();
        let mut rows = Vec::with_capacity(m);
        while rows.len() < m.max(d + 1) {
            let u = sphere_point(&mut rng, d);
            if seen.insert(u.clone()) {
                rows.push(u);
            }
        }
        let p = HPolytope::new(rows.clone())?;
        if check_bounded(&p).is_ok() {
            return Fixture::new(format!("ball{d}_{m}_{seed}"), rows, None, "tangent planes of the unit ball");
        }
    }
    Err(GenError::Unlucky(DRAWS))
}

/// Scale a nonzero vector so its first nonzero entry is one.
fn direction_key(n: &[Q]) -> Option<Vec<Q>> {
    let lead = n.iter().find(|x| !x.is_zero())?.clone();
    Some(n.iter().map(|x| x / &lead).collect())
}

/// Support value `Σ|n·g|` of the centred zonotope with generators `g`.
pub fn zonotope_support(gens: &[Vec<Q>], n: &[Q]) -> Q {
    gens.iter().map(|g| dot(n, g).abs()).fold(Q::zero(), |a, b| a + b)
}

/// Centred zonotope `Σ[-g_k, g_k]` in three dimensions.
pub fn zonotope3(gens: &[Vec<Q>]) -> Result<Fixture, GenError> {
    if gens.iter().any(|g| g.len() != 3) {
        return Err(GenError::Dimension(gens.first().map_or(0, Vec::len)));
    }
    let mut normals = BTreeSet::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if let Some(k) = direction_key(&cross3(a, b)) {
                normals.insert(k);
            }
        }
    }
    let mut rows = Vec::with_capacity(2 * normals.len());
    for n in normals {
        let h = zonotope_support(gens, &n);
        if h.is_zero() {
            return Err(GenError::DegenerateGenerators);
        }
        let r: Vec<Q> = n.iter().map(|x| x / &h).collect();
        rows.push(r.iter().map(|x| -x).collect());
        rows.push(r);
    }
    if rows.is_empty() {
        return Err(GenError::DegenerateGenerators);
    }
    let p = HPolytope::new(rows.clone())?;
    check_bounded(&p).map_err(|_| GenError::DegenerateGenerators)?;
    Fixture::new(format!("zonotope{}", gens.len()), rows, None, "centred zonotope")
}

/// The 13 directions of `{-1,0,1}³ \ {0}` up to sign.
pub fn grid_generators() -> Vec<Vec<Q>> {
    let mut out = Vec::new();
    for a in -1..=1 {
        for b in -1..=1 {
            for c in -1..=1 {
                let v = [a, b, c];
                if v.iter().find(|&&x| x != 0) == Some(&1) {
                    out.push(v.iter().map(|&x| q(x)).collect());
                }
            }
        }
    }
    out
}

/// The small three-dimensional instance on which a single basic cut loses
/// the covering property, with reference data for comparison. Rows and
/// points are numbered from 1 in the sets below.
#[derive(Debug, Clone)]
pub struct CutExample {
    pub delta: Q,
    pub eps: Q,
    pub p: HPolytope<Q>,
    /// `p` with the cut row appended.
    pub p_cut: HPolytope<Q>,
    pub h: Vec<Q>,
    /// `{v2, u3, …, u7}`.
    pub v: Vec<Vec<Q>>,
    /// `u1..u12`; `u2` and `u5` are cut off, the last five are new.
    pub u: Vec<Vec<Q>>,
    /// Reference new points on `[v2,u3]` and `[v2,u4]`, on the plane `hᵀx = 1`.
    pub v9: Vec<Q>,
    pub v10: Vec<Q>,
    pub j_eq: Vec<Vec<usize>>,
    pub j_ge_v2: Vec<usize>,
    pub j_ge_v9: Vec<usize>,
    pub j_ge_v10: Vec<usize>,
}

impl CutExample {
    /// Vertices of `p`, `u1..u7`.
    pub fn p_vertices(&self) -> Vec<Vec<Q>> {
        self.u[..7].to_vec()
    }

    /// Vertices of `p_cut`.
    pub fn p_cut_vertices(&self) -> Vec<Vec<Q>> {
        [0, 2, 3, 5, 6, 7, 8, 9, 10, 11].iter().map(|&i| self.u[i].clone()).collect()
    }
}

pub fn example_a2() -> CutExample {
    let delta = ratio(1, 10);
    let od = Q::one() + &delta;
    let a = &delta / &od;
    let b = Q::one() / &od;
    let z = Q::zero;
    let rows = vec![
        vec![a.clone(), a.clone(), b.clone()],
        vec![-a.clone(), z(), b.clone()],
        vec![z(), -a.clone(), b],
        vec![q(1), q(1), z()],
        vec![q(-1), z(), z()],
        vec![z(), q(-1), z()],
        vec![z(), z(), q(-1)],
    ];
    let h = vec![q(-4), q(-4), z()];
    let p = HPolytope::new(rows.clone()).expect("three columns");
    let mut cut_rows = rows;
    cut_rows.push(h.clone());
    let p_cut = HPolytope::new(cut_rows).expect("three columns");
    let pt = |x: Q, y: Q, w: Q| vec![x, y, w];
    let one = Q::one;
    let u = vec![
        pt(z(), z(), &od * one()),
        pt(q(-1), q(-1), one()),
        pt(q(-1), q(2), one()),
        pt(q(2), q(-1), one()),
        pt(q(-1), q(-1), q(-1)),
        pt(q(-1), q(2), q(-1)),
        pt(q(2), q(-1), q(-1)),
        pt(ratio(-1, 8), ratio(-1, 8), one() + ratio(7, 8) * &delta),
        pt(q(-1), ratio(3, 4), one()),
        pt(ratio(3, 4), q(-1), one()),
        pt(q(-1), ratio(3, 4), q(-1)),
        pt(ratio(3, 4), q(-1), q(-1)),
    ];
    let mut v = vec![pt(q(-1), q(-1), one() + q(3) * &delta)];
    v.extend(u[2..7].iter().cloned());
    let v9 = pt(q(-1), ratio(3, 4), one() + ratio(5, 4) * &delta);
    let v10 = pt(ratio(3, 4), q(-1), one() + ratio(5, 4) * &delta);
    let j_eq = vec![
        vec![1, 2, 3],
        vec![2, 3, 5, 6],
        vec![1, 2, 4, 5],
        vec![1, 3, 4, 6],
        vec![5, 6, 7],
        vec![4, 5, 7],
        vec![4, 6, 7],
        vec![2, 3, 8],
        vec![2, 5, 8],
        vec![3, 6, 8],
        vec![5, 7, 8],
        vec![6, 7, 8],
    ];
    CutExample {
        eps: q(3) * &delta,
        delta,
        p,
        p_cut,
        h,
        v,
        u,
        v9,
        v10,
        j_eq,
        j_ge_v2: vec![1, 2, 3, 5, 6],
        j_ge_v9: vec![1, 2, 5, 8],
        j_ge_v10: vec![1, 3, 6, 8],
    }
}

/// Regular tetrahedron centred at the origin with edge length close to one.
/// The exact scale `1/(2√2)` is irrational; `99/280` is a continued fraction
/// convergent of it, giving edge length `1 ± 6e-5`.
pub fn regular_simplex3() -> Fixture {
    let s = ratio(99, 280);
    let verts: Vec<Vec<Q>> = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]
        .iter()
        .map(|v| v.iter().map(|&x| q(x) * &s).collect())
        .collect();
    let p = facets_of_points(&verts).expect("four affinely independent points");
    let mut verts = verts;
    verts.sort();
    Fixture { name: "tetra".into(), poly: p, vertices: Some(verts), note: "regular simplex".into() }
}

/// Whether some direction is maximised uniquely at `a` over `pa` and at
/// `b` over `pb`; `a + b` is then a vertex of the Minkowski sum.
fn jointly_exposed(pa: &[Vec<Q>], a: &[Q], pb: &[Vec<Q>], b: &[Q]) -> bool {
    let d = a.len();
    let mut g = Vec::new();
    for (set, x) in [(pa, a), (pb, b)] {
        for y in set.iter().filter(|y| y.as_slice() != x) {
            let mut row: Vec<Q> = y.iter().zip(x).map(|(s, t)| s - t).collect();
            row.push(Q::one());
            g.push(row);
        }
    }
    let mut h = vec![Q::zero(); g.len()];
    for k in 0..=d {
        for s in [1, -1] {
            let mut row = vec![Q::zero(); d + 1];
            row[k] = q(s);
            g.push(row);
            h.push(Q::one());
        }
    }
    let mut objective = vec![Q::zero(); d];
    objective.push(Q::one());
    match lp_solve(&LpProblem { objective, g, h }) {
        LpOutcome::Optimal { value, .. } => value.is_positive(),
        _ => false,
    }
}

/// Vertices of `conv(A) + conv(B)` given the vertex lists of both.
pub fn minkowski_vertices(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let pairs: Vec<(usize, usize)> = (0..a.len()).flat_map(|i| (0..b.len()).map(move |j| (i, j))).collect();
    let keep = exec::map(Execution::default(), &pairs, |&(i, j)| jointly_exposed(a, &a[i], b, &b[j]));
    let mut out: Vec<Vec<Q>> = pairs
        .iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(&(i, j), _)| a[i].iter().zip(&b[j]).map(|(s, t)| s + t).collect())
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `P₀` the regular simplex and `P_i = P_{i-1} + P_{i-1}°`, for `i ≤ k`.
pub fn polar_minkowski_seq(k: usize) -> Result<Vec<Fixture>, GenError> {
    let mut out = vec![regular_simplex3()];
    for i in 1..=k {
        let prev = &out[i - 1];
        let verts = match &prev.vertices {
            Some(v) => v.clone(),
            None => brute_force_vertices(&prev.poly)?,
        };
        // the polar of {Ax ≤ 1} is the hull of the rows of A
        let sum = minkowski_vertices(&verts, prev.poly.rows());
        let poly = facets_of_points(&sum)?;
        out.push(Fixture { name: format!("pm{i}"), poly, vertices: Some(sum), note: "polar Minkowski step".into() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_vertices_are_tight() {
        for d in [2, 3] {
            let f = standard(Standard::Simplex, d).unwrap();
            assert_eq!(brute_force_vertices(&f.poly).unwrap(), f.vertices.unwrap());
        }
    }

    #[test]
    fn thirteen_directions() {
        let g = grid_generators();
        assert_eq!(g.len(), 13);
        let set: BTreeSet<_> = g.iter().cloned().collect();
        assert_eq!(set.len(), 13);
    }

    #[test]
    fn ball_tangent_is_deterministic() {
        let a = standard(Standard::BallTangent { m: 12, seed: 4 }, 3).unwrap();
        let b = standard(Standard::BallTangent { m: 12, seed: 4 }, 3).unwrap();
        assert_eq!(a.poly, b.poly);
        assert_eq!(a.poly.m(), 12);
    }
}

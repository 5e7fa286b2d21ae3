//! Crossing-parity counters for plane graphs with coordinates.
//!
//! In the plane, `N(f,r)` counts walk segments of face `f` meeting the ray
//! `ℝ₊r`. In space, `N(f,r,a)` counts walk segments meeting the half-plane
//! `ℝr + ℝ₊a`. All predicates are exact: coordinates are brought to integer
//! homogeneous form so only signs of integer expressions are compared.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dcel::{FaceId, PlaneGraph};
use crate::numerics::dot;

use super::VerifyError;

/// Per-face crossing counts and the total over the counted faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingCount {
    pub per_face: Vec<(FaceId, usize)>,
    /// Sum over valid faces (plane) or over faces with `A_κ r > 0` (space).
    pub total: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParityStats {
    pub probes: usize,
    pub resamples: usize,
    pub a_checks: usize,
}

/// Coordinates scaled to integers; signs of the predicates below are
/// invariant under positive scaling of each point.
fn integer_point(c: &[BigRational]) -> Vec<BigInt> {
    let den = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    c.iter().map(|x| x.numer() * (&den / x.denom())).collect()
}

fn sign(x: &BigInt) -> i8 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

fn idot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn icross(a: &[BigInt], b: &[BigInt]) -> [BigInt; 3] {
    [&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]]
}

/// Count segments `[p,q]` meeting the ray (or half-plane) given per-vertex
/// side values `s` and along-ray values `t`: a crossing needs opposite
/// nonzero sides and a nonnegative position of the crossing point, whose sign
/// is `sign(s_p t_q − s_q t_p) · sign(s_p)`.
fn count_face(
    g: &PlaneGraph,
    f: FaceId,
    side: &[Option<(BigInt, BigInt)>],
) -> Result<usize, VerifyError> {
    let mut n = 0;
    for walk in g.bounding_walks(f) {
        for h in walk {
            let (p, q) = (g.origin(h), g.dest(h));
            let (sp, tp) = side[p].as_ref().expect("live vertex");
            let (sq, tq) = side[q].as_ref().expect("live vertex");
            let (a, b) = (sign(sp), sign(sq));
            if a == 0 || b == 0 {
                return Err(VerifyError::DegenerateDirection);
            }
            if a == b {
                continue;
            }
            let val = sign(&(sp * tq - sq * tp)) * a;
            if val == 0 {
                return Err(VerifyError::DegenerateDirection);
            }
            if val > 0 {
                n += 1;
            }
        }
    }
    Ok(n)
}

fn side_table(
    g: &PlaneGraph,
    pts: &[Option<Vec<BigInt>>],
    f: impl Fn(&[BigInt]) -> (BigInt, BigInt),
) -> Vec<Option<(BigInt, BigInt)>> {
    let mut out = vec![None; pts.len()];
    for v in g.alive_vertices() {
        out[v] = pts[v].as_deref().map(&f);
    }
    out
}

fn integer_points(g: &PlaneGraph, coords: &[Vec<BigRational>]) -> Vec<Option<Vec<BigInt>>> {
    let mut out = vec![None; coords.len()];
    for v in g.alive_vertices() {
        out[v] = Some(integer_point(&coords[v]));
    }
    out
}

fn to_int(r: &[BigRational]) -> Vec<BigInt> {
    integer_point(r)
}

/// Plane case: `N(f,r)` for every live face, total over valid faces.
pub fn crossing_count_2d(g: &PlaneGraph, coords: &[Vec<BigRational>], r: &[BigRational]) -> Result<CrossingCount, VerifyError> {
    let pts = integer_points(g, coords);
    count_2d(g, &pts, &to_int(r))
}

fn count_2d(g: &PlaneGraph, pts: &[Option<Vec<BigInt>>], r: &[BigInt]) -> Result<CrossingCount, VerifyError> {
    let side = side_table(g, pts, |c| (&r[0] * &c[1] - &r[1] * &c[0], idot(r, c)));
    if g.alive_vertices().iter().any(|&v| side[v].as_ref().is_some_and(|(s, _)| s.is_zero())) {
        return Err(VerifyError::DegenerateDirection);
    }
    let mut per_face = Vec::new();
    let mut total = 0;
    for f in g.alive_faces() {
        let n = count_face(g, f, &side)?;
        if g.face(f).valid {
            total += n;
        }
        per_face.push((f, n));
    }
    Ok(CrossingCount { per_face, total })
}

/// Space case: `N(f,r,a)` for every live face, total over faces whose label
/// row has `A_κ r > 0`.
pub fn crossing_count_3d(
    g: &PlaneGraph,
    coords: &[Vec<BigRational>],
    rows: &[Vec<BigRational>],
    r: &[BigRational],
    a: &[BigRational],
) -> Result<CrossingCount, VerifyError> {
    let pts = integer_points(g, coords);
    count_3d(g, &pts, rows, &to_int(r), &to_int(a))
}

fn count_3d(
    g: &PlaneGraph,
    pts: &[Option<Vec<BigInt>>],
    rows: &[Vec<BigRational>],
    r: &[BigInt],
    a: &[BigInt],
) -> Result<CrossingCount, VerifyError> {
    let n = icross(r, a);
    if n.iter().all(Zero::is_zero) {
        return Err(VerifyError::DegenerateDirection);
    }
    let b = icross(&n, r);
    let side = side_table(g, pts, |c| (idot(&n, c), idot(&b, c)));
    if g.alive_vertices().iter().any(|&v| side[v].as_ref().is_some_and(|(s, _)| s.is_zero())) {
        return Err(VerifyError::DegenerateDirection);
    }
    let rq: Vec<BigRational> = r.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let mut per_face = Vec::new();
    let mut total = 0;
    for f in g.alive_faces() {
        let cnt = count_face(g, f, &side)?;
        if let Some(k) = g.face(f).kappa {
            let s = dot(&rows[k], &rq);
            if s.is_zero() {
                return Err(VerifyError::DegenerateDirection);
            }
            if s.is_positive() {
                total += cnt;
            }
        }
        per_face.push((f, cnt));
    }
    Ok(CrossingCount { per_face, total })
}

const RANGE: i64 = 1 << 20;
const RETRIES: usize = 64;
const RESEEDS: u64 = 8;

fn random_vec(rng: &mut ChaCha8Rng, d: usize) -> Vec<BigInt> {
    (0..d).map(|_| BigInt::from(rng.gen_range(-RANGE..=RANGE))).collect()
}

/// Draw until `f` accepts, with bounded retries and reseeding.
fn sample<T>(
    seed: u64,
    rng: &mut ChaCha8Rng,
    stats: &mut ParityStats,
    mut f: impl FnMut(&mut ChaCha8Rng) -> Result<T, VerifyError>,
) -> Result<T, String> {
    for round in 0..RESEEDS {
        for _ in 0..RETRIES {
            match f(rng) {
                Ok(t) => return Ok(t),
                Err(VerifyError::DegenerateDirection) => stats.resamples += 1,
                Err(e) => return Err(e.to_string()),
            }
        }
        *rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(round + 1).wrapping_mul(0x2545_f491_4f6c_dd1d));
    }
    Err("no nondegenerate direction found".into())
}

/// `probes` random directions; each total over valid faces must be odd.
pub fn check_parity_2d(g: &PlaneGraph, coords: &[Vec<BigRational>], probes: usize, seed: u64) -> Result<ParityStats, String> {
    let pts = integer_points(g, coords);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = ParityStats::default();
    for _ in 0..probes {
        let (r, c) = sample(seed, &mut rng, &mut stats, |rng| {
            let r = random_vec(rng, 2);
            count_2d(g, &pts, &r).map(|c| (r, c))
        })?;
        stats.probes += 1;
        if c.total % 2 == 0 {
            return Err(format!("direction {r:?} crosses valid faces {} times", c.total));
        }
    }
    Ok(stats)
}

/// `probes` random pairs `(r, a)`; each total over `F(r)` must be odd. For
/// the first few probes a second `a` is drawn and per-face parities compared.
pub fn check_parity_3d(
    g: &PlaneGraph,
    coords: &[Vec<BigRational>],
    rows: &[Vec<BigRational>],
    probes: usize,
    seed: u64,
) -> Result<ParityStats, String> {
    let pts = integer_points(g, coords);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = ParityStats::default();
    for k in 0..probes {
        let (r, c) = sample(seed, &mut rng, &mut stats, |rng| {
            let r = random_vec(rng, 3);
            let a = random_vec(rng, 3);
            count_3d(g, &pts, rows, &r, &a).map(|c| (r, c))
        })?;
        stats.probes += 1;
        if c.total % 2 == 0 {
            return Err(format!("pair with r = {r:?} crosses F(r) {} times", c.total));
        }
        if k < 8 {
            let c2 = sample(seed ^ 0xa11, &mut rng, &mut stats, |rng| count_3d(g, &pts, rows, &r, &random_vec(rng, 3)))?;
            stats.a_checks += 1;
            for ((f, n1), (_, n2)) in c.per_face.iter().zip(&c2.per_face) {
                if n1 % 2 != n2 % 2 {
                    return Err(format!("face {f}: parity depends on the half-plane ({n1} vs {n2})"));
                }
            }
        }
    }
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;

    fn triangle_coords() -> Vec<Vec<BigRational>> {
        vec![vec![ratio(-1, 1), ratio(-1, 1)], vec![ratio(2, 1), ratio(-1, 1)], vec![ratio(-1, 1), ratio(2, 1)]]
    }

    #[test]
    fn triangle_counts_one() {
        let g = PlaneGraph::init_complete(2);
        let c = crossing_count_2d(&g, &triangle_coords(), &[ratio(3, 1), ratio(1, 1)]).unwrap();
        assert_eq!(c.total, 1);
        check_parity_2d(&g, &triangle_coords(), 32, 1).unwrap();
    }

    #[test]
    fn vertex_on_ray_is_degenerate() {
        let g = PlaneGraph::init_complete(2);
        let r = [ratio(1, 1), ratio(1, 1)];
        assert_eq!(crossing_count_2d(&g, &triangle_coords(), &r), Err(VerifyError::DegenerateDirection));
    }

    #[test]
    fn tetrahedron_parity() {
        let g = PlaneGraph::init_complete(3);
        // corners of {x : A x ≤ 1} with A = [[-1,0,0],[0,-1,0],[0,0,-1],[1,1,1]/3]
        let rows = vec![
            vec![ratio(-1, 1), ratio(0, 1), ratio(0, 1)],
            vec![ratio(0, 1), ratio(-1, 1), ratio(0, 1)],
            vec![ratio(0, 1), ratio(0, 1), ratio(-1, 1)],
            vec![ratio(1, 3), ratio(1, 3), ratio(1, 3)],
        ];
        let coords = vec![
            vec![ratio(5, 1), ratio(-1, 1), ratio(-1, 1)],
            vec![ratio(-1, 1), ratio(5, 1), ratio(-1, 1)],
            vec![ratio(-1, 1), ratio(-1, 1), ratio(5, 1)],
            vec![ratio(-1, 1), ratio(-1, 1), ratio(-1, 1)],
        ];
        let s = check_parity_3d(&g, &coords, &rows, 32, 9).unwrap();
        assert_eq!(s.probes, 32);
        assert_eq!(s.a_checks, 8);
    }
}

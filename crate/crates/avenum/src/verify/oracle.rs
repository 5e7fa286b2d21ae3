//! Exact brute-force vertex enumeration.
//!
//! Every `d`-subset of rows is solved by Cramer's rule over integers (rows are
//! scaled to integer vectors first), which is far cheaper than rational
//! elimination. Arithmetic runs in checked `i128` and restarts in `BigInt`
//! if anything overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exec::{self, Execution};
use crate::hrep::HPolytope;

use super::VerifyError;

/// Subset-count limit for the oracle.
pub const ORACLE_LIMIT: u128 = 2_000_000;

/// `C(n, k)` without overflow for the sizes used here.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

trait Ring: Clone + Send + Sync + Sized {
    fn zero() -> Self;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div_exact(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
}

impl Ring for i128 {
    fn zero() -> Self {
        0
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        self.checked_div(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
}

/// Row `i` as `n_i · x ≤ b_i` with coprime integers and `b_i > 0`.
pub(crate) fn integer_rows(p: &HPolytope<BigRational>) -> Vec<(Vec<BigInt>, BigInt)> {
    p.rows()
        .iter()
        .map(|row| {
            let mut l = BigInt::one();
            for x in row {
                l = l.lcm(x.denom());
            }
            let n: Vec<BigInt> = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
            let mut g = l.clone();
            for v in &n {
                g = g.gcd(v);
            }
            (n.into_iter().map(|v| v / &g).collect(), l / g)
        })
        .collect()
}

/// Bareiss determinant.
fn det<R: Ring>(mut m: Vec<Vec<R>>) -> Option<R> {
    let n = m.len();
    let mut sign_flip = false;
    let mut prev = R::from_big(&BigInt::one())?;
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Some(R::zero());
            };
            m.swap(k, s);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].mul(&m[k][k])?;
                let b = m[i][k].mul(&m[k][j])?;
                m[i][j] = a.sub(&b)?.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        d.neg()
    } else {
        Some(d)
    }
}

struct IntSystem<R> {
    n: Vec<Vec<R>>,
    b: Vec<R>,
}

impl<R: Ring> IntSystem<R> {
    fn new(rows: &[(Vec<BigInt>, BigInt)]) -> Option<Self> {
        let mut n = Vec::with_capacity(rows.len());
        let mut b = Vec::with_capacity(rows.len());
        for (row, rhs) in rows {
            n.push(row.iter().map(R::from_big).collect::<Option<Vec<_>>>()?);
            b.push(R::from_big(rhs)?);
        }
        Some(IntSystem { n, b })
    }

    /// `Ok(None)` for singular or infeasible subsets, `Err(())` on overflow.
    fn vertex_of(&self, subset: &[usize]) -> Result<Option<(Vec<R>, R)>, ()> {
        let d = subset.len();
        let base: Vec<Vec<R>> = subset.iter().map(|&i| self.n[i].clone()).collect();
        let mut dd = det(base.clone()).ok_or(())?;
        if dd.is_zero() {
            return Ok(None);
        }
        let mut xs = Vec::with_capacity(d);
        for k in 0..d {
            let mut mk = base.clone();
            for (r, &i) in subset.iter().enumerate() {
                mk[r][k] = self.b[i].clone();
            }
            xs.push(det(mk).ok_or(())?);
        }
        if dd.is_negative() {
            dd = dd.neg().ok_or(())?;
            xs = xs.iter().map(|x| x.neg()).collect::<Option<Vec<_>>>().ok_or(())?;
        }
        for (row, rhs) in self.n.iter().zip(&self.b) {
            let mut lhs = R::zero();
            for (a, x) in row.iter().zip(&xs) {
                lhs = lhs.add(&a.mul(x).ok_or(())?).ok_or(())?;
            }
            let bound = rhs.mul(&dd).ok_or(())?;
            if bound.sub(&lhs).ok_or(())?.is_negative() {
                return Ok(None);
            }
        }
        Ok(Some((xs, dd)))
    }
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn enumerate<R: Ring>(sys: &IntSystem<R>, m: usize, d: usize, exec: Execution) -> Option<Vec<Vec<BigRational>>> {
    // split the work by the first row of the subset
    let firsts: Vec<usize> = (0..=m - d).collect();
    let chunks: Vec<Option<Vec<Vec<BigRational>>>> = exec::map(exec, &firsts, |&first| {
        let mut out = Vec::new();
        let mut rest: Vec<usize> = (first + 1..first + d).collect();
        if d == 1 {
            if let Ok(Some((xs, dd))) = sys.vertex_of(&[first]) {
                out.push(to_point(&xs, &dd));
            }
            return Some(out);
        }
        loop {
            let mut subset = Vec::with_capacity(d);
            subset.push(first);
            subset.extend_from_slice(&rest);
            match sys.vertex_of(&subset) {
                Err(()) => return None,
                Ok(Some((xs, dd))) => out.push(to_point(&xs, &dd)),
                Ok(None) => {}
            }
            // advance `rest` over combinations of (first+1..m) choose d-1
            let mut shifted: Vec<usize> = rest.iter().map(|&x| x - first - 1).collect();
            if !next_combination(&mut shifted, m - first - 1) {
                break;
            }
            rest = shifted.iter().map(|&x| x + first + 1).collect();
        }
        Some(out)
    });
    let mut all = Vec::new();
    for c in chunks {
        all.extend(c?);
    }
    all.sort();
    all.dedup();
    Some(all)
}

fn to_point<R: Ring>(xs: &[R], dd: &R) -> Vec<BigRational> {
    let den = dd.to_big();
    xs.iter().map(|x| BigRational::new(x.to_big(), den.clone())).collect()
}

/// Every vertex of `P`, sorted lexicographically.
pub fn brute_force_vertices(p: &HPolytope<BigRational>) -> Result<Vec<Vec<BigRational>>, VerifyError> {
    brute_force_vertices_with(p, Execution::default())
}

/// [`brute_force_vertices`] with an explicit execution mode.
pub fn brute_force_vertices_with(
    p: &HPolytope<BigRational>,
    exec: Execution,
) -> Result<Vec<Vec<BigRational>>, VerifyError> {
    let (m, d) = (p.m(), p.d());
    let count = binomial(m, d);
    if count > ORACLE_LIMIT {
        return Err(VerifyError::TooLarge { subsets: count });
    }
    if m < d {
        return Ok(Vec::new());
    }
    let rows = integer_rows(p);
    if let Some(sys) = IntSystem::<i128>::new(&rows) {
        if let Some(v) = enumerate(&sys, m, d, exec) {
            return Ok(v);
        }
    }
    let sys = IntSystem::<BigInt>::new(&rows).expect("big integers never overflow");
    Ok(enumerate(&sys, m, d, exec).expect("big integers never overflow"))
}

/// Facets of `conv(points)` as canonical rows, via the vertices of the polar
/// `{y | pᵀy ≤ 1 for all p}`. The origin must be interior to the hull.
pub fn facets_of_points(points: &[Vec<BigRational>]) -> Result<HPolytope<BigRational>, VerifyError> {
    let polar = HPolytope::new(points.to_vec()).map_err(VerifyError::Hrep)?;
    let rows = brute_force_vertices(&polar)?;
    HPolytope::new(rows).map_err(VerifyError::Hrep)
}

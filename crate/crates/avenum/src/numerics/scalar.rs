use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Number type shared by every geometric routine.
///
/// Two realizations ship with the crate: `f64` and [`BigRational`]. A third,
/// [`super::Paired`], carries both at once and is used by the error audit.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when ring operations and comparisons never round.
    const EXACT: bool;
    /// Short backend tag used in reports.
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn to_f64(&self) -> f64;
    /// Exact rational value of `self` (binary expansion for floats).
    fn to_rational(&self) -> BigRational;

    fn is_zero(&self) -> bool;

    /// Tolerance used by the simplex method for sign tests.
    fn lp_tol() -> Self;

    /// Whether `pivot` counts as zero during elimination on a matrix whose
    /// largest absolute entry is `scale`.
    fn pivot_vanishes(pivot: &Self, scale: &Self) -> bool;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn signum_i(&self) -> i32 {
        let z = Self::zero();
        if *self > z {
            1
        } else if *self < z {
            -1
        } else {
            0
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const NAME: &'static str = "float";

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn from_rational(q: &BigRational) -> Self {
        rational_to_f64(q)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_rational(&self) -> BigRational {
        BigRational::from_f64(*self).expect("finite float")
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn lp_tol() -> Self {
        1e-9
    }
    fn pivot_vanishes(pivot: &Self, scale: &Self) -> bool {
        f64::abs(*pivot) <= 1e-12 * scale
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    const NAME: &'static str = "rational";

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn lp_tol() -> Self {
        Zero::zero()
    }
    fn pivot_vanishes(pivot: &Self, _scale: &Self) -> bool {
        Zero::is_zero(pivot)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
}

/// Nearest-ish float of a big rational, robust to huge numerators and
/// denominators.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if let Some(v) = ToPrimitive::to_f64(q) {
        if v.is_finite() && (v != 0.0 || Zero::is_zero(q)) {
            return v;
        }
    }
    let n = q.numer();
    let d = q.denom();
    let shift = n.bits() as i64 - d.bits() as i64;
    // scale so the quotient has ~60 significant bits
    let (num, den) = if shift > 0 {
        (n.clone(), d.clone() << (shift as usize))
    } else {
        (n.clone() << ((-shift) as usize), d.clone())
    };
    let scaled = (num << 60usize) / den;
    let mantissa = ToPrimitive::to_f64(&scaled).unwrap_or(0.0);
    mantissa * 2f64.powi((shift - 60) as i32)
}

/// Parse `p/q`, an integer, or a decimal literal into an exact rational.
pub fn parse_rational(tok: &str) -> Option<BigRational> {
    let tok = tok.trim();
    if let Some((p, q)) = tok.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if Zero::is_zero(&q) {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Ok(i) = tok.parse::<BigInt>() {
        return Some(BigRational::from_integer(i));
    }
    parse_decimal(tok)
}

/// Exact value of a decimal literal such as `-1.25e-3`.
pub fn parse_decimal(tok: &str) -> Option<BigRational> {
    let (mant, exp) = match tok.find(['e', 'E']) {
        Some(pos) => (&tok[..pos], tok[pos + 1..].parse::<i32>().ok()?),
        None => (tok, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Some(if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    })
}

/// Format a rational as `p/q`, or `p` when integral.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact rational from a float, convenience for callers that hold `f64`.
pub fn rat(v: f64) -> BigRational {
    BigRational::from_f64(v).expect("finite float")
}

/// `n/d` as a big rational.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc + x.clone() * y.clone();
    }
    acc
}

/// Convert a vector between backends through exact rationals.
pub fn convert_vec<S: Scalar, T: Scalar>(v: &[S]) -> Vec<T> {
    v.iter().map(|x| T::from_rational(&x.to_rational())).collect()
}

pub fn to_f64_vec<S: Scalar>(v: &[S]) -> Vec<f64> {
    v.iter().map(Scalar::to_f64).collect()
}

/// Sum of squares, the squared Euclidean norm.
pub fn norm_sq<S: Scalar>(v: &[S]) -> S {
    dot(v, v)
}

/// Combined bit length of numerator and denominator.
pub fn bit_size(q: &BigRational) -> u64 {
    q.numer().bits() + q.denom().bits()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parsing_is_exact() {
        assert_eq!(parse_decimal("1e-3").unwrap(), ratio(1, 1000));
        assert_eq!(parse_decimal("-2.50").unwrap(), ratio(-5, 2));
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("7").unwrap(), ratio(7, 1));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_decimal("abc").is_none());
    }

    #[test]
    fn huge_rational_to_float() {
        let big = BigInt::from(3) << 2000usize;
        let q = BigRational::new(big.clone() + BigInt::one(), big);
        assert!((rational_to_f64(&q) - 1.0).abs() < 1e-15);
        let tiny = BigRational::new(BigInt::one(), BigInt::from(7) << 1500usize);
        assert!(rational_to_f64(&tiny) >= 0.0);
    }

    #[test]
    fn rationals_are_normalized() {
        let q = BigRational::new(BigInt::from(4), BigInt::from(-6));
        assert_eq!(q.numer(), &BigInt::from(-2));
        assert_eq!(q.denom(), &BigInt::from(3));
    }
}

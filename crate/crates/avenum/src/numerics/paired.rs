//! A float that drags its exact shadow along.
//!
//! Every arithmetic operation is applied to both halves. Comparisons look at
//! the float half only, so an algorithm run over `Paired` takes exactly the
//! branches a plain `f64` run would take while the rational half records
//! where the points would have landed under exact arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::{rational_to_f64, Scalar};

#[derive(Clone, Debug)]
pub struct Paired {
    pub approx: f64,
    pub exact: BigRational,
}

impl Paired {
    pub fn new(approx: f64, exact: BigRational) -> Self {
        Paired { approx, exact }
    }

    /// Distance between the two halves, as an exact rational.
    pub fn drift(&self) -> BigRational {
        BigRational::from_float(self.approx).expect("finite float") - &self.exact
    }
}

impl PartialEq for Paired {
    fn eq(&self, other: &Self) -> bool {
        self.approx == other.approx
    }
}

impl PartialOrd for Paired {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.approx.partial_cmp(&other.approx)
    }
}

impl fmt::Display for Paired {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.approx)
    }
}

macro_rules! paired_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr for Paired {
            type Output = Paired;
            fn $method(self, rhs: Paired) -> Paired {
                Paired {
                    approx: self.approx $op rhs.approx,
                    exact: self.exact $op rhs.exact,
                }
            }
        }
    };
}

paired_binop!(Add, add, +);
paired_binop!(Sub, sub, -);
paired_binop!(Mul, mul, *);
paired_binop!(Div, div, /);

impl Neg for Paired {
    type Output = Paired;
    fn neg(self) -> Paired {
        Paired { approx: -self.approx, exact: -self.exact }
    }
}

impl Scalar for Paired {
    const EXACT: bool = false;
    const NAME: &'static str = "paired";

    fn zero() -> Self {
        Paired { approx: 0.0, exact: Zero::zero() }
    }
    fn one() -> Self {
        Paired { approx: 1.0, exact: One::one() }
    }
    fn from_i64(v: i64) -> Self {
        Paired { approx: v as f64, exact: BigRational::from_integer(v.into()) }
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Paired { approx: num as f64 / den as f64, exact: BigRational::new(num.into(), den.into()) }
    }
    fn from_rational(q: &BigRational) -> Self {
        Paired { approx: rational_to_f64(q), exact: q.clone() }
    }
    fn to_f64(&self) -> f64 {
        self.approx
    }
    /// The float half, exactly. The shadow is reachable through `exact`.
    fn to_rational(&self) -> BigRational {
        BigRational::from_float(self.approx).expect("finite float")
    }
    fn is_zero(&self) -> bool {
        self.approx == 0.0
    }
    fn lp_tol() -> Self {
        Paired { approx: 1e-9, exact: Zero::zero() }
    }
    fn pivot_vanishes(pivot: &Self, scale: &Self) -> bool {
        f64::pivot_vanishes(&pivot.approx, &scale.approx)
    }
}

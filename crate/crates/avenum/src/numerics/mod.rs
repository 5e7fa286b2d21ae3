//! Scalar backends, dense linear solves and a small simplex solver.

mod linalg;
mod lp;
mod paired;
mod scalar;

pub use linalg::{cross3, mat_vec, solve_linear, Singular};
pub use lp::{feasible_basis_f64, feasible_standard, lp_solve, LpOutcome, LpProblem};
#[allow(unused_imports)]
pub(crate) use lp::{simplex_standard, StdOutcome};
pub use paired::Paired;
pub use scalar::{
    bit_size, convert_vec, dot, format_rational, norm_sq, parse_decimal, parse_rational, rat,
    ratio, rational_to_f64, to_f64_vec, Scalar,
};

pub use num_rational::BigRational;

//! Ground truth: brute-force vertices, LP membership, the sandwich check,
//! crossing parity counters and the float error audit.

mod oracle;

pub use oracle::{binomial, brute_force_vertices, brute_force_vertices_with, facets_of_points, ORACLE_LIMIT};
#[allow(unused_imports)]
pub(crate) use oracle::integer_rows;

use crate::hrep::HrepError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error("oracle guard tripped: {subsets} row subsets")]
    TooLarge { subsets: u128 },
    #[error("probe direction is degenerate")]
    DegenerateDirection,
    #[error(transparent)]
    Hrep(#[from] HrepError),
}

mod audit;
mod sandwich;
pub mod parity;
pub use parity::{check_parity_2d, check_parity_3d, crossing_count_2d, crossing_count_3d, CrossingCount, ParityStats};
pub use audit::{float_error_audit, AuditReport};
pub use sandwich::{check_sandwich, check_sandwich_against, check_sandwich_with, point_in_vpolytope, point_in_vpolytope_fast, SandwichReport};

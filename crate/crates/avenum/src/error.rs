use crate::hrep::HrepError;
use crate::verify::VerifyError;

/// Failures raised by the two algorithms and their runtime checks.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgError {
    /// No vertex fell in the minus class; with exact arithmetic this cannot
    /// happen on canonical input, so it signals numerical trouble or a bad
    /// partition script.
    #[error("iteration for row {row}: minus class is empty")]
    EmptyMinusClass { row: usize },
    #[error("iteration for row {row}: new vertex left the zero band ({detail})")]
    ImprecisionAlarm { row: usize, detail: String },
    #[error("iteration for row {row}: {vertices} vertices exceed the size limit")]
    TooLarge { row: usize, vertices: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("structural audit failed: {0}")]
    Structural(String),
    #[error("parity invariant violated: {0}")]
    Parity(String),
    #[error("half-space label invariant violated: {0}")]
    Kappa(String),
    #[error("subgraph invariant violated: {0}")]
    Subgraph(String),
    #[error(transparent)]
    Hrep(#[from] HrepError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

impl AlgError {
    /// True for failures of internal invariants, as opposed to bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            AlgError::Structural(_) | AlgError::Parity(_) | AlgError::Kappa(_) | AlgError::Subgraph(_)
        )
    }
}

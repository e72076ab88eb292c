use thiserror::Error;

/// Errors produced by frame analysis and scaling routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected} entries, got {got}")]
    Dimension { expected: usize, got: usize },

    /// The (scaled) family does not span the plane.
    #[error("degenerate frame: {0}")]
    DegenerateFrame(String),

    #[error("degenerate pair: vectors {0} and {1} are collinear")]
    DegeneratePair(usize, usize),

    #[error("triple is not in normal position: {0}")]
    NormalPosition(String),

    #[error("frame is not scalable (angular spread {spread} rad is below pi/2)")]
    NotScalable { spread: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget exceeded: {evaluations} grid points requested, cap is {cap}")]
    BudgetExceeded { evaluations: u128, cap: u128 },

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}

impl FrameError {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            FrameError::InvalidInput(_)
            | FrameError::Dimension { .. }
            | FrameError::DegenerateFrame(_) => 1,
            FrameError::DegeneratePair(..)
            | FrameError::NormalPosition(_)
            | FrameError::NotScalable { .. }
            | FrameError::Precondition(_)
            | FrameError::BudgetExceeded { .. } => 2,
            FrameError::InternalConsistency(_) => 3,
        }
    }
}

pub type Result<T, E = FrameError> = std::result::Result<T, E>;

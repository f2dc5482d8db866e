use thiserror::Error;

/// Crate-wide error type. Variants mirror the failure modes of the
/// individual subsystems; the CLI maps them onto exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("cone is not simplicial: {0} generators in dimension {1}")]
    NonSimplicial(usize, usize),

    #[error("cone is not smooth")]
    NonSmoothCone,

    #[error("origin is not interior to the polytope")]
    OriginNotInterior,

    #[error("not an edge of the polytope")]
    NotAnEdge,

    #[error("cone not found in fan")]
    ConeNotInFan,

    #[error("projection is not a fibration over the projective line")]
    NotAFibration,

    #[error("group {0} of the subfan decomposition cannot be compactified")]
    NonCompactifiableGroup(usize),

    #[error("zero equivariant weight (vector not generic for this fixed point)")]
    ZeroWeight,

    #[error("degenerate volume: top self-intersection vanishes")]
    DegenerateVolume,

    #[error("polarisation is not nef")]
    NotNef,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("indeterminate ratio at a fixed point on the base locus (no edge supplied)")]
    IndeterminateRatio,

    #[error("critical point solver incomplete: found {found} of {expected} expected points")]
    SolverIncomplete { found: usize, expected: usize },

    #[error("degenerate critical point (Hessian below threshold)")]
    DegenerateCriticalPoint,

    #[error("subdivision budget exceeded while separating the base locus")]
    SubdivisionBudgetExceeded,

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("no solution found: best residual {0}")]
    NoSolutionFound(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code for the CLI: 2 validation, 3 solver incomplete,
    /// 4 hypothesis failed.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SolverIncomplete { .. } | Error::NoSolutionFound(_) => 3,
            Error::HypothesisFailed(_) => 4,
            _ => 2,
        }
    }
}

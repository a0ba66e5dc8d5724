//! Error type shared by all modules.

use crate::lowdim::EmbeddingState;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A coordinate was NaN or infinite at ingestion.
    #[error("non-finite coordinate in point {index}")]
    NonFiniteInput { index: usize },

    /// Two input points closer than the ingestion tolerance.
    #[error("points {i} and {j} coincide within ingestion tolerance")]
    DuplicatePoints { i: usize, j: usize },

    /// Requested perplexity outside the admissible open interval.
    #[error("perplexity {perp} outside ({lo}, {hi}) for point {index}")]
    PerpOutOfRange {
        index: usize,
        perp: f64,
        lo: f64,
        hi: f64,
    },

    /// All distances from a point are equal: entropy does not depend on sigma.
    #[error("all neighbor distances of point {index} are equal; sigma is undetermined")]
    DegenerateDistances { index: usize },

    /// Sigma bracket expansion did not enclose the entropy target.
    #[error("sigma bracket expansion failed for point {index} after {attempts} attempts")]
    BracketFailure { index: usize, attempts: usize },

    /// A proved bound was violated numerically: implementation bug indicator.
    #[error("{check} bound violated: {detail}")]
    BoundViolated {
        check: &'static str,
        /// Offending pair, when the check is per-entry.
        witness: Option<(usize, usize)>,
        detail: String,
    },

    /// Two embedded points coincide where an inverse-square kernel is required.
    #[error("embedded points {i} and {j} coincide")]
    CoincidentPoints { i: usize, j: usize },

    /// Step-size halving exhausted without a KL decrease.
    #[error("flow step failed at t={t}: KL {kl_before} -> {kl_after} after {halvings} halvings")]
    StepFailure {
        t: f64,
        kl_before: f64,
        kl_after: f64,
        halvings: usize,
        state: Box<EmbeddingState>,
    },

    /// Operand sizes disagree.
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    /// Point cloud too large for the exact assignment solver.
    #[error("point cloud of size {n} exceeds exact-assignment limit {max}")]
    TooLarge { n: usize, max: usize },

    /// Manifold specification is inconsistent.
    #[error("bad manifold spec: {0}")]
    BadSpec(String),

    /// Sigma grid unusable for slope estimation.
    #[error("degenerate sigma grid: {0}")]
    DegenerateGrid(String),

    /// Malformed CSV input.
    #[error("csv parse error at line {line}: {msg}")]
    CsvParse { line: usize, msg: String },

    /// Precondition violation not covered by a more specific variant.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Module the error originated from, for machine-readable CLI reports.
    pub fn module(&self) -> &'static str {
        match self {
            Error::NonFiniteInput { .. }
            | Error::DuplicatePoints { .. }
            | Error::PerpOutOfRange { .. }
            | Error::DegenerateDistances { .. }
            | Error::BracketFailure { .. }
            | Error::CsvParse { .. } => "affinity",
            Error::CoincidentPoints { .. } => "lowdim",
            Error::StepFailure { .. } => "flow",
            Error::BoundViolated { .. } => "diagnostics",
            Error::SizeMismatch { .. }
            | Error::TooLarge { .. }
            | Error::BadSpec(_)
            | Error::DegenerateGrid(_) => "geometry",
            Error::InvalidArgument(_) => "core",
        }
    }
}

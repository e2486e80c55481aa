//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong when validating inputs or running an
/// operation. Validation failures name the violated precondition so the
/// CLI can surface a one-line diagnostic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix entry at ({row},{col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("tolerance model violates 0 < eps_struct < eps_cluster < 1")]
    InvalidTolerance,

    #[error("matrix is not Hermitian within tolerance")]
    NotHermitian,
    #[error("matrix is not normal within tolerance")]
    NotNormal,
    #[error("eigensolver did not converge within the sweep cap")]
    NoConvergence,

    #[error("vector is not unit length within tolerance")]
    NotUnit,
    #[error("vector is zero within tolerance")]
    ZeroVector,
    #[error("matrix is not a symmetric idempotent within tolerance")]
    NotIdempotent,
    #[error("trace {trace} is not within tolerance of a nonnegative integer")]
    TraceNotInteger { trace: f64 },
    #[error("decomposition exceeded the iteration cap")]
    MaxIterations,
    #[error("idempotents {i} and {j} are not orthogonal")]
    NotOrthogonal { i: usize, j: usize },
    #[error("ranks sum to {sum}, exceeding matrix size {size}")]
    RankOverflow { sum: usize, size: usize },

    #[error("root selector does not align with the factorization")]
    SelectorMismatch,
    #[error("nonzero branch index given for a zero eigenvalue")]
    ZeroBranch,
    #[error("root enumeration would produce {count} roots, above the cap")]
    TooManyRoots { count: u128 },
    #[error("matrix is not an involution (A^2 != I) within tolerance")]
    NotInvolution,
    #[error("matrix is not a scaled involution (H^2 != cI) within tolerance")]
    NotScaledInvolution,

    #[error("unknown gate `{name}`")]
    UnknownGate { name: String },
    #[error("gate is missing required parameter `{name}`")]
    MissingParameter { name: String },
    #[error("frame vectors are not orthonormal within tolerance")]
    NotOrthonormal,
    #[error("sequence lengths do not match")]
    LengthMismatch,
    #[error("root exponent {value} is outside 1..={max}")]
    ExponentOutOfRange { value: u32, max: u32 },

    #[error("ensemble weights are not positive or do not sum to 1")]
    WeightsInvalid,
    #[error("matrix is not a density matrix within tolerance")]
    NotDensity,
}

use num_bigint::{BigInt, BigUint};
use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PellError {
    #[error("D must be positive, got {0}")]
    NonPositive(BigInt),
    #[error("D = 1 does not define a Pell equation")]
    DIsOne,
    #[error("D = {d} is a perfect square ({root}^2)")]
    PerfectSquare { d: BigUint, root: BigUint },
    #[error("argument must be non-negative, got {x}")]
    NegativeArgument { x: f64 },
    #[error("argument must be at least 1, got {x}")]
    DomainError { x: f64 },
    /// The float floor candidate strayed more than one step from the exact
    /// floor. Never expected; signals a float-evaluation bug.
    #[error("floor candidate {candidate} is more than one away from the exact value {exact}")]
    PrecisionFailure { candidate: i64, exact: u64 },
    #[error("integer radius must be at least 1")]
    LambdaTooSmall,
    #[error("lambda {lambda} is below the threshold K = {k}; the closed-form count requires lambda >= K (use enumeration or the brute-force scan)")]
    BelowThreshold { lambda: String, k: String },
    #[error("the intercept bound requires a != 0")]
    ZeroA,
    #[error("scan radius {radius} exceeds the cap {cap}")]
    ScanTooLarge { radius: BigUint, cap: u64 },
    #[error("invalid lambda {input:?}: {reason}")]
    InvalidLambda { input: String, reason: String },
}

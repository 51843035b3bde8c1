use alloc::string::String;

/// Errors raised while constructing or checking chain objects.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("q must be a positive real, got {0}")]
    NonPositiveQ(f64),
    #[error("q-binomial requires 0 <= k <= n, got n={n}, k={k}")]
    InvalidBinomial { n: u32, k: u32 },
    #[error("value leaves the Laurent ring in s = q^(1/4): {0}")]
    OutsideRing(String),
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    #[error("chain needs at least one site")]
    ZeroSites,
    #[error("index {index} out of range for {n} sites")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("level m={m} out of range for {n} sites")]
    LevelOutOfRange { m: usize, n: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operator carries no tensor-word decomposition")]
    MissingWordDecomposition,
    #[error("n={n} exceeds the resource cap {cap}")]
    ResourceCap { n: usize, cap: usize },
    #[error("operator is not idempotent (residual {0:e})")]
    NotIdempotent(f64),
    #[error("Casimir eigenvalue clustering is ambiguous: gap {gap:e} vs tolerance {tolerance:e}")]
    ClusteringAmbiguity { gap: f64, tolerance: f64 },
    #[error("eigenvalue {0} matches no [j]_q[j+1]_q sector")]
    UnmatchedEigenvalue(f64),
    #[error("eigenvalue has imaginary part {0:e}")]
    ComplexEigenvalue(f64),
    #[error("q-Dicke states are not fixed by the projector (residual {0:e})")]
    ImageMismatch(f64),
    #[error("kernel dimension {found} differs from the expected {expected}")]
    KernelRank { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised while building or combining operators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left} vs {right}")]
    DimensionMismatch {
        op: &'static str,
        left: usize,
        right: usize,
    },

    #[error("operator dimension must be at least 1")]
    EmptyOperator,

    #[error("expected {expected} entries for a {dim}x{dim} operator, got {actual}")]
    EntryCount {
        dim: usize,
        expected: usize,
        actual: usize,
    },

    #[error("non-finite value {0}")]
    NonFinite(String),

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("index {index} out of range 1..={p}")]
    IndexOutOfRange { index: usize, p: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("split index r={r} outside 1..={max} (requires p >= 2)", max = p.saturating_sub(1))]
    SplitOutOfRange { r: usize, p: usize },

    #[error("{0:?} is not a permutation of 1..={1}")]
    InvalidPermutation(Vec<usize>, usize),

    #[error("cutoff D={cutoff} too small for guard g={guard} (need D-1-g >= {min_levels})")]
    CutoffTooSmall {
        cutoff: usize,
        guard: usize,
        min_levels: usize,
    },

    #[error("enumeration bound exceeded: p={p}, max_len={max_len} (limits p<=6, max_len<=6)")]
    EnumerationBounds { p: usize, max_len: usize },

    #[error("grade n={n} must be at least 2; k={k} must lie in 1..={max}", max = n / 2)]
    CoefficientOutOfRange { n: usize, k: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

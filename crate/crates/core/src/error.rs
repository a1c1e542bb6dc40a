use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("mixed compact and long tokens at byte {offset}")]
    MixedSyntax { offset: usize },

    #[error("letter `{letter}` occurs {count} times; every letter must occur exactly twice")]
    NotPaired { letter: String, count: usize },

    #[error("unsupported word: {0}")]
    UnsupportedWord(String),

    #[error("curve passes within {distance:.3e} of the point (guard {guard:.3e})")]
    NearZero { distance: f64, guard: f64 },

    #[error("winding sum {turns} is not integral (residual {residual:.3e})")]
    NonIntegral { turns: f64, residual: f64 },

    #[error("invalid invariant (N={n}, k={k}); need 0 <= k <= N")]
    InvalidInvariant { n: i64, k: i64 },

    #[error("operator norm {norm} exceeds 1 + 1e-12; not a contraction")]
    NotContraction { norm: f64 },

    #[error("shape mismatch: expected {expected} blocks, found {found}")]
    Shape { expected: usize, found: usize },

    #[error("generator index {index} outside 1..={max}")]
    IndexRange { index: usize, max: usize },

    #[error("eigenvalue iteration did not converge for a {dim}x{dim} block")]
    NoConvergence { dim: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

use thiserror::Error;

/// Errors raised across graph construction, operator assembly, conversion and
/// spectral analysis.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph error: {0}")]
    Graph(String),

    #[error("partition error: {0}")]
    Partition(String),

    #[error("basis error: {0}")]
    Basis(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("block at class {class} is not unitary (deviation {deviation:.3e} > {tolerance:.3e})")]
    NonUnitaryBlock {
        class: usize,
        deviation: f64,
        tolerance: f64,
    },

    #[error("operator is not unitary (deviation {deviation:.3e} > {tolerance:.3e})")]
    NonUnitary { deviation: f64, tolerance: f64 },

    #[error("matrix is not Hermitian (deviation {0:.3e})")]
    NonHermitian(f64),

    #[error("vector norm {norm} is neither 0 nor 1 within tolerance")]
    BadReflectionAxis { norm: f64 },

    #[error("weights at vertex {vertex} sum to {sum} instead of 1")]
    Stochasticity { vertex: String, sum: f64 },

    #[error("coin block at vertex {vertex} has spectrum outside {{+1, -1}} (worst deviation {deviation:.3e})")]
    CoinSpectrum { vertex: String, deviation: f64 },

    #[error("bijection error: {0}")]
    Bijection(String),

    #[error("model error: {0}")]
    Model(String),

    #[error("convention mismatch: {0}")]
    Convention(String),

    #[error("dimension {dim} exceeds the eigensolver cap {cap}")]
    EigenCap { dim: usize, cap: usize },

    #[error("config error: {0}")]
    Config(String),

    #[error("internal invariant breached: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

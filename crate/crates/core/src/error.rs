use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("matrix is not self-adjoint (relative defect {defect:.3e})")]
    NotSelfAdjoint { defect: f64 },

    #[error("rank deficient input: smallest eigenvalue {smallest:.3e} below threshold {threshold:.3e}")]
    RankDeficient { smallest: f64, threshold: f64 },

    #[error("eigen-iteration did not converge after {sweeps} sweeps (off-diagonal residual {residual:.3e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("spectral bound violated: {0}")]
    SpectralBound(String),

    #[error("infeasible configuration: {0}")]
    Infeasible(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown check id `{0}`")]
    UnknownCheck(String),

    #[error("non-finite integrand value at sample {index}")]
    NonFinite { index: u64 },

    #[error("invariance audit failed: {0}")]
    Invariance(String),

    #[error("ill-conditioned fit: condition number {cond:.3e}")]
    IllConditioned { cond: f64 },

    #[error("singular calibration system: {0}")]
    Singular(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("serialization: {0}")]
    Serde(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

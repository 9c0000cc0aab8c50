use thiserror::Error;

/// Everything that can go wrong when building states, matrices, or searches.
#[derive(Debug, Clone, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    #[error("LengthMismatch: expected {expected} amplitudes for {n_photons} photons, got {got}")]
    LengthMismatch {
        n_photons: usize,
        expected: usize,
        got: usize,
    },

    #[error("ZeroVector: cannot normalize an all-zero amplitude vector")]
    ZeroVector,

    #[error("NotNormalized: norm {norm} deviates from 1 by more than {tolerance:e}")]
    NotNormalized { norm: f64, tolerance: f64 },

    #[error("IndexOutOfManifold: basis index {index} exceeds photon number {n_photons}")]
    IndexOutOfManifold { index: usize, n_photons: usize },

    #[error("ManifoldMismatch: photon numbers differ ({left} vs {right})")]
    ManifoldMismatch { left: usize, right: usize },

    #[error("DimensionMismatch: operator on {operator} photons applied to {operand} photons")]
    DimensionMismatch { operator: usize, operand: usize },

    #[error("NotUnitary: max deviation of U\u{2020}U from identity is {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("NotHermitian: max asymmetry {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("InvalidTrace: trace {trace} differs from 1")]
    InvalidTrace { trace: f64 },

    #[error("NotPositiveSemidefinite: negative pivot {pivot:e} in Cholesky factorization")]
    NotPositiveSemidefinite { pivot: f64 },

    #[error("EvenN: operation requires an odd photon number, got {n_photons}")]
    EvenN { n_photons: usize },

    #[error("OddN: operation requires an even photon number, got {n_photons}")]
    OddN { n_photons: usize },

    #[error(
        "NotEquipartition: amplitude magnitude deviates from 1/\u{221a}(N+1) by {deviation:e}"
    )]
    NotEquipartition { deviation: f64 },

    #[error("NotOrthonormal: Gram matrix deviates from identity by {deviation:e}")]
    NotOrthonormal { deviation: f64 },

    #[error("NotFound: no orthogonalizing transformation located, best residual {residual:e}")]
    NotFound { residual: f64 },

    #[error("InvalidOptions: {0}")]
    InvalidOptions(&'static str),

    #[error("Parse: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

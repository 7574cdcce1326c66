use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("matrix is not Hermitian (max |m_ij - conj(m_ji)| = {0:.3e})")]
    NotHermitian(f64),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("subsystem index {index} invalid for subsystem dims {dims:?}")]
    BadSubsystemIndex { index: usize, dims: Vec<usize> },

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("hermitian eigensolver did not converge")]
    EigenNonConvergent,

    #[error(
        "quadrature did not converge: estimate {estimate:.6e}, error {error:.3e} after {segments} segments"
    )]
    QuadratureNonConvergent {
        estimate: f64,
        error: f64,
        segments: usize,
    },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("mixing parameter p = {0} outside [0, 1/2]")]
    InvalidP(f64),

    #[error("unsupported scenario: {0}")]
    UnsupportedScenario(String),

    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit status for a failed run: 2 for bad input, 3 for numerical
    /// trouble, 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ConfigInvalid(_)
            | Error::InvalidParams(_)
            | Error::InvalidP(_)
            | Error::UnsupportedScenario(_) => 2,
            Error::Io(_) => 1,
            _ => 3,
        }
    }
}

use thiserror::Error;

/// Errors raised by the numerics core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error(
        "matrix is not Hermitian: |A - A^H|_F = {residual:.3e} exceeds tolerance {tolerance:.3e}"
    )]
    NotHermitian { residual: f64, tolerance: f64 },

    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:.3e} below clip floor {floor:.3e}")]
    NotPsd { eigenvalue: f64, floor: f64 },

    #[error(
        "eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})"
    )]
    ConvergenceFailure { sweeps: usize, off_norm: f64 },

    #[error("matrix function undefined at eigenvalue {eigenvalue:.6e}")]
    DomainError { eigenvalue: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid matrix data: {0}")]
    InvalidMatrix(String),

    #[error("not a valid state: {0}")]
    InvalidState(String),

    #[error("not a valid effect: {0}")]
    InvalidEffect(String),

    #[error("not a valid channel: {0}")]
    InvalidChannel(String),

    #[error("channel output is not a state: {0}")]
    NotPsdOutput(String),

    #[error("lambda must lie in [0, 1], got {0}")]
    InvalidLambda(f64),

    #[error("threshold grid is empty")]
    EmptyGrid,

    #[error("invalid threshold grid: {0}")]
    InvalidGrid(String),

    #[error("quadrature budget of {max_nodes} integrand evaluations exceeded")]
    QuadratureBudgetExceeded { max_nodes: usize },

    #[error("invalid quadrature settings: {0}")]
    InvalidQuadrature(String),

    #[error("truncation must be at least 3, got {0}")]
    InvalidTruncation(f64),

    #[error("node count must be odd and at least 101, got {0}")]
    EvenNodeCount(usize),

    #[error("support of rho is not contained in the support of sigma (mass outside: {0:.3e})")]
    SupportViolation(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors shared by all numerical kernels in this crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (relative defect {defect:.3e})")]
    NotHermitian { defect: f64 },

    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("argument {value:.6e} outside the admissible domain (bound {bound:.6e})")]
    DomainViolation { value: f64, bound: f64 },

    #[error("state is not positive definite (min eigenvalue {min_eigenvalue:.3e})")]
    SingularRho { min_eigenvalue: f64 },

    #[error("second state is singular (min eigenvalue {min_eigenvalue:.3e})")]
    SingularState { min_eigenvalue: f64 },

    #[error("support of the first state is not contained in the second (leak {leak:.3e})")]
    SupportMismatch { leak: f64 },

    #[error("dimension must be at least {min}, got {got}")]
    InvalidDimension { got: usize, min: usize },

    #[error("operator dimensions do not match: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("positivity lost at t = {time:.6e} (min eigenvalue {min_eigenvalue:.3e}); reduce the step size")]
    PositivityLost { time: f64, min_eigenvalue: f64 },

    #[error("stationary subspace has dimension {kernel_dimension} and no positive unit-trace element was isolated")]
    NonUniqueKernel { kernel_dimension: usize },

    #[error("no steady state found (least-squares residual {residual:.3e})")]
    NoSteadyState { residual: f64 },

    #[error("equilibrium weight is not integrable (endpoint exponent {exponent:.6e} <= -1)")]
    NonIntegrable { exponent: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

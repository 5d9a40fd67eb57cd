use thiserror::Error;

/// Errors produced by data preparation, kernel construction, and filtering.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SiacError {
    /// Input data or parameters violate a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Evaluation point lies outside the data domain.
    #[error("x = {x} lies outside the domain [{lo}, {hi}]")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },

    /// The kernel coefficient system is singular or too ill-conditioned to trust.
    #[error("degenerate kernel: coefficient system condition number {cond:.3e} exceeds {limit:.1e}")]
    DegenerateKernel { cond: f64, limit: f64 },

    /// The requested operation is undefined for this kernel configuration.
    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),
}

pub type Result<T> = std::result::Result<T, SiacError>;

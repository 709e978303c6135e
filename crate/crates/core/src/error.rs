use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Parameters outside the domain of the operation (non-finite values,
    /// negative gain, photon-number mismatch, bad grids).
    #[error("domain error: {0}")]
    Domain(String),

    /// The input carries no information to work with, e.g. a zero-weight
    /// photon component or a zero-mean fringe signal.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// The truncated Fock-space oracle could not reach the requested accuracy.
    #[error(
        "cutoff {cutoff} too small: estimated missing probability weight {missing_weight:.3e} exceeds {tolerance:.1e}"
    )]
    Accuracy {
        cutoff: usize,
        missing_weight: f64,
        tolerance: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {value}")))
    }
}

use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the requested function.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested point is a pole of the function or of a closed form.
    #[error("pole: {0}")]
    Pole(String),
    /// A Bernoulli number beyond the cache capacity was requested.
    #[error("Bernoulli index {requested} exceeds cache capacity {capacity}")]
    Capacity { requested: usize, capacity: usize },
    /// An integrand produced a non-finite value at an interior node.
    #[error("integrand is not finite at x = {0}")]
    BadIntegrand(f64),
    /// A control block violated its invariants.
    #[error("invalid control parameters: {0}")]
    InvalidCtrl(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn require_positive(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("{name} must be a finite positive number, got {x}")))
    }
}

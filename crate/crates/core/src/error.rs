use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Embedding and extrinsic curvature need `sigma <= 1`.
    #[error(
        "sigma = {sigma} > 1: the cone cannot be embedded in three-dimensional Euclidean space"
    )]
    NotEmbeddable { sigma: f64 },

    /// `4m^2 + sigma^2 - 1 < 0`: the s-wave index is imaginary without a repulsive core.
    #[error("imaginary Bessel index for m = {m}: 4m^2 + sigma^2 - 1 = {radicand} < 0 (add a repulsive core)")]
    ImaginaryIndex { m: i64, radicand: f64 },

    /// The requested unscaled value does not fit in an `f64`; its natural log is reported.
    #[error("overflow evaluating {what}: natural log of the value is {log_value}")]
    Overflow { what: &'static str, log_value: f64 },

    /// An iterative method did not converge.
    #[error("no convergence: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn ensure_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be finite, got {value}")))
    }
}

//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A comparison or division could not be certified within error bounds.
    #[error("indeterminate within error bounds: {0}")]
    Indeterminate(String),

    /// Evaluating a rational function at one of its poles. Carries the pole
    /// order and the shift k of the pole location.
    #[error("evaluation at a pole of order {order} at shift k={k}")]
    Pole { order: u32, k: i64 },

    /// Parameter collection violating its feasibility inequalities. Lists
    /// every violated condition, not just the first.
    #[error("infeasible collection: {}", .0.join("; "))]
    Infeasible(Vec<String>),

    /// Requested desk-scale computation exceeds the configured size guard.
    #[error("size guard exceeded: {0}")]
    TooLarge(String),

    /// Precondition of a lemma-backed check is not met.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The Stieltjes endpoint term does not vanish, so the rate sum diverges.
    #[error("divergent Stieltjes endpoint: nu0 = {0} on the first breakpoint interval")]
    DivergentEndpoint(i64),

    /// Violation of an internal invariant; indicates a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

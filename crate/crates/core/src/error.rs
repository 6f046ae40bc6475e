use thiserror::Error;

use crate::ring::RingId;

/// Failures surfaced by the algebra layer and the certification engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: RingId, right: RingId },
    #[error("element is not invertible")]
    NotInvertible,
    #[error("not in the local ring: denominator vanishes at 0")]
    NotLocal,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("not a simple extension: constant term of the modulus is not a unit")]
    NotSimple,
    #[error("element is not primitive")]
    NotPrimitive,
    #[error("solved coordinate does not lie in the base ring")]
    CoordinateNotIntegral,
    #[error("quadratic form is not regular")]
    NotRegular,
    #[error("value of the form is not a unit")]
    ValueNotUnit,
    #[error("general-position search exhausted after {tries} tries")]
    SearchExhausted { tries: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("internal assertion failed: {0}")]
    InternalAssertion(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Turns a failed exact identity into an [`Error::InternalAssertion`].
pub(crate) fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InternalAssertion(what()))
    }
}

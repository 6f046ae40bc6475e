//! Norm-principle certificates.
//!
//! Given a diagonal form `q` over `R` and `x` in `S^m` with `c = q_S(x)` a
//! unit, [`certify`] writes `N(c)` as a product of values of `q` over `R`
//! by descending on the degree of the extension. [`verify`] re-checks a
//! certificate from scratch.

mod certify;
mod verify;

pub use certify::{certify, norm_of_value};
pub use verify::{verify, Check, Verdict};

use crate::ext::ExtElement;
use crate::poly::Poly;
use crate::qform::ValueFactor;

/// Witness that `target = prod q(vector_i)^exponent_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormCertificate<R> {
    pub target: R,
    pub factors: Vec<ValueFactor<R>>,
    /// One record per descent level, outermost first.
    pub trace: Vec<ReductionStep<R>>,
}

/// Audit record of one degree-lowering step.
///
/// `1 + p(t) h(t) = t q(x_1(t), ..., x_m(t))` holds exactly, `r` is the
/// leading coefficient of `h` and `g = h / r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep<R> {
    pub n: usize,
    pub p: Poly<R>,
    pub h: Poly<R>,
    pub r: R,
    pub g: Poly<R>,
    /// The general-position scaling.
    pub b: ExtElement<R>,
    /// Scaling applied beforehand to reach a primitive element, if any.
    pub b_scaling: Option<ExtElement<R>>,
    /// Coordinates of the witness in the basis of the primitive element,
    /// read as polynomials.
    pub witness: Vec<Poly<R>>,
    pub genpos_tries: usize,
    pub scaling_tries: usize,
}

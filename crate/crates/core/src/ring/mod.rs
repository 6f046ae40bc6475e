//! Base rings: the field of rationals and the localization of `Q[x]` at `(x)`.
//!
//! Both are local domains with residue field `Q`. Downstream code is generic
//! over [`BaseRing`]; the tagged [`RingElement`] is only used at the edges
//! where the ring is chosen at runtime.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

mod element;
mod local;
mod rational;
mod sample;
mod zpoly;

pub use element::RingElement;
pub use local::LocalRatFunc;
pub use rational::Rational;
pub use sample::sample_residue;
pub use zpoly::ZPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingId {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Q[x]_(x)")]
    LocalQx,
}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingId::Rationals => f.write_str("Q"),
            RingId::LocalQx => f.write_str("Q[x]_(x)"),
        }
    }
}

impl std::str::FromStr for RingId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "Q" => Ok(RingId::Rationals),
            "Q[x]_(x)" => Ok(RingId::LocalQx),
            other => Err(format!("unknown ring id {other:?}")),
        }
    }
}

/// An integral domain with exact division, used as the working domain of
/// fraction-free elimination.
pub trait ExactDomain: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Division known to be exact. Panics in debug builds if it is not.
    fn div_exact(&self, rhs: &Self) -> Self;
}

impl ExactDomain for num_bigint::BigInt {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }

    fn one() -> Self {
        num_traits::One::one()
    }

    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn div_exact(&self, rhs: &Self) -> Self {
        let (q, r) = num_integer::Integer::div_rem(self, rhs);
        debug_assert!(num_traits::Zero::is_zero(&r), "inexact integer division");
        q
    }
}

/// A local domain with residue field `Q`.
///
/// Every element is stored in canonical form, so `==` is exact equality.
pub trait BaseRing:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Domain whose fraction field contains `Self`; matrices over `Self` are
    /// scaled into it row by row before elimination.
    type Domain: ExactDomain;

    const ID: RingId;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Multiplicative inverse, or [`Error::NotInvertible`] if the element lies
    /// in the maximal ideal.
    fn invert(&self) -> Result<Self>;

    /// Reduction modulo the maximal ideal.
    fn residue(&self) -> Rational;

    /// Constant lift of a residue-field element.
    fn lift(v: &Rational) -> Self;

    /// Scales a row of elements into the working domain: returns the scaled
    /// entries and the common denominator used.
    fn clear_denominators(row: &[Self]) -> (Vec<Self::Domain>, Self::Domain);

    /// The element `num / den`, if it lies in the ring.
    fn from_quotient(num: &Self::Domain, den: &Self::Domain) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Units of a local ring are exactly the elements with nonzero residue.
    fn is_unit(&self) -> bool {
        !self.residue().is_zero()
    }

    fn square(&self) -> Self {
        self.mul(self)
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.invert()?))
    }
}

/// `ring_lift` for a runtime-selected ring.
pub fn ring_lift(v: &Rational, ring: RingId) -> RingElement {
    match ring {
        RingId::Rationals => RingElement::Rational(v.clone()),
        RingId::LocalQx => RingElement::Local(LocalRatFunc::lift(v)),
    }
}

pub(crate) fn mismatch(left: RingId, right: RingId) -> Error {
    Error::RingMismatch { left, right }
}

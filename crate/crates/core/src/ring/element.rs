use std::fmt;

use serde::Serialize;

use super::{mismatch, BaseRing, LocalRatFunc, Rational, RingId};
use crate::error::Result;

/// A base-ring element tagged with its ring, for code that picks the ring at
/// runtime (instance files, the CLI).
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(untagged)]
pub enum RingElement {
    Rational(Rational),
    Local(LocalRatFunc),
}

#[derive(Clone, Copy)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl RingElement {
    pub fn ring(&self) -> RingId {
        match self {
            RingElement::Rational(_) => RingId::Rationals,
            RingElement::Local(_) => RingId::LocalQx,
        }
    }

    /// Exact `a op b`; both operands must live in the same ring.
    pub fn arith(&self, rhs: &Self, op: ArithOp) -> Result<Self> {
        fn apply<R: BaseRing>(a: &R, b: &R, op: ArithOp) -> R {
            match op {
                ArithOp::Add => a.add(b),
                ArithOp::Sub => a.sub(b),
                ArithOp::Mul => a.mul(b),
            }
        }
        match (self, rhs) {
            (RingElement::Rational(a), RingElement::Rational(b)) => {
                Ok(RingElement::Rational(apply(a, b, op)))
            }
            (RingElement::Local(a), RingElement::Local(b)) => {
                Ok(RingElement::Local(apply(a, b, op)))
            }
            _ => Err(mismatch(self.ring(), rhs.ring())),
        }
    }

    pub fn invert(&self) -> Result<Self> {
        Ok(match self {
            RingElement::Rational(a) => RingElement::Rational(a.invert()?),
            RingElement::Local(a) => RingElement::Local(a.invert()?),
        })
    }

    pub fn residue(&self) -> Rational {
        match self {
            RingElement::Rational(a) => a.residue(),
            RingElement::Local(a) => a.residue(),
        }
    }

    pub fn parse_json(value: &serde_json::Value, ring: RingId) -> serde_json::Result<Self> {
        Ok(match ring {
            RingId::Rationals => RingElement::Rational(serde_json::from_value(value.clone())?),
            RingId::LocalQx => RingElement::Local(serde_json::from_value(value.clone())?),
        })
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElement::Rational(a) => a.fmt(f),
            RingElement::Local(a) => a.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::ring::ring_lift;

    #[test]
    fn same_ring_arithmetic() {
        let a = RingElement::Rational(Rational::new(1, 2));
        let b = RingElement::Rational(Rational::new(1, 3));
        assert_eq!(
            a.arith(&b, ArithOp::Add).unwrap(),
            RingElement::Rational(Rational::new(5, 6))
        );
        assert_eq!(
            a.arith(&b, ArithOp::Sub).unwrap(),
            RingElement::Rational(Rational::new(1, 6))
        );
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = RingElement::Rational(Rational::new(1, 2));
        let b = ring_lift(&Rational::new(1, 2), RingId::LocalQx);
        assert_eq!(
            a.arith(&b, ArithOp::Mul),
            Err(Error::RingMismatch {
                left: RingId::Rationals,
                right: RingId::LocalQx
            })
        );
    }

    #[test]
    fn lift_examples() {
        let five = ring_lift(&Rational::from(5), RingId::LocalQx);
        assert_eq!(five.residue(), Rational::from(5));
        assert_eq!(five.ring(), RingId::LocalQx);
        let z = ring_lift(&Rational::zero(), RingId::Rationals);
        assert_eq!(z, RingElement::Rational(Rational::zero()));
        let v = Rational::new(-2, 3);
        assert_eq!(ring_lift(&v, RingId::Rationals).residue(), v);
    }

    #[test]
    fn parse_by_ring() {
        let v = serde_json::json!("3/4");
        assert_eq!(
            RingElement::parse_json(&v, RingId::Rationals).unwrap(),
            RingElement::Rational(Rational::new(3, 4))
        );
        let w = serde_json::json!({"num": ["2", "1"], "den": ["1", "3"]});
        let e = RingElement::parse_json(&w, RingId::LocalQx).unwrap();
        assert_eq!(e.residue(), Rational::from(2));
        assert!(RingElement::parse_json(&w, RingId::Rationals).is_err());
    }
}

//! Dense univariate polynomials over a base ring.

use std::fmt;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::{BaseRing, ExactDomain, Rational, RingId, ZPoly};

/// Polynomial with coefficients in ascending degree and no trailing zeros.
/// The zero polynomial has an empty coefficient list and no degree.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: BaseRing> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| R::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Poly::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: R, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    /// Coefficient of `t^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn constant_term(&self) -> R {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i).sub(&rhs.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let (xa, da) = R::clear_denominators(&self.coeffs);
        let (xb, db) = R::clear_denominators(&rhs.coeffs);
        let mut out = vec![R::Domain::zero(); xa.len() + xb.len() - 1];
        for (i, a) in xa.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in xb.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        let den = da.mul(&db);
        Poly::new(
            out.iter()
                .map(|v| R::from_quotient(v, &den).expect("product stays in the ring"))
                .collect(),
        )
    }

    pub fn scale(&self, c: &R) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn eval(&self, at: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc.mul(at).add(c))
    }

    /// Division with remainder by a monic divisor; valid over any ring.
    pub fn divmod_monic(&self, divisor: &Self) -> Result<(Self, Self)> {
        if !divisor.is_monic() {
            return Err(Error::NotMonic);
        }
        let d = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= d {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![R::zero(); rem.len() - d];
        for k in (d..rem.len()).rev() {
            let lead = rem[k].clone();
            if lead.is_zero() {
                continue;
            }
            let shift = k - d;
            for (i, g) in divisor.coeffs[..d].iter().enumerate() {
                rem[shift + i] = rem[shift + i].sub(&lead.mul(g));
            }
            rem[k] = R::zero();
            quot[shift] = lead;
        }
        rem.truncate(d);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn residue(&self) -> Poly<Rational> {
        Poly::new(self.coeffs.iter().map(|c| c.residue()).collect())
    }

    pub fn lift(p: &Poly<Rational>) -> Self {
        Poly::new(p.coeffs.iter().map(R::lift).collect())
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*{var}"),
                _ => format!("({c})*{var}^{i}"),
            })
            .collect();
        terms.join(" + ")
    }
}

impl<R: BaseRing> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("t"))
    }
}

// Field-specific operations over Q, used by the rational-function layer.
impl Poly<Rational> {
    /// Euclidean division over the field `Q`.
    pub fn divmod(&self, divisor: &Self) -> (Self, Self) {
        let lead = divisor.leading().expect("division by zero polynomial");
        let inv = lead.invert().expect("nonzero leading coefficient");
        let monic = divisor.scale(&inv);
        let (q, r) = self
            .divmod_monic(&monic)
            .expect("scaled divisor is monic");
        (q.scale(&inv), r)
    }

    pub fn make_monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.invert().expect("nonzero")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let int = |p: &Self| ZPoly::new(Rational::clear_denominators(p.coeffs()).0);
        let g = int(self).gcd(&int(other));
        Poly::new(g.coeffs().iter().cloned().map(Rational::integer).collect()).make_monic()
    }
}

#[derive(Serialize)]
struct PolyOut<'a, R> {
    ring: RingId,
    coeffs: &'a [R],
}

#[derive(Deserialize)]
struct PolyIn<R> {
    ring: Option<RingId>,
    coeffs: Vec<R>,
}

impl<R: BaseRing + Serialize> Serialize for Poly<R> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyOut {
            ring: R::ID,
            coeffs: &self.coeffs,
        }
        .serialize(serializer)
    }
}

impl<'de, R: BaseRing + DeserializeOwned> Deserialize<'de> for Poly<R> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyIn::<R>::deserialize(deserializer)?;
        if let Some(ring) = raw.ring {
            if ring != R::ID {
                return Err(serde::de::Error::custom(format!(
                    "polynomial over {ring} where {} was expected",
                    R::ID
                )));
            }
        }
        Ok(Poly::new(raw.coeffs))
    }
}

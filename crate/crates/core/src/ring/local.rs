use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::zpoly::ZPoly;
use super::{BaseRing, Rational, RingId};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Element of `Q[x]` localized at `(x)`, stored as coprime integer
/// polynomials `num/den` with jointly primitive coefficients and
/// `den(0) > 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocalRatFunc {
    num: ZPoly,
    den: ZPoly,
}

fn integral(p: &Poly<Rational>) -> (ZPoly, BigInt) {
    let (scaled, d) = Rational::clear_denominators(p.coeffs());
    (ZPoly::new(scaled), d)
}

fn to_rational(p: &ZPoly, d: &BigInt) -> Poly<Rational> {
    Poly::new(p.coeffs().iter().map(|c| Rational::new(c.clone(), d.clone())).collect())
}

/// Gcd including the integer content.
fn full_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let c = a.content().gcd(&b.content());
    a.gcd(b).scale(&c)
}

impl LocalRatFunc {
    /// Builds `num/den` in canonical form. Fails with [`Error::NotLocal`] if
    /// the reduced denominator vanishes at 0.
    pub fn new(num: Poly<Rational>, den: Poly<Rational>) -> Result<Self> {
        let (n, dn) = integral(&num);
        let (d, dd) = integral(&den);
        Self::reduced(n.scale(&dd), d.scale(&dn))
    }

    /// Polynomial element (denominator 1).
    pub fn poly(num: Poly<Rational>) -> Self {
        let (n, d) = integral(&num);
        Self::normalized(n, ZPoly::constant(d)).expect("constant denominator")
    }

    pub fn from_ints(num: &[i64], den: &[i64]) -> Result<Self> {
        Self::reduced(ZPoly::from(num.to_vec()), ZPoly::from(den.to_vec()))
    }

    /// Numerator, scaled so that the denominator has constant term 1.
    pub fn num(&self) -> Poly<Rational> {
        to_rational(&self.num, &self.den.constant_term())
    }

    /// Denominator with constant term 1.
    pub fn den(&self) -> Poly<Rational> {
        to_rational(&self.den, &self.den.constant_term())
    }

    fn reduced(num: ZPoly, den: ZPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::NotLocal);
        }
        if num.is_zero() {
            return Ok(Self::zero_value());
        }
        if num.is_constant() || den.is_constant() {
            return Self::normalized(num, den);
        }
        let g = num.gcd(&den);
        if g.is_constant() {
            Self::normalized(num, den)
        } else {
            Self::normalized(num.div_exact(&g), den.div_exact(&g))
        }
    }

    // Assumes num/den coprime as polynomials.
    fn normalized(num: ZPoly, den: ZPoly) -> Result<Self> {
        let d0 = den.constant_term();
        if d0.is_zero() {
            return Err(Error::NotLocal);
        }
        let mut c = num.content().gcd(&den.content());
        if d0.is_negative() {
            c = -c;
        }
        if c.is_one() {
            return Ok(LocalRatFunc { num, den });
        }
        Ok(LocalRatFunc {
            num: num.div_scalar(&c),
            den: den.div_scalar(&c),
        })
    }

    fn zero_value() -> Self {
        LocalRatFunc {
            num: ZPoly::default(),
            den: ZPoly::one(),
        }
    }

    fn has_unit_den(&self) -> bool {
        self.den.is_constant()
    }

    fn closed(num: ZPoly, den: ZPoly) -> Self {
        Self::reduced(num, den).expect("closed under ring operations")
    }
}

impl fmt::Display for LocalRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.has_unit_den() {
            write!(f, "{}", self.num().fmt_var("x"))
        } else {
            write!(f, "[{}]/[{}]", self.num().fmt_var("x"), self.den().fmt_var("x"))
        }
    }
}

impl fmt::Debug for LocalRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl BaseRing for LocalRatFunc {
    type Domain = ZPoly;

    const ID: RingId = RingId::LocalQx;

    fn zero() -> Self {
        Self::zero_value()
    }

    fn one() -> Self {
        LocalRatFunc {
            num: ZPoly::one(),
            den: ZPoly::one(),
        }
    }

    fn from_i64(v: i64) -> Self {
        Self::lift(&Rational::from(v))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        if BaseRing::is_zero(self) {
            return rhs.clone();
        }
        if BaseRing::is_zero(rhs) {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::closed(self.num.add(&rhs.num), self.den.clone());
        }
        if self.has_unit_den() && rhs.has_unit_den() {
            let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            return Self::normalized(num, self.den.mul(&rhs.den)).expect("unit denominator");
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Self::closed(num, self.den.mul(&rhs.den))
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if BaseRing::is_zero(self) || BaseRing::is_zero(rhs) {
            return Self::zero_value();
        }
        // cross-cancel so the product is reduced without a final gcd
        let cut = |p: &ZPoly, q: &ZPoly| -> (ZPoly, ZPoly) {
            if p.is_constant() || q.is_constant() {
                return (p.clone(), q.clone());
            }
            let g = p.gcd(q);
            if g.is_constant() {
                (p.clone(), q.clone())
            } else {
                (p.div_exact(&g), q.div_exact(&g))
            }
        };
        let (n1, d2) = cut(&self.num, &rhs.den);
        let (n2, d1) = cut(&rhs.num, &self.den);
        Self::normalized(n1.mul(&n2), d1.mul(&d2)).expect("closed under ring operations")
    }

    fn neg(&self) -> Self {
        LocalRatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn invert(&self) -> Result<Self> {
        if self.num.constant_term().is_zero() {
            return Err(Error::NotInvertible);
        }
        Self::normalized(self.den.clone(), self.num.clone())
    }

    fn residue(&self) -> Rational {
        Rational::new(self.num.constant_term(), self.den.constant_term())
    }

    fn lift(v: &Rational) -> Self {
        Self::normalized(ZPoly::constant(v.numer().clone()), ZPoly::constant(v.denom().clone()))
            .expect("nonzero denominator")
    }

    fn is_unit(&self) -> bool {
        !self.num.constant_term().is_zero()
    }

    fn clear_denominators(row: &[Self]) -> (Vec<ZPoly>, ZPoly) {
        let mut common = ZPoly::one();
        for v in row {
            if v.den.is_constant() && common.is_constant() {
                common = ZPoly::constant(common.constant_term().lcm(&v.den.constant_term()));
                continue;
            }
            let g = full_gcd(&common, &v.den);
            common = common.mul(&v.den.div_exact(&g));
        }
        let scaled = row
            .iter()
            .map(|v| v.num.mul(&common.div_exact(&v.den)))
            .collect();
        (scaled, common)
    }

    fn from_quotient(num: &ZPoly, den: &ZPoly) -> Option<Self> {
        Self::reduced(num.clone(), den.clone()).ok()
    }
}

#[derive(Serialize, Deserialize)]
struct FracJson {
    num: Vec<Rational>,
    den: Vec<Rational>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum LocalJson {
    Constant(Rational),
    Fraction(FracJson),
}

impl Serialize for LocalRatFunc {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let num = if BaseRing::is_zero(self) {
            vec![Rational::zero()]
        } else {
            self.num().coeffs().to_vec()
        };
        FracJson {
            num,
            den: self.den().coeffs().to_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LocalRatFunc {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match LocalJson::deserialize(deserializer)? {
            LocalJson::Constant(v) => Ok(LocalRatFunc::lift(&v)),
            LocalJson::Fraction(f) => LocalRatFunc::new(Poly::new(f.num), Poly::new(f.den))
                .map_err(|e| serde::de::Error::custom(format!("invalid local element: {e}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lf(num: &[i64], den: &[i64]) -> LocalRatFunc {
        LocalRatFunc::from_ints(num, den).unwrap()
    }

    #[test]
    fn cancellation() {
        // x/(1+x) * (1+x) = x
        let a = lf(&[0, 1], &[1, 1]);
        let b = lf(&[1, 1], &[1]);
        assert_eq!(a.mul(&b), lf(&[0, 1], &[1]));
    }

    #[test]
    fn canonical_form_normalizes_denominator() {
        let a = lf(&[2, 2], &[4, 2]); // (1+x)/(2+x)
        assert_eq!(a.den().constant_term(), Rational::one());
        assert_eq!(a, LocalRatFunc::new(
            Poly::from_ints(&[1, 1]),
            Poly::from_ints(&[2, 1]),
        ).unwrap());
        // common factor x cancels and leaves a local element
        let b = lf(&[0, 3], &[0, 1, 1]);
        assert_eq!(b, lf(&[3], &[1, 1]));
    }

    #[test]
    fn non_local_rejected() {
        assert_eq!(LocalRatFunc::from_ints(&[1], &[0, 1]), Err(Error::NotLocal));
        assert_eq!(LocalRatFunc::from_ints(&[1], &[]), Err(Error::NotLocal));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(lf(&[0, 1], &[1, 1]).invert(), Err(Error::NotInvertible));
        assert_eq!(lf(&[1, 1], &[1, -1]).invert().unwrap(), lf(&[1, -1], &[1, 1]));
    }

    #[test]
    fn residue_examples() {
        assert_eq!(lf(&[2, 1], &[1, 3]).residue(), Rational::from(2));
        assert_eq!(lf(&[0, 0, 1], &[1, 1]).residue(), Rational::zero());
    }

    #[test]
    fn json_forms() {
        let a = lf(&[2, 1], &[1, 3]);
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, r#"{"num":["2","1"],"den":["1","3"]}"#);
        assert_eq!(serde_json::from_str::<LocalRatFunc>(&js).unwrap(), a);
        let c: LocalRatFunc = serde_json::from_str(r#""5/3""#).unwrap();
        assert_eq!(c, LocalRatFunc::lift(&Rational::new(5, 3)));
        assert!(serde_json::from_str::<LocalRatFunc>(r#"{"num":["1"],"den":["0","1"]}"#).is_err());
        assert_eq!(serde_json::to_string(&LocalRatFunc::zero()).unwrap(), r#"{"num":["0"],"den":["1"]}"#);
    }

    #[test]
    fn clear_denominators_row() {
        let row = [lf(&[1], &[1, 1]), lf(&[0, 1], &[1, -1]), lf(&[2], &[1])];
        let (scaled, common) = LocalRatFunc::clear_denominators(&row);
        for (s, v) in scaled.iter().zip(&row) {
            assert_eq!(LocalRatFunc::from_quotient(s, &common).unwrap(), *v);
        }
        assert_eq!(common.degree(), Some(2));
    }
}

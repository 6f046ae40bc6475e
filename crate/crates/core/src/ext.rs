//! Simple extensions `S = R[t]/(p(t))` with `p` monic and `p(0)` a unit.
//!
//! Elements are coordinate vectors in the basis `1, t, ..., t^(n-1)`. Other
//! bases `1, d, ..., d^(n-1)` are reached through exact linear solves.

use crate::error::{Error, Result};
use crate::linalg::{self, LinalgError, Matrix};
use crate::poly::Poly;
use crate::ring::{BaseRing, ExactDomain, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleExtension<R> {
    modulus: Poly<R>,
    n: usize,
}

/// Element of a simple extension, stored as its `n` canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtElement<R> {
    coords: Vec<R>,
}

impl<R: BaseRing> ExtElement<R> {
    pub fn coords(&self) -> &[R] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<R> {
        self.coords
    }

    /// The representative polynomial of degree `< n`.
    pub fn to_poly(&self) -> Poly<R> {
        Poly::new(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(R::is_zero)
    }
}

impl<R: BaseRing> SimpleExtension<R> {
    /// Validates `p` and builds `R[t]/(p)`.
    pub fn new(p: Poly<R>) -> Result<Self> {
        let n = match p.degree() {
            None | Some(0) => {
                return Err(Error::Dimension(
                    "extension polynomial must have degree at least 1".into(),
                ))
            }
            Some(d) => d,
        };
        if !p.is_monic() {
            return Err(Error::NotMonic);
        }
        if !p.constant_term().is_unit() {
            return Err(Error::NotSimple);
        }
        Ok(SimpleExtension { modulus: p, n })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> &Poly<R> {
        &self.modulus
    }

    pub fn element(&self, coords: Vec<R>) -> Result<ExtElement<R>> {
        if coords.len() != self.n {
            return Err(Error::Dimension(format!(
                "element has {} coordinates, extension has degree {}",
                coords.len(),
                self.n
            )));
        }
        Ok(ExtElement { coords })
    }

    /// Class of a polynomial modulo `p`.
    pub fn from_poly(&self, f: &Poly<R>) -> ExtElement<R> {
        let (_, r) = f
            .divmod_monic(&self.modulus)
            .expect("modulus is monic");
        self.pad(r.into_coeffs())
    }

    fn pad(&self, mut coords: Vec<R>) -> ExtElement<R> {
        coords.resize(self.n, R::zero());
        ExtElement { coords }
    }

    pub fn zero(&self) -> ExtElement<R> {
        self.pad(Vec::new())
    }

    pub fn one(&self) -> ExtElement<R> {
        self.scalar(R::one())
    }

    pub fn scalar(&self, r: R) -> ExtElement<R> {
        self.pad(vec![r])
    }

    /// The class of `t`.
    pub fn generator(&self) -> ExtElement<R> {
        self.from_poly(&Poly::monomial(R::one(), 1))
    }

    pub fn is_scalar(&self, a: &ExtElement<R>) -> bool {
        a.coords[1..].iter().all(R::is_zero)
    }

    pub fn add(&self, a: &ExtElement<R>, b: &ExtElement<R>) -> ExtElement<R> {
        ExtElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x.add(y)).collect(),
        }
    }

    pub fn sub(&self, a: &ExtElement<R>, b: &ExtElement<R>) -> ExtElement<R> {
        ExtElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x.sub(y)).collect(),
        }
    }

    pub fn neg(&self, a: &ExtElement<R>) -> ExtElement<R> {
        ExtElement {
            coords: a.coords.iter().map(R::neg).collect(),
        }
    }

    pub fn scale(&self, r: &R, a: &ExtElement<R>) -> ExtElement<R> {
        ExtElement {
            coords: a.coords.iter().map(|x| x.mul(r)).collect(),
        }
    }

    pub fn mul(&self, a: &ExtElement<R>, b: &ExtElement<R>) -> ExtElement<R> {
        // Fraction-free: multiply cleared numerators, pseudo-reduce by the
        // cleared modulus and divide once at the end.
        let n = self.n;
        let (xa, da) = R::clear_denominators(&a.coords);
        let (xb, db) = R::clear_denominators(&b.coords);
        let mut prod = vec![R::Domain::zero(); 2 * n - 1];
        for (i, x) in xa.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in xb.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] = prod[i + j].add(&x.mul(y));
                }
            }
        }
        let (pm, _) = R::clear_denominators(self.modulus.coeffs());
        let lead_p = pm[n].clone();
        let monic = lead_p == R::Domain::one();
        let mut den = da.mul(&db);
        for k in (n..2 * n - 1).rev() {
            let lead = std::mem::replace(&mut prod[k], R::Domain::zero());
            if lead.is_zero() {
                continue;
            }
            if !monic {
                for v in prod[..k].iter_mut() {
                    *v = v.mul(&lead_p);
                }
                den = den.mul(&lead_p);
            }
            for (i, pi) in pm[..n].iter().enumerate() {
                prod[k - n + i] = prod[k - n + i].sub(&lead.mul(pi));
            }
        }
        prod.truncate(n);
        let coords = prod
            .iter()
            .map(|v| R::from_quotient(v, &den).expect("product stays in the ring"))
            .collect();
        ExtElement { coords }
    }

    pub fn square(&self, a: &ExtElement<R>) -> ExtElement<R> {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &ExtElement<R>, e: usize) -> ExtElement<R> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Multiplication by `t`: a shift followed by one reduction step.
    fn mul_by_generator(&self, a: &ExtElement<R>) -> ExtElement<R> {
        let n = self.n;
        let top = a.coords[n - 1].clone();
        let p = self.modulus.coeffs();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let shifted = if i == 0 { R::zero() } else { a.coords[i - 1].clone() };
            out.push(if top.is_zero() { shifted } else { shifted.sub(&top.mul(&p[i])) });
        }
        ExtElement { coords: out }
    }

    /// Matrix of `y -> a*y`; column `j` holds the coordinates of `a*t^j`.
    pub fn mult_matrix(&self, a: &ExtElement<R>) -> Matrix<R> {
        let mut cols = Vec::with_capacity(self.n);
        let mut cur = a.clone();
        for j in 0..self.n {
            if j > 0 {
                cur = self.mul_by_generator(&cur);
            }
            cols.push(cur.coords.clone());
        }
        Matrix::from_columns(&cols)
    }

    /// `N(a) = det(l_a)`.
    pub fn norm(&self, a: &ExtElement<R>) -> R {
        self.mult_matrix(a).det()
    }

    pub fn is_unit(&self, a: &ExtElement<R>) -> bool {
        self.norm(a).is_unit()
    }

    pub fn inv(&self, a: &ExtElement<R>) -> Result<ExtElement<R>> {
        let sol = linalg::solve(&self.mult_matrix(a), &[self.one().coords])
            .map_err(|_| Error::NotInvertible)?;
        if !sol.det.is_unit() {
            return Err(Error::NotInvertible);
        }
        let coords = sol.columns.into_iter().next().expect("one column");
        Ok(ExtElement { coords })
    }

    /// Column `j` holds the coordinates of `b^j`.
    pub fn powers_matrix(&self, b: &ExtElement<R>) -> Matrix<R> {
        let mut cols = Vec::with_capacity(self.n);
        let mut cur = self.one();
        for j in 0..self.n {
            if j > 0 {
                cur = self.mul(&cur, b);
            }
            cols.push(cur.coords.clone());
        }
        Matrix::from_columns(&cols)
    }

    /// `b` is a unit whose powers `1, b, ..., b^(n-1)` form an `R`-basis.
    pub fn is_primitive(&self, b: &ExtElement<R>) -> bool {
        self.powers_matrix(b).det().is_unit() && self.is_unit(b)
    }

    /// Coordinates of each `x` in the basis of powers of `d`.
    pub fn coords_in_basis_many(
        &self,
        xs: &[ExtElement<R>],
        d: &ExtElement<R>,
    ) -> Result<Vec<Vec<R>>> {
        let rhs: Vec<Vec<R>> = xs.iter().map(|x| x.coords.clone()).collect();
        let sol = match linalg::solve(&self.powers_matrix(d), &rhs) {
            Ok(sol) => sol,
            Err(LinalgError::Singular) => return Err(Error::NotPrimitive),
            Err(LinalgError::NotIntegral) => {
                return Err(if self.is_primitive(d) {
                    Error::CoordinateNotIntegral
                } else {
                    Error::NotPrimitive
                })
            }
        };
        if !sol.det.is_unit() || !self.is_unit(d) {
            return Err(Error::NotPrimitive);
        }
        Ok(sol.columns)
    }

    pub fn coords_in_basis(&self, x: &ExtElement<R>, d: &ExtElement<R>) -> Result<Vec<R>> {
        Ok(self
            .coords_in_basis_many(std::slice::from_ref(x), d)?
            .pop()
            .expect("one column"))
    }

    /// `{x, d}`: the coefficient of `d^(n-1)` in the expansion of `x`.
    pub fn top_coeff(&self, x: &ExtElement<R>, d: &ExtElement<R>) -> Result<R> {
        Ok(self.coords_in_basis(x, d)?.pop().expect("n >= 1"))
    }

    /// Monic `p_b` of degree `n` with `p_b(b) = 0`, read off from `b^n`
    /// expressed in the basis of powers of `b`.
    pub fn min_poly(&self, b: &ExtElement<R>) -> Result<Poly<R>> {
        let bn = self.pow(b, self.n);
        let a = self.coords_in_basis(&bn, b)?;
        let mut coeffs: Vec<R> = a.iter().map(R::neg).collect();
        coeffs.push(R::one());
        Ok(Poly::new(coeffs))
    }

    /// `S/mS = k[t]/(p mod m)`.
    pub fn residue_extension(&self) -> SimpleExtension<Rational> {
        SimpleExtension::new(self.modulus.residue())
            .expect("reduction of a simple extension is simple")
    }

    /// Coordinatewise reduction into the residue extension.
    pub fn reduce(&self, a: &ExtElement<R>) -> ExtElement<Rational> {
        ExtElement {
            coords: a.coords.iter().map(R::residue).collect(),
        }
    }

    /// Coordinatewise constant lift from the residue extension.
    pub fn lift(&self, a: &ExtElement<Rational>) -> ExtElement<R> {
        ExtElement {
            coords: a.coords.iter().map(R::lift).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::LocalRatFunc;

    type Q = Rational;

    fn q(s: &str) -> Q {
        s.parse().unwrap()
    }

    fn ext(p: &[i64]) -> SimpleExtension<Q> {
        SimpleExtension::new(Poly::from_ints(p)).unwrap()
    }

    fn el(e: &SimpleExtension<Q>, c: &[&str]) -> ExtElement<Q> {
        e.element(c.iter().map(|s| q(s)).collect()).unwrap()
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Q::from(v)).collect()).collect())
    }

    #[test]
    fn make_validates() {
        assert_eq!(ext(&[-2, 0, 1]).degree(), 2);
        assert_eq!(
            SimpleExtension::<Q>::new(Poly::from_ints(&[0, 0, 1])),
            Err(Error::NotSimple)
        );
        assert_eq!(
            SimpleExtension::<Q>::new(Poly::from_ints(&[1, 2])),
            Err(Error::NotMonic)
        );
        assert!(SimpleExtension::<Q>::new(Poly::from_ints(&[1])).is_err());
        // t^2 - (1+x): constant term -(1+x) is a unit
        let p = Poly::new(vec![
            LocalRatFunc::from_ints(&[-1, -1], &[1]).unwrap(),
            LocalRatFunc::zero(),
            LocalRatFunc::one(),
        ]);
        assert!(SimpleExtension::new(p).is_ok());
        let bad = Poly::new(vec![
            LocalRatFunc::from_ints(&[0, 1], &[1]).unwrap(),
            LocalRatFunc::zero(),
            LocalRatFunc::one(),
        ]);
        assert_eq!(SimpleExtension::new(bad), Err(Error::NotSimple));
    }

    #[test]
    fn multiplication_and_inverse() {
        let s2 = ext(&[-2, 0, 1]);
        let t = s2.generator();
        assert_eq!(s2.mul(&t, &t), s2.scalar(Q::from(2)));
        let si = ext(&[1, 0, 1]);
        let a = el(&si, &["2", "1"]);
        assert_eq!(si.inv(&a).unwrap(), el(&si, &["2/5", "-1/5"]));
        assert_eq!(s2.inv(&s2.zero()), Err(Error::NotInvertible));
        // 1 + t is a zero divisor in Q[t]/(t^2 - 1)
        let split = ext(&[-1, 0, 1]);
        assert_eq!(split.inv(&el(&split, &["1", "1"])), Err(Error::NotInvertible));
    }

    #[test]
    fn mult_matrix_and_norm() {
        let s2 = ext(&[-2, 0, 1]);
        assert_eq!(s2.mult_matrix(&s2.generator()), mat(&[&[0, 2], &[1, 0]]));
        assert_eq!(s2.mult_matrix(&s2.one()), Matrix::identity(2));
        assert_eq!(s2.norm(&s2.generator()), Q::from(-2));
        assert_eq!(s2.norm(&s2.one()), Q::one());
        let si = ext(&[1, 0, 1]);
        let a = el(&si, &["2", "1"]);
        assert_eq!(si.mult_matrix(&a), mat(&[&[2, -1], &[1, 2]]));
        assert_eq!(si.norm(&a), Q::from(5));
    }

    #[test]
    fn primitivity() {
        let s2 = ext(&[-2, 0, 1]);
        let three = s2.scalar(Q::from(3));
        assert_eq!(s2.powers_matrix(&three), mat(&[&[1, 3], &[0, 0]]));
        assert!(!s2.is_primitive(&three));
        let b = el(&s2, &["1", "1"]);
        assert_eq!(s2.powers_matrix(&b), mat(&[&[1, 1], &[0, 1]]));
        assert!(s2.is_primitive(&b));
        assert!(ext(&[1, 0, 1]).is_primitive(&ext(&[1, 0, 1]).generator()));
        // powers of t-1 span Q[t]/(t^2-1) but t-1 is a zero divisor
        let split = ext(&[-1, 0, 1]);
        assert!(!split.is_primitive(&el(&split, &["-1", "1"])));
    }

    #[test]
    fn coordinates_in_other_bases() {
        let s2 = ext(&[-2, 0, 1]);
        let d = el(&s2, &["1", "1"]);
        assert_eq!(s2.coords_in_basis(&s2.generator(), &d).unwrap(), vec![q("-1"), q("1")]);
        assert_eq!(s2.coords_in_basis(&d, &d).unwrap(), vec![q("0"), q("1")]);
        let si = ext(&[1, 0, 1]);
        let d = el(&si, &["2", "1"]);
        let x = el(&si, &["3/2", "1/2"]);
        assert_eq!(si.coords_in_basis(&x, &d).unwrap(), vec![q("1/2"), q("1/2")]);
        assert_eq!(si.top_coeff(&x, &d).unwrap(), q("1/2"));
        assert_eq!(si.top_coeff(&si.one(), &d).unwrap(), q("0"));
        assert_eq!(si.top_coeff(&d, &d).unwrap(), q("1"));
        let s3 = ext(&[-1, -1, 0, 1]);
        let d3 = el(&s3, &["1", "2", "0"]);
        assert_eq!(s3.top_coeff(&d3, &d3).unwrap(), q("0"));
        assert_eq!(
            s2.coords_in_basis(&d, &s2.scalar(Q::from(3))),
            Err(Error::NotPrimitive)
        );
    }

    #[test]
    fn minimal_polynomials() {
        let s2 = ext(&[-2, 0, 1]);
        assert_eq!(s2.min_poly(&s2.generator()).unwrap(), *s2.modulus());
        assert_eq!(
            s2.min_poly(&el(&s2, &["1", "1"])).unwrap(),
            Poly::from_ints(&[-1, -2, 1])
        );
        let si = ext(&[1, 0, 1]);
        assert_eq!(
            si.min_poly(&el(&si, &["2", "1"])).unwrap(),
            Poly::from_ints(&[5, -4, 1])
        );
        assert_eq!(s2.min_poly(&s2.one()), Err(Error::NotPrimitive));
    }

    #[test]
    fn reduction_to_residue_field() {
        let s2 = ext(&[-2, 0, 1]);
        let a = el(&s2, &["3/4", "-2"]);
        assert_eq!(s2.reduce(&a), a);
        let one_plus_x = LocalRatFunc::from_ints(&[1, 1], &[1]).unwrap();
        let x = LocalRatFunc::from_ints(&[0, 1], &[1]).unwrap();
        let local = SimpleExtension::new(Poly::new(vec![
            one_plus_x.neg(),
            LocalRatFunc::zero(),
            LocalRatFunc::one(),
        ]))
        .unwrap();
        let a = local.element(vec![one_plus_x, x]).unwrap();
        let bar = local.residue_extension();
        assert_eq!(*bar.modulus(), Poly::from_ints(&[-1, 0, 1]));
        assert_eq!(local.reduce(&a), bar.one());
    }
}

//! Certificate checking. Only base-ring arithmetic is shared with the
//! certifier: the form, the multiplication in `S` and the determinant
//! (division-free, Berkowitz) are recomputed here.

use std::fmt;

use super::NormCertificate;
use crate::ext::{ExtElement, SimpleExtension};
use crate::qform::QuadraticForm;
use crate::ring::{BaseRing, ExactDomain};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    /// Shapes and exponents are well formed.
    Shape,
    /// Every factor value is a unit.
    FactorUnits,
    /// The factor values multiply to the target.
    Product,
    /// The target is the norm of the represented value.
    Target,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::Shape => "shape",
            Check::FactorUnits => "factor-units",
            Check::Product => "product",
            Check::Target => "target",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected { check: Check, detail: String },
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }

    fn reject(check: Check, detail: impl Into<String>) -> Self {
        Verdict::Rejected {
            check,
            detail: detail.into(),
        }
    }
}

fn form_value<R: BaseRing>(diag: &[R], y: &[R]) -> R {
    let mut acc = R::zero();
    for (a, v) in diag.iter().zip(y) {
        acc = acc.add(&a.mul(&v.mul(v)));
    }
    acc
}

/// Product of two residues modulo the monic `modulus` (ascending
/// coefficients), on cleared numerators with a single division at the end.
fn mul_mod<R: BaseRing>(a: &[R], b: &[R], modulus: &[R]) -> Vec<R> {
    let n = modulus.len() - 1;
    let (xa, da) = R::clear_denominators(a);
    let (xb, db) = R::clear_denominators(b);
    let (pm, _) = R::clear_denominators(modulus);
    let mut prod = vec![R::Domain::zero(); xa.len() + xb.len()];
    for (i, x) in xa.iter().enumerate() {
        for (j, y) in xb.iter().enumerate() {
            prod[i + j] = prod[i + j].add(&x.mul(y));
        }
    }
    let mut den = da.mul(&db);
    for k in (n..prod.len()).rev() {
        let lead = prod[k].clone();
        if lead.is_zero() {
            continue;
        }
        for v in prod[..=k].iter_mut() {
            *v = v.mul(&pm[n]);
        }
        den = den.mul(&pm[n]);
        for i in 0..=n {
            prod[k - n + i] = prod[k - n + i].sub(&lead.mul(&pm[i]));
        }
    }
    prod.truncate(n);
    prod.resize(n, R::Domain::zero());
    prod.iter()
        .map(|v| R::from_quotient(v, &den).expect("residues stay in the ring"))
        .collect()
}

/// Characteristic polynomial coefficients `[1, c_1, ..., c_n]` of
/// `det(lambda I - A)` by Berkowitz' recursion.
fn char_poly<R: BaseRing>(a: &[Vec<R>]) -> Vec<R> {
    let n = a.len();
    if n == 0 {
        return vec![R::one()];
    }
    let sub: Vec<Vec<R>> = a[1..].iter().map(|row| row[1..].to_vec()).collect();
    let inner = char_poly(&sub);
    let row = &a[0][1..];
    let mut col: Vec<R> = a[1..].iter().map(|r| r[0].clone()).collect();
    let mut toeplitz = vec![R::one(), a[0][0].neg()];
    for _ in 2..=n {
        let s = row
            .iter()
            .zip(&col)
            .fold(R::zero(), |acc, (x, y)| acc.add(&x.mul(y)));
        toeplitz.push(s.neg());
        col = sub
            .iter()
            .map(|r| r.iter().zip(&col).fold(R::zero(), |acc, (x, y)| acc.add(&x.mul(y))))
            .collect();
    }
    (0..=n)
        .map(|i| {
            (0..=i.min(n - 1)).fold(R::zero(), |acc, j| acc.add(&toeplitz[i - j].mul(&inner[j])))
        })
        .collect()
}

fn det_division_free<R: BaseRing>(a: &[Vec<R>]) -> R {
    let n = a.len();
    let cn = char_poly(a).pop().expect("nonempty");
    if n.is_multiple_of(2) {
        cn
    } else {
        cn.neg()
    }
}

/// Checks a certificate against its instance.
pub fn verify<R: BaseRing>(
    ext: &SimpleExtension<R>,
    q: &QuadraticForm<R>,
    xs: &[ExtElement<R>],
    cert: &NormCertificate<R>,
) -> Verdict {
    let m = q.rank();
    let n = ext.degree();
    let diag = q.diag();
    if xs.len() != m || xs.iter().any(|x| x.coords().len() != n) {
        return Verdict::reject(Check::Shape, "witness does not match the instance");
    }
    for (i, f) in cert.factors.iter().enumerate() {
        if f.vector.len() != m {
            return Verdict::reject(Check::Shape, format!("factor {i} has length {}", f.vector.len()));
        }
        if f.exponent != 1 && f.exponent != -1 {
            return Verdict::reject(Check::Shape, format!("factor {i} has exponent {}", f.exponent));
        }
    }

    let mut product = R::one();
    for (i, f) in cert.factors.iter().enumerate() {
        let v = form_value(diag, &f.vector);
        let Ok(v_inv) = v.invert() else {
            return Verdict::reject(Check::FactorUnits, format!("factor {i} has non-unit value {v}"));
        };
        product = product.mul(if f.exponent == 1 { &v } else { &v_inv });
    }
    if product != cert.target {
        return Verdict::reject(
            Check::Product,
            format!("factors multiply to {product}, certificate claims {}", cert.target),
        );
    }

    let modulus = ext.modulus().coeffs();
    let mut c = vec![R::zero(); n];
    for (a, x) in diag.iter().zip(xs) {
        let sq = mul_mod(x.coords(), x.coords(), modulus);
        for (ci, si) in c.iter_mut().zip(&sq) {
            *ci = ci.add(&a.mul(si));
        }
    }
    // rows of the multiplication matrix: entry (i, j) is coordinate i of c t^j
    let mut columns = Vec::with_capacity(n);
    let mut t_pow = vec![R::zero(); n];
    t_pow[0] = R::one();
    let mut t = vec![R::zero(); n];
    if n > 1 {
        t[1] = R::one();
    } else {
        t[0] = modulus[0].neg();
    }
    for _ in 0..n {
        columns.push(mul_mod(&c, &t_pow, modulus));
        t_pow = mul_mod(&t_pow, &t, modulus);
    }
    let matrix: Vec<Vec<R>> = (0..n)
        .map(|i| columns.iter().map(|col| col[i].clone()).collect())
        .collect();
    let norm = det_division_free(&matrix);
    if norm != cert.target {
        return Verdict::reject(
            Check::Target,
            format!("norm of q_S(x) is {norm}, certificate claims {}", cert.target),
        );
    }
    Verdict::Accepted
}

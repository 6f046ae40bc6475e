//! Dense polynomials over the integers: the working domain of the local
//! ring, where elimination and cancellation avoid rational arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::sync::OnceLock;


/// Coefficients in ascending order with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZPoly(Vec<BigInt>);

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ZPoly(coeffs)
    }

    pub fn constant(c: BigInt) -> Self {
        ZPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn constant_term(&self) -> BigInt {
        self.0.first().cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.0.last()
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `d`, which must divide them all.
    pub fn div_scalar(&self, d: &BigInt) -> Self {
        if d.is_one() {
            return self.clone();
        }
        ZPoly(self.0.iter().map(|c| c / d).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return ZPoly::default();
        }
        ZPoly(self.0.iter().map(|a| a * c).collect())
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        let mut c = self.content();
        if c.is_zero() {
            return ZPoly::default();
        }
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        self.div_scalar(&c)
    }

    pub fn eval(&self, at: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * at + c)
    }

    /// `self / rhs` if the quotient exists in `Z[x]`.
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        let db = rhs.degree().expect("division by the zero polynomial");
        let lb = rhs.leading().expect("nonzero");
        if self.0.is_empty() {
            return Some(ZPoly::default());
        }
        if self.0.len() <= db {
            return None;
        }
        let mut r = self.0.clone();
        let mut q = vec![BigInt::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let top = &r[k + db];
            if top.is_zero() {
                continue;
            }
            let (quot, rem) = top.div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            for (i, b) in rhs.0.iter().enumerate() {
                r[k + i] -= &quot * b;
            }
            q[k] = quot;
        }
        r.iter().all(Zero::is_zero).then(|| ZPoly::new(q))
    }

    /// Primitive greatest common divisor with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.0.is_empty() {
            return other.primitive_part();
        }
        if other.0.is_empty() {
            return self.primitive_part();
        }
        if self.is_constant() || other.is_constant() {
            return ZPoly::constant(BigInt::one());
        }
        let a = self.primitive_part();
        let b = other.primitive_part();
        if a == b {
            return a;
        }
        modular_gcd(&a, &b)
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Odd primes below `start`, in decreasing order.
fn primes_below(start: u64) -> impl Iterator<Item = u64> {
    (1..start / 2).map(move |k| (start | 1) - 2 * k).filter(|&n| is_prime(n))
}

/// Primes just below `2^62`, in decreasing order; the first few hundred
/// are computed once.
fn primes() -> impl Iterator<Item = u64> {
    static CACHE: OnceLock<Vec<u64>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| primes_below(1 << 62).take(256).collect());
    let last = *cache.last().expect("nonempty");
    cache.iter().copied().chain(primes_below(last))
}

fn reduce_mod(a: &ZPoly, p: u64) -> Vec<u64> {
    let big = BigInt::from(p);
    let mut v: Vec<u64> = a
        .0
        .iter()
        .map(|c| c.mod_floor(&big).iter_u64_digits().next().unwrap_or(0))
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Monic gcd over `F_p`.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        let inv = pow_mod(*b.last().expect("nonempty"), p - 2, p);
        while a.len() >= b.len() {
            let f = mul_mod(*a.last().expect("nonempty"), inv, p);
            let shift = a.len() - b.len();
            for (i, bc) in b.iter().enumerate() {
                let t = mul_mod(f, *bc, p);
                a[shift + i] = (a[shift + i] + p - t) % p;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    let inv = pow_mod(*a.last().expect("nonzero gcd"), p - 2, p);
    a.iter().map(|&c| mul_mod(c, inv, p)).collect()
}

/// Gcd of primitive nonconstant polynomials from images modulo word-size
/// primes, combined by Chinese remaindering until the lift divides both.
/// Primes dividing a leading coefficient are skipped; images of too large
/// a degree are unlucky and discarded.
fn modular_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let gamma = a.leading().expect("nonzero").gcd(b.leading().expect("nonzero"));
    let mut degree = usize::MAX;
    let mut residues: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut previous: Option<ZPoly> = None;
    for p in primes() {
        let (ra, rb) = (reduce_mod(a, p), reduce_mod(b, p));
        if ra.len() != a.0.len() || rb.len() != b.0.len() {
            continue;
        }
        let g = gcd_mod(ra, rb, p);
        let d = g.len() - 1;
        if d == 0 {
            return ZPoly::one();
        }
        if d > degree {
            continue;
        }
        if d < degree {
            degree = d;
            residues = vec![BigInt::zero(); d + 1];
            modulus = BigInt::one();
            previous = None;
        }
        let gp = reduce_mod(&ZPoly::constant(gamma.clone()), p).first().copied().unwrap_or(0);
        let big_p = BigInt::from(p);
        let m_inv = pow_mod(
            modulus.mod_floor(&big_p).iter_u64_digits().next().unwrap_or(0),
            p - 2,
            p,
        );
        for (r, &c) in residues.iter_mut().zip(&g) {
            let target = mul_mod(c, gp, p);
            let current = r.mod_floor(&big_p).iter_u64_digits().next().unwrap_or(0);
            let t = mul_mod((target + p - current) % p, m_inv, p);
            *r += &modulus * t;
        }
        modulus *= &big_p;
        let half = &modulus >> 1;
        let lifted = ZPoly::new(
            residues
                .iter()
                .map(|r| if *r > half { r - &modulus } else { r.clone() })
                .collect(),
        );
        if previous.as_ref() == Some(&lifted) {
            let candidate = lifted.primitive_part();
            if a.checked_div(&candidate).is_some() && b.checked_div(&candidate).is_some() {
                return candidate;
            }
        }
        previous = Some(lifted);
    }
    unreachable!("prime supply exhausted")
}

#[cfg(test)]
fn prs_gcd(mut a: ZPoly, mut b: ZPoly) -> ZPoly {
    if a.0.len() < b.0.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.0.is_empty() {
        if b.is_constant() {
            return ZPoly::constant(BigInt::one());
        }
        let r = pseudo_rem(&a.0, &b.0);
        a = b;
        b = ZPoly::new(r).primitive_part();
    }
    a.primitive_part()
}

/// Remainder of `lc(b)^k a` by `b`.
#[cfg(test)]
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let lr = r.pop().expect("nonempty");
        let shift = r.len() - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b[..db].iter().enumerate() {
            r[shift + i] -= &lr * bc;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly::default()
    }

    pub fn one() -> Self {
        ZPoly::constant(BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (long, short) = if self.0.len() >= rhs.0.len() { (self, rhs) } else { (rhs, self) };
        let mut out = long.0.clone();
        for (o, s) in out.iter_mut().zip(&short.0) {
            *o += s;
        }
        ZPoly::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.0.is_empty() || rhs.0.is_empty() {
            return ZPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }

    pub fn neg(&self) -> Self {
        ZPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn div_exact(&self, rhs: &Self) -> Self {
        if rhs.is_constant() {
            let d = rhs.constant_term();
            debug_assert!(self.0.iter().all(|c| c.is_multiple_of(&d)), "inexact division");
            return self.div_scalar(&d);
        }
        self.checked_div(rhs).expect("inexact polynomial division")
    }
}

impl super::ExactDomain for ZPoly {
    fn zero() -> Self {
        ZPoly::zero()
    }

    fn one() -> Self {
        ZPoly::one()
    }

    fn is_zero(&self) -> bool {
        ZPoly::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        ZPoly::add(self, rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        ZPoly::sub(self, rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        ZPoly::mul(self, rhs)
    }

    fn neg(&self) -> Self {
        ZPoly::neg(self)
    }

    fn div_exact(&self, rhs: &Self) -> Self {
        ZPoly::div_exact(self, rhs)
    }
}

impl From<Vec<i64>> for ZPoly {
    fn from(v: Vec<i64>) -> Self {
        ZPoly::new(v.into_iter().map(BigInt::from).collect())
    }
}

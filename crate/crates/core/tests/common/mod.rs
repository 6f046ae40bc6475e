//! Reference computations written against the bare ring operations only.
#![allow(dead_code)]

use npcert::qform::ValueFactor;
use npcert::ring::BaseRing;

/// Matrix of multiplication by `a` in `R[t]/(p)`, `p` monic, in the power basis.
/// Column `i` holds the coordinates of `t^i a`.
pub fn mult_matrix<R: BaseRing>(p: &[R], a: &[R]) -> Vec<Vec<R>> {
    let n = p.len() - 1;
    let mut v: Vec<R> = (0..n).map(|k| a.get(k).cloned().unwrap_or_else(R::zero)).collect();
    let mut cols = Vec::with_capacity(n);
    for _ in 0..n {
        cols.push(v.clone());
        let top = v[n - 1].clone();
        let mut next = vec![R::zero(); n];
        for k in 0..n {
            let shifted = if k == 0 { R::zero() } else { v[k - 1].clone() };
            next[k] = shifted.sub(&top.mul(&p[k]));
        }
        v = next;
    }
    (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
}

/// Cofactor expansion along the first row.
pub fn laplace_det<R: BaseRing>(m: &[Vec<R>]) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = R::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<R>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = m[0][j].mul(&laplace_det(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

pub fn norm<R: BaseRing>(p: &[R], a: &[R]) -> R {
    laplace_det(&mult_matrix(p, a))
}

/// `sum a_j v_j^2`.
pub fn form_value<R: BaseRing>(diag: &[R], v: &[R]) -> R {
    diag.iter().zip(v).fold(R::zero(), |acc, (a, x)| acc.add(&a.mul(&x.mul(x))))
}

/// `prod q(v_i)^e_i`, or `None` if a negative power hits a non-unit.
pub fn factor_product<R: BaseRing>(diag: &[R], factors: &[ValueFactor<R>]) -> Option<R> {
    let mut acc = R::one();
    for f in factors {
        let v = form_value(diag, &f.vector);
        let base = if f.exponent < 0 { v.invert().ok()? } else { v };
        acc = acc.mul(&base.pow(f.exponent.unsigned_abs()));
    }
    Some(acc)
}

/// Schoolbook product of coefficient vectors.
pub fn poly_mul<R: BaseRing>(a: &[R], b: &[R]) -> Vec<R> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![R::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(out)
}

pub fn trim<R: BaseRing>(mut v: Vec<R>) -> Vec<R> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

use super::field::{Fe, FiniteField};

/// `k[t]/(m)` for a monic `m` of degree `n`, elements as coordinate vectors
/// in `1, t, ..., t^{n-1}`.
#[derive(Clone, Debug)]
pub struct Algebra<'k> {
    pub field: &'k FiniteField,
    /// Low coefficients of `m`.
    low: Vec<Fe>,
}

impl<'k> Algebra<'k> {
    pub fn new(field: &'k FiniteField, low: Vec<Fe>) -> Self {
        assert!(!low.is_empty());
        Algebra { field, low }
    }

    pub fn degree(&self) -> usize {
        self.low.len()
    }

    pub fn modulus_constant(&self) -> Fe {
        self.low[0]
    }

    pub fn one(&self) -> Vec<Fe> {
        let mut v = vec![0; self.degree()];
        v[0] = 1;
        v
    }

    pub fn generator(&self) -> Vec<Fe> {
        let mut v = vec![0; self.degree()];
        if self.degree() > 1 {
            v[1] = 1;
        } else {
            v[0] = self.field.neg(self.low[0]);
        }
        v
    }

    /// All `|k|^n` elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Vec<Fe>> + '_ {
        let q = self.field.size();
        let n = self.degree();
        (0..q.pow(n as u32)).map(move |mut i| {
            (0..n)
                .map(|_| {
                    let d = (i % q) as Fe;
                    i /= q;
                    d
                })
                .collect()
        })
    }

    pub fn mul(&self, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        let k = self.field;
        let n = self.degree();
        let mut prod = vec![0; 2 * n];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = k.add(prod[i + j], k.mul(x, y));
            }
        }
        for top in (n..prod.len()).rev() {
            let lead = prod[top];
            if lead == 0 {
                continue;
            }
            prod[top] = 0;
            for (i, &c) in self.low.iter().enumerate() {
                let pos = top - n + i;
                prod[pos] = k.sub(prod[pos], k.mul(lead, c));
            }
        }
        prod.truncate(n);
        prod
    }

    pub fn square(&self, a: &[Fe]) -> Vec<Fe> {
        self.mul(a, a)
    }

    pub fn is_scalar(&self, a: &[Fe]) -> bool {
        a[1..].iter().all(|&v| v == 0)
    }

    /// Columns are the coordinates of `1, a, ..., a^{n-1}`.
    fn powers(&self, a: &[Fe]) -> Vec<Vec<Fe>> {
        let mut cols = vec![self.one()];
        for _ in 1..self.degree() {
            let next = self.mul(cols.last().expect("nonempty"), a);
            cols.push(next);
        }
        cols
    }

    fn mult_columns(&self, a: &[Fe]) -> Vec<Vec<Fe>> {
        let mut basis = self.one();
        let t = self.generator();
        (0..self.degree())
            .map(|_| {
                let col = self.mul(a, &basis);
                basis = self.mul(&basis, &t);
                col
            })
            .collect()
    }

    pub fn is_unit(&self, a: &[Fe]) -> bool {
        solve(self.field, &self.mult_columns(a), &self.one()).is_some()
    }

    pub fn inv(&self, a: &[Fe]) -> Option<Vec<Fe>> {
        solve(self.field, &self.mult_columns(a), &self.one())
    }

    /// Unit whose powers span the algebra.
    pub fn is_primitive(&self, a: &[Fe]) -> bool {
        self.is_unit(a) && self.coords_in_basis(&self.one(), a).is_some()
    }

    /// Coordinates of `x` in the basis `1, c, ..., c^{n-1}`, if it is one.
    pub fn coords_in_basis(&self, x: &[Fe], c: &[Fe]) -> Option<Vec<Fe>> {
        solve(self.field, &self.powers(c), x)
    }
}

/// Solves `sum_j x_j col_j = rhs` for a square system by Gauss–Jordan
/// elimination; `None` when singular.
fn solve(k: &FiniteField, cols: &[Vec<Fe>], rhs: &[Fe]) -> Option<Vec<Fe>> {
    let n = cols.len();
    let mut rows: Vec<Vec<Fe>> = (0..n)
        .map(|i| {
            let mut row: Vec<Fe> = cols.iter().map(|c| c[i]).collect();
            row.push(rhs[i]);
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| rows[r][col] != 0)?;
        rows.swap(col, pivot);
        let scale = k.inv(rows[col][col]);
        for v in rows[col].iter_mut() {
            *v = k.mul(*v, scale);
        }
        for r in 0..n {
            if r != col && rows[r][col] != 0 {
                let f = rows[r][col];
                for j in col..=n {
                    rows[r][j] = k.sub(rows[r][j], k.mul(f, rows[col][j]));
                }
            }
        }
    }
    Some(rows.into_iter().map(|r| r[n]).collect())
}

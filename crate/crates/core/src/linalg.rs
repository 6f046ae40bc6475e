//! Exact dense linear algebra.
//!
//! Matrices over a [`BaseRing`] are scaled row by row into the ring's
//! working domain (integers, or rational polynomials for the local ring) and
//! eliminated there fraction-free, with Bareiss' exact divisions. Results are
//! mapped back with a membership check.

use crate::ring::{BaseRing, ExactDomain};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinalgError {
    Singular,
    /// A solution coordinate is not an element of the base ring.
    NotIntegral,
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<T>]) -> Self {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        assert!(columns.iter().all(|c| c.len() == rows), "ragged columns");
        Matrix::from_fn(rows, cols, |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn with_column(&self, j: usize, col: &[T]) -> Self {
        assert_eq!(col.len(), self.rows);
        let mut out = self.clone();
        for (i, v) in col.iter().enumerate() {
            out.set(i, j, v.clone());
        }
        out
    }

    /// The submatrix with row `r` and column `c` deleted.
    pub fn minor_matrix(&self, r: usize, c: usize) -> Self {
        let rows: Vec<Vec<T>> = (0..self.rows)
            .filter(|&i| i != r)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| j != c)
                    .map(|j| self.get(i, j).clone())
                    .collect()
            })
            .collect();
        let cols = self.cols.saturating_sub(1);
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<R: BaseRing> Matrix<R> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(R::zero(), |acc, k| acc.add(&self.get(i, k).mul(rhs.get(k, j))))
        })
    }

    pub fn det(&self) -> R {
        det(self)
    }

    fn cleared(&self) -> (Matrix<R::Domain>, R::Domain) {
        let mut scale = R::Domain::one();
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let (row, common) = R::clear_denominators(self.row(i));
            scale = scale.mul(&common);
            rows.push(row);
        }
        (
            Matrix {
                rows: self.rows,
                cols: self.cols,
                data: rows.into_iter().flatten().collect(),
            },
            scale,
        )
    }
}

/// In-place fraction-free forward elimination on the first `n` columns of a
/// matrix with `n` rows. Returns the sign of the row permutation applied, or
/// `None` if the leading `n x n` block is singular.
fn bareiss_forward<D: ExactDomain>(m: &mut Matrix<D>) -> Option<bool> {
    let n = m.rows;
    let mut negated = false;
    let mut prev = D::one();
    for k in 0..n {
        if m.get(k, k).is_zero() {
            let pivot = (k + 1..n).find(|&i| !m.get(i, k).is_zero())?;
            m.swap_rows(k, pivot);
            negated = !negated;
        }
        let pkk = m.get(k, k).clone();
        for i in k + 1..n {
            let mik = m.get(i, k).clone();
            for j in k + 1..m.cols {
                let v = pkk
                    .mul(m.get(i, j))
                    .sub(&mik.mul(m.get(k, j)))
                    .div_exact(&prev);
                m.set(i, j, v);
            }
            m.set(i, k, D::zero());
        }
        prev = pkk;
    }
    Some(negated)
}

/// Determinant over an exact domain by Bareiss elimination.
pub fn bareiss_det<D: ExactDomain>(mut m: Matrix<D>) -> D {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return D::one();
    }
    match bareiss_forward(&mut m) {
        None => D::zero(),
        Some(negated) => {
            let d = m.get(n - 1, n - 1).clone();
            if negated {
                d.neg()
            } else {
                d
            }
        }
    }
}

pub fn det<R: BaseRing>(m: &Matrix<R>) -> R {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let (cleared, scale) = m.cleared();
    let d = bareiss_det(cleared);
    R::from_quotient(&d, &scale).expect("determinant of a matrix over R lies in R")
}

/// Solution of a square system with one or more right-hand sides.
#[derive(Debug, Clone)]
pub struct Solution<R> {
    pub det: R,
    /// `columns[k]` solves `A x = rhs[k]`.
    pub columns: Vec<Vec<R>>,
}

/// Solves `A x = b` for every `b` in `rhs` exactly.
pub fn solve<R: BaseRing>(a: &Matrix<R>, rhs: &[Vec<R>]) -> Result<Solution<R>, LinalgError> {
    assert!(a.is_square(), "solve needs a square system");
    let n = a.rows;
    let k = rhs.len();
    assert!(rhs.iter().all(|b| b.len() == n), "right-hand side length");
    let aug = Matrix::from_fn(n, n + k, |i, j| {
        if j < n {
            a.get(i, j).clone()
        } else {
            rhs[j - n][i].clone()
        }
    });
    let (mut m, scale) = aug.cleared();
    if n == 0 {
        return Ok(Solution {
            det: R::one(),
            columns: vec![Vec::new(); k],
        });
    }
    let negated = bareiss_forward(&mut m).ok_or(LinalgError::Singular)?;
    let d = m.get(n - 1, n - 1).clone();
    let signed = if negated { d.neg() } else { d.clone() };
    // clearing scaled row i by some c_i, so det(A) = det(cleared) / prod c_i
    let det = R::from_quotient(&signed, &scale).expect("determinant lies in R");
    let mut columns = Vec::with_capacity(k);
    for c in 0..k {
        // numerators[i] = d * x_i, computed by fraction-free back substitution
        let mut numerators = vec![R::Domain::zero(); n];
        for i in (0..n).rev() {
            let mut acc = d.mul(m.get(i, n + c));
            for j in i + 1..n {
                acc = acc.sub(&m.get(i, j).mul(&numerators[j]));
            }
            numerators[i] = acc.div_exact(m.get(i, i));
        }
        let col = numerators
            .iter()
            .map(|num| R::from_quotient(num, &d).ok_or(LinalgError::NotIntegral))
            .collect::<Result<Vec<_>, _>>()?;
        columns.push(col);
    }
    Ok(Solution { det, columns })
}

/// Rank over the fraction field.
pub fn rank<R: BaseRing>(m: &Matrix<R>) -> usize {
    let (mut w, _) = m.cleared();
    let mut r = 0;
    let mut prev = R::Domain::one();
    for col in 0..w.cols {
        if r == w.rows {
            break;
        }
        let Some(pivot) = (r..w.rows).find(|&i| !w.get(i, col).is_zero()) else {
            continue;
        };
        w.swap_rows(r, pivot);
        let p = w.get(r, col).clone();
        for i in r + 1..w.rows {
            let mic = w.get(i, col).clone();
            for j in col + 1..w.cols {
                let v = p.mul(w.get(i, j)).sub(&mic.mul(w.get(r, j))).div_exact(&prev);
                w.set(i, j, v);
            }
            w.set(i, col, R::Domain::zero());
        }
        prev = p;
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{LocalRatFunc, Rational};

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from(v)).collect())
                .collect(),
        )
    }

    // cofactor expansion, exponential but independent
    fn laplace(m: &Matrix<Rational>) -> Rational {
        if m.rows() == 0 {
            return Rational::one();
        }
        (0..m.cols()).fold(Rational::zero(), |acc, j| {
            let term = m.get(0, j).mul(&laplace(&m.minor_matrix(0, j)));
            if j % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            }
        })
    }

    #[test]
    fn small_determinants() {
        assert_eq!(qm(&[&[0, 2], &[1, 0]]).det(), Rational::from(-2));
        assert_eq!(qm(&[&[2, -1], &[1, 2]]).det(), Rational::from(5));
        assert_eq!(qm(&[&[1, 2], &[2, 4]]).det(), Rational::zero());
        assert_eq!(Matrix::<Rational>::identity(0).det(), Rational::one());
    }

    #[test]
    fn matches_cofactor_expansion() {
        let m = Matrix::from_fn(5, 5, |i, j| {
            Rational::new(((i * 7 + j * 3) % 11) as i64 - 5, (1 + (i + 2 * j) % 4) as i64)
        });
        assert_eq!(m.det(), laplace(&m));
        let pivot_swap = qm(&[&[0, 1, 2], &[0, 3, 1], &[4, 1, 1]]);
        assert_eq!(pivot_swap.det(), laplace(&pivot_swap));
    }

    #[test]
    fn solve_reconstructs() {
        let a = Matrix::from_fn(4, 4, |i, j| Rational::new(1 + (i == j) as i64, (i + j + 1) as i64));
        let b: Vec<Rational> = (0..4).map(|i| Rational::new(i as i64 - 1, 3)).collect();
        let sol = solve(&a, &[b.clone()]).unwrap();
        let x = Matrix::from_columns(&sol.columns);
        assert_eq!(a.mul(&x).column(0), b);
        assert_eq!(sol.det, a.det());
        let singular = qm(&[&[1, 2], &[2, 4]]);
        assert_eq!(
            solve(&singular, &[vec![Rational::one(), Rational::one()]]).unwrap_err(),
            LinalgError::Singular
        );
    }

    #[test]
    fn local_solve_detects_non_integral() {
        let x = LocalRatFunc::from_ints(&[0, 1], &[1]).unwrap();
        let one = LocalRatFunc::one();
        // x * v = 1 has no solution in the local ring
        let a = Matrix::from_rows(vec![vec![x.clone()]]);
        assert_eq!(solve(&a, &[vec![one.clone()]]).unwrap_err(), LinalgError::NotIntegral);
        let b = Matrix::from_rows(vec![vec![one.add(&x), x.clone()], vec![x.clone(), one.clone()]]);
        let rhs = vec![one.clone(), x.clone()];
        let sol = solve(&b, &[rhs.clone()]).unwrap();
        assert_eq!(b.mul(&Matrix::from_columns(&sol.columns)).column(0), rhs);
        assert_eq!(sol.det, b.det());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]])), 2);
        assert_eq!(rank(&qm(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&qm(&[&[0, 1, 2], &[0, 2, 4], &[0, 0, 1], &[1, 1, 1]])), 3);
    }
}

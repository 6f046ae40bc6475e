//! Diagonal regular quadratic forms `q = <a_1, ..., a_m>` over a base ring.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::{ExtElement, SimpleExtension};
use crate::linalg::Matrix;
use crate::ring::{BaseRing, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm<R> {
    diag: Vec<R>,
}

/// One generator `q(vector)^exponent` of the value group, `exponent = ±1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueFactor<R> {
    pub vector: Vec<R>,
    #[serde(rename = "exp")]
    pub exponent: i32,
}

impl<R> ValueFactor<R> {
    pub fn new(vector: Vec<R>, exponent: i32) -> Self {
        debug_assert!(exponent == 1 || exponent == -1);
        ValueFactor { vector, exponent }
    }
}

impl<R: BaseRing> QuadraticForm<R> {
    /// Every coefficient must be a unit.
    pub fn new(diag: Vec<R>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::Dimension("quadratic form of rank 0".into()));
        }
        if !diag.iter().all(R::is_unit) {
            return Err(Error::NotRegular);
        }
        Ok(QuadraticForm { diag })
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[R] {
        &self.diag
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len == self.diag.len() {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "vector of length {len} for a form of rank {}",
                self.diag.len()
            )))
        }
    }

    /// `sum a_j y_j^2`.
    pub fn eval(&self, y: &[R]) -> Result<R> {
        self.check_len(y.len())?;
        Ok(self
            .diag
            .iter()
            .zip(y)
            .fold(R::zero(), |acc, (a, v)| acc.add(&a.mul(&v.square()))))
    }

    /// The base-changed form evaluated in `S`.
    pub fn eval_ext(&self, ext: &SimpleExtension<R>, xs: &[ExtElement<R>]) -> Result<ExtElement<R>> {
        self.check_len(xs.len())?;
        Ok(self.diag.iter().zip(xs).fold(ext.zero(), |acc, (a, x)| {
            ext.add(&acc, &ext.scale(a, &ext.square(x)))
        }))
    }

    /// Writes `s^2` as `q(s*e_1) * q(e_1/a_1)`.
    pub fn square_as_product(&self, s: &R) -> Result<Vec<ValueFactor<R>>> {
        if !s.is_unit() {
            return Err(Error::NotInvertible);
        }
        let a1_inv = self.diag[0].invert().expect("regular form");
        let basis = |v: R| {
            let mut y = vec![R::zero(); self.rank()];
            y[0] = v;
            y
        };
        Ok(vec![
            ValueFactor::new(basis(s.clone()), 1),
            ValueFactor::new(basis(a1_inv), 1),
        ])
    }

    pub fn residue(&self) -> QuadraticForm<Rational> {
        QuadraticForm {
            diag: self.diag.iter().map(R::residue).collect(),
        }
    }

    /// Diagonalizes a symmetric Gram matrix with unit determinant: returns
    /// `D` and an invertible `C` with `C^T G C = diag(D)`.
    pub fn diagonalize(gram: &Matrix<R>) -> Result<(Self, Matrix<R>)> {
        let m = gram.rows();
        if !gram.is_square() || m == 0 {
            return Err(Error::Dimension("Gram matrix must be square and non-empty".into()));
        }
        if (0..m).any(|i| (0..i).any(|j| gram.get(i, j) != gram.get(j, i))) {
            return Err(Error::Dimension("Gram matrix is not symmetric".into()));
        }
        if !gram.det().is_unit() {
            return Err(Error::NotRegular);
        }
        let mut work = Congruence {
            g: gram.clone(),
            c: Matrix::identity(m),
        };
        for k in 0..m {
            if !work.g.get(k, k).is_unit() {
                if let Some(i) = (k + 1..m).find(|&i| work.g.get(i, i).is_unit()) {
                    work.swap(i, k);
                } else {
                    // residues of the remaining diagonal vanish, so e_i + e_j
                    // has value 2*g_ij modulo the maximal ideal
                    let (i, j) = (k..m)
                        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
                        .find(|&(i, j)| work.g.get(i, j).is_unit())
                        .ok_or(Error::NotRegular)?;
                    work.add_to(i, j, &R::one());
                    work.swap(i, k);
                }
            }
            let pivot_inv = work.g.get(k, k).invert().expect("unit pivot");
            for j in k + 1..m {
                let lambda = work.g.get(k, j).mul(&pivot_inv);
                if !lambda.is_zero() {
                    work.add_to(j, k, &lambda.neg());
                }
            }
        }
        let diag = (0..m).map(|i| work.g.get(i, i).clone()).collect();
        Ok((QuadraticForm::new(diag)?, work.c))
    }
}

/// Gram matrix and accumulated change of basis under congruence moves.
struct Congruence<R> {
    g: Matrix<R>,
    c: Matrix<R>,
}

impl<R: BaseRing> Congruence<R> {
    fn swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let m = self.g.rows();
        let g = self.g.clone();
        let perm = |i: usize| if i == a { b } else if i == b { a } else { i };
        self.g = Matrix::from_fn(m, m, |i, j| g.get(perm(i), perm(j)).clone());
        let c = self.c.clone();
        self.c = Matrix::from_fn(m, m, |i, j| c.get(i, perm(j)).clone());
    }

    /// `e_dst <- e_dst + lambda * e_src`.
    fn add_to(&mut self, dst: usize, src: usize, lambda: &R) {
        let m = self.g.rows();
        for j in 0..m {
            let v = self.g.get(dst, j).add(&lambda.mul(self.g.get(src, j)));
            self.g.set(dst, j, v);
        }
        for i in 0..m {
            let v = self.g.get(i, dst).add(&lambda.mul(self.g.get(i, src)));
            self.g.set(i, dst, v);
        }
        for i in 0..m {
            let v = self.c.get(i, dst).add(&lambda.mul(self.c.get(i, src)));
            self.c.set(i, dst, v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    type Q = Rational;

    fn q(s: &str) -> Q {
        s.parse().unwrap()
    }

    fn form(d: &[i64]) -> QuadraticForm<Q> {
        QuadraticForm::new(d.iter().map(|&v| Q::from(v)).collect()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| Q::from(x)).collect()
    }

    fn gram(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_rows(rows.iter().map(|r| ints(r)).collect())
    }

    fn congruent(g: &Matrix<Q>, d: &QuadraticForm<Q>, c: &Matrix<Q>) -> bool {
        let lhs = c.transpose().mul(g).mul(c);
        let m = g.rows();
        lhs == Matrix::from_fn(m, m, |i, j| if i == j { d.diag()[i].clone() } else { Q::zero() })
    }

    #[test]
    fn eval_base_examples() {
        assert_eq!(form(&[1, 1]).eval(&ints(&[1, 2])).unwrap(), Q::from(5));
        assert_eq!(form(&[1, -1]).eval(&ints(&[1, 1])).unwrap(), Q::zero());
        assert_eq!(form(&[1, 2]).eval(&ints(&[3, 0])).unwrap(), Q::from(9));
        assert!(form(&[1, 2]).eval(&ints(&[3])).is_err());
    }

    #[test]
    fn rejects_irregular() {
        assert_eq!(QuadraticForm::new(ints(&[1, 0])), Err(Error::NotRegular));
        assert!(QuadraticForm::<Q>::new(vec![]).is_err());
    }

    #[test]
    fn eval_ext_examples() {
        let si = SimpleExtension::new(Poly::<Q>::from_ints(&[1, 0, 1])).unwrap();
        let x = vec![
            si.element(vec![q("3/2"), q("1/2")]).unwrap(),
            si.element(vec![q("1/2"), q("-1/2")]).unwrap(),
        ];
        assert_eq!(
            form(&[1, 1]).eval_ext(&si, &x).unwrap(),
            si.element(ints(&[2, 1])).unwrap()
        );
        let s2 = SimpleExtension::new(Poly::<Q>::from_ints(&[-2, 0, 1])).unwrap();
        assert_eq!(
            form(&[1]).eval_ext(&s2, &[s2.generator()]).unwrap(),
            s2.scalar(Q::from(2))
        );
        let x = vec![
            s2.element(vec![q("1/2"), q("1/2")]).unwrap(),
            s2.element(vec![q("-1/2"), q("1/2")]).unwrap(),
        ];
        assert_eq!(form(&[1, -1]).eval_ext(&s2, &x).unwrap(), s2.generator());
    }

    #[test]
    fn square_lemma_examples() {
        let f = form(&[1, 2]);
        let factors = f.square_as_product(&Q::from(3)).unwrap();
        assert_eq!(factors[0].vector, ints(&[3, 0]));
        assert_eq!(factors[1].vector, ints(&[1, 0]));
        let f = form(&[2]);
        let factors = f.square_as_product(&Q::one()).unwrap();
        assert_eq!(factors[0].vector, ints(&[1]));
        assert_eq!(factors[1].vector, vec![q("1/2")]);
        assert_eq!(f.eval(&factors[0].vector).unwrap(), Q::from(2));
        assert_eq!(f.eval(&factors[1].vector).unwrap(), q("1/2"));
        let f = form(&[1]);
        let factors = f.square_as_product(&Q::from(-1)).unwrap();
        let prod = factors
            .iter()
            .fold(Q::one(), |acc, v| acc.mul(&f.eval(&v.vector).unwrap()));
        assert_eq!(prod, Q::one());
        assert_eq!(f.square_as_product(&Q::zero()), Err(Error::NotInvertible));
    }

    #[test]
    fn diagonalize_examples() {
        let g = gram(&[&[1, 1], &[1, 2]]);
        let (d, c) = QuadraticForm::diagonalize(&g).unwrap();
        assert_eq!(d, form(&[1, 1]));
        assert!(congruent(&g, &d, &c));

        let g = gram(&[&[0, 1], &[1, 0]]);
        let (d, c) = QuadraticForm::diagonalize(&g).unwrap();
        assert!(congruent(&g, &d, &c));
        // hyperbolic plane: determinant -1 up to squares
        let disc = d.diag()[0].mul(&d.diag()[1]).neg();
        let n = disc.numer().clone() * disc.denom().clone();
        assert_eq!(n.sqrt().pow(2), n);

        let g = gram(&[&[3, 0], &[0, 5]]);
        let (d, c) = QuadraticForm::diagonalize(&g).unwrap();
        assert_eq!(d, form(&[3, 5]));
        assert_eq!(c, Matrix::identity(2));

        assert_eq!(
            QuadraticForm::diagonalize(&gram(&[&[1, 2], &[2, 4]])),
            Err(Error::NotRegular)
        );
        assert!(QuadraticForm::diagonalize(&gram(&[&[1, 2], &[0, 4]])).is_err());
    }

    #[test]
    fn diagonalize_local_ring() {
        use crate::ring::LocalRatFunc;
        let x = LocalRatFunc::from_ints(&[0, 1], &[1]).unwrap();
        let one = LocalRatFunc::one();
        // [[x, 1], [1, x]] has det x^2 - 1, a unit; diagonal entries are not
        let g = Matrix::from_rows(vec![vec![x.clone(), one.clone()], vec![one, x]]);
        let (d, c) = QuadraticForm::diagonalize(&g).unwrap();
        let lhs = c.transpose().mul(&g).mul(&c);
        assert_eq!(lhs.get(0, 1), &LocalRatFunc::zero());
        assert_eq!(lhs.get(0, 0), &d.diag()[0]);
        assert_eq!(lhs.get(1, 1), &d.diag()[1]);
        assert!(c.det().is_unit());
    }
}

//! General-position machinery: the linear system expressing `x` through the
//! elements `c^j b^(2j+1)`, its minors, and randomized searches for scalings
//! `b` that make `c b^2` primitive and `q({x/b, c b^2})` a unit.
//!
//! Searches run in the residue extension over `Q` and the chosen `b` is lifted
//! by constants; every witness is re-verified over the base ring.

use rand::Rng;

use crate::error::{Error, Result};
use crate::ext::{ExtElement, SimpleExtension};
use crate::linalg::Matrix;
use crate::qform::QuadraticForm;
use crate::ring::{sample_residue, BaseRing, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_tries: usize,
    pub initial_bound: u64,
    /// The sampling bound doubles after this many failed random tries.
    pub double_every: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_tries: 64,
            initial_bound: 3,
            double_every: 8,
        }
    }
}

impl SearchConfig {
    /// Coefficient bound used at try `i` (try 0 is the deterministic probe).
    pub fn bound_at(&self, i: usize) -> u64 {
        let doublings = (i.saturating_sub(1) / self.double_every.max(1)).min(40) as u32;
        self.initial_bound.max(1).saturating_mul(1u64 << doublings)
    }
}

/// A scaling `b` in general position for `(c, x, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenPosWitness<R> {
    pub b: ExtElement<R>,
    /// `c b^2`, primitive.
    pub c_new: ExtElement<R>,
    /// `x_j / b`.
    pub x_new: Vec<ExtElement<R>>,
    /// Top coordinates `{x_j / b, c b^2}`.
    pub top: Vec<R>,
    /// `q(top)`, a unit.
    pub r: R,
    pub tries_used: usize,
}

/// Candidate scalings: `1` first, then random integer coordinates.
fn candidates<'a, G: Rng + ?Sized>(
    ext: &'a SimpleExtension<Rational>,
    rng: &'a mut G,
    cfg: &'a SearchConfig,
) -> impl Iterator<Item = ExtElement<Rational>> + 'a {
    (0..cfg.max_tries).map(move |i| {
        if i == 0 {
            ext.one()
        } else {
            let bound = cfg.bound_at(i);
            let coords = (0..ext.degree()).map(|_| sample_residue(rng, bound)).collect();
            ext.element(coords).expect("degree-length vector")
        }
    })
}

/// Matrix whose column `j` is the coordinate vector of `c^j b^(2j+1)` in the
/// basis of powers of `c`.
pub fn system_matrix<R: BaseRing>(
    ext: &SimpleExtension<R>,
    c: &ExtElement<R>,
    b: &ExtElement<R>,
) -> Result<Matrix<R>> {
    if !ext.is_primitive(c) {
        return Err(Error::NotPrimitive);
    }
    if !ext.is_unit(b) {
        return Err(Error::NotInvertible);
    }
    let b2 = ext.square(b);
    let mut cols = Vec::with_capacity(ext.degree());
    let mut cur = b.clone();
    for j in 0..ext.degree() {
        if j > 0 {
            cur = ext.mul(&ext.mul(&cur, c), &b2);
        }
        cols.push(cur.clone());
    }
    let coords = ext.coords_in_basis_many(&cols, c)?;
    Ok(Matrix::from_columns(&coords))
}

/// `det A` and, for each `x_j`, the determinant of `A` with its last column
/// replaced by the coordinates of `x_j` in the basis of powers of `c`.
pub fn determinants<R: BaseRing>(
    ext: &SimpleExtension<R>,
    c: &ExtElement<R>,
    b: &ExtElement<R>,
    xs: &[ExtElement<R>],
) -> Result<(R, Vec<R>)> {
    let a = system_matrix(ext, c, b)?;
    let x_coords = ext.coords_in_basis_many(xs, c)?;
    let last = ext.degree() - 1;
    let replaced = x_coords
        .iter()
        .map(|col| a.with_column(last, col).det())
        .collect();
    Ok((a.det(), replaced))
}

/// `Delta_i`: the minor of the system matrix at row `n-1-i`, column `n-1`.
pub fn delta_minors<R: BaseRing>(
    ext: &SimpleExtension<R>,
    c: &ExtElement<R>,
    b: &ExtElement<R>,
) -> Result<Vec<R>> {
    let a = system_matrix(ext, c, b)?;
    let n = ext.degree();
    Ok((0..n)
        .map(|i| a.minor_matrix(n - 1 - i, n - 1).det())
        .collect())
}

/// Finds `b` with `c b^2` primitive.
pub fn find_primitive_scaling<R: BaseRing, G: Rng + ?Sized>(
    ext: &SimpleExtension<R>,
    c: &ExtElement<R>,
    rng: &mut G,
    cfg: &SearchConfig,
) -> Result<(ExtElement<R>, usize)> {
    if !ext.is_unit(c) {
        return Err(Error::NotInvertible);
    }
    let bar = ext.residue_extension();
    let c_bar = ext.reduce(c);
    for (i, b_bar) in candidates(&bar, rng, cfg).enumerate() {
        // c_bar is a unit, so c_bar b_bar^2 primitive forces b_bar to be a unit
        if !bar.is_primitive(&bar.mul(&c_bar, &bar.square(&b_bar))) {
            continue;
        }
        let b = ext.lift(&b_bar);
        if !ext.is_primitive(&ext.mul(c, &ext.square(&b))) {
            return Err(Error::InternalAssertion(
                "primitivity of c*b^2 did not lift from the residue field".into(),
            ));
        }
        return Ok((b, i + 1));
    }
    Err(Error::SearchExhausted { tries: cfg.max_tries })
}

struct Evaluated<R> {
    c_new: ExtElement<R>,
    x_new: Vec<ExtElement<R>>,
    top: Vec<R>,
    r: R,
}

/// Applies the scaling `b` and computes `q({x/b, c b^2})`, or `None` if
/// `c b^2` is not primitive. `c` itself is assumed primitive.
fn evaluate<R: BaseRing>(
    ext: &SimpleExtension<R>,
    q: &QuadraticForm<R>,
    c: &ExtElement<R>,
    xs: &[ExtElement<R>],
    b: &ExtElement<R>,
) -> Result<Option<Evaluated<R>>> {
    let (c_new, x_new) = if *b == ext.one() {
        (c.clone(), xs.to_vec())
    } else {
        let c_new = ext.mul(c, &ext.square(b));
        if !ext.is_primitive(&c_new) {
            return Ok(None);
        }
        let b_inv = ext.inv(b)?;
        (c_new, xs.iter().map(|x| ext.mul(x, &b_inv)).collect())
    };
    let top: Vec<R> = ext
        .coords_in_basis_many(&x_new, &c_new)?
        .into_iter()
        .map(|mut col| col.pop().expect("n >= 1"))
        .collect();
    let r = q.eval(&top)?;
    Ok(Some(Evaluated { c_new, x_new, top, r }))
}

/// Finds `b` such that `c b^2` is primitive and `q({x/b, c b^2})` is a unit.
pub fn find_general_position<R: BaseRing, G: Rng + ?Sized>(
    ext: &SimpleExtension<R>,
    c: &ExtElement<R>,
    xs: &[ExtElement<R>],
    q: &QuadraticForm<R>,
    rng: &mut G,
    cfg: &SearchConfig,
) -> Result<GenPosWitness<R>> {
    if !ext.is_primitive(c) {
        return Err(Error::NotPrimitive);
    }
    if !ext.is_unit(&q.eval_ext(ext, xs)?) {
        return Err(Error::ValueNotUnit);
    }
    let bar = ext.residue_extension();
    let c_bar = ext.reduce(c);
    let x_bar: Vec<_> = xs.iter().map(|x| ext.reduce(x)).collect();
    let q_bar = q.residue();
    for (i, b_bar) in candidates(&bar, rng, cfg).enumerate() {
        match evaluate(&bar, &q_bar, &c_bar, &x_bar, &b_bar)? {
            Some(ev) if !ev.r.is_zero() => {}
            _ => continue,
        }
        let b = ext.lift(&b_bar);
        let ev = evaluate(ext, q, c, xs, &b)?.ok_or_else(|| {
            Error::InternalAssertion("primitivity of c*b^2 did not lift".into())
        })?;
        if !ev.r.is_unit() {
            return Err(Error::InternalAssertion(
                "q({x/b, c b^2}) has a nonzero residue but is not a unit".into(),
            ));
        }
        return Ok(GenPosWitness {
            b,
            c_new: ev.c_new,
            x_new: ev.x_new,
            top: ev.top,
            r: ev.r,
            tries_used: i + 1,
        });
    }
    Err(Error::SearchExhausted { tries: cfg.max_tries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

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

    #[test]
    fn bound_schedule_doubles() {
        let cfg = SearchConfig::default();
        assert_eq!(cfg.bound_at(1), 3);
        assert_eq!(cfg.bound_at(8), 3);
        assert_eq!(cfg.bound_at(9), 6);
        assert_eq!(cfg.bound_at(17), 12);
    }

    #[test]
    fn system_matrix_columns() {
        let s = ext(&[1, 0, 1]);
        let c = s.generator();
        // b = 1 collapses to the powers matrix of c
        let a = system_matrix(&s, &c, &s.one()).unwrap();
        assert_eq!(a, Matrix::identity(2));
        let b = el(&s, &["2", "1"]);
        let a = system_matrix(&s, &c, &b).unwrap();
        assert_eq!(a.column(0), b.coords().to_vec());
        // A = M_b * P(c b^2) when c = t
        let cb2 = s.mul(&c, &s.square(&b));
        assert_eq!(a, s.mult_matrix(&b).mul(&s.powers_matrix(&cb2)));
        assert_eq!(system_matrix(&s, &s.one(), &b), Err(Error::NotPrimitive));
        assert_eq!(system_matrix(&s, &c, &s.zero()), Err(Error::NotInvertible));
    }

    #[test]
    fn determinants_of_zero_witness_vanish() {
        let s = ext(&[-1, -1, 0, 1]);
        let c = el(&s, &["1", "1", "0"]);
        let b = el(&s, &["2", "-1", "1"]);
        let (det_a, dets) = determinants(&s, &c, &b, &[s.zero(), s.zero()]).unwrap();
        assert!(!det_a.is_zero());
        assert!(dets.iter().all(Q::is_zero));
    }

    #[test]
    fn delta_minors_at_scalar_b() {
        let s = ext(&[3, -1, 2, 0, 1]);
        let c = s.generator();
        let b0 = Q::from(3);
        let deltas = delta_minors(&s, &c, &s.scalar(b0.clone())).unwrap();
        assert_eq!(deltas[0], b0.pow(9));
        assert!(deltas[1..].iter().all(Q::is_zero));
        let s1 = ext(&[5, 1]);
        assert_eq!(delta_minors(&s1, &s1.generator(), &s1.one()).unwrap(), vec![Q::one()]);
    }

    #[test]
    fn primitive_scaling_probes_one_first() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s = ext(&[-2, 0, 1]);
        let (b, tries) =
            find_primitive_scaling(&s, &s.generator(), &mut rng, &SearchConfig::default()).unwrap();
        assert_eq!((b, tries), (s.one(), 1));
        let three = s.scalar(Q::from(3));
        let b = el(&s, &["1", "1"]);
        let cb2 = s.mul(&three, &s.square(&b));
        assert_eq!(cb2, el(&s, &["9", "6"]));
        assert_eq!(s.powers_matrix(&cb2).det(), Q::from(6));
        let (b, tries) = find_primitive_scaling(&s, &three, &mut rng, &SearchConfig::default()).unwrap();
        assert!(tries > 1);
        assert!(s.is_primitive(&s.mul(&three, &s.square(&b))));
    }

    #[test]
    fn general_position_worked_example() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s = ext(&[1, 0, 1]);
        let form = QuadraticForm::new(vec![Q::one(), Q::one()]).unwrap();
        let c = el(&s, &["2", "1"]);
        let xs = vec![el(&s, &["3/2", "1/2"]), el(&s, &["1/2", "-1/2"])];
        let w = find_general_position(&s, &c, &xs, &form, &mut rng, &SearchConfig::default())
            .unwrap();
        assert_eq!(w.tries_used, 1);
        assert_eq!(w.b, s.one());
        assert_eq!(w.top, vec![q("1/2"), q("-1/2")]);
        assert_eq!(w.r, q("1/2"));
    }

    #[test]
    fn general_position_degree_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s = ext(&[-7, 1]);
        let form = QuadraticForm::new(vec![Q::from(2)]).unwrap();
        let xs = vec![s.scalar(Q::from(3))];
        let w = find_general_position(&s, &s.generator(), &xs, &form, &mut rng, &SearchConfig::default())
            .unwrap();
        assert_eq!(w.b, s.one());
        assert_eq!(w.r, Q::from(18));
    }

    #[test]
    fn cube_roots_of_unity_over_q_are_not_obstructed() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = ext(&[-1, 0, 0, 1]);
        let t = s.generator();
        let form = QuadraticForm::new(vec![Q::one()]).unwrap();
        let w = find_general_position(&s, &t, &[t.clone()], &form, &mut rng, &SearchConfig::default())
            .unwrap();
        assert!(w.tries_used > 1, "b = 1 gives {{t, t}} = 0 in degree 3");
        assert!(!w.top[0].is_zero());
        assert_eq!(w.top[0], s.top_coeff(&w.x_new[0], &w.c_new).unwrap());
    }

    #[test]
    fn general_position_rejects_bad_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s = ext(&[1, 0, 1]);
        let form = QuadraticForm::new(vec![Q::one(), Q::from(-1)]).unwrap();
        let cfg = SearchConfig::default();
        let xs = vec![s.one(), s.one()];
        assert_eq!(
            find_general_position(&s, &s.generator(), &xs, &form, &mut rng, &cfg),
            Err(Error::ValueNotUnit)
        );
        assert_eq!(
            find_general_position(&s, &s.one(), &xs, &form, &mut rng, &cfg),
            Err(Error::NotPrimitive)
        );
    }
}

use rand::Rng;

use super::{NormCertificate, ReductionStep, Verdict};
use crate::error::{ensure, Error, Result};
use crate::ext::{ExtElement, SimpleExtension};
use crate::genpos::{find_general_position, find_primitive_scaling, SearchConfig};
use crate::poly::Poly;
use crate::qform::{QuadraticForm, ValueFactor};
use crate::ring::BaseRing;

fn check_witness<R: BaseRing>(
    ext: &SimpleExtension<R>,
    q: &QuadraticForm<R>,
    xs: &[ExtElement<R>],
) -> Result<ExtElement<R>> {
    if xs.len() != q.rank() {
        return Err(Error::Dimension(format!(
            "{} witness coordinates for a form of rank {}",
            xs.len(),
            q.rank()
        )));
    }
    if let Some(x) = xs.iter().find(|x| x.coords().len() != ext.degree()) {
        return Err(Error::Dimension(format!(
            "witness element with {} coordinates in an extension of degree {}",
            x.coords().len(),
            ext.degree()
        )));
    }
    let c = q.eval_ext(ext, xs)?;
    if !ext.is_unit(&c) {
        return Err(Error::ValueNotUnit);
    }
    Ok(c)
}

/// `N(q_S(x))`.
pub fn norm_of_value<R: BaseRing>(
    ext: &SimpleExtension<R>,
    q: &QuadraticForm<R>,
    xs: &[ExtElement<R>],
) -> Result<R> {
    Ok(ext.norm(&check_witness(ext, q, xs)?))
}

/// Produces a verified certificate for `N(q_S(x))`.
pub fn certify<R: BaseRing, G: Rng + ?Sized>(
    ext: &SimpleExtension<R>,
    q: &QuadraticForm<R>,
    xs: &[ExtElement<R>],
    rng: &mut G,
    cfg: &SearchConfig,
) -> Result<NormCertificate<R>> {
    let c = check_witness(ext, q, xs)?;
    let mut trace = Vec::new();
    let factors = descend(ext, q, xs, &c, rng, cfg, &mut trace)?;
    let cert = NormCertificate {
        target: ext.norm(&c),
        factors,
        trace,
    };
    match super::verify(ext, q, xs, &cert) {
        Verdict::Accepted => Ok(cert),
        Verdict::Rejected { check, detail } => Err(Error::InternalAssertion(format!(
            "emitted certificate rejected at {check:?}: {detail}"
        ))),
    }
}

/// Factors whose product is `N(q_S(x))`.
//
// With c' = c^-1 and the scalings b1 (primitivity) and b (general position),
// c'' = c' b1^2 b^2 satisfies N(c'') * r * N_T(u) = 1, hence
// N(c) = r * N_T(u) * N(b1)^2 * N(b)^2 and every exponent stays +1.
fn descend<R: BaseRing, G: Rng + ?Sized>(
    ext: &SimpleExtension<R>,
    q: &QuadraticForm<R>,
    xs: &[ExtElement<R>],
    c: &ExtElement<R>,
    rng: &mut G,
    cfg: &SearchConfig,
    trace: &mut Vec<ReductionStep<R>>,
) -> Result<Vec<ValueFactor<R>>> {
    let n = ext.degree();
    if n == 1 {
        let vector = xs.iter().map(|x| x.coords()[0].clone()).collect();
        return Ok(vec![ValueFactor::new(vector, 1)]);
    }
    let mut factors = Vec::new();
    let one = ext.one();

    // c' q_S(x') = 1
    let mut c_cur = ext.inv(c).map_err(|_| Error::ValueNotUnit)?;
    let mut x_cur = xs.to_vec();

    let mut b_scaling = None;
    let mut scaling_tries = 0;
    if !ext.is_primitive(&c_cur) {
        let (b1, tries) = find_primitive_scaling(ext, &c_cur, rng, cfg)?;
        let b1_inv = ext.inv(&b1)?;
        c_cur = ext.mul(&c_cur, &ext.square(&b1));
        x_cur = x_cur.iter().map(|x| ext.mul(x, &b1_inv)).collect();
        factors.extend(q.square_as_product(&ext.norm(&b1))?);
        b_scaling = Some(b1);
        scaling_tries = tries;
    }

    let w = find_general_position(ext, &c_cur, &x_cur, q, rng, cfg)?;
    if w.b != one {
        factors.extend(q.square_as_product(&ext.norm(&w.b))?);
    }
    let (c_cur, x_cur, r) = (w.c_new, w.x_new, w.r);

    let p = ext.min_poly(&c_cur)?;
    let witness: Vec<Poly<R>> = ext
        .coords_in_basis_many(&x_cur, &c_cur)?
        .into_iter()
        .map(Poly::new)
        .collect();
    let value = q
        .diag()
        .iter()
        .zip(&witness)
        .fold(Poly::zero(), |acc, (a, xj)| acc.add(&xj.mul(xj).scale(a)));
    let lhs = value.shift(1).sub(&Poly::one());
    let (h, rem) = lhs.divmod_monic(&p)?;
    ensure(rem.is_zero(), || format!("degree {n}: t q(x(t)) - 1 is not divisible by p"))?;
    ensure(h.degree() == Some(n - 1), || format!("degree {n}: deg h = {:?}", h.degree()))?;
    ensure(h.leading() == Some(&r), || {
        format!("degree {n}: leading coefficient of h differs from q({{x, c}})")
    })?;
    ensure(
        p.constant_term().mul(&h.constant_term()) == R::one().neg(),
        || format!("degree {n}: p(0) h(0) != -1"),
    )?;

    let g = h.scale(&r.invert()?);
    ensure(g.constant_term().is_unit(), || format!("degree {n}: g(0) is not a unit"))?;
    let sub = SimpleExtension::new(g.clone())
        .map_err(|e| Error::InternalAssertion(format!("degree {n}: g does not define a simple extension: {e}")))?;
    let u = sub.generator();
    let z: Vec<_> = witness.iter().map(|xj| sub.from_poly(xj)).collect();
    ensure(sub.mul(&u, &q.eval_ext(&sub, &z)?) == sub.one(), || {
        format!("degree {n}: u q_T(x(u)) != 1")
    })?;
    // q_T(u z) = u^2 q_T(z) = u
    let y: Vec<_> = z.iter().map(|zj| sub.mul(zj, &u)).collect();
    ensure(
        ext.norm(&c_cur).mul(&r).mul(&sub.norm(&u)).is_one(),
        || format!("degree {n}: N(c) r N_T(u) != 1"),
    )?;

    trace.push(ReductionStep {
        n,
        p,
        h,
        r,
        g,
        b: w.b,
        b_scaling,
        witness,
        genpos_tries: w.tries_used,
        scaling_tries,
    });
    factors.push(ValueFactor::new(w.top, 1));
    factors.extend(descend(&sub, q, &y, &u, rng, cfg, trace)?);
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Q = Rational;

    fn q(s: &str) -> Q {
        s.parse().unwrap()
    }

    fn run(p: &[i64], diag: &[i64], xs: &[&[&str]]) -> NormCertificate<Q> {
        let ext = SimpleExtension::new(Poly::from_ints(p)).unwrap();
        let form = QuadraticForm::new(diag.iter().map(|&a| Q::from(a)).collect()).unwrap();
        let xs: Vec<_> = xs
            .iter()
            .map(|c| ext.element(c.iter().map(|s| q(s)).collect()).unwrap())
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        certify(&ext, &form, &xs, &mut rng, &SearchConfig::default()).unwrap()
    }

    #[test]
    fn degree_one_base_case() {
        let cert = run(&[-5, 1], &[1], &[&["3"]]);
        assert_eq!(cert.target, Q::from(9));
        assert_eq!(cert.factors, vec![ValueFactor::new(vec![Q::from(3)], 1)]);
        assert!(cert.trace.is_empty());
    }

    #[test]
    fn gaussian_integers_example() {
        let cert = run(&[1, 0, 1], &[1, 1], &[&["3/2", "1/2"], &["1/2", "-1/2"]]);
        assert_eq!(cert.target, Q::from(5));
        assert_eq!(cert.trace.len(), 1);
        assert_eq!(cert.trace[0].g.degree(), Some(1));
    }

    #[test]
    fn hyperbolic_example() {
        let cert = run(&[-2, 0, 1], &[1, -1], &[&["1/2", "1/2"], &["-1/2", "1/2"]]);
        assert_eq!(cert.target, Q::from(-2));
    }

    #[test]
    fn deeper_descent() {
        let cert = run(
            &[3, -1, 0, 2, 1],
            &[2, -3, 1],
            &[&["1", "0", "2", "-1"], &["0", "1", "1", "3"], &["5", "-2", "0", "1"]],
        );
        assert_eq!(cert.trace.len(), 3);
        let degrees: Vec<_> = cert.trace.iter().map(|s| s.n).collect();
        assert_eq!(degrees, vec![4, 3, 2]);
    }

    #[test]
    fn non_unit_value_rejected() {
        let ext = SimpleExtension::new(Poly::<Q>::from_ints(&[-1, 0, 1])).unwrap();
        let form = QuadraticForm::new(vec![Q::one()]).unwrap();
        let x = ext.element(vec![Q::one(), Q::one()]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(
            certify(&ext, &form, &[x], &mut rng, &SearchConfig::default()),
            Err(Error::ValueNotUnit)
        );
        assert!(norm_of_value(&ext, &form, &[]).is_err());
    }
}

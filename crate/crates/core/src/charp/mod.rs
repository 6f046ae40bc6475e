//! Exhaustive characteristic-p checks showing that the general-position
//! argument needs characteristic zero.

mod algebra;
mod field;

pub use algebra::Algebra;
pub use field::{Fe, FieldId, FiniteField};

use std::collections::BTreeSet;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ext::SimpleExtension;
use crate::genpos::{find_general_position, SearchConfig};
use crate::poly::Poly;
use crate::qform::QuadraticForm;
use crate::ring::Rational;

/// Squares in `k[t]/(t^2)` over a field of characteristic 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Char2Report {
    pub field: FieldId,
    pub elements: usize,
    /// Distinct squares, as scalars when they lie in `k·1`.
    pub image: Vec<String>,
    /// Squares with a nonzero `t` coordinate.
    pub exceptions: usize,
    pub image_is_scalars: bool,
    pub primitive_elements: usize,
    pub primitive_squares: usize,
}

impl Char2Report {
    pub fn passed(&self) -> bool {
        self.exceptions == 0 && self.image_is_scalars && self.primitive_squares == 0
    }
}

/// `{x b^-1, c b^2}` in `k[t]/(t^3 - 1)`, `c = x = t`, over units `b` with
/// `c b^2` primitive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Char3Report {
    pub field: FieldId,
    pub elements: usize,
    pub units: usize,
    pub qualifying: usize,
    pub violations: usize,
}

impl Char3Report {
    pub fn passed(&self) -> bool {
        self.qualifying > 0 && self.violations == 0
    }
}

pub fn char2_demo(id: FieldId) -> Result<Char2Report> {
    let k = FiniteField::new(id);
    if k.characteristic() != 2 {
        return Err(Error::Dimension(format!("{id} does not have characteristic 2")));
    }
    let s = Algebra::new(&k, vec![0, 0]);
    let mut image = BTreeSet::new();
    let mut exceptions = 0;
    let mut primitive_elements = 0;
    let mut primitive_squares = 0;
    for b in s.elements() {
        let sq = s.square(&b);
        if !s.is_scalar(&sq) {
            exceptions += 1;
        }
        if s.is_primitive(&b) {
            primitive_elements += 1;
        }
        if s.is_primitive(&sq) {
            primitive_squares += 1;
        }
        image.insert(sq);
    }
    let image_is_scalars = image.len() == k.size() && image.iter().all(|v| s.is_scalar(v));
    Ok(Char2Report {
        field: id,
        elements: s.elements().count(),
        image: image
            .iter()
            .map(|v| {
                if s.is_scalar(v) {
                    k.format(v[0])
                } else {
                    format!("{}+({})t", k.format(v[0]), k.format(v[1]))
                }
            })
            .collect(),
        exceptions,
        image_is_scalars,
        primitive_elements,
        primitive_squares,
    })
}

pub fn char3_demo(id: FieldId) -> Result<Char3Report> {
    let k = FiniteField::new(id);
    if k.characteristic() != 3 {
        return Err(Error::Dimension(format!("{id} does not have characteristic 3")));
    }
    let s = Algebra::new(&k, vec![k.neg(1), 0, 0]);
    if s.modulus_constant() == 0 {
        return Err(Error::NotSimple);
    }
    let c = s.generator();
    let x = s.generator();
    let mut units = 0;
    let mut qualifying = 0;
    let mut violations = 0;
    for b in s.elements() {
        let Some(b_inv) = s.inv(&b) else { continue };
        units += 1;
        let cb2 = s.mul(&c, &s.square(&b));
        if !s.is_primitive(&cb2) {
            continue;
        }
        qualifying += 1;
        let coords = s
            .coords_in_basis(&s.mul(&x, &b_inv), &cb2)
            .ok_or_else(|| Error::InternalAssertion("primitive element without a basis".into()))?;
        if coords[s.degree() - 1] != 0 {
            violations += 1;
        }
    }
    let report = Char3Report {
        field: id,
        elements: s.elements().count(),
        units,
        qualifying,
        violations,
    };
    if report.qualifying == 0 {
        return Err(Error::InternalAssertion(format!("{id}: no qualifying b, claim is vacuous")));
    }
    Ok(report)
}

/// The same configuration over the rationals, where `b` with nonzero top
/// coordinate exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalContrast {
    pub b: Vec<Rational>,
    pub top: Rational,
    pub tries: usize,
}

pub fn rational_contrast(seed: u64) -> Result<RationalContrast> {
    let ext = SimpleExtension::new(Poly::<Rational>::from_ints(&[-1, 0, 0, 1]))?;
    let q = QuadraticForm::new(vec![Rational::from(1)])?;
    let t = ext.generator();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = find_general_position(&ext, &t, std::slice::from_ref(&t), &q, &mut rng, &SearchConfig::default())?;
    Ok(RationalContrast {
        b: w.b.into_coords(),
        top: w.top[0].clone(),
        tries: w.tries_used,
    })
}

impl fmt::Display for Char2Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "S = {}[t]/(t^2)", self.field)?;
        writeln!(f, "  elements            {}", self.elements)?;
        writeln!(f, "  image of b -> b^2   {{{}}}", self.image.join(", "))?;
        writeln!(f, "  squares outside k.1 {}", self.exceptions)?;
        writeln!(f, "  image = k.1         {}", self.image_is_scalars)?;
        writeln!(f, "  primitive elements  {}", self.primitive_elements)?;
        write!(f, "  primitive squares   {}", self.primitive_squares)
    }
}

impl fmt::Display for Char3Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "S = {}[t]/(t^3 - 1), c = x = t", self.field)?;
        writeln!(f, "  elements    {}", self.elements)?;
        writeln!(f, "  |S*|        {}", self.units)?;
        writeln!(f, "  qualifying  {}", self.qualifying)?;
        write!(f, "  violations  {}", self.violations)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char2_over_f2() {
        let r = char2_demo(FieldId::F2).unwrap();
        assert_eq!(r.elements, 4);
        assert_eq!(r.image, vec!["0", "1"]);
        assert!(r.passed());
        // units a + bt with b != 0
        assert_eq!(r.primitive_elements, 1);
    }

    #[test]
    fn char2_frobenius_onto() {
        for id in [FieldId::F4, FieldId::F8] {
            let r = char2_demo(id).unwrap();
            let q = FiniteField::new(id).size();
            assert_eq!(r.elements, q * q);
            assert_eq!(r.image.len(), q);
            assert!(r.passed());
        }
    }

    #[test]
    fn char3_no_violations() {
        for (id, q) in [(FieldId::F3, 3usize), (FieldId::F9, 9), (FieldId::F27, 27)] {
            let r = char3_demo(id).unwrap();
            assert_eq!(r.elements, q.pow(3));
            assert_eq!(r.units, q.pow(3) - q.pow(2));
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn wrong_characteristic() {
        assert!(char2_demo(FieldId::F3).is_err());
        assert!(char3_demo(FieldId::F4).is_err());
    }

    #[test]
    fn rationals_have_general_position() {
        let r = rational_contrast(0).unwrap();
        assert!(!crate::ring::BaseRing::is_zero(&r.top));
    }
}

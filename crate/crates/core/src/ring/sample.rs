use rand::Rng;

use super::Rational;

/// Uniform integer in `[-bound, bound]`, as a residue-field element.
pub fn sample_residue<G: Rng + ?Sized>(rng: &mut G, bound: u64) -> Rational {
    assert!(bound >= 1, "sampling bound must be positive");
    let b = bound as i64;
    Rational::from(rng.gen_range(-b..=b))
}

//! Random certification instances and a parallel runner.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::Error;
use crate::ext::SimpleExtension;
use crate::genpos::SearchConfig;
use crate::json::{Instance, InstanceOptions};
use crate::norm::{certify, verify, NormCertificate};
use crate::poly::Poly;
use crate::qform::QuadraticForm;
use crate::ring::{BaseRing, LocalRatFunc, Rational, RingId};

/// Coefficient bound for rational instances.
pub const RATIONAL_BOUND: i64 = 10;

fn nonzero<G: Rng + ?Sized>(rng: &mut G, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

fn small_local<G: Rng + ?Sized>(rng: &mut G, unit: bool) -> LocalRatFunc {
    let c0 = if unit { nonzero(rng, 3) } else { rng.gen_range(-3..=3) };
    let num = [c0, rng.gen_range(-2..=2)];
    let den = [1, rng.gen_range(-1..=1)];
    LocalRatFunc::from_ints(&num, &den).expect("denominator is a unit")
}

fn assemble<R, G, F>(rng: &mut G, n: usize, m: usize, mut sample: F) -> Instance<R>
where
    R: BaseRing + Serialize + DeserializeOwned,
    G: Rng + ?Sized,
    F: FnMut(&mut G, bool) -> R,
{
    let mut p: Vec<R> = (0..n).map(|i| sample(rng, i == 0)).collect();
    p.push(R::one());
    let ext = SimpleExtension::new(Poly::new(p)).expect("monic with unit constant term");
    let form = QuadraticForm::new((0..m).map(|_| sample(rng, true)).collect()).expect("unit diagonal");
    loop {
        let x: Vec<_> = (0..m)
            .map(|_| {
                let coords = (0..n).map(|_| sample(rng, false)).collect();
                ext.element(coords).expect("length n")
            })
            .collect();
        let value = form.eval_ext(&ext, &x).expect("dimensions match");
        if ext.is_unit(&value) {
            return Instance::new(ext.clone(), form.clone(), x, InstanceOptions::default())
                .expect("dimensions match");
        }
    }
}

/// `n` in 2..=5, `m` in 1..=4, integer coefficients in `[-10, 10]`.
pub fn random_rational_instance<G: Rng + ?Sized>(rng: &mut G) -> Instance<Rational> {
    let n = rng.gen_range(2..=5);
    let m = rng.gen_range(1..=4);
    assemble(rng, n, m, |rng, unit| {
        Rational::from(if unit {
            nonzero(rng, RATIONAL_BOUND)
        } else {
            rng.gen_range(-RATIONAL_BOUND..=RATIONAL_BOUND)
        })
    })
}

/// `n` in {2, 3}, `m` in {1, 2}, coefficients `(a + bx) / (1 + dx)` with
/// small integers.
pub fn random_local_instance<G: Rng + ?Sized>(rng: &mut G) -> Instance<LocalRatFunc> {
    let n = rng.gen_range(2..=3);
    let m = rng.gen_range(1..=2);
    assemble(rng, n, m, small_local)
}

/// Generator for instance `index` of a suite: independent of how many
/// instances are run and in which order.
pub fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelStats {
    pub n: usize,
    pub genpos_tries: usize,
    pub scaling_tries: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub index: usize,
    pub n: usize,
    pub m: usize,
    pub verified: bool,
    pub exhausted: bool,
    pub levels: Vec<LevelStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Certifies and verifies one instance.
pub fn run_instance<R, G>(
    inst: &Instance<R>,
    rng: &mut G,
    cfg: &SearchConfig,
) -> (Result<NormCertificate<R>, Error>, bool)
where
    R: BaseRing + Serialize + DeserializeOwned,
    G: Rng + ?Sized,
{
    match certify(&inst.ext, &inst.form, &inst.x, rng, cfg) {
        Ok(cert) => {
            let ok = verify(&inst.ext, &inst.form, &inst.x, &cert).is_accepted();
            (Ok(cert), ok)
        }
        Err(e) => (Err(e), false),
    }
}

fn outcome<R>(index: usize, inst: &Instance<R>, cfg: &SearchConfig, rng: &mut ChaCha8Rng) -> Outcome
where
    R: BaseRing + Serialize + DeserializeOwned,
{
    let (result, verified) = run_instance(inst, rng, cfg);
    let (levels, error) = match result {
        Ok(cert) => (
            cert.trace
                .iter()
                .map(|s| LevelStats {
                    n: s.n,
                    genpos_tries: s.genpos_tries,
                    scaling_tries: s.scaling_tries,
                })
                .collect(),
            None,
        ),
        Err(e) => (Vec::new(), Some(e)),
    };
    Outcome {
        index,
        n: inst.ext.degree(),
        m: inst.form.rank(),
        verified,
        exhausted: matches!(error, Some(Error::SearchExhausted { .. })),
        levels,
        error: error.map(|e| e.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub ring: RingId,
    pub seed: u64,
    pub outcomes: Vec<Outcome>,
}

impl SuiteReport {
    pub fn verified(&self) -> usize {
        self.outcomes.iter().filter(|o| o.verified).count()
    }

    pub fn passed(&self) -> bool {
        self.verified() == self.outcomes.len()
    }
}

/// Runs `count` random instances in parallel; outcomes are in index order.
pub fn run_suite(ring: RingId, count: usize, seed: u64, cfg: &SearchConfig) -> SuiteReport {
    let outcomes = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = instance_rng(seed, i);
            match ring {
                RingId::Rationals => {
                    let inst = random_rational_instance(&mut rng);
                    outcome(i, &inst, cfg, &mut rng)
                }
                RingId::LocalQx => {
                    let inst = random_local_instance(&mut rng);
                    outcome(i, &inst, cfg, &mut rng)
                }
            }
        })
        .collect();
    SuiteReport { ring, seed, outcomes }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>5}  {:>2}  {:>2}  {:<8}  tries per level", "#", "n", "m", "result")?;
        for o in &self.outcomes {
            let tries: Vec<String> = o.levels.iter().map(|l| l.genpos_tries.to_string()).collect();
            let status = match (&o.error, o.verified) {
                (Some(_), _) if o.exhausted => "exhausted",
                (Some(_), _) => "error",
                (None, true) => "verified",
                (None, false) => "rejected",
            };
            writeln!(f, "{:>5}  {:>2}  {:>2}  {:<8}  {}", o.index, o.n, o.m, status, tries.join(" "))?;
        }
        write!(
            f,
            "{}/{} certificates verified over {} (seed {})",
            self.verified(),
            self.outcomes.len(),
            self.ring,
            self.seed
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_respect_ranges() {
        for i in 0..30 {
            let mut rng = instance_rng(11, i);
            let inst = random_rational_instance(&mut rng);
            assert!((2..=5).contains(&inst.ext.degree()));
            assert!((1..=4).contains(&inst.form.rank()));
            let c = inst.form.eval_ext(&inst.ext, &inst.x).unwrap();
            assert!(inst.ext.is_unit(&c));
            let local = random_local_instance(&mut rng);
            assert!((2..=3).contains(&local.ext.degree()));
        }
    }

    #[test]
    fn suite_is_deterministic() {
        let cfg = SearchConfig::default();
        let a = run_suite(RingId::Rationals, 6, 3, &cfg);
        let b = run_suite(RingId::Rationals, 6, 3, &cfg);
        assert_eq!(a, b);
        assert!(a.passed(), "{a}");
        assert_eq!(a.outcomes.iter().map(|o| o.index).collect::<Vec<_>>(), (0..6).collect::<Vec<_>>());
    }
}

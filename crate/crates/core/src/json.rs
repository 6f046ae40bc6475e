//! JSON instance and certificate files. Numbers are strings so that
//! arbitrary precision survives the round trip.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::ext::{ExtElement, SimpleExtension};
use crate::genpos::SearchConfig;
use crate::norm::{NormCertificate, ReductionStep};
use crate::poly::Poly;
use crate::qform::{QuadraticForm, ValueFactor};
use crate::ring::{BaseRing, LocalRatFunc, Rational, RingId};

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid instance: {0}")]
    Invalid(#[from] Error),
    #[error("certificate is over {found}, instance is over {expected}")]
    RingMismatch { expected: RingId, found: RingId },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_tries: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<bool>,
}

impl InstanceOptions {
    pub fn search_config(&self) -> SearchConfig {
        let mut cfg = SearchConfig::default();
        if let Some(t) = self.max_tries {
            cfg.max_tries = t;
        }
        if let Some(b) = self.bound {
            cfg.initial_bound = b;
        }
        cfg
    }
}

/// A validated certification problem: `x` in `S^m` for `S = R[t]/(p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance<R> {
    pub ext: SimpleExtension<R>,
    pub form: QuadraticForm<R>,
    pub x: Vec<ExtElement<R>>,
    pub options: InstanceOptions,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyInstance {
    Rationals(Instance<Rational>),
    Local(Instance<LocalRatFunc>),
}

impl AnyInstance {
    pub fn ring(&self) -> RingId {
        match self {
            AnyInstance::Rationals(_) => RingId::Rationals,
            AnyInstance::Local(_) => RingId::LocalQx,
        }
    }
}

#[derive(Deserialize)]
struct RingTag {
    ring: RingId,
}

#[derive(Serialize, Deserialize)]
#[serde(
    deny_unknown_fields,
    bound(
        serialize = "R: BaseRing + Serialize",
        deserialize = "R: BaseRing + DeserializeOwned"
    )
)]
struct InstanceJson<R> {
    ring: RingId,
    p: Poly<R>,
    q: Vec<R>,
    x: Vec<Vec<R>>,
    #[serde(default, skip_serializing_if = "is_default")]
    options: InstanceOptions,
}

fn is_default(o: &InstanceOptions) -> bool {
    *o == InstanceOptions::default()
}

impl<R: BaseRing + Serialize + DeserializeOwned> Instance<R> {
    pub fn new(
        ext: SimpleExtension<R>,
        form: QuadraticForm<R>,
        x: Vec<ExtElement<R>>,
        options: InstanceOptions,
    ) -> Result<Self, Error> {
        if x.len() != form.rank() {
            return Err(Error::Dimension(format!(
                "{} witness coordinates for a form of rank {}",
                x.len(),
                form.rank()
            )));
        }
        Ok(Instance { ext, form, x, options })
    }

    fn from_json(raw: InstanceJson<R>) -> Result<Self, Error> {
        let ext = SimpleExtension::new(raw.p)?;
        let form = QuadraticForm::new(raw.q)?;
        let x = raw
            .x
            .into_iter()
            .map(|coords| ext.element(coords))
            .collect::<Result<Vec<_>, _>>()?;
        Instance::new(ext, form, x, raw.options)
    }

    pub fn to_json(&self) -> String {
        let raw = InstanceJson {
            ring: R::ID,
            p: self.ext.modulus().clone(),
            q: self.form.diag().to_vec(),
            x: self.x.iter().map(|e| e.coords().to_vec()).collect(),
            options: self.options.clone(),
        };
        serde_json::to_string_pretty(&raw).expect("serializable") + "\n"
    }
}

pub fn parse_instance(text: &str) -> Result<AnyInstance, InputError> {
    let tag: RingTag = serde_json::from_str(text)?;
    Ok(match tag.ring {
        RingId::Rationals => AnyInstance::Rationals(Instance::from_json(serde_json::from_str(text)?)?),
        RingId::LocalQx => AnyInstance::Local(Instance::from_json(serde_json::from_str(text)?)?),
    })
}

#[derive(Serialize)]
struct StepJson<'a, R> {
    n: usize,
    p: &'a [R],
    h: &'a [R],
    r: &'a R,
    g: &'a [R],
    b: &'a [R],
    #[serde(skip_serializing_if = "Option::is_none")]
    b_scaling: Option<&'a [R]>,
    x: Vec<&'a [R]>,
    genpos_tries: usize,
    scaling_tries: usize,
}

impl<'a, R: BaseRing> From<&'a ReductionStep<R>> for StepJson<'a, R> {
    fn from(s: &'a ReductionStep<R>) -> Self {
        StepJson {
            n: s.n,
            p: s.p.coeffs(),
            h: s.h.coeffs(),
            r: &s.r,
            g: s.g.coeffs(),
            b: s.b.coords(),
            b_scaling: s.b_scaling.as_ref().map(|b| b.coords()),
            x: s.witness.iter().map(|w| w.coeffs()).collect(),
            genpos_tries: s.genpos_tries,
            scaling_tries: s.scaling_tries,
        }
    }
}

#[derive(Serialize)]
struct CertificateOut<'a, R> {
    ring: RingId,
    target: &'a R,
    factors: &'a [ValueFactor<R>],
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<StepJson<'a, R>>>,
}

#[derive(Deserialize)]
struct CertificateIn<R> {
    ring: RingId,
    target: R,
    factors: Vec<ValueFactor<R>>,
}

pub fn certificate_to_json<R: BaseRing + Serialize>(cert: &NormCertificate<R>, with_trace: bool) -> String {
    let out = CertificateOut {
        ring: R::ID,
        target: &cert.target,
        factors: &cert.factors,
        trace: with_trace.then(|| cert.trace.iter().map(StepJson::from).collect()),
    };
    serde_json::to_string_pretty(&out).expect("serializable") + "\n"
}

/// Reads a certificate over `R`. Any trace is ignored: verification does
/// not trust it.
pub fn parse_certificate<R: BaseRing + DeserializeOwned>(text: &str) -> Result<NormCertificate<R>, InputError> {
    let tag: RingTag = serde_json::from_str(text)?;
    if tag.ring != R::ID {
        return Err(InputError::RingMismatch {
            expected: R::ID,
            found: tag.ring,
        });
    }
    let raw: CertificateIn<R> = serde_json::from_str(text)?;
    debug_assert_eq!(raw.ring, R::ID);
    Ok(NormCertificate {
        target: raw.target,
        factors: raw.factors,
        trace: Vec::new(),
    })
}

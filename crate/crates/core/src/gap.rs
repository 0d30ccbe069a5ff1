//! Sampling estimators for the negative type gaps and bisection for the
//! supremal negative type.
//!
//! Both gaps are infima over mean-zero coefficient vectors `xi` on
//! `x_0..x_n`, differing only in normalization:
//!
//! * `Gamma_S(p) = inf (-1/2) Q(xi) / ||(xi_1..xi_n)||^2`, which equals
//!   `lambda_min(G_p)`;
//! * `Gamma_X(p) = inf -2 Q(xi) / ||xi||_1^2`,
//!
//! with `Q(xi) = sum d_ij^p xi_i xi_j`. Each estimator draws `xi` uniformly on
//! the sphere, projects onto `sum xi = 0`, keeps the best sample and polishes
//! it by pair moves `xi_i += h, xi_j -= h` (which keep the sum at zero) under
//! a geometrically shrinking step. The result is attained by an explicit
//! vector, so it bounds the infimum from above.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gramian::{build_gramian, psd_check};
use crate::metric::{pow0, validate, DistanceMatrix};
use crate::negtype::SNormalized;

pub const DESCENT_ITERATIONS: usize = 50;
const INITIAL_STEP: f64 = 0.5;
const STEP_DECAY: f64 = 0.8;
/// Iterates are normalized to unit scale, so a trial this small is cancellation.
const MIN_TRIAL_NORM: f64 = 1e-8;

/// Tolerance of the PSD predicate driving the supremal-type bisection.
pub const SUPREMAL_PSD_TOL: f64 = 1e-12;

/// `d^p` with the base point's row kept, for repeated quadratic-form evaluation.
struct PowerMatrix {
    n: usize,
    data: Vec<f64>,
}

impl PowerMatrix {
    fn new(d: &DistanceMatrix, p: f64) -> Self {
        let n = d.n_points();
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    data[i * n + j] = pow0(d.get(i, j), p);
                }
            }
        }
        Self { n, data }
    }

    fn quadratic(&self, xi: &[f64]) -> f64 {
        let n = self.n;
        (0..n)
            .map(|i| xi[i] * (0..n).map(|j| self.data[i * n + j] * xi[j]).sum::<f64>())
            .sum()
    }
}

/// Objective and normalization for one gap.
trait GapForm {
    /// Rescales `xi` onto the normalization slice; `false` if it cannot be.
    fn normalize(&self, xi: &mut [f64]) -> bool;
    fn value(&self, pm: &PowerMatrix, xi: &[f64]) -> f64;
}

struct SForm;

impl GapForm for SForm {
    fn normalize(&self, xi: &mut [f64]) -> bool {
        let norm = xi[1..].iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(norm > 0.0) {
            return false;
        }
        xi.iter_mut().for_each(|v| *v /= norm);
        true
    }

    fn value(&self, pm: &PowerMatrix, xi: &[f64]) -> f64 {
        -0.5 * pm.quadratic(xi)
    }
}

struct ClassicForm;

impl GapForm for ClassicForm {
    fn normalize(&self, xi: &mut [f64]) -> bool {
        let l1: f64 = xi.iter().map(|v| v.abs()).sum();
        if !(l1 > 0.0) {
            return false;
        }
        xi.iter_mut().for_each(|v| *v /= l1);
        true
    }

    fn value(&self, pm: &PowerMatrix, xi: &[f64]) -> f64 {
        -2.0 * pm.quadratic(xi)
    }
}

fn mean_zero_sample(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let mut xi: Vec<f64> = (0..len).map(|_| StandardNormal.sample(rng)).collect();
    let mean = xi.iter().sum::<f64>() / len as f64;
    xi.iter_mut().for_each(|v| *v -= mean);
    xi
}

/// Removes rounding drift from `sum xi = 0`; rejects vectors reduced to
/// rounding noise by cancellation.
fn recenter(xi: &mut [f64]) -> bool {
    let mean = xi.iter().sum::<f64>() / xi.len() as f64;
    xi.iter_mut().for_each(|v| *v -= mean);
    xi.iter().map(|v| v.abs()).sum::<f64>() > MIN_TRIAL_NORM
}

fn minimize<F: GapForm>(
    form: &F,
    d: &DistanceMatrix,
    p: f64,
    samples: usize,
    seed: u64,
) -> Result<(f64, Vec<f64>)> {
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "at least one sample is required".into(),
        ));
    }
    if !(p >= 0.0) || !p.is_finite() {
        return Err(Error::InvalidExponent(p));
    }
    let len = d.n_points();
    if len < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: len,
        });
    }
    let pm = PowerMatrix::new(d, p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut drawn = 0;
    while drawn < samples {
        let mut xi = mean_zero_sample(&mut rng, len);
        if !form.normalize(&mut xi) {
            continue;
        }
        drawn += 1;
        let v = form.value(&pm, &xi);
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, xi));
        }
    }
    let (mut value, mut xi) = best.expect("samples >= 1");

    let mut step = INITIAL_STEP;
    let mut trial = xi.clone();
    for _ in 0..DESCENT_ITERATIONS {
        for i in 0..len {
            for j in (i + 1)..len {
                for h in [step, -step] {
                    trial.copy_from_slice(&xi);
                    trial[i] += h;
                    trial[j] -= h;
                    if !recenter(&mut trial) || !form.normalize(&mut trial) {
                        continue;
                    }
                    let v = form.value(&pm, &trial);
                    if v < value {
                        value = v;
                        xi.copy_from_slice(&trial);
                    }
                }
            }
        }
        step *= STEP_DECAY;
    }
    Ok((value, xi))
}

/// Upper-bound estimate of `Gamma_S(p)` and the weight vector attaining it.
pub fn estimate_gap_s(
    d: &DistanceMatrix,
    p: f64,
    samples: usize,
    seed: u64,
) -> Result<(f64, SNormalized)> {
    let (value, xi) = minimize(&SForm, d, p, samples, seed)?;
    let w = SNormalized::from_eta(&xi[1..])?;
    Ok((value, w))
}

/// Upper-bound estimate of the classical gap `Gamma_X(p)`.
pub fn estimate_gap_classic(d: &DistanceMatrix, p: f64, samples: usize, seed: u64) -> Result<f64> {
    minimize(&ClassicForm, d, p, samples, seed).map(|(v, _)| v)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SupremalType {
    /// Negative type holds for every `p >= 0`.
    Infinite,
    Finite(f64),
    /// Negative type still holds at the search ceiling.
    AtLeast(f64),
}

impl Serialize for SupremalType {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match *self {
            SupremalType::Infinite => ser.serialize_str("infinite"),
            SupremalType::Finite(p) => ser.serialize_f64(p),
            SupremalType::AtLeast(p) => {
                let mut m = ser.serialize_map(Some(1))?;
                m.serialize_entry("at_least", &p)?;
                m.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for SupremalType {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Value(f64),
            Label(String),
            AtLeast { at_least: f64 },
        }
        match Repr::deserialize(de)? {
            Repr::Value(p) => Ok(SupremalType::Finite(p)),
            Repr::Label(s) if s == "infinite" => Ok(SupremalType::Infinite),
            Repr::Label(s) => Err(serde::de::Error::custom(format!(
                "unknown supremal type {s:?}"
            ))),
            Repr::AtLeast { at_least } => Ok(SupremalType::AtLeast(at_least)),
        }
    }
}

/// Supremal `p` for which `G_p` stays positive semidefinite.
///
/// Ultrametrics short-circuit to [`SupremalType::Infinite`]. Otherwise the set
/// of admissible `p` is an interval `[0, p*]`, so bisection on `[0, p_max]`
/// brackets `p*` to within `tol`.
pub fn estimate_supremal_negtype(d: &DistanceMatrix, p_max: f64, tol: f64) -> Result<SupremalType> {
    if !(p_max > 0.0) || !p_max.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "p_max must be positive, got {p_max}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let report = validate(d);
    if let Some(v) = report.first_metric_violation() {
        return Err(Error::NotMetric(v));
    }
    if report.is_ultrametric || d.n_points() < 3 {
        return Ok(SupremalType::Infinite);
    }
    let holds = |p: f64| -> Result<bool> { psd_check(&build_gramian(d, p)?, SUPREMAL_PSD_TOL) };
    if holds(p_max)? {
        return Ok(SupremalType::AtLeast(p_max));
    }
    let (mut lo, mut hi) = (0.0, p_max);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if holds(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(SupremalType::Finite(0.5 * (lo + hi)))
}

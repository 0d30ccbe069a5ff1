//! Negative-type quadratic forms and weight vectors.
//!
//! A weight vector `(s, t)` is a pair of nonnegative, disjointly supported
//! vectors on `x_0..x_n` with equal sums; `s - t` is then a mean-zero
//! coefficient vector and every mean-zero vector splits this way. For such a
//! pair
//!
//! ```text
//! gamma(p) = 2 sum s_i t_j d_ij^p - sum (s_i s_j + t_i t_j) d_ij^p
//!          = c_1 alpha_1^p + ... + c_l alpha_l^p
//! ```
//!
//! where `alpha_1 < .. < alpha_l` are the distinct nonzero distances.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{pow0, validate_ultrametric, DistanceMatrix, DistanceSpectrum};
use crate::ultrametric::coteries_unchecked;

/// Relative tolerance on `sum s = sum t` and on the S-normalization.
pub const WEIGHT_TOL: f64 = 1e-12;

/// `sum_{i,j} d(x_i,x_j)^p xi_i xi_j` for a mean-zero `xi`.
pub fn negtype_quadratic(d: &DistanceMatrix, p: f64, xi: &[f64]) -> Result<f64> {
    let n = d.n_points();
    if xi.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: xi.len(),
        });
    }
    if !(p >= 0.0) {
        return Err(Error::InvalidExponent(p));
    }
    let sum: f64 = xi.iter().sum();
    let l1: f64 = xi.iter().map(|v| v.abs()).sum();
    if sum.abs() > 1e-12 * l1 {
        return Err(Error::NotMeanZero { sum });
    }
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                q += pow0(d.get(i, j), p) * xi[i] * xi[j];
            }
        }
    }
    Ok(q)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightVector {
    s: Vec<f64>,
    t: Vec<f64>,
}

impl WeightVector {
    pub fn new(s: Vec<f64>, t: Vec<f64>) -> Result<Self> {
        if s.len() != t.len() {
            return Err(Error::DimensionMismatch {
                expected: s.len(),
                got: t.len(),
            });
        }
        if s.iter().chain(&t).any(|&v| !(v >= 0.0) || !v.is_finite()) {
            return Err(Error::InvalidWeights(
                "entries must be finite and nonnegative".into(),
            ));
        }
        if let Some(i) = (0..s.len()).find(|&i| s[i] * t[i] != 0.0) {
            return Err(Error::InvalidWeights(format!(
                "s and t overlap at index {i}"
            )));
        }
        let (ss, ts): (f64, f64) = (s.iter().sum(), t.iter().sum());
        if (ss - ts).abs() > WEIGHT_TOL * ss.max(ts) {
            return Err(Error::InvalidWeights(format!(
                "sum s = {ss} but sum t = {ts}"
            )));
        }
        Ok(Self { s, t })
    }

    /// Splits a mean-zero vector into its positive and negative parts.
    pub fn from_signed(xi: &[f64]) -> Result<Self> {
        let s = xi.iter().map(|&v| v.max(0.0)).collect();
        let t = xi.iter().map(|&v| (-v).max(0.0)).collect();
        Self::new(s, t)
    }

    pub fn zero(len: usize) -> Self {
        Self {
            s: vec![0.0; len],
            t: vec![0.0; len],
        }
    }

    pub fn s(&self) -> &[f64] {
        &self.s
    }

    pub fn t(&self) -> &[f64] {
        &self.t
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// `s - t`
    pub fn signed(&self) -> Vec<f64> {
        self.s.iter().zip(&self.t).map(|(a, b)| a - b).collect()
    }

    /// `sum_{i>=1} s_i^2 + t_i^2`, the quantity fixed by the allowable set S.
    pub fn tail_norm_sq(&self) -> f64 {
        self.s[1..].iter().chain(&self.t[1..]).map(|v| v * v).sum()
    }

    /// `sum_{i>=0} s_i^2 + t_i^2`
    pub fn norm_sq(&self) -> f64 {
        self.s.iter().chain(&self.t).map(|v| v * v).sum()
    }

    fn scaled(&self, k: f64) -> Self {
        Self {
            s: self.s.iter().map(|v| v * k).collect(),
            t: self.t.iter().map(|v| v * k).collect(),
        }
    }
}

/// A weight vector on the slice `sum_{i>=1} s_i^2 + t_i^2 = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SNormalized(WeightVector);

impl SNormalized {
    pub fn new(w: WeightVector) -> Result<Self> {
        let q = w.tail_norm_sq();
        if (q - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::InvalidWeights(format!(
                "sum over i >= 1 of s_i^2 + t_i^2 is {q}, expected 1"
            )));
        }
        Ok(Self(w))
    }

    /// Rescales onto S; fails for vectors vanishing off the base point.
    pub fn normalize(w: &WeightVector) -> Result<Self> {
        let q = w.tail_norm_sq();
        if q == 0.0 {
            return Err(Error::InvalidWeights(
                "no mass away from the base point".into(),
            ));
        }
        let scaled = w.scaled(1.0 / q.sqrt());
        let q = scaled.tail_norm_sq();
        if (q - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::InvalidWeights(format!(
                "normalization drifted to {q}"
            )));
        }
        Ok(Self(scaled))
    }

    /// The weight vector of `eta in R^n`: `xi = (-sum eta, eta)` split by sign
    /// and divided by `||eta||_2`.
    pub fn from_eta(eta: &[f64]) -> Result<Self> {
        let mut xi = Vec::with_capacity(eta.len() + 1);
        xi.push(-eta.iter().sum::<f64>());
        xi.extend_from_slice(eta);
        let l1: f64 = xi.iter().map(|v| v.abs()).sum();
        let s: Vec<f64> = xi.iter().map(|&v| v.max(0.0)).collect();
        let t: Vec<f64> = xi.iter().map(|&v| (-v).max(0.0)).collect();
        // the sign split of an exact mean-zero vector; rounding in xi_0 is the only drift
        let (ss, ts): (f64, f64) = (s.iter().sum(), t.iter().sum());
        if (ss - ts).abs() > 1e-12 * l1.max(f64::MIN_POSITIVE) {
            return Err(Error::NotMeanZero { sum: ss - ts });
        }
        Self::normalize(&WeightVector { s, t })
    }

    pub fn weights(&self) -> &WeightVector {
        &self.0
    }

    pub fn into_inner(self) -> WeightVector {
        self.0
    }
}

impl std::ops::Deref for SNormalized {
    type Target = WeightVector;

    fn deref(&self) -> &WeightVector {
        &self.0
    }
}

fn check_len(d: &DistanceMatrix, w: &WeightVector) -> Result<()> {
    if w.len() != d.n_points() {
        return Err(Error::DimensionMismatch {
            expected: d.n_points(),
            got: w.len(),
        });
    }
    Ok(())
}

/// `gamma(p) = 2 sum s_i t_j d^p - sum (s_i s_j + t_i t_j) d^p`.
pub fn gamma_value(d: &DistanceMatrix, p: f64, w: &WeightVector) -> Result<f64> {
    check_len(d, w)?;
    if !(p >= 0.0) {
        return Err(Error::InvalidExponent(p));
    }
    let (s, t) = (w.s(), w.t());
    let n = d.n_points();
    let mut cross = 0.0;
    let mut same = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let dp = pow0(d.get(i, j), p);
            cross += s[i] * t[j] * dp;
            same += (s[i] * s[j] + t[i] * t[j]) * dp;
        }
    }
    Ok(2.0 * cross - same)
}

/// `gamma(p) = sum_k c_k alpha_k^p` for one weight vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaExpansion {
    pub alphas: Vec<f64>,
    pub coefficients: Vec<f64>,
}

impl GammaExpansion {
    pub fn value_at(&self, p: f64) -> f64 {
        self.alphas
            .iter()
            .zip(&self.coefficients)
            .map(|(a, c)| c * pow0(*a, p))
            .sum()
    }

    /// `c_1 + .. + c_l`
    pub fn total(&self) -> f64 {
        self.coefficients.iter().sum()
    }

    pub fn abs_total(&self) -> f64 {
        self.coefficients.iter().map(|c| c.abs()).sum()
    }

    /// `tail[k] = c_k + .. + c_l` (0-based `k`).
    pub fn tail_sums(&self) -> Vec<f64> {
        let mut acc = 0.0;
        let mut tails: Vec<f64> = self
            .coefficients
            .iter()
            .rev()
            .map(|c| {
                acc += c;
                acc
            })
            .collect();
        tails.reverse();
        tails
    }
}

/// Groups the ordered-pair terms of `gamma` by distance class:
/// `c_k = sum over d(x_i,x_j) = alpha_k of (2 s_i t_j - s_i s_j - t_i t_j)`.
pub fn extract_coefficients(d: &DistanceMatrix, w: &WeightVector) -> Result<GammaExpansion> {
    check_len(d, w)?;
    validate_ultrametric(d)?;
    Ok(expansion_unchecked(d, &DistanceSpectrum::of(d), w))
}

pub(crate) fn expansion_unchecked(
    d: &DistanceMatrix,
    spectrum: &DistanceSpectrum,
    w: &WeightVector,
) -> GammaExpansion {
    let (s, t) = (w.s(), w.t());
    let mut coefficients = vec![0.0; spectrum.ell()];
    let n = d.n_points();
    for i in 0..n {
        for j in 0..n {
            if let Some(k) = spectrum.class_of(i, j) {
                coefficients[k] += 2.0 * s[i] * t[j] - s[i] * s[j] - t[i] * t[j];
            }
        }
    }
    GammaExpansion {
        alphas: spectrum.alphas.clone(),
        coefficients,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatCheck {
    /// `|c_k| <= tol` for every `k >= 2`.
    pub flat: bool,
    /// No weight on `X_0` and balanced weight on every coterie.
    pub support_ok: bool,
}

/// Evaluates both sides of the flat-simplex equivalence for one weight vector.
pub fn check_flat_condition(d: &DistanceMatrix, w: &SNormalized, tol: f64) -> Result<FlatCheck> {
    check_len(d, w)?;
    if d.n_points() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: d.n_points(),
        });
    }
    validate_ultrametric(d)?;
    let c = coteries_unchecked(d);
    if c.is_degenerate() {
        return Err(Error::Degenerate);
    }
    let e = expansion_unchecked(d, &DistanceSpectrum::of(d), w);
    let flat = e.coefficients.iter().skip(1).all(|ck| ck.abs() <= tol);

    let (s, t) = (w.s(), w.t());
    let residual_empty = c.residual.iter().all(|&i| s[i] <= tol && t[i] <= tol);
    let balanced = c.coteries.iter().all(|b| {
        let sb: f64 = b.iter().map(|&i| s[i]).sum();
        let tb: f64 = b.iter().map(|&i| t[i]).sum();
        (sb - tb).abs() <= tol
    });
    Ok(FlatCheck {
        flat,
        support_ok: residual_empty && balanced,
    })
}

/// Scale data entering the extension formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub n_points: usize,
    /// Diameter `D_X`.
    pub diameter: f64,
    /// `D_X / min nonzero distance`.
    pub aspect_ratio: f64,
    /// `1 - (1/floor(n/2) + 1/ceil(n/2)) / 2` for `n = |X|`.
    pub gamma_n: f64,
}

impl MetricSummary {
    pub fn of(d: &DistanceMatrix) -> Result<Self> {
        let n = d.n_points();
        if n < 2 {
            return Err(Error::TooFewPoints { needed: 2, got: n });
        }
        let diameter = d.max_entry();
        let min = d.min_nonzero().expect("at least two points");
        Ok(Self {
            n_points: n,
            diameter,
            aspect_ratio: diameter / min,
            gamma_n: gamma_n(n),
        })
    }
}

pub fn gamma_n(n: usize) -> f64 {
    let lo = (n / 2) as f64;
    let hi = n.div_ceil(2) as f64;
    1.0 - 0.5 * (1.0 / lo + 1.0 / hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extension {
    /// Strict negative type extends to `[p, p + epsilon)`.
    Finite(f64),
    /// All distances are equal; the formula's denominator vanishes.
    Unbounded,
}

/// `epsilon = ln(1 + gap / (D_X^p gamma(n))) / ln(D_X / d_min)`.
pub fn epsilon_extension(gap: f64, summary: &MetricSummary, p: f64) -> Result<Extension> {
    if summary.n_points < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: summary.n_points,
        });
    }
    if !(gap > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "gap must be positive, got {gap}"
        )));
    }
    if !(p >= 0.0) {
        return Err(Error::InvalidExponent(p));
    }
    if summary.aspect_ratio <= 1.0 + 1e-12 {
        return Ok(Extension::Unbounded);
    }
    let growth = (gap / (summary.diameter.powf(p) * summary.gamma_n)).ln_1p();
    Ok(Extension::Finite(growth / summary.aspect_ratio.ln()))
}

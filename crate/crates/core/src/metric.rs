//! Finite metric spaces stored as dense distance matrices over labeled
//! points `x0..xn`, with validation, distance spectra and power transforms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance under which an asymmetric pair is averaged instead of rejected.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Relative tolerance (scaled by the largest entry) for triangle checks and
/// for deciding that two distances are the same value.
pub const RELATIVE_TOL: f64 = 1e-12;

/// A finite metric space `(X, d)` on points `x0..xn`. Index 0 is the base point
/// used by the Gramian.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n_points: usize,
    entries: Vec<f64>,
    labels: Vec<String>,
}

impl DistanceMatrix {
    /// Builds a matrix from rows, checking every structural invariant.
    ///
    /// Entries that disagree with their transpose by at most [`SYMMETRY_TOL`]
    /// are replaced by the average of the two.
    pub fn from_rows(rows: Vec<Vec<f64>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
        }
        let mut entries: Vec<f64> = rows.into_iter().flatten().collect();
        for i in 0..n {
            for j in 0..n {
                let v = entries[i * n + j];
                if !v.is_finite() {
                    return Err(Error::NonFinite { i, j });
                }
                if v < 0.0 {
                    return Err(Error::NegativeEntry { i, j, value: v });
                }
            }
            if entries[i * n + i] != 0.0 {
                return Err(Error::NonzeroDiagonal {
                    i,
                    value: entries[i * n + i],
                });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let upper = entries[i * n + j];
                let lower = entries[j * n + i];
                if upper != lower {
                    if (upper - lower).abs() > SYMMETRY_TOL {
                        return Err(Error::Asymmetric { i, j, upper, lower });
                    }
                    let avg = 0.5 * (upper + lower);
                    entries[i * n + j] = avg;
                    entries[j * n + i] = avg;
                }
                if entries[i * n + j] == 0.0 {
                    return Err(Error::DuplicatePoint { i, j });
                }
            }
        }
        let labels = match labels {
            Some(l) if l.len() != n => {
                return Err(Error::LabelCount {
                    labels: l.len(),
                    points: n,
                })
            }
            Some(l) => l,
            None => default_labels(n),
        };
        Ok(Self {
            n_points: n,
            entries,
            labels,
        })
    }

    /// Builds a matrix from a strict upper triangle given row by row
    /// (`d(0,1), d(0,2), .., d(1,2), ..`).
    pub fn from_upper(n_points: usize, upper: &[f64]) -> Result<Self> {
        let expected = n_points * n_points.saturating_sub(1) / 2;
        if upper.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: upper.len(),
            });
        }
        let mut it = upper.iter();
        let mut flat = vec![0.0; n_points * n_points];
        for i in 0..n_points {
            for j in (i + 1)..n_points {
                let v = *it.next().unwrap();
                flat[i * n_points + j] = v;
                flat[j * n_points + i] = v;
            }
        }
        let rows = flat.chunks(n_points.max(1)).map(<[f64]>::to_vec).collect();
        Self::from_rows(rows, None)
    }

    /// Number of points `n + 1`.
    pub fn n_points(&self) -> usize {
        self.n_points
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n_points + j]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries
            .chunks(self.n_points)
            .map(<[f64]>::to_vec)
            .collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn max_entry(&self) -> f64 {
        self.entries.iter().copied().fold(0.0, f64::max)
    }

    /// Smallest off-diagonal distance, `None` for a single point.
    pub fn min_nonzero(&self) -> Option<f64> {
        self.off_diagonal().map(|(_, _, d)| d).reduce(f64::min)
    }

    /// Iterates `(i, j, d(i,j))` over unordered pairs `i < j`.
    pub fn off_diagonal(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let n = self.n_points;
        (0..n).flat_map(move |i| ((i + 1)..n).map(move |j| (i, j, self.get(i, j))))
    }

    /// Tolerance used by the validators and the distance merge rule.
    pub fn tolerance(&self) -> f64 {
        RELATIVE_TOL * self.max_entry()
    }

    /// Relabels the points: position `k` of the result holds original point `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n_points;
        if perm.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: perm.len(),
            });
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidArgument(format!(
                    "{perm:?} is not a permutation"
                )));
            }
        }
        let mut entries = vec![0.0; n * n];
        for a in 0..n {
            for b in 0..n {
                entries[a * n + b] = self.get(perm[a], perm[b]);
            }
        }
        let labels = perm.iter().map(|&p| self.labels[p].clone()).collect();
        Ok(Self {
            n_points: n,
            entries,
            labels,
        })
    }

    /// Entrywise `d^p`, with `0^0 = 0` so the diagonal stays zero at `p = 0`.
    pub fn power(&self, p: f64) -> Result<Self> {
        if !(p >= 0.0) || !p.is_finite() {
            return Err(Error::InvalidExponent(p));
        }
        if p == 1.0 {
            return Ok(self.clone());
        }
        let n = self.n_points;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.entries[i * n + j] = if i == j { 0.0 } else { pow0(self.get(i, j), p) };
            }
        }
        Ok(out)
    }
}

/// `d^p` under the convention `0^0 = 0`.
#[inline]
pub fn pow0(d: f64, p: f64) -> f64 {
    if d == 0.0 {
        0.0
    } else if p == 1.0 {
        d
    } else {
        d.powf(p)
    }
}

pub fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// Which inequality a triple violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `d(i,j) > d(i,k) + d(k,j)`
    Triangle,
    /// `d(i,j) > max(d(i,k), d(k,j))`
    StrongTriangle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = (self.i, self.j, self.k);
        match self.kind {
            ViolationKind::Triangle => write!(f, "d({i},{j}) > d({i},{k}) + d({k},{j})"),
            ViolationKind::StrongTriangle => {
                write!(f, "d({i},{j}) > max(d({i},{k}), d({k},{j}))")
            }
        }
    }
}

/// Largest number of witnesses kept per kind; counts are exact.
pub const MAX_WITNESSES: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub is_metric: bool,
    pub is_ultrametric: bool,
    pub triangle_violations: usize,
    pub strong_triangle_violations: usize,
    pub violations: Vec<Violation>,
    pub tolerance_used: f64,
}

impl ValidationReport {
    pub fn first_metric_violation(&self) -> Option<Violation> {
        self.violations
            .iter()
            .copied()
            .find(|v| v.kind == ViolationKind::Triangle)
    }

    pub fn first_ultrametric_violation(&self) -> Option<Violation> {
        self.violations
            .iter()
            .copied()
            .find(|v| v.kind == ViolationKind::StrongTriangle)
    }
}

/// Checks the triangle and strong triangle inequalities on every triple, with
/// tolerance `1e-12 * max entry`.
pub fn validate(d: &DistanceMatrix) -> ValidationReport {
    let n = d.n_points();
    let tol = d.tolerance();
    let mut report = ValidationReport {
        is_metric: true,
        is_ultrametric: true,
        triangle_violations: 0,
        strong_triangle_violations: 0,
        violations: Vec::new(),
        tolerance_used: tol,
    };
    let mut kept_strong = 0;
    let mut kept_weak = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            let dij = d.get(i, j);
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                let (a, b) = (d.get(i, k), d.get(k, j));
                if dij > a + b + tol {
                    report.triangle_violations += 1;
                    if kept_weak < MAX_WITNESSES {
                        kept_weak += 1;
                        report.violations.push(Violation {
                            i,
                            j,
                            k,
                            kind: ViolationKind::Triangle,
                        });
                    }
                }
                if dij > a.max(b) + tol {
                    report.strong_triangle_violations += 1;
                    if kept_strong < MAX_WITNESSES {
                        kept_strong += 1;
                        report.violations.push(Violation {
                            i,
                            j,
                            k,
                            kind: ViolationKind::StrongTriangle,
                        });
                    }
                }
            }
        }
    }
    report.is_metric = report.triangle_violations == 0;
    report.is_ultrametric = report.strong_triangle_violations == 0;
    report
}

pub fn validate_metric(d: &DistanceMatrix) -> Result<()> {
    match validate(d).first_metric_violation() {
        Some(v) => Err(Error::NotMetric(v)),
        None => Ok(()),
    }
}

pub fn validate_ultrametric(d: &DistanceMatrix) -> Result<()> {
    match validate(d).first_ultrametric_violation() {
        Some(v) => Err(Error::NotUltrametric(v)),
        None => Ok(()),
    }
}

/// Distinct nonzero distances `alpha_1 < .. < alpha_l` with pair multiplicities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceSpectrum {
    pub alphas: Vec<f64>,
    pub multiplicity: Vec<usize>,
    #[serde(skip)]
    class: Vec<usize>,
    #[serde(skip)]
    n_points: usize,
}

impl DistanceSpectrum {
    /// Groups off-diagonal entries; a value joins the current group while it is
    /// within `1e-12 * max entry` of the group's smallest member.
    pub fn of(d: &DistanceMatrix) -> Self {
        let n = d.n_points();
        let tol = d.tolerance();
        let mut pairs: Vec<(usize, usize, f64)> = d.off_diagonal().collect();
        pairs.sort_by(|a, b| a.2.total_cmp(&b.2));

        let mut alphas: Vec<f64> = Vec::new();
        let mut multiplicity = Vec::new();
        let mut class = vec![usize::MAX; n * n];
        for (i, j, v) in pairs {
            match alphas.last() {
                Some(&lo) if v - lo <= tol => *multiplicity.last_mut().unwrap() += 1,
                _ => {
                    alphas.push(v);
                    multiplicity.push(1);
                }
            }
            let k = alphas.len() - 1;
            class[i * n + j] = k;
            class[j * n + i] = k;
        }
        Self {
            alphas,
            multiplicity,
            class,
            n_points: n,
        }
    }

    /// Number of distinct nonzero distances.
    pub fn ell(&self) -> usize {
        self.alphas.len()
    }

    /// Index `k` (0-based) of the distance class of pair `(i, j)`; `None` on the diagonal.
    pub fn class_of(&self, i: usize, j: usize) -> Option<usize> {
        match self.class[i * self.n_points + j] {
            usize::MAX => None,
            k => Some(k),
        }
    }

    pub fn alpha1(&self) -> Option<f64> {
        self.alphas.first().copied()
    }
}

pub fn distinct_distances(d: &DistanceMatrix) -> DistanceSpectrum {
    DistanceSpectrum::of(d)
}

pub fn power_transform(d: &DistanceMatrix, p: f64) -> Result<DistanceMatrix> {
    d.power(p)
}

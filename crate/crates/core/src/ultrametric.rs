//! Coterie decomposition of a finite ultrametric space and the closed forms
//! for the minimum eigenvalue of its Gramian and the matching eigenspace.
//!
//! A coterie is a closed ball of radius `alpha_1` (the smallest nonzero
//! distance) holding more than one point. In an ultrametric these balls are
//! either equal or disjoint, so the coteries together with the residual set
//! `X_0` of points lying in no coterie partition the space.
//!
//! Eigenspace vectors live in `R^n` with coordinate `i - 1` standing for point
//! `x_i`; the base point `x_0` has no coordinate of its own and is recovered
//! as `xi_0 = -sum(eta)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::norm_inf;
use crate::metric::{validate_ultrametric, DistanceMatrix, DistanceSpectrum};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoterieDecomposition {
    /// Index sets of the coteries, each sorted, ordered by smallest member.
    pub coteries: Vec<Vec<usize>>,
    /// Points in no coterie.
    pub residual: Vec<usize>,
    pub alpha1: f64,
}

impl CoterieDecomposition {
    pub fn r(&self) -> usize {
        self.coteries.len()
    }

    /// The coterie holding point `i`, if any.
    pub fn coterie_of(&self, i: usize) -> Option<usize> {
        self.coteries.iter().position(|c| c.contains(&i))
    }

    pub fn base_in_coterie(&self) -> bool {
        self.coterie_of(0).is_some()
    }

    /// Exactly one coterie, of size two, holding the base point.
    pub fn is_degenerate(&self) -> bool {
        self.coteries.len() == 1 && self.coteries[0].len() == 2 && self.coteries[0].contains(&0)
    }

    /// `sum |B_j| - r`, minus one more when the base point is in a coterie.
    pub fn eigenspace_dimension(&self) -> usize {
        let covered: usize = self.coteries.iter().map(Vec::len).sum();
        covered - self.r() - usize::from(self.base_in_coterie())
    }

    pub fn labeled(&self, labels: &[String]) -> Vec<Vec<String>> {
        self.coteries
            .iter()
            .map(|c| c.iter().map(|&i| labels[i].clone()).collect())
            .collect()
    }
}

pub fn find_coteries(d: &DistanceMatrix) -> Result<CoterieDecomposition> {
    let n = d.n_points();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    validate_ultrametric(d)?;
    Ok(coteries_unchecked(d))
}

/// Ball decomposition without re-validating; the input must be an ultrametric.
pub(crate) fn coteries_unchecked(d: &DistanceMatrix) -> CoterieDecomposition {
    let n = d.n_points();
    let spectrum = DistanceSpectrum::of(d);
    let alpha1 = spectrum.alphas[0];
    let mut assigned = vec![false; n];
    let mut coteries = Vec::new();
    let mut residual = Vec::new();
    for z in 0..n {
        if assigned[z] {
            continue;
        }
        let ball: Vec<usize> = (0..n)
            .filter(|&x| x == z || spectrum.class_of(x, z) == Some(0))
            .collect();
        for &x in &ball {
            assigned[x] = true;
        }
        if ball.len() > 1 {
            coteries.push(ball);
        } else {
            residual.push(z);
        }
    }
    CoterieDecomposition {
        coteries,
        residual,
        alpha1,
    }
}

fn checked(d: &DistanceMatrix) -> Result<CoterieDecomposition> {
    if d.n_points() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: d.n_points(),
        });
    }
    find_coteries(d)
}

fn nondegenerate(d: &DistanceMatrix) -> Result<CoterieDecomposition> {
    let c = checked(d)?;
    if c.is_degenerate() {
        return Err(Error::Degenerate);
    }
    Ok(c)
}

pub fn is_degenerate(d: &DistanceMatrix) -> Result<bool> {
    Ok(checked(d)?.is_degenerate())
}

/// Returns a nondegenerate relabeling and the permutation used (`perm[k]` is
/// the original index now at position `k`). A degenerate labeling has its
/// base point swapped with the smallest index outside the unique coterie.
pub fn reorder_nondegenerate(d: &DistanceMatrix) -> Result<(DistanceMatrix, Vec<usize>)> {
    let c = checked(d)?;
    let n = d.n_points();
    let mut perm: Vec<usize> = (0..n).collect();
    if !c.is_degenerate() {
        return Ok((d.clone(), perm));
    }
    let outside = (0..n)
        .find(|i| !c.coteries[0].contains(i))
        .expect("three points and a two-point coterie leave one outside");
    perm.swap(0, outside);
    Ok((d.permuted(&perm)?, perm))
}

/// `alpha_1^p / 2`, the minimum eigenvalue of `G_p` for a nondegenerate
/// ultrametric and `p > 0`.
pub fn closed_form_min_eigenvalue(d: &DistanceMatrix, p: f64) -> Result<f64> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::InvalidExponent(p));
    }
    let c = nondegenerate(d)?;
    Ok(c.alpha1.powf(p) / 2.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenspaceDescription {
    pub lambda_min: f64,
    pub dimension: usize,
    /// Vectors in `R^n`; coordinate `i - 1` is point `x_i`.
    pub basis: Vec<Vec<f64>>,
    /// Representative `k_j` of each coterie (smallest nonzero member).
    pub representatives: Vec<usize>,
}

/// The basis `{e_i - e_{k_j}}` of the `lambda_min` eigenspace of `G_p`, with
/// `k_j` the smallest nonzero index of coterie `j`.
pub fn eigenspace_basis(d: &DistanceMatrix, p: f64) -> Result<EigenspaceDescription> {
    let lambda_min = closed_form_min_eigenvalue(d, p)?;
    let c = nondegenerate(d)?;
    let n = d.n_points() - 1;
    let mut basis = Vec::new();
    let mut representatives = Vec::new();
    for coterie in &c.coteries {
        let members: Vec<usize> = coterie.iter().copied().filter(|&i| i != 0).collect();
        let k = members[0];
        representatives.push(k);
        for &i in &members[1..] {
            let mut v = vec![0.0; n];
            v[i - 1] = 1.0;
            v[k - 1] = -1.0;
            basis.push(v);
        }
    }
    debug_assert_eq!(basis.len(), c.eigenspace_dimension());
    Ok(EigenspaceDescription {
        lambda_min,
        dimension: basis.len(),
        basis,
        representatives,
    })
}

pub fn eigenspace_dimension(d: &DistanceMatrix) -> Result<usize> {
    Ok(nondegenerate(d)?.eigenspace_dimension())
}

/// Membership tolerance used when the caller gives none: `1e-9 * max(1, ||eta||_inf)`.
pub fn default_membership_tol(eta: &[f64]) -> f64 {
    1e-9 * norm_inf(eta).max(1.0)
}

/// Whether `eta` lies in the minimum eigenspace: with `xi = (-sum eta, eta)`,
/// `xi` vanishes on `X_0` and on the base point, and sums to zero on every coterie.
pub fn eigenspace_membership(d: &DistanceMatrix, eta: &[f64], tol: f64) -> Result<bool> {
    let c = nondegenerate(d)?;
    let n = d.n_points() - 1;
    if eta.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: eta.len(),
        });
    }
    let xi0 = -eta.iter().sum::<f64>();
    let xi = |i: usize| if i == 0 { xi0 } else { eta[i - 1] };

    if xi0.abs() > tol || c.residual.iter().any(|&i| xi(i).abs() > tol) {
        return Ok(false);
    }
    Ok(c.coteries
        .iter()
        .all(|b| b.iter().map(|&i| xi(i)).sum::<f64>().abs() <= tol))
}

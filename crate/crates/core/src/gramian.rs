//! The p-Gramian of a labeled metric space, its spectrum, positive
//! semidefiniteness, and the induced Hilbert-space embedding.

use crate::error::{Error, Result};
use crate::linalg::{sym_eigen, Spectrum, SymMatrix, JACOBI_TOL};
use crate::metric::{pow0, DistanceMatrix};

/// Default eigenvalue cluster tolerance, scaled by `max(1, ||A||_inf)`.
pub const CLUSTER_TOL: f64 = 1e-8;

/// Negative eigenvalues down to `-EMBED_CLAMP_TOL * ||A||_inf` are treated as zero.
pub const EMBED_CLAMP_TOL: f64 = 1e-10;

/// `g_ij = (d(x_i,x_0)^p + d(x_j,x_0)^p - d(x_i,x_j)^p) / 2` for `1 <= i, j <= n`,
/// with base point `x_0` = index 0 and `0^0 = 0`.
pub fn build_gramian(d: &DistanceMatrix, p: f64) -> Result<SymMatrix> {
    if !(p >= 0.0) || !p.is_finite() {
        return Err(Error::InvalidExponent(p));
    }
    let n = d.n_points();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    let base: Vec<f64> = (1..n).map(|i| pow0(d.get(i, 0), p)).collect();
    Ok(SymMatrix::from_fn(n - 1, |i, j| {
        let dij = if i == j {
            0.0
        } else {
            pow0(d.get(i + 1, j + 1), p)
        };
        0.5 * (base[i] + base[j] - dij)
    }))
}

/// Smallest eigenvalue and an orthonormal basis of every eigenvector whose
/// eigenvalue lies within `cluster_tol * max(1, ||A||_inf)` of it.
#[derive(Debug, Clone)]
pub struct MinEigenpair {
    pub lambda_min: f64,
    pub eigenspace: Vec<Vec<f64>>,
    pub spectrum: Spectrum,
}

impl MinEigenpair {
    pub fn multiplicity(&self) -> usize {
        self.eigenspace.len()
    }
}

pub fn min_eigenpair(a: &SymMatrix, cluster_tol: f64) -> Result<MinEigenpair> {
    let spectrum = sym_eigen(a, JACOBI_TOL)?;
    Ok(min_eigenpair_of(a, spectrum, cluster_tol))
}

/// Cluster extraction on an already computed spectrum.
pub fn min_eigenpair_of(a: &SymMatrix, spectrum: Spectrum, cluster_tol: f64) -> MinEigenpair {
    let lambda_min = spectrum.min_eigenvalue();
    let width = cluster_tol * a.inf_norm().max(1.0);
    let eigenspace = spectrum
        .eigenvalues
        .iter()
        .zip(&spectrum.eigenvectors)
        .take_while(|(l, _)| **l - lambda_min <= width)
        .map(|(_, v)| v.clone())
        .collect();
    MinEigenpair {
        lambda_min,
        eigenspace,
        spectrum,
    }
}

/// `lambda_min(A) >= -tol * max(1, ||A||_inf)`
pub fn psd_check(a: &SymMatrix, tol: f64) -> Result<bool> {
    if a.dim() == 0 {
        return Ok(true);
    }
    let s = sym_eigen(a, JACOBI_TOL)?;
    Ok(s.min_eigenvalue() >= -tol * a.inf_norm().max(1.0))
}

/// Coordinates for `x_0..x_n` realizing `(X, d^{p/2})` in `R^n`: `x_0` at the
/// origin and `x_i` at row `i` of `V Lambda^{1/2}` from `G_p = V Lambda V^T`.
pub fn hilbert_embedding(d: &DistanceMatrix, p: f64) -> Result<Vec<Vec<f64>>> {
    let g = build_gramian(d, p)?;
    let n = g.dim();
    let s = sym_eigen(&g, JACOBI_TOL)?;
    let clamp = EMBED_CLAMP_TOL * g.inf_norm();
    let lambda_min = s.min_eigenvalue();
    if lambda_min < -clamp {
        return Err(Error::NotPsd {
            min_eigenvalue: lambda_min,
        });
    }
    let scale: Vec<f64> = s.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect();

    let mut coords = vec![vec![0.0; n]];
    for i in 0..n {
        coords.push((0..n).map(|k| s.eigenvectors[k][i] * scale[k]).collect());
    }
    Ok(coords)
}

pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

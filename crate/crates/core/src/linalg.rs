//! Dense symmetric matrices and a cyclic Jacobi eigensolver.

use crate::error::{Error, Result};

/// Default convergence tolerance for [`sym_eigen`], relative to the Frobenius norm.
pub const JACOBI_TOL: f64 = 1e-12;

pub const MAX_SWEEPS: usize = 100;

/// Dense symmetric matrix, row-major. `get(i, j) == get(j, i)` holds exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Builds from square rows, replacing each off-diagonal pair by its average.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
        }
        Ok(Self::from_fn(n, |i, j| {
            if i == j {
                rows[i][i]
            } else {
                0.5 * (rows[i][j] + rows[j][i])
            }
        }))
    }

    /// Evaluates `f` on the upper triangle and mirrors it.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                data[i * dim + j] = v;
                data[j * dim + i] = v;
            }
        }
        Self { dim, data }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data
            .chunks(self.dim.max(1))
            .map(<[f64]>::to_vec)
            .collect()
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim).map(|i| dot(self.row(i), x)).collect()
    }

    /// `<Ax, x>`
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        dot(&self.matvec(x), x)
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.dim)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// `max_i |(Ax - lambda x)_i|`
    pub fn residual_inf(&self, lambda: f64, x: &[f64]) -> f64 {
        self.matvec(x)
            .iter()
            .zip(x)
            .map(|(ax, xi)| (ax - lambda * xi).abs())
            .fold(0.0, f64::max)
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn norm_inf(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Eigendecomposition `A = V diag(eigenvalues) V^T`, eigenvalues ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[k]` pairs with `eigenvalues[k]`; the set is orthonormal.
    pub eigenvectors: Vec<Vec<f64>>,
    /// Upper bound on `||A v_k - lambda_k v_k||_inf` over all pairs.
    pub residual_bound: f64,
    pub sweeps: usize,
}

impl Spectrum {
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(f64::NAN)
    }

    /// Rebuilds `V diag(lambda) V^T`.
    pub fn reconstruct(&self) -> SymMatrix {
        let n = self.eigenvalues.len();
        SymMatrix::from_fn(n, |i, j| {
            self.eigenvalues
                .iter()
                .zip(&self.eigenvectors)
                .map(|(l, v)| l * v[i] * v[j])
                .sum()
        })
    }
}

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is at most
/// `tol * ||A||_F`, or [`MAX_SWEEPS`] sweeps have run.
pub fn sym_eigen(a: &SymMatrix, tol: f64) -> Result<Spectrum> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let n = a.dim;
    let mut m = a.data.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let target = tol * a.frobenius();

    let mut sweeps = 0;
    let mut off = off_norm(&m, n);
    while off > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, n, p, q);
            }
        }
        sweeps += 1;
        off = off_norm(&m, n);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].total_cmp(&m[j * n + j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| m[k * n + k]).collect();
    let eigenvectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&k| (0..n).map(|r| v[r * n + k]).collect())
        .collect();

    let measured = eigenvalues
        .iter()
        .zip(&eigenvectors)
        .map(|(&l, x)| a.residual_inf(l, x))
        .fold(0.0, f64::max);
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
        residual_bound: measured.max(off),
        sweeps,
    })
}

fn off_norm(m: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[i * n + j] * m[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// One rotation in the `(p, q)` plane zeroing `m[p][q]`.
fn rotate(m: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = m[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = m[p * n + p];
    let aqq = m[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.is_infinite() {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + theta.hypot(1.0))
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;

    m[p * n + p] = app - t * apq;
    m[q * n + q] = aqq + t * apq;
    m[p * n + q] = 0.0;
    m[q * n + p] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = m[r * n + p];
        let arq = m[r * n + q];
        let np = c * arp - s * arq;
        let nq = s * arp + c * arq;
        m[r * n + p] = np;
        m[p * n + r] = np;
        m[r * n + q] = nq;
        m[q * n + r] = nq;
    }
    for r in 0..n {
        let vrp = v[r * n + p];
        let vrq = v[r * n + q];
        v[r * n + p] = c * vrp - s * vrq;
        v[r * n + q] = s * vrp + c * vrq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_closed_form() {
        // eigenvalues of [[a, b], [b, a]] are a - b and a + b
        let a = SymMatrix::from_rows(&[vec![1.0, 0.5], vec![0.5, 1.0]]).unwrap();
        let s = sym_eigen(&a, JACOBI_TOL).unwrap();
        assert!((s.eigenvalues[0] - 0.5).abs() < 1e-15);
        assert!((s.eigenvalues[1] - 1.5).abs() < 1e-15);
        let v = &s.eigenvectors[0];
        assert!((v[0] + v[1]).abs() < 1e-15);
    }

    #[test]
    fn diagonal_input_needs_no_sweeps() {
        let a = SymMatrix::from_fn(3, |i, j| if i == j { [3.0, 1.0, 2.0][i] } else { 0.0 });
        let s = sym_eigen(&a, JACOBI_TOL).unwrap();
        assert_eq!(s.sweeps, 0);
        assert_eq!(s.eigenvalues, vec![1.0, 2.0, 3.0]);
        assert_eq!(s.eigenvectors[0], vec![0.0, 1.0, 0.0]);
        assert_eq!(s.eigenvectors[1], vec![0.0, 0.0, 1.0]);
        assert_eq!(s.eigenvectors[2], vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn zero_and_empty_matrices() {
        let z = SymMatrix::from_fn(4, |_, _| 0.0);
        assert_eq!(sym_eigen(&z, JACOBI_TOL).unwrap().eigenvalues, vec![0.0; 4]);
        let e = SymMatrix::from_fn(0, |_, _| 0.0);
        assert!(sym_eigen(&e, JACOBI_TOL).unwrap().eigenvalues.is_empty());
    }

    #[test]
    fn constructor_symmetrizes() {
        let a = SymMatrix::from_rows(&[vec![0.0, 1.0], vec![3.0, 0.0]]).unwrap();
        assert_eq!(a.get(0, 1), 2.0);
        assert_eq!(a.get(1, 0), 2.0);
    }

    #[test]
    fn rejects_nonpositive_tolerance() {
        assert!(sym_eigen(&SymMatrix::identity(2), 0.0).is_err());
    }

    #[test]
    fn sweep_cap_reports_failure() {
        // a tolerance below what rounding allows cannot be met
        let a = SymMatrix::from_fn(6, |i, j| 1.0 / (1.0 + i as f64 + j as f64));
        match sym_eigen(&a, 1e-300) {
            Err(Error::NoConvergence { sweeps, .. }) => assert_eq!(sweeps, MAX_SWEEPS),
            Ok(s) => assert!(s.residual_bound < 1e-12),
            Err(e) => panic!("{e}"),
        }
    }
}

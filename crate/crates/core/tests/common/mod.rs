//! Shared fixtures, the random ultrametric corpus and independent oracles.
#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use ultragram::generate::random_ultrametric;
use ultragram::{
    eigenspace_basis, reorder_nondegenerate, DistanceMatrix, SNormalized, SymMatrix, WeightVector,
};

pub const SEVEN_POINT_CSV: &str = include_str!(concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/fixtures/seven_point.csv"
));

pub fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// The seven-point ultrametric with coteries {x1,x2}, {x3,x4}, {x5,x6}.
pub fn seven_point() -> DistanceMatrix {
    ultragram::io::parse_bytes(SEVEN_POINT_CSV.as_bytes(), ultragram::io::Format::Csv).unwrap()
}

pub fn upper(n: usize, values: &[f64]) -> DistanceMatrix {
    DistanceMatrix::from_upper(n, values).unwrap()
}

pub fn equilateral(n: usize, a: f64) -> DistanceMatrix {
    upper(n, &vec![a; n * (n - 1) / 2])
}

/// d01 = 1, d02 = d12 = 2: the only coterie is {x0, x1}.
pub fn degenerate_three() -> DistanceMatrix {
    upper(3, &[1.0, 2.0, 2.0])
}

pub const EXPONENTS: [f64; 5] = [0.5, 1.0, 2.0, 5.0, 10.0];

/// Level values: `alpha_1 ~ U[0.5, 2]`, successive ratios `~ U[1.05, 1.3]`.
pub fn random_levels<R: Rng>(rng: &mut R, ell: usize) -> Vec<f64> {
    let mut levels = vec![rng.gen_range(0.5..2.0)];
    for _ in 1..ell {
        let next = levels.last().unwrap() * rng.gen_range(1.05..1.3);
        levels.push(next);
    }
    levels
}

/// `count` random nondegenerate ultrametrics on 3..=`max_points` points with at
/// most six levels, relabeled when the generator produced a degenerate labeling.
pub fn corpus(count: usize, max_points: usize, seed: u64) -> Vec<DistanceMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(3..=max_points);
            let ell = rng.gen_range(1..=6);
            let levels = random_levels(&mut rng, ell);
            let d = random_ultrametric(n, &levels, &mut rng).unwrap();
            reorder_nondegenerate(&d).unwrap().0
        })
        .collect()
}

/// Uniform point on the sphere projected onto `sum = 0`.
pub fn mean_zero<R: Rng>(rng: &mut R, len: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..len).map(|_| StandardNormal.sample(rng)).collect();
    let mean = v.iter().sum::<f64>() / len as f64;
    v.iter_mut().for_each(|x| *x -= mean);
    v
}

/// Mean-zero vector supported on a random subset of at least two indices.
pub fn sparse_mean_zero<R: Rng>(rng: &mut R, len: usize) -> Vec<f64> {
    loop {
        let mask: Vec<bool> = (0..len).map(|_| rng.gen_bool(0.4)).collect();
        let support: Vec<usize> = (0..len).filter(|&i| mask[i]).collect();
        if support.len() < 2 {
            continue;
        }
        let vals = mean_zero(rng, support.len());
        let mut v = vec![0.0; len];
        for (k, &i) in support.iter().enumerate() {
            v[i] = vals[k];
        }
        return v;
    }
}

pub fn random_s_normalized<R: Rng>(rng: &mut R, n_points: usize) -> SNormalized {
    loop {
        let xi = if rng.gen_bool(0.5) {
            mean_zero(rng, n_points)
        } else {
            sparse_mean_zero(rng, n_points)
        };
        let w = WeightVector::from_signed(&xi).unwrap();
        if let Ok(s) = SNormalized::normalize(&w) {
            return s;
        }
    }
}

/// A random combination of eigenspace basis vectors as an S-normalized weight vector.
pub fn balanced<R: Rng>(rng: &mut R, d: &DistanceMatrix) -> SNormalized {
    let basis = eigenspace_basis(d, 1.0).unwrap().basis;
    let mut eta = vec![0.0; d.n_points() - 1];
    for v in &basis {
        let c: f64 = rng.gen_range(-2.0..2.0);
        eta.iter_mut().zip(v).for_each(|(a, b)| *a += c * b);
    }
    SNormalized::from_eta(&eta).unwrap()
}

/// Eigenvalues from nalgebra's symmetric solver, ascending.
pub fn oracle_eigenvalues(a: &SymMatrix) -> Vec<f64> {
    let n = a.dim();
    let m = DMatrix::from_fn(n, n, |i, j| a.get(i, j));
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Gramian entries straight from the definition, evaluated with `powf`.
pub fn oracle_gramian(d: &DistanceMatrix, p: f64) -> Vec<Vec<f64>> {
    let n = d.n_points() - 1;
    let pw = |x: f64| if x == 0.0 { 0.0 } else { x.powf(p) };
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| 0.5 * (pw(d.get(i, 0)) + pw(d.get(j, 0)) - pw(d.get(i, j))))
                .collect()
        })
        .collect()
}

/// Eigenvalues of `[[a, b], [b, c]]`.
pub fn eig2(a: f64, b: f64, c: f64) -> (f64, f64) {
    let mid = 0.5 * (a + c);
    let rad = (0.25 * (a - c) * (a - c) + b * b).sqrt();
    (mid - rad, mid + rad)
}

/// `sum_{i,j} d^p xi_i xi_j` by plain double loop.
pub fn oracle_quadratic(d: &DistanceMatrix, p: f64, xi: &[f64]) -> f64 {
    let n = d.n_points();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                q += d.get(i, j).powf(p) * xi[i] * xi[j];
            }
        }
    }
    q
}

pub fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

// Random ultrametrics from seeded hierarchies: closed form against the
// Jacobi eigensolver, and cluster size against the dimension formula.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ultragram::gramian::CLUSTER_TOL;
use ultragram::{
    build_gramian, closed_form_min_eigenvalue, eigenspace_dimension, generate_random_ultrametric,
    min_eigenpair, reorder_nondegenerate,
};

pub fn run_example() -> ultragram::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    for seed in 0..25 {
        let n = rng.gen_range(3..=20);
        let levels: Vec<f64> = (1..=rng.gen_range(1..=5))
            .map(|k| 1.0 + 0.2 * k as f64)
            .collect();
        let raw = generate_random_ultrametric(n, &levels, seed)?;
        let (d, _) = reorder_nondegenerate(&raw)?;
        let a1 = d.min_nonzero().unwrap_or(1.0);
        let dim = eigenspace_dimension(&d)?;
        for p in [0.5, 2.0, 5.0] {
            let m = min_eigenpair(&build_gramian(&d, p)?, CLUSTER_TOL)?;
            let closed = closed_form_min_eigenvalue(&d, p)?;
            worst = worst.max((m.lambda_min - closed).abs() / a1.powf(p));
            assert_eq!(m.multiplicity(), dim);
        }
        println!(
            "seed {seed:>2}: {n:>2} points, {} levels, eigenspace dimension {dim}",
            levels.len()
        );
    }
    println!("largest |numeric - closed| / alpha_1^p: {worst:.2e}");
    Ok(())
}

fn main() -> ultragram::Result<()> {
    run_example()
}

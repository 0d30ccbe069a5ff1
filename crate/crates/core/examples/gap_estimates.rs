// Sampling estimates of both negative type gaps and the resulting
// extension of strict negative type past p.

use ultragram::gramian::CLUSTER_TOL;
use ultragram::{
    build_gramian, epsilon_extension, estimate_gap_classic, estimate_gap_s, min_eigenpair,
    DistanceMatrix, Extension, MetricSummary,
};

pub fn run_example() -> ultragram::Result<()> {
    let d = DistanceMatrix::from_upper(5, &[2.0, 2.0, 5.0, 5.0, 1.0, 5.0, 5.0, 5.0, 5.0, 3.0])?;
    let summary = MetricSummary::of(&d)?;
    println!(
        "diameter {}, aspect ratio {}, gamma(n) {}",
        summary.diameter, summary.aspect_ratio, summary.gamma_n
    );
    for p in [0.5, 1.0, 2.0] {
        let lm = min_eigenpair(&build_gramian(&d, p)?, CLUSTER_TOL)?.lambda_min;
        let (gap_s, w) = estimate_gap_s(&d, p, 5_000, 1)?;
        let gap = estimate_gap_classic(&d, p, 5_000, 1)?;
        let eps = match epsilon_extension(gap, &summary, p)? {
            Extension::Finite(e) => format!("{e:.4}"),
            Extension::Unbounded => "unbounded".into(),
        };
        println!("p = {p}: lambda_min {lm:.6}, S-gap {gap_s:.6}, l1 gap {gap:.6}, epsilon {eps}");
        println!("  minimizing weights s = {:?}", w.s());
        println!("                     t = {:?}", w.t());
    }
    Ok(())
}

fn main() -> ultragram::Result<()> {
    run_example()
}

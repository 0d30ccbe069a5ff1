// Coordinates realizing `(X, d^(p/2))` from the spectral factorization of `G_p`.

use ultragram::gramian::euclidean;
use ultragram::{generate_random_ultrametric, hilbert_embedding, DistanceMatrix, Error};

pub fn run_example() -> ultragram::Result<()> {
    let d = generate_random_ultrametric(8, &[1.0, 1.5, 2.5], 3)?;
    for p in [1.0, 2.0, 6.0] {
        let pts = hilbert_embedding(&d, p)?;
        let worst = d
            .off_diagonal()
            .map(|(i, j, dij)| {
                (euclidean(&pts[i], &pts[j]) - dij.powf(p / 2.0)).abs() / dij.powf(p / 2.0)
            })
            .fold(0.0, f64::max);
        println!(
            "p = {p}: {} points in R^{}, worst relative distortion {worst:.1e}",
            pts.len(),
            pts[0].len()
        );
    }

    // three collinear points: 1, 1, 2 apart
    let line = DistanceMatrix::from_upper(3, &[1.0, 2.0, 1.0])?;
    for p in [1.0, 2.0, 2.5] {
        match hilbert_embedding(&line, p) {
            Ok(pts) => println!("collinear, p = {p}: {pts:?}"),
            Err(Error::NotPsd { min_eigenvalue }) => {
                println!("collinear, p = {p}: no embedding, lambda_min = {min_eigenvalue:.4}")
            }
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

fn main() -> ultragram::Result<()> {
    run_example()
}

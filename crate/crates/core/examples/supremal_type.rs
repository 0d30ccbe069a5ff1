// Bisection for the largest p at which the Gramian stays positive semidefinite.

use ultragram::{estimate_supremal_negtype, generate_random_ultrametric, DistanceMatrix};

pub fn run_example() -> ultragram::Result<()> {
    let spaces = [
        (
            "collinear 1,1,2",
            DistanceMatrix::from_upper(3, &[1.0, 2.0, 1.0])?,
        ),
        (
            "square with diagonals",
            DistanceMatrix::from_upper(4, &[1.0, 2f64.sqrt(), 1.0, 1.0, 2f64.sqrt(), 1.0])?,
        ),
        (
            "K_{2,3} path metric",
            DistanceMatrix::from_upper(5, &[2.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 2.0, 2.0, 2.0])?,
        ),
        (
            "random ultrametric",
            generate_random_ultrametric(10, &[1.0, 2.0, 3.0], 8)?,
        ),
    ];
    for (name, d) in &spaces {
        let s = estimate_supremal_negtype(d, 16.0, 1e-9)?;
        println!(
            "{name:<24} {}",
            serde_json::to_string(&s).expect("serializable")
        );
    }
    Ok(())
}

fn main() -> ultragram::Result<()> {
    run_example()
}

// Membership in the minimum eigenspace decided structurally, then confirmed
// against the Gramian.

use ultragram::ultrametric::default_membership_tol;
use ultragram::{build_gramian, eigenspace_basis, eigenspace_membership, DistanceMatrix};

pub fn run_example() -> ultragram::Result<()> {
    // x0 shares a coterie with x1 and x2; x3, x4 form a second coterie
    let d = DistanceMatrix::from_upper(5, &[1.0, 1.0, 3.0, 3.0, 1.0, 3.0, 3.0, 3.0, 3.0, 1.0])?;
    let e = eigenspace_basis(&d, 1.0)?;
    println!("lambda_min = {}, dimension {}", e.lambda_min, e.dimension);
    println!("basis {:?}", e.basis);

    let g = build_gramian(&d, 1.0)?;
    let candidates = [
        vec![1.0, -1.0, 0.0, 0.0],
        vec![0.0, 0.0, 2.0, -2.0],
        vec![1.0, 0.0, 0.0, 0.0],
        vec![1.0, 1.0, -1.0, -1.0],
    ];
    for eta in &candidates {
        let inside = eigenspace_membership(&d, eta, default_membership_tol(eta))?;
        let residual = g.residual_inf(e.lambda_min, eta);
        println!("{eta:?}: member {inside}, |G eta - lambda eta| = {residual:.3}");
    }
    Ok(())
}

fn main() -> ultragram::Result<()> {
    run_example()
}

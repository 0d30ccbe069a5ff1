// A labeling whose base point sits in the only coterie, of size two, breaks
// the closed form; swapping the base point restores it.

use ultragram::gramian::CLUSTER_TOL;
use ultragram::{
    build_gramian, closed_form_min_eigenvalue, is_degenerate, min_eigenpair, reorder_nondegenerate,
    DistanceMatrix, Error,
};

pub fn run_example() -> ultragram::Result<()> {
    let d = DistanceMatrix::from_upper(3, &[1.0, 2.0, 2.0])?;
    let g = build_gramian(&d, 1.0)?;
    println!("degenerate: {}", is_degenerate(&d)?);
    println!("G_1 = {:?}", g.rows());
    println!(
        "lambda_min = {:.12} ((3 - sqrt 2)/2 = {:.12})",
        min_eigenpair(&g, CLUSTER_TOL)?.lambda_min,
        (3.0 - 2f64.sqrt()) / 2.0
    );
    if let Err(Error::Degenerate) = closed_form_min_eigenvalue(&d, 1.0) {
        println!("closed form refused");
    }

    let (r, perm) = reorder_nondegenerate(&d)?;
    let g = build_gramian(&r, 1.0)?;
    println!("relabeled by {perm:?}: G_1 = {:?}", g.rows());
    println!(
        "lambda_min = {}, closed form {}",
        min_eigenpair(&g, CLUSTER_TOL)?.lambda_min,
        closed_form_min_eigenvalue(&r, 1.0)?
    );
    Ok(())
}

fn main() -> ultragram::Result<()> {
    run_example()
}

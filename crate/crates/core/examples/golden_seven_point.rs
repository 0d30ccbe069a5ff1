// The seven-point ultrametric: numeric and closed-form minimum eigenvalue
// of `G_p` across exponents, and the coterie basis of its eigenspace.

use ultragram::gramian::CLUSTER_TOL;
use ultragram::{
    build_gramian, closed_form_min_eigenvalue, eigenspace_basis, find_coteries, min_eigenpair,
    DistanceMatrix,
};

pub fn seven_point() -> ultragram::Result<DistanceMatrix> {
    let rows = vec![
        vec![0.0, 3.0, 3.0, 4.0, 4.0, 4.0, 4.0],
        vec![3.0, 0.0, 1.0, 4.0, 4.0, 4.0, 4.0],
        vec![3.0, 1.0, 0.0, 4.0, 4.0, 4.0, 4.0],
        vec![4.0, 4.0, 4.0, 0.0, 1.0, 2.0, 2.0],
        vec![4.0, 4.0, 4.0, 1.0, 0.0, 2.0, 2.0],
        vec![4.0, 4.0, 4.0, 2.0, 2.0, 0.0, 1.0],
        vec![4.0, 4.0, 4.0, 2.0, 2.0, 1.0, 0.0],
    ];
    DistanceMatrix::from_rows(rows, None)
}

pub fn run_example() -> ultragram::Result<()> {
    let d = seven_point()?;
    let c = find_coteries(&d)?;
    println!("coteries: {:?}", c.labeled(d.labels()));
    println!(
        "{:>6} {:>12} {:>20} {:>5}",
        "p", "closed form", "numeric", "mult"
    );
    for p in [0.5, 1.0, 2.0, 5.0, 10.0] {
        let g = build_gramian(&d, p)?;
        let m = min_eigenpair(&g, CLUSTER_TOL)?;
        let closed = closed_form_min_eigenvalue(&d, p)?;
        println!(
            "{p:>6} {closed:>12} {:>20.15} {:>5}",
            m.lambda_min,
            m.multiplicity()
        );
    }
    let e = eigenspace_basis(&d, 1.0)?;
    for v in &e.basis {
        println!("basis vector {v:?}");
    }
    Ok(())
}

fn main() -> ultragram::Result<()> {
    run_example()
}

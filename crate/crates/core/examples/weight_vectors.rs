// Weight vectors and the exponential-sum expansion of gamma(p).

use ultragram::{
    check_flat_condition, extract_coefficients, gamma_value, DistanceMatrix, SNormalized,
    WeightVector,
};

fn show(d: &DistanceMatrix, name: &str, w: &SNormalized) -> ultragram::Result<()> {
    let e = extract_coefficients(d, w)?;
    let f = check_flat_condition(d, w, 1e-10)?;
    println!("{name}");
    println!("  c_k = {:?}", e.coefficients);
    println!("  tails = {:?}", e.tail_sums());
    println!("  sum c_k = {}, sum s^2 + t^2 = {}", e.total(), w.norm_sq());
    for p in [0.5, 1.0, 3.0] {
        println!(
            "  gamma({p}) = {:.6} (expansion {:.6})",
            gamma_value(d, p, w)?,
            e.value_at(p)
        );
    }
    println!("  flat {}, balanced support {}", f.flat, f.support_ok);
    Ok(())
}

pub fn run_example() -> ultragram::Result<()> {
    let d = DistanceMatrix::from_upper(
        7,
        &[
            3.0, 3.0, 4.0, 4.0, 4.0, 4.0, 1.0, 4.0, 4.0, 4.0, 4.0, 4.0, 4.0, 4.0, 4.0, 1.0, 2.0,
            2.0, 2.0, 2.0, 1.0,
        ],
    )?;
    let h = 0.5f64.sqrt();
    let mut s = vec![0.0; 7];
    let mut t = vec![0.0; 7];
    s[1] = h;
    t[2] = h;
    show(
        &d,
        "pair inside a coterie",
        &SNormalized::new(WeightVector::new(s.clone(), t)?)?,
    )?;

    let mut t = vec![0.0; 7];
    t[3] = h;
    show(
        &d,
        "pair across coteries",
        &SNormalized::new(WeightVector::new(s, t)?)?,
    )?;

    let xi = [0.4, -0.1, 0.3, -0.5, 0.2, -0.6, 0.3];
    show(
        &d,
        "random signed vector",
        &SNormalized::normalize(&WeightVector::from_signed(&xi)?)?,
    )?;
    Ok(())
}

fn main() -> ultragram::Result<()> {
    run_example()
}

//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ultragram::gramian::{euclidean, CLUSTER_TOL};
use ultragram::io::load_path;
use ultragram::*;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: f64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit, || {
        format!("took {:.2}s, limit {limit}s", elapsed.as_secs_f64())
    })
}

fn golden_seven_point() -> Outcome {
    let start = Instant::now();
    let d = seven_point();
    let basis = [[1usize, 0], [3, 2], [5, 4]].map(|[plus, minus]| {
        let mut v = vec![0.0; 6];
        v[plus] = 1.0;
        v[minus] = -1.0;
        v
    });
    let mut worst: f64 = 0.0;
    for p in EXPONENTS {
        let g = build_gramian(&d, p).map_err(|e| e.to_string())?;
        let m = min_eigenpair(&g, CLUSTER_TOL).map_err(|e| e.to_string())?;
        let closed = closed_form_min_eigenvalue(&d, p).map_err(|e| e.to_string())?;
        ensure(closed == 0.5, || format!("p={p}: closed form {closed}"))?;
        ensure((m.lambda_min - 0.5).abs() <= 1e-10, || {
            format!("p={p}: numeric {}", m.lambda_min)
        })?;
        ensure(m.multiplicity() == 3, || {
            format!("p={p}: cluster dimension {}", m.multiplicity())
        })?;
        for v in &basis {
            let r = g.residual_inf(0.5, v);
            worst = worst.max(r);
            ensure(r <= 1e-10, || format!("p={p}: basis residual {r:e}"))?;
        }
    }
    within(start.elapsed(), 1.0)?;
    Ok(format!(
        "worst basis residual {worst:.1e}, {:.0?}",
        start.elapsed()
    ))
}

fn closed_form_at_scale(spaces: &[DistanceMatrix]) -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for (k, d) in spaces.iter().enumerate() {
        let a1 = d.min_nonzero().unwrap();
        for p in EXPONENTS {
            let g = build_gramian(d, p).map_err(|e| e.to_string())?;
            let lm = min_eigenpair(&g, CLUSTER_TOL)
                .map_err(|e| e.to_string())?
                .lambda_min;
            let err = (lm - a1.powf(p) / 2.0).abs() / a1.powf(p);
            worst = worst.max(err);
            ensure(err <= 1e-9, || {
                format!("space {k}, p={p}: relative error {err:e}")
            })?;
        }
    }
    within(start.elapsed(), 30.0)?;
    Ok(format!(
        "{} spaces, worst error {worst:.1e} alpha_1^p, {:.2?}",
        spaces.len(),
        start.elapsed()
    ))
}

fn dimension_formula(spaces: &[DistanceMatrix]) -> Outcome {
    let mut with_base = 0;
    for (k, d) in spaces.iter().enumerate() {
        let c = find_coteries(d).map_err(|e| e.to_string())?;
        let total: usize = c.coteries.iter().map(Vec::len).sum();
        let base_inside = c.coteries.iter().any(|b| b.contains(&0));
        with_base += base_inside as usize;
        let expected = total - c.r() - base_inside as usize;
        for p in EXPONENTS {
            let g = build_gramian(d, p).map_err(|e| e.to_string())?;
            let got = min_eigenpair(&g, CLUSTER_TOL)
                .map_err(|e| e.to_string())?
                .multiplicity();
            ensure(got == expected, || {
                format!("space {k}, p={p}: multiplicity {got}, formula {expected}")
            })?;
        }
    }
    Ok(format!(
        "{} spaces, {with_base} with the base point in a coterie",
        spaces.len()
    ))
}

fn weight_vector_bounds(spaces: &[DistanceMatrix]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut min_margin = f64::INFINITY;
    for k in 0..1000 {
        let d = &spaces[k % spaces.len()];
        let w = random_s_normalized(&mut rng, d.n_points());
        let e = extract_coefficients(d, &w).map_err(|e| e.to_string())?;
        for (i, tail) in e.tail_sums().iter().enumerate() {
            ensure(*tail >= -1e-12 * e.abs_total(), || {
                format!("vector {k}: tail {i} is {tail:e}")
            })?;
        }
        let target = w.norm_sq();
        ensure(rel_close(e.total(), target, 1e-12), || {
            format!("vector {k}: sum c = {} vs {target}", e.total())
        })?;
        let a1 = d.min_nonzero().unwrap();
        for p in [0.5, 1.0, 2.0, 5.0] {
            let g = gamma_value(d, p, &w).map_err(|e| e.to_string())?;
            let a1p = a1.powf(p);
            min_margin = min_margin.min((g - a1p) / a1p);
            ensure(g >= a1p - 1e-10 * a1p, || {
                format!("vector {k}, p={p}: gamma {g} below {a1p}")
            })?;
        }
    }
    Ok(format!(
        "1000 vectors, least (gamma - alpha_1^p)/alpha_1^p = {min_margin:.2e}"
    ))
}

fn flat_equivalence(spaces: &[DistanceMatrix]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let tol = 1e-10;
    let mut disagree = 0;
    let mut flat_random = 0;
    for k in 0..1000 {
        let d = &spaces[k % spaces.len()];
        let f = check_flat_condition(d, &random_s_normalized(&mut rng, d.n_points()), tol)
            .map_err(|e| e.to_string())?;
        disagree += (f.flat != f.support_ok) as usize;
        flat_random += f.flat as usize;
    }
    for k in 0..100 {
        let d = &spaces[k % spaces.len()];
        let f = check_flat_condition(d, &balanced(&mut rng, d), tol).map_err(|e| e.to_string())?;
        ensure(f.support_ok, || format!("balanced witness {k} rejected"))?;
        disagree += (f.flat != f.support_ok) as usize;
    }
    let mut built = 0;
    for d in spaces.iter().cycle() {
        if built == 100 {
            break;
        }
        let c = find_coteries(d).map_err(|e| e.to_string())?;
        let b = &c.coteries[rng.gen_range(0..c.r())];
        let Some(outside) = (0..d.n_points()).find(|i| !b.contains(i)) else {
            continue;
        };
        let mut s = vec![0.0; d.n_points()];
        let mut t = vec![0.0; d.n_points()];
        s[b[rng.gen_range(0..b.len())]] = 1.0;
        t[outside] = 1.0;
        let w = WeightVector::new(s, t)
            .and_then(|w| SNormalized::normalize(&w))
            .map_err(|e| e.to_string())?;
        let f = check_flat_condition(d, &w, tol).map_err(|e| e.to_string())?;
        ensure(!f.support_ok, || "unbalanced witness accepted".into())?;
        disagree += (f.flat != f.support_ok) as usize;
        built += 1;
    }
    ensure(disagree == 0, || format!("{disagree} disagreements"))?;
    Ok(format!(
        "1200 vectors, 0 disagreements ({flat_random} random vectors flat)"
    ))
}

fn gap_witness() -> Outcome {
    let start = Instant::now();
    let d = seven_point();
    let (est, _) = estimate_gap_s(&d, 1.0, 10_000, 0).map_err(|e| e.to_string())?;
    ensure((0.5..=0.5001).contains(&est), || format!("estimate {est}"))?;
    let g = build_gramian(&d, 1.0).map_err(|e| e.to_string())?;
    let m = min_eigenpair(&g, CLUSTER_TOL).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for v in &m.eigenspace {
        let w = SNormalized::from_eta(v).map_err(|e| e.to_string())?;
        let half = 0.5 * gamma_value(&d, 1.0, &w).map_err(|e| e.to_string())?;
        worst = worst.max((half - 0.5).abs());
    }
    ensure(worst <= 1e-8, || format!("witness off by {worst:e}"))?;
    within(start.elapsed(), 10.0)?;
    Ok(format!(
        "estimate {est}, witness error {worst:.1e}, {:.2?}",
        start.elapsed()
    ))
}

fn embedding_isometry() -> Outcome {
    let spaces = corpus(50, 30, 7);
    let mut worst: f64 = 0.0;
    for (k, d) in spaces.iter().enumerate() {
        for p in [1.0, 2.0] {
            let pts = hilbert_embedding(d, p).map_err(|e| e.to_string())?;
            for (i, j, dij) in d.off_diagonal() {
                let want = dij.powf(p / 2.0);
                let err = (euclidean(&pts[i], &pts[j]) - want).abs() / want;
                worst = worst.max(err);
                ensure(err <= 1e-8, || {
                    format!("space {k}, p={p}, pair ({i},{j}): error {err:e}")
                })?;
            }
        }
    }
    Ok(format!("50 spaces, worst relative error {worst:.1e}"))
}

fn supremal_type(spaces: &[DistanceMatrix]) -> Outcome {
    let collinear = load_path(fixture("collinear.csv").as_ref()).map_err(|e| e.to_string())?;
    let found = match estimate_supremal_negtype(&collinear, 8.0, 1e-9).map_err(|e| e.to_string())? {
        SupremalType::Finite(p) => p,
        other => return Err(format!("collinear space gave {other:?}")),
    };
    ensure((found - 2.0).abs() <= 1e-6, || {
        format!("collinear space gave {found}")
    })?;
    for (k, d) in spaces.iter().enumerate() {
        let s = estimate_supremal_negtype(d, 32.0, 1e-6).map_err(|e| e.to_string())?;
        ensure(s == SupremalType::Infinite, || {
            format!("space {k} gave {s:?}")
        })?;
    }
    Ok(format!(
        "collinear {found}, {} ultrametrics infinite",
        spaces.len()
    ))
}

fn degeneracy() -> Outcome {
    let d = load_path(fixture("degenerate_three.json").as_ref()).map_err(|e| e.to_string())?;
    let lm = |d: &DistanceMatrix| -> Result<f64, String> {
        let g = build_gramian(d, 1.0).map_err(|e| e.to_string())?;
        Ok(min_eigenpair(&g, CLUSTER_TOL)
            .map_err(|e| e.to_string())?
            .lambda_min)
    };
    let before = lm(&d)?;
    let want = (3.0 - 2f64.sqrt()) / 2.0;
    ensure((before - want).abs() <= 1e-10, || {
        format!("degenerate labeling gave {before}, expected {want}")
    })?;
    let (relabeled, perm) = reorder_nondegenerate(&d).map_err(|e| e.to_string())?;
    let after = lm(&relabeled)?;
    ensure((after - 0.5).abs() <= 1e-10, || {
        format!("reordered labeling gave {after}")
    })?;
    Ok(format!(
        "{before:.12} before, {after} after permutation {perm:?}"
    ))
}

fn determinism() -> Outcome {
    let seven = fixture("seven_point.csv");
    let collinear = fixture("collinear.csv");
    let commands: [&[&str]; 8] = [
        &["validate", "-i", &seven],
        &["coteries", "-i", &seven],
        &[
            "analyze",
            "-i",
            &seven,
            "--p",
            "2",
            "--gap",
            "--samples",
            "500",
            "--seed",
            "3",
            "--embed",
            "--supremal",
        ],
        &["gap", "-i", &seven, "--samples", "500", "--seed", "3"],
        &[
            "gap",
            "-i",
            &collinear,
            "--mode",
            "classic",
            "--samples",
            "500",
            "--seed",
            "3",
        ],
        &["embed", "-i", &seven, "--p", "1"],
        &["supremal", "-i", &collinear],
        &[
            "generate", "--points", "25", "--levels", "1,2,3,5", "--seed", "42",
        ],
    ];
    for args in commands {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_ultragram"))
                .args(args)
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        ensure(a.status.success(), || {
            format!("{args:?} failed: {}", String::from_utf8_lossy(&a.stderr))
        })?;
        ensure(a.stdout == b.stdout, || {
            format!("{args:?} differs between runs")
        })?;
    }
    Ok(format!("{} commands byte-identical", commands.len()))
}

fn main() {
    let spaces = corpus(200, 30, 2);
    let criteria: Vec<Criterion> = vec![
        ("seven-point golden values", Box::new(golden_seven_point)),
        (
            "lambda_min = alpha_1^p/2 on 200 ultrametrics",
            Box::new(|| closed_form_at_scale(&spaces)),
        ),
        (
            "eigenvalue multiplicity matches the dimension formula",
            Box::new(|| dimension_formula(&spaces)),
        ),
        (
            "gamma tails, totals and lower bound",
            Box::new(|| weight_vector_bounds(&spaces)),
        ),
        (
            "flat coefficients iff balanced coterie support",
            Box::new(|| flat_equivalence(&spaces)),
        ),
        (
            "gap estimate and eigenvector witness",
            Box::new(gap_witness),
        ),
        ("Hilbert embedding isometry", Box::new(embedding_isometry)),
        (
            "supremal negative type",
            Box::new(|| supremal_type(&spaces)),
        ),
        ("degenerate labeling", Box::new(degeneracy)),
        ("deterministic JSON output", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{:>2}] {name}: {why}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

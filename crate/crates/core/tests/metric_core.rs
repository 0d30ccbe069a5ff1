mod common;

use common::*;
use proptest::prelude::*;
use ultragram::io::{load_path, parse_bytes, to_json_string, Format};
use ultragram::{
    distinct_distances, generate_random_ultrametric, power_transform, validate, Error,
};

#[test]
fn seven_point_fixture_loads() {
    let d = load_path(fixture("seven_point.csv").as_ref()).unwrap();
    assert_eq!(d.n_points(), 7);
    assert_eq!(d.get(0, 1), 3.0);
    assert_eq!(d.get(5, 6), 1.0);
    let r = validate(&d);
    assert!(r.is_metric && r.is_ultrametric);
}

#[test]
fn seven_point_distance_spectrum() {
    let s = distinct_distances(&seven_point());
    assert_eq!(s.alphas, vec![1.0, 2.0, 3.0, 4.0]);
    assert_eq!(s.ell(), 4);
    // pairs at distance 1: {1,2}, {3,4}, {5,6}
    assert_eq!(s.multiplicity[0], 3);
    assert_eq!(s.multiplicity.iter().sum::<usize>(), 7 * 6 / 2);
}

#[test]
fn equilateral_spectrum() {
    let s = distinct_distances(&equilateral(3, 1.0));
    assert_eq!(s.alphas, vec![1.0]);
    assert_eq!(s.multiplicity, vec![3]);
}

#[test]
fn json_fixture_and_errors() {
    let d = load_path(fixture("degenerate_three.json").as_ref()).unwrap();
    assert_eq!(d, degenerate_three());
    let bad = br#"{"matrix": [[0, 1], [1, 0]], "labels": ["a"]}"#;
    assert!(matches!(
        parse_bytes(bad, Format::Json),
        Err(Error::LabelCount { .. })
    ));
    assert!(matches!(
        parse_bytes(b"{not json", Format::Json),
        Err(Error::Parse(_))
    ));
}

#[test]
fn triangle_violation_fixture() {
    let d = load_path(fixture("triangle_violation.csv").as_ref()).unwrap();
    let r = validate(&d);
    assert!(!r.is_metric && !r.is_ultrametric);
    assert!(r.tolerance_used > 0.0);
}

fn ultrametric_strategy() -> impl Strategy<Value = ultragram::DistanceMatrix> {
    (3usize..16, 1usize..6, any::<u64>()).prop_map(|(n, ell, seed)| {
        let levels: Vec<f64> = (1..=ell).map(|k| k as f64 * 0.75).collect();
        generate_random_ultrametric(n, &levels, seed).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_spaces_are_ultrametric(d in ultrametric_strategy()) {
        prop_assert!(validate(&d).is_ultrametric);
    }

    #[test]
    fn powers_preserve_ultrametricity(d in ultrametric_strategy()) {
        for p in [0.5, 1.0, 2.0, 5.0] {
            let q = power_transform(&d, p).unwrap();
            prop_assert!(validate(&q).is_ultrametric);
        }
    }

    #[test]
    fn spectrum_commutes_with_powers(d in ultrametric_strategy(), p in 0.1f64..6.0) {
        let base = distinct_distances(&d).alphas;
        let powered = distinct_distances(&power_transform(&d, p).unwrap()).alphas;
        prop_assert_eq!(base.len(), powered.len());
        for (a, b) in base.iter().zip(&powered) {
            prop_assert!(rel_close(a.powf(p), *b, 1e-14));
        }
    }

    #[test]
    fn json_roundtrip_bit_exact(values in prop::collection::vec(1e-6f64..1e6, 6)) {
        // any positive upper triangle is a valid (not necessarily metric) matrix
        let d = upper(4, &values);
        let text = to_json_string(&d);
        let back = parse_bytes(text.as_bytes(), Format::Json).unwrap();
        prop_assert_eq!(&back, &d);
        for (a, b) in back.entries().iter().zip(d.entries()) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
    }
}

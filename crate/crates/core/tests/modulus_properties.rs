mod common;

use proptest::prelude::*;

use common::{corpus, CORPUS};
use korovkin_core::modulus::{modulus_at_resolution, modulus_of_continuity, modulus_profile};
use korovkin_core::{Domain, FunctionHandle};

/// Quadratic all-pairs scan of the grid plus the exact `±δ` partners.
fn brute(g: &FunctionHandle, delta: f64, cells: usize) -> f64 {
    let h = 1.0 / cells as f64;
    let mut best: f64 = 0.0;
    for i in 0..=cells {
        let x = i as f64 * h;
        for j in 0..=cells {
            let y = j as f64 * h;
            if (x - y).abs() <= delta + 1e-12 {
                best = best.max((g.eval(x) - g.eval(y)).abs());
            }
        }
        for y in [x + delta, x - delta] {
            if (0.0..=1.0).contains(&y) {
                best = best.max((g.eval(y) - g.eval(x)).abs());
            }
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, ..ProptestConfig::default() })]

    #[test]
    fn sliding_window_matches_all_pairs(i in 0..CORPUS.len(), delta in 0.001f64..0.6, cells in 8usize..300) {
        let g = &corpus()[i];
        let fast = modulus_at_resolution(g, delta, cells).unwrap();
        prop_assert!((fast - brute(g, delta, cells)).abs() < 1e-12);
    }

    #[test]
    fn bounded_by_twice_sup(i in 0..CORPUS.len(), delta in 0.001f64..2.0) {
        let g = &corpus()[i];
        let e = modulus_of_continuity(g, delta, 64).unwrap();
        let sup = Domain::Unit.probes(4097).iter().fold(0.0f64, |m, &x| m.max(g.eval(x).abs()));
        prop_assert!(e.value >= 0.0 && e.value <= 2.0 * sup + 1e-12);
    }

    #[test]
    fn lipschitz_error_bound_holds(i in 0..CORPUS.len(), delta in 0.01f64..0.5) {
        // the estimate is within L·2h of the value on a much finer grid
        let g = &corpus()[i];
        if let Some(l) = g.lipschitz() {
            let e = modulus_of_continuity(g, delta, 64).unwrap();
            let fine = modulus_at_resolution(g, delta, 1 << 16).unwrap();
            prop_assert!(fine - e.value <= 2.0 * l / e.resolution as f64 + 1e-12, "{} vs {fine}", e.value);
        }
    }
}

#[test]
fn profile_preserves_order() {
    let g = common::f("sqrt");
    let deltas = [0.16, 0.01, 0.04];
    let p = modulus_profile(&g, &deltas, 64).unwrap();
    for (e, d) in p.iter().zip(deltas) {
        assert_eq!(e.delta, d);
        assert!((e.value - d.sqrt()).abs() < 1e-4);
    }
}

#[test]
fn sqrt_follows_square_root_law() {
    let g = common::f("sqrt");
    for k in 1..=12 {
        let d = 0.5f64.powi(k);
        assert!((modulus_of_continuity(&g, d, 64).unwrap().value - d.sqrt()).abs() < 1e-9);
    }
}

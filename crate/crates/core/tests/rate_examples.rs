mod common;

use common::f;
use korovkin_core::bounds::rate_sweep;
use korovkin_core::{BoundFlavor, OperatorFamily, SpaceSpec};

fn ns() -> Vec<usize> {
    (0..8).map(|k| 4 << k).collect()
}

#[test]
fn abs_half_rates_in_l1() {
    let r = rate_sweep(&SpaceSpec::lp(1.0), &OperatorFamily::Kantorovich, &f("abshalf"), &ns(), BoundFlavor::ShishaMond, &Default::default())
        .unwrap();
    assert!(r.all_hold());
    let (sl, sr) = (r.slope_lhs.unwrap().slope, r.slope_rhs.unwrap().slope);
    assert!(sl <= sr + 0.1, "{sl} vs {sr}");
}

#[test]
fn sqrt_rates_in_l2() {
    // ω(√x, δ) = √δ, so the right side decays like μ_n^{1/2}
    let r = rate_sweep(&SpaceSpec::lp(2.0), &OperatorFamily::Kantorovich, &f("sqrt"), &ns(), BoundFlavor::ShishaMond, &Default::default())
        .unwrap();
    assert!(r.all_hold());
    let sr = r.slope_rhs.as_ref().unwrap().slope;
    assert!(sr < -0.2 && sr > -0.35, "{sr}");
    for (mu, rhs) in r.mu_values.iter().zip(&r.rhs_values) {
        assert!((rhs - 2.0 * mu.sqrt()).abs() < 1e-6);
    }
}

//! Lebesgue-type kernels evaluated on an adaptive tabulation of `f`:
//! (weighted) `L^p`, (weighted) grand Lebesgue and variable exponent.

use super::{NormResult, SpaceKind, SpaceSpec, WEIGHT_CLIP};
use crate::error::{Error, Result};
use crate::funcspace::{FunctionHandle, Tabulation};

/// Number of log-spaced nodes in the grand-Lebesgue ε search.
pub const GRAND_EPS_NODES: usize = 64;
/// The ε nodes cover `(p-1)·s` for `s = 1/(1+e^{-u})`, `u ∈ [-U, U]`.
const GRAND_LOGIT_SPAN: f64 = 14.0;
const GOLDEN_ITERS: usize = 100;
/// Relative width at which the Luxemburg bisection stops.
const LUXEMBURG_RTOL: f64 = 1e-13;

/// Exponent added to the refinement criterion of kernels that integrate
/// `|f|^q` for a range of `q`; it grades the mesh towards zeros of `f`.
pub(super) const SHAPE_EXPONENT: f64 = 0.5;

fn tabulate(space: &SpaceSpec, f: &FunctionHandle) -> Result<Tabulation> {
    let p = space.top_exponent();
    let grand = matches!(space.kind, SpaceKind::GrandLp | SpaceKind::WeightedGrandLp);
    match &space.weight {
        Some(w) if matches!(space.kind, SpaceKind::WeightedLp | SpaceKind::WeightedGrandLp) => {
            Tabulation::build_with_aux(f, w, Some(WEIGHT_CLIP), &space.quadrature, move |v, a| {
                let shape = if grand { v.abs().powf(SHAPE_EXPONENT) } else { 0.0 };
                (v.abs().powf(p) + shape) * a
            })
        }
        _ if grand => Tabulation::build(f, &[SHAPE_EXPONENT, 1.0, p], &space.quadrature),
        _ => Tabulation::build(f, &[1.0, p], &space.quadrature),
    }
}

fn power_integral(tab: &Tabulation, q: f64) -> (f64, f64) {
    tab.integrate_aux(|v, a| v.abs().powf(q) * a)
}

pub(super) fn lebesgue(space: &SpaceSpec, f: &FunctionHandle) -> Result<NormResult> {
    let tab = tabulate(space, f)?;
    let p = space.p;
    let (k, g) = power_integral(&tab, p);
    let value = k.max(0.0).powf(1.0 / p);
    let est_error = (value - g.max(0.0).powf(1.0 / p)).abs();
    Ok(NormResult { value, method: "", est_error, clipped: tab.aux_clipped() })
}

fn eps_of(p: f64, u: f64) -> f64 {
    (p - 1.0) / (1.0 + (-u).exp())
}

/// `(ε ∫|f|^{p-ε} w)^{1/(p-ε)}`; with `w ≡ 1` this is `ε^{1/(p-ε)} ‖f‖_{p-ε}`.
/// Returns the Kronrod and Gauss evaluations.
pub fn grand_objective(tab: &Tabulation, p: f64, eps: f64) -> (f64, f64) {
    let q = p - eps;
    let (k, g) = power_integral(tab, q);
    ((eps * k).max(0.0).powf(1.0 / q), (eps * g).max(0.0).powf(1.0 / q))
}

fn golden_max<F: Fn(f64) -> f64>(mut a: f64, mut b: f64, f: F) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..GOLDEN_ITERS {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
        if (b - a).abs() < 1e-13 {
            break;
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

pub(super) fn grand(space: &SpaceSpec, f: &FunctionHandle) -> Result<NormResult> {
    let tab = tabulate(space, f)?;
    let p = space.p;
    let us: Vec<f64> = (0..GRAND_EPS_NODES)
        .map(|i| -GRAND_LOGIT_SPAN + 2.0 * GRAND_LOGIT_SPAN * i as f64 / (GRAND_EPS_NODES - 1) as f64)
        .collect();
    let vals: Vec<f64> = us.iter().map(|&u| grand_objective(&tab, p, eps_of(p, u)).0).collect();
    let (imax, _) = vals
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, &v)| if v > bv { (i, v) } else { (bi, bv) });
    let lo = us[imax.saturating_sub(1)];
    let hi = us[(imax + 1).min(us.len() - 1)];
    let (u_star, v_star) = golden_max(lo, hi, |u| grand_objective(&tab, p, eps_of(p, u)).0);
    // the supremum over the open interval includes the ε → p-1 limit
    let (lim_k, lim_g) = grand_objective(&tab, p, p - 1.0);
    let (mut value, mut eps_best) = (vals[imax], eps_of(p, us[imax]));
    if v_star > value {
        value = v_star;
        eps_best = eps_of(p, u_star);
    }
    let est_error = if lim_k >= value {
        value = lim_k;
        (lim_k - lim_g).abs()
    } else {
        let (k, g) = grand_objective(&tab, p, eps_best);
        (k - g).abs()
    };
    Ok(NormResult { value, method: "", est_error, clipped: tab.aux_clipped() })
}

fn luxemburg(tab: &Tabulation, kronrod: bool) -> Result<f64> {
    let modular = |lambda: f64| {
        let (k, g) = tab.integrate_aux(|v, a| (v.abs() / lambda).powf(a));
        if kronrod {
            k
        } else {
            g
        }
    };
    let mut hi = tab.max_abs() + 1.0;
    let mut guard = 0;
    while modular(hi) > 1.0 {
        hi *= 2.0;
        guard += 1;
        if guard > 2000 {
            return Err(Error::NonFiniteEvaluation { at: f64::NAN, value: hi });
        }
    }
    let mut lo = 1e-12f64.min(0.5 * hi);
    while modular(lo) <= 1.0 {
        lo *= 0.5;
        if lo < 1e-300 {
            return Ok(0.0);
        }
    }
    // modular is strictly decreasing in λ: bisect in log space
    for _ in 0..400 {
        let mid = (lo * hi).sqrt();
        if modular(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi / lo - 1.0 < LUXEMBURG_RTOL {
            break;
        }
    }
    Ok(hi)
}

pub(super) fn variable(space: &SpaceSpec, f: &FunctionHandle) -> Result<NormResult> {
    let e = space.exponent_fn.as_ref().expect("validated");
    let tab = Tabulation::build_with_aux(f, e, None, &space.quadrature, |v, a| {
        v.abs().powf(a) + v.abs().powf(SHAPE_EXPONENT)
    })?;
    let value = luxemburg(&tab, true)?;
    let est_error = (value - luxemburg(&tab, false)?).abs() + LUXEMBURG_RTOL * value;
    Ok(NormResult { value, method: "", est_error, clipped: false })
}

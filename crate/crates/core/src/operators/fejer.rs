//! Fejér means `σ_n(f)(x) = (1/2π) ∫_{-π}^{π} f(x - u) F_n(u) du` of 2π-periodic functions.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::funcspace::{integrate_fn_detailed, wrap_to_circle, Domain, FunctionHandle, QuadratureConfig};

/// Below this `|u|` the kernel switches to its Taylor expansion.
const SERIES_CUTOFF: f64 = 1e-6;

/// The Fejér kernel `F_n(u) = (1/(n+1)) (sin((n+1)u/2) / sin(u/2))²`.
pub fn fejer_kernel(n: usize, u: f64) -> f64 {
    let m = (n + 1) as f64;
    let u = wrap_to_circle(u);
    if u.abs() < SERIES_CUTOFF {
        return m * (1.0 - (m * m - 1.0) * u * u / 12.0);
    }
    let r = (0.5 * m * u).sin() / (0.5 * u).sin();
    r * r / m
}

/// Kernel zeros `2πj/(n+1)` inside `(-π, π)`, used as panel boundaries.
fn kernel_zeros(n: usize) -> impl Iterator<Item = f64> {
    let m = (n + 1) as f64;
    (1..=n).flat_map(move |j| {
        let z = 2.0 * PI * j as f64 / m;
        [z, -z]
    })
    .filter(|z| z.abs() < PI)
}

pub(crate) fn fejer_eval(f: &FunctionHandle, n: usize, x: f64, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    let mut breaks: Vec<f64> = kernel_zeros(n).collect();
    breaks.push(wrap_to_circle(x - PI));
    breaks.extend(f.breakpoints().iter().map(|b| wrap_to_circle(x - b)));
    breaks.sort_by(f64::total_cmp);
    let r = integrate_fn_detailed(|u| f.eval_wrapped(x - u) * fejer_kernel(n, u), -PI, PI, &breaks, cfg)?;
    let scale = 1.0 / (2.0 * PI);
    Ok((scale * r.value, scale * r.abs_error))
}

pub(crate) fn check_periodic(f: &FunctionHandle) -> Result<()> {
    if f.domain() != Domain::Circle {
        return Err(Error::DomainMismatch(format!("Fejér means act on [-pi,pi], got {}", f.domain())));
    }
    if !f.is_periodic() {
        return Err(Error::NotPeriodic);
    }
    Ok(())
}

/// `σ_n(f)(x)` through the kernel integral with periodic wraparound.
pub fn fejer_apply(f: &FunctionHandle, n: usize, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    super::kantorovich::check_degree(n)?;
    check_periodic(f)?;
    let (v, _) = fejer_eval(f, n, x, cfg)?;
    if !v.is_finite() {
        return Err(Error::NonFiniteEvaluation { at: x, value: v });
    }
    Ok(v)
}

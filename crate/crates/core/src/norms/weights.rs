//! Weight diagnostics and the shift deviation `‖T_δ f - f‖_X`.

use super::{norm, NormResult, SpaceSpec, WEIGHT_CLIP};
use crate::error::{Error, Result};
use crate::funcspace::{integrate_fn_detailed, Domain, FunctionHandle, QuadratureConfig};

/// Discrete Muckenhoupt `A_p` constant: the maximum over grid subintervals `E`
/// of `(|E|⁻¹∫_E w) (|E|⁻¹∫_E w^{-1/(p-1)})^{p-1}`.
pub fn muckenhoupt_constant(w: &FunctionHandle, p: f64, resolution: usize) -> Result<f64> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::InvalidArgument(format!("Muckenhoupt constant needs p > 1, got {p}")));
    }
    if resolution == 0 {
        return Err(Error::InvalidArgument("resolution must be positive".into()));
    }
    let cfg = QuadratureConfig::default();
    let d = w.domain();
    let h = d.length() / resolution as f64;
    let dual = -1.0 / (p - 1.0);
    let clip = |v: f64| if v.is_nan() { v } else { v.clamp(0.0, WEIGHT_CLIP) };
    let mut sw = vec![0.0; resolution + 1];
    let mut sd = vec![0.0; resolution + 1];
    for i in 0..resolution {
        let (a, b) = (d.lo() + i as f64 * h, d.lo() + (i + 1) as f64 * h);
        let iw = integrate_fn_detailed(|x| clip(w.eval(x)), a, b, w.breakpoints(), &cfg)?;
        let id = integrate_fn_detailed(|x| clip(w.eval(x).powf(dual)), a, b, w.breakpoints(), &cfg)?;
        sw[i + 1] = sw[i] + iw.value;
        sd[i + 1] = sd[i] + id.value;
    }
    let mut best: f64 = 0.0;
    for i in 0..resolution {
        for j in i + 1..=resolution {
            let len = (j - i) as f64 * h;
            let v = (sw[j] - sw[i]) / len * ((sd[j] - sd[i]) / len).powf(p - 1.0);
            best = best.max(v);
        }
    }
    if !best.is_finite() {
        return Err(Error::NonFiniteEvaluation { at: f64::NAN, value: best });
    }
    Ok(best)
}

/// `‖T_δ f - f‖_X` with `T_δ f(x) = f(x + δ)` for `x + δ ≤ 1` and `0` beyond.
pub fn shift_deviation(space: &SpaceSpec, f: &FunctionHandle, delta: f64) -> Result<NormResult> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidArgument(format!("shift needs 0 < delta < 1, got {delta}")));
    }
    if f.domain() != Domain::Unit || space.domain != Domain::Unit {
        return Err(Error::DomainMismatch("shift deviation is defined on [0,1]".into()));
    }
    let fe = f.eval_fn().clone();
    let cut = 1.0 - delta;
    let mut bps = vec![cut];
    bps.extend(f.breakpoints().iter().copied());
    bps.extend(f.breakpoints().iter().map(|b| b - delta));
    let g = FunctionHandle::new(Domain::Unit, move |x| if x <= cut { fe(x + delta) - fe(x) } else { -fe(x) })
        .with_name(format!("T_{delta}[{}]-{}", f.name(), f.name()))
        .with_breakpoints(bps);
    norm(space, &g)
}

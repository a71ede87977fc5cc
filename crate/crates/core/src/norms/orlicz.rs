//! Orlicz norms.
//!
//! The norm is evaluated with the Amemiya formula
//! `‖f‖_Φ = inf_{k>0} (1 + ∫Φ(k|f|)) / k`, which coincides with the dual
//! (Orlicz) norm `sup{∫|fg| : ∫Ψ(|g|) ≤ 1}`, `Ψ` the complementary function.
//! [`orlicz_dual_estimate`] evaluates the dual form directly on a finite family
//! of test functions and serves as a cross-check.

use std::fmt;
use std::sync::Arc;

use super::{NormResult, SpaceSpec};
use crate::error::{Error, Result};
use crate::funcspace::{decreasing_rearrangement, sample, FunctionHandle, RealFn, Tabulation};

/// A Young function `Φ` (convex, increasing, `Φ(0) = 0`), optionally with its
/// derivative and complementary function in closed form.
#[derive(Clone)]
pub struct YoungFunction {
    name: String,
    phi: RealFn,
    derivative: Option<RealFn>,
    conjugate: Option<RealFn>,
}

impl fmt::Debug for YoungFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("YoungFunction").field("name", &self.name).finish()
    }
}

impl YoungFunction {
    pub fn new<F>(name: impl Into<String>, phi: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self { name: name.into(), phi: Arc::new(phi), derivative: None, conjugate: None }
    }

    pub fn with_derivative<F: Fn(f64) -> f64 + Send + Sync + 'static>(mut self, d: F) -> Self {
        self.derivative = Some(Arc::new(d));
        self
    }

    pub fn with_conjugate<F: Fn(f64) -> f64 + Send + Sync + 'static>(mut self, c: F) -> Self {
        self.conjugate = Some(Arc::new(c));
        self
    }

    /// `Φ(t) = t^p / p`, complementary `Ψ(s) = s^q / q` with `1/p + 1/q = 1`.
    pub fn power(p: f64) -> Self {
        let q = p / (p - 1.0);
        Self::new(format!("pow{p}"), move |t: f64| t.powf(p) / p)
            .with_derivative(move |t: f64| t.powf(p - 1.0))
            .with_conjugate(move |s: f64| s.powf(q) / q)
    }

    /// `Φ(t) = e^t - 1 - t`, complementary `Ψ(s) = (1+s)ln(1+s) - s`.
    pub fn exponential() -> Self {
        Self::new("exp", |t: f64| t.exp_m1() - t)
            .with_derivative(|t: f64| t.exp_m1())
            .with_conjugate(|s: f64| (1.0 + s) * s.ln_1p() - s)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn phi(&self, t: f64) -> f64 {
        (self.phi)(t)
    }

    pub fn derivative(&self, t: f64) -> f64 {
        match &self.derivative {
            Some(d) => d(t),
            None => {
                let h = 1e-6 * (1.0 + t);
                let lo = (t - h).max(0.0);
                ((self.phi)(t + h) - (self.phi)(lo)) / (t + h - lo)
            }
        }
    }

    /// `Ψ(s) = sup_{t ≥ 0} (st - Φ(t))`.
    pub fn complementary(&self, s: f64) -> f64 {
        if let Some(c) = &self.conjugate {
            return c(s);
        }
        let obj = |t: f64| s * t - (self.phi)(t);
        let mut hi = 1.0;
        for _ in 0..200 {
            if obj(2.0 * hi) <= obj(hi) {
                break;
            }
            hi *= 2.0;
        }
        let (mut a, mut b) = (0.0, 2.0 * hi);
        let r = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..200 {
            let c = b - r * (b - a);
            let d = a + r * (b - a);
            if obj(c) >= obj(d) {
                b = d;
            } else {
                a = c;
            }
        }
        obj(0.5 * (a + b)).max(0.0)
    }

    /// Smallest `s` with `Ψ(s) ≥ y`.
    pub fn complementary_inverse(&self, y: f64) -> f64 {
        let mut hi = 1.0;
        while self.complementary(hi) < y && hi < 1e300 {
            hi *= 2.0;
        }
        let mut lo = 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.complementary(mid) < y {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSpace(format!("Young function {}: {m}", self.name)));
        if self.phi(0.0).abs() > 1e-12 {
            return bad("Φ(0) must be 0".into());
        }
        let ts: Vec<f64> = (0..=200).map(|i| 10.0 * i as f64 / 200.0).collect();
        let vals: Vec<f64> = ts.iter().map(|&t| self.phi(t)).collect();
        if vals.iter().any(|v| !v.is_finite()) {
            return bad("Φ is not finite on [0, 10]".into());
        }
        for w in vals.windows(2) {
            if w[1] < w[0] - 1e-12 {
                return bad("Φ is not increasing".into());
            }
        }
        for w in vals.windows(3) {
            if w[0] + w[2] - 2.0 * w[1] < -1e-9 * (1.0 + w[1].abs()) {
                return bad("Φ is not convex".into());
            }
        }
        Ok(())
    }
}

const GOLDEN_ITERS: usize = 200;

fn amemiya_value(tab: &Tabulation, young: &YoungFunction, kronrod: bool, k: f64) -> f64 {
    let (ik, ig) = tab.integrate(|_, v| young.phi(k * v.abs()));
    (1.0 + if kronrod { ik } else { ig }) / k
}

fn amemiya_minimize(tab: &Tabulation, young: &YoungFunction, kronrod: bool) -> f64 {
    let k0 = 1.0 / tab.max_abs().max(1e-300);
    let logs: Vec<f64> = (-60..=60).map(|j| k0.ln() + j as f64 * std::f64::consts::LN_2).collect();
    let vals: Vec<f64> = logs.iter().map(|&l| amemiya_value(tab, young, kronrod, l.exp())).collect();
    let imin = vals
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_finite())
        .fold((0, f64::INFINITY), |(bi, bv), (i, &v)| if v < bv { (i, v) } else { (bi, bv) })
        .0;
    let (mut a, mut b) = (logs[imin.saturating_sub(1)], logs[(imin + 1).min(logs.len() - 1)]);
    let obj = |l: f64| amemiya_value(tab, young, kronrod, l.exp());
    let r = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..GOLDEN_ITERS {
        let c = b - r * (b - a);
        let d = a + r * (b - a);
        if obj(c) <= obj(d) {
            b = d;
        } else {
            a = c;
        }
        if b - a < 1e-14 {
            break;
        }
    }
    obj(0.5 * (a + b)).min(vals[imin])
}

pub(super) fn amemiya(space: &SpaceSpec, f: &FunctionHandle) -> Result<NormResult> {
    let young = space.young.as_ref().expect("validated");
    let tab = Tabulation::build(f, &[super::integral::SHAPE_EXPONENT, 1.0, 2.0], &space.quadrature)?;
    let value = amemiya_minimize(&tab, young, true);
    let est_error = (value - amemiya_minimize(&tab, young, false)).abs();
    if !value.is_finite() {
        return Err(Error::NonFiniteEvaluation { at: f64::NAN, value });
    }
    Ok(NormResult { value, method: "", est_error, clipped: false })
}

/// Lower estimate of the dual-form Orlicz norm `sup{∫|fg| : ∫Ψ(|g|) ≤ 1}` over
/// scaled indicators of super-level sets and scaled `Φ'(κ|f|)` profiles,
/// evaluated on `resolution` midpoint cells.
pub fn orlicz_dual_estimate(young: &YoungFunction, f: &FunctionHandle, resolution: usize) -> Result<f64> {
    young.validate()?;
    let s = sample(f, resolution)?;
    let h = s.cell_width();
    let sorted = decreasing_rearrangement(&s);
    let mut best: f64 = 0.0;
    let mut mass = 0.0;
    for (k, v) in sorted.values().iter().enumerate() {
        mass += v * h;
        let measure = (k + 1) as f64 * h;
        best = best.max(young.complementary_inverse(1.0 / measure) * mass);
    }
    let absv: Vec<f64> = s.values().iter().map(|v| v.abs()).collect();
    let top = sorted.values()[0];
    if top > 0.0 {
        for j in -20..=20 {
            let kappa = 2f64.powi(j) / top;
            let g: Vec<f64> = absv.iter().map(|&v| young.derivative(kappa * v)).collect();
            let modular = |c: f64| g.iter().map(|&gi| young.complementary(c * gi)).sum::<f64>() * h;
            let mut hi = 1.0;
            while modular(hi) < 1.0 && hi < 1e200 {
                hi *= 2.0;
            }
            let mut lo = 0.0;
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if modular(mid) <= 1.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let pairing: f64 = absv.iter().zip(&g).map(|(v, gi)| v * gi).sum::<f64>() * h;
            best = best.max(lo * pairing);
        }
    }
    Ok(best)
}

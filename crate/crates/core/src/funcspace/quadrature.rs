//! Adaptive composite Gauss–Kronrod quadrature (7-point Gauss panels with the
//! 15-point Kronrod extension supplying the error estimate).

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::FunctionHandle;
use crate::error::{Error, Result};

/// Tolerances and depth cap for adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_depth: 30,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0 && self.max_depth >= 1) {
            return Err(Error::InvalidArgument(format!("bad quadrature config {self:?}")));
        }
        Ok(())
    }
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    /// `false` when some panel hit `max_depth` before the tolerance was met.
    pub converged: bool,
    pub evaluations: usize,
}

// Kronrod abscissae on [-1, 1] (nonnegative half, descending). Odd indices are
// the 7-point Gauss nodes.
pub(crate) const XK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
pub(crate) const WK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
pub(crate) const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Node `i` of 15 on `[a, b]`, with its Kronrod and Gauss weights (already scaled).
#[inline]
pub(crate) fn panel_node(a: f64, b: f64, i: usize) -> (f64, f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let (k, sign) = if i < 8 { (i, -1.0) } else { (14 - i, 1.0) };
    let x = c + sign * h * XK[k];
    let wg = if k % 2 == 1 { WG[k / 2] } else if k == 7 { WG[3] } else { 0.0 };
    (x, h * WK[k], h * wg)
}

pub(crate) struct Panel<T> {
    pub a: f64,
    pub b: f64,
    pub depth: usize,
    pub value: f64,
    pub err: f64,
    pub payload: T,
}

struct ByError<T>(Panel<T>);

impl<T> PartialEq for ByError<T> {
    fn eq(&self, other: &Self) -> bool {
        self.0.err.total_cmp(&other.0.err) == Ordering::Equal
    }
}
impl<T> Eq for ByError<T> {}
impl<T> PartialOrd for ByError<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for ByError<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.err.total_cmp(&other.0.err)
    }
}

const MAX_PANELS: usize = 200_000;

/// Global adaptive subdivision: repeatedly bisects the panel with the largest
/// error until the summed error meets the tolerance. `eval` returns
/// `(value, error, payload)` for one panel.
pub(crate) fn adapt<T, F>(edges: &[f64], cfg: &QuadratureConfig, eval: F) -> Result<(Vec<Panel<T>>, bool)>
where
    F: Fn(f64, f64) -> Result<(f64, f64, T)>,
{
    cfg.validate()?;
    let mut heap = BinaryHeap::new();
    let mut done: Vec<Panel<T>> = Vec::new();
    let (mut total, mut total_err) = (0.0, 0.0);
    for w in edges.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        let (value, err, payload) = eval(a, b)?;
        total += value;
        total_err += err;
        heap.push(ByError(Panel { a, b, depth: 0, value, err, payload }));
    }
    let mut converged = true;
    let mut count = heap.len();
    while total_err > cfg.abs_tol.max(cfg.rel_tol * total.abs()) {
        let Some(ByError(p)) = heap.pop() else {
            converged = false;
            break;
        };
        if p.depth >= cfg.max_depth || count >= MAX_PANELS || p.err == 0.0 {
            converged = false;
            done.push(p);
            // Panels that cannot be split stay in the error sum; the remaining
            // ones are still worth refining.
            continue;
        }
        let m = 0.5 * (p.a + p.b);
        let (lv, le, lp) = eval(p.a, m)?;
        let (rv, re, rp) = eval(m, p.b)?;
        total += lv + rv - p.value;
        total_err += le + re - p.err;
        count += 1;
        heap.push(ByError(Panel { a: p.a, b: m, depth: p.depth + 1, value: lv, err: le, payload: lp }));
        heap.push(ByError(Panel { a: m, b: p.b, depth: p.depth + 1, value: rv, err: re, payload: rp }));
    }
    done.extend(heap.into_iter().map(|ByError(p)| p));
    done.sort_by(|x, y| x.a.total_cmp(&y.a));
    Ok((done, converged))
}

/// Panel edges for `[a, b]` split at the interior `breakpoints`.
pub(crate) fn edges_with_breaks(a: f64, b: f64, breakpoints: &[f64]) -> Vec<f64> {
    let mut e = vec![a];
    e.extend(breakpoints.iter().copied().filter(|&p| p > a && p < b));
    e.push(b);
    e.sort_by(f64::total_cmp);
    e
}

/// Adaptive integral of a closure over `[a, b]`, split at `breakpoints`.
/// Depth exhaustion is reported through [`QuadResult::converged`], not as an error.
pub fn integrate_fn_detailed<F>(f: F, a: f64, b: f64, breakpoints: &[f64], cfg: &QuadratureConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    if !(a <= b) {
        return Err(Error::InvalidArgument(format!("integration bounds out of order: [{a}, {b}]")));
    }
    if a == b {
        return Ok(QuadResult { value: 0.0, abs_error: 0.0, converged: true, evaluations: 0 });
    }
    let evals = std::cell::Cell::new(0usize);
    let (panels, converged) = adapt(&edges_with_breaks(a, b, breakpoints), cfg, |pa, pb| {
        let (mut k, mut g) = (0.0, 0.0);
        for i in 0..15 {
            let (x, wk, wg) = panel_node(pa, pb, i);
            let v = f(x);
            if !v.is_finite() {
                return Err(Error::NonFiniteEvaluation { at: x, value: v });
            }
            k += wk * v;
            g += wg * v;
        }
        evals.set(evals.get() + 15);
        Ok((k, (k - g).abs(), ()))
    })?;
    let value = panels.iter().map(|p| p.value).sum();
    let abs_error = panels.iter().map(|p| p.err).sum();
    Ok(QuadResult { value, abs_error, converged, evaluations: evals.get() })
}

/// Like [`integrate_fn_detailed`] but turns depth exhaustion into
/// [`Error::DepthExceeded`] carrying the best estimate.
pub fn integrate_fn<F>(f: F, a: f64, b: f64, breakpoints: &[f64], cfg: &QuadratureConfig) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let r = integrate_fn_detailed(f, a, b, breakpoints, cfg)?;
    if r.converged {
        Ok(r.value)
    } else {
        Err(Error::DepthExceeded { estimate: r.value, abs_error: r.abs_error, max_depth: cfg.max_depth })
    }
}

/// `∫_a^b f` for a function handle, using its breakpoints.
pub fn integrate(f: &FunctionHandle, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let d = f.domain();
    if !(d.contains(a) && d.contains(b)) {
        return Err(Error::DomainMismatch(format!("[{a}, {b}] is not inside {d}")));
    }
    integrate_fn(|x| f.eval(x), a, b, f.breakpoints(), cfg)
}

//! The modulus of continuity `ω(f, δ) = sup{|f(x) - f(y)| : |x - y| ≤ δ}`.
//!
//! On a uniform grid the estimator takes the largest oscillation over every
//! window of grid points spanning at most `δ` (monotone-deque sliding
//! extrema), and additionally the pairs `(x_i, x_i ± δ)` at exactly distance
//! `δ`. Every candidate pair is admissible, so the estimate is a lower bound on
//! the true modulus. The grid is doubled until the estimate stabilises.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::funcspace::{wrap_to_circle, FunctionHandle};

pub const MIN_RESOLUTION: usize = 64;
/// Refinement stops once the grid would exceed this many points.
pub const MAX_POINTS: usize = 1 << 20;
/// Absolute change between successive refinements that counts as converged.
pub const CONVERGENCE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModulusEstimate {
    pub delta: f64,
    pub value: f64,
    /// Number of grid cells at the final refinement level.
    pub resolution: usize,
    pub converged: bool,
    /// How far below the true modulus the estimate may lie.
    pub error_bound: f64,
}

/// Largest `max - min` over all windows of `w + 1` consecutive values.
fn max_window_oscillation(values: &[f64], w: usize) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let w = w.min(values.len() - 1);
    let mut maxq: VecDeque<usize> = VecDeque::new();
    let mut minq: VecDeque<usize> = VecDeque::new();
    let mut best: f64 = 0.0;
    for (j, &v) in values.iter().enumerate() {
        while maxq.back().is_some_and(|&k| values[k] <= v) {
            maxq.pop_back();
        }
        maxq.push_back(j);
        while minq.back().is_some_and(|&k| values[k] >= v) {
            minq.pop_back();
        }
        minq.push_back(j);
        let start = j.saturating_sub(w);
        while maxq.front().is_some_and(|&k| k < start) {
            maxq.pop_front();
        }
        while minq.front().is_some_and(|&k| k < start) {
            minq.pop_front();
        }
        best = best.max(values[maxq[0]] - values[minq[0]]);
    }
    best
}

fn window_width(delta: f64, h: f64) -> usize {
    ((delta + 1e-12) / h).floor() as usize
}

/// The estimate on a single grid of `cells` cells, without refinement.
///
/// Interval functions use the `cells + 1` grid points including both
/// endpoints; periodic functions use `cells` points on the circle and measure
/// distances modulo 2π.
pub fn modulus_at_resolution(f: &FunctionHandle, delta: f64, cells: usize) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::InvalidArgument(format!("delta must be positive, got {delta}")));
    }
    if cells == 0 {
        return Err(Error::InvalidArgument("resolution must be positive".into()));
    }
    let d = f.domain();
    let (lo, len) = (d.lo(), d.length());
    let h = len / cells as f64;
    if f.is_periodic() {
        let delta = delta.min(0.5 * len);
        let values = (0..cells).map(|i| f.try_eval(lo + i as f64 * h)).collect::<Result<Vec<_>>>()?;
        let w = window_width(delta, h).min(cells / 2);
        let mut extended = values.clone();
        extended.extend_from_slice(&values[..w.min(cells)]);
        let mut best = max_window_oscillation(&extended, w);
        for (i, &v) in values.iter().enumerate() {
            let y = wrap_to_circle(lo + i as f64 * h + delta);
            best = best.max((f.try_eval(y)? - v).abs());
        }
        Ok(best)
    } else {
        let values = (0..=cells).map(|i| f.try_eval(lo + i as f64 * h)).collect::<Result<Vec<_>>>()?;
        if delta >= len {
            let (mn, mx) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
            return Ok(mx - mn);
        }
        let w = window_width(delta, h);
        let mut best = max_window_oscillation(&values, w);
        let hi = d.hi();
        for (i, &v) in values.iter().enumerate() {
            let x = lo + i as f64 * h;
            if x + delta <= hi {
                best = best.max((f.try_eval(x + delta)? - v).abs());
            }
            if x - delta >= lo {
                best = best.max((v - f.try_eval(x - delta)?).abs());
            }
        }
        Ok(best)
    }
}

/// `ω(f, δ)` with grid refinement starting from `resolution` cells.
pub fn modulus_of_continuity(f: &FunctionHandle, delta: f64, resolution: usize) -> Result<ModulusEstimate> {
    if resolution < MIN_RESOLUTION {
        return Err(Error::InvalidArgument(format!(
            "modulus resolution must be at least {MIN_RESOLUTION}, got {resolution}"
        )));
    }
    let mut cells = resolution;
    let mut value = modulus_at_resolution(f, delta, cells)?;
    let mut converged = false;
    let mut last_change = f64::INFINITY;
    while 2 * cells < MAX_POINTS {
        cells *= 2;
        let next = modulus_at_resolution(f, delta, cells)?;
        last_change = (next - value).abs();
        value = value.max(next);
        if last_change < CONVERGENCE_TOL {
            converged = true;
            break;
        }
    }
    let h = f.domain().length() / cells as f64;
    let error_bound = match f.lipschitz() {
        Some(l) => 2.0 * l * h,
        None => last_change.min(value),
    };
    Ok(ModulusEstimate { delta, value, resolution: cells, converged, error_bound })
}

/// [`modulus_of_continuity`] for each entry of `deltas`, in order.
pub fn modulus_profile(f: &FunctionHandle, deltas: &[f64], resolution: usize) -> Result<Vec<ModulusEstimate>> {
    if deltas.is_empty() {
        return Err(Error::InvalidArgument("deltas must be nonempty".into()));
    }
    deltas.par_iter().map(|&d| modulus_of_continuity(f, d, resolution)).collect()
}

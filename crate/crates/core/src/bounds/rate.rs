use rayon::prelude::*;
use serde::Serialize;

use super::{evaluate_bound, BoundFlavor, BoundOptions, BoundReport};
use crate::error::{Error, Result};
use crate::funcspace::FunctionHandle;
use crate::norms::SpaceSpec;
use crate::operators::OperatorFamily;

/// Values at or below this are treated as zero and make a slope undefined.
pub const SLOPE_FLOOR: f64 = 1e-14;
/// Log-residuals below this never trigger exclusion of the first point.
pub const RESIDUAL_FLOOR: f64 = 1e-9;

/// Least-squares fit of `ln(value)` against `ln(n + 1)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    pub rms_residual: f64,
    /// Residuals of the final fit, aligned with the points that were used.
    pub residuals: Vec<f64>,
    /// Set when the smallest `n` was dropped as pre-asymptotic.
    pub excluded_first: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateReport {
    pub n_values: Vec<usize>,
    pub lhs_values: Vec<f64>,
    pub rhs_values: Vec<f64>,
    pub mu_values: Vec<f64>,
    /// `None` when some value is (numerically) zero.
    pub slope_lhs: Option<SlopeFit>,
    pub slope_rhs: Option<SlopeFit>,
    pub reports: Vec<BoundReport>,
}

impl RateReport {
    pub fn all_hold(&self) -> bool {
        self.reports.iter().all(|r| r.holds)
    }
}

fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, Vec<f64>, f64) {
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let res: Vec<f64> = xs.iter().zip(ys).map(|(x, y)| y - (intercept + slope * x)).collect();
    let rms = (res.iter().map(|r| r * r).sum::<f64>() / m).sqrt();
    (slope, intercept, res, rms)
}

/// Fits `ln(value) = a + s ln(n + 1)`. The smallest `n` is dropped when its
/// residual against the fit of the remaining points exceeds three times that
/// fit's RMS residual (and `RESIDUAL_FLOOR`).
pub fn fit_slope(n_values: &[usize], values: &[f64]) -> Option<SlopeFit> {
    if n_values.len() != values.len() || n_values.len() < 2 || values.iter().any(|v| !(*v > SLOPE_FLOOR) || !v.is_finite()) {
        return None;
    }
    let xs: Vec<f64> = n_values.iter().map(|&n| ((n + 1) as f64).ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    if xs.len() >= 4 {
        let (slope, intercept, residuals, rms) = least_squares(&xs[1..], &ys[1..]);
        let first = ys[0] - (intercept + slope * xs[0]);
        if first.abs() > (3.0 * rms).max(RESIDUAL_FLOOR) {
            return Some(SlopeFit { slope, intercept, rms_residual: rms, residuals, excluded_first: true });
        }
    }
    let (slope, intercept, residuals, rms) = least_squares(&xs, &ys);
    Some(SlopeFit { slope, intercept, rms_residual: rms, residuals, excluded_first: false })
}

/// Runs the bound of `flavor` for each `n` and fits both sides' decay rates.
pub fn rate_sweep(
    space: &SpaceSpec,
    family: &OperatorFamily,
    f: &FunctionHandle,
    n_values: &[usize],
    flavor: BoundFlavor,
    opts: &BoundOptions,
) -> Result<RateReport> {
    if n_values.len() < 4 {
        return Err(Error::InvalidArgument(format!("rate sweep needs at least 4 n values, got {}", n_values.len())));
    }
    if n_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("n values must be strictly increasing".into()));
    }
    let reports = n_values
        .par_iter()
        .map(|&n| evaluate_bound(flavor, space, &family.at(n)?, f, opts))
        .collect::<Result<Vec<_>>>()?;
    let lhs_values: Vec<f64> = reports.iter().map(|r| r.lhs).collect();
    let rhs_values: Vec<f64> = reports.iter().map(|r| r.rhs).collect();
    let mu_values: Vec<f64> = reports.iter().map(|r| r.mu_n).collect();
    Ok(RateReport {
        n_values: n_values.to_vec(),
        slope_lhs: fit_slope(n_values, &lhs_values),
        slope_rhs: fit_slope(n_values, &rhs_values),
        lhs_values,
        rhs_values,
        mu_values,
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::Domain;

    #[test]
    fn exact_power_law() {
        let ns = [4usize, 8, 16, 32, 64];
        let vals: Vec<f64> = ns.iter().map(|&n| 3.0 * ((n + 1) as f64).powf(-0.75)).collect();
        let fit = fit_slope(&ns, &vals).unwrap();
        assert!((fit.slope + 0.75).abs() < 1e-12);
        assert!((fit.intercept - 3f64.ln()).abs() < 1e-11);
        assert!(fit.rms_residual < 1e-12 && !fit.excluded_first);
    }

    #[test]
    fn outlier_first_point_is_dropped() {
        let ns = [1usize, 4, 8, 16, 32, 64, 128];
        let mut vals: Vec<f64> = ns.iter().map(|&n| ((n + 1) as f64).powf(-0.5)).collect();
        vals[0] *= 40.0;
        let fit = fit_slope(&ns, &vals).unwrap();
        assert!(fit.excluded_first);
        assert!((fit.slope + 0.5).abs() < 1e-12);
    }

    #[test]
    fn zeros_make_slope_undefined() {
        assert!(fit_slope(&[1, 2, 3, 4], &[0.0, 0.0, 0.0, 0.0]).is_none());
    }

    #[test]
    fn sweep_identity_l1() {
        let f = FunctionHandle::new(Domain::Unit, |x| x).with_lipschitz(1.0);
        let ns = [4usize, 8, 16, 32, 64];
        let r = rate_sweep(&SpaceSpec::lp(1.0), &OperatorFamily::Kantorovich, &f, &ns, BoundFlavor::ShishaMond, &Default::default())
            .unwrap();
        assert!(r.all_hold());
        assert!((r.slope_lhs.unwrap().slope + 1.0).abs() < 0.1);
        assert!((r.slope_rhs.unwrap().slope + 0.5).abs() < 0.05);
    }

    #[test]
    fn constant_gives_undefined_slopes() {
        let f = FunctionHandle::constant(Domain::Unit, 2.5);
        let r = rate_sweep(&SpaceSpec::lp(1.0), &OperatorFamily::Kantorovich, &f, &[2, 4, 8, 16], BoundFlavor::ShishaMond, &Default::default())
            .unwrap();
        assert!(r.slope_lhs.is_none() && r.slope_rhs.is_none());
        assert!(r.all_hold());
    }

    #[test]
    fn sweep_rejects_bad_n() {
        let f = FunctionHandle::new(Domain::Unit, |x| x);
        let s = SpaceSpec::lp(1.0);
        let o = BoundOptions::default();
        assert!(rate_sweep(&s, &OperatorFamily::Kantorovich, &f, &[1, 2, 3], BoundFlavor::ShishaMond, &o).is_err());
        assert!(rate_sweep(&s, &OperatorFamily::Kantorovich, &f, &[1, 2, 2, 3], BoundFlavor::ShishaMond, &o).is_err());
    }
}

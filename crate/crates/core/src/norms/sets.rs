//! Grid kernels: sampled sup norm, interval suprema (Morrey) and set suprema
//! reduced to the decreasing rearrangement (small Morrey, weak Lebesgue).

use super::{NormResult, SpaceKind, SpaceSpec, WEIGHT_CLIP};
use crate::error::{Error, Result};
use crate::funcspace::quadrature::panel_node;
use crate::funcspace::{decreasing_rearrangement, sample, FunctionHandle};

pub(super) fn sup_norm(f: &FunctionHandle, resolution: usize) -> Result<NormResult> {
    let d = f.domain();
    let max_at = |n: usize| -> Result<f64> {
        // cell endpoints and midpoints
        let m = 2 * n;
        (0..=m).try_fold(0.0f64, |acc, j| Ok(acc.max(f.try_eval(d.lo() + d.length() * j as f64 / m as f64)?.abs())))
    };
    let value = max_at(resolution)?;
    let est_error = match f.lipschitz() {
        Some(l) => l * d.length() / (4.0 * resolution as f64),
        None => (value - max_at(resolution / 2)?).abs(),
    };
    Ok(NormResult { value, method: "", est_error, clipped: false })
}

/// Which set supremum a rearrangement kernel evaluates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SetExponent {
    /// `sup_E (|E|^{-λ} ∫_E |f|^p)^{1/p}`
    SmallMorrey { p: f64, lambda: f64 },
    /// `sup_E |E|^{-(1-1/p)} ∫_E |f|`
    WeakMp { p: f64 },
}

impl SetExponent {
    fn power(self) -> f64 {
        match self {
            SetExponent::SmallMorrey { p, .. } => p,
            SetExponent::WeakMp { .. } => 1.0,
        }
    }

    fn measure_exponent(self) -> f64 {
        match self {
            SetExponent::SmallMorrey { lambda, .. } => lambda,
            SetExponent::WeakMp { p } => 1.0 - 1.0 / p,
        }
    }

    fn finish(self, s: f64) -> f64 {
        s.powf(1.0 / self.power())
    }

    /// Supremum over unions of cells for a piecewise-constant function with
    /// cell values `values` and cell width `h`. The best union of `k` cells
    /// holds the `k` largest values, and for fixed `k` nothing beats whole
    /// cells, so one pass over the rearrangement suffices.
    pub fn rearrangement_supremum(self, values: &[f64], h: f64) -> f64 {
        let mut sorted: Vec<f64> = values.iter().map(|v| v.abs().powf(self.power())).collect();
        sorted.sort_by(|a, b| b.total_cmp(a));
        let e = self.measure_exponent();
        let mut mass = 0.0;
        let mut best: f64 = 0.0;
        for (k, v) in sorted.iter().enumerate() {
            mass += v * h;
            best = best.max(((k + 1) as f64 * h).powf(-e) * mass);
        }
        self.finish(best)
    }
}

/// The same supremum by enumerating all `2^N - 1` nonempty unions of cells.
pub fn set_supremum_brute_force(values: &[f64], h: f64, kind: SetExponent) -> Result<f64> {
    let n = values.len();
    if n == 0 || n > 24 {
        return Err(Error::InvalidArgument(format!("brute force needs 1..=24 cells, got {n}")));
    }
    let powered: Vec<f64> = values.iter().map(|v| v.abs().powf(kind.power())).collect();
    let e = kind.measure_exponent();
    let mut best: f64 = 0.0;
    for mask in 1u32..(1u32 << n) {
        let mut mass = 0.0;
        for (i, v) in powered.iter().enumerate() {
            if mask & (1 << i) != 0 {
                mass += v * h;
            }
        }
        let measure = mask.count_ones() as f64 * h;
        best = best.max(measure.powf(-e) * mass);
    }
    Ok(kind.finish(best))
}

fn set_kind(space: &SpaceSpec) -> SetExponent {
    match space.kind {
        SpaceKind::SmallMorrey => SetExponent::SmallMorrey { p: space.p, lambda: space.lambda },
        _ => SetExponent::WeakMp { p: space.p },
    }
}

pub(super) fn rearrangement(space: &SpaceSpec, f: &FunctionHandle) -> Result<NormResult> {
    let kind = set_kind(space);
    let at = |n: usize| -> Result<f64> {
        let s = decreasing_rearrangement(&sample(f, n)?);
        Ok(kind.rearrangement_supremum(s.values(), s.cell_width()))
    };
    let value = at(space.resolution)?;
    let est_error = (value - at(space.resolution / 2)?).abs();
    Ok(NormResult { value, method: "", est_error, clipped: false })
}

struct MorreyIntegrand<'a> {
    f: &'a FunctionHandle,
    w: Option<&'a FunctionHandle>,
    p: f64,
    clipped: std::cell::Cell<bool>,
}

impl MorreyIntegrand<'_> {
    fn at(&self, x: f64) -> Result<f64> {
        let v = self.f.try_eval(x)?.abs().powf(self.p);
        Ok(match self.w {
            None => v,
            Some(w) => {
                let mut wv = w.eval(x);
                if wv.is_nan() {
                    return Err(Error::NonFiniteEvaluation { at: x, value: wv });
                }
                if !(0.0..=WEIGHT_CLIP).contains(&wv) {
                    self.clipped.set(true);
                    wv = wv.clamp(0.0, WEIGHT_CLIP);
                }
                v * wv
            }
        })
    }

    /// Signed one-panel Kronrod integral over `[a, b]`.
    fn panel(&self, a: f64, b: f64) -> Result<f64> {
        if a == b {
            return Ok(0.0);
        }
        let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
        let mut s = 0.0;
        for i in 0..15 {
            let (x, wk, _) = panel_node(lo, hi, i);
            s += wk * self.at(x)?;
        }
        Ok(sign * s)
    }
}

/// `(b-a)^{p/p0 - 1} ∫_a^b |f|^p w`, the p-th power of the Morrey functional.
fn morrey_at(space: &SpaceSpec, g: &MorreyIntegrand<'_>, n: usize) -> Result<f64> {
    let d = g.f.domain();
    let h = d.length() / n as f64;
    let x = |i: usize| d.lo() + i as f64 * h;
    let mut prefix = vec![0.0; n + 1];
    for i in 0..n {
        prefix[i + 1] = prefix[i] + g.panel(x(i), x(i + 1))?;
    }
    let e = space.p / space.p0 - 1.0;
    let len_factor: Vec<f64> = (0..=n).map(|l| if l == 0 { 0.0 } else { (l as f64 * h).powf(e) }).collect();
    let (mut best, mut bi, mut bj) = (f64::NEG_INFINITY, 0, n);
    for i in 0..n {
        for j in i + 1..=n {
            let v = len_factor[j - i] * (prefix[j] - prefix[i]);
            if v > best {
                (best, bi, bj) = (v, i, j);
            }
        }
    }
    // local refinement of both endpoints within one cell of the grid optimum
    let objective = |a: f64, b: f64| -> Result<f64> {
        let inner = prefix[bj] - prefix[bi] + g.panel(a, x(bi))? + g.panel(x(bj), b)?;
        Ok((b - a).powf(e) * inner)
    };
    let (mut a, mut b) = (x(bi), x(bj));
    let min_len = 1e-3 * h;
    for _ in 0..2 {
        let lo = x(bi.saturating_sub(1));
        let hi = x((bi + 1).min(n)).min(b - min_len);
        if hi > lo {
            let (arg, val) = golden_max(lo, hi, |t| objective(t, b))?;
            if val > best {
                best = val;
                a = arg;
            }
        }
        let lo = x(bj.saturating_sub(1)).max(a + min_len);
        let hi = x((bj + 1).min(n));
        if hi > lo {
            let (arg, val) = golden_max(lo, hi, |t| objective(a, t))?;
            if val > best {
                best = val;
                b = arg;
            }
        }
    }
    Ok(best.max(0.0))
}

fn golden_max<F: Fn(f64) -> Result<f64>>(mut a: f64, mut b: f64, f: F) -> Result<(f64, f64)> {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let (mut best_x, mut best) = (a, f(a)?);
    let fb = f(b)?;
    if fb > best {
        (best_x, best) = (b, fb);
    }
    for _ in 0..40 {
        let c = b - r * (b - a);
        let dd = a + r * (b - a);
        let (fc, fd) = (f(c)?, f(dd)?);
        if fc > best {
            (best_x, best) = (c, fc);
        }
        if fd > best {
            (best_x, best) = (dd, fd);
        }
        if fc >= fd {
            b = dd;
        } else {
            a = c;
        }
    }
    Ok((best_x, best))
}

pub(super) fn morrey(space: &SpaceSpec, f: &FunctionHandle) -> Result<NormResult> {
    let g = MorreyIntegrand {
        f,
        w: if space.kind == SpaceKind::WeightedMorrey { space.weight.as_ref() } else { None },
        p: space.p,
        clipped: std::cell::Cell::new(false),
    };
    let value = morrey_at(space, &g, space.resolution)?.powf(1.0 / space.p);
    let coarse = morrey_at(space, &g, space.resolution / 2)?.powf(1.0 / space.p);
    Ok(NormResult { value, method: "", est_error: (value - coarse).abs(), clipped: g.clipped.get() })
}

#[cfg(test)]
mod tests {
    use super::super::norm;
    use super::*;
    use crate::funcspace::Domain;

    fn unit(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> FunctionHandle {
        FunctionHandle::new(Domain::Unit, f)
    }

    #[test]
    fn sup_includes_endpoints() {
        let r = norm(&SpaceSpec::sup(), &unit(|x| 1.0 - 2.0 * x).with_lipschitz(2.0)).unwrap();
        assert_eq!(r.value, 1.0);
        assert!(r.est_error > 0.0);
    }

    #[test]
    fn rearrangement_matches_brute_force_small() {
        let vals = [0.3, -1.2, 0.0, 2.0, 0.7];
        for kind in [SetExponent::WeakMp { p: 2.0 }, SetExponent::SmallMorrey { p: 1.5, lambda: 0.4 }] {
            let a = kind.rearrangement_supremum(&vals, 0.2);
            let b = set_supremum_brute_force(&vals, 0.2, kind).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn weak_mp_of_power_function() {
        // f = x^{-1/4}: sup_t t^{-1/2} ∫_0^t s^{-1/4} ds = sup_t (4/3) t^{1/4} = 4/3 (p = 2)
        let f = unit(|x| x.powf(-0.25));
        let r = norm(&SpaceSpec::weak_mp(2.0), &f).unwrap();
        assert!((r.value - 4.0 / 3.0).abs() < 2e-3, "{r:?}");
    }

    #[test]
    fn morrey_closed_form() {
        // f = x, p = 2, p0 = 4: f is increasing, so the best interval ends at 1 and
        // the functional is (1-a)^{1/4} ((1-a^3) / (3(1-a)))^{1/2}
        let r = norm(&SpaceSpec::morrey(2.0, 4.0), &unit(|x| x)).unwrap();
        let brute = (1..=4000)
            .map(|i| {
                let a = 1.0 - i as f64 / 4000.0;
                (((1.0 - a * a * a) / 3.0) / (1.0 - a)).sqrt() * (1.0 - a).powf(0.25)
            })
            .fold(0.0, f64::max);
        assert!((r.value - brute).abs() < 1e-6, "{} vs {brute}", r.value);
        // p = p0 gives the L^p norm over the whole interval
        let r = norm(&SpaceSpec::morrey(2.0, 2.0), &unit(|x| x)).unwrap();
        assert!((r.value - (1.0f64 / 3.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn weighted_morrey_unit_weight_matches_morrey() {
        let f = unit(|x| (4.0 * x).sin());
        let one = FunctionHandle::constant(Domain::Unit, 1.0);
        let a = norm(&SpaceSpec::morrey(1.5, 3.0), &f).unwrap().value;
        let b = norm(&SpaceSpec::weighted_morrey(1.5, 3.0, one), &f).unwrap().value;
        assert!((a - b).abs() < 1e-12);
    }
}

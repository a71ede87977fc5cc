use super::quadrature::{adapt, edges_with_breaks, panel_node};
use super::{Domain, FunctionHandle, QuadratureConfig};
use crate::error::{Error, Result};

/// A function tabulated at the nodes of an adaptively refined composite
/// Gauss–Kronrod mesh.
///
/// The mesh is refined until `∫|f|^q` meets the configured tolerance for every
/// requested exponent `q`; afterwards any integrand of the form `g(x, f(x))`
/// can be integrated without further evaluations of `f`. Both the Kronrod and
/// the embedded Gauss weights are kept, so every integral comes with a cheap
/// error estimate.
#[derive(Debug, Clone)]
pub struct Tabulation {
    domain: Domain,
    nodes: Vec<f64>,
    kronrod: Vec<f64>,
    gauss: Vec<f64>,
    values: Vec<f64>,
    aux: Vec<f64>,
    converged: bool,
    aux_clipped: bool,
}

impl Tabulation {
    /// Tabulates `f`, refining until `∫|f|^q` converges for each `q` in `exponents`.
    pub fn build(f: &FunctionHandle, exponents: &[f64], cfg: &QuadratureConfig) -> Result<Self> {
        let exps: Vec<f64> = if exponents.is_empty() { vec![1.0] } else { exponents.to_vec() };
        Self::build_inner(f, None, None, cfg, |v, _| exps.iter().map(|&q| v.abs().powf(q)).sum())
    }

    /// Tabulates `f` together with an auxiliary function `aux` (a weight or a
    /// variable exponent). Refinement is driven by `|f|` and by
    /// `criterion(f(x), aux(x))`. Auxiliary values above `clip` are clamped and
    /// reported through [`Tabulation::aux_clipped`].
    pub fn build_with_aux<C>(
        f: &FunctionHandle,
        aux: &FunctionHandle,
        clip: Option<f64>,
        cfg: &QuadratureConfig,
        criterion: C,
    ) -> Result<Self>
    where
        C: Fn(f64, f64) -> f64,
    {
        Self::build_inner(f, Some(aux), clip, cfg, |v, a| v.abs() + criterion(v, a))
    }

    fn build_inner<C>(
        f: &FunctionHandle,
        aux: Option<&FunctionHandle>,
        clip: Option<f64>,
        cfg: &QuadratureConfig,
        criterion: C,
    ) -> Result<Self>
    where
        C: Fn(f64, f64) -> f64,
    {
        let d = f.domain();
        let mut bps = f.breakpoints().to_vec();
        if let Some(a) = aux {
            if a.domain() != d {
                return Err(Error::DomainMismatch(format!("auxiliary function on {}, f on {d}", a.domain())));
            }
            bps.extend_from_slice(a.breakpoints());
        }
        bps.sort_by(f64::total_cmp);
        let clipped = std::cell::Cell::new(false);
        let eval_aux = |x: f64| -> Result<f64> {
            match aux {
                None => Ok(1.0),
                Some(a) => {
                    let v = a.eval(x);
                    match clip {
                        Some(_) if v.is_nan() => Err(Error::NonFiniteEvaluation { at: x, value: v }),
                        Some(c) if v > c => {
                            clipped.set(true);
                            Ok(c)
                        }
                        Some(_) if v < 0.0 => {
                            clipped.set(true);
                            Ok(0.0)
                        }
                        Some(_) => Ok(v),
                        None if v.is_finite() => Ok(v),
                        None => Err(Error::NonFiniteEvaluation { at: x, value: v }),
                    }
                }
            }
        };
        let edges = edges_with_breaks(d.lo(), d.hi(), &bps);
        let (panels, converged) = adapt(&edges, cfg, |a, b| {
            let mut vals = [(0.0, 0.0); 15];
            let (mut k, mut g) = (0.0, 0.0);
            for (i, v) in vals.iter_mut().enumerate() {
                let (x, wk, wg) = panel_node(a, b, i);
                *v = (f.try_eval(x)?, eval_aux(x)?);
                let t = criterion(v.0, v.1);
                k += wk * t;
                g += wg * t;
            }
            Ok((k, (k - g).abs(), vals))
        })?;
        let mut tab = Tabulation {
            domain: d,
            nodes: Vec::with_capacity(panels.len() * 15),
            kronrod: Vec::with_capacity(panels.len() * 15),
            gauss: Vec::with_capacity(panels.len() * 15),
            values: Vec::with_capacity(panels.len() * 15),
            aux: Vec::with_capacity(panels.len() * 15),
            converged,
            aux_clipped: clipped.get(),
        };
        for p in panels {
            for (i, (v, a)) in p.payload.iter().enumerate() {
                let (x, wk, wg) = panel_node(p.a, p.b, i);
                tab.nodes.push(x);
                tab.kronrod.push(wk);
                tab.gauss.push(wg);
                tab.values.push(*v);
                tab.aux.push(*a);
            }
        }
        Ok(tab)
    }

    /// Whether clamping of the auxiliary function was needed.
    pub fn aux_clipped(&self) -> bool {
        self.aux_clipped
    }

    /// Kronrod and Gauss estimates of `∫ g(f(x), aux(x)) dx`.
    pub fn integrate_aux<G: Fn(f64, f64) -> f64>(&self, g: G) -> (f64, f64) {
        let (mut k, mut gs) = (0.0, 0.0);
        for i in 0..self.nodes.len() {
            let t = g(self.values[i], self.aux[i]);
            k += self.kronrod[i] * t;
            gs += self.gauss[i] * t;
        }
        (k, gs)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn converged(&self) -> bool {
        self.converged
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Kronrod and Gauss estimates of `∫ g(x, f(x)) dx`.
    pub fn integrate<G: Fn(f64, f64) -> f64>(&self, g: G) -> (f64, f64) {
        let (mut k, mut gs) = (0.0, 0.0);
        for i in 0..self.nodes.len() {
            let t = g(self.nodes[i], self.values[i]);
            k += self.kronrod[i] * t;
            gs += self.gauss[i] * t;
        }
        (k, gs)
    }

    /// Same as [`Tabulation::integrate`] with a fallible integrand.
    pub fn try_integrate<G: Fn(f64, f64) -> f64>(&self, g: G) -> Result<(f64, f64)> {
        let (mut k, mut gs) = (0.0, 0.0);
        for i in 0..self.nodes.len() {
            let t = g(self.nodes[i], self.values[i]);
            if !t.is_finite() {
                return Err(Error::NonFiniteEvaluation { at: self.nodes[i], value: t });
            }
            k += self.kronrod[i] * t;
            gs += self.gauss[i] * t;
        }
        Ok((k, gs))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

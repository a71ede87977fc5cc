//! Function representations, quadrature, uniform grids and the decreasing
//! rearrangement. Everything else in the crate is built on these.

pub(crate) mod quadrature;
mod tabulation;

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

pub use quadrature::{integrate, integrate_fn, integrate_fn_detailed, QuadResult, QuadratureConfig};
pub use tabulation::Tabulation;

use crate::error::{Error, Result};

/// Shared, re-entrant real function of one real variable.
pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Tolerance for the evaluation checks done by [`FunctionHandle::validate`].
pub const EVAL_TOL: f64 = 1e-9;

/// The two intervals a [`FunctionHandle`] may live on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Domain {
    /// `[0, 1]`
    Unit,
    /// `[-π, π]`, carrying 2π-periodic functions
    Circle,
}

impl Domain {
    pub fn lo(self) -> f64 {
        match self {
            Domain::Unit => 0.0,
            Domain::Circle => -PI,
        }
    }

    pub fn hi(self) -> f64 {
        match self {
            Domain::Unit => 1.0,
            Domain::Circle => PI,
        }
    }

    pub fn length(self) -> f64 {
        self.hi() - self.lo()
    }

    pub fn contains(self, x: f64) -> bool {
        x >= self.lo() - 1e-12 && x <= self.hi() + 1e-12
    }

    /// `n` equispaced probe points including both endpoints.
    pub fn probes(self, n: usize) -> Vec<f64> {
        let n = n.max(2);
        (0..n)
            .map(|i| self.lo() + self.length() * i as f64 / (n - 1) as f64)
            .collect()
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Unit => f.write_str("[0,1]"),
            Domain::Circle => f.write_str("[-pi,pi]"),
        }
    }
}

/// An evaluable real function on [`Domain`] together with optional metadata.
///
/// Cloning is cheap; the evaluation rules are reference counted.
#[derive(Clone)]
pub struct FunctionHandle {
    name: String,
    domain: Domain,
    eval: RealFn,
    derivative: Option<RealFn>,
    lipschitz: Option<f64>,
    periodic: bool,
    breakpoints: Vec<f64>,
}

impl fmt::Debug for FunctionHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionHandle")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("has_derivative", &self.derivative.is_some())
            .field("lipschitz", &self.lipschitz)
            .field("periodic", &self.periodic)
            .field("breakpoints", &self.breakpoints)
            .finish()
    }
}

impl FunctionHandle {
    pub fn new<F>(domain: Domain, eval: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::from_arc(domain, Arc::new(eval))
    }

    pub fn from_arc(domain: Domain, eval: RealFn) -> Self {
        Self {
            name: String::from("f"),
            domain,
            eval,
            derivative: None,
            lipschitz: None,
            periodic: false,
            breakpoints: Vec::new(),
        }
    }

    /// The constant function `c` on `domain`; periodic on the circle.
    pub fn constant(domain: Domain, c: f64) -> Self {
        let h = Self::new(domain, move |_| c)
            .with_derivative(|_| 0.0)
            .with_lipschitz(0.0)
            .with_name(format!("const({c})"));
        if domain == Domain::Circle {
            h.periodic()
        } else {
            h
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_derivative<F>(mut self, d: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.derivative = Some(Arc::new(d));
        self
    }

    pub fn with_lipschitz(mut self, l: f64) -> Self {
        self.lipschitz = Some(l.abs());
        self
    }

    /// Marks the function as 2π-periodic. Only meaningful on [`Domain::Circle`].
    pub fn periodic(mut self) -> Self {
        self.periodic = true;
        self
    }

    /// Points where the function may fail to be smooth. Quadrature splits there.
    pub fn with_breakpoints(mut self, mut points: Vec<f64>) -> Self {
        let (lo, hi) = (self.domain.lo(), self.domain.hi());
        points.retain(|p| p.is_finite() && *p > lo && *p < hi);
        points.sort_by(f64::total_cmp);
        points.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        self.breakpoints = points;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn lipschitz(&self) -> Option<f64> {
        self.lipschitz
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn has_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    pub fn eval_fn(&self) -> &RealFn {
        &self.eval
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    /// Evaluates and rejects non-finite values.
    pub fn try_eval(&self, x: f64) -> Result<f64> {
        let v = (self.eval)(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteEvaluation { at: x, value: v })
        }
    }

    /// Evaluates at `x` reduced into the domain modulo 2π (periodic functions only).
    #[inline]
    pub fn eval_wrapped(&self, x: f64) -> f64 {
        (self.eval)(wrap_to_circle(x))
    }

    /// The derivative as a handle of its own (no Lipschitz information).
    pub fn derivative(&self) -> Option<FunctionHandle> {
        self.derivative.as_ref().map(|d| FunctionHandle {
            name: format!("{}'", self.name),
            domain: self.domain,
            eval: d.clone(),
            derivative: None,
            lipschitz: None,
            periodic: self.periodic,
            breakpoints: self.breakpoints.clone(),
        })
    }

    /// `a·self + b·other`, with merged breakpoints and derivative when both carry one.
    pub fn linear_combination(a: f64, f: &FunctionHandle, b: f64, g: &FunctionHandle) -> Result<Self> {
        if f.domain != g.domain {
            return Err(Error::DomainMismatch(format!("{} vs {}", f.domain, g.domain)));
        }
        let (fe, ge) = (f.eval.clone(), g.eval.clone());
        let mut out = FunctionHandle::new(f.domain, move |x| a * fe(x) + b * ge(x))
            .with_name(format!("{a}*{}+{b}*{}", f.name, g.name));
        if let (Some(fd), Some(gd)) = (f.derivative.clone(), g.derivative.clone()) {
            out.derivative = Some(Arc::new(move |x| a * fd(x) + b * gd(x)));
        }
        if let (Some(lf), Some(lg)) = (f.lipschitz, g.lipschitz) {
            out.lipschitz = Some(a.abs() * lf + b.abs() * lg);
        }
        out.periodic = f.periodic && g.periodic;
        let mut bps = f.breakpoints.clone();
        bps.extend_from_slice(&g.breakpoints);
        Ok(out.with_breakpoints(bps))
    }

    pub fn scaled(&self, a: f64) -> Self {
        let fe = self.eval.clone();
        let mut out = self.clone();
        out.eval = Arc::new(move |x| a * fe(x));
        out.derivative = self.derivative.clone().map(|d| -> RealFn { Arc::new(move |x| a * d(x)) });
        out.lipschitz = self.lipschitz.map(|l| l * a.abs());
        out.name = format!("{a}*{}", self.name);
        out
    }

    /// Checks the handle's invariants on a probe grid of `probes` points.
    pub fn validate(&self, probes: usize) -> Result<()> {
        let pts = self.domain.probes(probes);
        for &x in &pts {
            self.try_eval(x)?;
        }
        if let Some(d) = &self.derivative {
            let h = 1e-6 * self.domain.length();
            for &x in &pts[1..pts.len() - 1] {
                if self.breakpoints.iter().any(|b| (b - x).abs() < 2.0 * h) {
                    continue;
                }
                let fd = (self.eval(x + h) - self.eval(x - h)) / (2.0 * h);
                let dv = d(x);
                if !dv.is_finite() {
                    return Err(Error::NonFiniteEvaluation { at: x, value: dv });
                }
                if (fd - dv).abs() > 1e-4 * (1.0 + dv.abs()) {
                    return Err(Error::InvalidFunction(format!(
                        "derivative of {} disagrees with finite difference at {x}: {dv} vs {fd}",
                        self.name
                    )));
                }
            }
        }
        if self.periodic {
            if self.domain != Domain::Circle {
                return Err(Error::InvalidFunction(format!("{} is marked periodic on {}", self.name, self.domain)));
            }
            let (a, b) = (self.eval(-PI), self.eval(PI));
            if (a - b).abs() > EVAL_TOL * (1.0 + a.abs()) {
                return Err(Error::NotPeriodic);
            }
        }
        Ok(())
    }
}

/// Reduces `x` into `[-π, π)`.
#[inline]
pub fn wrap_to_circle(x: f64) -> f64 {
    let two_pi = 2.0 * PI;
    if (-PI..PI).contains(&x) {
        return x;
    }
    let r = (x + PI).rem_euclid(two_pi) - PI;
    if r >= PI {
        r - two_pi
    } else {
        r
    }
}

/// Values of a function at the midpoints of `N` uniform cells of its domain.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    domain: Domain,
    values: Vec<f64>,
}

impl SampledFunction {
    pub fn from_values(domain: Domain, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("sampled function needs at least one cell".into()));
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            let h = domain.length() / values.len() as f64;
            return Err(Error::NonFiniteEvaluation {
                at: domain.lo() + (i as f64 + 0.5) * h,
                value: *v,
            });
        }
        Ok(Self { domain, values })
    }

    pub fn grid_size(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn cell_width(&self) -> f64 {
        self.domain.length() / self.values.len() as f64
    }

    pub fn midpoint(&self, i: usize) -> f64 {
        cell_midpoint(self.domain, self.values.len(), i)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

#[inline]
pub fn cell_midpoint(domain: Domain, n: usize, i: usize) -> f64 {
    domain.lo() + (i as f64 + 0.5) * domain.length() / n as f64
}

/// Samples `f` at the midpoints of `grid_size` uniform cells.
pub fn sample(f: &FunctionHandle, grid_size: usize) -> Result<SampledFunction> {
    if grid_size == 0 {
        return Err(Error::InvalidArgument("grid_size must be at least 1".into()));
    }
    let values = (0..grid_size)
        .map(|i| f.try_eval(cell_midpoint(f.domain(), grid_size, i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SampledFunction { domain: f.domain(), values })
}

/// `|values|` sorted into nonincreasing order on the same grid.
pub fn decreasing_rearrangement(s: &SampledFunction) -> SampledFunction {
    let mut values: Vec<f64> = s.values.iter().map(|v| v.abs()).collect();
    values.sort_by(|a, b| b.total_cmp(a));
    SampledFunction { domain: s.domain, values }
}

//! Norms of Banach function spaces.
//!
//! Every kernel computes `ρ(|f|)` for one space kind and reports a
//! discretization-error estimate next to the value. Integral kernels (the
//! Lebesgue family, variable exponent, Orlicz) work on an adaptive
//! [`Tabulation`](crate::funcspace::Tabulation) and compare Kronrod against
//! embedded Gauss weights; grid kernels (sup, Morrey, rearrangement based)
//! compare resolution `N` against `N/2`.

mod integral;
mod orlicz;
mod sets;
mod weights;

use std::fmt;

use serde::Serialize;

pub use integral::{grand_objective, GRAND_EPS_NODES};
pub use orlicz::{orlicz_dual_estimate, YoungFunction};
pub use sets::{set_supremum_brute_force, SetExponent};
pub use weights::{muckenhoupt_constant, shift_deviation};

use crate::error::{Error, Result};
use crate::funcspace::{Domain, FunctionHandle, QuadratureConfig};

/// Default grid size for discretized suprema.
pub const DEFAULT_RESOLUTION: usize = 1024;
/// Weight values are clamped into `[0, WEIGHT_CLIP]`.
pub const WEIGHT_CLIP: f64 = 1e12;
/// Number of probe points used to validate weights and exponent functions.
const VALIDATION_PROBES: usize = 257;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SpaceKind {
    Sup,
    Lp,
    WeightedLp,
    GrandLp,
    WeightedGrandLp,
    VariableLp,
    Orlicz,
    Morrey,
    WeightedMorrey,
    SmallMorrey,
    WeakMp,
}

impl SpaceKind {
    pub const ALL: [SpaceKind; 11] = [
        SpaceKind::Sup,
        SpaceKind::Lp,
        SpaceKind::WeightedLp,
        SpaceKind::GrandLp,
        SpaceKind::WeightedGrandLp,
        SpaceKind::VariableLp,
        SpaceKind::Orlicz,
        SpaceKind::Morrey,
        SpaceKind::WeightedMorrey,
        SpaceKind::SmallMorrey,
        SpaceKind::WeakMp,
    ];
}

/// A function space together with its parameters.
#[derive(Debug, Clone)]
pub struct SpaceSpec {
    pub kind: SpaceKind,
    pub domain: Domain,
    pub p: f64,
    pub p0: f64,
    pub lambda: f64,
    pub weight: Option<FunctionHandle>,
    pub exponent_fn: Option<FunctionHandle>,
    pub young: Option<YoungFunction>,
    pub resolution: usize,
    pub quadrature: QuadratureConfig,
}

impl SpaceSpec {
    fn base(kind: SpaceKind, p: f64) -> Self {
        Self {
            kind,
            domain: Domain::Unit,
            p,
            p0: p,
            lambda: 0.5,
            weight: None,
            exponent_fn: None,
            young: None,
            resolution: DEFAULT_RESOLUTION,
            quadrature: QuadratureConfig::default(),
        }
    }

    pub fn sup() -> Self {
        Self::base(SpaceKind::Sup, f64::INFINITY)
    }

    pub fn lp(p: f64) -> Self {
        Self::base(SpaceKind::Lp, p)
    }

    pub fn weighted_lp(p: f64, w: FunctionHandle) -> Self {
        Self { weight: Some(w), ..Self::base(SpaceKind::WeightedLp, p) }
    }

    pub fn grand_lp(p: f64) -> Self {
        Self::base(SpaceKind::GrandLp, p)
    }

    pub fn weighted_grand_lp(p: f64, w: FunctionHandle) -> Self {
        Self { weight: Some(w), ..Self::base(SpaceKind::WeightedGrandLp, p) }
    }

    pub fn variable_lp(exponent: FunctionHandle) -> Self {
        Self { exponent_fn: Some(exponent), ..Self::base(SpaceKind::VariableLp, f64::NAN) }
    }

    pub fn orlicz(young: YoungFunction) -> Self {
        Self { young: Some(young), ..Self::base(SpaceKind::Orlicz, f64::NAN) }
    }

    pub fn morrey(p: f64, p0: f64) -> Self {
        Self { p0, ..Self::base(SpaceKind::Morrey, p) }
    }

    pub fn weighted_morrey(p: f64, p0: f64, w: FunctionHandle) -> Self {
        Self { p0, weight: Some(w), ..Self::base(SpaceKind::WeightedMorrey, p) }
    }

    pub fn small_morrey(p: f64, lambda: f64) -> Self {
        Self { lambda, ..Self::base(SpaceKind::SmallMorrey, p) }
    }

    pub fn weak_mp(p: f64) -> Self {
        Self::base(SpaceKind::WeakMp, p)
    }

    pub fn with_resolution(mut self, n: usize) -> Self {
        self.resolution = n;
        self
    }

    pub fn with_quadrature(mut self, cfg: QuadratureConfig) -> Self {
        self.quadrature = cfg;
        self
    }

    /// Moves the space to `[-π, π]` (only the sup norm and the Lebesgue
    /// family make sense there without weights).
    pub fn on_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    pub fn label(&self) -> String {
        let base = match self.kind {
            SpaceKind::Sup => "sup".to_string(),
            SpaceKind::Lp => format!("lp(p={})", self.p),
            SpaceKind::WeightedLp => format!("wlp(p={},w={})", self.p, weight_name(&self.weight)),
            SpaceKind::GrandLp => format!("grand(p={})", self.p),
            SpaceKind::WeightedGrandLp => format!("wgrand(p={},w={})", self.p, weight_name(&self.weight)),
            SpaceKind::VariableLp => format!("varlp(p={})", weight_name(&self.exponent_fn)),
            SpaceKind::Orlicz => format!("orlicz(phi={})", self.young.as_ref().map(|y| y.name()).unwrap_or("?")),
            SpaceKind::Morrey => format!("morrey(p={},p0={})", self.p, self.p0),
            SpaceKind::WeightedMorrey => {
                format!("wmorrey(p={},p0={},w={})", self.p, self.p0, weight_name(&self.weight))
            }
            SpaceKind::SmallMorrey => format!("smallmorrey(p={},lambda={})", self.p, self.lambda),
            SpaceKind::WeakMp => format!("weakmp(p={})", self.p),
        };
        match self.domain {
            Domain::Unit => base,
            Domain::Circle => format!("{base}@circle"),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSpace(format!("{}: {msg}", self.label())));
        let p = self.p;
        match self.kind {
            SpaceKind::Sup => {}
            SpaceKind::Lp => {
                if !(p >= 1.0 && p.is_finite()) {
                    return bad(format!("need 1 <= p < inf, got {p}"));
                }
            }
            SpaceKind::WeightedLp | SpaceKind::GrandLp | SpaceKind::WeightedGrandLp | SpaceKind::WeakMp => {
                if !(p > 1.0 && p.is_finite()) {
                    return bad(format!("need 1 < p < inf, got {p}"));
                }
            }
            SpaceKind::Morrey | SpaceKind::WeightedMorrey => {
                if !(p > 1.0 && p <= self.p0 && self.p0.is_finite()) {
                    return bad(format!("need 1 < p <= p0 < inf, got p={p}, p0={}", self.p0));
                }
            }
            SpaceKind::SmallMorrey => {
                if !(p >= 1.0 && p.is_finite()) {
                    return bad(format!("need 1 <= p < inf, got {p}"));
                }
                if !(self.lambda > 0.0 && self.lambda < 1.0) {
                    return bad(format!("need 0 < lambda < 1, got {}", self.lambda));
                }
            }
            SpaceKind::VariableLp => {
                let Some(e) = &self.exponent_fn else { return bad("missing exponent function".into()) };
                if e.domain() != self.domain {
                    return bad(format!("exponent function lives on {}", e.domain()));
                }
                for x in self.domain.probes(VALIDATION_PROBES) {
                    let v = e.eval(x);
                    if !(v > 1.0 && v.is_finite()) {
                        return bad(format!("exponent p({x}) = {v} is not in (1, inf)"));
                    }
                }
            }
            SpaceKind::Orlicz => {
                let Some(y) = &self.young else { return bad("missing Young function".into()) };
                y.validate()?;
            }
        }
        if matches!(self.kind, SpaceKind::WeightedLp | SpaceKind::WeightedGrandLp | SpaceKind::WeightedMorrey) {
            let Some(w) = &self.weight else { return bad("missing weight".into()) };
            if w.domain() != self.domain {
                return bad(format!("weight lives on {}", w.domain()));
            }
            for x in self.domain.probes(VALIDATION_PROBES) {
                let v = w.eval(x);
                if v < 0.0 || v.is_nan() {
                    return bad(format!("weight w({x}) = {v} is negative"));
                }
            }
        }
        if self.resolution < 4 {
            return bad(format!("resolution {} is too small", self.resolution));
        }
        self.quadrature.validate()
    }

    /// Largest exponent that appears in the kernel (used to steer refinement).
    fn top_exponent(&self) -> f64 {
        match self.kind {
            SpaceKind::Sup | SpaceKind::Orlicz | SpaceKind::VariableLp => 2.0,
            _ => self.p,
        }
    }
}

fn weight_name(w: &Option<FunctionHandle>) -> &str {
    w.as_ref().map(|w| w.name()).unwrap_or("?")
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// A norm value with its kernel label and error estimate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormResult {
    pub value: f64,
    pub method: &'static str,
    pub est_error: f64,
    /// Set when weight values had to be clamped into `[0, WEIGHT_CLIP]`.
    pub clipped: bool,
}

impl NormResult {
    fn zero(method: &'static str) -> Self {
        Self { value: 0.0, method, est_error: 0.0, clipped: false }
    }
}

fn is_identically_zero(f: &FunctionHandle, resolution: usize) -> Result<bool> {
    let d = f.domain();
    for n in [resolution.max(2), 1001] {
        for i in 0..=n {
            // non-finite samples count as nonzero and are left to the kernel
            if f.eval(d.lo() + d.length() * i as f64 / n as f64) != 0.0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn kernel_label(kind: SpaceKind) -> &'static str {
    match kind {
        SpaceKind::Sup => "sampled-max",
        SpaceKind::Lp => "lp-quadrature",
        SpaceKind::WeightedLp => "weighted-lp-quadrature",
        SpaceKind::GrandLp => "grand-eps-search",
        SpaceKind::WeightedGrandLp => "weighted-grand-eps-search",
        SpaceKind::VariableLp => "luxemburg-bisection",
        SpaceKind::Orlicz => "amemiya-minimization",
        SpaceKind::Morrey => "interval-supremum",
        SpaceKind::WeightedMorrey => "weighted-interval-supremum",
        SpaceKind::SmallMorrey => "rearrangement-supremum",
        SpaceKind::WeakMp => "rearrangement-supremum",
    }
}

/// `‖f‖_X = ρ(|f|)` for the space `space`.
pub fn norm(space: &SpaceSpec, f: &FunctionHandle) -> Result<NormResult> {
    space.validate()?;
    if f.domain() != space.domain {
        return Err(Error::DomainMismatch(format!("{} lives on {}, space on {}", f.name(), f.domain(), space.domain)));
    }
    let method = kernel_label(space.kind);
    if is_identically_zero(f, space.resolution)? {
        return Ok(NormResult::zero(method));
    }
    let mut r = match space.kind {
        SpaceKind::Sup => sets::sup_norm(f, space.resolution)?,
        SpaceKind::Lp | SpaceKind::WeightedLp => integral::lebesgue(space, f)?,
        SpaceKind::GrandLp | SpaceKind::WeightedGrandLp => integral::grand(space, f)?,
        SpaceKind::VariableLp => integral::variable(space, f)?,
        SpaceKind::Orlicz => orlicz::amemiya(space, f)?,
        SpaceKind::Morrey | SpaceKind::WeightedMorrey => sets::morrey(space, f)?,
        SpaceKind::SmallMorrey | SpaceKind::WeakMp => sets::rearrangement(space, f)?,
    };
    r.method = method;
    Ok(r)
}

/// `c₀ = ‖1‖_X`, the constant in `‖g‖_X ≤ c₀‖g‖_∞`.
pub fn fundamental_constant(space: &SpaceSpec) -> Result<NormResult> {
    norm(space, &FunctionHandle::constant(space.domain, 1.0))
}

//! Both sides of the quantitative Korovkin inequalities.
//!
//! Every report carries the raw values and the error budget used to decide
//! `holds`: the left side is compared against `rhs + err_lhs + err_rhs`.

mod rate;

pub use rate::{fit_slope, rate_sweep, RateReport, SlopeFit};

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcspace::{FunctionHandle, QuadratureConfig};
use crate::modulus::{modulus_of_continuity, ModulusEstimate};
use crate::norms::{fundamental_constant, norm, NormResult, SpaceSpec};
use crate::operators::{image, moment_function, OperatorSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundFlavor {
    ShishaMond,
    DeVore,
    TrigShishaMond,
    TrigDeVore,
}

impl BoundFlavor {
    pub const ALL: [BoundFlavor; 4] =
        [BoundFlavor::ShishaMond, BoundFlavor::DeVore, BoundFlavor::TrigShishaMond, BoundFlavor::TrigDeVore];

    pub fn is_trigonometric(self) -> bool {
        matches!(self, BoundFlavor::TrigShishaMond | BoundFlavor::TrigDeVore)
    }

    pub fn uses_derivative(self) -> bool {
        matches!(self, BoundFlavor::DeVore | BoundFlavor::TrigDeVore)
    }

    pub fn name(self) -> &'static str {
        match self {
            BoundFlavor::ShishaMond => "shisha-mond",
            BoundFlavor::DeVore => "devore",
            BoundFlavor::TrigShishaMond => "trig-shisha-mond",
            BoundFlavor::TrigDeVore => "trig-devore",
        }
    }

    /// Parses the names produced by [`BoundFlavor::name`], case-insensitively
    /// and ignoring `-` and `_`.
    pub fn parse(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| *c != '-' && *c != '_').collect::<String>().to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|f| f.name().replace('-', "") == key)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown bound flavor '{s}'")))
    }
}

impl fmt::Display for BoundFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundOptions {
    /// Quadrature used for operator images.
    pub quadrature: QuadratureConfig,
    /// Starting grid for ω and for the sampled sup norms of `f` and `f'`.
    pub modulus_resolution: usize,
    /// For unital operators, take `‖L_n 1‖_X = ‖1‖_X` and `L_n 1 - 1 = 0`
    /// without evaluating `L_n 1`.
    pub use_unital_shortcut: bool,
}

impl Default for BoundOptions {
    fn default() -> Self {
        Self { quadrature: QuadratureConfig::default(), modulus_resolution: 4096, use_unital_shortcut: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub space: String,
    pub flavor: BoundFlavor,
    /// `‖L_n f - f‖_X`.
    pub lhs: f64,
    pub mu_n: f64,
    /// `ω(f, μ_n)`, or `ω(f', μ_n)` for the derivative flavors.
    pub omega_val: f64,
    /// `‖L_n 1‖_X`.
    pub c: f64,
    pub term_unital: f64,
    pub term_main: f64,
    /// `(√c + 1) μ_n ω(f', μ_n)`; zero for the flavors without `f'`.
    pub term_drift: f64,
    pub rhs: f64,
    pub holds: bool,
    /// `lhs ≤ rhs` on raw values.
    pub strict_holds: bool,
    pub ratio: f64,
    pub est_error: f64,
    pub err_lhs: f64,
    pub err_rhs: f64,
}

/// `μ_n` with the underlying squared value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MuEstimate {
    pub mu: f64,
    pub mu_squared: f64,
    /// Error estimate for `mu`.
    pub est_error: f64,
}

fn check_domains(space: &SpaceSpec, op: &OperatorSpec) -> Result<()> {
    if space.domain != op.domain() {
        return Err(Error::DomainMismatch(format!("{} acts on {}, space {} on {}", op.label(), op.domain(), space.label(), space.domain)));
    }
    Ok(())
}

/// `μ_n = ‖L_n((x-·)²)(x)‖_X^{1/2}`, or `π ‖L_n(sin²((x-·)/2))(x)‖_X^{1/2}`
/// for trigonometric operators.
pub fn mu_n(space: &SpaceSpec, op: &OperatorSpec) -> Result<MuEstimate> {
    check_domains(space, op)?;
    let g = moment_function(op, &space.quadrature)?;
    let r = norm(space, &g)?;
    let scale = if op.is_trigonometric() { PI } else { 1.0 };
    let root = r.value.max(0.0).sqrt();
    let mu = scale * root;
    let est_error = if root > 0.0 {
        scale * r.est_error / (2.0 * root)
    } else {
        scale * r.est_error.sqrt()
    };
    Ok(MuEstimate { mu, mu_squared: mu * mu, est_error })
}

/// Sampled `‖g‖_∞` together with its slack.
fn sup_with_slack(g: &FunctionHandle, resolution: usize) -> Result<(f64, f64)> {
    let r = norm(&SpaceSpec::sup().on_domain(g.domain()).with_resolution(resolution), g)?;
    Ok((r.value, r.est_error))
}

struct UnitParts {
    /// `‖L_n 1‖_X`
    c: f64,
    /// `‖L_n 1 - 1‖_X`
    defect: f64,
    err_c: f64,
    err_defect: f64,
}

fn unit_parts(space: &SpaceSpec, op: &OperatorSpec, opts: &BoundOptions) -> Result<UnitParts> {
    if op.is_unital() && opts.use_unital_shortcut {
        let c = fundamental_constant(space)?;
        return Ok(UnitParts { c: c.value, defect: 0.0, err_c: c.est_error, err_defect: 0.0 });
    }
    let one = FunctionHandle::constant(space.domain, 1.0);
    let not_one = |e: Error| match e {
        Error::NonFiniteEvaluation { .. } => {
            Error::NonUnitalWithoutOne(format!("{} could not be evaluated on the constant 1", op.label()))
        }
        e => e,
    };
    let (l1, err_img) = image(op, &one, &opts.quadrature).map_err(not_one)?;
    let c = norm(space, &l1).map_err(not_one)?;
    let defect_fn = FunctionHandle::linear_combination(1.0, &l1, -1.0, &one)?;
    let defect = norm(space, &defect_fn).map_err(not_one)?;
    let c0 = fundamental_constant(space)?.value;
    Ok(UnitParts {
        c: c.value,
        defect: defect.value,
        err_c: c.est_error + c0 * err_img,
        err_defect: defect.est_error + c0 * err_img,
    })
}

/// `‖L_n f - f‖_X` and its error.
fn deviation(space: &SpaceSpec, op: &OperatorSpec, f: &FunctionHandle, opts: &BoundOptions) -> Result<NormResult> {
    let (lf, err_img) = image(op, f, &opts.quadrature)?;
    let diff = FunctionHandle::linear_combination(1.0, &lf, -1.0, f)?;
    let mut r = norm(space, &diff)?;
    let c0 = fundamental_constant(space)?.value;
    r.est_error += c0 * err_img;
    Ok(r)
}

/// Error in ω caused by an error `dmu` in its argument.
fn omega_shift_error(g: &FunctionHandle, est: &ModulusEstimate, dmu: f64) -> f64 {
    match g.lipschitz() {
        Some(l) => est.error_bound + l * dmu,
        None => est.error_bound,
    }
}

/// Evaluates one inequality of the requested flavor.
pub fn evaluate_bound(
    flavor: BoundFlavor,
    space: &SpaceSpec,
    op: &OperatorSpec,
    f: &FunctionHandle,
    opts: &BoundOptions,
) -> Result<BoundReport> {
    space.validate()?;
    op.validate()?;
    check_domains(space, op)?;
    if f.domain() != space.domain {
        return Err(Error::DomainMismatch(format!("{} lives on {}, space on {}", f.name(), f.domain(), space.domain)));
    }
    if flavor.is_trigonometric() != op.is_trigonometric() {
        return Err(Error::InvalidArgument(format!("flavor {flavor} does not fit operator {}", op.label())));
    }
    if flavor.is_trigonometric() && !f.is_periodic() {
        return Err(Error::NotPeriodic);
    }
    let fp = if flavor.uses_derivative() {
        let d = f.derivative().ok_or(Error::MissingDerivative)?;
        if flavor.is_trigonometric() && !d.is_periodic() {
            return Err(Error::NotPeriodic);
        }
        Some(d)
    } else {
        None
    };

    let lhs = deviation(space, op, f, opts)?;
    let mu = mu_n(space, op)?;
    let unit = unit_parts(space, op, opts)?;

    let (sup_f, sup_f_err) = if unit.defect == 0.0 { (0.0, 0.0) } else { sup_with_slack(f, opts.modulus_resolution)? };
    let term_unital = sup_f * unit.defect;
    let err_unital = sup_f_err * unit.defect + (sup_f + sup_f_err) * unit.err_defect;

    let (omega_val, term_main, term_drift, err_main) = match &fp {
        None => {
            let om = omega_or_zero(f, mu.mu, opts)?;
            let err_om = om.map_or(0.0, |e| omega_shift_error(f, &e, mu.est_error));
            let w = om.map_or(0.0, |e| e.value);
            let main = (unit.c + 1.0) * w;
            (w, main, 0.0, (unit.c + 1.0) * err_om + unit.err_c * w)
        }
        Some(d) => {
            let om = omega_or_zero(d, mu.mu, opts)?;
            let err_om = om.map_or(0.0, |e| omega_shift_error(d, &e, mu.est_error));
            let w = om.map_or(0.0, |e| e.value);
            let (sup_d, sup_d_err) = sup_with_slack(d, opts.modulus_resolution)?;
            let sc = unit.c.max(0.0).sqrt();
            let dsc = if sc > 0.0 { unit.err_c / (2.0 * sc) } else { unit.err_c.sqrt() };
            let main = sc * mu.mu * sup_d;
            let drift = (sc + 1.0) * mu.mu * w;
            let err = dsc * mu.mu * sup_d
                + sc * mu.est_error * sup_d
                + sc * mu.mu * sup_d_err
                + dsc * mu.mu * w
                + (sc + 1.0) * (mu.est_error * w + mu.mu * err_om);
            (w, main, drift, err)
        }
    };

    let rhs = term_unital + term_main + term_drift;
    let err_lhs = lhs.est_error;
    let err_rhs = err_unital + err_main;
    let ratio = if rhs > 0.0 {
        lhs.value / rhs
    } else if lhs.value == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(BoundReport {
        n: op.degree(),
        space: space.label(),
        flavor,
        lhs: lhs.value,
        mu_n: mu.mu,
        omega_val,
        c: unit.c,
        term_unital,
        term_main,
        term_drift,
        rhs,
        holds: lhs.value <= rhs + err_lhs + err_rhs,
        strict_holds: lhs.value <= rhs,
        ratio,
        est_error: err_lhs + err_rhs,
        err_lhs,
        err_rhs,
    })
}

/// ω(g, μ), skipping the estimate when `μ = 0`.
fn omega_or_zero(g: &FunctionHandle, mu: f64, opts: &BoundOptions) -> Result<Option<ModulusEstimate>> {
    if mu > 0.0 {
        Ok(Some(modulus_of_continuity(g, mu, opts.modulus_resolution)?))
    } else {
        Ok(None)
    }
}

/// `‖L_n f - f‖_X ≤ ‖f‖_∞ ‖L_n 1 - 1‖_X + (‖L_n 1‖_X + 1) ω(f, μ_n)`.
pub fn shisha_mond_bound(space: &SpaceSpec, op: &OperatorSpec, f: &FunctionHandle) -> Result<BoundReport> {
    evaluate_bound(BoundFlavor::ShishaMond, space, op, f, &BoundOptions::default())
}

/// `‖L_n f - f‖_X ≤ ‖f‖_∞ ‖L_n 1 - 1‖_X + √c μ_n ‖f'‖_∞ + (√c + 1) μ_n ω(f', μ_n)`.
pub fn devore_bound(space: &SpaceSpec, op: &OperatorSpec, f: &FunctionHandle) -> Result<BoundReport> {
    evaluate_bound(BoundFlavor::DeVore, space, op, f, &BoundOptions::default())
}

/// The periodic forms, with the trigonometric `μ_n` and ω taken on the circle.
/// `flavor` may name either the algebraic or the trigonometric variant.
pub fn trig_bound(space: &SpaceSpec, op: &OperatorSpec, f: &FunctionHandle, flavor: BoundFlavor) -> Result<BoundReport> {
    let flavor = match flavor {
        BoundFlavor::ShishaMond | BoundFlavor::TrigShishaMond => BoundFlavor::TrigShishaMond,
        BoundFlavor::DeVore | BoundFlavor::TrigDeVore => BoundFlavor::TrigDeVore,
    };
    if !f.is_periodic() {
        return Err(Error::NotPeriodic);
    }
    evaluate_bound(flavor, space, op, f, &BoundOptions::default())
}

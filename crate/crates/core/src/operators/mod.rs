//! Positive linear operators: Kantorovich polynomials on `[0,1]`, Fejér means
//! on the circle, and user-supplied positive operators.

mod fejer;
mod kantorovich;

use std::fmt;
use std::sync::Arc;

pub use fejer::{fejer_apply, fejer_kernel};
pub use kantorovich::{
    bernstein_weights, kantorovich_apply, kantorovich_moment1, kantorovich_moment2, kantorovich_second_central,
    KantorovichCells, DIRECT_WEIGHT_MAX_N,
};

use crate::error::{Error, Result};
use crate::funcspace::{Domain, FunctionHandle, QuadratureConfig};

/// Number of equispaced probe points for positivity and linearity checks.
pub const PROBE_POINTS: usize = 33;

/// Evaluation rule of a custom operator: `(f, x) ↦ L_n(f)(x)`.
pub type ApplyFn = Arc<dyn Fn(&FunctionHandle, f64) -> Result<f64> + Send + Sync>;

/// A positive linear operator given by an evaluation rule. Positivity is
/// probed when the operator is registered.
#[derive(Clone)]
pub struct CustomOperator {
    name: String,
    n: usize,
    domain: Domain,
    unital: bool,
    rule: ApplyFn,
}

impl fmt::Debug for CustomOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomOperator")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("domain", &self.domain)
            .field("unital", &self.unital)
            .finish()
    }
}

impl CustomOperator {
    pub fn register(
        name: impl Into<String>,
        n: usize,
        domain: Domain,
        unital: bool,
        rule: ApplyFn,
        cfg: &QuadratureConfig,
    ) -> Result<Self> {
        kantorovich::check_degree(n)?;
        let op = Self { name: name.into(), n, domain, unital, rule };
        op.check_positivity(cfg)?;
        if unital {
            let one = FunctionHandle::constant(domain, 1.0);
            for x in domain.probes(PROBE_POINTS) {
                let v = (op.rule)(&one, x)?;
                if (v - 1.0).abs() > 1e3 * cfg.abs_tol.max(1e-12) {
                    return Err(Error::InvalidOperator(format!(
                        "{} is flagged unital but L_n(1)({x}) = {v}",
                        op.name
                    )));
                }
            }
        }
        Ok(op)
    }

    fn check_positivity(&self, cfg: &QuadratureConfig) -> Result<()> {
        let probes = self.domain.probes(PROBE_POINTS);
        let mut tests: Vec<FunctionHandle> = vec![FunctionHandle::constant(self.domain, 1.0)];
        match self.domain {
            Domain::Unit => {
                tests.push(FunctionHandle::new(Domain::Unit, |t| t));
                tests.push(FunctionHandle::new(Domain::Unit, |t| 1.0 - t));
                tests.push(FunctionHandle::new(Domain::Unit, |t| (t - 0.5).abs()).with_breakpoints(vec![0.5]));
                for c in [0.0, 0.3, 1.0] {
                    tests.push(FunctionHandle::new(Domain::Unit, move |t| (t - c) * (t - c)));
                }
            }
            Domain::Circle => {
                tests.push(FunctionHandle::new(Domain::Circle, |t: f64| 1.0 + t.cos()).periodic());
                tests.push(FunctionHandle::new(Domain::Circle, |t: f64| 1.0 - t.sin()).periodic());
                for c in [0.0, 1.0, -2.0] {
                    tests.push(FunctionHandle::new(Domain::Circle, move |t: f64| ((t - c) / 2.0).sin().powi(2)).periodic());
                }
            }
        }
        for f in &tests {
            for &x in &probes {
                let v = (self.rule)(f, x)?;
                if !(v >= -10.0 * cfg.abs_tol) {
                    return Err(Error::InvalidOperator(format!(
                        "{} is not positive: L_n({})({x}) = {v}",
                        self.name,
                        f.name()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, f: &FunctionHandle, x: f64) -> Result<f64> {
        (self.rule)(f, x)
    }
}

/// Which operator to apply, with its degree parameter.
#[derive(Debug, Clone)]
pub enum OperatorSpec {
    Kantorovich { n: usize },
    Fejer { n: usize },
    Custom(CustomOperator),
}

impl OperatorSpec {
    pub fn degree(&self) -> usize {
        match self {
            OperatorSpec::Kantorovich { n } | OperatorSpec::Fejer { n } => *n,
            OperatorSpec::Custom(c) => c.n,
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            OperatorSpec::Kantorovich { .. } => Domain::Unit,
            OperatorSpec::Fejer { .. } => Domain::Circle,
            OperatorSpec::Custom(c) => c.domain,
        }
    }

    /// Whether `L_n(1) = 1` holds identically.
    pub fn is_unital(&self) -> bool {
        match self {
            OperatorSpec::Kantorovich { .. } | OperatorSpec::Fejer { .. } => true,
            OperatorSpec::Custom(c) => c.unital,
        }
    }

    /// True when the operator acts on 2π-periodic functions.
    pub fn is_trigonometric(&self) -> bool {
        self.domain() == Domain::Circle
    }

    pub fn label(&self) -> String {
        match self {
            OperatorSpec::Kantorovich { n } => format!("kantorovich(n={n})"),
            OperatorSpec::Fejer { n } => format!("fejer(n={n})"),
            OperatorSpec::Custom(c) => format!("{}(n={})", c.name, c.n),
        }
    }

    pub fn validate(&self) -> Result<()> {
        kantorovich::check_degree(self.degree())
    }
}

/// Applies `op` to `f` at `x`.
pub fn apply(op: &OperatorSpec, f: &FunctionHandle, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !op.domain().contains(x) {
        return Err(Error::InvalidArgument(format!("x = {x} is outside {}", op.domain())));
    }
    match op {
        OperatorSpec::Kantorovich { n } => kantorovich_apply(f, *n, x, cfg),
        OperatorSpec::Fejer { n } => fejer_apply(f, *n, x, cfg),
        OperatorSpec::Custom(c) => {
            if f.domain() != c.domain {
                return Err(Error::DomainMismatch(format!("{} acts on {}, f lives on {}", c.name, c.domain, f.domain())));
            }
            c.apply(f, x)
        }
    }
}

/// `L_n f` packaged as a function handle, plus a bound on the per-point
/// evaluation error.
///
/// Kantorovich images reuse the `n + 1` memoized cell integrals of `f`; the
/// other operators evaluate pointwise on demand and report failures as NaN,
/// which downstream consumers reject as non-finite.
pub fn image(op: &OperatorSpec, f: &FunctionHandle, cfg: &QuadratureConfig) -> Result<(FunctionHandle, f64)> {
    op.validate()?;
    let name = format!("{}[{}]", op.label(), f.name());
    match op {
        OperatorSpec::Kantorovich { n } => {
            let cells = KantorovichCells::new(f, *n, cfg)?;
            let err = cells.error_bound();
            Ok((cells.into_handle(name), err))
        }
        OperatorSpec::Fejer { n } => {
            fejer::check_periodic(f)?;
            let (f2, n, cfg2) = (f.clone(), *n, *cfg);
            let h = FunctionHandle::new(Domain::Circle, move |x| match fejer::fejer_eval(&f2, n, x, &cfg2) {
                Ok((v, _)) => v,
                Err(_) => f64::NAN,
            })
            .periodic()
            .with_name(name);
            // kernel integrals are converged to the quadrature tolerance at every point
            let err = cfg.abs_tol.max(cfg.rel_tol * probe_scale(f));
            Ok((h, err))
        }
        OperatorSpec::Custom(c) => {
            if f.domain() != c.domain {
                return Err(Error::DomainMismatch(format!("{} acts on {}, f lives on {}", c.name, c.domain, f.domain())));
            }
            let (f2, c2) = (f.clone(), c.clone());
            let mut h = FunctionHandle::new(c.domain, move |x| c2.apply(&f2, x).unwrap_or(f64::NAN)).with_name(name);
            if c.domain == Domain::Circle {
                h = h.periodic();
            }
            Ok((h, cfg.abs_tol))
        }
    }
}

fn probe_scale(f: &FunctionHandle) -> f64 {
    f.domain().probes(PROBE_POINTS).iter().fold(0.0, |m, &x| m.max(f.eval(x).abs()))
}

/// The second-moment function `x ↦ L_n((x - ·)²)(x)` for algebraic operators,
/// or `x ↦ L_n(sin²((x - ·)/2))(x)` for trigonometric ones.
pub fn moment_function(op: &OperatorSpec, cfg: &QuadratureConfig) -> Result<FunctionHandle> {
    op.validate()?;
    let n = op.degree();
    let name = format!("moment2[{}]", op.label());
    Ok(match op {
        OperatorSpec::Kantorovich { n } => {
            let n = *n;
            FunctionHandle::new(Domain::Unit, move |x| kantorovich_second_central(n, x))
                .with_derivative(move |x| (n as f64 - 1.0) * (1.0 - 2.0 * x) / ((n + 1) as f64).powi(2))
                .with_name(name)
        }
        OperatorSpec::Fejer { .. } => {
            let cfg = *cfg;
            FunctionHandle::new(Domain::Circle, move |x| {
                let g = FunctionHandle::new(Domain::Circle, move |t: f64| ((x - t) / 2.0).sin().powi(2)).periodic();
                fejer::fejer_eval(&g, n, x, &cfg).map(|r| r.0).unwrap_or(f64::NAN)
            })
            .periodic()
            .with_name(name)
        }
        OperatorSpec::Custom(c) => {
            let c = c.clone();
            let domain = c.domain;
            let h = FunctionHandle::new(domain, move |x| {
                let g = match domain {
                    Domain::Unit => FunctionHandle::new(Domain::Unit, move |t| (x - t) * (x - t)),
                    Domain::Circle => {
                        FunctionHandle::new(Domain::Circle, move |t: f64| ((x - t) / 2.0).sin().powi(2)).periodic()
                    }
                };
                c.apply(&g, x).unwrap_or(f64::NAN)
            })
            .with_name(name);
            if domain == Domain::Circle {
                h.periodic()
            } else {
                h
            }
        }
    })
}

/// A degree-indexed operator family, used by rate sweeps.
#[derive(Clone)]
pub enum OperatorFamily {
    Kantorovich,
    Fejer,
    Custom(Arc<dyn Fn(usize) -> Result<CustomOperator> + Send + Sync>),
}

impl fmt::Debug for OperatorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorFamily::Kantorovich => f.write_str("Kantorovich"),
            OperatorFamily::Fejer => f.write_str("Fejer"),
            OperatorFamily::Custom(_) => f.write_str("Custom"),
        }
    }
}

impl OperatorFamily {
    pub fn at(&self, n: usize) -> Result<OperatorSpec> {
        let op = match self {
            OperatorFamily::Kantorovich => OperatorSpec::Kantorovich { n },
            OperatorFamily::Fejer => OperatorSpec::Fejer { n },
            OperatorFamily::Custom(make) => OperatorSpec::Custom(make(n)?),
        };
        op.validate()?;
        Ok(op)
    }

    pub fn domain(&self) -> Domain {
        match self {
            OperatorFamily::Kantorovich => Domain::Unit,
            OperatorFamily::Fejer => Domain::Circle,
            OperatorFamily::Custom(make) => make(1).map(|c| c.domain).unwrap_or(Domain::Unit),
        }
    }
}

/// Identity operator, mostly useful for tests and as a registration example.
pub fn identity_operator(domain: Domain, cfg: &QuadratureConfig) -> Result<CustomOperator> {
    CustomOperator::register("identity", 1, domain, true, Arc::new(|f: &FunctionHandle, x| f.try_eval(x)), cfg)
}

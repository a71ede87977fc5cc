//! Kantorovich polynomials `K_n(f)(x) = (n+1) Σ C(n,k) x^k (1-x)^(n-k) ∫_{k/(n+1)}^{(k+1)/(n+1)} f`.

use crate::error::{Error, Result};
use crate::funcspace::{integrate_fn_detailed, Domain, FunctionHandle, QuadratureConfig};

/// Largest degree for which the binomial weights use the plain multiplicative recurrence.
pub const DIRECT_WEIGHT_MAX_N: usize = 60;

/// Bernstein basis values `C(n,k) x^k (1-x)^(n-k)`, `k = 0..=n`.
pub fn bernstein_weights(n: usize, x: f64) -> Vec<f64> {
    let mut w = vec![0.0; n + 1];
    bernstein_weights_into(n, x, &mut w);
    w
}

pub(crate) fn bernstein_weights_into(n: usize, x: f64, w: &mut [f64]) {
    debug_assert_eq!(w.len(), n + 1);
    if x <= 0.0 {
        w.fill(0.0);
        w[0] = 1.0;
        return;
    }
    if x >= 1.0 {
        w.fill(0.0);
        w[n] = 1.0;
        return;
    }
    let y = 1.0 - x;
    if n <= DIRECT_WEIGHT_MAX_N {
        let mut c = 1.0;
        for (k, wk) in w.iter_mut().enumerate() {
            if k > 0 {
                c = c * (n - k + 1) as f64 / k as f64;
            }
            *wk = c * x.powi(k as i32) * y.powi((n - k) as i32);
        }
    } else {
        let (lx, ly) = (x.ln(), y.ln());
        let mut lc = 0.0;
        for (k, wk) in w.iter_mut().enumerate() {
            if k > 0 {
                lc += ((n - k + 1) as f64).ln() - (k as f64).ln();
            }
            *wk = (lc + k as f64 * lx + (n - k) as f64 * ly).exp();
        }
    }
}

/// `K_n(t)(x) = (2nx + 1) / (2(n+1))`.
pub fn kantorovich_moment1(n: usize, x: f64) -> f64 {
    let n = n as f64;
    (2.0 * n * x + 1.0) / (2.0 * (n + 1.0))
}

/// `K_n(t²)(x) = (3n(n-1)x² + 6nx + 1) / (3(n+1)²)`.
pub fn kantorovich_moment2(n: usize, x: f64) -> f64 {
    let n = n as f64;
    (3.0 * n * (n - 1.0) * x * x + 6.0 * n * x + 1.0) / (3.0 * (n + 1.0) * (n + 1.0))
}

/// `K_n((x - t)²)(x)`, which simplifies to `((n-1)x(1-x) + 1/3) / (n+1)²`.
pub fn kantorovich_second_central(n: usize, x: f64) -> f64 {
    let m = n as f64 + 1.0;
    ((n as f64 - 1.0) * x * (1.0 - x) + 1.0 / 3.0) / (m * m)
}

/// The `n + 1` cell integrals of `f`, computed once and reused for every
/// evaluation point.
#[derive(Debug, Clone)]
pub struct KantorovichCells {
    n: usize,
    integrals: Vec<f64>,
    max_cell_error: f64,
}

impl KantorovichCells {
    pub fn new(f: &FunctionHandle, n: usize, cfg: &QuadratureConfig) -> Result<Self> {
        check_degree(n)?;
        if f.domain() != Domain::Unit {
            return Err(Error::DomainMismatch(format!("Kantorovich operators act on [0,1], got {}", f.domain())));
        }
        let m = (n + 1) as f64;
        let mut integrals = Vec::with_capacity(n + 1);
        let mut max_cell_error: f64 = 0.0;
        for k in 0..=n {
            let (a, b) = (k as f64 / m, (k + 1) as f64 / m);
            let r = integrate_fn_detailed(|t| f.eval(t), a, b, f.breakpoints(), cfg)?;
            max_cell_error = max_cell_error.max(r.abs_error);
            integrals.push(r.value);
        }
        Ok(Self { n, integrals, max_cell_error })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn integrals(&self) -> &[f64] {
        &self.integrals
    }

    /// Bound on the quadrature and rounding error carried into any single
    /// evaluation.
    pub fn error_bound(&self) -> f64 {
        let m = (self.n + 1) as f64;
        let scale = self.integrals.iter().fold(0.0f64, |a, i| a.max(i.abs()));
        m * self.max_cell_error + 2.0 * (m + 2.0) * f64::EPSILON * m * scale
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut w = vec![0.0; self.n + 1];
        self.eval_with(x, &mut w)
    }

    fn eval_with(&self, x: f64, scratch: &mut [f64]) -> f64 {
        bernstein_weights_into(self.n, x.clamp(0.0, 1.0), scratch);
        let s: f64 = scratch.iter().zip(&self.integrals).map(|(w, i)| w * i).sum();
        (self.n + 1) as f64 * s
    }

    /// `K_n f` as a function handle on `[0, 1]`.
    pub fn into_handle(self, name: impl Into<String>) -> FunctionHandle {
        FunctionHandle::new(Domain::Unit, move |x| self.eval(x)).with_name(name)
    }
}

pub(crate) fn check_degree(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidOperator("degree n must be at least 1".into()));
    }
    Ok(())
}

/// `K_n(f)(x)` by direct evaluation of the defining sum.
pub fn kantorovich_apply(f: &FunctionHandle, n: usize, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !Domain::Unit.contains(x) {
        return Err(Error::InvalidArgument(format!("x = {x} is outside [0,1]")));
    }
    Ok(KantorovichCells::new(f, n, cfg)?.eval(x))
}

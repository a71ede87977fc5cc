//! Numerical toolkit for quantitative Korovkin-type approximation.
//!
//! The crate is organised bottom-up:
//!
//! - [`funcspace`]: function handles, adaptive quadrature, uniform grids and
//!   the decreasing rearrangement.
//! - [`operators`]: Kantorovich polynomials, Fejér means and custom positive
//!   linear operators.
//! - [`norms`]: norms of Banach function spaces on `[0,1]` (and the circle):
//!   Lebesgue, weighted, grand, variable-exponent, Orlicz, Morrey, small
//!   Morrey and weak Lebesgue.
//! - [`modulus`]: the modulus of continuity `ω(f, δ)`.
//! - [`bounds`]: both sides of the Shisha–Mond and DeVore type estimates
//!   `‖L_n f - f‖_X ≤ …` and log-log convergence-rate fits.
//! - [`library`]: the builtin function corpus.

pub mod bounds;
pub mod error;
pub mod funcspace;
pub mod library;
pub mod modulus;
pub mod norms;
pub mod operators;

pub use bounds::{BoundFlavor, BoundOptions, BoundReport, RateReport, SlopeFit};
pub use error::{Error, Result};
pub use funcspace::{Domain, FunctionHandle, QuadratureConfig, SampledFunction};
pub use modulus::ModulusEstimate;
pub use norms::{NormResult, SpaceKind, SpaceSpec};
pub use operators::{OperatorFamily, OperatorSpec};

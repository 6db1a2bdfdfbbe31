//! Arbitrary-precision evaluation of the generalised Wright function pPsi_q
//! and the generalised Bessel function 0Psi_1.
//!
//! The crate provides two evaluation routes:
//!
//! * a convergent defining-series evaluator with cancellation-safe precision
//!   escalation (the ground-truth oracle), and
//! * the large-|z| exponential and algebraic asymptotic expansions, with
//!   machine-generated expansion coefficients, sector selection over arg z,
//!   and the exponentially small Stokes-line terms.

pub mod complex;
pub mod error;
pub mod coeffs;
pub mod eval;
pub mod gamma;
pub mod params;
pub mod real;
pub mod series;
pub mod stokes;

pub use complex::Cplx;
pub use error::{Error, Result};
pub use eval::{eval_series, EvalResult};
pub use params::{Convergence, Shift, WrightParams};
pub use real::{bits_for_digits, digits_for_bits, Real};
pub use series::TruncatedSeries;

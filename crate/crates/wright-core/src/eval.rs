//! Convergent defining-series evaluation of pPsi_q: the ground-truth oracle.
//!
//! Terms are formed directly as g(n) z^n / n! with the entire reciprocal
//! gamma on the lower parameters, so pole-crossing terms vanish exactly.
//! Working precision escalates until two successive passes agree to the
//! requested digits, absorbing the catastrophic cancellation that occurs
//! when the sum is exponentially smaller than its peak term.

use rug::Rational;

use crate::complex::Cplx;
use crate::error::{Error, Result};
use crate::gamma::{gamma, rgamma};
use crate::params::{Convergence, WrightParams};
use crate::real::{bits_for_digits, Real};

/// Result of a series evaluation.
#[derive(Clone, Debug)]
pub struct EvalResult {
    pub value: Cplx,
    /// Number of series terms summed in the final pass.
    pub terms: usize,
    /// Working precision (decimal digits) of the final pass.
    pub working_digits: u32,
    /// Heuristic bound on the truncated tail.
    pub tail_bound: Real,
}

/// Hard cap on escalation, as a multiple of the requested digits.
const MAX_ESCALATIONS: usize = 8;

fn default_digit_cap(digits: u32) -> u32 {
    (8 * digits).max(digits + 400)
}

/// One summation pass at fixed working precision.
///
/// `stop_scale`: |terms| below 10^{-(digits+5)} * stop_scale (for 8
/// consecutive n past the peak index) end the pass.
fn sum_pass(
    params: &WrightParams,
    z: &Cplx,
    digits: u32,
    work_digits: u32,
    stop_scale: Option<&Real>,
) -> Result<(Cplx, Real, usize, Real)> {
    let pw = bits_for_digits(work_digits);
    let zw = z.with_prec(pw);
    let mut sum = Cplx::zero(pw);
    let mut peak = Real::zero(pw);
    let mut peak_idx = 0usize;
    let mut max_partial = Real::zero(pw);
    let mut z_pow = Cplx::one(pw);
    let mut factorial = Real::one(pw);
    let mut below = 0usize;
    let mut last_mag = Real::zero(pw);
    let threshold_unit = Real::exp10i(pw, -(digits as i64) - 5);
    let mut n = 0usize;
    loop {
        // g(n) = prod Gamma(alpha n + a) * prod 1/Gamma(beta n + b)
        let mut g = Cplx::one(pw);
        for (w, s) in params.upper() {
            let arg = Cplx::from_rational(pw, w).mul_i64(n as i64).add(&s.to_cplx(pw));
            g = g.mul(&gamma(&arg).map_err(|_| {
                Error::Parameter(format!("upper gamma pole at term n = {}", n))
            })?);
        }
        for (w, s) in params.lower() {
            let arg = Cplx::from_rational(pw, w).mul_i64(n as i64).add(&s.to_cplx(pw));
            g = g.mul(&rgamma(&arg));
        }
        let term = g.mul(&z_pow).div_real(&factorial);
        sum = sum.add(&term);
        let mag = term.abs();
        if mag > peak {
            peak = mag.clone();
            peak_idx = n;
        }
        let partial_mag = sum.abs();
        if partial_mag > max_partial {
            max_partial = partial_mag;
        }
        let scale = match stop_scale {
            Some(s) => s.clone(),
            None => max_partial.clone(),
        };
        let thresh = threshold_unit.mul(&scale);
        if n > peak_idx && mag < thresh {
            below += 1;
            if below >= 8 {
                last_mag = mag;
                break;
            }
        } else {
            below = 0;
        }
        if z.is_zero() {
            last_mag = Real::zero(pw);
            break;
        }
        n += 1;
        if n > 2_000_000 {
            return Err(Error::PrecisionCeiling {
                requested_digits: digits,
                needed_digits: work_digits,
            });
        }
        z_pow = z_pow.mul(&zw);
        factorial = factorial.mul_i64(n as i64);
    }
    Ok((sum, peak, n + 1, last_mag))
}

fn agree_to_digits(a: &Cplx, b: &Cplx, digits: u32) -> bool {
    let p = a.prec().min(b.prec());
    let scale = b.abs();
    let tol = Real::exp10i(p, -(digits as i64)).mul(&scale);
    a.sub(b).abs() <= tol
}

/// Evaluate pPsi_q(z) by its defining series to the requested digits.
pub fn eval_series(params: &WrightParams, z: &Cplx, digits: u32) -> Result<EvalResult> {
    eval_series_capped(params, z, digits, default_digit_cap(digits))
}

/// [`eval_series`] with an explicit cap on working-precision escalation.
pub fn eval_series_capped(
    params: &WrightParams,
    z: &Cplx,
    digits: u32,
    cap_digits: u32,
) -> Result<EvalResult> {
    match params.classify() {
        Convergence::Entire => {}
        Convergence::FiniteRadius => {
            let prec = bits_for_digits(digits + 10);
            let radius = params.radius(prec)?;
            if !(z.abs().with_prec(prec) < radius) {
                return Err(Error::DivergentSeries(format!(
                    "kappa = 0 series converges only for |z| < {:e}",
                    radius.to_f64()
                )));
            }
        }
        Convergence::Divergent => {
            return Err(Error::DivergentSeries("kappa < 0".into()));
        }
    }

    let mut work = digits + 15;
    let mut prev: Option<(Cplx, Real, usize, Real)> = None;
    for _ in 0..MAX_ESCALATIONS {
        let stop_scale = prev.as_ref().map(|(v, _, _, _)| {
            let m = v.abs();
            if m.is_zero() {
                Real::exp10i(m.prec(), -(digits as i64))
            } else {
                m
            }
        });
        let pass = sum_pass(params, z, digits, work, stop_scale.as_ref())?;
        if let Some((prev_val, _, _, _)) = &prev {
            if agree_to_digits(&pass.0, prev_val, digits) {
                let (value, _, terms, last_mag) = pass;
                let out_prec = bits_for_digits(digits);
                return Ok(EvalResult {
                    value: value.with_prec(out_prec),
                    terms,
                    working_digits: work,
                    tail_bound: last_mag.mul_i64(4).with_prec(out_prec),
                });
            }
        }
        // cancellation: digits lost between the peak term and the result
        let (val, peak, _, _) = &pass;
        let vmag = val.abs();
        let lost = if peak.is_zero() || vmag.is_zero() {
            digits as i64
        } else {
            let ratio = peak.div(&vmag);
            ratio.log10().to_f64().ceil().max(0.0) as i64
        };
        let needed = digits as i64 + lost + 10;
        prev = Some(pass);
        let next = needed.max(work as i64 + 10) as u32;
        if next > cap_digits {
            return Err(Error::PrecisionCeiling {
                requested_digits: digits,
                needed_digits: next,
            });
        }
        work = next;
    }
    Err(Error::PrecisionCeiling {
        requested_digits: digits,
        needed_digits: work,
    })
}

/// Both sides of the reflection identity splitting 0Psi_1 into 1Psi_0 parts:
/// lhs = 0Psi_1(z) by direct series, rhs = the combination
/// (1/2pi) { e^{i pi theta} 1Psi_0(z e^{i pi sigma}) + e^{-i pi theta} 1Psi_0(z e^{-i pi sigma}) }.
pub fn psi01_split(
    sigma: &Rational,
    b: &crate::params::Shift,
    z: &Cplx,
    digits: u32,
) -> Result<(Cplx, Cplx)> {
    if !(sigma.clone() > 0 && sigma.clone() < 1) {
        return Err(Error::Parameter("psi01_split needs 0 < sigma < 1".into()));
    }
    let a = -sigma.clone();
    let psi01 = WrightParams::psi01(a, b.clone())?;
    let lhs = eval_series(&psi01, z, digits)?.value;

    let pw = bits_for_digits(digits + 15);
    let pi = Real::pi(pw);
    // delta = 1 - b, theta = 1/2 - b
    let one = Cplx::one(pw);
    let bc = b.to_cplx(pw);
    let delta = match b.as_rational() {
        Some(r) => crate::params::Shift::Exact(Rational::from(1) - r),
        None => crate::params::Shift::Inexact(one.sub(&bc)),
    };
    let theta = Cplx::from_rational(pw, &Rational::from((1, 2))).sub(&bc);
    let psi10 = WrightParams::psi10(sigma.clone(), delta)?;

    let rot = Cplx::from_polar(&Real::one(pw), &pi.mul(&Real::from_rational(pw, sigma)));
    let zp = z.with_prec(pw).mul(&rot);
    let zm = z.with_prec(pw).mul(&rot.conj());
    let vp = eval_series(&psi10, &zp, digits + 5)?.value.with_prec(pw);
    let vm = eval_series(&psi10, &zm, digits + 5)?.value.with_prec(pw);
    let ephase = theta.mul_i().mul_real(&pi).exp();
    let rhs = ephase
        .mul(&vp)
        .add(&ephase.recip().mul(&vm))
        .div_real(&pi.mul_i64(2))
        .with_prec(bits_for_digits(digits));
    Ok((lhs, rhs))
}

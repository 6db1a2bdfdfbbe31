//! Parameter lists for the generalised Wright function and the derived
//! quantities kappa, h, theta that control its asymptotics.

use rug::{Complete, Rational};

use crate::complex::Cplx;
use crate::error::{Error, Result};
use crate::real::Real;

/// A gamma-argument offset (the a_r / b_r parameters): kept exact when the
/// input is rational so coefficient recursions can run in exact arithmetic.
#[derive(Clone, Debug)]
pub enum Shift {
    Exact(Rational),
    Inexact(Cplx),
}

impl Shift {
    pub fn from_i64(v: i64) -> Self {
        Shift::Exact(Rational::from(v))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Shift::Exact(r) => Some(r),
            Shift::Inexact(_) => None,
        }
    }

    pub fn to_cplx(&self, prec: u32) -> Cplx {
        match self {
            Shift::Exact(r) => Cplx::from_rational(prec, r),
            Shift::Inexact(c) => c.with_prec(prec),
        }
    }

    pub fn to_real(&self, prec: u32) -> Real {
        match self {
            Shift::Exact(r) => Real::from_rational(prec, r),
            Shift::Inexact(c) => c.re().with_prec(prec),
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            Shift::Exact(_) => true,
            Shift::Inexact(c) => c.is_real(),
        }
    }

    fn add(&self, o: &Shift, prec: u32) -> Shift {
        match (self, o) {
            (Shift::Exact(a), Shift::Exact(b)) => Shift::Exact((a + b).complete()),
            _ => Shift::Inexact(self.to_cplx(prec).add(&o.to_cplx(prec))),
        }
    }

    fn sub_from_rational(r: &Rational, o: &Shift, prec: u32) -> Shift {
        match o {
            Shift::Exact(b) => Shift::Exact((r - b).complete()),
            Shift::Inexact(c) => Shift::Inexact(Cplx::from_rational(prec, r).sub(c)),
        }
    }
}

/// Parameter lists (alpha_r, a_r), (beta_r, b_r) of pPsi_q.
///
/// Weights are exact rationals. Upper weights must be positive and satisfy
/// the no-pole condition (alpha_r n + a_r never a nonpositive integer).
/// Lower weights are allowed to be negative (the generalised Bessel function
/// with -1 < a < 0 is summed through the entire reciprocal gamma), as long
/// as kappa stays positive.
#[derive(Clone, Debug)]
pub struct WrightParams {
    upper: Vec<(Rational, Shift)>,
    lower: Vec<(Rational, Shift)>,
}

/// Convergence class of the defining series.
#[derive(Clone, Debug, PartialEq)]
pub enum Convergence {
    Entire,
    /// kappa = 0: converges inside |z| < 1/h.
    FiniteRadius,
    Divergent,
}

/// Default precision (bits) used for exactness checks inside validation.
const CHECK_PREC: u32 = 96;

impl WrightParams {
    /// Build and validate a parameter set (Wright function convention).
    pub fn derive(upper: Vec<(Rational, Shift)>, lower: Vec<(Rational, Shift)>) -> Result<Self> {
        for (w, s) in &upper {
            if *w <= 0 {
                return Err(Error::Parameter(format!("upper weight {} must be positive", w)));
            }
            if let Some(a) = s.as_rational() {
                // alpha n + a = -m for integers n, m >= 0?
                let mut m = Rational::new();
                loop {
                    let num = -(m.clone() + a);
                    if num < 0 {
                        break;
                    }
                    let n = num / w;
                    if n.is_integer() {
                        return Err(Error::Parameter(format!(
                            "upper gamma argument hits the pole at -{} (n = {})",
                            m, n
                        )));
                    }
                    m += 1;
                }
            } else if let Shift::Inexact(c) = s {
                if c.is_real() && c.re().is_integer() && !(c.re() > Real::zero(CHECK_PREC)) {
                    return Err(Error::Parameter(
                        "upper gamma argument hits a pole at n = 0".into(),
                    ));
                }
            }
        }
        for (w, _) in &lower {
            if *w == 0 {
                return Err(Error::Parameter("lower weight must be nonzero".into()));
            }
        }
        Ok(WrightParams { upper, lower })
    }

    /// Parameter set for asymptotic-coefficient use only: skips the series
    /// no-pole condition (the inverse factorial expansion is defined even
    /// when finitely many series terms would hit gamma poles).
    pub fn derive_formal(
        upper: Vec<(Rational, Shift)>,
        lower: Vec<(Rational, Shift)>,
    ) -> Result<Self> {
        for (w, _) in &upper {
            if *w <= 0 {
                return Err(Error::Parameter(format!("upper weight {} must be positive", w)));
            }
        }
        for (w, _) in &lower {
            if *w == 0 {
                return Err(Error::Parameter("lower weight must be nonzero".into()));
            }
        }
        Ok(WrightParams { upper, lower })
    }

    /// 0Psi_1 with lower pair (a, b); a may lie in (-1, 0).
    pub fn psi01(a: Rational, b: Shift) -> Result<Self> {
        WrightParams::derive(vec![], vec![(a, b)])
    }

    /// 1Psi_0 with upper pair (sigma, delta), 0 < sigma < 1.
    pub fn psi10(sigma: Rational, delta: Shift) -> Result<Self> {
        WrightParams::derive(vec![(sigma, delta)], vec![])
    }

    /// 1Psi_0 parameters for expansion data, without the no-pole check.
    pub fn psi10_formal(sigma: Rational, delta: Shift) -> Result<Self> {
        WrightParams::derive_formal(vec![(sigma, delta)], vec![])
    }

    pub fn upper(&self) -> &[(Rational, Shift)] {
        &self.upper
    }

    pub fn lower(&self) -> &[(Rational, Shift)] {
        &self.lower
    }

    pub fn p(&self) -> usize {
        self.upper.len()
    }

    pub fn q(&self) -> usize {
        self.lower.len()
    }

    /// kappa = 1 + sum beta_r - sum alpha_r (exact).
    pub fn kappa(&self) -> Rational {
        let mut k = Rational::from(1);
        for (b, _) in &self.lower {
            k += b;
        }
        for (a, _) in &self.upper {
            k -= a;
        }
        k
    }

    /// h = prod alpha_r^{alpha_r} prod beta_r^{-beta_r}; needs positive weights.
    pub fn h(&self, prec: u32) -> Result<Real> {
        let mut acc = Real::one(prec);
        for (a, _) in &self.upper {
            let ar = Real::from_rational(prec, a);
            if !(ar > Real::zero(prec)) {
                return Err(Error::Domain("h needs positive weights".into()));
            }
            acc = acc.mul(&ar.pow(&ar));
        }
        for (b, _) in &self.lower {
            let br = Real::from_rational(prec, b);
            if !(br > Real::zero(prec)) {
                return Err(Error::Domain("h needs positive weights".into()));
            }
            acc = acc.mul(&br.pow(&br.neg()));
        }
        Ok(acc)
    }

    /// theta = sum a_r - sum b_r + (q - p)/2.
    pub fn theta(&self) -> Shift {
        let qp = Rational::from((self.q() as i64 - self.p() as i64, 2));
        let mut acc = Shift::Exact(qp);
        for (_, a) in &self.upper {
            acc = acc.add(a, CHECK_PREC);
        }
        for (_, b) in &self.lower {
            acc = Shift::sub_from_rational(&Rational::new(), b, CHECK_PREC).add(&acc, CHECK_PREC);
        }
        acc
    }

    /// theta' = 1 - theta.
    pub fn theta_prime(&self) -> Shift {
        Shift::sub_from_rational(&Rational::from(1), &self.theta(), CHECK_PREC)
    }

    /// All weights and shifts exact rationals (enables exact coefficient mode).
    pub fn all_rational(&self) -> bool {
        self.upper.iter().chain(self.lower.iter()).all(|(_, s)| s.as_rational().is_some())
    }

    pub fn classify(&self) -> Convergence {
        let k = self.kappa();
        if k > 0 {
            Convergence::Entire
        } else if k == 0 {
            Convergence::FiniteRadius
        } else {
            Convergence::Divergent
        }
    }

    /// Radius of convergence 1/h for the kappa = 0 case.
    pub fn radius(&self, prec: u32) -> Result<Real> {
        Ok(self.h(prec)?.recip())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::bits_for_digits;

    fn rat(p: i64, q: i64) -> Rational {
        Rational::from((p, q))
    }

    #[test]
    fn psi01_derived_parameters() {
        // (a, b) = (1/2, 5/4): kappa = 3/2, h = sqrt(2)... h = a^{-a} = 2^{1/2}
        let w = WrightParams::psi01(rat(1, 2), Shift::Exact(rat(5, 4))).unwrap();
        assert_eq!(w.kappa(), rat(3, 2));
        let p = bits_for_digits(40);
        let h = w.h(p).unwrap();
        assert!(h.sub(&Real::from_i64(p, 2).sqrt()).abs() < Real::exp10i(p, -38));
        // theta = 1/2 - b = -3/4
        assert_eq!(w.theta().as_rational().unwrap(), &rat(-3, 4));
        assert_eq!(w.theta_prime().as_rational().unwrap(), &rat(7, 4));
        assert_eq!(w.classify(), Convergence::Entire);
    }

    #[test]
    fn psi10_derived_parameters() {
        // (sigma, delta) = (1/2, 3/4): kappa = 1/2, h = (1/2)^{1/2}, theta = 1/4
        let w = WrightParams::psi10(rat(1, 2), Shift::Exact(rat(3, 4))).unwrap();
        assert_eq!(w.kappa(), rat(1, 2));
        let p = bits_for_digits(40);
        let h = w.h(p).unwrap();
        let want = Real::from_rational(p, &rat(1, 2)).sqrt();
        assert!(h.sub(&want).abs() < Real::exp10i(p, -38));
        assert_eq!(w.theta().as_rational().unwrap(), &rat(1, 4));
        assert_eq!(w.classify(), Convergence::Entire);
    }

    #[test]
    fn a_equals_three_kappa_four() {
        let w = WrightParams::psi01(rat(3, 1), Shift::Exact(rat(5, 4))).unwrap();
        assert_eq!(w.kappa(), rat(4, 1));
    }

    #[test]
    fn kappa_zero_radius() {
        // 1Psi_0 with sigma = 1: kappa = 0, h = 1, radius 1
        let w = WrightParams::psi10(rat(1, 1), Shift::Exact(rat(3, 4))).unwrap();
        assert_eq!(w.classify(), Convergence::FiniteRadius);
        let p = bits_for_digits(30);
        assert!(w.radius(p).unwrap().sub(&Real::one(p)).abs() < Real::exp10i(p, -28));
    }

    #[test]
    fn pole_condition_rejected() {
        // upper pair (1/2, -3/2): n = 3 gives 3/2 - 3/2 = 0, a gamma pole
        assert!(WrightParams::psi10(rat(1, 2), Shift::Exact(rat(-3, 2))).is_err());
        // negative upper weight rejected
        assert!(WrightParams::psi10(rat(-1, 2), Shift::Exact(rat(1, 2))).is_err());
        // lower-side poles are fine (entire reciprocal gamma)
        assert!(WrightParams::psi01(rat(-1, 2), Shift::Exact(rat(1, 1))).is_ok());
    }

    #[test]
    fn empty_lists_mean_exp() {
        // 0Psi_0 is exp(z): kappa = 1, h = 1, theta = 0
        let w = WrightParams::derive(vec![], vec![]).unwrap();
        assert_eq!(w.kappa(), rat(1, 1));
        assert_eq!(w.theta().as_rational().unwrap(), &rat(0, 1));
        let p = bits_for_digits(30);
        assert!(w.h(p).unwrap().sub(&Real::one(p)).abs().is_zero());
    }
}

//! Arbitrary-precision complex numbers on top of [`Real`].
//!
//! Same precision contract as [`Real`]: binary operations round at the
//! minimum operand precision. `ln`, `arg`, `sqrt` and `pow` use the
//! principal branch, arg in (-pi, pi].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::{Complex, Float, Rational};

use crate::real::Real;

/// An arbitrary-precision complex number with uniform precision in both parts.
#[derive(Clone)]
pub struct Cplx(Complex);

impl Cplx {
    pub fn from_raw(c: Complex) -> Self {
        Cplx(c)
    }

    pub fn raw(&self) -> &Complex {
        &self.0
    }

    pub fn prec(&self) -> u32 {
        self.0.prec().0.min(self.0.prec().1)
    }

    pub fn zero(prec: u32) -> Self {
        Cplx(Complex::with_val(prec, (0, 0)))
    }

    pub fn one(prec: u32) -> Self {
        Cplx(Complex::with_val(prec, (1, 0)))
    }

    pub fn i(prec: u32) -> Self {
        Cplx(Complex::with_val(prec, (0, 1)))
    }

    pub fn from_i64(prec: u32, v: i64) -> Self {
        Cplx(Complex::with_val(prec, (v, 0)))
    }

    pub fn from_real(re: &Real) -> Self {
        Cplx(Complex::with_val(re.prec(), (re.raw(), &Float::with_val(re.prec(), 0))))
    }

    pub fn from_parts(re: &Real, im: &Real) -> Self {
        let p = re.prec().min(im.prec());
        Cplx(Complex::with_val(p, (re.raw(), im.raw())))
    }

    pub fn from_rational(prec: u32, r: &Rational) -> Self {
        Cplx(Complex::with_val(prec, (&Float::with_val(prec, r), &Float::with_val(prec, 0))))
    }

    /// r e^{i phi}.
    pub fn from_polar(r: &Real, phi: &Real) -> Self {
        let (s, c) = phi.sin_cos();
        Cplx::from_parts(&r.mul(&c), &r.mul(&s))
    }

    pub fn re(&self) -> Real {
        Real::from_raw(self.0.real().clone())
    }

    pub fn im(&self) -> Real {
        Real::from_raw(self.0.imag().clone())
    }

    pub fn is_zero(&self) -> bool {
        self.0.real().is_zero() && self.0.imag().is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.real().is_finite() && self.0.imag().is_finite()
    }

    /// Purely real (imaginary part exactly zero).
    pub fn is_real(&self) -> bool {
        self.0.imag().is_zero()
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        let mut c = self.0.clone();
        c.set_prec(prec);
        Cplx(c)
    }

    fn prec2(&self, o: &Cplx) -> u32 {
        self.prec().min(o.prec())
    }

    pub fn add(&self, o: &Cplx) -> Cplx {
        let p = self.prec2(o);
        Cplx(Complex::with_val((p, p), &self.0 + &o.0))
    }

    pub fn sub(&self, o: &Cplx) -> Cplx {
        let p = self.prec2(o);
        Cplx(Complex::with_val((p, p), &self.0 - &o.0))
    }

    pub fn mul(&self, o: &Cplx) -> Cplx {
        let p = self.prec2(o);
        Cplx(Complex::with_val((p, p), &self.0 * &o.0))
    }

    pub fn div(&self, o: &Cplx) -> Cplx {
        let p = self.prec2(o);
        Cplx(Complex::with_val((p, p), &self.0 / &o.0))
    }

    pub fn mul_real(&self, o: &Real) -> Cplx {
        let p = self.prec().min(o.prec());
        Cplx(Complex::with_val((p, p), &self.0 * o.raw()))
    }

    pub fn div_real(&self, o: &Real) -> Cplx {
        let p = self.prec().min(o.prec());
        Cplx(Complex::with_val((p, p), &self.0 / o.raw()))
    }

    pub fn mul_i64(&self, v: i64) -> Cplx {
        let p = self.prec();
        Cplx(Complex::with_val((p, p), &self.0 * v))
    }

    pub fn div_i64(&self, v: i64) -> Cplx {
        let p = self.prec();
        Cplx(Complex::with_val((p, p), &self.0 / Complex::with_val((p, p), (v, 0))))
    }

    pub fn neg(&self) -> Cplx {
        let p = self.prec();
        Cplx(Complex::with_val((p, p), -&self.0))
    }

    pub fn conj(&self) -> Cplx {
        Cplx(self.0.clone().conj())
    }

    /// Multiply by i (counterclockwise quarter turn).
    pub fn mul_i(&self) -> Cplx {
        Cplx(self.0.clone().mul_i(false))
    }

    pub fn recip(&self) -> Cplx {
        Cplx(self.0.clone().recip())
    }

    pub fn square(&self) -> Cplx {
        Cplx(self.0.clone().square())
    }

    pub fn abs(&self) -> Real {
        Real::from_raw(self.0.clone().abs().into_real_imag().0)
    }

    /// Principal argument in (-pi, pi].
    pub fn arg(&self) -> Real {
        Real::from_raw(self.0.clone().arg().into_real_imag().0)
    }

    pub fn exp(&self) -> Cplx {
        Cplx(self.0.clone().exp())
    }

    /// Principal-branch logarithm.
    pub fn ln(&self) -> Cplx {
        Cplx(self.0.clone().ln())
    }

    pub fn sqrt(&self) -> Cplx {
        Cplx(self.0.clone().sqrt())
    }

    pub fn sin(&self) -> Cplx {
        Cplx(self.0.clone().sin())
    }

    pub fn cos(&self) -> Cplx {
        Cplx(self.0.clone().cos())
    }

    /// Principal-branch power: exp(e ln self).
    pub fn pow(&self, e: &Cplx) -> Cplx {
        if self.is_zero() {
            return Cplx::zero(self.prec2(e));
        }
        self.ln().mul(e).exp()
    }

    pub fn powi(&self, e: i32) -> Cplx {
        Cplx(rug::ops::Pow::pow(self.0.clone(), e))
    }

    /// Max of |re|, |im| magnitude comparison helper.
    pub fn norm_sup(&self) -> Real {
        let r = self.re().abs();
        let i = self.im().abs();
        if r >= i {
            r
        } else {
            i
        }
    }
}

impl fmt::Debug for Cplx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Cplx({:e} {:+e}i @{}b)",
            self.0.real().to_f64(),
            self.0.imag().to_f64(),
            self.prec()
        )
    }
}

impl PartialEq for Cplx {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

macro_rules! cplx_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Cplx> for &Cplx {
            type Output = Cplx;
            fn $m(self, rhs: &Cplx) -> Cplx {
                Cplx::$m(self, rhs)
            }
        }
        impl $tr<Cplx> for Cplx {
            type Output = Cplx;
            fn $m(self, rhs: Cplx) -> Cplx {
                Cplx::$m(&self, &rhs)
            }
        }
        impl $tr<&Cplx> for Cplx {
            type Output = Cplx;
            fn $m(self, rhs: &Cplx) -> Cplx {
                Cplx::$m(&self, rhs)
            }
        }
        impl $tr<Cplx> for &Cplx {
            type Output = Cplx;
            fn $m(self, rhs: Cplx) -> Cplx {
                Cplx::$m(self, &rhs)
            }
        }
    };
}

cplx_binop!(Add, add);
cplx_binop!(Sub, sub);
cplx_binop!(Mul, mul);
cplx_binop!(Div, div);

impl Neg for &Cplx {
    type Output = Cplx;
    fn neg(self) -> Cplx {
        Cplx::neg(self)
    }
}

impl Neg for Cplx {
    type Output = Cplx;
    fn neg(self) -> Cplx {
        Cplx::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::bits_for_digits;

    #[test]
    fn principal_branch_arg() {
        let p = bits_for_digits(40);
        let z = Cplx::from_i64(p, -4);
        // arg(-4) = +pi under the (-pi, pi] convention
        let pi = Real::pi(p);
        assert!(z.arg().sub(&pi).abs().to_f64() < 1e-30);
    }

    #[test]
    fn polar_roundtrip() {
        let p = bits_for_digits(50);
        let r = Real::from_f64(p, 2.5);
        let phi = Real::from_f64(p, 0.7);
        let z = Cplx::from_polar(&r, &phi);
        assert!(z.abs().sub(&r).abs().to_f64() < 1e-45);
        assert!(z.arg().sub(&phi).abs().to_f64() < 1e-45);
    }
}

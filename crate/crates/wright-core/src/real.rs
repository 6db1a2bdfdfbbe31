//! Arbitrary-precision real numbers.
//!
//! [`Real`] wraps an MPFR float and pins down the precision contract used
//! throughout the crate: every binary operation is correctly rounded at the
//! *minimum* of the operand precisions, so a low-precision input can never
//! masquerade as a high-precision result. Precision is tracked in bits
//! internally; the public entry points speak decimal digits.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Special;
use rug::ops::{CompleteRound, Pow};
use rug::{Float, Integer, Rational};

/// log2(10), used for digit/bit conversions.
const LOG2_10: f64 = 3.321928094887362;

/// Guard bits added on top of the requested decimal digits.
const GUARD_BITS: u32 = 32;

/// Bits of working precision for `digits` decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    ((digits as f64) * LOG2_10).ceil() as u32 + GUARD_BITS
}

/// Decimal digits representable at `bits` of precision (conservative).
pub fn digits_for_bits(bits: u32) -> u32 {
    ((bits.saturating_sub(GUARD_BITS)) as f64 / LOG2_10).floor() as u32
}

/// An arbitrary-precision real number with explicit working precision.
#[derive(Clone)]
pub struct Real(Float);

impl Real {
    pub fn from_raw(f: Float) -> Self {
        Real(f)
    }

    pub fn raw(&self) -> &Float {
        &self.0
    }

    pub fn into_raw(self) -> Float {
        self.0
    }

    /// Working precision in bits.
    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    pub fn zero(prec: u32) -> Self {
        Real(Float::with_val(prec, 0))
    }

    pub fn one(prec: u32) -> Self {
        Real(Float::with_val(prec, 1))
    }

    pub fn from_i64(prec: u32, v: i64) -> Self {
        Real(Float::with_val(prec, v))
    }

    pub fn from_f64(prec: u32, v: f64) -> Self {
        Real(Float::with_val(prec, v))
    }

    pub fn from_rational(prec: u32, r: &Rational) -> Self {
        Real(Float::with_val(prec, r))
    }

    pub fn from_integer(prec: u32, n: &Integer) -> Self {
        Real(Float::with_val(prec, n))
    }

    /// Parse a decimal string at the given precision.
    pub fn parse(prec: u32, s: &str) -> Option<Self> {
        Float::parse(s).ok().map(|p| Real(Float::with_val(prec, p)))
    }

    pub fn pi(prec: u32) -> Self {
        Real(Float::with_val(prec, rug::float::Constant::Pi))
    }

    /// Re-round to a new working precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        let mut f = self.0.clone();
        f.set_prec(prec);
        Real(f)
    }

    fn prec2(&self, o: &Real) -> u32 {
        self.prec().min(o.prec())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_sign_negative() && !self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn to_integer(&self) -> Option<Integer> {
        self.0.to_integer()
    }

    /// Nearest integer (ties away from zero, MPFR `round`).
    pub fn round_nearest(&self) -> Real {
        Real(self.0.clone().round())
    }

    pub fn floor(&self) -> Real {
        Real(self.0.clone().floor())
    }

    pub fn abs(&self) -> Real {
        Real(self.0.clone().abs())
    }

    pub fn neg(&self) -> Real {
        Real((-&self.0).complete(self.prec()))
    }

    pub fn add(&self, o: &Real) -> Real {
        Real((&self.0 + &o.0).complete(self.prec2(o)))
    }

    pub fn sub(&self, o: &Real) -> Real {
        Real((&self.0 - &o.0).complete(self.prec2(o)))
    }

    pub fn mul(&self, o: &Real) -> Real {
        Real((&self.0 * &o.0).complete(self.prec2(o)))
    }

    pub fn div(&self, o: &Real) -> Real {
        Real((&self.0 / &o.0).complete(self.prec2(o)))
    }

    pub fn mul_i64(&self, v: i64) -> Real {
        Real((&self.0 * v).complete(self.prec()))
    }

    pub fn div_i64(&self, v: i64) -> Real {
        Real(Float::with_val(self.prec(), &self.0 / Float::with_val(self.prec(), v)))
    }

    pub fn add_i64(&self, v: i64) -> Real {
        Real((&self.0 + v).complete(self.prec()))
    }

    pub fn recip(&self) -> Real {
        Real(self.0.clone().recip())
    }

    pub fn square(&self) -> Real {
        Real(self.0.clone().square())
    }

    pub fn sqrt(&self) -> Real {
        Real(self.0.clone().sqrt())
    }

    pub fn exp(&self) -> Real {
        Real(self.0.clone().exp())
    }

    pub fn ln(&self) -> Real {
        Real(self.0.clone().ln())
    }

    pub fn log2(&self) -> Real {
        Real(self.0.clone().log2())
    }

    pub fn log10(&self) -> Real {
        Real(self.0.clone().log10())
    }

    pub fn sin(&self) -> Real {
        Real(self.0.clone().sin())
    }

    pub fn cos(&self) -> Real {
        Real(self.0.clone().cos())
    }

    pub fn sin_cos(&self) -> (Real, Real) {
        let (s, c) = self.0.clone().sin_cos(Float::new(self.prec()));
        (Real(s), Real(c))
    }

    /// Real power for positive base: `self^e = exp(e ln self)`.
    pub fn pow(&self, e: &Real) -> Real {
        Real(self.0.clone().pow(&e.0))
    }

    pub fn powi(&self, e: i32) -> Real {
        Real(self.0.clone().pow(e))
    }

    /// 10^k at this value's precision.
    pub fn exp10i(prec: u32, k: i64) -> Real {
        Real(Float::with_val(prec, 10).pow(Float::with_val(prec, k)))
    }

    pub fn nan(prec: u32) -> Real {
        Real(Float::with_val(prec, Special::Nan))
    }

    /// Compare magnitudes: |self| < |o|.
    pub fn abs_lt(&self, o: &Real) -> bool {
        self.0.clone().abs() < o.0.clone().abs()
    }

    /// Significant-digit string in normalised scientific form `d.dd...e±X`.
    pub fn to_sig_string(&self, digits: usize) -> String {
        if self.0.is_nan() {
            return "nan".to_string();
        }
        if self.0.is_zero() {
            let mut m = String::from("0.");
            m.push_str(&"0".repeat(digits.saturating_sub(1)));
            return format!("{}e0", m);
        }
        let (sign, digs, exp) = self.0.to_sign_string_exp(10, Some(digits));
        let exp = exp.unwrap_or(0);
        let mut mant = digs;
        while mant.len() < digits {
            mant.push('0');
        }
        let mut out = String::new();
        if sign {
            out.push('-');
        }
        out.push_str(&mant[..1]);
        out.push('.');
        out.push_str(&mant[1..]);
        // to_sign_string_exp counts the first digit as exponent 1
        out.push('e');
        out.push_str(&(exp - 1).to_string());
        out
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({:e} @{}b)", self.0.to_f64(), self.prec())
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sig_string(digits_for_bits(self.prec()) as usize))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! real_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                Real::$m(self, rhs)
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                Real::$m(&self, &rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                Real::$m(&self, rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                Real::$m(self, &rhs)
            }
        }
    };
}

real_binop!(Add, add);
real_binop!(Sub, sub);
real_binop!(Mul, mul);
real_binop!(Div, div);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::neg(self)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::neg(&self)
    }
}

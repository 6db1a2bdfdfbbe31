//! Truncated formal power series over an abstract coefficient field.
//!
//! A [`TruncatedSeries`] holds coefficients c0..cK and guarantees that every
//! operation is exact through order K while never reading beyond it. The
//! same engine runs over exact rationals (coefficient recursions that must
//! reproduce printed tables bit-exactly) and over arbitrary-precision
//! floats/complexes (everything else).
//!
//! Constants are manufactured *from an existing coefficient* so that
//! floating-point coefficients inherit the right working precision without
//! threading a context object through every call.

use rug::Rational;

use crate::complex::Cplx;
use crate::error::{Error, Result};
use crate::real::Real;

/// Coefficient field for [`TruncatedSeries`].
pub trait Coef: Clone {
    fn c_add(&self, o: &Self) -> Self;
    fn c_sub(&self, o: &Self) -> Self;
    fn c_mul(&self, o: &Self) -> Self;
    /// Division; the divisor is guaranteed nonzero by the series engine.
    fn c_div(&self, o: &Self) -> Self;
    fn c_neg(&self) -> Self;
    /// An integer constant in the same context (precision) as `self`.
    fn c_i64(&self, v: i64) -> Self;
    /// A rational constant in the same context as `self`.
    fn c_rat(&self, r: &Rational) -> Self;
    fn c_is_zero(&self) -> bool;
    /// Zero up to accumulated rounding at the working precision; exact
    /// zero for exact coefficient types.
    fn c_is_tiny(&self) -> bool {
        self.c_is_zero()
    }
}

impl Coef for Rational {
    fn c_add(&self, o: &Self) -> Self {
        (self + o).into()
    }
    fn c_sub(&self, o: &Self) -> Self {
        (self - o).into()
    }
    fn c_mul(&self, o: &Self) -> Self {
        (self * o).into()
    }
    fn c_div(&self, o: &Self) -> Self {
        (self / o).into()
    }
    fn c_neg(&self) -> Self {
        (-self).into()
    }
    fn c_i64(&self, v: i64) -> Self {
        Rational::from(v)
    }
    fn c_rat(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn c_is_zero(&self) -> bool {
        *self == 0
    }
}

impl Coef for Real {
    fn c_add(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn c_sub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn c_mul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn c_div(&self, o: &Self) -> Self {
        self.div(o)
    }
    fn c_neg(&self) -> Self {
        self.neg()
    }
    fn c_i64(&self, v: i64) -> Self {
        Real::from_i64(self.prec(), v)
    }
    fn c_rat(&self, r: &Rational) -> Self {
        Real::from_rational(self.prec(), r)
    }
    fn c_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn c_is_tiny(&self) -> bool {
        let p = self.prec();
        self.is_zero() || self.abs() < Real::one(p).div(&Real::from_i64(p, 2).powi((p / 2) as i32))
    }
}

impl Coef for Cplx {
    fn c_add(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn c_sub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn c_mul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn c_div(&self, o: &Self) -> Self {
        self.div(o)
    }
    fn c_neg(&self) -> Self {
        self.neg()
    }
    fn c_i64(&self, v: i64) -> Self {
        Cplx::from_i64(self.prec(), v)
    }
    fn c_rat(&self, r: &Rational) -> Self {
        Cplx::from_rational(self.prec(), r)
    }
    fn c_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn c_is_tiny(&self) -> bool {
        let p = self.prec();
        self.is_zero() || self.abs() < Real::one(p).div(&Real::from_i64(p, 2).powi((p / 2) as i32))
    }
}

/// A power series truncated at a fixed order.
#[derive(Clone, Debug)]
pub struct TruncatedSeries<C: Coef> {
    c: Vec<C>,
}

impl<C: Coef> TruncatedSeries<C> {
    /// Series with the given coefficients c0..cK.
    pub fn from_coeffs(c: Vec<C>) -> Self {
        assert!(!c.is_empty(), "series needs at least the constant term");
        TruncatedSeries { c }
    }

    /// Constant series of the given order.
    pub fn constant(order: usize, value: C) -> Self {
        let zero = value.c_i64(0);
        let mut c = vec![zero; order + 1];
        c[0] = value;
        TruncatedSeries { c }
    }

    /// The identity series x (zero constant term), of the given order.
    pub fn identity(order: usize, proto: &C) -> Self {
        let zero = proto.c_i64(0);
        let mut c = vec![zero; order + 1];
        if order >= 1 {
            c[1] = proto.c_i64(1);
        }
        TruncatedSeries { c }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.c[k]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.c
    }

    pub fn set_coeff(&mut self, k: usize, v: C) {
        self.c[k] = v;
    }

    /// A zero coefficient in this series' context.
    fn zero(&self) -> C {
        self.c[0].c_i64(0)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        TruncatedSeries { c: self.c[..=n].to_vec() }
    }

    fn join_order(&self, o: &Self) -> usize {
        self.order().min(o.order())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.join_order(o);
        let c = (0..=n).map(|k| self.c[k].c_add(&o.c[k])).collect();
        TruncatedSeries { c }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.join_order(o);
        let c = (0..=n).map(|k| self.c[k].c_sub(&o.c[k])).collect();
        TruncatedSeries { c }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { c: self.c.iter().map(|x| x.c_neg()).collect() }
    }

    pub fn scale(&self, s: &C) -> Self {
        TruncatedSeries { c: self.c.iter().map(|x| x.c_mul(s)).collect() }
    }

    pub fn add_const(&self, s: &C) -> Self {
        let mut c = self.c.clone();
        c[0] = c[0].c_add(s);
        TruncatedSeries { c }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.join_order(o);
        let mut c = vec![self.zero(); n + 1];
        for i in 0..=n {
            if self.c[i].c_is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                c[i + j] = c[i + j].c_add(&self.c[i].c_mul(&o.c[j]));
            }
        }
        TruncatedSeries { c }
    }

    /// Division; the divisor must have a nonzero constant term.
    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.c[0].c_is_zero() {
            return Err(Error::Series("division by series with zero constant term".into()));
        }
        let n = self.join_order(o);
        let mut q = vec![self.zero(); n + 1];
        for k in 0..=n {
            let mut acc = self.c[k].clone();
            for j in 1..=k {
                acc = acc.c_sub(&o.c[j].c_mul(&q[k - j]));
            }
            q[k] = acc.c_div(&o.c[0]);
        }
        Ok(TruncatedSeries { c: q })
    }

    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return TruncatedSeries { c: vec![self.zero()] };
        }
        let c = (1..=self.order()).map(|k| self.c[k].c_mul(&self.c[0].c_i64(k as i64))).collect();
        TruncatedSeries { c }
    }

    /// Termwise antiderivative with zero constant term; order grows by one.
    pub fn integrate(&self) -> Self {
        let mut c = vec![self.zero(); self.order() + 2];
        for k in 0..=self.order() {
            c[k + 1] = self.c[k].c_div(&self.c[0].c_i64(k as i64 + 1));
        }
        TruncatedSeries { c }
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.c[0].c_is_zero() {
            return Err(Error::Series("exp needs a zero constant term".into()));
        }
        let n = self.order();
        let mut e = vec![self.zero(); n + 1];
        e[0] = self.c[0].c_i64(1);
        for k in 1..=n {
            // k e_k = sum_{j=1..k} j s_j e_{k-j}
            let mut acc = self.zero();
            for j in 1..=k {
                let js = self.c[j].c_mul(&self.c[0].c_i64(j as i64));
                acc = acc.c_add(&js.c_mul(&e[k - j]));
            }
            e[k] = acc.c_div(&self.c[0].c_i64(k as i64));
        }
        Ok(TruncatedSeries { c: e })
    }

    /// log of a series with unit constant term.
    pub fn log(&self) -> Result<Self> {
        let one = self.c[0].c_i64(1);
        if !self.c[0].c_sub(&one).c_is_zero() {
            return Err(Error::Series("log needs a unit constant term".into()));
        }
        let d = self.derivative().div(&self.truncate(self.order().saturating_sub(1)))?;
        let mut l = d.integrate();
        l = l.truncate(self.order());
        Ok(l)
    }

    /// Integer power; a negative exponent requires a nonzero constant term.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e == 0 {
            return Ok(TruncatedSeries::constant(self.order(), self.c[0].c_i64(1)));
        }
        let base = if e < 0 {
            TruncatedSeries::constant(self.order(), self.c[0].c_i64(1)).div(self)?
        } else {
            self.clone()
        };
        let mut n = e.unsigned_abs();
        let mut acc = TruncatedSeries::constant(self.order(), self.c[0].c_i64(1));
        let mut sq = base;
        loop {
            if n & 1 == 1 {
                acc = acc.mul(&sq);
            }
            n >>= 1;
            if n == 0 {
                break;
            }
            sq = sq.mul(&sq);
        }
        Ok(acc)
    }

    /// Arbitrary scalar power of a series with unit constant term.
    pub fn pow_scalar(&self, e: &C) -> Result<Self> {
        Ok(self.log()?.scale(e).exp()?)
    }

    /// Square root of a series with unit constant term.
    pub fn sqrt_unit(&self) -> Result<Self> {
        self.pow_scalar(&self.c[0].c_rat(&Rational::from((1, 2))))
    }

    /// Composition self(inner); inner must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.c[0].c_is_zero() {
            return Err(Error::Series("composition needs inner constant term zero".into()));
        }
        let n = self.join_order(inner);
        let mut acc = TruncatedSeries::constant(n, self.c[self.order().min(n)].clone());
        for k in (0..self.order().min(n)).rev() {
            acc = acc.mul(&inner.truncate(n));
            acc.c[0] = acc.c[0].c_add(&self.c[k]);
        }
        Ok(acc)
    }

    /// Compositional inverse of a series with zero constant term and
    /// nonzero linear coefficient: self(revert(x)) = x through order K.
    pub fn revert(&self) -> Result<Self> {
        if !self.c[0].c_is_zero() {
            return Err(Error::Series("reversion needs zero constant term".into()));
        }
        if self.order() < 1 || self.c[1].c_is_zero() {
            return Err(Error::Series("reversion needs a nonzero linear term".into()));
        }
        let n = self.order();
        // u = (x - sum_{m>=2} c_m u^m) / c1, gaining one order per pass
        let x = TruncatedSeries::identity(n, &self.c[1]);
        let mut u = x.scale(&self.c[1].c_i64(1).c_div(&self.c[1]));
        for _ in 0..n {
            let mut tail = TruncatedSeries::constant(n, self.zero());
            // Horner over m = n .. 2 of c_m u^{m}
            if n >= 2 {
                let mut acc = TruncatedSeries::constant(n, self.c[n].clone());
                for m in (2..n).rev() {
                    acc = acc.mul(&u);
                    acc.c[0] = acc.c[0].c_add(&self.c[m]);
                }
                acc = acc.mul(&u).mul(&u);
                tail = acc;
            }
            u = x.sub(&tail).scale(&self.c[1].c_i64(1).c_div(&self.c[1]));
        }
        Ok(u)
    }

    /// Multiply by x^k, truncating at the original order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut c = vec![self.zero(); n + 1];
        if k <= n {
            for i in 0..=(n - k) {
                c[i + k] = self.c[i].clone();
            }
        }
        TruncatedSeries { c }
    }

    /// Shift down by one power of x; the constant term must be zero.
    pub fn divide_by_x(&self) -> Result<Self> {
        if !self.c[0].c_is_zero() {
            return Err(Error::Series("divide_by_x needs zero constant term".into()));
        }
        if self.order() == 0 {
            return Ok(TruncatedSeries { c: vec![self.zero()] });
        }
        Ok(TruncatedSeries { c: self.c[1..].to_vec() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> Rational {
        Rational::from((p, q))
    }

    fn geometric(order: usize) -> TruncatedSeries<Rational> {
        // 1/(1-x) = 1 + x + x^2 + ...
        TruncatedSeries::from_coeffs(vec![rat(1, 1); order + 1])
    }

    #[test]
    fn mul_div_roundtrip() {
        let g = geometric(12);
        let one = TruncatedSeries::constant(12, rat(1, 1));
        let inv = one.div(&g).unwrap();
        // 1 - x
        assert_eq!(*inv.coeff(0), rat(1, 1));
        assert_eq!(*inv.coeff(1), rat(-1, 1));
        for k in 2..=12 {
            assert_eq!(*inv.coeff(k), rat(0, 1));
        }
        let back = g.mul(&inv);
        assert_eq!(*back.coeff(0), rat(1, 1));
        for k in 1..=12 {
            assert_eq!(*back.coeff(k), rat(0, 1));
        }
    }

    #[test]
    fn exp_log_inverse() {
        // S = 1 + x: log then exp returns 1 + x
        let s = TruncatedSeries::from_coeffs(
            (0..=10).map(|k| if k <= 1 { rat(1, 1) } else { rat(0, 1) }).collect(),
        );
        let l = s.log().unwrap();
        // log(1+x) = x - x^2/2 + x^3/3 - ...
        assert_eq!(*l.coeff(3), rat(1, 3));
        assert_eq!(*l.coeff(4), rat(-1, 4));
        let back = l.exp().unwrap();
        for k in 0..=10 {
            assert_eq!(back.coeff(k), s.coeff(k), "coefficient {}", k);
        }
    }

    #[test]
    fn exp_matches_known() {
        // exp(x) coefficients 1/k!
        let x = TruncatedSeries::identity(8, &rat(1, 1));
        let e = x.exp().unwrap();
        let mut fact = 1i64;
        for k in 1..=8 {
            fact *= k as i64;
            assert_eq!(*e.coeff(k), rat(1, fact));
        }
    }

    #[test]
    fn revert_log1p() {
        // revert(log(1+x)) = e^x - 1
        let one_plus_x = TruncatedSeries::from_coeffs(
            (0..=9).map(|k| if k <= 1 { rat(1, 1) } else { rat(0, 1) }).collect(),
        );
        let l = one_plus_x.log().unwrap();
        let r = l.revert().unwrap();
        let mut fact = 1i64;
        for k in 1..=9 {
            fact *= k as i64;
            assert_eq!(*r.coeff(k), rat(1, fact), "coefficient {}", k);
        }
        // composing gives the identity
        let id = l.compose(&r).unwrap();
        assert_eq!(*id.coeff(1), rat(1, 1));
        for k in 2..=9 {
            assert_eq!(*id.coeff(k), rat(0, 1));
        }
    }

    #[test]
    fn pow_scalar_binomial() {
        // (1+x)^{1/2}: coefficients binom(1/2, k)
        let s = TruncatedSeries::from_coeffs(
            (0..=6).map(|k| if k <= 1 { rat(1, 1) } else { rat(0, 1) }).collect(),
        );
        let h = s.pow_scalar(&rat(1, 2)).unwrap();
        assert_eq!(*h.coeff(1), rat(1, 2));
        assert_eq!(*h.coeff(2), rat(-1, 8));
        assert_eq!(*h.coeff(3), rat(1, 16));
        assert_eq!(*h.coeff(4), rat(-5, 128));
    }

    #[test]
    fn powi_negative() {
        // (1+x)^{-2} = 1 - 2x + 3x^2 - 4x^3 ...
        let s = TruncatedSeries::from_coeffs(
            (0..=6).map(|k| if k <= 1 { rat(1, 1) } else { rat(0, 1) }).collect(),
        );
        let p = s.powi(-2).unwrap();
        for k in 0..=6 {
            let want = rat(if k % 2 == 0 { k as i64 + 1 } else { -(k as i64 + 1) }, 1);
            assert_eq!(*p.coeff(k), want);
        }
    }
}

//! Gamma-function primitives at arbitrary precision.
//!
//! Real arguments go straight to MPFR. Complex arguments use the Stirling
//! series for ln Gamma* on a shifted argument (shift until the truncation
//! error of the optimally convergent part is below the target precision),
//! with the reflection formula for Re z < 1/2. The reciprocal gamma is
//! entire and returns exactly zero at the poles.

use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

use rug::{Complete, Integer, Rational};

use crate::complex::Cplx;
use crate::error::{Error, Result};
use crate::real::{digits_for_bits, Real};
use crate::series::TruncatedSeries;

/// Extra bits carried internally by the complex gamma path.
const GAMMA_GUARD_BITS: u32 = 80;

fn bernoulli_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::from(1)]))
}

/// Exact Bernoulli number B_n (B_1 = -1/2 convention).
pub fn bernoulli(n: usize) -> Rational {
    let mut cache = bernoulli_cache().lock().unwrap();
    while cache.len() <= n {
        let m = cache.len();
        // sum_{j=0}^{m} binom(m+1, j) B_j = 0
        let mut acc = Rational::new();
        for (j, b) in cache.iter().enumerate() {
            let binom = Integer::from(m as u32 + 1).binomial(j as u32);
            acc += (b * binom).complete();
        }
        acc /= -Rational::from(m as u32 + 1);
        cache.push(acc);
    }
    cache[n].clone()
}

/// Stirling coefficients gamma_0..gamma_n as exact rationals:
/// Gamma*(z) ~ sum_k (-1)^k gamma_k z^{-k}.
pub fn stirling_coeffs(n: usize) -> Vec<Rational> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut cache = cache.lock().unwrap();
    if cache.len() <= n {
        // Gamma*(z) = exp(mu(z)), mu(z) ~ sum_k B_{2k} / (2k(2k-1) z^{2k-1})
        let mut expo = TruncatedSeries::constant(n, Rational::new());
        let mut m = 1usize;
        while m <= n {
            let b = bernoulli(m + 1);
            let denom = Rational::from(((m + 1) as u32, 1)) * Rational::from((m as u32, 1));
            expo.set_coeff(m, b / denom);
            m += 2;
        }
        let g = expo.exp().expect("zero constant term");
        *cache = (0..=n)
            .map(|k| {
                let c = g.coeff(k).clone();
                if k % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect();
    }
    cache[..=n].to_vec()
}

/// Generalised Bernoulli polynomial B_k^{(s)}(x): the coefficient of
/// t^k/k! in (t/(e^t-1))^s e^{xt}, for integer s.
pub fn gen_bernoulli_rat(k: usize, s: i64, x: &Rational) -> Rational {
    let one = Rational::from(1);
    // (e^t - 1)/t has coefficients 1/(m+1)!
    let mut fact = Integer::from(1);
    let base = TruncatedSeries::from_coeffs(
        (0..=k)
            .map(|m| {
                if m > 0 {
                    fact *= m as u32 + 1;
                } else {
                    fact = Integer::from(1);
                }
                Rational::from((Integer::from(1), fact.clone()))
            })
            .collect(),
    );
    let core = base.powi(-s).expect("unit constant term");
    let ext = TruncatedSeries::identity(k, &one).scale(x).exp().expect("zero constant");
    let prod = core.mul(&ext);
    let kfact = Integer::factorial(k as u32).complete();
    prod.coeff(k) * Rational::from((kfact, Integer::from(1)))
}

/// Generalised Bernoulli polynomial at an arbitrary-precision real point.
pub fn gen_bernoulli(k: usize, s: i64, x: &Real) -> Real {
    let one = Real::one(x.prec());
    let mut fact = Integer::from(1);
    let base = TruncatedSeries::from_coeffs(
        (0..=k)
            .map(|m| {
                if m > 0 {
                    fact *= m as u32 + 1;
                } else {
                    fact = Integer::from(1);
                }
                Real::from_rational(x.prec(), &Rational::from((Integer::from(1), fact.clone())))
            })
            .collect(),
    );
    let core = base.powi(-s).expect("unit constant term");
    let ext = TruncatedSeries::identity(k, &one).scale(x).exp().expect("zero constant");
    let prod = core.mul(&ext);
    let kfact = Integer::factorial(k as u32).complete();
    prod.coeff(k).mul(&Real::from_integer(x.prec(), &kfact))
}

/// Rising factorial (a)_n = a (a+1) ... (a+n-1).
pub fn pochhammer(a: &Cplx, n: u32) -> Cplx {
    let mut acc = Cplx::one(a.prec());
    for k in 0..n {
        acc = acc.mul(&a.add(&Cplx::from_i64(a.prec(), k as i64)));
    }
    acc
}

/// Rising factorial over exact rationals.
pub fn pochhammer_rat(a: &Rational, n: u32) -> Rational {
    let mut acc = Rational::from(1);
    for k in 0..n {
        acc *= a + Rational::from(k);
    }
    acc
}

/// Rising factorial of a real argument.
pub fn pochhammer_real(a: &Real, n: u32) -> Real {
    let mut acc = Real::one(a.prec());
    for k in 0..n {
        acc = acc.mul(&a.add_i64(k as i64));
    }
    acc
}

fn is_nonpositive_integer(z: &Cplx) -> bool {
    z.is_real() && z.re().is_integer() && !(z.re() > Real::zero(z.prec()))
}

/// Stirling-series terms B_{2k}/((2k)(2k-1)) as floats, cached per precision.
fn stirling_float_terms(prec: u32, upto: usize) -> Vec<Real> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<Real>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut cache = cache.lock().unwrap();
    let entry = cache.entry(prec).or_default();
    while entry.len() < upto {
        let k = entry.len() + 1;
        let b = bernoulli(2 * k);
        let denom = Rational::from((2 * k) as u32) * Rational::from((2 * k - 1) as u32);
        entry.push(Real::from_rational(prec, &(b / denom)));
    }
    entry[..upto].to_vec()
}

/// |w| cos^2(arg(w)/2) — controls the attainable accuracy of the Stirling
/// series at w; computed in f64, only used for shift planning.
fn stirling_quality(re: f64, im: f64) -> f64 {
    let r = (re * re + im * im).sqrt();
    if r == 0.0 {
        return 0.0;
    }
    // cos^2(theta/2) = (1 + cos theta)/2 = (1 + re/r)/2
    r * (1.0 + re / r) / 2.0
}

/// ln Gamma on Re z >= 1/2 via argument shift + Stirling series.
/// Returns (ln Gamma(z + n), n) with n the shift applied.
fn ln_gamma_shifted(z: &Cplx, pw: u32) -> (Cplx, u32) {
    let digits = digits_for_bits(pw) as f64;
    let target = 0.48 * (digits + 12.0);
    let re = z.re().to_f64();
    let im = z.im().to_f64();
    let mut shift = 0u32;
    while stirling_quality(re + shift as f64, im) < 1.06 * target {
        let gap = (1.06 * target - stirling_quality(re + shift as f64, im)).max(1.0);
        shift += gap.ceil() as u32;
    }
    let zs = z.add(&Cplx::from_i64(pw, shift as i64));

    let ln_z = zs.ln();
    let half = Real::from_rational(pw, &Rational::from((1, 2)));
    let two_pi = Real::pi(pw).mul_i64(2);
    let mut acc = zs.sub(&Cplx::from_real(&half)).mul(&ln_z).sub(&zs);
    acc = acc.add(&Cplx::from_real(&two_pi.ln().mul(&half)));

    // mu(z) = sum_k S_k z^{1-2k}
    let inv = zs.recip();
    let inv2 = inv.square();
    let mut pow = inv.clone();
    let eps = Real::exp10i(pw, -(digits_for_bits(pw) as i64) - 8);
    let mut mu = Cplx::zero(pw);
    let mut k = 0usize;
    let mut terms = stirling_float_terms(pw, 16);
    loop {
        if k >= terms.len() {
            terms = stirling_float_terms(pw, terms.len() * 2);
        }
        let term = pow.mul_real(&terms[k]);
        mu = mu.add(&term);
        if term.abs() < eps {
            break;
        }
        pow = pow.mul(&inv2);
        k += 1;
        assert!(k < 8 * pw as usize, "Stirling series failed to converge");
    }
    (acc.add(&mu), shift)
}

/// Gamma function of a complex argument.
///
/// Nonpositive integers on the real axis are poles and produce an error;
/// use [`rgamma`] where the entire reciprocal is wanted.
pub fn gamma(z: &Cplx) -> Result<Cplx> {
    if is_nonpositive_integer(z) {
        return Err(Error::GammaPole(format!("z = {}", z.re().to_f64())));
    }
    let p = z.prec();
    if z.is_real() {
        // MPFR's gamma is correctly rounded; use it on the real axis.
        return Ok(Cplx::from_real(&Real::from_raw(z.re().raw().clone().gamma())));
    }
    let pw = p + GAMMA_GUARD_BITS;
    let zw = z.with_prec(pw);
    let half = Real::from_rational(pw, &Rational::from((1, 2)));
    let result = if zw.re() < half {
        // reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
        let pi = Real::pi(pw);
        let one_minus = Cplx::one(pw).sub(&zw);
        let (lg, shift) = ln_gamma_shifted(&one_minus, pw);
        let mut denom = zw.mul_real(&pi).sin().mul(&lg.exp());
        for k in 0..shift {
            // divide Gamma(1-z+shift) back down
            denom = denom.div(&one_minus.add(&Cplx::from_i64(pw, k as i64)));
        }
        Cplx::from_real(&pi).div(&denom)
    } else {
        let (lg, shift) = ln_gamma_shifted(&zw, pw);
        let mut g = lg.exp();
        for k in 0..shift {
            g = g.div(&zw.add(&Cplx::from_i64(pw, k as i64)));
        }
        g
    };
    Ok(result.with_prec(p))
}

/// Reciprocal gamma 1/Gamma(z): entire, exactly zero at the poles.
pub fn rgamma(z: &Cplx) -> Cplx {
    if is_nonpositive_integer(z) {
        return Cplx::zero(z.prec());
    }
    if z.is_real() {
        return Cplx::from_real(&Real::from_raw(z.re().raw().clone().gamma().recip()));
    }
    gamma(z).expect("pole handled above").recip()
}

/// Real-axis gamma (MPFR), with the pole check.
pub fn gamma_real(x: &Real) -> Result<Real> {
    if x.is_integer() && !(x > &Real::zero(x.prec())) {
        return Err(Error::GammaPole(format!("x = {}", x.to_f64())));
    }
    Ok(Real::from_raw(x.raw().clone().gamma()))
}

/// Real-axis reciprocal gamma, exactly zero at the poles.
pub fn rgamma_real(x: &Real) -> Real {
    if x.is_integer() && !(x > &Real::zero(x.prec())) {
        return Real::zero(x.prec());
    }
    Real::from_raw(x.raw().clone().gamma().recip())
}

/// Scaled gamma function Gamma*(z) = Gamma(z) (2 pi)^{-1/2} e^z z^{1/2-z},
/// asymptotic to 1 as z -> +infinity. Requires Re z > 0.
pub fn scaled_gamma_star(z: &Cplx) -> Result<Cplx> {
    let p = z.prec();
    if !(z.re() > Real::zero(p)) {
        return Err(Error::Domain("scaled gamma star needs Re z > 0".into()));
    }
    let pw = p + GAMMA_GUARD_BITS;
    let zw = z.with_prec(pw);
    let g = gamma(&zw)?;
    let two_pi = Real::pi(pw).mul_i64(2);
    let half = Cplx::from_rational(pw, &Rational::from((1, 2)));
    // exp(z + (1/2 - z) ln z) / sqrt(2 pi)
    let factor = zw.add(&half.sub(&zw).mul(&zw.ln())).exp();
    Ok(g.mul(&factor).div_real(&two_pi.sqrt()).with_prec(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::bits_for_digits;

    fn close(a: &Real, b: &Real, digits: i64) -> bool {
        let scale = b.abs();
        let tol = Real::exp10i(a.prec(), -digits).mul(&scale.add(&Real::one(a.prec())));
        a.sub(b).abs() < tol
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), Rational::from(1));
        assert_eq!(bernoulli(1), Rational::from((-1, 2)));
        assert_eq!(bernoulli(2), Rational::from((1, 6)));
        assert_eq!(bernoulli(3), Rational::from(0));
        assert_eq!(bernoulli(12), Rational::from((-691, 2730)));
    }

    #[test]
    fn stirling_coefficient_table() {
        let g = stirling_coeffs(4);
        assert_eq!(g[0], Rational::from(1));
        assert_eq!(g[1], Rational::from((-1, 12)));
        assert_eq!(g[2], Rational::from((1, 288)));
        assert_eq!(g[3], Rational::from((139, 51840)));
        assert_eq!(g[4], Rational::from((-571, 2488320)));
    }

    #[test]
    fn gen_bernoulli_basics() {
        // B_0^{(s)}(x) = 1
        let x = Rational::from((7, 10));
        assert_eq!(gen_bernoulli_rat(0, -3, &x), Rational::from(1));
        // s = 0: generating function e^{xt}, so B_k^{(0)}(x) = x^k
        let mut want = Rational::from(1);
        for k in 0..=4 {
            assert_eq!(gen_bernoulli_rat(k, 0, &x), want);
            want *= &x;
        }
        // classical B_1 = -1/2
        assert_eq!(gen_bernoulli_rat(1, 1, &Rational::new()), Rational::from((-1, 2)));
        let p = bits_for_digits(40);
        let b1 = gen_bernoulli(1, 1, &Real::zero(p));
        assert!(close(&b1, &Real::from_f64(p, -0.5), 38));
    }

    #[test]
    fn pochhammer_values() {
        let p = bits_for_digits(40);
        let a = Cplx::from_rational(p, &Rational::from((1, 2)));
        assert!(pochhammer(&a, 0).sub(&Cplx::one(p)).abs().is_zero());
        let v = pochhammer(&a, 2);
        assert!(close(&v.re(), &Real::from_f64(p, 0.75), 38));
        assert_eq!(
            pochhammer_rat(&Rational::from((5, 4)), 3),
            Rational::from((585, 64))
        );
    }

    #[test]
    fn gamma_known_values() {
        let p = bits_for_digits(60);
        // Gamma(1) = 1, Gamma(1/2) = sqrt(pi)
        let g1 = gamma(&Cplx::one(p)).unwrap();
        assert!(close(&g1.re(), &Real::one(p), 58));
        let gh = gamma(&Cplx::from_rational(p, &Rational::from((1, 2)))).unwrap();
        assert!(close(&gh.re(), &Real::pi(p).sqrt(), 58));
        // Gamma(5/4) cross-checked against an independent implementation
        let q = gamma(&Cplx::from_rational(p, &Rational::from((5, 4)))).unwrap();
        let want =
            Real::parse(p, "0.90640247705547707798267128896691800074879192072").unwrap();
        assert!(close(&q.re(), &want, 45));
    }

    #[test]
    fn gamma_poles_and_rgamma() {
        let p = bits_for_digits(40);
        assert!(gamma(&Cplx::from_i64(p, -3)).is_err());
        assert!(rgamma(&Cplx::from_i64(p, -3)).is_zero());
        let g2 = rgamma(&Cplx::from_i64(p, 2));
        assert!(close(&g2.re(), &Real::one(p), 38));
        // rgamma(-1/2) = -1/(2 sqrt(pi))
        let v = rgamma(&Cplx::from_rational(p, &Rational::from((-1, 2))));
        let want = Real::one(p).div(&Real::pi(p).sqrt().mul_i64(2)).neg();
        assert!(close(&v.re(), &want, 38));
    }

    #[test]
    fn complex_gamma_against_mpfr_on_real_axis() {
        // The complex Stirling path must agree with MPFR's real gamma.
        let p = bits_for_digits(80);
        for (num, den) in [(5i64, 4i64), (13, 3), (1, 7), (77, 2), (-9, 4)] {
            let r = Rational::from((num, den));
            let via_mpfr = Real::from_rational(p, &r).raw().clone().gamma();
            let z = Cplx::from_parts(
                &Real::from_rational(p, &r),
                &Real::exp10i(p, -200), // force the complex path
            );
            let via_stirling = gamma(&z).unwrap();
            let diff = via_stirling.re().sub(&Real::from_raw(via_mpfr.clone()));
            let rel = diff.abs().div(&Real::from_raw(via_mpfr).abs());
            assert!(
                rel < Real::exp10i(p, -75),
                "gamma({}/{}) mismatch: rel = {:?}",
                num,
                den,
                rel.to_f64()
            );
        }
    }

    #[test]
    fn complex_gamma_reference_point() {
        // Gamma(4 + 10i), reference value computed with mpmath at 50 digits.
        let p = bits_for_digits(50);
        let z = Cplx::from_parts(&Real::from_i64(p, 4), &Real::from_i64(p, 10));
        let g = gamma(&z).unwrap();
        let want_re =
            Real::parse(p, "0.00077153429423996626027377086827793118801634178098").unwrap();
        let want_im =
            Real::parse(p, "-0.00101908279904171236942760315662952573532626407197").unwrap();
        assert!(close(&g.re(), &want_re, 45));
        assert!(close(&g.im(), &want_im, 45));
    }

    #[test]
    fn scaled_gamma_star_values() {
        let p = bits_for_digits(50);
        // limit value at large argument
        let big = scaled_gamma_star(&Cplx::from_i64(p, 1_000_000)).unwrap();
        assert!(big.re().sub(&Real::one(p)).abs() < Real::exp10i(p, -7));
        // Gamma*(1) = e / sqrt(2 pi)
        let one = scaled_gamma_star(&Cplx::one(p)).unwrap();
        let want = Real::one(p).exp().div(&Real::pi(p).mul_i64(2).sqrt());
        assert!(close(&one.re(), &want, 48));
        assert!(scaled_gamma_star(&Cplx::from_i64(p, -2)).is_err());
    }

    #[test]
    fn scaled_gamma_star_matches_stirling_series() {
        // Gamma*(x) vs the optimally truncated sum of (-1)^k gamma_k x^{-k}:
        // the remainder at the smallest term stays within a modest multiple
        // of that term (the gamma_k tail has same-sign runs, so the plain
        // alternating-series bound does not apply verbatim).
        let p = bits_for_digits(140);
        let coeffs = stirling_coeffs(170);
        for x in [20i64, 24] {
            let xr = Real::from_i64(p, x);
            let star = scaled_gamma_star(&Cplx::from_real(&xr)).unwrap().re();
            let mut best = usize::MAX;
            let mut best_mag = Real::nan(p);
            // optimal truncation: smallest |gamma_k x^{-k}|
            let mags: Vec<Real> = (0..coeffs.len())
                .map(|k| Real::from_rational(p, &coeffs[k]).abs().div(&xr.powi(k as i32)))
                .collect();
            for (k, m) in mags.iter().enumerate() {
                if best == usize::MAX || m < &best_mag {
                    best = k;
                    best_mag = m.clone();
                }
            }
            assert!(best < coeffs.len() - 1, "need more coefficients");
            let mut sum = Real::zero(p);
            for k in 0..best {
                let term = Real::from_rational(p, &coeffs[k]).div(&xr.powi(k as i32));
                if k % 2 == 0 {
                    sum = sum.add(&term);
                } else {
                    sum = sum.sub(&term);
                }
            }
            let err = star.sub(&sum).abs();
            // observed enhancement over the smallest term grows like sqrt(x)
            let bound = best_mag.mul_i64(64).mul(&xr.sqrt());
            assert!(
                err < bound,
                "x = {}: err {:?} vs first omitted {:?}",
                x,
                err.to_f64(),
                best_mag.to_f64()
            );
        }
    }
}

//! Stokes-line machinery: the w-tau mapping reversion, the G_{k,j}
//! coefficients, the terminant coefficients B_j and the optimal truncation
//! index of the algebraic expansion.
//!
//! Everything is driven by the Laurent expansion
//!     mu tau^{gamma-1}/(1 - tau^mu) dtau/dw = -1/w + sum_k G_k w^k
//! with half w^2 = tau - log tau - 1 and the branch w ~ tau - 1 near tau = 1.

use std::sync::{Mutex, OnceLock};

use rug::{Complete, Rational};

use crate::complex::Cplx;
use crate::error::{Error, Result};
use crate::gamma::pochhammer_rat;
use crate::real::Real;
use crate::series::{Coef, TruncatedSeries};

/// u(w) = tau(w) - 1 as an exact rational series, cached by order.
fn u_series(order: usize) -> TruncatedSeries<Rational> {
    static CACHE: OnceLock<Mutex<Option<TruncatedSeries<Rational>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(None));
    let mut cache = cache.lock().unwrap();
    if let Some(u) = cache.as_ref() {
        if u.order() >= order {
            return u.truncate(order);
        }
    }
    let one = Rational::from(1);
    // v(u) = u - log(1+u) = sum_{m>=2} (-1)^m u^m / m
    let mut v = TruncatedSeries::constant(order + 2, Rational::new());
    for m in 2..=(order + 2) {
        let mut c = Rational::from((1u32, m as u32));
        if m % 2 == 1 {
            c = -c;
        }
        v.set_coeff(m, c);
    }
    // w(u) = u sqrt(2 v / u^2), branch w ~ u near u = 0
    let two_v_over_u2 = v
        .scale(&Rational::from(2))
        .divide_by_x()
        .expect("v starts at u^2")
        .divide_by_x()
        .expect("v starts at u^2");
    let w_over_u = two_v_over_u2.sqrt_unit().expect("unit constant");
    let w_of_u = w_over_u.shift_up(1);
    let u_of_w = w_of_u.revert().expect("w ~ u");
    *cache = Some(u_of_w.clone());
    u_of_w.truncate(order)
}

/// tau(w) = 1 + w + w^2/3 + w^3/36 - w^4/270 + ... through the given order.
pub fn wtau_reversion(order: usize) -> TruncatedSeries<Rational> {
    u_series(order).add_const(&Rational::from(1))
}

/// Coefficients G_0..G_{k_max} of the regular part of
/// mu tau^{gamma-1}/(1-tau^mu) dtau/dw, for mu = (1-sigma)/sigma.
///
/// The 1/w part must carry coefficient exactly -1; a mismatch beyond
/// tolerance indicates an engine defect and is reported as an error.
pub fn g_coeffs<C: Coef>(sigma: &Rational, gamma: &C, k_max: usize) -> Result<Vec<C>> {
    if !(sigma.clone() > 0 && sigma.clone() < 1) {
        return Err(Error::Domain("g_coeffs needs 0 < sigma < 1".into()));
    }
    let order = k_max + 4;
    let mu = (Rational::from(1) - sigma) / sigma;
    let u_rat = u_series(order);
    // convert the rational reversion to the working coefficient field
    let u = TruncatedSeries::from_coeffs(
        u_rat.coeffs().iter().map(|r| gamma.c_rat(r)).collect::<Vec<C>>(),
    );
    let one = gamma.c_i64(1);
    let log_tau = u.add_const(&one).log()?;
    let gm1 = gamma.c_sub(&one);
    let tau_gm1 = log_tau.scale(&gm1).exp()?;
    let tau_mu = log_tau.scale(&gamma.c_rat(&mu)).exp()?;
    // D~ = (1 - tau^mu)/w, N = mu tau^{gamma-1} dtau/dw
    let d_tilde = tau_mu.neg().add_const(&one).divide_by_x()?;
    let du = u.derivative();
    let n = tau_gm1.mul(&du).scale(&gamma.c_rat(&mu));
    let ratio = n.div(&d_tilde)?;
    // ratio = -1 + G_0 w + G_1 w^2 + ...
    let residual = ratio.coeff(0).c_add(&one);
    if !residual.c_is_tiny() {
        return Err(Error::SingularResidual(
            "1/w coefficient of the Stokes kernel differs from -1".into(),
        ));
    }
    Ok((0..=k_max).map(|k| ratio.coeff(k + 1).clone()).collect())
}

/// Printed closed forms for G_0, G_2, G_4 at general sigma.
pub fn g_closed(sigma: &Rational, k: usize, gamma: &Rational) -> Result<Rational> {
    if !(sigma.clone() > 0 && sigma.clone() < 1) {
        return Err(Error::Domain("g_closed needs 0 < sigma < 1".into()));
    }
    let mu = (Rational::from(1) - sigma) / sigma;
    let r = |v: i64| Rational::from(v);
    let g1 = gamma.clone();
    let g2 = (gamma * gamma).complete();
    let g3 = (&g2 * gamma).complete();
    let g4 = (&g3 * gamma).complete();
    let g5 = (&g4 * gamma).complete();
    let m1 = mu.clone();
    let m2 = (&mu * &mu).complete();
    let m4 = (&m2 * &m2).complete();
    match k {
        0 => Ok(-g1 + r(1) / r(6) + m1 / r(2)),
        2 => Ok(-g3 / r(6) + (r(1) + &m1) * g2 / r(4) - (r(1) + r(3) * &m1 + &m2) * g1 / r(12)
            + (r(2) + r(45) * &m1 + r(45) * &m2) / r(1080)),
        4 => Ok(-g5 / r(120) + (r(5) + r(3) * &m1) * g4 / r(144)
            - (r(10) + r(15) * &m1 + r(3) * &m2) * g3 / r(216)
            + (r(3) + r(10) * &m1 + r(5) * &m2) * g2 / r(144)
            - (r(5) + r(90) * &m1 + r(100) * &m2 - r(6) * &m4) * g1 / r(4320)
            + (r(-13) + r(21) * &m1 + r(126) * &m2 - r(42) * &m4) / r(36288)),
        _ => Err(Error::Unsupported(format!("g_closed supports k in {{0,2,4}}, got {}", k))),
    }
}

/// Printed closed forms for G_hat_{2k} = 6^{2k} G_{2k}(1/2), k <= 4.
pub fn g_half_closed(two_k: usize, gamma: &Rational) -> Result<Rational> {
    let r = |v: i64| Rational::from(v);
    let g = |p: u32| -> Rational {
        let mut acc = Rational::from(1);
        for _ in 0..p {
            acc *= gamma;
        }
        acc
    };
    let hat = match two_k {
        0 => r(2) / r(3) - g(1),
        2 => (r(46) - r(225) * g(1) + r(270) * g(2) - r(90) * g(3)) / r(15),
        4 => (r(230) - r(3969) * g(1) + r(11340) * g(2) - r(11760) * g(3) + r(5040) * g(4)
            - r(756) * g(5))
            / r(70),
        6 => (r(-3626) - r(17781) * g(1) + r(183330) * g(2) - r(397530) * g(3)
            + r(370440) * g(4)
            - r(170100) * g(5)
            + r(37800) * g(6)
            - r(3240) * g(7))
            / r(350),
        8 => (r(-4032746) + r(43924815) * g(1) + r(88280280) * g(2) - r(743046480) * g(3)
            + r(1353607200) * g(4)
            - r(1160830440) * g(5)
            + r(541870560) * g(6)
            - r(141134400) * g(7)
            + r(19245600) * g(8)
            - r(1069200) * g(9))
            / r(231000),
        _ => {
            return Err(Error::Unsupported(format!(
                "g_half_closed supports 2k in {{0,2,4,6,8}}, got {}",
                two_k
            )))
        }
    };
    Ok(hat)
}

/// G_{2k}(1/2) from the hatted closed form.
pub fn g_half_unscaled(two_k: usize, gamma: &Rational) -> Result<Rational> {
    let hat = g_half_closed(two_k, gamma)?;
    let mut scale = Rational::from(1);
    for _ in 0..two_k {
        scale *= 6u32;
    }
    Ok(hat / scale)
}

/// Optimal truncation index of the algebraic expansion:
/// m_o = (sigma/kappa)(X + 3/2) - (1+2 delta)/(2 kappa) + alpha, with m_o the
/// nearest integer (ties round up, giving alpha = +1/2) and |alpha| <= 1/2.
pub fn optimal_truncation(sigma: &Rational, delta: &Real, x_big: &Real) -> Result<(i64, Real)> {
    let p = x_big.prec();
    let kappa = Rational::from(1) - sigma;
    if !(kappa.clone() > 0) {
        return Err(Error::Domain("optimal truncation needs kappa > 0".into()));
    }
    let sk = Real::from_rational(p, &(sigma / &kappa).complete());
    let three_half = Real::from_rational(p, &Rational::from((3, 2)));
    let v = sk.mul(&x_big.add(&three_half)).sub(
        &Real::one(p)
            .add(&delta.mul_i64(2))
            .div(&Real::from_rational(p, &kappa).mul_i64(2)),
    );
    let half = Real::from_rational(p, &Rational::from((1, 2)));
    let m = v.add(&half).floor();
    let m_int = m
        .to_integer()
        .ok_or_else(|| Error::Domain("non-finite truncation index".into()))?;
    let m_o = m_int.to_i64().ok_or_else(|| Error::Domain("truncation index overflow".into()))?;
    if m_o < 1 {
        return Err(Error::Domain(format!(
            "asymptotic regime not reached: m_o = {} < 1",
            m_o
        )));
    }
    let alpha = Real::from_i64(p, m_o).sub(&v);
    Ok((m_o, alpha))
}

/// gamma_j = alpha - j + 1 - 1/(2 sigma).
pub fn gamma_j(sigma: &Rational, alpha: &Real, j: usize) -> Real {
    let p = alpha.prec();
    let shift = Rational::from(1) - (Rational::from(1) / (sigma.clone() * 2u32));
    alpha
        .sub(&Real::from_i64(p, j as i64))
        .add(&Real::from_rational(p, &shift))
}

/// Terminant coefficients B_0..B_J:
/// B_j = sum_{k=0}^{j} (-2)^k (1/2)_k A_{j-k} G_{2k, j-k},
/// with G evaluated at gamma_{j-k} = alpha - (j-k) + 1 - 1/(2 sigma).
pub fn b_coeffs(
    sigma: &Rational,
    a_list: &[Cplx],
    alpha: &Real,
    j_max: usize,
) -> Result<Vec<Cplx>> {
    if a_list.len() <= j_max {
        return Err(Error::Domain("b_coeffs needs A_0..A_J".into()));
    }
    let p = alpha.prec();
    // G_{2k} at each gamma_j, k up to j_max
    let mut g_at: Vec<Vec<Real>> = Vec::with_capacity(j_max + 1);
    for j in 0..=j_max {
        let gj = gamma_j(sigma, alpha, j);
        g_at.push(g_coeffs(sigma, &gj, 2 * j_max)?);
    }
    let half = Rational::from((1, 2));
    let mut out = Vec::with_capacity(j_max + 1);
    for j in 0..=j_max {
        let mut acc = Cplx::zero(p);
        let mut pow_m2 = Rational::from(1); // (-2)^k
        for k in 0..=j {
            let poch = pochhammer_rat(&half, k as u32);
            let scalar = Real::from_rational(p, &(poch * &pow_m2));
            let g = &g_at[j - k][2 * k];
            acc = acc.add(&a_list[j - k].mul_real(&scalar.mul(g)));
            pow_m2 *= -2i32;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Everything the Stokes-line formulas need at one evaluation point.
#[derive(Clone, Debug)]
pub struct StokesTable {
    pub sigma: Rational,
    pub mu: Rational,
    pub x_big: Real,
    pub m_o: i64,
    pub alpha: Real,
    pub gamma: Vec<Real>,
    pub a: Vec<Cplx>,
    pub b: Vec<Cplx>,
}

impl StokesTable {
    /// Build the table for 1Psi_0(sigma, delta) at the point where the
    /// algebraic series is optimally truncated at X.
    pub fn build(
        sigma: &Rational,
        delta: &Real,
        x_big: &Real,
        a_list: Vec<Cplx>,
        j_max: usize,
    ) -> Result<Self> {
        let (m_o, alpha) = optimal_truncation(sigma, delta, x_big)?;
        let gamma = (0..=j_max).map(|j| gamma_j(sigma, &alpha, j)).collect();
        let b = b_coeffs(sigma, &a_list, &alpha, j_max)?;
        let mu = (Rational::from(1) - sigma) / sigma;
        Ok(StokesTable {
            sigma: sigma.clone(),
            mu,
            x_big: x_big.clone(),
            m_o,
            alpha,
            gamma,
            a: a_list,
            b,
        })
    }
}

//! Kummer-type solutions of (D - mu^2) f = 0 on the line and their
//! transition constants.
//!
//! S1 is the z = 1/2 + ix solution, S2 = S1(-alpha, -beta), T_j(x) = S_j(alpha, -beta; -x).
//! V- decays like x^{-1/2-mu} at +inf and W-(x) = V-(alpha, -beta; -x) like |x|^{-1/2-mu}
//! at -inf; V+ and W+ flip the sign of mu.

use crate::complex_special::{c64, cpow, gratio, C64, I, ONE};
use crate::error::{Error, Result};
use crate::hyp::hyp2f1_value;
use std::f64::consts::PI;

/// The parameter alpha + i beta.
#[inline]
pub fn big_a(alpha: f64, beta: f64) -> C64 {
    c64(alpha, beta)
}

/// C(alpha, beta; mu) = Gamma(A) Gamma(1+2mu) / (Gamma(1/2+alpha+mu) Gamma(1/2+i beta+mu)).
pub fn c_const(alpha: f64, beta: f64, mu: C64) -> Result<C64> {
    gratio(
        &[big_a(alpha, beta), ONE + 2.0 * mu],
        &[c64(0.5 + alpha, 0.0) + mu, c64(0.5, beta) + mu],
    )
}

/// chi(alpha, beta; mu) = exp(-(1/2 + A - mu) pi i / 2).
pub fn chi(alpha: f64, beta: f64, mu: C64) -> C64 {
    (-(c64(0.5, 0.0) + big_a(alpha, beta) - mu) * (I * PI / 2.0)).exp()
}

/// S1(alpha, beta; mu; x) from the series in z = 1/2 + ix (continued by the 2F1 engine).
pub fn s1(alpha: f64, beta: f64, mu: C64, x: f64) -> Result<C64> {
    let a = big_a(alpha, beta);
    let z = c64(0.5, x);
    let pref = cpow(z, -a / 2.0) * cpow(ONE - z, -a.conj() / 2.0);
    let f = hyp2f1_value(c64(0.5 - alpha, 0.0) + mu, c64(0.5 - alpha, 0.0) - mu, ONE - a, z)?;
    Ok(pref * f)
}

/// S1 from the series in w = (ix + 1/2)/(ix - 1/2), the form with the
/// (1/2 - ix)^{A/2 - mu - 1/2} prefactor.
pub fn s1_w_route(alpha: f64, beta: f64, mu: C64, x: f64) -> Result<C64> {
    let a = big_a(alpha, beta);
    let zp = c64(0.5, x);
    let zm = c64(0.5, -x);
    let w = zp / (-zm);
    let pref = cpow(zp, -a / 2.0) * cpow(zm, a / 2.0 - mu - 0.5);
    let f = hyp2f1_value(c64(0.5 - alpha, 0.0) + mu, c64(0.5, -beta) + mu, ONE - a, w)?;
    Ok(pref * f)
}

pub fn s2(alpha: f64, beta: f64, mu: C64, x: f64) -> Result<C64> {
    s1(-alpha, -beta, mu, x)
}

pub fn t1(alpha: f64, beta: f64, mu: C64, x: f64) -> Result<C64> {
    s1(alpha, -beta, mu, -x)
}

pub fn t2(alpha: f64, beta: f64, mu: C64, x: f64) -> Result<C64> {
    s2(alpha, -beta, mu, -x)
}

fn check_mu(mu: C64) -> Result<()> {
    // 1 + 2 mu must avoid the poles of Gamma
    let c = ONE + 2.0 * mu;
    if c.im.abs() < 1e-12 && c.re <= 1e-12 && (c.re - c.re.round()).abs() < 1e-12 {
        return Err(Error::DegenerateMu { re: mu.re, im: mu.im });
    }
    Ok(())
}

/// V-(x) for x > 0 from the series in zeta = 1/(1/2 - ix). Im zeta > 0 on x > 0,
/// so the principal 2F1 is the continuation along the half-line.
pub fn v_minus_series(alpha: f64, beta: f64, mu: C64, x: f64) -> Result<C64> {
    check_mu(mu)?;
    if !(x > 0.0) {
        return Err(Error::Domain(format!("zeta-series form of V- needs x > 0, got {x}")));
    }
    let a = big_a(alpha, beta);
    let zp = c64(0.5, x);
    let zm = c64(0.5, -x);
    let phase = ((c64(-0.5, 0.0) + a - mu) * (I * PI / 2.0)).exp();
    let pref = phase * cpow(zp, -a / 2.0) * cpow(zm, c64(-0.5, 0.0) + a / 2.0 - mu);
    let f = hyp2f1_value(c64(0.5 - alpha, 0.0) + mu, c64(0.5, -beta) + mu, ONE + 2.0 * mu, zm.inv())?;
    Ok(pref * f)
}

/// Coefficients (a1, a2) with V- = a1 S1 + a2 S2.
pub fn v_minus_in_s(alpha: f64, beta: f64, mu: C64) -> Result<(C64, C64)> {
    Ok((
        c_const(alpha, beta, mu)? * chi(-alpha, -beta, -mu),
        c_const(-alpha, -beta, mu)? * chi(alpha, beta, -mu),
    ))
}

/// Coefficients (b1, b2) with W- = b1 S1 + b2 S2.
pub fn w_minus_in_s(alpha: f64, beta: f64, mu: C64) -> Result<(C64, C64)> {
    Ok((
        c_const(alpha, beta, mu)? / chi(-alpha, -beta, -mu),
        c_const(-alpha, -beta, mu)? / chi(alpha, beta, -mu),
    ))
}

/// Coefficients with W- = c1 T1 + c2 T2.
pub fn w_minus_in_t(alpha: f64, beta: f64, mu: C64) -> Result<(C64, C64)> {
    Ok((
        c_const(alpha, -beta, mu)? * chi(-alpha, beta, -mu),
        c_const(-alpha, beta, mu)? * chi(alpha, -beta, -mu),
    ))
}

/// V-(alpha, beta; mu; x) on the whole line.
pub fn v_minus(alpha: f64, beta: f64, mu: C64, x: f64) -> Result<C64> {
    check_mu(mu)?;
    if x > 0.0 {
        return v_minus_series(alpha, beta, mu, x);
    }
    let (a1, a2) = v_minus_in_s(alpha, beta, mu)?;
    Ok(a1 * s1(alpha, beta, mu, x)? + a2 * s2(alpha, beta, mu, x)?)
}

pub fn v_plus(alpha: f64, beta: f64, mu: C64, x: f64) -> Result<C64> {
    v_minus(alpha, beta, -mu, x)
}

pub fn w_minus(alpha: f64, beta: f64, mu: C64, x: f64) -> Result<C64> {
    v_minus(alpha, -beta, mu, -x)
}

pub fn w_plus(alpha: f64, beta: f64, mu: C64, x: f64) -> Result<C64> {
    w_minus(alpha, beta, -mu, x)
}

/// sigma(V-, W-) = 2 pi C(alpha,beta;mu) C(-alpha,-beta;mu) / (Gamma(A) Gamma(-A)).
pub fn sigma_v_w(alpha: f64, beta: f64, mu: C64) -> Result<C64> {
    let a = big_a(alpha, beta);
    Ok(c_const(alpha, beta, mu)? * c_const(-alpha, -beta, mu)? * gratio(&[], &[a, -a])? * (2.0 * PI))
}

//! Independent checks of the operator D, its Kummer-type solutions,
//! connection coefficients, Wronskians and resolvent kernel.

use crate::complex_special::{c64, gamma, C64, I, ONE, ZERO};
use crate::ditransform::{discrete_kernel, discrete_weight, TransformParams};
use crate::error::{Error, Result};
use crate::kummer::{self, c_const, chi};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Default finite-difference step.
pub const FD_STEP: f64 = 1e-3;
/// Largest accepted disagreement between the h and h/2 difference quotients.
const RICHARDSON_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KummerSolutionId {
    S1,
    S2,
    T1,
    T2,
    Vminus,
    Vplus,
    Wminus,
    Wplus,
}

impl KummerSolutionId {
    pub const ALL: [KummerSolutionId; 8] = [
        Self::S1,
        Self::S2,
        Self::T1,
        Self::T2,
        Self::Vminus,
        Self::Vplus,
        Self::Wminus,
        Self::Wplus,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitionCoeffs {
    pub c: C64,
    pub chi: C64,
}

/// C(alpha, beta; mu) and chi(alpha, beta; mu).
pub fn transition_coeffs(params: &TransformParams, mu: C64) -> Result<TransitionCoeffs> {
    Ok(TransitionCoeffs { c: c_const(params.alpha, params.beta, mu)?, chi: chi(params.alpha, params.beta, mu) })
}

fn check_v_mu(mu: C64) -> Result<()> {
    let c = ONE + 2.0 * mu;
    if c.im.abs() < 1e-12 && c.re <= 1e-12 && (c.re - c.re.round()).abs() < 1e-12 {
        return Err(Error::DegenerateMu { re: mu.re, im: mu.im });
    }
    Ok(())
}

/// Value of one of the eight solutions of (D - mu^2) f = 0 at x.
pub fn kummer_solution(id: KummerSolutionId, params: &TransformParams, mu: C64, x: f64) -> Result<C64> {
    let (al, be) = (params.alpha, params.beta);
    use KummerSolutionId::*;
    match id {
        S1 => kummer::s1(al, be, mu, x),
        S2 => kummer::s2(al, be, mu, x),
        T1 => kummer::t1(al, be, mu, x),
        T2 => kummer::t2(al, be, mu, x),
        Vminus => {
            check_v_mu(mu)?;
            kummer::v_minus(al, be, mu, x)
        }
        Vplus => {
            check_v_mu(-mu)?;
            kummer::v_plus(al, be, mu, x)
        }
        Wminus => {
            check_v_mu(mu)?;
            kummer::w_minus(al, be, mu, x)
        }
        Wplus => {
            check_v_mu(-mu)?;
            kummer::w_plus(al, be, mu, x)
        }
    }
}

/// Value, first and second derivative by fourth-order central differences
/// with one Richardson level (h, h/2).
pub fn derivatives<F>(f: &F, x: f64, h: f64) -> Result<(C64, C64, C64)>
where
    F: Fn(f64) -> Result<C64>,
{
    let d = |h: f64| -> Result<(C64, C64, C64)> {
        let (m2, m1, p0, p1, p2) = (f(x - 2.0 * h)?, f(x - h)?, f(x)?, f(x + h)?, f(x + 2.0 * h)?);
        let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
        let d2 = (-m2 + 16.0 * m1 - 30.0 * p0 + 16.0 * p1 - p2) / (12.0 * h * h);
        Ok((p0, d1, d2))
    };
    let (v, a1, a2) = d(h)?;
    let (_, b1, b2) = d(h / 2.0)?;
    let scale = 1.0 + v.norm() + b1.norm() + b2.norm();
    let gap = (a1 - b1).norm().max((a2 - b2).norm());
    if gap > RICHARDSON_TOL * scale {
        return Err(Error::StepTooLarge(h));
    }
    Ok((v, (16.0 * b1 - a1) / 15.0, (16.0 * b2 - a2) / 15.0))
}

/// (1/4 + x^2) f'' + 2x f' + [A^2 / (4(1/2+ix)) + conj(A)^2 / (4(1/2-ix)) + 1/4] f.
pub fn apply_d<F>(f: &F, params: &TransformParams, x: f64, h: f64) -> Result<C64>
where
    F: Fn(f64) -> Result<C64>,
{
    let (v, d1, d2) = derivatives(f, x, h)?;
    let a = params.a();
    let pot = a * a / (c64(0.5, x) * 4.0) + a.conj() * a.conj() / (c64(0.5, -x) * 4.0) + 0.25;
    Ok(d2 * (0.25 + x * x) + d1 * (2.0 * x) + pot * v)
}

/// (1/4 + x^2)(P Q' - P' Q) at x.
pub fn wronskian_sigma<P, Q>(p: &P, q: &Q, x: f64, h: f64) -> Result<C64>
where
    P: Fn(f64) -> Result<C64>,
    Q: Fn(f64) -> Result<C64>,
{
    let (pv, pd, _) = derivatives(p, x, h)?;
    let (qv, qd, _) = derivatives(q, x, h)?;
    Ok((pv * qd - pd * qv) * (0.25 + x * x))
}

/// Closed form of sigma(V-, W-) = 2 pi C(alpha,beta;mu) C(-alpha,-beta;mu) / (Gamma(A) Gamma(-A)).
pub fn sigma_v_w(params: &TransformParams, mu: C64) -> Result<C64> {
    kummer::sigma_v_w(params.alpha, params.beta, mu)
}

/// The sigma(V-, W-) value with the extra factor i.
pub fn sigma_v_w_displayed(params: &TransformParams, mu: C64) -> Result<C64> {
    Ok(sigma_v_w(params, mu)? * I)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Connection {
    /// V- as a combination of S1, S2.
    VViaS,
    /// W- as a combination of T1, T2.
    WViaT,
    /// W- as a combination of S1, S2.
    WViaS,
}

fn rel_residual(l: C64, r: C64) -> f64 {
    (l - r).norm() / (l.norm() + r.norm() + 1e-300)
}

/// Relative residual of the connection formula at x.
pub fn connection_check(which: Connection, params: &TransformParams, mu: C64, x: f64) -> Result<f64> {
    check_v_mu(mu)?;
    let (al, be) = (params.alpha, params.beta);
    let (lhs, rhs) = match which {
        Connection::VViaS => {
            let (a1, a2) = kummer::v_minus_in_s(al, be, mu)?;
            (kummer::v_minus(al, be, mu, x)?, a1 * kummer::s1(al, be, mu, x)? + a2 * kummer::s2(al, be, mu, x)?)
        }
        Connection::WViaT => {
            let (c1, c2) = kummer::w_minus_in_t(al, be, mu)?;
            (kummer::w_minus(al, be, mu, x)?, c1 * kummer::t1(al, be, mu, x)? + c2 * kummer::t2(al, be, mu, x)?)
        }
        Connection::WViaS => {
            let (b1, b2) = kummer::w_minus_in_s(al, be, mu)?;
            (kummer::w_minus(al, be, mu, x)?, b1 * kummer::s1(al, be, mu, x)? + b2 * kummer::s2(al, be, mu, x)?)
        }
    };
    Ok(rel_residual(lhs, rhs))
}

/// Residual of the alternative coefficient set
/// V- = C(A;mu) chi(A;mu) S1 + C(-A;mu) chi(-A;mu) S2 and
/// W- = -C(alpha,-beta;mu) chi(-alpha,beta;-mu)^{-1} T1 - C(-alpha,beta;mu) chi(alpha,-beta;-mu)^{-1} T2.
pub fn connection_check_displayed(which: Connection, params: &TransformParams, mu: C64, x: f64) -> Result<f64> {
    check_v_mu(mu)?;
    let (al, be) = (params.alpha, params.beta);
    let (lhs, rhs) = match which {
        Connection::VViaS => {
            let a1 = c_const(al, be, mu)? * chi(al, be, mu);
            let a2 = c_const(-al, -be, mu)? * chi(-al, -be, mu);
            (kummer::v_minus(al, be, mu, x)?, a1 * kummer::s1(al, be, mu, x)? + a2 * kummer::s2(al, be, mu, x)?)
        }
        Connection::WViaT | Connection::WViaS => {
            let c1 = -c_const(al, -be, mu)? / chi(-al, be, -mu);
            let c2 = -c_const(-al, be, mu)? / chi(al, -be, -mu);
            (kummer::w_minus(al, be, mu, x)?, c1 * kummer::t1(al, be, mu, x)? + c2 * kummer::t2(al, be, mu, x)?)
        }
    };
    Ok(rel_residual(lhs, rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ResolventForm {
    /// S(x) T(y) expansion.
    ST,
    /// S(x) S(y) expansion.
    SS,
}

/// Principal square root, with the negative axis approached from above.
pub fn sqrt_lambda(lambda: C64) -> C64 {
    if lambda.im == 0.0 && lambda.re < 0.0 {
        c64(0.0, (-lambda.re).sqrt())
    } else {
        lambda.sqrt()
    }
}

fn check_lambda(params: &TransformParams, lambda: C64) -> Result<()> {
    if lambda.im == 0.0 && lambda.re <= 0.0 {
        return Err(Error::BranchCut { re: lambda.re, im: lambda.im });
    }
    let mut k = 0.0;
    while params.alpha - k - 0.5 > 0.0 {
        let l0 = (params.alpha - k - 0.5).powi(2);
        if (lambda - l0).norm() < 1e-12 * (1.0 + l0) {
            return Err(Error::Pole { re: lambda.re, im: lambda.im });
        }
        k += 1.0;
    }
    Ok(())
}

/// Kernel K(x, y; lambda) of (D - lambda)^{-1}, lambda off (-inf, 0].
pub fn resolvent_kernel(x: f64, y: f64, lambda: C64, form: ResolventForm, params: &TransformParams) -> Result<C64> {
    check_lambda(params, lambda)?;
    let (hi, lo) = if y < x { (x, y) } else { (y, x) };
    let mu = sqrt_lambda(lambda);
    let (al, be) = (params.alpha, params.beta);
    let a = params.a();
    let gg = gamma(a)? * gamma(-a)?;
    match form {
        ResolventForm::ST => {
            let cpm = c_const(-al, -be, mu)?;
            let cpp = c_const(al, be, mu)?;
            let c1 = c_const(al, -be, mu)?;
            let c2 = c_const(-al, be, mu)?;
            let e = |t: C64| ((t - mu) * (I * PI)).exp();
            let s1 = kummer::s1(al, be, mu, hi)?;
            let s2 = kummer::s2(al, be, mu, hi)?;
            let t1 = kummer::t1(al, be, mu, lo)?;
            let t2 = kummer::t2(al, be, mu, lo)?;
            let sum = c1 / cpm * e(c64(-0.5 + al, 0.0)) * s1 * t1
                + c2 / cpm * e(c64(-0.5, be)) * s1 * t2
                + c1 / cpp * e(c64(-0.5, -be)) * s2 * t1
                + c2 / cpp * e(c64(-0.5 - al, 0.0)) * s2 * t2;
            Ok(-gg / (2.0 * PI) * sum)
        }
        ResolventForm::SS => {
            let cp = c_const(al, be, mu)?;
            let cm = c_const(-al, -be, mu)?;
            let xa = chi(-al, -be, -mu);
            let xb = chi(al, be, -mu);
            let v = cp * xa * kummer::s1(al, be, mu, hi)? + cm * xb * kummer::s2(al, be, mu, hi)?;
            let w = cp / xa * kummer::s1(al, be, mu, lo)? + cm / xb * kummer::s2(al, be, mu, lo)?;
            Ok(-gg / (2.0 * PI * cp * cm) * v * w)
        }
    }
}

/// The S(x) S(y) expansion with coefficients C chi(A; sqrt lambda), C chi^{-1}(A; sqrt lambda),
/// positive prefactor, and the second bracket read at y.
pub fn resolvent_ss_displayed(x: f64, y: f64, lambda: C64, params: &TransformParams) -> Result<C64> {
    check_lambda(params, lambda)?;
    let mu = sqrt_lambda(lambda);
    let (al, be) = (params.alpha, params.beta);
    let a = params.a();
    let gg = gamma(a)? * gamma(-a)?;
    let cp = c_const(al, be, mu)?;
    let cm = c_const(-al, -be, mu)?;
    let xa = chi(al, be, mu);
    let xb = chi(-al, -be, mu);
    let b1 = cp * xa * kummer::s1(al, be, mu, x)? + cm * xb * kummer::s2(al, be, mu, x)?;
    let b2 = cp / xa * kummer::s1(al, be, mu, y)? + cm / xb * kummer::s2(al, be, mu, y)?;
    Ok(gg / (2.0 * PI * cp * cm) * b1 * b2)
}

/// Green-function form -V-(max(x,y)) W-(min(x,y)) / sigma(V-, W-).
pub fn resolvent_green(x: f64, y: f64, lambda: C64, params: &TransformParams) -> Result<C64> {
    check_lambda(params, lambda)?;
    let (hi, lo) = if y < x { (x, y) } else { (y, x) };
    let mu = sqrt_lambda(lambda);
    let (al, be) = (params.alpha, params.beta);
    Ok(-kummer::v_minus(al, be, mu, hi)? * kummer::w_minus(al, be, mu, lo)? / sigma_v_w(params, mu)?)
}

/// Contour residue of K at lambda0 = (alpha - k - 1/2)^2 by the average of
/// (lambda - lambda0) K over a circle of the given radius (n points).
pub fn contour_residue(x: f64, y: f64, k: usize, radius: f64, n: usize, params: &TransformParams) -> Result<C64> {
    let l0 = (params.alpha - k as f64 - 0.5).powi(2);
    if !(params.alpha - k as f64 - 0.5 > 0.0) {
        return Err(Error::Index { index: k as i64, count: params.discrete_count() });
    }
    let mut acc = ZERO;
    for j in 0..n {
        let d = c64(0.0, 2.0 * PI * (j as f64 + 0.5) / n as f64).exp() * radius;
        acc += d * resolvent_kernel(x, y, c64(l0, 0.0) + d, ResolventForm::SS, params)?;
    }
    Ok(acc / n as f64)
}

/// Expected residue -w_k R_k(x) conj(R_k(y)).
pub fn expected_residue(x: f64, y: f64, k: usize, params: &TransformParams) -> Result<C64> {
    Ok(-discrete_weight(params, k)? * discrete_kernel(params, x, k)? * discrete_kernel(params, y, k)?.conj())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: f64, b: f64) -> TransformParams {
        TransformParams::new(a, b).unwrap()
    }

    #[test]
    fn constant_function_zero_parameters() {
        // alpha = beta = 0 is not admissible as transform parameters; build it directly
        let pr = TransformParams { alpha: 0.0, beta: 0.0, validity: crate::ditransform::Validity::Regular };
        let v = apply_d(&|_x: f64| Ok(c64(2.0, 1.0)), &pr, 0.7, FD_STEP).unwrap();
        assert!((v - c64(0.5, 0.25)).norm() < 1e-12);
    }

    #[test]
    fn kummer_solution_is_eigenfunction() {
        let pr = p(0.3, 0.4);
        let mu = c64(0.2, 0.9);
        for id in KummerSolutionId::ALL {
            let f = |x: f64| kummer_solution(id, &pr, mu, x);
            let r = apply_d(&f, &pr, 0.6, FD_STEP).unwrap() - mu * mu * f(0.6).unwrap();
            assert!(r.norm() < 1e-7 * (1.0 + f(0.6).unwrap().norm()), "{id:?} {r}");
        }
    }

    #[test]
    fn s_wronskian() {
        let pr = p(0.3, 0.4);
        let mu = c64(0.0, 1.0);
        let s1 = |x: f64| kummer::s1(0.3, 0.4, mu, x);
        let s2 = |x: f64| kummer::s2(0.3, 0.4, mu, x);
        for x in [0.0, 1.0, 2.0] {
            let w = wronskian_sigma(&s1, &s2, x, FD_STEP).unwrap();
            assert!((w - I * pr.a()).norm() < 1e-8, "{x} {w}");
        }
    }

    #[test]
    fn resolvent_forms_agree() {
        let pr = p(0.3, 0.4);
        let lam = c64(1.0, 2.0);
        let st = resolvent_kernel(0.5, -0.7, lam, ResolventForm::ST, &pr).unwrap();
        let ss = resolvent_kernel(0.5, -0.7, lam, ResolventForm::SS, &pr).unwrap();
        let gr = resolvent_green(0.5, -0.7, lam, &pr).unwrap();
        assert!((st - ss).norm() < 1e-10 * st.norm());
        assert!((st - gr).norm() < 1e-10 * st.norm());
    }

    #[test]
    fn degenerate_mu_flag() {
        let pr = p(0.3, 0.4);
        assert!(matches!(connection_check(Connection::VViaS, &pr, c64(-0.5, 0.0), 1.5), Err(Error::DegenerateMu { .. })));
    }
}

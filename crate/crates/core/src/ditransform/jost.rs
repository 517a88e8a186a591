//! Jost solutions u1 = V-(is), u2 = W-(is) on the real line and their
//! scattering data.
//!
//! For |x| >= X0 the zeta = 1/(1/2 - ix) series is used (on x < -X0 through
//! V- = t- W- + t+ W+). Between -X0 and X0 the values are carried by Taylor
//! integration of the operator's ODE along the real axis; all solutions
//! oscillate there, so the integration is stable in either direction.

use crate::complex_special::{c64, cpow, gratio, C64, I, ONE, ZERO};
use crate::error::{Error, Result};
use crate::hyp::hyp2f1_value;
use crate::kummer::big_a;
use crate::ode::{OdeState, PolyOde};
use std::f64::consts::PI;

/// Left edge of the series region for spectral parameter s.
pub fn series_radius(s: f64) -> f64 {
    (0.3 * s).max(1.5)
}

/// Reflection-type coefficient t- in V- = t- W- + t+ W+ at mu = is.
pub fn t_minus(alpha: f64, beta: f64, s: f64) -> C64 {
    let a = big_a(alpha, beta);
    let e1 = (-PI * s).exp();
    let e3 = (-3.0 * PI * s).exp();
    let den = -(-4.0 * PI * s).exp_m1();
    I * 2.0 * ((a * PI).cos() * e3 + (a.conj() * PI).cos() * e1) / den
}

/// Transmission-type coefficient t+ in V- = t- W- + t+ W+ at mu = is.
pub fn t_plus(alpha: f64, beta: f64, s: f64) -> Result<C64> {
    let mu = c64(0.0, s);
    let g = gratio(
        &[ONE + 2.0 * mu, ONE + 2.0 * mu],
        &[
            c64(0.5 + alpha, 0.0) + mu,
            c64(0.5, beta) + mu,
            c64(0.5 - alpha, 0.0) + mu,
            c64(0.5, -beta) + mu,
        ],
    )?;
    Ok(g * PI / mu)
}

/// Channel amplitudes of u1 and u2 on (x^{-1/2-is}, x^{-1/2+is}) at +inf and
/// (|x|^{-1/2-is}, |x|^{-1/2+is}) at -inf.
pub fn amplitudes(alpha: f64, beta: f64, s: f64) -> Result<[[C64; 4]; 2]> {
    Ok([
        [ONE, ZERO, t_minus(alpha, beta, s), t_plus(alpha, beta, s)?],
        [t_minus(alpha, -beta, s), t_plus(alpha, -beta, s)?, ONE, ZERO],
    ])
}

/// Spectral density in Jost coordinates: (1/pi) G^{-1}, G the flux Gram matrix
/// of the channel amplitudes.
pub fn jost_density(alpha: f64, beta: f64, s: f64) -> Result<[[C64; 2]; 2]> {
    let amp = amplitudes(alpha, beta, s)?;
    let mut g = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            g[i][j] = (0..4).map(|k| amp[i][k].conj() * amp[j][k]).sum();
        }
    }
    let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    if det.norm() == 0.0 {
        return Err(Error::DegenerateMu { re: 0.0, im: s });
    }
    let f = (det * PI).inv();
    Ok([[g[1][1] * f, -g[0][1] * f], [-g[1][0] * f, g[0][0] * f]])
}

/// V-(is) and its x-derivative from the zeta series, x > 0.
fn v_series_with_derivative(alpha: f64, beta: f64, mu: C64, x: f64) -> Result<(C64, C64)> {
    let a = big_a(alpha, beta);
    let zp = c64(0.5, x);
    let zm = c64(0.5, -x);
    let zeta = zm.inv();
    let e = c64(-0.5, 0.0) + a / 2.0 - mu;
    let phase = ((c64(-0.5, 0.0) + a - mu) * (I * PI / 2.0)).exp();
    let pref = phase * cpow(zp, -a / 2.0) * cpow(zm, e);
    let (pa, pb, pc) = (c64(0.5 - alpha, 0.0) + mu, c64(0.5, -beta) + mu, ONE + 2.0 * mu);
    let f = hyp2f1_value(pa, pb, pc, zeta)?;
    let df = pa * pb / pc * hyp2f1_value(pa + 1.0, pb + 1.0, pc + 1.0, zeta)?;
    let dlog = -a / 2.0 * I / zp - e * I / zm;
    let v = pref * f;
    let dv = v * dlog + pref * df * I * zeta * zeta;
    Ok((v, dv))
}

fn operator_ode(alpha: f64, beta: f64, lambda: C64) -> PolyOde {
    let a = big_a(alpha, beta);
    let a2 = a * a;
    let ab2 = a.conj() * a.conj();
    let k = c64(0.25, 0.0) - lambda;
    PolyOde::new(
        vec![c64(1.0 / 16.0, 0.0), ZERO, c64(0.5, 0.0), ZERO, ONE],
        vec![ZERO, c64(0.5, 0.0), ZERO, c64(2.0, 0.0)],
        vec![(a2 + ab2) / 8.0 + k / 4.0, (ab2 - a2) * I / 4.0, k],
        vec![c64(0.0, 0.5), c64(0.0, -0.5)],
    )
}

/// Values of V-(alpha, beta; is; x) at the sorted abscissae `xs`. The second
/// return value is the relative mismatch at -X0 between the ODE-carried value
/// and the scattering representation.
pub fn v_minus_on_grid(alpha: f64, beta: f64, s: f64, xs: &[f64]) -> Result<(Vec<C64>, f64)> {
    let mu = c64(0.0, s);
    let x0 = series_radius(s);
    let mut out = vec![ZERO; xs.len()];
    for (o, &x) in out.iter_mut().zip(xs) {
        if x >= x0 {
            *o = v_series_with_derivative(alpha, beta, mu, x)?.0;
        }
    }
    let (w, dw) = v_series_with_derivative(alpha, beta, mu, x0)?;
    let ode = operator_ode(alpha, beta, mu * mu);
    let ratio = (2.0 / s.max(1.0)).min(0.5);
    let mut st = OdeState { z: c64(x0, 0.0), w, dw };
    for i in (0..xs.len()).rev() {
        let x = xs[i];
        if x >= x0 || x <= -x0 {
            continue;
        }
        st = ode.continue_to(st, c64(x, 0.0), ratio, 1.0)?.0;
        out[i] = st.w;
    }
    st = ode.continue_to(st, c64(-x0, 0.0), ratio, 1.0)?.0;
    let tm = t_minus(alpha, beta, s);
    let tp = t_plus(alpha, beta, s)?;
    let left = |x: f64| -> Result<C64> {
        let wm = v_series_with_derivative(alpha, -beta, mu, -x)?.0;
        let wp = v_series_with_derivative(alpha, -beta, -mu, -x)?.0;
        Ok(tm * wm + tp * wp)
    };
    let at_edge = left(-x0)?;
    let mismatch = (at_edge - st.w).norm() / at_edge.norm().max(1e-300);
    for (o, &x) in out.iter_mut().zip(xs) {
        if x <= -x0 {
            *o = left(x)?;
        }
    }
    Ok((out, mismatch))
}

/// Both Jost solutions on the sorted grid `xs`, plus the larger edge mismatch.
pub fn jost_on_grid(alpha: f64, beta: f64, s: f64, xs: &[f64]) -> Result<(Vec<C64>, Vec<C64>, f64)> {
    let (u1, m1) = v_minus_on_grid(alpha, beta, s, xs)?;
    let neg: Vec<f64> = xs.iter().rev().map(|x| -x).collect();
    let (mut u2, m2) = v_minus_on_grid(alpha, -beta, s, &neg)?;
    u2.reverse();
    Ok((u1, u2, m1.max(m2)))
}

/// Matrix P with (Q1, Q2)^T = P (u1, u2)^T at mu = is.
pub fn kernel_from_jost(alpha: f64, beta: f64, s: f64) -> Result<[[C64; 2]; 2]> {
    use crate::kummer::{c_const, chi};
    let a = big_a(alpha, beta);
    let mu = c64(0.0, s);
    let pre = -I / ((a * PI).sin() * 2.0);
    let ga = crate::complex_special::gamma(a)?;
    let gma = crate::complex_special::gamma(-a)?;
    let cp = c_const(alpha, beta, mu)?;
    let cm = c_const(-alpha, -beta, mu)?;
    let xp = chi(alpha, beta, -mu);
    let xm = chi(-alpha, -beta, -mu);
    Ok([
        [pre / (ga * cp * xp), -pre * xp / (ga * cp)],
        [-pre / (gma * cm * xm), pre * xm / (gma * cm)],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kummer;

    #[test]
    fn grid_values_match_independent_routes() {
        let (al, be, s) = (0.3, 0.4, 1.3);
        let mu = c64(0.0, s);
        let xs = [-7.0, -2.0, -0.4, 0.0, 0.7, 1.2, 3.0, 40.0];
        let (u1, u2, mis) = jost_on_grid(al, be, s, &xs).unwrap();
        assert!(mis < 1e-10, "{mis}");
        for (i, &x) in xs.iter().enumerate() {
            let v = kummer::v_minus(al, be, mu, x).unwrap();
            let w = kummer::w_minus(al, be, mu, x).unwrap();
            assert!((u1[i] - v).norm() < 1e-9 * v.norm().max(1.0), "V {x}: {} {}", u1[i], v);
            assert!((u2[i] - w).norm() < 1e-9 * w.norm().max(1.0), "W {x}: {} {}", u2[i], w);
        }
    }

    #[test]
    fn scattering_relation() {
        // V- = t- W- + t+ W+ checked away from the series edge
        let (al, be, s) = (0.45, -0.8, 0.9);
        let mu = c64(0.0, s);
        let x = -0.6;
        let v = kummer::v_minus(al, be, mu, x).unwrap();
        let r = t_minus(al, be, s) * kummer::w_minus(al, be, mu, x).unwrap()
            + t_plus(al, be, s).unwrap() * kummer::w_plus(al, be, mu, x).unwrap();
        assert!((v - r).norm() < 1e-10 * v.norm());
    }

    #[test]
    fn kernels_from_jost() {
        let (al, be, s) = (0.3, 0.4, 1.1);
        let p = kernel_from_jost(al, be, s).unwrap();
        let mu = c64(0.0, s);
        let x = 0.35;
        let (u1, u2, _) = jost_on_grid(al, be, s, &[x]).unwrap();
        let ga = crate::complex_special::gamma(big_a(al, be)).unwrap();
        let q1 = kummer::s1(al, be, mu, x).unwrap() / ga;
        let q2 = kummer::s2(al, be, mu, x).unwrap() / crate::complex_special::gamma(-big_a(al, be)).unwrap();
        assert!((p[0][0] * u1[0] + p[0][1] * u2[0] - q1).norm() < 1e-10 * q1.norm());
        assert!((p[1][0] * u1[0] + p[1][1] * u2[0] - q2).norm() < 1e-10 * q2.norm());
    }

    #[test]
    fn large_s_mismatch_small() {
        let xs: Vec<f64> = (-40..=40).map(|k| k as f64 * 0.2).collect();
        let (_, _, mis) = jost_on_grid(1.7, 0.3, 18.0, &xs).unwrap();
        assert!(mis < 1e-9, "{mis}");
    }
}

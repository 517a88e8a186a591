//! Gauss 2F1 with region dispatch.

use super::{pfq_series, terminating_length, EvalReport, Method};
use crate::complex_special::{c64, cpow, gratio, nonpositive_integer, C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::ode::{OdeState, PolyOde};

const R_DIRECT: f64 = 0.75;
const R_INFINITY: f64 = 1.5;
/// Parameter differences closer than this to an integer skip the connection formulas.
const NEAR_INTEGER: f64 = 1e-3;
const TOL: f64 = 1e-16;

fn near_integer(z: C64) -> bool {
    z.im.abs() < NEAR_INTEGER && (z.re - z.re.round()).abs() < NEAR_INTEGER
}

fn rel_err(value: C64, abs_err: f64) -> f64 {
    abs_err / value.norm().max(f64::MIN_POSITIVE)
}

fn direct(a: C64, b: C64, c: C64, z: C64, method: Method) -> Result<EvalReport> {
    let s = pfq_series(&[a, b], &[c], z, TOL)?;
    Ok(EvalReport {
        value: s.value,
        terms_used: s.terms,
        method,
        est_error: rel_err(s.value, s.abs_err),
    })
}

/// 2F1(a, b; c; z), principal branch (cut along [1, inf)).
pub fn hyp2f1(a: C64, b: C64, c: C64, z: C64) -> Result<EvalReport> {
    if let Some(m) = nonpositive_integer(c) {
        if terminating_length(&[a, b]).map_or(true, |n| n > m) {
            return Err(Error::Pole { re: c.re, im: c.im });
        }
    }
    if z == ZERO {
        return Ok(EvalReport { value: ONE, terms_used: 1, method: Method::DirectSeries, est_error: 0.0 });
    }
    if terminating_length(&[a, b]).is_some() {
        return direct(a, b, c, z, Method::DirectSeries);
    }
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(Error::BranchCut { re: z.re, im: z.im });
    }
    if terminating_length(&[c - a, c - b]).is_some() {
        let r = direct(c - a, c - b, c, z, Method::Euler)?;
        return Ok(EvalReport { value: cpow(ONE - z, c - a - b) * r.value, ..r });
    }
    let zn = z.norm();
    if zn <= R_DIRECT {
        return direct(a, b, c, z, Method::DirectSeries);
    }
    let zp = z / (z - 1.0);
    if zp.norm() <= R_DIRECT {
        let r = direct(a, c - b, c, zp, Method::Pfaff)?;
        return Ok(EvalReport { value: cpow(ONE - z, -a) * r.value, ..r });
    }
    if (ONE - z).norm() <= R_DIRECT && !near_integer(c - a - b) {
        if let Ok(r) = connection_one(a, b, c, z) {
            return Ok(r);
        }
    }
    if zn >= R_INFINITY && !near_integer(a - b) {
        if let Ok(r) = connection_infinity(a, b, c, z) {
            return Ok(r);
        }
    }
    taylor(a, b, c, z).map_err(|e| Error::NearDegenerate(format!("2F1({a}, {b}; {c}; {z}): {e}")))
}

/// Value only.
pub fn hyp2f1_value(a: C64, b: C64, c: C64, z: C64) -> Result<C64> {
    Ok(hyp2f1(a, b, c, z)?.value)
}

fn connection_one(a: C64, b: C64, c: C64, z: C64) -> Result<EvalReport> {
    let w = ONE - z;
    let g1 = gratio(&[c, c - a - b], &[c - a, c - b])?;
    let g2 = gratio(&[c, a + b - c], &[a, b])?;
    let s1 = pfq_series(&[a, b], &[a + b - c + 1.0], w, TOL)?;
    let s2 = pfq_series(&[c - a, c - b], &[c - a - b + 1.0], w, TOL)?;
    let p = cpow(w, c - a - b);
    let t1 = g1 * s1.value;
    let t2 = g2 * p * s2.value;
    let value = t1 + t2;
    let abs = g1.norm() * s1.abs_err + (g2 * p).norm() * s2.abs_err + 1e-16 * (t1.norm() + t2.norm());
    Ok(EvalReport {
        value,
        terms_used: s1.terms + s2.terms,
        method: Method::ConnectionAtOne,
        est_error: rel_err(value, abs),
    })
}

fn connection_infinity(a: C64, b: C64, c: C64, z: C64) -> Result<EvalReport> {
    let u = z.inv();
    let mz = -z;
    let g1 = gratio(&[c, b - a], &[b, c - a])?;
    let g2 = gratio(&[c, a - b], &[a, c - b])?;
    let s1 = pfq_series(&[a, a - c + 1.0], &[a - b + 1.0], u, TOL)?;
    let s2 = pfq_series(&[b, b - c + 1.0], &[b - a + 1.0], u, TOL)?;
    let p1 = cpow(mz, -a);
    let p2 = cpow(mz, -b);
    let t1 = g1 * p1 * s1.value;
    let t2 = g2 * p2 * s2.value;
    let value = t1 + t2;
    let abs = (g1 * p1).norm() * s1.abs_err + (g2 * p2).norm() * s2.abs_err + 1e-16 * (t1.norm() + t2.norm());
    Ok(EvalReport {
        value,
        terms_used: s1.terms + s2.terms,
        method: Method::ConnectionAtInfinity,
        est_error: rel_err(value, abs),
    })
}

fn gauss_ode(a: C64, b: C64, c: C64) -> PolyOde {
    // z(1-z) w'' + (c - (a+b+1) z) w' - ab w = 0
    PolyOde::new(
        vec![ZERO, ONE, c64(-1.0, 0.0)],
        vec![c, -(a + b + 1.0)],
        vec![-(a * b)],
        vec![ZERO, ONE],
    )
}

fn taylor(a: C64, b: C64, c: C64, z: C64) -> Result<EvalReport> {
    let z0 = z * (0.5 / z.norm());
    let f = pfq_series(&[a, b], &[c], z0, TOL)?;
    let df = pfq_series(&[a + 1.0, b + 1.0], &[c + 1.0], z0, TOL)?;
    let st = OdeState { z: z0, w: f.value, dw: a * b / c * df.value };
    let max_step = if z.norm() <= 3.0 { 0.2 } else { 0.1 * z.norm() };
    let (end, err) = gauss_ode(a, b, c).continue_to(st, z, 0.5, max_step)?;
    Ok(EvalReport {
        value: end.w,
        terms_used: f.terms + df.terms,
        method: Method::TaylorContinuation,
        est_error: err + rel_err(f.value, f.abs_err),
    })
}

/// Continue a solution of the Gauss equation given by value and derivative at
/// `from` along the straight segment to `to`. Returns value and derivative.
pub fn hyp2f1_continue(a: C64, b: C64, c: C64, from: C64, w: C64, dw: C64, to: C64) -> Result<(C64, C64)> {
    let st = OdeState { z: from, w, dw };
    let (end, _) = gauss_ode(a, b, c).continue_to(st, to, 0.5, 0.2)?;
    Ok((end.w, end.dw))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_special::gamma;

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn elementary_cases() {
        // 2F1(1,1;2;z) = -ln(1-z)/z
        for z in [c64(0.3, 0.1), c64(-0.9, 0.4), c64(0.95, 0.2), c64(-4.0, 1.0), c64(1.1, 0.6), c64(3.0, -0.01)] {
            let v = hyp2f1(ONE, ONE, c64(2.0, 0.0), z).unwrap();
            let e = -(ONE - z).ln() / z;
            assert!(rel(v.value, e) < 1e-12, "{z} {:?} {}", v.method, rel(v.value, e));
        }
        // 2F1(a,b;b;z) = (1-z)^{-a}
        let a = c64(0.3, 0.7);
        for z in [c64(0.9, 0.5), c64(-2.0, 0.3), c64(5.0, 2.0)] {
            let v = hyp2f1(a, c64(1.3, 0.0), c64(1.3, 0.0), z).unwrap();
            assert!(rel(v.value, cpow(ONE - z, -a)) < 1e-11, "{z} {:?}", v.method);
        }
    }

    #[test]
    fn branch_cut_rejected() {
        assert!(matches!(hyp2f1(c64(0.3, 0.0), c64(0.2, 0.0), c64(1.1, 0.0), c64(2.0, 0.0)), Err(Error::BranchCut { .. })));
    }

    #[test]
    fn gauss_sum_limit() {
        let (a, b, c) = (c64(0.3, 0.0), c64(0.2, 0.5), c64(2.1, 0.0));
        let v = hyp2f1(a, b, c, c64(1.0 - 1e-6, 0.0)).unwrap().value;
        let g = gamma(c).unwrap() * gamma(c - a - b).unwrap() / (gamma(c - a).unwrap() * gamma(c - b).unwrap());
        assert!(rel(v, g) < 1e-4);
    }

    #[test]
    fn degenerate_connection_uses_continuation() {
        // c - a - b = 0 and a - b = 0: log cases handled by the ODE path
        let (a, b, c) = (c64(0.5, 0.0), c64(0.5, 0.0), ONE);
        let z = c64(0.9, 0.3);
        let v = hyp2f1(a, b, c, z).unwrap();
        assert_eq!(v.method, Method::TaylorContinuation);
        // compare with Pfaff image 2F1(a, c-b; c; z/(z-1)) continued the same way
        let w = cpow(ONE - z, -a) * hyp2f1(a, c - b, c, z / (z - 1.0)).unwrap().value;
        assert!(rel(v.value, w) < 1e-11);
    }
}

//! Taylor-series continuation for linear second-order ODEs with polynomial
//! coefficients, p0(z) w'' + p1(z) w' + p2(z) w = 0.

use crate::complex_special::{C64, ZERO};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct PolyOde {
    pub p0: Vec<C64>,
    pub p1: Vec<C64>,
    pub p2: Vec<C64>,
    /// Zeros of p0; steps stay inside the disk of convergence.
    pub singular: Vec<C64>,
}

/// Solution value and derivative at a point.
#[derive(Debug, Clone, Copy)]
pub struct OdeState {
    pub z: C64,
    pub w: C64,
    pub dw: C64,
}

/// Coefficients of p(z0 + t) in powers of t.
pub fn taylor_shift(p: &[C64], z0: C64) -> Vec<C64> {
    let mut q = p.to_vec();
    let n = q.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = q[j + 1] * z0;
            q[j] += t;
        }
    }
    q
}

const MAX_ORDER: usize = 400;

impl PolyOde {
    pub fn new(p0: Vec<C64>, p1: Vec<C64>, p2: Vec<C64>, singular: Vec<C64>) -> Self {
        Self { p0, p1, p2, singular }
    }

    pub fn dist_to_singular(&self, z: C64) -> f64 {
        self.singular
            .iter()
            .map(|s| (z - s).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// One Taylor step of length `h` from `st`. Returns the new state and an
    /// estimate of the truncation error relative to the largest term.
    pub fn step(&self, st: OdeState, h: C64) -> Result<(OdeState, f64)> {
        let scale = |p: &[C64], extra: C64| -> Vec<C64> {
            let mut q = taylor_shift(p, st.z);
            let mut hp = extra;
            for c in q.iter_mut() {
                *c *= hp;
                hp *= h;
            }
            q
        };
        let q0 = scale(&self.p0, C64::new(1.0, 0.0));
        let q1 = scale(&self.p1, h);
        let q2 = scale(&self.p2, h * h);
        if q0[0].norm() == 0.0 {
            return Err(Error::Domain(format!("Taylor step started at singular point {}", st.z)));
        }
        let mut d: Vec<C64> = Vec::with_capacity(64);
        d.push(st.w);
        d.push(st.dw * h);
        let mut sum = d[0] + d[1];
        let mut dsum = d[1];
        let mut size = d[0].norm().max(d[1].norm());
        let mut small = 0;
        let mut last = f64::INFINITY;
        for k in 0..MAX_ORDER {
            // coefficient of tau^k in q0 w'' + q1 w' + q2 w
            let mut acc = ZERO;
            for (j, &c) in q0.iter().enumerate().skip(1) {
                if j <= k + 1 {
                    let m = k + 2 - j;
                    acc += c * d[m] * ((m * (m - 1)) as f64);
                }
            }
            for (j, &c) in q1.iter().enumerate() {
                if j <= k {
                    let m = k + 1 - j;
                    acc += c * d[m] * (m as f64);
                }
            }
            for (j, &c) in q2.iter().enumerate() {
                if j <= k {
                    acc += c * d[k - j];
                }
            }
            let next = -acc / (q0[0] * (((k + 2) * (k + 1)) as f64));
            d.push(next);
            sum += next;
            dsum += next * ((k + 2) as f64);
            let a = next.norm();
            size = size.max(a);
            if a <= 1e-17 * size {
                small += 1;
                if small >= 3 {
                    last = a;
                    break;
                }
            } else {
                small = 0;
            }
            last = a;
        }
        if small < 3 && last > 1e-13 * size {
            return Err(Error::SeriesDivergence(MAX_ORDER));
        }
        let err = last / size.max(f64::MIN_POSITIVE) + 1e-16 * d.len() as f64;
        Ok((
            OdeState { z: st.z + h, w: sum, dw: dsum / h },
            err,
        ))
    }

    /// Continue along the straight segment from `st.z` to `target`. Steps are
    /// at most `ratio` times the distance to the nearest singular point and at
    /// most `max_step` in length.
    pub fn continue_to(
        &self,
        mut st: OdeState,
        target: C64,
        ratio: f64,
        max_step: f64,
    ) -> Result<(OdeState, f64)> {
        let mut err = 0.0;
        let mut steps = 0usize;
        loop {
            let rem = target - st.z;
            let len = rem.norm();
            if len == 0.0 {
                break;
            }
            let dist = self.dist_to_singular(st.z);
            let hmax = (ratio * dist).min(max_step);
            if !(hmax > 1e-12) {
                return Err(Error::Domain(format!("continuation path passes through a singular point near {}", st.z)));
            }
            let h = if len <= hmax { rem } else { rem * (hmax / len) };
            let (next, e) = self.step(st, h)?;
            st = next;
            if len <= hmax {
                st.z = target;
            }
            err += e;
            steps += 1;
            if steps > 100_000 {
                return Err(Error::SeriesDivergence(steps));
            }
        }
        Ok((st, err))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_special::{c64, ONE};

    #[test]
    fn shift_matches_direct_evaluation() {
        let p = vec![c64(1.0, 0.0), c64(-2.0, 1.0), c64(0.5, 0.0), c64(0.0, 3.0)];
        let z0 = c64(0.7, -0.2);
        let q = taylor_shift(&p, z0);
        let t = c64(0.3, 0.1);
        let direct: C64 = p.iter().enumerate().map(|(k, c)| c * (z0 + t).powu(k as u32)).sum();
        let shifted: C64 = q.iter().enumerate().map(|(k, c)| c * t.powu(k as u32)).sum();
        assert!((direct - shifted).norm() < 1e-14);
    }

    #[test]
    fn harmonic_oscillator() {
        // w'' + w = 0, w(0) = 1, w'(0) = 0
        let ode = PolyOde::new(vec![ONE], vec![ZERO], vec![ONE], vec![]);
        let st = OdeState { z: ZERO, w: ONE, dw: ZERO };
        let (end, _) = ode.continue_to(st, c64(10.0, 0.0), 0.5, 1.0).unwrap();
        assert!((end.w.re - 10f64.cos()).abs() < 1e-13);
        assert!((end.dw.re + 10f64.sin()).abs() < 1e-13);
    }

    #[test]
    fn euler_equation_near_singularity() {
        // z^2 w'' - 2 w = 0 has w = z^2
        let ode = PolyOde::new(vec![ZERO, ZERO, ONE], vec![ZERO], vec![c64(-2.0, 0.0)], vec![ZERO]);
        let st = OdeState { z: ONE, w: ONE, dw: c64(2.0, 0.0) };
        let target = c64(0.01, 0.02);
        let (end, _) = ode.continue_to(st, target, 0.5, 1.0).unwrap();
        assert!((end.w - target * target).norm() < 1e-14);
    }
}

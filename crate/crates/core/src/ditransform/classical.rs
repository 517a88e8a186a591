//! The classical (one-index) hypergeometric transform on the half-line,
//! kept as a baseline:
//! g(s) = Gamma(b+c)^{-1} int_0^inf f(x) F(b+is, b-is; b+c; -x) x^{b+c-1} (1+x)^{b-c} dx,
//! f(x) = (2 pi Gamma(b+c))^{-1} int_0^inf g(s) F(b+is, b-is; b+c; -x) |Gamma(b+is) Gamma(c+is) / Gamma(2is)|^2 ds.
//!
//! The inversion constant is 1/(2 pi Gamma(b+c)); with 1/(pi Gamma(b+c)) the
//! round trip returns 2f.

use super::SpectralGrid;
use crate::complex_special::{c64, gamma_real, ln_abs_gamma_2is_sq_inverse, log_gamma, C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::hyp::pfq_series;
use crate::ode::{OdeState, PolyOde};
use crate::quad::SampledFunction;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassicalData {
    pub b: f64,
    pub c: f64,
    pub s_grid: Vec<f64>,
    pub weights: Vec<f64>,
    pub values: Vec<C64>,
}

fn check_bc(b: f64, c: f64) -> Result<()> {
    if !(b > 0.0 && c > 0.0) {
        return Err(Error::Invalid(format!("classical transform needs b, c > 0, got ({b}, {c})")));
    }
    Ok(())
}

/// F(b+is, b-is; b+c; -x) at the sorted positive abscissae `xs`, carried by
/// Taylor integration of the Gauss equation along the negative real axis.
pub fn classical_kernel_on_grid(b: f64, c: f64, s: f64, xs: &[f64]) -> Result<Vec<f64>> {
    if xs.first().map_or(false, |&x| !(x > 0.0)) || xs.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Invalid("classical kernel needs increasing positive abscissae".into()));
    }
    let (pa, pb, pc) = (c64(b, s), c64(b, -s), c64(b + c, 0.0));
    // series inside x0, ODE continuation beyond
    let x0 = 0.1 / (b * b + s * s + 1.0);
    let z0 = c64(-x0, 0.0);
    let w = pfq_series(&[pa, pb], &[pc], z0, 1e-17)?.value;
    let dw = pa * pb / pc * pfq_series(&[pa + 1.0, pb + 1.0], &[pc + 1.0], z0, 1e-17)?.value;
    let ode = PolyOde::new(
        vec![ZERO, ONE, c64(-1.0, 0.0)],
        vec![pc, -(pa + pb + 1.0)],
        vec![-(pa * pb)],
        vec![ZERO, ONE],
    );
    let ratio = (1.0 / (s + 1.0)).min(0.5);
    let mut st = OdeState { z: z0, w, dw };
    let mut out = Vec::with_capacity(xs.len());
    for &x in xs {
        if x <= x0 {
            out.push(pfq_series(&[pa, pb], &[pc], c64(-x, 0.0), 1e-17)?.value.re);
            continue;
        }
        st = ode.continue_to(st, c64(-x, 0.0), ratio, f64::INFINITY)?.0;
        out.push(st.w.re);
    }
    Ok(out)
}

/// Spectral density |Gamma(b+is) Gamma(c+is) / Gamma(2is)|^2 / (2 pi Gamma(b+c)).
pub fn classical_density(b: f64, c: f64, s: f64) -> Result<f64> {
    Ok(classical_density_displayed(b, c, s)? / 2.0)
}

/// The same weight with prefactor 1/(pi Gamma(b+c)).
pub fn classical_density_displayed(b: f64, c: f64, s: f64) -> Result<f64> {
    let l = 2.0 * (log_gamma(c64(b, s))?.re + log_gamma(c64(c, s))?.re) + ln_abs_gamma_2is_sq_inverse(s)?;
    Ok(l.exp() / (PI * gamma_real(b + c)?))
}

/// Forward classical transform of f sampled on (0, inf).
pub fn classical_index_transform(f: &SampledFunction, b: f64, c: f64, grid: &SpectralGrid) -> Result<ClassicalData> {
    check_bc(b, c)?;
    let xs = &f.abscissae;
    let fw: Vec<C64> = xs
        .iter()
        .zip(&f.values)
        .zip(&f.weights)
        .map(|((&x, v), w)| v * w * x.powf(b + c - 1.0) * (1.0 + x).powf(b - c))
        .collect();
    let g0 = gamma_real(b + c)?;
    let values: Result<Vec<C64>> = grid
        .nodes
        .par_iter()
        .map(|&s| {
            let k = classical_kernel_on_grid(b, c, s, xs)?;
            Ok(fw.iter().zip(&k).map(|(v, k)| v * k).sum::<C64>() / g0)
        })
        .collect();
    Ok(ClassicalData { b, c, s_grid: grid.nodes.clone(), weights: grid.weights.clone(), values: values? })
}

/// Inverse classical transform at the sorted positive abscissae `xs`.
pub fn classical_inverse(data: &ClassicalData, xs: &[f64]) -> Result<Vec<C64>> {
    check_bc(data.b, data.c)?;
    let parts: Result<Vec<Vec<C64>>> = (0..data.s_grid.len())
        .into_par_iter()
        .map(|i| {
            let s = data.s_grid[i];
            let coef = data.values[i] * data.weights[i] * classical_density(data.b, data.c, s)?;
            Ok(classical_kernel_on_grid(data.b, data.c, s, xs)?.into_iter().map(|k| coef * k).collect())
        })
        .collect();
    let mut out = vec![ZERO; xs.len()];
    for p in parts? {
        for (o, v) in out.iter_mut().zip(p) {
            *o += v;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyp::hyp2f1_value;

    #[test]
    fn kernel_matches_direct_evaluation() {
        let xs = [0.01, 0.3, 0.9, 2.5, 7.0, 40.0];
        for s in [0.5, 3.0, 9.0] {
            let k = classical_kernel_on_grid(1.0, 1.0, s, &xs).unwrap();
            for (i, &x) in xs.iter().enumerate() {
                let e = hyp2f1_value(c64(1.0, s), c64(1.0, -s), c64(2.0, 0.0), c64(-x, 0.0)).unwrap();
                assert!((k[i] - e.re).abs() < 1e-9 * (1.0 + e.re.abs()), "{s} {x}: {} {}", k[i], e);
            }
        }
    }

    #[test]
    fn zero_in_zero_out() {
        let xs = vec![0.5, 1.0, 2.0];
        let f = SampledFunction::new(xs.clone(), vec![ZERO; 3], vec![1.0; 3]).unwrap();
        let g = classical_index_transform(&f, 1.0, 1.0, &SpectralGrid::new(3.0, 8).unwrap()).unwrap();
        assert!(g.values.iter().all(|v| v.norm() == 0.0));
    }
}

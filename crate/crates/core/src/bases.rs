//! Explicit orthogonal families.
//!
//! The rational system r^(n) on the line and its vector-valued spectral images
//! Xi; Romanovski and Jacobi polynomials; perturbed Laguerre, Meixner and
//! Jacobi systems; and a 2F2 basis of L2(R) obtained by Fourier transforming
//! windowed Jacobi functions.
//!
//! Where a family needs corrected constants to be orthogonal (see the crate
//! README), the corrected evaluator is the plain name and the form exactly as
//! commonly displayed carries a `_displayed` suffix.

use crate::complex_special::{c64, cpow, gamma, gamma_real, gratio, log_gamma, rgamma, C64, I, ONE, ZERO};
use crate::ditransform::{y_weight, SpectralGrid, TransformParams};
use crate::error::{Error, Result};
use crate::hyp::{hyp2f1_regularized_star, hyp2f1_value, hyp3f2_unity, pfq_series, tricomi_psi, HypParams};
use crate::ode::{OdeState, PolyOde};
use crate::quad::{
    composite_gauss, integrate_tanh_sinh, weighted_l2z_inner, SampledFunction, SpectralBasis, VectorFunctionSample,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

fn sign_pow(n: i64) -> f64 {
    if n.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

// ---------------------------------------------------------------------------
// r^(n) and the Cauchy beta integral

/// r^(n)(x) = (1/2+ix)^{-1/2-n-(p+iq)/2} (1/2-ix)^{-1/2+n+(p-iq)/2}.
pub fn r_basis(n: i64, p: f64, q: f64, x: f64) -> C64 {
    let nf = n as f64;
    cpow(c64(0.5, x), c64(-0.5 - nf - 0.5 * p, -0.5 * q)) * cpow(c64(0.5, -x), c64(-0.5 + nf + 0.5 * p, -0.5 * q))
}

/// 2 pi Gamma(sigma+tau-1) / (Gamma(sigma) Gamma(tau)).
pub fn cauchy_beta(sigma: C64, tau: C64) -> Result<C64> {
    Ok(gratio(&[sigma + tau - 1.0], &[sigma, tau])? * (2.0 * PI))
}

/// Integral over the line of (1/2+ix)^{-sigma} (1/2-ix)^{-tau}, by the trapezoid
/// rule in t with x = sinh(t)/2. Needs Re(sigma+tau) > 1.
pub fn cauchy_beta_quadrature(sigma: C64, tau: C64, tol: f64) -> Result<C64> {
    let decay = (sigma + tau).re - 1.0;
    if !(decay > 0.0) {
        return Err(Error::Domain(format!("Cauchy beta integral diverges for Re(sigma+tau) = {}", decay + 1.0)));
    }
    let t_max = ((1.0 / tol).ln() + 5.0) / decay;
    let (xs, ws) = SampledFunction::sinh_grid(0.05, t_max.min(700.0));
    Ok(xs
        .par_iter()
        .zip(&ws)
        .map(|(&x, &w)| cpow(c64(0.5, x), -sigma) * cpow(c64(0.5, -x), -tau) * w)
        .sum())
}

/// Gram matrix of r^(n), n in `ns`, in L2(R, dx/2pi) by quadrature on the line.
pub fn r_gram(ns: &[i64], p: f64, q: f64) -> Vec<Vec<C64>> {
    let (xs, ws) = SampledFunction::sinh_grid(0.02, 40.0);
    let cols: Vec<Vec<C64>> = ns.iter().map(|&n| xs.iter().map(|&x| r_basis(n, p, q, x)).collect()).collect();
    gram_from_columns(&cols, &ws, 1.0 / (2.0 * PI))
}

/// The same Gram matrix after the substitution e^{i psi} = (1/2+ix)/(1/2-ix),
/// x = tan(psi/2)/2, as a Gauss rule in psi over (-pi, pi).
pub fn r_gram_angle(ns: &[i64], p: f64, q: f64) -> Vec<Vec<C64>> {
    let breaks: Vec<f64> = (0..=64).map(|k| -PI + 2.0 * PI * k as f64 / 64.0).collect();
    let (ps, pw) = composite_gauss(&breaks, 16);
    let xs: Vec<f64> = ps.iter().map(|&psi| 0.5 * (0.5 * psi).tan()).collect();
    let ws: Vec<f64> = ps.iter().zip(&pw).map(|(&psi, &w)| w * 0.25 / (0.5 * psi).cos().powi(2)).collect();
    let cols: Vec<Vec<C64>> = ns.iter().map(|&n| xs.iter().map(|&x| r_basis(n, p, q, x)).collect()).collect();
    gram_from_columns(&cols, &ws, 1.0 / (2.0 * PI))
}

fn gram_from_columns(cols: &[Vec<C64>], ws: &[f64], scale: f64) -> Vec<Vec<C64>> {
    let k = cols.len();
    let mut g = vec![vec![ZERO; k]; k];
    for i in 0..k {
        for j in 0..k {
            g[i][j] = cols[i].iter().zip(&cols[j]).zip(ws).map(|((a, b), w)| a * b.conj() * w).sum::<C64>() * scale;
        }
    }
    g
}

// ---------------------------------------------------------------------------
// Xi

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XiParams {
    pub alpha: f64,
    pub beta: f64,
    pub p: f64,
    pub q: f64,
}

impl XiParams {
    pub fn new(alpha: f64, beta: f64, p: f64, q: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 0.5) || !beta.is_finite() || !p.is_finite() || !q.is_finite() {
            return Err(Error::Invalid(format!("Xi needs 0 < alpha < 1/2 and finite beta, p, q; got ({alpha}, {beta}, {p}, {q})")));
        }
        Ok(Self { alpha, beta, p, q })
    }

    pub fn transform_params(&self) -> Result<TransformParams> {
        TransformParams::new(self.alpha, self.beta)
    }
}

fn xi_signs(j: usize, xp: &XiParams) -> Result<(f64, f64)> {
    match j {
        1 => Ok((xp.alpha, xp.beta)),
        2 => Ok((-xp.alpha, -xp.beta)),
        _ => Err(Error::Index { index: j as i64, count: 2 }),
    }
}

/// Xi^(j)_n(s) from the 3F2 form with Saalschutz excess 1/2 + iq + is (always
/// convergent), divided by (-1)^n g(s), g(s) = 2 Gamma(1/2+iq+is) Gamma(1/2+iq-is).
pub fn xi(j: usize, n: i64, xp: &XiParams, s: f64) -> Result<C64> {
    let (al, be) = xi_signs(j, xp)?;
    let (p, q) = (xp.p, xp.q);
    let nf = n as f64;
    let abar = c64(al, -be);
    let a1 = c64(0.5 - al, -s);
    let a2 = c64(0.5, be - s);
    let a3 = c64(0.5 + 0.5 * (p - al) + nf, 0.5 * (be - q));
    let b1 = c64(1.0 - al, be);
    let b2 = c64(0.5 * (p - al) + nf + 1.0, 0.5 * (q + be) - s);
    let c3 = c64(0.5 * (1.0 - p + al) - nf, 0.5 * (q - be));
    let f = hyp3f2_unity(&HypParams::new(&[a1, a2, a3], &[b1, b2]))?;
    let pre = rgamma(c64(0.5, q + s)) * rgamma(abar) * rgamma(b2) * rgamma(c3) * (PI * sign_pow(n));
    Ok(pre * f)
}

/// Xi^(j)_n(s) as displayed: cos((p - alpha + i(beta - q)) pi/2) times a gamma
/// ratio times a 3F2 at unity, continued by Thomae's relation where the series
/// diverges.
pub fn xi_displayed(j: usize, n: i64, xp: &XiParams, s: f64) -> Result<C64> {
    let (al, be) = xi_signs(j, xp)?;
    let (p, q) = (xp.p, xp.q);
    let nf = n as f64;
    let pre = ((c64(p - al, be - q)) * (PI / 2.0)).cos() * gratio(&[c64(1.0 - al, be)], &[c64(al, -be), c64(1.0, q + be), c64(1.0 - al, q)])?;
    let num = [c64(0.5 * (1.0 - al - p) - nf, 0.5 * (be + q)), c64(0.5, q + s), c64(0.5, q - s)];
    let den = [c64(1.0, q + be), c64(1.0 - al, q)];
    Ok(pre * hyp3f2_unity(&HypParams::new(&num, &den))?)
}

/// (-1)^n g(s): the transform of r^(n) against conj(Q_j) equals this times Xi^(j)_n(s).
pub fn xi_transform_factor(n: i64, q: f64, s: f64) -> Result<C64> {
    let g = (log_gamma(c64(0.5, q + s))? + log_gamma(c64(0.5, q - s))?).exp() * 2.0;
    Ok(g * sign_pow(n))
}

/// (Xi^(1)_n, Xi^(2)_n) on a spectral grid, in kernel coordinates.
pub fn xi_sample(n: i64, xp: &XiParams, grid: &SpectralGrid) -> Result<VectorFunctionSample> {
    let vals: Result<Vec<(C64, C64)>> =
        grid.nodes.par_iter().map(|&s| Ok((xi(1, n, xp, s)?, xi(2, n, xp, s)?))).collect();
    let (phi1, phi2): (Vec<C64>, Vec<C64>) = vals?.into_iter().unzip();
    VectorFunctionSample::new(grid.nodes.clone(), phi1, phi2, grid.weights.clone(), SpectralBasis::Kernel)
}

/// Gram matrix of Xi_n, n in `ns`, in Y(alpha, beta; q), entirely from the
/// closed forms. Reliable only for grids ending near s = 3; use
/// [`xi_gram_split`] for the full Gram matrix.
pub fn xi_gram(ns: &[i64], xp: &XiParams, grid: &SpectralGrid) -> Result<Vec<Vec<C64>>> {
    let params = xp.transform_params()?;
    let samples: Result<Vec<VectorFunctionSample>> = ns.iter().map(|&n| xi_sample(n, xp, grid)).collect();
    crate::quad::gram_matrix(&samples?, |u, v| crate::quad::inner_product_y(u, v, &params, xp.q))
}

/// Jost coordinates (<r^(n), u1>, <r^(n), u2>) on `grid`, by quadrature over
/// the sinh grid x = sinh(t)/2, |t| <= 44, step 0.02.
pub fn r_jost_samples(ns: &[i64], xp: &XiParams, grid: &SpectralGrid) -> Result<Vec<VectorFunctionSample>> {
    let params = xp.transform_params()?;
    let (xs, ws) = SampledFunction::sinh_grid(0.02, 44.0);
    let fw: Vec<Vec<C64>> =
        ns.iter().map(|&n| xs.iter().zip(&ws).map(|(&x, &w)| r_basis(n, xp.p, xp.q, x) * w).collect()).collect();
    let per_s: Result<Vec<Vec<(C64, C64)>>> = grid
        .nodes
        .par_iter()
        .map(|&s| {
            let (u1, u2, _) = crate::ditransform::jost_solutions(&params, s, &xs)?;
            Ok(fw
                .iter()
                .map(|f| {
                    let a = f.iter().zip(&u1).map(|(v, u)| v * u.conj()).sum();
                    let b = f.iter().zip(&u2).map(|(v, u)| v * u.conj()).sum();
                    (a, b)
                })
                .collect())
        })
        .collect();
    let per_s = per_s?;
    (0..ns.len())
        .map(|k| {
            let (phi1, phi2) = per_s.iter().map(|row| row[k]).unzip();
            VectorFunctionSample::new(grid.nodes.clone(), phi1, phi2, grid.weights.clone(), SpectralBasis::Jost)
        })
        .collect()
}

/// Gram matrix of the Xi family split at `s_split`.
#[derive(Debug, Clone, PartialEq)]
pub struct XiGram {
    pub s_split: f64,
    /// Contribution of (0, s_split), from the closed-form Xi in kernel coordinates.
    pub low: Vec<Vec<C64>>,
    /// Contribution of (s_split, s_max), from Jost-coordinate transforms of r^(n).
    pub high: Vec<Vec<C64>>,
    pub total: Vec<Vec<C64>>,
}

/// Y(alpha, beta; q) Gram matrix of Xi_n, n in `ns`.
///
/// The closed-form Xi are used below `s_split`. Above it, the kernel-coordinate
/// quadratic form loses about exp(2 pi s) * eps to cancellation, so the
/// high-s part is taken from (-1)^n g Xi_n = transform of r^(n), evaluated in
/// Jost coordinates where the density is well conditioned.
pub fn xi_gram_split(ns: &[i64], xp: &XiParams, s_split: f64, s_max: f64, order: usize) -> Result<XiGram> {
    if !(s_split > 1.0 && s_max > s_split) {
        return Err(Error::Invalid(format!("Xi Gram needs 1 < s_split < s_max, got {s_split}, {s_max}")));
    }
    let params = xp.transform_params()?;
    let low = xi_gram(ns, xp, &SpectralGrid::new(s_split, order)?)?;
    let panels = ((s_max - s_split) / 0.5).ceil() as usize;
    let breaks: Vec<f64> = (0..=panels).map(|k| s_split + (s_max - s_split) * k as f64 / panels as f64).collect();
    let (nodes, weights) = composite_gauss(&breaks, order);
    let samples = r_jost_samples(ns, xp, &SpectralGrid::from_nodes(nodes, weights)?)?;
    let mut high =
        crate::quad::gram_matrix(&samples, |u, v| crate::quad::inner_product_h(u, v, &params).map(|z| z / (2.0 * PI)))?;
    for (i, row) in high.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v *= sign_pow(ns[i] + ns[j]);
        }
    }
    let total = low
        .iter()
        .zip(&high)
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
        .collect();
    Ok(XiGram { s_split, low, high, total })
}

/// |g(s)|^2, re-exported for callers assembling their own Y products.
pub fn xi_weight(q: f64, s: f64) -> Result<f64> {
    y_weight(q, s)
}

// ---------------------------------------------------------------------------
// Classical polynomials

/// 2F1[-k, k-2 alpha+1; 1-alpha-i beta; 1/2+ix].
pub fn romanovski_poly(k: u32, alpha: f64, beta: f64, x: f64) -> Result<C64> {
    let kf = k as f64;
    Ok(pfq_series(&[c64(-kf, 0.0), c64(kf - 2.0 * alpha + 1.0, 0.0)], &[c64(1.0 - alpha, -beta)], c64(0.5, x), 1e-16)?.value)
}

/// (1/2+ix)^{-(alpha+i beta)} (1/2-ix)^{-(alpha-i beta)}, real and positive.
pub fn romanovski_weight(alpha: f64, beta: f64, x: f64) -> f64 {
    (cpow(c64(0.5, x), -c64(alpha, beta)) * cpow(c64(0.5, -x), -c64(alpha, -beta))).re
}

/// 2F1[-m, m+gamma+delta+1; delta+1; (1+x)/2], the Jacobi polynomial with unit
/// value at x = -1 (orthogonal for (1-x)^gamma (1+x)^delta).
pub fn jacobi_poly(m: u32, gamma: f64, delta: f64, x: f64) -> Result<f64> {
    let mf = m as f64;
    Ok(pfq_series(
        &[c64(-mf, 0.0), c64(mf + gamma + delta + 1.0, 0.0)],
        &[c64(delta + 1.0, 0.0)],
        c64(0.5 * (1.0 + x), 0.0),
        1e-16,
    )?
    .value
    .re)
}

// ---------------------------------------------------------------------------
// Perturbed Laguerre

fn check_laguerre(alpha: f64, beta: f64) -> Result<()> {
    if !((alpha - beta).abs() < 0.5) || (alpha.abs() - 0.5).abs() < 1e-14 || (beta.abs() - 0.5).abs() < 1e-14 {
        return Err(Error::Invalid(format!("perturbed Laguerre needs |alpha-beta| < 1/2, alpha, beta != +-1/2; got ({alpha}, {beta})")));
    }
    Ok(())
}

/// Psi(1/2+n+beta, 1-alpha+beta; y)/Gamma(1/2-n-alpha) for y > 0 and
/// Psi(1/2-n-alpha, 1-alpha+beta; -y)/Gamma(1/2+n+beta) for y < 0.
pub fn perturbed_laguerre(n: i64, alpha: f64, beta: f64, y: f64) -> Result<C64> {
    check_laguerre(alpha, beta)?;
    let nf = n as f64;
    let c = c64(1.0 - alpha + beta, 0.0);
    if y > 0.0 {
        Ok(tricomi_psi(c64(0.5 + nf + beta, 0.0), c, y)? * rgamma(c64(0.5 - nf - alpha, 0.0)))
    } else if y < 0.0 {
        Ok(tricomi_psi(c64(0.5 - nf - alpha, 0.0), c, -y)? * rgamma(c64(0.5 + nf + beta, 0.0)))
    } else {
        Err(Error::Domain("perturbed Laguerre is singular at y = 0".into()))
    }
}

/// |y|^{beta-alpha} e^{-|y|} times cos(pi beta) for y > 0, cos(pi alpha) for y < 0.
pub fn laguerre_weight(alpha: f64, beta: f64, y: f64) -> f64 {
    let f = if y > 0.0 { (PI * beta).cos() } else { (PI * alpha).cos() };
    f * y.abs().powf(beta - alpha) * (-y.abs()).exp()
}

/// (-1)^n pi / (Gamma(1/2+n+beta) Gamma(1/2-n-alpha)).
pub fn laguerre_norm_sq(n: i64, alpha: f64, beta: f64) -> Result<f64> {
    let nf = n as f64;
    Ok(sign_pow(n) * PI / (gamma_real(0.5 + nf + beta)? * gamma_real(0.5 - nf - alpha)?))
}

/// Weighted inner product of two perturbed Laguerre functions over the line.
pub fn laguerre_inner(n: i64, m: i64, alpha: f64, beta: f64, tol: f64) -> Result<f64> {
    let f = |y: f64| -> Result<C64> {
        if y.abs() > 700.0 {
            return Ok(ZERO);
        }
        Ok(perturbed_laguerre(n, alpha, beta, y)? * perturbed_laguerre(m, alpha, beta, y)?.conj() * laguerre_weight(alpha, beta, y))
    };
    let mut total = 0.0;
    for sg in [1.0, -1.0] {
        total += integrate_tanh_sinh(|u| f(sg * u), 0.0, 1.0, tol)?.value.re;
        // y = 1 + v/(1-v)
        total += integrate_tanh_sinh(
            |v| {
                let d = 1.0 - v;
                Ok(f(sg * (1.0 + v / d))? / (d * d))
            },
            0.0,
            1.0,
            tol,
        )?
        .value
        .re;
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Perturbed Meixner

fn check_meixner(alpha: f64, beta: f64, t: f64) -> Result<()> {
    if !(alpha.abs() < 0.5 && beta.abs() < 0.5) || t == 0.0 || !t.is_finite() {
        return Err(Error::Invalid(format!("perturbed Meixner needs |alpha|, |beta| < 1/2 and t != 0; got ({alpha}, {beta}, {t})")));
    }
    Ok(())
}

fn f21_star(a: C64, b: C64, c: C64, z: f64) -> Result<C64> {
    Ok(hyp2f1_regularized_star(a, b, c, c64(z, 0.0))?.value)
}

/// th(t)^{j-n}/Gamma(1/2-beta-n) F*[1/2+alpha+j, 1/2-beta-n; j-n+1; th^2 t],
/// orthogonal for the weight Gamma(1/2+beta+j)/Gamma(1/2+alpha+j).
pub fn perturbed_meixner(n: i64, alpha: f64, beta: f64, t: f64, j: i64) -> Result<C64> {
    check_meixner(alpha, beta, t)?;
    let (nf, jf, th) = (n as f64, j as f64, t.tanh());
    let f = f21_star(c64(0.5 + alpha + jf, 0.0), c64(0.5 - beta - nf, 0.0), c64(jf - nf + 1.0, 0.0), th * th)?;
    Ok(f * th.powi((j - n) as i32) * rgamma(c64(0.5 - beta - nf, 0.0)))
}

/// Gamma(1/2+beta+j) / Gamma(1/2+alpha+j), positive for |alpha|, |beta| < 1/2.
pub fn meixner_weight(alpha: f64, beta: f64, j: i64) -> Result<f64> {
    let jf = j as f64;
    Ok(gratio(&[c64(0.5 + beta + jf, 0.0)], &[c64(0.5 + alpha + jf, 0.0)])?.re)
}

/// ch(t)^{2+2alpha-2beta} Gamma(1/2+alpha+n) Gamma(1/2+beta+n).
pub fn meixner_norm_sq(n: i64, alpha: f64, beta: f64, t: f64) -> Result<f64> {
    let nf = n as f64;
    Ok(t.cosh().powf(2.0 + 2.0 * alpha - 2.0 * beta) * gamma_real(0.5 + alpha + nf)? * gamma_real(0.5 + beta + nf)?)
}

/// The displayed form: F*[1/2+alpha+j, 1/2-alpha-n; j-n-1; th^2 t].
pub fn perturbed_meixner_displayed(n: i64, alpha: f64, beta: f64, t: f64, j: i64) -> Result<C64> {
    check_meixner(alpha, beta, t)?;
    let (nf, jf, th) = (n as f64, j as f64, t.tanh());
    let f = f21_star(c64(0.5 + alpha + jf, 0.0), c64(0.5 - alpha - nf, 0.0), c64(jf - nf - 1.0, 0.0), th * th)?;
    Ok(f * th.powi((j - n) as i32) * rgamma(c64(0.5 - beta - nf, 0.0)))
}

/// Displayed weight Gamma(1/2+alpha+j)/Gamma(1/2+beta+j) and norm ch^{-2} t Gamma^2(1/2-alpha-n).
pub fn meixner_weight_displayed(alpha: f64, beta: f64, j: i64) -> Result<f64> {
    Ok(1.0 / meixner_weight(alpha, beta, j)?)
}

pub fn meixner_norm_sq_displayed(n: i64, alpha: f64, t: f64) -> Result<f64> {
    Ok(gamma_real(0.5 - alpha - n as f64)?.powi(2) / t.cosh().powi(2))
}

/// th(t)^{j-n}/Gamma(1/2-conj(a)-n) F*[1/2+a+j, 1/2-conj(a)-n; j-n+1; th^2 t]
/// for complex a; orthogonal in l2(Z) with squared norm ch^2 t |Gamma(1/2+a+n)|^2.
pub fn meixner_complex(n: i64, a: C64, t: f64, j: i64) -> Result<C64> {
    if t == 0.0 || !t.is_finite() {
        return Err(Error::Invalid(format!("t must be finite and nonzero, got {t}")));
    }
    let (nf, jf, th) = (n as f64, j as f64, t.tanh());
    let b = c64(0.5 - nf, 0.0) - a.conj();
    let f = f21_star(a + 0.5 + jf, b, c64(jf - nf + 1.0, 0.0), th * th)?;
    Ok(f * th.powi((j - n) as i32) * rgamma(b))
}

pub fn meixner_complex_norm_sq(n: i64, a: C64, t: f64) -> Result<f64> {
    Ok(t.cosh().powi(2) * gamma(a + 0.5 + n as f64)?.norm_sqr())
}

/// Weighted l2(Z) inner product of two sequences.
pub fn l2z_inner<X, Y, W>(x: X, y: Y, w: W) -> Result<C64>
where
    X: Fn(i64) -> Result<C64>,
    Y: Fn(i64) -> Result<C64>,
    W: Fn(i64) -> Result<f64>,
{
    weighted_l2z_inner(x, y, w, 4000, 1e-15)
}

// ---------------------------------------------------------------------------
// Perturbed Jacobi

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiShift {
    pub alpha: f64,
    pub beta: f64,
    pub theta: f64,
}

impl JacobiShift {
    pub fn new(alpha: f64, beta: f64, theta: f64) -> Result<Self> {
        let ok = alpha > -1.0 && alpha < 1.0 && beta > -1.0 && theta > 0.0 && theta < 1.0 && theta + alpha > 0.0 && theta + alpha < 1.0;
        if !ok {
            return Err(Error::Invalid(format!(
                "perturbed Jacobi needs -1 < alpha < 1, beta > -1, 0 < theta < 1, 0 < theta+alpha < 1; got ({alpha}, {beta}, {theta})"
            )));
        }
        Ok(Self { alpha, beta, theta })
    }

    /// Index theta + k, checked against 2n + alpha + beta + 1 > 0.
    pub fn index(&self, k: i64) -> Result<f64> {
        let n = self.theta + k as f64;
        if !(2.0 * n + self.alpha + self.beta + 1.0 > 0.0) {
            return Err(Error::Index { index: k, count: 0 });
        }
        Ok(n)
    }

    fn check_n(&self, n: f64) -> Result<()> {
        let k = n - self.theta;
        if (k - k.round()).abs() > 1e-9 || !(2.0 * n + self.alpha + self.beta + 1.0 > 0.0) {
            return Err(Error::Invalid(format!("index {n} is not theta + integer with 2n+alpha+beta+1 > 0")));
        }
        Ok(())
    }

    /// Gamma(beta+1) Gamma(1+n+alpha) / (Gamma(-n) Gamma(2n+alpha+beta+2)).
    fn outer_const(&self, n: f64) -> Result<f64> {
        let (a, b) = (self.alpha, self.beta);
        Ok((gratio(&[c64(b + 1.0, 0.0), c64(1.0 + n + a, 0.0)], &[c64(2.0 * n + a + b + 2.0, 0.0)])? * rgamma(c64(-n, 0.0))).re)
    }
}

fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0) || x == 1.0 {
        return Err(Error::Domain(format!("perturbed Jacobi is defined for x > 0, x != 1; got {x}")));
    }
    Ok(())
}

/// Phi_n(x): 2F1[-n, n+alpha+beta+1; beta+1; x] on (0, 1) and
/// c_n x^{-n-alpha-beta-1} 2F1[n+alpha+beta+1, n+alpha+1; 2n+alpha+beta+2; 1/x] on (1, inf),
/// c_n = Gamma(beta+1) Gamma(1+n+alpha) / (Gamma(-n) Gamma(2n+alpha+beta+2)).
pub fn perturbed_jacobi(n: f64, sh: &JacobiShift, x: f64) -> Result<f64> {
    sh.check_n(n)?;
    check_x(x)?;
    let (a, b) = (sh.alpha, sh.beta);
    if x < 1.0 {
        return Ok(hyp2f1_value(c64(-n, 0.0), c64(n + a + b + 1.0, 0.0), c64(b + 1.0, 0.0), c64(x, 0.0))?.re);
    }
    let f = hyp2f1_value(c64(n + a + b + 1.0, 0.0), c64(n + a + 1.0, 0.0), c64(2.0 * n + a + b + 2.0, 0.0), c64(1.0 / x, 0.0))?;
    Ok(sh.outer_const(n)? * x.powf(-n - a - b - 1.0) * f.re)
}

/// x^beta (1-x)^alpha on (0, 1) and sin(pi(alpha+theta))/sin(pi theta) x^beta (x-1)^alpha on (1, inf).
pub fn jacobi_weight(sh: &JacobiShift, x: f64) -> f64 {
    let (a, b, th) = (sh.alpha, sh.beta, sh.theta);
    if x < 1.0 {
        x.powf(b) * (1.0 - x).powf(a)
    } else {
        (PI * (a + th)).sin() / (PI * th).sin() * x.powf(b) * (x - 1.0).powf(a)
    }
}

/// Gamma^2(beta+1) Gamma(1+n) Gamma(1+n+alpha) / ((alpha+beta+2n+1) Gamma(beta+1+n) Gamma(n+alpha+beta+1)).
pub fn jacobi_norm_sq(n: f64, sh: &JacobiShift) -> Result<f64> {
    let (a, b) = (sh.alpha, sh.beta);
    let g = gratio(
        &[c64(b + 1.0, 0.0), c64(b + 1.0, 0.0), c64(1.0 + n, 0.0), c64(1.0 + n + a, 0.0)],
        &[c64(b + 1.0 + n, 0.0), c64(n + a + b + 1.0, 0.0)],
    )?;
    Ok(g.re / (a + b + 2.0 * n + 1.0))
}

/// The displayed outer branch x^{-n-beta-1} (x-1)^{-alpha} Gamma[n+alpha+beta+1, alpha+n+1; 2n+alpha+beta+2]
/// 2F1[n+alpha+beta+1, 2n+alpha+1; 2n+alpha+beta+2; 1/x] (the inner branch is unchanged).
pub fn perturbed_jacobi_displayed(n: f64, sh: &JacobiShift, x: f64) -> Result<f64> {
    if x < 1.0 {
        return perturbed_jacobi(n, sh, x);
    }
    sh.check_n(n)?;
    check_x(x)?;
    let (a, b) = (sh.alpha, sh.beta);
    let c = gratio(&[c64(n + a + b + 1.0, 0.0), c64(a + n + 1.0, 0.0)], &[c64(2.0 * n + a + b + 2.0, 0.0)])?.re;
    let f = hyp2f1_value(c64(n + a + b + 1.0, 0.0), c64(2.0 * n + a + 1.0, 0.0), c64(2.0 * n + a + b + 2.0, 0.0), c64(1.0 / x, 0.0))?;
    Ok(c * x.powf(-n - b - 1.0) * (x - 1.0).powf(-a) * f.re)
}

/// Displayed weight: factor sin(pi theta)/sin(pi(alpha+theta)) on x > 1.
pub fn jacobi_weight_displayed(sh: &JacobiShift, x: f64) -> f64 {
    let w = jacobi_weight(sh, x);
    if x < 1.0 {
        w
    } else {
        let r = (PI * sh.theta).sin() / (PI * (sh.alpha + sh.theta)).sin();
        w * r * r
    }
}

/// Integral over (0, inf) of f(x) g(x) w(x), split at 1/2, 1 and 2; the last
/// piece through x = 1/u. Tanh-sinh absorbs the algebraic endpoint behaviour.
pub fn half_line_split<F>(f: F, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let g = |x: f64| -> Result<C64> { Ok(c64(f(x)?, 0.0)) };
    let mut total = 0.0;
    for (a, b) in [(0.0, 0.5), (0.5, 1.0), (1.0, 2.0)] {
        total += integrate_tanh_sinh(&g, a, b, tol)?.value.re;
    }
    let outer = |u: f64| -> Result<C64> {
        let x = 1.0 / u;
        if !(x < 1e150) {
            return Ok(C64::new(0.0, 0.0));
        }
        Ok(g(x)? / (u * u))
    };
    total += integrate_tanh_sinh(outer, 0.0, 0.5, tol)?.value.re;
    Ok(total)
}

pub fn jacobi_inner(n: f64, m: f64, sh: &JacobiShift, tol: f64) -> Result<f64> {
    half_line_split(|x| Ok(perturbed_jacobi(n, sh, x)? * perturbed_jacobi(m, sh, x)? * jacobi_weight(sh, x)), tol)
}

pub fn jacobi_inner_displayed(n: f64, m: f64, sh: &JacobiShift, tol: f64) -> Result<f64> {
    half_line_split(
        |x| Ok(perturbed_jacobi_displayed(n, sh, x)? * perturbed_jacobi_displayed(m, sh, x)? * jacobi_weight_displayed(sh, x)),
        tol,
    )
}

// ---------------------------------------------------------------------------
// 2F2 basis

fn check_rho(rho: f64) -> Result<()> {
    if !(rho > -1.0) || !rho.is_finite() {
        return Err(Error::Invalid(format!("2F2 basis needs rho > -1, got {rho}")));
    }
    Ok(())
}

fn f22_params(n: u32, rho: f64) -> ([C64; 2], [C64; 2]) {
    let nf = n as f64;
    (
        [c64(0.5 * rho + 1.0, 0.0), c64(1.0 - 0.5 * rho, 0.0)],
        [c64(0.5 * rho + nf + 2.0, 0.0), c64(1.0 - 0.5 * rho - nf, 0.0)],
    )
}

/// Coefficients d_k of r_n(x) = (1-x)^{rho/2} P_n^{(rho,0)}(x) = sum_k d_k (1-x)^{rho/2+k}.
fn windowed_jacobi_coeffs(n: u32, rho: f64) -> Vec<f64> {
    let nf = n as f64;
    let mut lead = 1.0;
    for i in 0..n {
        lead *= (rho + 1.0 + i as f64) / (i as f64 + 1.0);
    }
    let mut d = Vec::with_capacity(n as usize + 1);
    let mut t = lead;
    for k in 0..=n {
        d.push(t);
        let kf = k as f64;
        t *= (kf - nf) * (nf + rho + 1.0 + kf) / ((rho + 1.0 + kf) * (kf + 1.0) * 2.0);
    }
    d
}

/// c_n = integral of r_n over (-1, 1).
pub fn windowed_jacobi_integral(n: u32, rho: f64) -> f64 {
    windowed_jacobi_coeffs(n, rho)
        .iter()
        .enumerate()
        .map(|(k, dk)| {
            let a = 0.5 * rho + k as f64 + 1.0;
            dk * 2f64.powf(a) / a
        })
        .sum()
}

/// 1F1(a; a+1; z) along the sorted imaginary points z = 2i xi, xi >= 0 (or all
/// <= 0, sorted by |xi|): series near 0, then Taylor continuation of Kummer's
/// equation, which is stable on the imaginary axis.
fn kummer_a_a1_ray(a: f64, xis: &[f64]) -> Result<Vec<C64>> {
    let (ca, cc) = (c64(a, 0.0), c64(a + 1.0, 0.0));
    let series = |z: C64| -> Result<(C64, C64)> {
        let w = pfq_series(&[ca], &[cc], z, 1e-17)?.value;
        let dw = pfq_series(&[ca + 1.0], &[cc + 1.0], z, 1e-17)?.value * (a / (a + 1.0));
        Ok((w, dw))
    };
    const SERIES_LIMIT: f64 = 8.0;
    let ode = PolyOde::new(vec![ZERO, ONE], vec![cc, c64(-1.0, 0.0)], vec![-ca], vec![ZERO]);
    let mut st: Option<OdeState> = None;
    let mut out = Vec::with_capacity(xis.len());
    for &xi in xis {
        let z = c64(0.0, 2.0 * xi);
        if z.norm() <= SERIES_LIMIT {
            out.push(series(z)?.0);
            continue;
        }
        let cur = match st {
            Some(s) => s,
            None => {
                let z0 = c64(0.0, SERIES_LIMIT * xi.signum());
                let (w, dw) = series(z0)?;
                OdeState { z: z0, w, dw }
            }
        };
        let next = ode.continue_to(cur, z, 0.5, 2.0)?.0;
        out.push(next.w);
        st = Some(next);
    }
    Ok(out)
}

/// Displayed 2F2[rho/2+1, 1-rho/2; rho/2+n+2, 1-rho/2-n; 2i xi] at each xi
/// (any order). Small |xi| sums the series; larger |xi| uses
/// 2F2 = sum_k d_k 2^{a_k}/a_k 1F1(a_k; a_k+1; 2i xi) / c_n, a_k = rho/2+k+1.
pub fn f22_values(n: u32, rho: f64, xis: &[f64]) -> Result<Vec<C64>> {
    check_rho(rho)?;
    let (num, den) = f22_params(n, rho);
    let low = den[1].re;
    if low <= 0.0 && low == low.round() {
        return Err(Error::Pole { re: low, im: 0.0 });
    }
    let d = windowed_jacobi_coeffs(n, rho);
    let cn = windowed_jacobi_integral(n, rho);
    let mut out = vec![ZERO; xis.len()];
    let mut far_pos: Vec<(f64, usize)> = Vec::new();
    let mut far_neg: Vec<(f64, usize)> = Vec::new();
    for (i, &xi) in xis.iter().enumerate() {
        if xi.abs() <= 3.0 {
            out[i] = pfq_series(&num, &den, c64(0.0, 2.0 * xi), 1e-17)?.value;
        } else if xi > 0.0 {
            far_pos.push((xi, i));
        } else {
            far_neg.push((xi, i));
        }
    }
    far_pos.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    far_neg.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    for ray in [far_pos, far_neg] {
        if ray.is_empty() {
            continue;
        }
        let pts: Vec<f64> = ray.iter().map(|r| r.0).collect();
        let mut acc = vec![ZERO; pts.len()];
        for (k, dk) in d.iter().enumerate() {
            let a = 0.5 * rho + k as f64 + 1.0;
            let v = kummer_a_a1_ray(a, &pts)?;
            let coef = dk * 2f64.powf(a) / a / cn;
            for (o, vi) in acc.iter_mut().zip(v) {
                *o += vi * coef;
            }
        }
        for ((_, i), v) in ray.iter().zip(acc) {
            out[*i] = v;
        }
    }
    Ok(out)
}

/// e^{-2 m i xi} 2F2[rho/2+1, 1-rho/2; rho/2+n+2, 1-rho/2-n; 2i xi].
pub fn f22_basis(n: u32, m: i64, rho: f64, xi: f64) -> Result<C64> {
    let v = f22_values(n, rho, &[xi])?[0];
    Ok(v * (-I * (2.0 * m as f64 * xi)).exp())
}

/// Squared L2(R) norm of the displayed function: 2 pi 2^{rho+1} / ((2n+rho+1) c_n^2).
pub fn f22_norm_sq(n: u32, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    let c = windowed_jacobi_integral(n, rho);
    Ok(2.0 * PI * 2f64.powf(rho + 1.0) / ((2.0 * n as f64 + rho + 1.0) * c * c))
}

/// The windowed Jacobi function (1-x)^{rho/2} P_n^{(rho,0)}(x) on (-1, 1), zero outside.
pub fn windowed_jacobi(n: u32, rho: f64, x: f64) -> f64 {
    if !(x > -1.0 && x < 1.0) {
        return 0.0;
    }
    windowed_jacobi_coeffs(n, rho)
        .iter()
        .enumerate()
        .map(|(k, dk)| dk * (1.0 - x).powf(0.5 * rho + k as f64))
        .sum()
}

/// Gram matrix over L2(R, d xi) of the 2F2 functions indexed by (n, m),
/// optionally divided by their norms. The integral runs over |xi| <= `cut` with
/// Gauss panels; the non-oscillating parts of the large-|xi| asymptotics
/// r_n(-1) e^{2i xi}/(i xi c_n) + P_n(1) Gamma(1+rho/2) (-i xi)^{-1-rho/2}/c_n
/// are integrated in closed form beyond the cut.
pub fn f22_gram(items: &[(u32, i64)], rho: f64, normalized: bool, cut: f64) -> Result<Vec<Vec<C64>>> {
    check_rho(rho)?;
    let panels = (2.0 * cut).ceil() as usize;
    let breaks: Vec<f64> = (0..=panels).map(|k| -cut + 2.0 * cut * k as f64 / panels as f64).collect();
    let (xs, ws) = composite_gauss(&breaks, 16);
    let mut ns: Vec<u32> = items.iter().map(|it| it.0).collect();
    ns.sort_unstable();
    ns.dedup();
    let vals: Result<Vec<(u32, Vec<C64>)>> = ns.par_iter().map(|&n| Ok((n, f22_values(n, rho, &xs)?))).collect();
    let vals = vals?;
    let col = |n: u32| &vals.iter().find(|v| v.0 == n).unwrap().1;
    let p = 1.0 + 0.5 * rho;
    let g1 = gamma_real(p)?;
    // asymptotic constants for xi > 0: F ~ a e^{2i xi}/xi + bp xi^{-p}; xi < 0 (u = -xi): -a e^{-2iu}/u + bm u^{-p}
    let consts = |n: u32| -> (C64, C64, C64) {
        let cn = windowed_jacobi_integral(n, rho);
        let r_left = if n % 2 == 0 { 1.0 } else { -1.0 } * 2f64.powf(0.5 * rho);
        let p1 = windowed_jacobi_coeffs(n, rho)[0];
        let a = c64(0.0, -r_left / cn);
        let bp = (I * (PI * p / 2.0)).exp() * (p1 * g1 / cn);
        let bm = (-I * (PI * p / 2.0)).exp() * (p1 * g1 / cn);
        (a, bp, bm)
    };
    let tail = |e: f64| cut.powf(1.0 - e) / (e - 1.0);
    let k = items.len();
    let mut g = vec![vec![ZERO; k]; k];
    for i in 0..k {
        for j in 0..k {
            let (n1, m1) = items[i];
            let (n2, m2) = items[j];
            let dm = m1 - m2;
            let (c1, c2) = (col(n1), col(n2));
            let mut v: C64 = xs
                .iter()
                .zip(&ws)
                .zip(c1.iter().zip(c2))
                .map(|((&x, &w), (a, b))| a * b.conj() * (-I * (2.0 * dm as f64 * x)).exp() * w)
                .sum();
            let (a1, bp1, bm1) = consts(n1);
            let (a2, bp2, bm2) = consts(n2);
            match dm {
                0 => {
                    v += a1 * a2.conj() * 2.0 * tail(2.0);
                    v += (bp1 * bp2.conj() + bm1 * bm2.conj()) * tail(2.0 * p);
                }
                1 => v += (a1 * bp2.conj() - a1 * bm2.conj()) * tail(1.0 + p),
                -1 => v += (bp1 * a2.conj() - bm1 * a2.conj()) * tail(1.0 + p),
                _ => {}
            }
            if normalized {
                v /= (f22_norm_sq(n1, rho)? * f22_norm_sq(n2, rho)?).sqrt();
            }
            g[i][j] = v;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_modulus_at_q_zero() {
        for x in [-3.0, 0.0, 0.7] {
            let v = r_basis(2, 0.4, 0.0, x);
            assert!((v.norm_sqr() - 1.0 / (0.25 + x * x)).abs() < 1e-14);
        }
    }

    #[test]
    fn cauchy_beta_matches_closed_form() {
        let (s, t) = (c64(0.9, 0.3), c64(0.8, -0.5));
        let q = cauchy_beta_quadrature(s, t, 1e-12).unwrap();
        let c = cauchy_beta(s, t).unwrap();
        assert!((q - c).norm() < 1e-9 * c.norm(), "{q} {c}");
    }

    #[test]
    fn romanovski_degree_one() {
        let (a, b, x) = (2.2, 0.5, 0.8);
        let v = romanovski_poly(1, a, b, x).unwrap();
        let e = ONE - c64(0.5, x) * (2.0 - 2.0 * a) / c64(1.0 - a, -b);
        assert!((v - e).norm() < 1e-14);
    }

    #[test]
    fn jacobi_low_degree() {
        assert_eq!(jacobi_poly(0, 0.3, 0.2, 0.1).unwrap(), 1.0);
        for x in [-0.9, 0.0, 0.4] {
            assert!((jacobi_poly(1, 0.0, 0.0, x).unwrap() + x).abs() < 1e-15);
        }
    }

    #[test]
    fn xi_forms_agree() {
        let xp = XiParams::new(0.25, 0.1, 0.0, 0.5).unwrap();
        for j in [1, 2] {
            for n in [-1, 0, 2] {
                let a = xi(j, n, &xp, 1.0).unwrap();
                let b = xi_displayed(j, n, &xp, 1.0).unwrap();
                assert!((a - b).norm() < 1e-8 * b.norm(), "{j} {n}: {a} {b}");
            }
        }
    }

    #[test]
    fn meixner_first_terms() {
        // j = n: F* starts at Gamma(1/2+alpha+n) Gamma(1/2-beta-n)
        let (a, b, t) = (0.2, -0.1, 0.4);
        let v = perturbed_meixner(0, a, b, t, 0).unwrap();
        let th2 = t.tanh().powi(2);
        let lead = gamma_real(0.5 + a).unwrap();
        assert!((v.re / lead - 1.0).abs() < th2 * 2.0);
    }

    #[test]
    fn jacobi_shift_admissibility() {
        assert!(JacobiShift::new(0.3, 0.5, 0.8).is_err());
        let sh = JacobiShift::new(0.3, 0.5, 0.4).unwrap();
        assert!(perturbed_jacobi(0.5, &sh, 0.3).is_err());
        assert!(perturbed_jacobi(0.4, &sh, 1.0).is_err());
    }

    #[test]
    fn f22_routes_agree() {
        let (num, den) = f22_params(1, 0.5);
        let xs = [3.5, 5.0, -4.2];
        let v = f22_values(1, 0.5, &xs).unwrap();
        for (x, vi) in xs.iter().zip(v) {
            let s = pfq_series(&num, &den, c64(0.0, 2.0 * x), 1e-17).unwrap().value;
            assert!((s - vi).norm() < 1e-9, "{x}: {s} {vi}");
        }
    }

    #[test]
    fn f22_at_zero() {
        assert!((f22_basis(2, 3, 0.5, 0.0).unwrap() - ONE).norm() < 1e-15);
    }
}

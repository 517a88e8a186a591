//! The double index hypergeometric transform on L2(R): kernels, spectral
//! densities, forward and inverse maps, and the discrete part for alpha > 1/2.
//!
//! Spectral coefficients are computed against the Jost solutions
//! u1 = V-(is), u2 = W-(is) and converted to kernel coordinates
//! (phi_j = <f, Q_j>) on request. Both coordinate systems carry their own
//! 2x2 density; see [`spectral_density`].

pub mod classical;
pub mod jost;

use crate::complex_special::{c64, cpow, gamma, gamma_real, ln_abs_gamma_2is_sq_inverse, log_gamma, C64, I, ONE, ZERO};
use crate::error::{Error, Result};
use crate::hyp::hyp2f1_value;
use crate::kummer::{self, big_a};
use crate::quad::{composite_gauss, SampledFunction, SpectralBasis, VectorFunctionSample};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub use classical::{classical_index_transform, classical_inverse, ClassicalData};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Validity {
    /// 0 <= alpha <= 1/2, purely continuous spectrum.
    Regular,
    /// alpha > 1/2, with finitely many discrete eigenvalues.
    Extended,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformParams {
    pub alpha: f64,
    pub beta: f64,
    pub validity: Validity,
}

impl TransformParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() || alpha < 0.0 {
            return Err(Error::Invalid(format!("need finite alpha >= 0, got ({alpha}, {beta})")));
        }
        if alpha == 0.0 && beta == 0.0 {
            return Err(Error::DegenerateParameter("alpha + i beta = 0".into()));
        }
        if beta == 0.0 && alpha >= 1.0 && alpha.fract() == 0.0 {
            return Err(Error::DegenerateParameter(format!("alpha + i beta = {alpha} is a positive integer")));
        }
        let validity = if alpha <= 0.5 { Validity::Regular } else { Validity::Extended };
        Ok(Self { alpha, beta, validity })
    }

    pub fn a(&self) -> C64 {
        big_a(self.alpha, self.beta)
    }

    /// Number of square-integrable eigenfunctions R_k, i.e. #{k >= 0 : k < alpha - 1/2}.
    pub fn discrete_count(&self) -> usize {
        match self.validity {
            Validity::Regular => 0,
            Validity::Extended => (self.alpha - 0.5).ceil() as usize,
        }
    }

    /// Parameters with (alpha, beta) -> (alpha, -beta); the mirror x -> -x.
    pub fn mirrored(&self) -> Self {
        Self { beta: -self.beta, ..*self }
    }
}

/// The matrix R(s) of Gamma products.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelMatrix2 {
    pub r11: C64,
    pub r12: C64,
    pub r21: C64,
    pub r22: C64,
}

impl KernelMatrix2 {
    pub fn det(&self) -> C64 {
        self.r11 * self.r22 - self.r12 * self.r21
    }

    pub fn as_array(&self) -> [[C64; 2]; 2] {
        [[self.r11, self.r12], [self.r21, self.r22]]
    }
}

fn ln_gamma_pair(a: C64, s: f64) -> Result<C64> {
    Ok(log_gamma(a - I * s)? + log_gamma(a + I * s)?)
}

fn ln_r_entries(p: &TransformParams, s: f64) -> Result<[[C64; 2]; 2]> {
    let (al, be) = (p.alpha, p.beta);
    Ok([
        [ln_gamma_pair(c64(0.5 - al, 0.0), s)?, ln_gamma_pair(c64(0.5, -be), s)?],
        [ln_gamma_pair(c64(0.5, be), s)?, ln_gamma_pair(c64(0.5 + al, 0.0), s)?],
    ])
}

/// r11 = Gamma(1/2-alpha-is) Gamma(1/2-alpha+is), r12 = Gamma(1/2-i beta-is) Gamma(1/2-i beta+is),
/// r21 = conj(r12), r22 = Gamma(1/2+alpha-is) Gamma(1/2+alpha+is).
pub fn r_matrix(params: &TransformParams, s: f64) -> Result<KernelMatrix2> {
    if !(s > 0.0) {
        return Err(Error::Domain(format!("r_matrix needs s > 0, got {s}")));
    }
    let l = ln_r_entries(params, s)?;
    Ok(KernelMatrix2 { r11: l[0][0].exp(), r12: l[0][1].exp(), r21: l[1][0].exp(), r22: l[1][1].exp() })
}

/// Density of the continuous spectral measure at s, so that
/// ||f||^2 = integral over s > 0 of conj(phi)^T M(s) phi plus the discrete part.
///
/// Kernel coordinates: M_ij = Gamma(A_i)^2 r_ij conj(Gamma(A_j))^2 / (4 pi^2 |Gamma(2is)|^2)
/// with A_1 = A, A_2 = -A. Jost coordinates: (1/pi) G^{-1} with G the channel Gram
/// matrix of u1, u2.
pub fn spectral_density(params: &TransformParams, s: f64, basis: SpectralBasis) -> Result<[[C64; 2]; 2]> {
    match basis {
        SpectralBasis::Jost => jost::jost_density(params.alpha, params.beta, s),
        SpectralBasis::Kernel => {
            let l = ln_r_entries(params, s)?;
            let a = params.a();
            let lg = [log_gamma(a)? * 2.0, log_gamma(-a)? * 2.0];
            let base = ln_abs_gamma_2is_sq_inverse(s)? - (4.0 * PI * PI).ln();
            let mut m = [[ZERO; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    m[i][j] = (lg[i] + l[i][j] + lg[j].conj() + base).exp();
                }
            }
            Ok(m)
        }
    }
}

/// |g(s)|^2 with g(s) = 2 Gamma(1/2+iq+is) Gamma(1/2+iq-is), the scalar weight of Y(alpha, beta; q).
pub fn y_weight(q: f64, s: f64) -> Result<f64> {
    let l = log_gamma(c64(0.5, q + s))? + log_gamma(c64(0.5, q - s))?;
    Ok(4.0 * (2.0 * l.re).exp())
}

/// Kernel Q_j(x, s), j in {1, 2}; Q_2(alpha, beta) = Q_1(-alpha, -beta).
pub fn q_kernel(j: usize, params: &TransformParams, x: f64, s: f64) -> Result<C64> {
    if !(s > 0.0) {
        return Err(Error::Domain(format!("q_kernel needs s > 0, got {s}")));
    }
    let (al, be) = match j {
        1 => (params.alpha, params.beta),
        2 => (-params.alpha, -params.beta),
        _ => return Err(Error::Index { index: j as i64, count: 2 }),
    };
    let mu = c64(0.0, s);
    let sv = if x.abs() <= 0.4 { kummer::s1(al, be, mu, x)? } else { kummer::s1_w_route(al, be, mu, x)? };
    Ok(sv / gamma(big_a(al, be))?)
}

/// Eigenfunction R_k(x) of the discrete spectrum, 0 <= k < discrete_count.
pub fn discrete_kernel(params: &TransformParams, x: f64, k: usize) -> Result<C64> {
    let n = params.discrete_count();
    if k >= n {
        return Err(Error::Index { index: k as i64, count: n });
    }
    discrete_kernel_unchecked(params, x, k)
}

pub(crate) fn discrete_kernel_unchecked(params: &TransformParams, x: f64, k: usize) -> Result<C64> {
    let a = params.a();
    let z = c64(0.5, x);
    let pref = cpow(z, -a / 2.0) * cpow(z.conj(), -a.conj() / 2.0);
    let f = hyp2f1_value(c64(-(k as f64), 0.0), c64(k as f64 - 2.0 * params.alpha + 1.0, 0.0), ONE - a, z)?;
    Ok(pref * f / gamma(a)?)
}

/// Weight of the k-th discrete coordinate, the reciprocal of ||R_k||^2:
/// (2 alpha - 2k - 1) |Gamma(A)|^4 / (2 pi Gamma(2 alpha - k) k!).
pub fn discrete_weight(params: &TransformParams, k: usize) -> Result<f64> {
    let ga = gamma(params.a())?.norm();
    Ok(displayed_discrete_weight(params, k)? * ga.powi(4))
}

/// (2 alpha - 2k - 1) / (2 pi Gamma(2 alpha - k) k!), the weight without the |Gamma(A)|^4 factor.
pub fn displayed_discrete_weight(params: &TransformParams, k: usize) -> Result<f64> {
    let kf = k as f64;
    Ok((2.0 * params.alpha - 2.0 * kf - 1.0) / (2.0 * PI * gamma_real(2.0 * params.alpha - kf)? * gamma_real(kf + 1.0)?))
}

/// Matrix P with (Q1, Q2)^T = P (u1, u2)^T.
pub fn kernel_from_jost(params: &TransformParams, s: f64) -> Result<[[C64; 2]; 2]> {
    jost::kernel_from_jost(params.alpha, params.beta, s)
}

/// Quadrature nodes and weights on (0, s_max) in the spectral variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralGrid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Panel breaks: 0, then geometric 1e-6 * 2^k up to 1, then width 0.5.
fn default_breaks(s_max: f64) -> Vec<f64> {
    let mut b = vec![0.0, 1e-6];
    while *b.last().unwrap() * 2.0 < 1.0 {
        let v = *b.last().unwrap() * 2.0;
        b.push(v);
    }
    b.push(1.0);
    let mut v = 1.0;
    while v + 0.25 < s_max {
        v += 0.5;
        b.push(v.min(s_max));
    }
    if *b.last().unwrap() < s_max {
        b.push(s_max);
    }
    b
}

impl SpectralGrid {
    pub fn new(s_max: f64, order: usize) -> Result<Self> {
        if !(s_max > 1.0) || order < 2 {
            return Err(Error::Invalid(format!("spectral grid needs s_max > 1 and order >= 2, got {s_max}, {order}")));
        }
        let (nodes, weights) = composite_gauss(&default_breaks(s_max), order);
        Ok(Self { nodes, weights })
    }

    /// Explicit nodes with weights; an ad-hoc list (e.g. for tabulation) may use zero weights.
    pub fn from_nodes(nodes: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if nodes.len() != weights.len() || nodes.iter().any(|&s| !(s > 0.0)) {
            return Err(Error::Invalid("spectral nodes must be positive and match weights".into()));
        }
        Ok(Self { nodes, weights })
    }
}

/// Run-time diagnostics of a transform.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Largest relative disagreement of the two Jost-solution representations at -X0.
    pub max_jost_mismatch: f64,
    pub s_max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData {
    pub continuous: VectorFunctionSample,
    /// theta_k = <f, R_k>, k < discrete_count.
    pub discrete: Vec<C64>,
    pub params: TransformParams,
    pub diagnostics: Diagnostics,
}

impl SpectralData {
    /// Squared norm in H + W.
    pub fn norm_sq(&self) -> Result<f64> {
        Ok(self.inner(self)?.re)
    }

    /// Inner product in H + W (linear in self).
    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.discrete.len() != other.discrete.len() {
            return Err(Error::GridMismatch);
        }
        let mut acc = crate::quad::inner_product_h(&self.continuous, &other.continuous, &self.params)?;
        for (k, (a, b)) in self.discrete.iter().zip(&other.discrete).enumerate() {
            acc += a * b.conj() * discrete_weight(&self.params, k)?;
        }
        Ok(acc)
    }

    /// The same data in kernel coordinates phi_j = <f, Q_j>.
    pub fn to_kernel_basis(&self) -> Result<Self> {
        let c = &self.continuous;
        if c.basis == SpectralBasis::Kernel {
            return Ok(self.clone());
        }
        let conv: Result<Vec<(C64, C64)>> = (0..c.len())
            .into_par_iter()
            .map(|i| {
                let p = kernel_from_jost(&self.params, c.s_grid[i])?;
                let (a, b) = (c.phi1[i], c.phi2[i]);
                Ok((p[0][0].conj() * a + p[0][1].conj() * b, p[1][0].conj() * a + p[1][1].conj() * b))
            })
            .collect();
        let (phi1, phi2) = conv?.into_iter().unzip();
        let continuous = VectorFunctionSample::new(c.s_grid.clone(), phi1, phi2, c.weights.clone(), SpectralBasis::Kernel)?;
        Ok(Self { continuous, ..self.clone() })
    }
}

/// Jost solutions u1, u2 at spectral parameter s on the sorted abscissae.
pub fn jost_solutions(params: &TransformParams, s: f64, xs: &[f64]) -> Result<(Vec<C64>, Vec<C64>, f64)> {
    jost::jost_on_grid(params.alpha, params.beta, s, xs)
}

fn check_sorted(xs: &[f64]) -> Result<()> {
    if xs.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Invalid("abscissae must be strictly increasing".into()));
    }
    Ok(())
}

fn discrete_coefficients(f: &SampledFunction, params: &TransformParams) -> Result<Vec<C64>> {
    (0..params.discrete_count())
        .map(|k| {
            let mut acc = ZERO;
            for ((x, v), w) in f.abscissae.iter().zip(&f.values).zip(&f.weights) {
                acc += v * discrete_kernel_unchecked(params, *x, k)?.conj() * w;
            }
            Ok(acc)
        })
        .collect()
}

/// Forward transform in Jost coordinates on the given spectral grid.
pub fn forward(f: &SampledFunction, params: &TransformParams, grid: &SpectralGrid) -> Result<SpectralData> {
    check_sorted(&f.abscissae)?;
    let xs = &f.abscissae;
    let per_s: Result<Vec<(C64, C64, f64)>> = grid
        .nodes
        .par_iter()
        .map(|&s| {
            let (u1, u2, mis) = jost_solutions(params, s, xs)?;
            let mut a = ZERO;
            let mut b = ZERO;
            for i in 0..xs.len() {
                let fw = f.values[i] * f.weights[i];
                a += fw * u1[i].conj();
                b += fw * u2[i].conj();
            }
            Ok((a, b, mis))
        })
        .collect();
    let per_s = per_s?;
    let max_jost_mismatch = per_s.iter().map(|t| t.2).fold(0.0, f64::max);
    let phi1 = per_s.iter().map(|t| t.0).collect();
    let phi2 = per_s.iter().map(|t| t.1).collect();
    let continuous = VectorFunctionSample::new(grid.nodes.clone(), phi1, phi2, grid.weights.clone(), SpectralBasis::Jost)?;
    Ok(SpectralData {
        continuous,
        discrete: discrete_coefficients(f, params)?,
        params: *params,
        diagnostics: Diagnostics { max_jost_mismatch, s_max: grid.nodes.last().copied().unwrap_or(0.0) },
    })
}

/// Forward transform with the upper limit of the spectral grid chosen from
/// the data: panels of width 0.5 are appended until the last two carry less
/// than `abs_tol` of spectral mass, or `s_cap` is reached.
pub fn forward_adaptive(f: &SampledFunction, params: &TransformParams, abs_tol: f64, s_cap: f64) -> Result<SpectralData> {
    let mut s_max = 6.0;
    let mut data = forward(f, params, &SpectralGrid::new(s_max, 16)?)?;
    loop {
        let tail = tail_mass(&data, s_max - 1.0)?;
        if tail < abs_tol || s_max >= s_cap {
            return Ok(data);
        }
        let next = (s_max + 4.0).min(s_cap);
        let (nodes, weights) = composite_gauss(&default_breaks(next).into_iter().filter(|&b| b >= s_max).collect::<Vec<_>>(), 16);
        let extra = forward(f, params, &SpectralGrid::from_nodes(nodes, weights)?)?;
        let c = &mut data.continuous;
        c.s_grid.extend(extra.continuous.s_grid);
        c.phi1.extend(extra.continuous.phi1);
        c.phi2.extend(extra.continuous.phi2);
        c.weights.extend(extra.continuous.weights);
        data.diagnostics.max_jost_mismatch = data.diagnostics.max_jost_mismatch.max(extra.diagnostics.max_jost_mismatch);
        data.diagnostics.s_max = next;
        s_max = next;
    }
}

/// Spectral mass of the continuous part on s >= s0.
fn tail_mass(data: &SpectralData, s0: f64) -> Result<f64> {
    let c = &data.continuous;
    let mut acc = 0.0;
    for i in 0..c.len() {
        if c.s_grid[i] < s0 {
            continue;
        }
        let m = spectral_density(&data.params, c.s_grid[i], c.basis)?;
        let (a, b) = (c.phi1[i], c.phi2[i]);
        let q = a.conj() * (m[0][0] * a + m[0][1] * b) + b.conj() * (m[1][0] * a + m[1][1] * b);
        acc += q.re * c.weights[i];
    }
    Ok(acc)
}

/// Inverse transform evaluated at the sorted abscissae `xs`.
pub fn inverse(data: &SpectralData, xs: &[f64]) -> Result<Vec<C64>> {
    check_sorted(xs)?;
    let c = &data.continuous;
    let p = &data.params;
    let parts: Result<Vec<Vec<C64>>> = (0..c.len())
        .into_par_iter()
        .map(|i| {
            let s = c.s_grid[i];
            let m = spectral_density(p, s, c.basis)?;
            let (a, b) = (c.phi1[i], c.phi2[i]);
            let (ca, cb) = ((m[0][0] * a + m[0][1] * b) * c.weights[i], (m[1][0] * a + m[1][1] * b) * c.weights[i]);
            let (k1, k2): (Vec<C64>, Vec<C64>) = match c.basis {
                SpectralBasis::Jost => {
                    let (u1, u2, _) = jost_solutions(p, s, xs)?;
                    (u1, u2)
                }
                SpectralBasis::Kernel => (
                    xs.iter().map(|&x| q_kernel(1, p, x, s)).collect::<Result<_>>()?,
                    xs.iter().map(|&x| q_kernel(2, p, x, s)).collect::<Result<_>>()?,
                ),
            };
            Ok(k1.iter().zip(&k2).map(|(v1, v2)| v1 * ca + v2 * cb).collect())
        })
        .collect();
    let mut out = vec![ZERO; xs.len()];
    for part in parts? {
        for (o, v) in out.iter_mut().zip(part) {
            *o += v;
        }
    }
    for (k, th) in data.discrete.iter().enumerate() {
        let w = discrete_weight(p, k)?;
        for (o, &x) in out.iter_mut().zip(xs) {
            *o += th * w * discrete_kernel_unchecked(p, x, k)?;
        }
    }
    Ok(out)
}

/// Inverse transform as a sampled function on the given nodes and weights.
pub fn inverse_sampled(data: &SpectralData, abscissae: Vec<f64>, weights: Vec<f64>) -> Result<SampledFunction> {
    let values = inverse(data, &abscissae)?;
    SampledFunction::new(abscissae, values, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validation_and_count() {
        assert!(TransformParams::new(0.0, 0.0).is_err());
        assert!(TransformParams::new(2.0, 0.0).is_err());
        assert_eq!(TransformParams::new(0.3, 0.4).unwrap().discrete_count(), 0);
        assert_eq!(TransformParams::new(1.7, 0.3).unwrap().discrete_count(), 2);
        assert_eq!(TransformParams::new(1.5, 0.3).unwrap().discrete_count(), 1);
        assert_eq!(TransformParams::new(2.2, 0.5).unwrap().discrete_count(), 2);
    }

    #[test]
    fn r_matrix_hermitian_and_reflection() {
        let p = TransformParams::new(0.3, 0.7).unwrap();
        let r = r_matrix(&p, 1.2).unwrap();
        assert!((r.r21 - r.r12.conj()).norm() < 1e-14 * r.r12.norm());
        let p0 = TransformParams::new(0.0, 0.7).unwrap();
        let r0 = r_matrix(&p0, 1.2).unwrap();
        let e = PI / (PI * 1.2f64).cosh();
        assert!((r0.r11.re - e).abs() < 1e-13 * e && r0.r11.im.abs() < 1e-14);
    }

    #[test]
    fn kernel_density_matches_jost_density() {
        // M_u = P^T M_Q conj(P)
        for (al, be, s) in [(0.3, 0.4, 0.7), (0.45, -0.8, 2.3), (1.7, 0.3, 1.1)] {
            let p = TransformParams::new(al, be).unwrap();
            let mq = spectral_density(&p, s, SpectralBasis::Kernel).unwrap();
            let mu = spectral_density(&p, s, SpectralBasis::Jost).unwrap();
            let pm = kernel_from_jost(&p, s).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    let mut v = ZERO;
                    for k in 0..2 {
                        for l in 0..2 {
                            v += pm[k][i] * mq[k][l] * pm[l][j].conj();
                        }
                    }
                    let scale = mu[0][0].norm() + mu[1][1].norm();
                    assert!((v - mu[i][j]).norm() < 1e-10 * scale, "{al} {be} {s} ({i},{j}): {v} {}", mu[i][j]);
                }
            }
        }
    }

    #[test]
    fn q_kernel_routes_agree_on_overlap() {
        let p = TransformParams::new(0.3, 0.4).unwrap();
        let mu = c64(0.0, 1.0);
        for x in [-0.4, 0.4] {
            let a = kummer::s1(0.3, 0.4, mu, x).unwrap();
            let b = kummer::s1_w_route(0.3, 0.4, mu, x).unwrap();
            assert!((a - b).norm() < 1e-11 * a.norm());
        }
        let q1 = q_kernel(1, &p, 0.0, 1.0).unwrap();
        let q2m = q_kernel(2, &TransformParams::new(0.3, 0.4).unwrap(), 0.0, 1.0).unwrap();
        assert!(q1.norm() > 0.0 && q2m.norm() > 0.0);
    }

    #[test]
    fn discrete_kernel_index_error() {
        let p = TransformParams::new(1.7, 0.3).unwrap();
        assert!(matches!(discrete_kernel(&p, 0.0, 2), Err(Error::Index { .. })));
        let r0 = discrete_kernel(&p, 0.3, 0).unwrap();
        let a = p.a();
        let z = c64(0.5, 0.3);
        let e = cpow(z, -a / 2.0) * cpow(z.conj(), -a.conj() / 2.0) / gamma(a).unwrap();
        assert!((r0 - e).norm() < 1e-14 * e.norm());
    }
}

//! Quadrature: adaptive Gauss-Kronrod on finite and infinite intervals,
//! Gauss-Legendre panels, sampled functions and the weighted inner products
//! of the spectral spaces.

use crate::complex_special::{C64, ZERO};
use crate::error::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum bisection depth of any panel.
    pub max_depth: usize,
    /// Split point between the central interval and the mapped tails.
    pub truncation_radius: f64,
    /// Gauss-Legendre nodes per panel for spectral grids.
    pub panel_order: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-12,
            max_depth: 40,
            truncation_radius: 4.0,
            panel_order: 16,
        }
    }
}

impl QuadSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0 && self.truncation_radius > 0.0) {
            return Err(Error::Invalid("rel_tol, abs_tol and truncation_radius must be positive".into()));
        }
        if self.panel_order < 2 {
            return Err(Error::Invalid("panel_order must be at least 2".into()));
        }
        Ok(())
    }

    pub fn with_tol(rel_tol: f64, abs_tol: f64) -> Self {
        Self { rel_tol, abs_tol, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: C64,
    pub error: f64,
    pub evals: usize,
}

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F>(f: &F, a: f64, b: f64) -> Result<(C64, f64)>
where
    F: Fn(f64) -> Result<C64>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx)? + f(c + dx)?;
        k += s * WGK[i];
        if i % 2 == 1 {
            g += s * WG[i / 2];
        }
    }
    let k = k * h;
    let g = g * h;
    Ok((k, (k - g).norm()))
}

struct Panel {
    a: f64,
    b: f64,
    value: C64,
    error: f64,
    depth: usize,
}

/// Globally adaptive Gauss-Kronrod (7/15) integration of a fallible integrand
/// over the finite interval [a, b].
pub fn integrate_interval_try<F>(f: F, a: f64, b: f64, spec: &QuadSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<C64>,
{
    integrate_panels(&f, &[a, b], spec)
}

/// As `integrate_interval_try`, starting from the given breakpoints.
pub fn integrate_panels<F>(f: &F, breaks: &[f64], spec: &QuadSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<C64>,
{
    let mut panels = Vec::new();
    for w in breaks.windows(2) {
        let (v, e) = gk15(f, w[0], w[1])?;
        panels.push(Panel { a: w[0], b: w[1], value: v, error: e, depth: 0 });
    }
    let mut evals = 15 * panels.len();
    loop {
        let total: C64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.error).sum();
        let target = spec.abs_tol.max(spec.rel_tol * total.norm());
        if err <= target {
            return Ok(QuadResult { value: total, error: err, evals });
        }
        let (idx, _) = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| p.depth < spec.max_depth)
            .fold((usize::MAX, -1.0), |best, (i, p)| if p.error > best.1 { (i, p.error) } else { best });
        if idx == usize::MAX || evals > 2_000_000 {
            return Err(Error::ToleranceNotMet { estimate: err, required: target });
        }
        let p = panels.swap_remove(idx);
        let m = 0.5 * (p.a + p.b);
        let (v1, e1) = gk15(f, p.a, m)?;
        let (v2, e2) = gk15(f, m, p.b)?;
        evals += 30;
        panels.push(Panel { a: p.a, b: m, value: v1, error: e1, depth: p.depth + 1 });
        panels.push(Panel { a: m, b: p.b, value: v2, error: e2, depth: p.depth + 1 });
    }
}

/// Infallible-integrand convenience wrapper.
pub fn integrate_interval<F>(f: F, a: f64, b: f64, spec: &QuadSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> C64,
{
    integrate_interval_try(|x| Ok(f(x)), a, b, spec)
}

/// Integral over [a, inf): [a, a+T] directly and the tail through x = a + T/u.
pub fn integrate_half_line_try<F>(f: F, a: f64, spec: &QuadSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<C64>,
{
    let t = spec.truncation_radius;
    let core = integrate_interval_try(&f, a, a + t, spec)?;
    let tail = integrate_interval_try(
        |u| {
            if u <= 0.0 {
                return Ok(ZERO);
            }
            Ok(f(a + t / u)? * (t / (u * u)))
        },
        0.0,
        1.0,
        spec,
    )?;
    Ok(QuadResult {
        value: core.value + tail.value,
        error: core.error + tail.error,
        evals: core.evals + tail.evals,
    })
}

/// Integral over the real line: [-T, T] adaptively plus both mapped tails.
pub fn integrate_line_try<F>(f: F, spec: &QuadSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<C64>,
{
    let t = spec.truncation_radius;
    let core = integrate_panels(&f, &[-t, 0.0, t], spec)?;
    let right = integrate_half_line_try(|x| f(x + t), 0.0, &QuadSpec { truncation_radius: t, ..*spec })?;
    let left = integrate_half_line_try(|x| f(-x - t), 0.0, &QuadSpec { truncation_radius: t, ..*spec })?;
    Ok(QuadResult {
        value: core.value + right.value + left.value,
        error: core.error + right.error + left.error,
        evals: core.evals + right.evals + left.evals,
    })
}

pub fn integrate_line<F>(f: F, spec: &QuadSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> C64,
{
    integrate_line_try(|x| Ok(f(x)), spec)
}

/// Tanh-sinh (double exponential) integration over (a, b). Integrable
/// algebraic endpoint singularities cost nothing extra; nodes that round onto
/// an endpoint are dropped. Levels halve the step until two successive
/// estimates agree to `tol` (absolute, relative to the running magnitude).
pub fn integrate_tanh_sinh<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<C64>,
{
    if !(a < b) {
        return Err(Error::Invalid(format!("tanh-sinh needs a < b, got ({a}, {b})")));
    }
    let c = 0.5 * (a + b);
    let h2 = 0.5 * (b - a);
    // large enough for endpoint exponents down to about -0.95
    let t_max = 5.5;
    let mut evals = 0;
    let mut eval_at = |t: f64| -> Result<C64> {
        let u = 0.5 * std::f64::consts::PI * t.sinh();
        // 1 - |tanh u| without cancellation
        let d = 2.0 / ((2.0 * u.abs()).exp() + 1.0);
        let w = 0.5 * std::f64::consts::PI * t.cosh() / (u.cosh() * u.cosh());
        let pt = if u < 0.0 { a + h2 * d } else if u > 0.0 { b - h2 * d } else { c };
        if !(pt > a && pt < b) || w == 0.0 {
            return Ok(ZERO);
        }
        evals += 1;
        Ok(f(pt)? * (w * h2))
    };
    let mut h = 0.5;
    let mut sum = eval_at(0.0)?;
    let mut k = 1;
    while k as f64 * h <= t_max {
        let t = k as f64 * h;
        sum += eval_at(t)? + eval_at(-t)?;
        k += 1;
    }
    let mut prev = sum * h;
    let mut err = f64::INFINITY;
    for _ in 0..8 {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= t_max {
            let t = k as f64 * h;
            sum += eval_at(t)? + eval_at(-t)?;
            k += 2;
        }
        let est = sum * h;
        err = (est - prev).norm();
        if err <= tol * est.norm().max(1.0) {
            return Ok(QuadResult { value: est, error: err, evals });
        }
        prev = est;
    }
    Err(Error::ToleranceNotMet { estimate: err, required: tol })
}

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..(n + 1) / 2 {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { z } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = nf * (z * pn - pm) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Composite Gauss-Legendre rule over the panels given by `breaks`.
pub fn composite_gauss(breaks: &[f64], order: usize) -> (Vec<f64>, Vec<f64>) {
    let (gx, gw) = gauss_legendre(order);
    let mut xs = Vec::with_capacity(order * breaks.len());
    let mut ws = Vec::with_capacity(order * breaks.len());
    for p in breaks.windows(2) {
        let c = 0.5 * (p[0] + p[1]);
        let h = 0.5 * (p[1] - p[0]);
        for (x, w) in gx.iter().zip(&gw) {
            xs.push(c + h * x);
            ws.push(h * w);
        }
    }
    (xs, ws)
}

/// Function values on a grid with quadrature weights for integrals over the line.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SampledFunction {
    pub abscissae: Vec<f64>,
    pub values: Vec<C64>,
    pub weights: Vec<f64>,
}

impl SampledFunction {
    pub fn new(abscissae: Vec<f64>, values: Vec<C64>, weights: Vec<f64>) -> Result<Self> {
        if abscissae.len() != values.len() || abscissae.len() != weights.len() {
            return Err(Error::Invalid("abscissae, values and weights differ in length".into()));
        }
        if abscissae.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Invalid("abscissae must be strictly increasing".into()));
        }
        Ok(Self { abscissae, values, weights })
    }

    /// Trapezoid nodes in t with x = sinh(t)/2, |t| <= t_max. The rule converges
    /// geometrically for integrands analytic in a strip around the real line
    /// and decaying algebraically.
    pub fn sinh_grid(h: f64, t_max: f64) -> (Vec<f64>, Vec<f64>) {
        let n = (t_max / h).ceil() as i64;
        let mut xs = Vec::with_capacity(2 * n as usize + 1);
        let mut ws = Vec::with_capacity(2 * n as usize + 1);
        for k in -n..=n {
            let t = k as f64 * h;
            xs.push(0.5 * t.sinh());
            ws.push(0.5 * h * t.cosh());
        }
        (xs, ws)
    }

    pub fn from_fn<F>(f: F, abscissae: Vec<f64>, weights: Vec<f64>) -> Result<Self>
    where
        F: Fn(f64) -> C64 + Sync,
    {
        let values = abscissae.par_iter().map(|&x| f(x)).collect();
        Self::new(abscissae, values, weights)
    }

    pub fn len(&self) -> usize {
        self.abscissae.len()
    }

    pub fn is_empty(&self) -> bool {
        self.abscissae.is_empty()
    }

    pub fn integral(&self) -> C64 {
        self.values.iter().zip(&self.weights).map(|(v, w)| v * w).sum()
    }

    /// L2 inner product sum f conj(g) w over a shared grid.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.abscissae != other.abscissae {
            return Err(Error::GridMismatch);
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .zip(&self.weights)
            .map(|((f, g), w)| f * g.conj() * w)
            .sum())
    }

    pub fn norm_sq(&self) -> f64 {
        self.values.iter().zip(&self.weights).map(|(v, w)| v.norm_sqr() * w).sum()
    }
}

/// Coordinates of spectral data: against the kernels Q1, Q2, or against the
/// Jost solutions used internally for conditioning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralBasis {
    Kernel,
    Jost,
}

/// A C^2-valued function sampled on an s-grid, with quadrature weights in s.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFunctionSample {
    pub s_grid: Vec<f64>,
    pub phi1: Vec<C64>,
    pub phi2: Vec<C64>,
    pub weights: Vec<f64>,
    pub basis: SpectralBasis,
}

impl VectorFunctionSample {
    pub fn new(s_grid: Vec<f64>, phi1: Vec<C64>, phi2: Vec<C64>, weights: Vec<f64>, basis: SpectralBasis) -> Result<Self> {
        let n = s_grid.len();
        if phi1.len() != n || phi2.len() != n || weights.len() != n {
            return Err(Error::Invalid("s_grid, phi1, phi2 and weights differ in length".into()));
        }
        if s_grid.iter().any(|&s| !(s > 0.0)) {
            return Err(Error::Invalid("s_grid must lie in (0, inf)".into()));
        }
        Ok(Self { s_grid, phi1, phi2, weights, basis })
    }

    pub fn zeros(s_grid: Vec<f64>, weights: Vec<f64>, basis: SpectralBasis) -> Self {
        let n = s_grid.len();
        Self { s_grid, phi1: vec![ZERO; n], phi2: vec![ZERO; n], weights, basis }
    }

    pub fn len(&self) -> usize {
        self.s_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s_grid.is_empty()
    }

    fn check_shared(&self, other: &Self) -> Result<()> {
        if self.s_grid != other.s_grid || self.basis != other.basis {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }
}

/// Quadratic-form integral sum_s w(s) conj(v)^T M(s) u over a shared grid,
/// with `measure` returning the 2x2 density at s in the grid's basis.
pub fn spectral_inner<M>(u: &VectorFunctionSample, v: &VectorFunctionSample, measure: M) -> Result<C64>
where
    M: Fn(f64) -> Result<[[C64; 2]; 2]> + Sync,
{
    u.check_shared(v)?;
    let parts: Result<Vec<C64>> = (0..u.len())
        .into_par_iter()
        .map(|k| {
            let m = measure(u.s_grid[k])?;
            let (a1, a2) = (u.phi1[k], u.phi2[k]);
            let (b1, b2) = (v.phi1[k].conj(), v.phi2[k].conj());
            let q = b1 * (m[0][0] * a1 + m[0][1] * a2) + b2 * (m[1][0] * a1 + m[1][1] * a2);
            Ok(q * u.weights[k])
        })
        .collect();
    Ok(parts?.into_iter().sum())
}

/// Inner product of H_{alpha,beta}: integral of conj(v)^T M(s) u ds, with the
/// spectral density M of the transform in the grid's coordinates.
pub fn inner_product_h(
    u: &VectorFunctionSample,
    v: &VectorFunctionSample,
    params: &crate::ditransform::TransformParams,
) -> Result<C64> {
    let basis = u.basis;
    spectral_inner(u, v, |s| crate::ditransform::spectral_density(params, s, basis))
}

/// Inner product of Y(alpha, beta; q): (1/2pi) integral of |g(s)|^2 conj(v)^T M(s) u ds,
/// g(s) = 2 Gamma(1/2+iq+is) Gamma(1/2+iq-is), in kernel coordinates.
pub fn inner_product_y(
    u: &VectorFunctionSample,
    v: &VectorFunctionSample,
    params: &crate::ditransform::TransformParams,
    q: f64,
) -> Result<C64> {
    if u.basis != SpectralBasis::Kernel {
        return Err(Error::Invalid("Y inner product is defined in kernel coordinates".into()));
    }
    spectral_inner(u, v, |s| {
        let m = crate::ditransform::spectral_density(params, s, SpectralBasis::Kernel)?;
        let g2 = crate::ditransform::y_weight(q, s)?;
        let f = g2 / (2.0 * std::f64::consts::PI);
        Ok([[m[0][0] * f, m[0][1] * f], [m[1][0] * f, m[1][1] * f]])
    })
}

/// Hermitian Gram matrix G[i][j] = <items[i], items[j]>; upper triangle
/// computed (in parallel) and mirrored.
pub fn gram_matrix<T, F>(items: &[T], inner: F) -> Result<Vec<Vec<C64>>>
where
    T: Sync,
    F: Fn(&T, &T) -> Result<C64> + Sync,
{
    let n = items.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let vals: Result<Vec<C64>> = pairs.par_iter().map(|&(i, j)| inner(&items[i], &items[j])).collect();
    let vals = vals?;
    let mut g = vec![vec![ZERO; n]; n];
    for (&(i, j), v) in pairs.iter().zip(vals) {
        if i == j {
            g[i][i] = C64::new(v.re, 0.0);
        } else {
            g[i][j] = v;
            g[j][i] = v.conj();
        }
    }
    Ok(g)
}

/// Largest |G - I| entry.
pub fn identity_defect(g: &[Vec<C64>]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, row) in g.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let e = if i == j { *v - 1.0 } else { *v };
            d = d.max(e.norm());
        }
    }
    d
}

/// Sum over j in Z of x(j) conj(y(j)) weight(j), truncated once a ratio-test
/// tail bound on both sides falls below `abs_tol`.
pub fn weighted_l2z_inner<X, Y, W>(x: X, y: Y, weight: W, trunc: i64, abs_tol: f64) -> Result<C64>
where
    X: Fn(i64) -> Result<C64>,
    Y: Fn(i64) -> Result<C64>,
    W: Fn(i64) -> Result<f64>,
{
    let term = |j: i64| -> Result<C64> { Ok(x(j)? * y(j)?.conj() * weight(j)?) };
    let mut sum = term(0)?;
    let mut mags_pos = Vec::new();
    let mut mags_neg = Vec::new();
    for j in 1..=trunc {
        let tp = term(j)?;
        let tn = term(-j)?;
        sum += tp + tn;
        mags_pos.push(tp.norm());
        mags_neg.push(tn.norm());
        if j >= 10 {
            let bound = |m: &[f64]| -> Option<f64> {
                let last = &m[m.len() - 10..];
                let mut rho: f64 = 0.0;
                for w in last.windows(2) {
                    if w[0] == 0.0 {
                        if w[1] == 0.0 {
                            continue;
                        }
                        return None;
                    }
                    rho = rho.max(w[1] / w[0]);
                }
                if rho >= 1.0 {
                    return None;
                }
                Some(last[9] * rho / (1.0 - rho))
            };
            if let (Some(bp), Some(bn)) = (bound(&mags_pos), bound(&mags_neg)) {
                if bp + bn < abs_tol {
                    return Ok(sum);
                }
            }
        }
    }
    Err(Error::SlowDecay(trunc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_special::c64;
    use std::f64::consts::PI;

    #[test]
    fn tanh_sinh_endpoint_singularity() {
        // int_0^1 x^{-1/2} (1-x)^{-0.3} dx = B(1/2, 0.7)
        let r = integrate_tanh_sinh(|x: f64| Ok(c64(x.powf(-0.5) * (1.0 - x).powf(-0.3), 0.0)), 0.0, 1.0, 1e-12).unwrap();
        let b = crate::complex_special::gamma_real(0.5).unwrap() * crate::complex_special::gamma_real(0.7).unwrap()
            / crate::complex_special::gamma_real(1.2).unwrap();
        assert!((r.value.re - b).abs() < 1e-9 * b, "{} {b}", r.value.re);
    }

    #[test]
    fn cauchy_beta_cases() {
        let spec = QuadSpec::with_tol(1e-12, 1e-14);
        let r = integrate_line(|x| c64(1.0 / (0.25 + x * x), 0.0), &spec).unwrap();
        assert!((r.value.re - 2.0 * PI).abs() < 1e-11);
        let r = integrate_line(
            |x| {
                let a = c64(0.5, x);
                let b = c64(0.5, -x);
                (a * a * b * b).inv()
            },
            &spec,
        )
        .unwrap();
        assert!((r.value - c64(4.0 * PI, 0.0)).norm() < 1e-11);
        let r = integrate_line(|x| c64(x / (1.0 + x * x).powi(2), 0.0), &spec).unwrap();
        assert!(r.value.norm() < 1e-13);
    }

    #[test]
    fn legendre_exactness() {
        let (x, w) = gauss_legendre(12);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(22)).sum();
        assert!((s - 2.0 / 23.0).abs() < 1e-15);
        let (x, w) = gauss_legendre(7);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-15);
        assert!(x.iter().zip(&w).map(|(x, w)| w * x.powi(4)).sum::<f64>() - 0.4 < 1e-15);
    }

    #[test]
    fn sinh_trapezoid() {
        let (xs, ws) = SampledFunction::sinh_grid(0.05, 30.0);
        let f = SampledFunction::from_fn(|x| c64(1.0 / (0.25 + x * x), 0.0), xs, ws).unwrap();
        assert!((f.integral().re - 2.0 * PI).abs() < 1e-10);
    }

    #[test]
    fn l2z_kronecker() {
        let d = |k: i64| move |j: i64| Ok(if j == k { c64(1.0, 0.0) } else { ZERO });
        let w = |_j: i64| Ok(1.0);
        assert_eq!(weighted_l2z_inner(d(2), d(2), w, 100, 1e-14).unwrap(), c64(1.0, 0.0));
        assert_eq!(weighted_l2z_inner(d(2), d(-1), w, 100, 1e-14).unwrap(), ZERO);
        let slow = |j: i64| Ok(c64(1.0 / (1.0 + j.abs() as f64), 0.0));
        assert!(matches!(weighted_l2z_inner(slow, slow, w, 50, 1e-14), Err(Error::SlowDecay(50))));
    }

    #[test]
    fn gram_is_mirrored() {
        let items = [c64(1.0, 2.0), c64(-0.5, 0.1), c64(0.0, 3.0)];
        let g = gram_matrix(&items, |a, b| Ok(a * b.conj())).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(g[i][j], g[j][i].conj());
            }
        }
    }
}

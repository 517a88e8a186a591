//! Complex gamma-function arithmetic.
//!
//! `log_gamma` is Stirling's series after an upward shift to |z| >= 15, with
//! downward recursion (sum of principal logs) for Re z < 1/2. The imaginary
//! part is therefore continuous on the right half-plane and matches the
//! analytic continuation of ln Gamma along paths that avoid the negative axis.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

pub type C64 = Complex64;

pub const I: C64 = C64 { re: 0.0, im: 1.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Distance to the nearest nonpositive integer below which an argument is a pole.
pub const POLE_TOL: f64 = 1e-12;

/// Largest real part of a logarithm that still exponentiates to a finite f64.
pub const LN_MAX: f64 = 709.78;

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Principal power `base^e`. `0^e` is 0 for Re e > 0.
#[inline]
pub fn cpow(base: C64, e: C64) -> C64 {
    if base == ZERO {
        return if e == ZERO { ONE } else { ZERO };
    }
    (e * base.ln()).exp()
}

/// `Some(n)` when `z` is within `POLE_TOL` of the nonpositive integer `-n`.
pub fn nonpositive_integer(z: C64) -> Option<u64> {
    if z.im.abs() > POLE_TOL || z.re > POLE_TOL {
        return None;
    }
    let r = z.re.round();
    if (z.re - r).abs() < POLE_TOL && r <= 0.0 {
        Some((-r) as u64)
    } else {
        None
    }
}

const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

fn stirling(z: C64) -> C64 {
    let ln_z = z.ln();
    let zinv = z.inv();
    let z2 = zinv * zinv;
    let mut term = zinv;
    let mut corr = ZERO;
    for &c in STIRLING.iter() {
        corr += term * c;
        term *= z2;
    }
    (z - 0.5) * ln_z - z + 0.5 * (2.0 * PI).ln() + corr
}

fn log_gamma_right(mut z: C64) -> C64 {
    let mut acc = ZERO;
    while z.norm() < 15.0 {
        acc += z.ln();
        z += 1.0;
    }
    stirling(z) - acc
}

/// ln sin(pi z), evaluated without overflow for large |Im z|.
pub fn ln_sin_pi(z: C64) -> C64 {
    if z.im.abs() < 20.0 {
        return (z * PI).sin().ln();
    }
    // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z}) for Im z > 0, mirrored below.
    if z.im > 0.0 {
        -I * PI * z + (ONE - (I * 2.0 * PI * z).exp()).ln() + c64(0.5f64.ln(), PI / 2.0)
    } else {
        I * PI * z + (ONE - (-I * 2.0 * PI * z).exp()).ln() + c64(0.5f64.ln(), -PI / 2.0)
    }
}

/// Principal-branch ln Gamma(z).
pub fn log_gamma(z: C64) -> Result<C64> {
    if nonpositive_integer(z).is_some() {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    if z.re >= 0.5 {
        return Ok(log_gamma_right(z));
    }
    let shift = (0.5 - z.re).ceil();
    if shift <= 500.0 {
        let n = shift as usize;
        let mut acc = ZERO;
        for k in 0..n {
            acc += (z + k as f64).ln();
        }
        Ok(log_gamma_right(z + shift) - acc)
    } else {
        Ok(c64(PI.ln(), 0.0) - ln_sin_pi(z) - log_gamma_right(ONE - z))
    }
}

/// Gamma(z).
pub fn gamma(z: C64) -> Result<C64> {
    if z.im == 0.0 && z.re > 0.0 && z.re <= 171.0 && z.re.fract() == 0.0 {
        let n = z.re as u32;
        let mut f = 1.0f64;
        for k in 2..n {
            f *= k as f64;
        }
        return Ok(c64(f, 0.0));
    }
    let lg = log_gamma(z)?;
    if lg.re > LN_MAX {
        return Err(Error::Overflow(format!("Gamma({z}) has ln-modulus {}", lg.re)));
    }
    Ok(lg.exp())
}

/// 1/Gamma(z); zero at the poles of Gamma.
pub fn rgamma(z: C64) -> C64 {
    match log_gamma(z) {
        Ok(lg) => (-lg).exp(),
        Err(_) => ZERO,
    }
}

/// Gamma on the real line.
pub fn gamma_real(x: f64) -> Result<f64> {
    Ok(gamma(c64(x, 0.0))?.re)
}

/// Rising factorial (a)_n.
pub fn pochhammer(a: C64, n: u32) -> C64 {
    let mut p = ONE;
    for k in 0..n {
        p *= a + k as f64;
    }
    p
}

/// Product of Gamma values over a quotient, evaluated in log space.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GammaRatioSpec {
    pub numerators: Vec<C64>,
    pub denominators: Vec<C64>,
}

impl GammaRatioSpec {
    pub fn new(numerators: &[C64], denominators: &[C64]) -> Self {
        Self {
            numerators: numerators.to_vec(),
            denominators: denominators.to_vec(),
        }
    }
}

/// ln of a Gamma ratio. `Ok(None)` means the ratio is exactly zero
/// (an uncancelled denominator pole).
pub fn ln_gamma_ratio(spec: &GammaRatioSpec) -> Result<Option<C64>> {
    let mut num_poles = Vec::new();
    let mut den_poles = Vec::new();
    let mut acc = ZERO;
    for &a in &spec.numerators {
        match nonpositive_integer(a) {
            Some(n) => num_poles.push(n),
            None => acc += log_gamma(a)?,
        }
    }
    for &b in &spec.denominators {
        match nonpositive_integer(b) {
            Some(m) => den_poles.push(m),
            None => acc -= log_gamma(b)?,
        }
    }
    if num_poles.len() > den_poles.len() {
        let n = num_poles[den_poles.len()];
        return Err(Error::Pole { re: -(n as f64), im: 0.0 });
    }
    // Each cancelled pair contributes Res Gamma(-n) / Res Gamma(-m) = (-1)^{n-m} m!/n!.
    for (k, &n) in num_poles.iter().enumerate() {
        let m = den_poles[k];
        acc += ln_factorial(m) - ln_factorial(n);
        if (n + m) % 2 == 1 {
            acc += c64(0.0, PI);
        }
    }
    if den_poles.len() > num_poles.len() {
        return Ok(None);
    }
    Ok(Some(acc))
}

fn ln_factorial(n: u64) -> C64 {
    log_gamma(c64(n as f64 + 1.0, 0.0)).unwrap_or(ZERO)
}

/// Product of Gammas in `numerators` divided by those in `denominators`.
pub fn gamma_ratio(spec: &GammaRatioSpec) -> Result<C64> {
    match ln_gamma_ratio(spec)? {
        None => Ok(ZERO),
        Some(l) => {
            if l.re > LN_MAX {
                Err(Error::Overflow(format!("Gamma ratio has ln-modulus {}", l.re)))
            } else {
                Ok(l.exp())
            }
        }
    }
}

/// Shorthand for `gamma_ratio` on slices.
pub fn gratio(num: &[C64], den: &[C64]) -> Result<C64> {
    gamma_ratio(&GammaRatioSpec::new(num, den))
}

/// ln(1/|Gamma(2is)|^2) = ln(2 s sinh(2 pi s) / pi).
pub fn ln_abs_gamma_2is_sq_inverse(s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::Domain(format!("s = {s} must be positive")));
    }
    let x = 2.0 * PI * s;
    // ln sinh x = x + ln((1 - e^{-2x})/2), with a series guard for tiny x.
    let ln_sinh = if x < 1e-4 {
        x.ln() + x * x / 6.0
    } else {
        x + (-(-2.0 * x).exp_m1()).ln() - 2f64.ln()
    };
    Ok((2.0 * s).ln() + ln_sinh - PI.ln())
}

/// 1/|Gamma(2is)|^2 = 2 s sinh(2 pi s)/pi.
pub fn abs_gamma_2is_sq_inverse(s: f64) -> Result<f64> {
    let l = ln_abs_gamma_2is_sq_inverse(s)?;
    if l > LN_MAX {
        return Err(Error::Overflow(format!("1/|Gamma(2is)|^2 at s = {s}")));
    }
    Ok(l.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn known_values() {
        assert!(log_gamma(ONE).unwrap().norm() < 1e-15);
        let h = log_gamma(c64(0.5, 0.0)).unwrap();
        assert!((h.re - 0.5 * PI.ln()).abs() < 1e-14 && h.im.abs() < 1e-15);
        assert_eq!(gamma(c64(5.0, 0.0)).unwrap(), c64(24.0, 0.0));
        let g = gamma(c64(-1.5, 0.0)).unwrap();
        assert!(rel(g, c64(4.0 * PI.sqrt() / 3.0, 0.0)) < 1e-14);
    }

    #[test]
    fn poles_are_flagged() {
        assert!(matches!(log_gamma(c64(-3.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(gamma(ZERO), Err(Error::Pole { .. })));
        assert_eq!(rgamma(c64(-2.0, 0.0)), ZERO);
    }

    #[test]
    fn large_imaginary_part() {
        // |Gamma(1/2 + i y)|^2 = pi / cosh(pi y)
        for y in [5.0, 20.0, 45.0] {
            let lg = log_gamma(c64(0.5, y)).unwrap();
            let expect = 0.5 * (PI / (PI * y).cosh()).ln();
            assert!((lg.re - expect).abs() < 1e-12 * expect.abs().max(1.0));
        }
    }

    #[test]
    fn left_half_plane_reflection() {
        for z in [c64(-7.3, 2.1), c64(-0.4, -11.0), c64(-30.2, 0.7)] {
            let lhs = gamma(z).unwrap() * gamma(ONE - z).unwrap() * (z * PI).sin() / PI;
            assert!(rel(lhs, ONE) < 1e-11, "{z}: {lhs}");
        }
    }

    #[test]
    fn ratio_cancels_poles() {
        // Gamma(-2+e)/Gamma(-3+e) -> -3
        let r = gratio(&[c64(-2.0, 0.0)], &[c64(-3.0, 0.0)]).unwrap();
        assert!(rel(r, c64(-3.0, 0.0)) < 1e-14);
        assert_eq!(gratio(&[ONE], &[c64(-1.0, 0.0)]).unwrap(), ZERO);
        assert!(gratio(&[c64(-1.0, 0.0)], &[ONE]).is_err());
        let big = c64(200.0, 50.0);
        assert!(rel(gratio(&[big], &[big]).unwrap(), ONE) < 1e-14);
    }

    #[test]
    fn abs_gamma_2is() {
        let v = abs_gamma_2is_sq_inverse(1.0).unwrap();
        assert!((v - 2.0 * (2.0 * PI).sinh() / PI).abs() < 1e-12 * v);
        let s = 1e-5;
        let v = abs_gamma_2is_sq_inverse(s).unwrap();
        assert!((v / (4.0 * s * s) - 1.0).abs() < 1e-8);
        assert!(abs_gamma_2is_sq_inverse(0.0).is_err());
    }
}

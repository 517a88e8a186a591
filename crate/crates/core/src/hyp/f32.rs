//! 3F2 at unit argument.
//!
//! Convergent cases are summed directly up to N terms; the remainder is
//! obtained from the large-k expansion of the term ratio,
//! t_k ~ K k^{-1-s} sum_j c_j k^{-j}, summed with Hurwitz zeta values.
//! Non-convergent cases are mapped by Thomae's relation.

use super::{terminating_length, EvalReport, HypParams, Method};
use crate::complex_special::{c64, gratio, log_gamma, nonpositive_integer, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// Convergence margin required before summing directly.
pub const MIN_MARGIN: f64 = 0.05;
const MAX_IMAGES: usize = 6;
const ORDER: usize = 20;

const BERNOULLI: [f64; 23] = [
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
    0.0,
    -3617.0 / 510.0,
    0.0,
    43867.0 / 798.0,
    0.0,
    -174611.0 / 330.0,
    0.0,
    854513.0 / 138.0,
];

fn binom(n: usize, k: usize) -> f64 {
    let mut r = 1.0;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r
}

fn bernoulli_poly(n: usize, x: C64) -> C64 {
    let mut acc = ZERO;
    let mut xp = ONE;
    // sum_k C(n,k) B_k x^{n-k}, accumulated from the highest k down
    for j in 0..=n {
        let k = n - j;
        acc += xp * (binom(n, k) * BERNOULLI[k]);
        xp *= x;
    }
    acc
}

/// Hurwitz zeta(sigma, n) for Re sigma > 1 and large integer n (Euler-Maclaurin).
fn hurwitz_zeta(sigma: C64, n: f64) -> C64 {
    let nn = c64(n, 0.0);
    let ln_n = n.ln();
    let pow = |e: C64| (e * ln_n).exp();
    let mut acc = pow(ONE - sigma) / (sigma - 1.0) + pow(-sigma) * 0.5;
    let mut rising = sigma;
    let mut fact = 2.0;
    let mut np = pow(-sigma - 1.0);
    for k in 1..=10usize {
        acc += rising * np * (BERNOULLI[2 * k] / fact);
        rising *= (sigma + (2 * k - 1) as f64) * (sigma + (2 * k) as f64);
        fact *= ((2 * k + 1) * (2 * k + 2)) as f64;
        np /= nn * nn;
    }
    acc
}

fn margin(num: &[C64; 3], den: &[C64; 2]) -> C64 {
    den[0] + den[1] - num[0] - num[1] - num[2]
}

fn direct_with_tail(num: &[C64; 3], den: &[C64; 2]) -> Result<EvalReport> {
    let s = margin(num, den);
    let scale = num
        .iter()
        .chain(den.iter())
        .map(|z| z.norm())
        .fold(1.0, f64::max);
    let n_terms = (10.0 * scale).max(100.0).ceil() as usize;
    let mut term = ONE;
    let mut sum = ONE;
    let mut mag = 1.0;
    for k in 0..n_terms - 1 {
        let kf = k as f64;
        term *= (num[0] + kf) * (num[1] + kf) * (num[2] + kf) / ((den[0] + kf) * (den[1] + kf) * (kf + 1.0));
        sum += term;
        mag += term.norm();
    }
    // expansion coefficients of ln(t_k / (K k^{-1-s})) in powers of 1/k
    let mut e = vec![ZERO; ORDER + 1];
    for (n, en) in e.iter_mut().enumerate().skip(1) {
        let mut b = ZERO;
        for &a in num {
            b += bernoulli_poly(n + 1, a);
        }
        for &d in den {
            b -= bernoulli_poly(n + 1, d);
        }
        b -= bernoulli_poly(n + 1, ONE);
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        *en = b * (sign / ((n * (n + 1)) as f64));
    }
    let mut cexp = vec![ZERO; ORDER + 1];
    cexp[0] = ONE;
    for j in 1..=ORDER {
        let mut acc = ZERO;
        for m in 1..=j {
            acc += e[m] * cexp[j - m] * (m as f64);
        }
        cexp[j] = acc / (j as f64);
    }
    let nf = n_terms as f64;
    let ln_k = log_gamma(den[0])? + log_gamma(den[1])? - log_gamma(num[0])? - log_gamma(num[1])? - log_gamma(num[2])?;
    let mut tail = ZERO;
    let mut last = 0.0;
    for (j, &cj) in cexp.iter().enumerate() {
        let t = cj * hurwitz_zeta(ONE + s + j as f64, nf);
        tail += t;
        last = t.norm();
    }
    let tail = ln_k.exp() * tail;
    // the expansion must reproduce the last directly summed term
    let next = term * (num[0] + nf - 1.0) * (num[1] + nf - 1.0) * (num[2] + nf - 1.0)
        / ((den[0] + nf - 1.0) * (den[1] + nf - 1.0) * nf);
    let mut series = ZERO;
    for (j, &cj) in cexp.iter().enumerate() {
        series += cj * (-(ONE + s + j as f64) * nf.ln()).exp();
    }
    let check = (ln_k.exp() * series - next).norm() / next.norm().max(f64::MIN_POSITIVE);
    let value = sum + tail;
    let abs = 2.2e-16 * (mag + tail.norm()) * (n_terms as f64).sqrt()
        + (check + last) * tail.norm();
    Ok(EvalReport {
        value,
        terms_used: n_terms + ORDER,
        method: Method::DirectSeries,
        est_error: abs / value.norm().max(f64::MIN_POSITIVE),
    })
}

fn terminating(num: &[C64; 3], den: &[C64; 2], n: u64) -> Result<EvalReport> {
    for &d in den {
        if let Some(m) = nonpositive_integer(d) {
            if n > m {
                return Err(Error::Pole { re: d.re, im: d.im });
            }
        }
    }
    let mut term = ONE;
    let mut sum = ONE;
    let mut mag = 1.0;
    for k in 0..n {
        let kf = k as f64;
        term *= (num[0] + kf) * (num[1] + kf) * (num[2] + kf) / ((den[0] + kf) * (den[1] + kf) * (kf + 1.0));
        sum += term;
        mag += term.norm();
    }
    Ok(EvalReport {
        value: sum,
        terms_used: n as usize + 1,
        method: Method::DirectSeries,
        est_error: 2.2e-16 * mag / sum.norm().max(f64::MIN_POSITIVE),
    })
}

/// Thomae image choosing numerator `i` as the distinguished parameter:
/// 3F2[a,b,c;d,e;1] = Gamma(d)Gamma(e)Gamma(r)/(Gamma(a)Gamma(b+r)Gamma(c+r)) 3F2[d-a,e-a,r;b+r,c+r;1],
/// r = d+e-a-b-c. Returns (prefactor, numerators, denominators).
pub fn thomae_image(num: &[C64; 3], den: &[C64; 2], i: usize) -> Result<(C64, [C64; 3], [C64; 2])> {
    let a = num[i];
    let b = num[(i + 1) % 3];
    let c = num[(i + 2) % 3];
    let (d, e) = (den[0], den[1]);
    let r = d + e - a - b - c;
    let pref = gratio(&[d, e, r], &[a, b + r, c + r])?;
    Ok((pref, [d - a, e - a, r], [b + r, c + r]))
}

fn as_arrays(p: &HypParams) -> Result<([C64; 3], [C64; 2])> {
    if p.numerators.len() != 3 || p.denominators.len() != 2 {
        return Err(Error::Invalid(format!(
            "3F2 needs 3 numerators and 2 denominators, got {} and {}",
            p.numerators.len(),
            p.denominators.len()
        )));
    }
    Ok((
        [p.numerators[0], p.numerators[1], p.numerators[2]],
        [p.denominators[0], p.denominators[1]],
    ))
}

/// 3F2[a,b,c; d,e; 1] with a report of the route taken.
pub fn hyp3f2_unity_report(p: &HypParams) -> Result<EvalReport> {
    let (num, den) = as_arrays(p)?;
    if let Some(n) = terminating_length(&num) {
        return terminating(&num, &den, n);
    }
    for &d in &den {
        if nonpositive_integer(d).is_some() {
            return Err(Error::Pole { re: d.re, im: d.im });
        }
    }
    if margin(&num, &den).re > MIN_MARGIN {
        return direct_with_tail(&num, &den);
    }
    // breadth-first over Thomae images, best margin first
    let mut frontier = vec![(ONE, num, den)];
    let mut examined = 0usize;
    while !frontier.is_empty() && examined < MAX_IMAGES {
        let mut next = Vec::new();
        for (pref, n0, d0) in &frontier {
            let mut order: Vec<usize> = (0..3).collect();
            order.sort_by(|&i, &j| n0[j].re.partial_cmp(&n0[i].re).unwrap_or(std::cmp::Ordering::Equal));
            for i in order {
                if examined >= MAX_IMAGES {
                    break;
                }
                examined += 1;
                let Ok((p1, n1, d1)) = thomae_image(n0, d0, i) else { continue };
                if d1.iter().any(|&d| nonpositive_integer(d).is_some()) {
                    continue;
                }
                let total = *pref * p1;
                if let Some(n) = terminating_length(&n1) {
                    let r = terminating(&n1, &d1, n)?;
                    return Ok(EvalReport { value: total * r.value, method: Method::Thomae, ..r });
                }
                if margin(&n1, &d1).re > MIN_MARGIN {
                    let r = direct_with_tail(&n1, &d1)?;
                    return Ok(EvalReport { value: total * r.value, method: Method::Thomae, ..r });
                }
                next.push((total, n1, d1));
            }
        }
        frontier = next;
    }
    Err(Error::NoConvergentForm(format!("{:?}; {:?}", num, den)))
}

/// 3F2[a,b,c; d,e; 1].
pub fn hyp3f2_unity(p: &HypParams) -> Result<C64> {
    Ok(hyp3f2_unity_report(p)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_special::gamma;

    fn r(x: f64) -> C64 {
        c64(x, 0.0)
    }

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn saalschutz_and_dixon_like_sums() {
        // 3F2[a, b, 1; c, 2; 1] closed forms are awkward; use the Gauss reduction
        // 3F2[a, b, c; d, c; 1] = 2F1(a, b; d; 1) = Gamma(d)Gamma(d-a-b)/(Gamma(d-a)Gamma(d-b))
        let (a, b, c, d) = (c64(0.3, 0.2), r(0.45), c64(1.1, -0.4), r(2.0));
        let v = hyp3f2_unity(&HypParams::new(&[a, b, c], &[d, c])).unwrap();
        let g = gamma(d).unwrap() * gamma(d - a - b).unwrap() / (gamma(d - a).unwrap() * gamma(d - b).unwrap());
        assert!(rel(v, g) < 1e-12, "{v} {g}");
    }

    #[test]
    fn slow_margin_and_thomae() {
        // margin 0.1: direct with tail; compare with its Thomae image
        let num = [r(0.2), r(0.3), r(0.4)];
        let den = [r(0.5), r(0.5)];
        let d = direct_with_tail(&num, &den).unwrap();
        let (p, n1, d1) = thomae_image(&num, &den, 2).unwrap();
        let t = direct_with_tail(&n1, &d1).unwrap();
        assert!(rel(d.value, p * t.value) < 1e-11, "{} {}", d.value, p * t.value);
    }

    #[test]
    fn divergent_form_is_continued() {
        // margin -0.5 requires Thomae; check against the Gauss reduction continued in d
        let (a, b, c, d) = (r(1.2), r(0.9), r(0.7), r(1.6));
        let v = hyp3f2_unity_report(&HypParams::new(&[a, b, c], &[d, c])).unwrap();
        assert_eq!(v.method, Method::Thomae);
        let g = gamma(d).unwrap() * gamma(d - a - b).unwrap() / (gamma(d - a).unwrap() * gamma(d - b).unwrap());
        assert!(rel(v.value, g) < 1e-10, "{} {}", v.value, g);
    }

    #[test]
    fn terminating() {
        let (a, b, d, e) = (c64(0.3, 1.0), r(2.5), r(1.7), c64(0.4, -0.2));
        let v = hyp3f2_unity(&HypParams::new(&[r(-1.0), a, b], &[d, e])).unwrap();
        assert!(rel(v, ONE - a * b / (d * e)) < 1e-15);
    }

    #[test]
    fn hurwitz_against_direct_sum() {
        let sigma = c64(2.3, 0.7);
        let direct: C64 = (100..2_000_000).map(|k| (-sigma * (k as f64).ln()).exp()).sum();
        let rest = hurwitz_zeta(sigma, 2_000_000.0);
        assert!(rel(direct + rest, hurwitz_zeta(sigma, 100.0)) < 1e-12);
    }
}

//! Named verification suites for `ditrans verify`.

use crate::commands::{forward_job, params};
use crate::input;
use crate::output::{emit, num, SCHEMA};
use crate::{CliError, CliResult, Common, Format, Suite};
use ditrans::bases::*;
use ditrans::complex_special::*;
use ditrans::ditransform::{discrete_kernel, discrete_weight, inverse, TransformParams};
use ditrans::hyp::{hyp2f1_value, hyp3f2_unity, thomae_image, HypParams};
use ditrans::quad::{identity_defect, integrate_line, QuadSpec};
use ditrans::spectral_check::*;
use ditrans::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

pub struct Extra {
    pub theta: Option<f64>,
    pub t: Option<f64>,
    pub rho: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub point: String,
    pub measured: f64,
    pub required: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<[f64; 2]>,
}

fn check(name: &str, point: impl Into<String>, measured: f64, required: f64) -> Check {
    Check { name: name.into(), point: point.into(), measured, required, pass: measured <= required, value: None }
}

#[derive(Serialize)]
struct Report<'a> {
    schema: u32,
    suite: &'a str,
    pass: bool,
    checks: &'a [Check],
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

fn cplx(rng: &mut ChaCha8Rng, re: (f64, f64), im: (f64, f64)) -> C64 {
    c64(rng.gen_range(re.0..re.1), rng.gen_range(im.0..im.1))
}

fn ab(al: f64, be: f64) -> String {
    format!("alpha={al}, beta={be}")
}

fn max_offdiag(g: &[Vec<C64>]) -> f64 {
    let mut m: f64 = 0.0;
    for (i, row) in g.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i != j {
                m = m.max(v.norm());
            }
        }
    }
    m
}

fn gamma_suite() -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut conj, mut rec, mut refl): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..10_000 {
        let mut z = cplx(&mut rng, (-10.0, 10.0), (-20.0, 20.0));
        if z.im.abs() < 1e-3 {
            z.im = 1e-3;
        }
        let g = gamma(z)?;
        conj = conj.max(rel(gamma(z.conj())?, g.conj()));
        rec = rec.max(rel(gamma(z + 1.0)?, z * g));
        refl = refl.max((g * gamma(ONE - z)? * (z * PI).sin() / PI - 1.0).norm());
    }
    let mut g2: f64 = 0.0;
    for k in 0..=200 {
        let s = 1e-3 * (4e4f64).powf(k as f64 / 200.0);
        let direct = (-2.0 * log_gamma(c64(0.0, 2.0 * s))?.re).exp();
        g2 = g2.max((abs_gamma_2is_sq_inverse(s)? - direct).abs() / direct);
    }
    let pts = "1e4 points, |Re z| <= 10, |Im z| <= 20";
    Ok(vec![
        check("conjugation", pts, conj, 1e-10),
        check("recursion", pts, rec, 1e-10),
        check("reflection", pts, refl, 1e-10),
        check("|Gamma(2is)|^-2 closed form", "201 points, s in [1e-3, 40]", g2, 1e-12),
    ])
}

fn hyp_suite() -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut euler: f64 = 0.0;
    for _ in 0..1000 {
        let a = cplx(&mut rng, (-2.0, 2.0), (-2.0, 2.0));
        let b = cplx(&mut rng, (-2.0, 2.0), (-2.0, 2.0));
        let c = cplx(&mut rng, (0.5, 3.0), (-2.0, 2.0));
        let z = c64(0.0, rng.gen_range(-PI..PI)).exp() * rng.gen_range(0.0..0.7);
        let l = hyp2f1_value(a, b, c, z)?;
        euler = euler.max(rel(l, cpow(ONE - z, c - a - b) * hyp2f1_value(c - a, c - b, c, z)?));
    }
    let (a, b, c) = (c64(0.3, 0.0), c64(0.2, 0.5), c64(2.1, 0.0));
    let gauss = rel(hyp2f1_value(a, b, c, c64(1.0 - 1e-6, 0.0))?, gratio(&[c, c - a - b], &[c - a, c - b])?);

    let mut thomae: f64 = 0.0;
    for _ in 0..100 {
        let num = [cplx(&mut rng, (0.3, 1.5), (-1.0, 1.0)), cplx(&mut rng, (-0.8, 0.8), (-1.0, 1.0)), cplx(&mut rng, (-0.8, 0.8), (-1.0, 1.0))];
        let excess = rng.gen_range(0.3..1.5);
        let d = cplx(&mut rng, (0.5, 2.5), (-1.0, 1.0));
        let e = num[0] + num[1] + num[2] + excess - d;
        if e.re < 0.3 {
            continue;
        }
        let den = [d, e];
        let (f, n2, d2) = thomae_image(&num, &den, 0)?;
        thomae = thomae.max(rel(hyp3f2_unity(&HypParams::new(&num, &den))?, f * hyp3f2_unity(&HypParams::new(&n2, &d2))?));
    }

    let mut cont: f64 = 0.0;
    let (a, b, c) = (c64(0.4, 0.7), c64(-0.3, 0.2), c64(1.3, -0.5));
    for k in 0..24 {
        let ph = c64(0.0, 2.0 * PI * (k as f64 + 0.3) / 24.0).exp();
        for r in [0.75, 1.5] {
            cont = cont.max(rel(hyp2f1_value(a, b, c, ph * (r * (1.0 - 1e-12)))?, hyp2f1_value(a, b, c, ph * (r * (1.0 + 1e-12)))?));
        }
    }
    Ok(vec![
        check("Euler transformation", "1e3 samples, |z| <= 0.7", euler, 1e-10),
        check("Gauss summation limit", "a=0.3, b=0.2+0.5i, c=2.1, z=1-1e-6", gauss, 1e-4),
        check("Thomae relation", "100 samples", thomae, 1e-9),
        check("dispatch continuity", "|z| = 0.75, 1.5", cont, 1e-9),
    ])
}

fn wronskian_suite(c: &Common) -> Result<Vec<Check>> {
    let p = params(c).map_err(core_err)?;
    let pt = ab(p.alpha, p.beta);
    let mu = c64(0.25, 0.6);
    let xs = [-2.0, -1.0, 0.0, 1.0, 2.0];
    let ids = KummerSolutionId::ALL;
    let mut spread: f64 = 0.0;
    for i in 0..ids.len() {
        for j in (i + 1)..ids.len() {
            let f = |x: f64| kummer_solution(ids[i], &p, mu, x);
            let g = |x: f64| kummer_solution(ids[j], &p, mu, x);
            let vals: Vec<C64> = xs.iter().map(|&x| wronskian_sigma(&f, &g, x, FD_STEP)).collect::<Result<_>>()?;
            let scale = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
            if scale < 1e-10 {
                continue;
            }
            for v in &vals {
                spread = spread.max((v - vals[0]).norm() / scale);
            }
        }
    }
    let target = I * p.a();
    let s1 = |x: f64| kummer_solution(KummerSolutionId::S1, &p, mu, x);
    let s2 = |x: f64| kummer_solution(KummerSolutionId::S2, &p, mu, x);
    let mut worst: f64 = 0.0;
    let mut at0 = ZERO;
    for x in [0.0, 1.0, 2.0] {
        let v = wronskian_sigma(&s1, &s2, x, FD_STEP)?;
        if x == 0.0 {
            at0 = v;
        }
        worst = worst.max(rel(v, target));
    }
    let vm = |x: f64| kummer_solution(KummerSolutionId::Vminus, &p, mu, x);
    let wm = |x: f64| kummer_solution(KummerSolutionId::Wminus, &p, mu, x);
    let svw = rel(wronskian_sigma(&vm, &wm, 0.5, FD_STEP)?, sigma_v_w(&p, mu)?);
    let mut sigma = check("sigma(S1,S2) = i(alpha+i beta)", format!("{pt}, mu=0.25+0.6i, x in {{0,1,2}}"), worst, 1e-7);
    sigma.value = Some([at0.re, at0.im]);
    Ok(vec![
        check("(1/4+x^2) W constant in x, 28 pairs", format!("{pt}, mu=0.25+0.6i, x in [-2, 2]"), spread, 1e-6),
        sigma,
        check("sigma(V-,W-) closed form", format!("{pt}, mu=0.25+0.6i, x=0.5"), svw, 1e-7),
    ])
}

fn connection_suite(c: &Common) -> Result<Vec<Check>> {
    let p = params(c).map_err(core_err)?;
    let mut points = vec![(p, c64(0.25, 0.6), 1.5), (p, c64(0.25, 0.6), -1.5), (p, c64(0.1, -1.3), 0.4)];
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..5 {
        let q = TransformParams::new(rng.gen_range(0.05..0.95), rng.gen_range(-1.0..1.0))?;
        points.push((q, cplx(&mut rng, (0.05, 0.6), (-2.0, 2.0)), rng.gen_range(-2.5..2.5)));
    }
    let mut out = Vec::new();
    for (which, name) in [(Connection::VViaS, "V- via S1, S2"), (Connection::WViaT, "W- via T1, T2"), (Connection::WViaS, "W- via S1, S2")] {
        for &(q, mu, x) in &points {
            let r = connection_check(which, &q, mu, x)?;
            out.push(check(name, format!("{}, mu={mu}, x={x:.4}", ab(q.alpha, q.beta)), r, 1e-8));
        }
    }
    Ok(out)
}

fn resolvent_suite(c: &Common) -> Result<Vec<Check>> {
    let p = params(c).map_err(core_err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut out = Vec::new();
    for _ in 0..10 {
        let (x, y) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let lam = c64(rng.gen_range(-3.0..3.0), sign * rng.gen_range(0.2..3.0));
        let st = resolvent_kernel(x, y, lam, ResolventForm::ST, &p)?;
        let ss = resolvent_kernel(x, y, lam, ResolventForm::SS, &p)?;
        out.push(check("ST form = SS form", format!("{}, x={x:.4}, y={y:.4}, lambda={lam:.4}", ab(p.alpha, p.beta)), rel(ss, st), 1e-7));
    }
    let rp = if p.discrete_count() > 0 { p } else { TransformParams::new(1.7, 0.3)? };
    for k in 0..rp.discrete_count() {
        for (x, y) in [(0.5, -0.7), (1.3, 0.2)] {
            let r = contour_residue(x, y, k, 1e-4, 64, &rp)?;
            let e = expected_residue(x, y, k, &rp)?;
            out.push(check("contour residue = w_k R_k(x) conj R_k(y)", format!("{}, k={k}, x={x}, y={y}", ab(rp.alpha, rp.beta)), rel(r, e), 1e-4));
        }
    }
    Ok(out)
}

fn transform_suite(c: &Common, roundtrip: bool) -> CliResult<Vec<Check>> {
    let p = params(c)?;
    let f = input::load(c.input.as_deref())?;
    let data = forward_job(c, &f, &p)?;
    let pt = format!("{}, f={}", ab(p.alpha, p.beta), f.label());
    if !roundtrip {
        let d = (data.norm_sq()? - f.norm_sq).abs() / f.norm_sq;
        return Ok(vec![check("Parseval: |norm defect| / ||f||^2", pt, d, c.rel_tol.unwrap_or(1e-4))]);
    }
    let (xs, want) = f.reference(5.0, 0.1)?;
    let got = inverse(&data, &xs)?;
    let scale = want.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let e = got.iter().zip(&want).map(|(g, w)| (g - w).norm() / w.norm().max(1e-6 * scale).max(f64::MIN_POSITIVE)).fold(0.0, f64::max);
    Ok(vec![check("round trip: max pointwise relative error on |x| <= 5", pt, e, c.rel_tol.unwrap_or(1e-3))])
}

fn gram_r_suite(c: &Common) -> Result<Vec<Check>> {
    let (p, q) = (c.p.unwrap_or(0.3), c.q.unwrap_or(0.7));
    let ns: Vec<i64> = (-3..=3).collect();
    let g = r_gram(&ns, p, q);
    let ga = r_gram_angle(&ns, p, q);
    let angle = g.iter().zip(&ga).flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).norm())).fold(0.0, f64::max);
    let pt = format!("p={p}, q={q}, n in -3..3");
    Ok(vec![check("Gram = I", pt.clone(), identity_defect(&g), 1e-8), check("angle-variable form agrees", pt, angle, 1e-10)])
}

fn gram_xi_suite(c: &Common) -> Result<Vec<Check>> {
    let xp = XiParams::new(c.alpha.unwrap_or(0.25), c.beta.unwrap_or(0.1), c.p.unwrap_or(0.0), c.q.unwrap_or(0.5))?;
    let pt = format!("{}, p={}, q={}", ab(xp.alpha, xp.beta), xp.p, xp.q);
    let g = xi_gram_split(&[-2, -1, 0, 1, 2], &xp, 3.0, c.s_max.unwrap_or(24.0), c.s_nodes.unwrap_or(16))?;
    let diag = g.total.iter().enumerate().map(|(i, r)| (r[i] - 1.0).norm()).fold(0.0, f64::max);
    let mut forms: f64 = 0.0;
    for n in [-1, 0, 2] {
        for j in [1, 2] {
            forms = forms.max(rel(xi_displayed(j, n, &xp, 1.0)?, xi(j, n, &xp, 1.0)?));
        }
    }
    Ok(vec![
        check("Xi Gram off-diagonal, n in -2..2", pt.clone(), max_offdiag(&g.total), 1e-5),
        check("Xi Gram diagonal - 1", pt.clone(), diag, 1e-5),
        check("Xi forms agree (Thomae)", format!("{pt}, s=1"), forms, 1e-8),
    ])
}

fn romanovski_suite(c: &Common) -> Result<Vec<Check>> {
    let p = TransformParams::new(c.alpha.unwrap_or(2.2), c.beta.unwrap_or(0.5))?;
    let (al, be) = (p.alpha, p.beta);
    let kk = p.discrete_count();
    if kk < 1 {
        return Err(ditrans::Error::Invalid(format!("alpha = {al} has no discrete spectrum (need alpha > 1/2)")));
    }
    let spec = QuadSpec::with_tol(1e-12, 1e-15);
    let ip = |k: usize, m: usize| -> Result<C64> {
        let f = |x: f64| -> C64 {
            let a = romanovski_poly(k as u32, al, be, x).unwrap_or(ZERO);
            let b = romanovski_poly(m as u32, al, be, x).unwrap_or(ZERO);
            a * b.conj() * romanovski_weight(al, be, x)
        };
        Ok(integrate_line(f, &spec)?.value)
    };
    let mut out = Vec::new();
    let mut orth: f64 = 0.0;
    for k in 0..kk {
        for m in (k + 1)..kk {
            orth = orth.max(ip(k, m)?.norm() / (ip(k, k)?.re * ip(m, m)?.re).sqrt());
        }
    }
    if kk > 1 {
        out.push(check("P_k orthogonal under the weight", format!("{}, k < {kk}", ab(al, be)), orth, 1e-8));
    }
    let mut norm: f64 = 0.0;
    for k in 0..kk {
        let n = integrate_line(|x| c64(discrete_kernel(&p, x, k).map(|v| v.norm_sqr()).unwrap_or(f64::NAN), 0.0), &spec)?.value.re;
        norm = norm.max((n * discrete_weight(&p, k)? - 1.0).abs());
    }
    out.push(check("||R_k||^2 w_k = 1", format!("{}, k < {kk}", ab(al, be)), norm, 1e-8));
    Ok(out)
}

fn laguerre_suite(c: &Common) -> Result<Vec<Check>> {
    let points = match (c.alpha, c.beta) {
        (None, None) => vec![(0.2, 0.1), (-0.1, 0.3)],
        (a, b) => vec![(a.unwrap_or(0.2), b.unwrap_or(0.1))],
    };
    let mut out = Vec::new();
    for (a, b) in points {
        let (mut orth, mut norm): (f64, f64) = (0.0, 0.0);
        for n in -1..=2i64 {
            for m in n..=2 {
                let v = laguerre_inner(n, m, a, b, 1e-10)?;
                if n == m {
                    norm = norm.max((v / laguerre_norm_sq(n, a, b)? - 1.0).abs());
                } else {
                    orth = orth.max(v.abs());
                }
            }
        }
        out.push(check("Laguerre orthogonality", format!("{}, n in -1..2", ab(a, b)), orth, 1e-6));
        out.push(check("Laguerre norm", format!("{}, n in -1..2", ab(a, b)), norm, 1e-5));
    }
    Ok(out)
}

fn meixner_suite(c: &Common, x: &Extra) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let overridden = c.alpha.is_some() || c.beta.is_some() || x.t.is_some();
    let real = if overridden { vec![(c.alpha.unwrap_or(0.2), c.beta.unwrap_or(-0.1), x.t.unwrap_or(0.4))] } else { vec![(0.2, -0.1, 0.4), (-0.15, 0.3, 0.7)] };
    for (a, b, t) in real {
        let (mut orth, mut norm): (f64, f64) = (0.0, 0.0);
        for n in -1..=2i64 {
            for m in n..=2 {
                let v = l2z_inner(|j| perturbed_meixner(n, a, b, t, j), |j| perturbed_meixner(m, a, b, t, j), |j| meixner_weight(a, b, j))?;
                if n == m {
                    norm = norm.max((v.re / meixner_norm_sq(n, a, b, t)? - 1.0).abs());
                } else {
                    orth = orth.max(v.norm() / (meixner_norm_sq(n, a, b, t)? * meixner_norm_sq(m, a, b, t)?).sqrt());
                }
            }
        }
        let pt = format!("{}, t={t}, n in -1..2", ab(a, b));
        out.push(check("Meixner (real pair) orthogonality", pt.clone(), orth, 1e-8));
        out.push(check("Meixner (real pair) norm", pt, norm, 1e-8));
    }
    let cpx = if overridden { vec![(c64(c.alpha.unwrap_or(0.2), c.beta.unwrap_or(0.3)), x.t.unwrap_or(0.5))] } else { vec![(c64(0.2, 0.3), 0.5), (c64(-0.1, 0.2), 0.3)] };
    for (a, t) in cpx {
        let (mut orth, mut norm): (f64, f64) = (0.0, 0.0);
        for n in -1..=2i64 {
            for m in n..=2 {
                let v = l2z_inner(|j| meixner_complex(n, a, t, j), |j| meixner_complex(m, a, t, j), |_| Ok(1.0))?;
                if n == m {
                    norm = norm.max((v.re / meixner_complex_norm_sq(n, a, t)? - 1.0).abs());
                } else {
                    orth = orth.max(v.norm());
                }
            }
        }
        let pt = format!("a={a}, t={t}, n in -1..2");
        out.push(check("Meixner (complex) orthogonality", pt.clone(), orth, 1e-8));
        out.push(check("Meixner (complex) norm", pt, norm, 1e-8));
    }
    Ok(out)
}

fn jacobi_suite(c: &Common, x: &Extra) -> Result<Vec<Check>> {
    let overridden = c.alpha.is_some() || c.beta.is_some() || x.theta.is_some();
    let points = if overridden { vec![(c.alpha.unwrap_or(0.3), c.beta.unwrap_or(0.5), x.theta.unwrap_or(0.4))] } else { vec![(0.3, 0.5, 0.4), (-0.2, 0.7, 0.6)] };
    let mut out = Vec::new();
    for (a, b, th) in points {
        let sh = JacobiShift::new(a, b, th)?;
        let idx: Vec<f64> = (-1..=2).filter_map(|k| sh.index(k).ok()).collect();
        let (mut orth, mut norm): (f64, f64) = (0.0, 0.0);
        for (i, &n) in idx.iter().enumerate() {
            for &m in &idx[i..] {
                let v = jacobi_inner(n, m, &sh, 1e-11)?;
                if n == m {
                    norm = norm.max((v / jacobi_norm_sq(n, &sh)? - 1.0).abs());
                } else {
                    orth = orth.max(v.abs() / (jacobi_norm_sq(n, &sh)? * jacobi_norm_sq(m, &sh)?).sqrt());
                }
            }
        }
        let pt = format!("{}, theta={th}, n in {idx:?}", ab(a, b));
        out.push(check("Jacobi orthogonality", pt.clone(), orth, 1e-5));
        out.push(check("Jacobi norm", pt, norm, 1e-4));
    }
    Ok(out)
}

fn f22_suite(x: &Extra) -> Result<Vec<Check>> {
    let rhos = match x.rho {
        Some(r) => vec![r],
        None => vec![0.5, 1.5],
    };
    let items: Vec<(u32, i64)> = [0u32, 1].iter().flat_map(|&n| [-1i64, 0, 1].map(move |m| (n, m))).collect();
    let mut out = Vec::new();
    for rho in rhos {
        let g = f22_gram(&items, rho, true, 300.0)?;
        out.push(check("2F2 basis Gram = I", format!("rho={rho}, n in {{0,1}}, m in {{-1,0,1}}"), identity_defect(&g), 1e-5));
    }
    Ok(out)
}

fn core_err(e: CliError) -> ditrans::Error {
    match e {
        CliError::Core(e) => e,
        other => ditrans::Error::Invalid(other.to_string()),
    }
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Gamma => "gamma",
        Suite::Hyp => "hyp",
        Suite::Wronskian => "wronskian",
        Suite::Connection => "connection",
        Suite::Resolvent => "resolvent",
        Suite::Parseval => "parseval",
        Suite::Roundtrip => "roundtrip",
        Suite::GramR => "gram-r",
        Suite::GramXi => "gram-xi",
        Suite::Romanovski => "romanovski",
        Suite::AddendumLaguerre => "addendum-laguerre",
        Suite::AddendumMeixner => "addendum-meixner",
        Suite::AddendumJacobi => "addendum-jacobi",
        Suite::Addendum2f2 => "addendum-2f2",
    }
}

pub fn verify(c: &Common, suite: Suite, extra: Extra) -> CliResult<()> {
    let checks = match suite {
        Suite::Gamma => gamma_suite()?,
        Suite::Hyp => hyp_suite()?,
        Suite::Wronskian => wronskian_suite(c)?,
        Suite::Connection => connection_suite(c)?,
        Suite::Resolvent => resolvent_suite(c)?,
        Suite::Parseval => transform_suite(c, false)?,
        Suite::Roundtrip => transform_suite(c, true)?,
        Suite::GramR => gram_r_suite(c)?,
        Suite::GramXi => gram_xi_suite(c)?,
        Suite::Romanovski => romanovski_suite(c)?,
        Suite::AddendumLaguerre => laguerre_suite(c)?,
        Suite::AddendumMeixner => meixner_suite(c, &extra)?,
        Suite::AddendumJacobi => jacobi_suite(c, &extra)?,
        Suite::Addendum2f2 => f22_suite(&extra)?,
    };
    let name = suite_name(suite);
    let pass = checks.iter().all(|k| k.pass);
    let report = Report { schema: SCHEMA, suite: name, pass, checks: &checks };
    let header = ["suite", "check", "point", "measured", "required", "pass", "re_value", "im_value"];
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|k| {
            let (vr, vi) = k.value.map(|v| (num(v[0]), num(v[1]))).unwrap_or_default();
            vec![name.into(), k.name.clone(), k.point.clone(), num(k.measured), num(k.required), k.pass.to_string(), vr, vi]
        })
        .collect();
    emit(&c.output, c.format.unwrap_or(Format::Json), &header, &rows, &report)?;
    if pass {
        return Ok(());
    }
    let failing: Vec<String> = checks
        .iter()
        .filter(|k| !k.pass)
        .map(|k| format!("{} at {}: measured {:.3e}, required {:.1e}", k.name, k.point, k.measured, k.required))
        .collect();
    Err(CliError::Tolerance(format!("suite {name} failed: {}", failing.join("; "))))
}


use ditrans::bases::{laguerre_inner, laguerre_norm_sq, meixner_norm_sq, meixner_weight, perturbed_meixner, r_basis, romanovski_poly, romanovski_weight};
use ditrans::complex_special::{abs_gamma_2is_sq_inverse, c64, gamma, gamma_real, gratio, log_gamma, pochhammer, C64, I, ONE, ZERO};
use ditrans::ditransform::{discrete_kernel, discrete_weight, forward, SpectralGrid, TransformParams};
use ditrans::hyp::{hyp1f1, hyp2f1_continue, hyp2f1_value, hyp2f2, hyp3f2_unity, tricomi_psi, HypParams};
use ditrans::quad::{integrate_half_line_try, integrate_line, integrate_tanh_sinh, QuadSpec, SampledFunction};
use ditrans::spectral_check::{kummer_solution, wronskian_sigma, KummerSolutionId, FD_STEP};
use ditrans::Error;
use std::f64::consts::PI;

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn gamma_values() {
    assert!(rel(gamma(c64(5.0, 0.0)).unwrap(), c64(24.0, 0.0)) < 1e-14);
    assert!((gamma_real(-1.5).unwrap() - 4.0 * PI.sqrt() / 3.0).abs() < 1e-14);
    assert!((log_gamma(c64(0.5, 0.0)).unwrap().re - 0.5 * PI.ln()).abs() < 1e-14);
    assert!(log_gamma(ONE).unwrap().norm() < 1e-15);
    assert!(rel(pochhammer(ONE, 5), c64(120.0, 0.0)) < 1e-15);
    let a = c64(0.5, 2.0);
    let via_log = (log_gamma(a + 7.0).unwrap() - log_gamma(a).unwrap()).exp();
    assert!(rel(pochhammer(a, 7), via_log) < 1e-12);
    let big = c64(200.0, 50.0);
    assert!(rel(gratio(&[big], &[big]).unwrap(), ONE) < 1e-14);
    let g = gratio(&[c64(0.5, 2.0), c64(0.5, -2.0)], &[]).unwrap();
    assert!(rel(g, c64(PI / (2.0 * PI).cosh(), 0.0)) < 1e-12);
    let v = abs_gamma_2is_sq_inverse(1.0).unwrap();
    assert!((v / (2.0 * (2.0 * PI).sinh() / PI) - 1.0).abs() < 1e-13);
    let s = 1e-4;
    assert!((abs_gamma_2is_sq_inverse(s).unwrap() / (4.0 * s * s) - 1.0).abs() < 1e-6);
}

#[test]
fn confluent_values() {
    assert!(rel(hyp1f1(ONE, ONE, c64(2.5, 0.0)).unwrap(), c64(2.5f64.exp(), 0.0)) < 1e-14);
    assert_eq!(hyp1f1(c64(0.3, 1.0), c64(1.7, 0.0), ZERO).unwrap(), ONE);

    // Kummer's reflection of Psi
    let (a, c, x) = (c64(0.7, 0.3), c64(0.4, 0.0), 2.5);
    let lhs = tricomi_psi(a, c, x).unwrap();
    let rhs = c64(x, 0.0).powc(ONE - c) * tricomi_psi(a - c + 1.0, 2.0 - c, x).unwrap();
    assert!(rel(lhs, rhs) < 1e-12);

    // Laplace integral at x = 50
    let x = 50.0;
    let f = |t: f64| -> ditrans::Result<C64> {
        let t = c64(t, 0.0);
        Ok((-x * t).exp() * t.powc(a - 1.0) * (t + 1.0).powc(c - a - 1.0))
    };
    let near = integrate_tanh_sinh(f, 0.0, 1.0, 1e-14).unwrap().value;
    let far = integrate_half_line_try(f, 1.0, &QuadSpec::with_tol(1e-13, 1e-300)).unwrap().value;
    let laplace = (near + far) / gamma(a).unwrap();
    let psi = tricomi_psi(a, c, x).unwrap();
    assert!(rel(psi, laplace) < 1e-10, "{psi} vs {laplace}");
    let lead = c64(x, 0.0).powc(-a);
    assert!(rel(psi, lead) < 5e-2);
    assert!(rel(psi, lead * (ONE - a * (a - c + 1.0) / x)) < 1e-3);

    // a = -2 gives a degree-2 polynomial: x^2 - 2(c+1)x + c(c+1)
    let c = 1.3;
    for x in [0.5, 3.0, 7.0] {
        let want = x * x - 2.0 * (c + 1.0) * x + c * (c + 1.0);
        assert!(rel(tricomi_psi(c64(-2.0, 0.0), c64(c, 0.0), x).unwrap(), c64(want, 0.0)) < 1e-11);
    }
}

#[test]
fn gauss_values() {
    let (a, b, c) = (c64(0.3, 0.0), c64(0.2, 0.5), c64(2.1, 0.0));
    let limit = gratio(&[c, c - a - b], &[c - a, c - b]).unwrap();
    let near = hyp2f1_value(a, b, c, c64(1.0 - 1e-6, 0.0)).unwrap();
    assert!(rel(near, limit) < 1e-4);

    // argument on the unit circle, against a Taylor integration of the ODE from z0 = 0.3
    let (a, b, c) = (c64(0.2, 2.0), c64(0.5, 2.4), c64(0.7, -0.4));
    let w = (I * 3.0 + 0.5) / (I * 3.0 - 0.5);
    let direct = hyp2f1_value(a, b, c, w).unwrap();
    let z0 = c64(0.3, 0.0);
    let f0 = hyp2f1_value(a, b, c, z0).unwrap();
    let df0 = a * b / c * hyp2f1_value(a + 1.0, b + 1.0, c + 1.0, z0).unwrap();
    let (ode, _) = hyp2f1_continue(a, b, c, z0, f0, df0, w).unwrap();
    assert!(rel(direct, ode) < 1e-9, "{direct} vs {ode}");
}

#[test]
fn f32_and_f22_values() {
    let (a, b, d, e) = (c64(0.3, 0.2), c64(-0.4, 0.0), c64(1.5, 0.0), c64(2.2, -0.3));
    let t = hyp3f2_unity(&HypParams::new(&[c64(-1.0, 0.0), a, b], &[d, e])).unwrap();
    assert!(rel(t, ONE - a * b / (d * e)) < 1e-14);

    let z = c64(0.4, -1.1);
    let (a2, b2) = (c64(0.3, 0.5), c64(1.8, 0.0));
    let r = hyp2f2(c64(1.2, 0.0), a2, c64(1.2, 0.0), b2, z).unwrap();
    assert!(rel(r, hyp1f1(a2, b2, z).unwrap()) < 1e-14);
    assert_eq!(hyp2f2(a2, a2, b2, b2, ZERO).unwrap(), ONE);
}

#[test]
fn cauchy_integrals() {
    let spec = QuadSpec::with_tol(1e-12, 1e-14);
    let v = integrate_line(|x| c64(1.0 / (0.25 + x * x), 0.0), &spec).unwrap().value;
    assert!((v.re - 2.0 * PI).abs() < 1e-9);
    let v = integrate_line(|x| ONE / (c64(0.5, x).powi(2) * c64(0.5, -x).powi(2)), &spec).unwrap().value;
    assert!((v.re - 4.0 * PI).abs() < 1e-9 && v.im.abs() < 1e-12);
    let v = integrate_line(|x| c64(x / (1.0 + x * x).powi(2), 0.0), &spec).unwrap().value;
    assert!(v.norm() < 1e-12);
    // r^(n) at q = 0 has modulus (1/4 + x^2)^(-1/2)
    for x in [-3.0, 0.0, 0.7] {
        assert!((r_basis(3, 0.2, 0.0, x).norm_sqr() * (0.25 + x * x) - 1.0).abs() < 1e-14);
    }
}

#[test]
fn discrete_eigenfunction_norm() {
    let pr = TransformParams::new(1.7, 0.3).unwrap();
    let spec = QuadSpec::with_tol(1e-12, 1e-16);
    let n0 = integrate_line(|x| c64(discrete_kernel(&pr, x, 0).unwrap().norm_sqr(), 0.0), &spec).unwrap().value.re;
    assert!((n0 * discrete_weight(&pr, 0).unwrap() - 1.0).abs() < 1e-8);
    assert!(matches!(discrete_kernel(&pr, 0.0, 2), Err(Error::Index { index: 2, count: 2 })));

    let pr = TransformParams::new(2.2, 0.5).unwrap();
    let cross = integrate_line(|x| discrete_kernel(&pr, x, 0).unwrap() * discrete_kernel(&pr, x, 1).unwrap().conj(), &spec).unwrap();
    assert!(cross.value.norm() < 1e-8);
}

#[test]
fn zero_function_has_zero_transform() {
    let pr = TransformParams::new(0.3, 0.4).unwrap();
    let (xs, ws) = SampledFunction::sinh_grid(0.2, 6.0);
    let f = SampledFunction::from_fn(|_| ZERO, xs, ws).unwrap();
    let data = forward(&f, &pr, &SpectralGrid::new(3.0, 4).unwrap()).unwrap();
    assert!(data.continuous.phi1.iter().chain(&data.continuous.phi2).all(|v| *v == ZERO));
    assert!(data.discrete.is_empty());
}

#[test]
fn kummer_solution_relations() {
    let pr = TransformParams::new(0.3, 0.4).unwrap();
    let mirrored = TransformParams::new(0.3, -0.4).unwrap();
    let mu = c64(0.25, 0.6);
    for x in [-1.0, 0.3, 1.2] {
        let t1 = kummer_solution(KummerSolutionId::T1, &pr, mu, x).unwrap();
        let s1 = kummer_solution(KummerSolutionId::S1, &mirrored, mu, -x).unwrap();
        assert!(rel(t1, s1) < 1e-12);
    }
    let p = |x: f64| kummer_solution(KummerSolutionId::Vminus, &pr, mu, x);
    assert!(wronskian_sigma(&p, &p, 0.7, FD_STEP).unwrap().norm() < 1e-12);

    // V- decays like x^(-1/2 - mu) at +infinity
    let mu = c64(0.3, 0.0);
    let r = |x: f64| kummer_solution(KummerSolutionId::Vminus, &pr, mu, x).unwrap().norm() * x.powf(0.5 + mu.re);
    assert!((r(50.0) / r(100.0) - 1.0).abs() < 0.05);

    assert!(matches!(kummer_solution(KummerSolutionId::Vminus, &pr, c64(-0.5, 0.0), 1.0), Err(Error::DegenerateMu { .. })));
}

#[test]
fn romanovski_values() {
    let (al, be) = (2.2, 0.5);
    assert_eq!(romanovski_poly(0, al, be, 0.4).unwrap(), ONE);
    let x = 0.4;
    let want = ONE - (2.0 - 2.0 * al) * c64(0.5, x) / c64(1.0 - al, -be);
    assert!(rel(romanovski_poly(1, al, be, x).unwrap(), want) < 1e-14);
    let spec = QuadSpec::with_tol(1e-12, 1e-15);
    let ip = integrate_line(
        |x| romanovski_poly(0, al, be, x).unwrap() * romanovski_poly(1, al, be, x).unwrap().conj() * romanovski_weight(al, be, x),
        &spec,
    )
    .unwrap();
    assert!(ip.value.norm() < 1e-8);
}

#[test]
fn laguerre_and_meixner_values() {
    let (al, be) = (0.2, 0.1);
    let nn = laguerre_inner(0, 0, al, be, 1e-10).unwrap();
    assert!((nn / laguerre_norm_sq(0, al, be).unwrap() - 1.0).abs() < 1e-5);
    assert!(laguerre_inner(0, 1, al, be, 1e-10).unwrap().abs() < 1e-6);

    let (al, be) = (0.2, -0.1);
    let (t, n) = (0.4, 1);
    let mut sum = 0.0;
    for j in -200i64..=200 {
        let w = meixner_weight(al, be, j).unwrap();
        sum += perturbed_meixner(n, al, be, t, j).unwrap().norm_sqr() * w;
    }
    assert!((sum / meixner_norm_sq(n, al, be, t).unwrap() - 1.0).abs() < 1e-9);
}

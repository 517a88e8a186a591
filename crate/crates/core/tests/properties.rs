use ditrans::bases::{cauchy_beta, cauchy_beta_quadrature, r_gram};
use ditrans::complex_special::{c64, cpow, gamma, log_gamma, C64, ONE};
use ditrans::ditransform::TransformParams;
use ditrans::hyp::{hyp2f1_value, hyp3f2_unity, HypParams};
use ditrans::quad::{gram_matrix, inner_product_h, SpectralBasis, VectorFunctionSample};
use ditrans::spectral_check::{resolvent_kernel, ResolventForm};
use proptest::prelude::*;

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

fn away_from_poles(z: C64) -> bool {
    z.re > 0.0 || (z.re - z.re.round()).abs() > 1e-3 || z.im.abs() > 1e-3
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gamma_conjugation(re in -15.0..15.0f64, im in -30.0..30.0f64) {
        let z = c64(re, im);
        prop_assume!(away_from_poles(z));
        let a = gamma(z.conj()).unwrap();
        let b = gamma(z).unwrap().conj();
        prop_assert!(rel(a, b) < 1e-13, "{a} vs {b}");
    }

    #[test]
    fn gamma_recursion(re in -15.0..15.0f64, im in -20.0..20.0f64) {
        let z = c64(re, im);
        prop_assume!(away_from_poles(z) && away_from_poles(z + 1.0));
        let lhs = gamma(z + 1.0).unwrap();
        let rhs = z * gamma(z).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-12, "{lhs} vs {rhs}");
    }

    #[test]
    fn log_gamma_matches_gamma(re in 0.5..30.0f64, im in -10.0..10.0f64) {
        let z = c64(re, im);
        let a = log_gamma(z).unwrap().exp();
        let b = gamma(z).unwrap();
        prop_assert!(rel(a, b) < 1e-12);
    }

    #[test]
    fn euler_transformation(
        a in (-2.0..2.0f64, -1.0..1.0f64),
        b in (-2.0..2.0f64, -1.0..1.0f64),
        c in (0.3..3.0f64, -1.0..1.0f64),
        r in 0.0..0.7f64,
        th in 0.0..std::f64::consts::TAU,
    ) {
        let (a, b, c) = (c64(a.0, a.1), c64(b.0, b.1), c64(c.0, c.1));
        let z = C64::from_polar(r, th);
        let lhs = hyp2f1_value(a, b, c, z).unwrap();
        let rhs = cpow(ONE - z, c - a - b) * hyp2f1_value(c - a, c - b, c, z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * lhs.norm().max(1.0), "{lhs} vs {rhs}");
    }

    #[test]
    fn f32_unity_is_symmetric_in_its_parameters(
        a1 in -0.8..0.5f64, a2 in -0.8..0.5f64, a3 in (-0.8..0.5f64, -1.0..1.0f64),
        b1 in 1.0..3.0f64, b2 in (1.0..3.0f64, -1.0..1.0f64),
    ) {
        let (a3, b2) = (c64(a3.0, a3.1), c64(b2.0, b2.1));
        let nums = [c64(a1, 0.0), c64(a2, 0.0), a3];
        let dens = [c64(b1, 0.0), b2];
        let base = hyp3f2_unity(&HypParams::new(&nums, &dens)).unwrap();
        let perm = hyp3f2_unity(&HypParams::new(&[nums[2], nums[0], nums[1]], &[dens[1], dens[0]])).unwrap();
        prop_assert!((base - perm).norm() <= 1e-10 * base.norm().max(1.0), "{base} vs {perm}");
    }

    #[test]
    fn cauchy_beta_closed_form_matches_quadrature(
        s in (0.6..2.5f64, -1.0..1.0f64),
        t in (0.6..2.5f64, -1.0..1.0f64),
    ) {
        let (s, t) = (c64(s.0, s.1), c64(t.0, t.1));
        let exact = cauchy_beta(s, t).unwrap();
        let quad = cauchy_beta_quadrature(s, t, 1e-11).unwrap();
        prop_assert!(rel(quad, exact) < 1e-7, "{quad} vs {exact}");
    }

    #[test]
    fn r_gram_is_hermitian(p in -1.0..1.0f64, q in -1.0..1.0f64) {
        let g = r_gram(&[-2, -1, 0, 1, 2], p, q);
        for i in 0..5 {
            for j in 0..5 {
                prop_assert!((g[i][j] - g[j][i].conj()).norm() < 1e-14);
            }
        }
    }
}

fn random_sample(vals: &[(f64, f64, f64, f64)], basis: SpectralBasis) -> VectorFunctionSample {
    let n = vals.len();
    let s: Vec<f64> = (0..n).map(|i| 0.1 + 0.4 * i as f64).collect();
    VectorFunctionSample::new(
        s,
        vals.iter().map(|v| c64(v.0, v.1)).collect(),
        vals.iter().map(|v| c64(v.2, v.3)).collect(),
        vec![0.4; n],
        basis,
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn h_inner_product_is_hermitian_and_positive(
        alpha in 0.05..0.45f64, beta in -1.0..1.0f64,
        u in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64), 6),
        v in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64), 6),
        kernel in any::<bool>(),
    ) {
        let pr = TransformParams::new(alpha, beta).unwrap();
        let basis = if kernel { SpectralBasis::Kernel } else { SpectralBasis::Jost };
        let (u, v) = (random_sample(&u, basis), random_sample(&v, basis));
        let uv = inner_product_h(&u, &v, &pr).unwrap();
        let vu = inner_product_h(&v, &u, &pr).unwrap();
        prop_assert!((uv - vu.conj()).norm() <= 1e-12 * uv.norm().max(1e-3));
        let uu = inner_product_h(&u, &u, &pr).unwrap();
        prop_assert!(uu.re >= 0.0 && uu.im.abs() <= 1e-12 * uu.re.max(1e-3));
        let g = gram_matrix(&[u, v], |a, b| inner_product_h(a, b, &pr)).unwrap();
        prop_assert!((g[0][1] - g[1][0].conj()).norm() <= 1e-12 * g[0][1].norm().max(1e-3));
    }

    #[test]
    fn resolvent_is_symmetric(
        x in -2.0..2.0f64, y in -2.0..2.0f64,
        lre in -3.0..3.0f64, lim in 0.5..3.0f64,
    ) {
        let pr = TransformParams::new(0.3, 0.4).unwrap();
        let lambda = c64(lre, lim);
        let kxy = resolvent_kernel(x, y, lambda, ResolventForm::ST, &pr).unwrap();
        let kyx = resolvent_kernel(y, x, lambda, ResolventForm::ST, &pr).unwrap();
        prop_assert!(rel(kxy, kyx) < 1e-9, "{kxy} vs {kyx}");
    }
}

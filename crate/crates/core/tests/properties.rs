use proptest::prelude::*;
use std::f64::consts::PI;
use wavekit::kernels::*;
use wavekit::quad::*;
use wavekit::specfun::*;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(64)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn series_and_poisson_agree(twice in 1u32..=6, x in 0.05f64..30.0) {
        let nu = Order::from_twice(twice);
        let s = bessel_j(nu, x).unwrap();
        let p = bessel_j_poisson(nu, x, POISSON_DEFAULT_POINTS).unwrap();
        prop_assert!((s - p).abs() <= 1e-9, "nu = {nu}, x = {x}: {s} vs {p}");
    }

    #[test]
    fn three_term_recurrence(twice in 2u32..=8, x in 0.1f64..30.0) {
        let nu = Order::from_twice(twice);
        let below = bessel_j(nu.lowered().unwrap(), x).unwrap();
        let above = bessel_j(nu.raised(), x).unwrap();
        let mid = bessel_j(nu, x).unwrap();
        prop_assert!((below + above - 2.0 * nu.value() / x * mid).abs() < 1e-11);
    }

    #[test]
    fn half_order_closed_form(x in 0.01f64..45.0) {
        let closed = bessel_j_half(x).unwrap();
        let series = bessel_j(Order::HALF, x).unwrap();
        prop_assert!((closed - series).abs() <= 1e-10);
    }

    #[test]
    fn legendre_is_exact_for_polynomials(
        coeffs in prop::collection::vec(-2.0f64..2.0, 1..12),
        lo in -3.0f64..0.0,
        width in 0.1f64..4.0,
    ) {
        let hi = lo + width;
        let rule = gauss_legendre(6, lo, hi).unwrap();
        let poly = |x: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let antiderivative = |x: f64| {
            coeffs.iter().enumerate().map(|(k, c)| c * x.powi(k as i32 + 1) / (k + 1) as f64).sum::<f64>()
        };
        let exact = antiderivative(hi) - antiderivative(lo);
        prop_assert!((rule.integrate(poly) - exact).abs() <= 1e-11 * exact.abs().max(1.0));
    }

    #[test]
    fn sphere_rule_sees_any_direction(
        n in 3usize..=5,
        dir in prop::collection::vec(-1.0f64..1.0, 5),
        k in 0.1f64..4.0,
    ) {
        // ∫_{S^{n-1}} cos(x·ξ) dσ = ω_n Γ(n/2) (2/|ξ|)^μ J_μ(|ξ|), μ = (n-2)/2
        let d = &dir[..n];
        let norm = d.iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assume!(norm > 0.1);
        let xi: Vec<f64> = d.iter().map(|v| k * v / norm).collect();
        let rule = sphere_rule(n, 20).unwrap();
        let numeric = rule.integrate(|x| x.iter().zip(&xi).map(|(a, b)| a * b).sum::<f64>().cos());
        let mu = Order::from_twice(n as u32 - 2);
        let exact = unit_sphere_area(n)
            * gamma_half(n as u32).unwrap()
            * (2.0 / k).powf(mu.value())
            * bessel_j(mu, k).unwrap();
        prop_assert!((numeric - exact).abs() < 1e-9 * unit_sphere_area(n));
    }

    #[test]
    fn sine_kernel_scales(r in 0.01f64..5.0, xi in 0.0f64..10.0, lambda in 0.1f64..10.0) {
        let lhs = sine_kernel(lambda * r, xi / lambda);
        let rhs = lambda * sine_kernel(r, xi);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
    }

    #[test]
    fn odd_ladder_reproduces_the_propagator(
        k in 0usize..3,
        r in 0.5f64..3.0,
        xi in 0.1f64..5.0,
    ) {
        let n = 3 + 2 * k;
        let q = KernelQuery::along_diagonal(n, r, xi).unwrap();
        let v = odd_representation(&q, LadderMode::Analytic, &KernelQuadrature::default()).unwrap();
        prop_assert!((v - sine_kernel(r, xi)).abs() < 1e-6);
    }

    #[test]
    fn even_ladder_reproduces_the_propagator(
        k in 0usize..3,
        r in 0.5f64..3.0,
        xi in 0.1f64..5.0,
    ) {
        let n = 2 + 2 * k;
        let q = KernelQuery::along_diagonal(n, r, xi).unwrap();
        let v = even_representation(&q, LadderMode::Analytic, &KernelQuadrature::default()).unwrap();
        prop_assert!((v - sine_kernel(r, xi)).abs() < 1e-6);
    }

    #[test]
    fn lemma_vanishes_outside_and_has_fixed_sign_inside(
        k in 0u32..=2,
        t in 0.1f64..3.0,
        gap in 0.01f64..2.0,
    ) {
        let nu = Order::integer(k);
        prop_assert_eq!(lemma_closed_form(nu, t, t + gap).unwrap(), 0.0);
        let inside = lemma_closed_form(nu, t + gap, t).unwrap();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!(sign * inside > 0.0);
    }
}

#[test]
fn unit_sphere_areas_follow_the_recursion() {
    // ω_{n+2} = 2π ω_n / n
    for n in 2..=5 {
        let lhs = unit_sphere_area(n + 2);
        let rhs = 2.0 * PI * unit_sphere_area(n) / n as f64;
        assert!((lhs - rhs).abs() < 1e-12 * lhs);
    }
}

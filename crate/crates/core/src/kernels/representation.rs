//! Sphere and ball averages of plane waves, and the odd/even dimensional
//! representations of `sin(R|ξ|)/|ξ|` as radial derivatives of them.

use std::f64::consts::PI;

use super::constants::constants;
use super::ladder::{radial_derivative_richardson, BesselLadder};
use super::{KernelQuadrature, KernelQuery, LadderMode};
use crate::error::{domain, Error, Result};
use crate::quad::{ball_singular_rule, gauss_legendre, integrate_singular_ball, unit_sphere_area, SphereRule};
use crate::specfun::{bessel_j, gamma_half, Order};

/// How [`sphere_mean_plane_wave`] evaluates the surface integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphereMeanMethod {
    /// Product quadrature over `∂B(0, R)` in `ℝⁿ`.
    Quadrature,
    /// The one-dimensional reduction
    /// `R^{n-2} ∫_{-1}^{1} e^{iR|ξ|s} (1-s²)^{(n-3)/2} ds`, `n ≥ 3`.
    Reduction,
    /// Closed form in `J_{(n-2)/2}`.
    Bessel,
}

/// Relative step of the finite-difference ladder.
const LADDER_STEP: f64 = 1e-3;

/// `(1/(ω_n R)) ∫_{∂B(0,R)} e^{-ix·ξ} dσ(x)` as a function of `R` by
/// direct quadrature, with the rule built once and aligned to `ξ`.
pub struct SphereMeanQuadrature {
    rule: SphereRule,
    xi: Vec<f64>,
    omega_n: f64,
}

impl SphereMeanQuadrature {
    pub fn new(xi: &[f64], quad: &KernelQuadrature) -> Result<Self> {
        let n = xi.len();
        let rule = SphereRule::product(n, quad.leading, quad.others, quad.azimuth)?.aligned_to(xi)?;
        Ok(Self {
            rule,
            xi: xi.to_vec(),
            omega_n: unit_sphere_area(n),
        })
    }

    /// Real and imaginary parts of the mean at radius `r`.
    pub fn eval_complex(&self, r: f64) -> (f64, f64) {
        let n = self.xi.len() as i32;
        let (mut re, mut im) = (0.0, 0.0);
        for (x, w) in self.rule.iter() {
            let phase = r * x.iter().zip(&self.xi).map(|(a, b)| a * b).sum::<f64>();
            re += w * phase.cos();
            im -= w * phase.sin();
        }
        let scale = r.powi(n - 2) / self.omega_n;
        (scale * re, scale * im)
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.eval_complex(r).0
    }
}

/// Closed form `Γ(n/2) 2^μ R^{n-2} z^{-μ} J_μ(z)`, `μ = (n-2)/2`, `z = R|ξ|`,
/// written as a [`BesselLadder`] in `R`.
pub fn sphere_mean_ladder(n: usize) -> BesselLadder {
    let mu = Order::from_twice(n as u32 - 2);
    BesselLadder {
        coef: gamma_half(n as u32).expect("n ≥ 2") * 2f64.powf(mu.value()),
        xi_power: -(n as i32 - 2),
        order: mu,
    }
}

/// Closed form of the normalised singular ball average,
/// `n Γ(n/2) 2^μ √(π/2) |ξ|^{-(n-1)} z^{(n-1)/2} J_{(n-1)/2}(z)`.
pub fn ball_mean_ladder(n: usize) -> BesselLadder {
    let mu = (n as f64 - 2.0) / 2.0;
    BesselLadder {
        coef: n as f64 * gamma_half(n as u32).expect("n ≥ 2") * 2f64.powf(mu) * (PI / 2.0).sqrt(),
        xi_power: -(n as i32 - 1),
        order: Order::from_twice(n as u32 - 1),
    }
}

pub fn sphere_mean_plane_wave(q: &KernelQuery, method: SphereMeanMethod, quad: &KernelQuadrature) -> Result<f64> {
    const OP: &str = "sphere_mean_plane_wave";
    let n = q.n();
    let r = q.r();
    let xi = q.xi_norm();
    match method {
        SphereMeanMethod::Quadrature => Ok(SphereMeanQuadrature::new(q.xi(), quad)?.eval(r)),
        SphereMeanMethod::Reduction => {
            if n < 3 {
                return domain(OP, "the one-dimensional reduction needs n ≥ 3");
            }
            // s = cos θ: ∫_0^π cos(z cos θ) sin^{n-2}θ dθ
            let z = r * xi;
            let rule = gauss_legendre(quad.leading, 0.0, PI)?;
            let integral = rule.integrate(|t| (z * t.cos()).cos() * t.sin().powi(n as i32 - 2));
            let ratio = unit_sphere_area(n - 1) / unit_sphere_area(n);
            Ok(ratio * r.powi(n as i32 - 2) * integral)
        }
        SphereMeanMethod::Bessel => {
            if xi == 0.0 {
                return Ok(r.powi(n as i32 - 2));
            }
            let ladder = sphere_mean_ladder(n);
            let z = r * xi;
            let mu = ladder.order.value();
            Ok(ladder.coef * r.powi(n as i32 - 2) * z.powf(-mu) * bessel_j(ladder.order, z)?)
        }
    }
}

/// Right-hand side of the odd-dimensional representation:
/// `c_n (1/R ∂/∂R)^{(n-3)/2}` of the sphere mean, for `n ∈ {3, 5, 7}`.
pub fn odd_representation(q: &KernelQuery, mode: LadderMode, quad: &KernelQuadrature) -> Result<f64> {
    const OP: &str = "odd_representation";
    let n = q.n();
    if n.is_multiple_of(2) {
        return domain(OP, format!("dimension {n} is even"));
    }
    let xi = q.xi_norm();
    if !(xi > 0.0) {
        return domain(OP, "frequency must be non-zero");
    }
    let c_n = constants(n)?.c_n.expect("odd n");
    let steps = (n as u32 - 3) / 2;
    match mode {
        LadderMode::Analytic => {
            let bottom = sphere_mean_ladder(n).step_down_by(steps).expect("(n-2)/2 ≥ (n-3)/2");
            Ok(c_n * bottom.eval(q.r(), xi)?)
        }
        LadderMode::FiniteDifference => {
            let mean = SphereMeanQuadrature::new(q.xi(), quad)?;
            let g = |r: f64| Ok(mean.eval(r));
            let h = LADDER_STEP * q.r();
            Ok(c_n * radial_derivative_richardson(&g, q.r(), steps, h)?)
        }
    }
}

/// `(1/v_n) ∫_{B(0,R)} e^{-ix·ξ} / √(R² - |x|²) dx` by quadrature.
pub struct BallMeanQuadrature {
    sphere: SphereRule,
    xi: Vec<f64>,
    v_n: f64,
    radial_points: usize,
}

impl BallMeanQuadrature {
    pub fn new(xi: &[f64], quad: &KernelQuadrature) -> Result<Self> {
        let n = xi.len();
        let sphere = SphereRule::product(n, quad.leading, quad.others, quad.azimuth)?.aligned_to(xi)?;
        Ok(Self {
            sphere,
            xi: xi.to_vec(),
            v_n: unit_sphere_area(n) / n as f64,
            radial_points: quad.radial,
        })
    }

    pub fn eval_complex(&self, r: f64) -> Result<(f64, f64)> {
        let n = self.xi.len();
        let radial = ball_singular_rule(n, r, self.radial_points)?;
        let origin = vec![0.0; n];
        let phase = |x: &[f64]| x.iter().zip(&self.xi).map(|(a, b)| a * b).sum::<f64>();
        let re = integrate_singular_ball(&self.sphere, &radial, &origin, |x| phase(x).cos());
        let im = -integrate_singular_ball(&self.sphere, &radial, &origin, |x| phase(x).sin());
        Ok((re / self.v_n, im / self.v_n))
    }

    /// Real part; fails if the imaginary part is not negligible.
    pub fn eval(&self, r: f64) -> Result<f64> {
        let (re, im) = self.eval_complex(r)?;
        let tolerance = 1e-9 * re.abs().max(1.0);
        if im.abs() > tolerance {
            return Err(Error::Validation {
                op: "ball_plane_wave",
                discrepancy: im.abs(),
                tolerance,
            });
        }
        Ok(re)
    }
}

pub fn ball_plane_wave(q: &KernelQuery, quad: &KernelQuadrature) -> Result<f64> {
    let n = q.n();
    if n % 2 == 1 || n > 6 {
        return domain("ball_plane_wave", format!("dimension {n} not in {{2, 4, 6}}"));
    }
    BallMeanQuadrature::new(q.xi(), quad)?.eval(q.r())
}

/// Right-hand side of the even-dimensional representation:
/// `d_n (1/R ∂/∂R)^{(n-2)/2}` of the singular ball average, `n ∈ {2, 4, 6}`.
pub fn even_representation(q: &KernelQuery, mode: LadderMode, quad: &KernelQuadrature) -> Result<f64> {
    const OP: &str = "even_representation";
    let n = q.n();
    if n % 2 == 1 || n > 6 {
        return domain(OP, format!("dimension {n} not in {{2, 4, 6}}"));
    }
    let xi = q.xi_norm();
    if !(xi > 0.0) {
        return domain(OP, "frequency must be non-zero");
    }
    let d_n = constants(n)?.d_n.expect("even n");
    let steps = (n as u32 - 2) / 2;
    match mode {
        LadderMode::Analytic => {
            let bottom = ball_mean_ladder(n).step_down_by(steps).expect("(n-1)/2 ≥ (n-2)/2");
            Ok(d_n * bottom.eval(q.r(), xi)?)
        }
        LadderMode::FiniteDifference => {
            let mean = BallMeanQuadrature::new(q.xi(), quad)?;
            let g = |r: f64| mean.eval(r);
            let h = LADDER_STEP * q.r();
            Ok(d_n * radial_derivative_richardson(&g, q.r(), steps, h)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::sine_kernel;

    fn query(n: usize, r: f64, xi_norm: f64) -> KernelQuery {
        KernelQuery::along_diagonal(n, r, xi_norm).unwrap()
    }

    fn all_methods(q: &KernelQuery) -> [f64; 3] {
        let quad = KernelQuadrature::default();
        [
            SphereMeanMethod::Quadrature,
            SphereMeanMethod::Reduction,
            SphereMeanMethod::Bessel,
        ]
        .map(|m| sphere_mean_plane_wave(q, m, &quad).unwrap())
    }

    #[test]
    fn plane_wave_mean_at_zero_frequency() {
        for n in 3..=7 {
            let q = query(n, 1.3, 0.0);
            let v = all_methods(&q);
            let expected = 1.3f64.powi(n as i32 - 2);
            for x in v {
                assert!((x - expected).abs() < 1e-12, "n = {n}: {v:?}");
            }
        }
    }

    #[test]
    fn three_dimensional_mean_is_the_sine_kernel() {
        let v = all_methods(&query(3, 1.0, PI));
        assert!(v.iter().all(|x| x.abs() < 1e-8), "{v:?}");
        let v = all_methods(&query(3, 2.0, 1.0));
        for x in v {
            assert!((x - 2f64.sin()).abs() < 1e-7, "{v:?}");
        }
    }

    #[test]
    fn routes_agree_pairwise() {
        for n in 3..=7 {
            for &(r, xi) in &[(0.5, 0.1), (1.2, 2.7), (3.0, 5.0)] {
                let v = all_methods(&query(n, r, xi));
                for i in 0..3 {
                    for j in 0..i {
                        assert!((v[i] - v[j]).abs() < 1e-7, "n = {n}, R = {r}, xi = {xi}: {v:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn odd_representation_examples() {
        let quad = KernelQuadrature::default();
        let a = odd_representation(&query(3, 1.0, 1.0), LadderMode::Analytic, &quad).unwrap();
        assert!((a - 1f64.sin()).abs() < 1e-7);
        let a = odd_representation(&query(5, 1.0, 2.0), LadderMode::Analytic, &quad).unwrap();
        assert!((a - 2f64.sin() / 2.0).abs() < 1e-7);
        let q = query(7, 0.8, 3.0);
        let oracle = sine_kernel(0.8, 3.0);
        let a = odd_representation(&q, LadderMode::Analytic, &quad).unwrap();
        let f = odd_representation(&q, LadderMode::FiniteDifference, &quad).unwrap();
        assert!((a - oracle).abs() < 1e-6);
        assert!((f - oracle).abs() < 1e-3);
        assert!(odd_representation(&query(4, 1.0, 1.0), LadderMode::Analytic, &quad).is_err());
    }

    #[test]
    fn odd_constant_is_pinned_by_the_identity() {
        // c_n recovered as sine_kernel / (ladder without constant)
        let quad = KernelQuadrature::default();
        for n in [3, 5, 7] {
            let q = query(n, 1.1, 0.9);
            let raw = odd_representation(&q, LadderMode::Analytic, &quad).unwrap() / constants(n).unwrap().c_n.unwrap();
            let pinned = sine_kernel(1.1, 0.9) / raw;
            let product: f64 = (1..=n - 2).rev().step_by(2).map(|k| k as f64).product();
            assert!((pinned - 1.0 / product).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn ball_plane_wave_examples() {
        let quad = KernelQuadrature::default();
        let b = ball_plane_wave(&query(2, 1.0, 0.0), &quad).unwrap();
        assert!((b - 2.0).abs() < 1e-12);
        let b = ball_plane_wave(&query(2, 1.0, PI), &quad).unwrap();
        assert!(b.abs() < 1e-6);
        assert!(ball_plane_wave(&query(3, 1.0, 1.0), &quad).is_err());
    }

    #[test]
    fn ball_closed_form_matches_quadrature() {
        let quad = KernelQuadrature::default();
        for n in [2, 4, 6] {
            for &(r, xi) in &[(0.5, 0.3), (1.0, 1.0), (2.5, 4.0)] {
                let q = query(n, r, xi);
                let numeric = ball_plane_wave(&q, &quad).unwrap();
                let closed = ball_mean_ladder(n).eval(r, xi).unwrap();
                assert!((numeric - closed).abs() < 1e-8 * closed.abs().max(1.0), "n = {n}");
            }
        }
    }

    #[test]
    fn even_representation_examples() {
        let quad = KernelQuadrature::default();
        let fd = LadderMode::FiniteDifference;
        let v = even_representation(&query(2, 1.0, 1.0), fd, &quad).unwrap();
        assert!((v - 1f64.sin()).abs() < 1e-6);
        let v = even_representation(&query(4, 2.0, 1.0), fd, &quad).unwrap();
        assert!((v - 2f64.sin()).abs() < 1e-4);
        let v = even_representation(&query(6, 1.0, 2.0), fd, &quad).unwrap();
        assert!((v - 2f64.sin() / 2.0).abs() < 1e-3);
        for n in [2, 4, 6] {
            let v = even_representation(&query(n, 1.3, 2.2), LadderMode::Analytic, &quad).unwrap();
            assert!((v - sine_kernel(1.3, 2.2)).abs() < 1e-6);
        }
        assert!(even_representation(&query(5, 1.0, 1.0), fd, &quad).is_err());
    }

    #[test]
    fn four_dimensional_single_step() {
        let quad = KernelQuadrature::default();
        let xi = [0.5; 4];
        let mean = BallMeanQuadrature::new(&xi, &quad).unwrap();
        let g = |r: f64| mean.eval(r);
        let stepped = crate::kernels::radial_derivative_power(&g, 1.0, 1, 1e-3).unwrap();
        assert!((stepped / 8.0 - sine_kernel(1.0, 1.0)).abs() < 1e-4);
    }

    #[test]
    fn representations_inherit_scale_covariance() {
        let quad = KernelQuadrature::default();
        let lambda = 2.0;
        for (n, mode) in [(5, LadderMode::FiniteDifference), (4, LadderMode::FiniteDifference)] {
            let base = query(n, 0.9, 1.6);
            let scaled = query(n, lambda * 0.9, 1.6 / lambda);
            let eval = |q: &KernelQuery| {
                if n % 2 == 1 {
                    odd_representation(q, mode, &quad).unwrap()
                } else {
                    even_representation(q, mode, &quad).unwrap()
                }
            };
            assert!((eval(&scaled) - lambda * eval(&base)).abs() < 1e-4, "n = {n}");
        }
    }
}

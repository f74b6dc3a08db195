use std::f64::consts::PI;

use super::data::CauchyData;
use crate::error::{domain, Result};
use crate::quad::{ball_singular_rule, integrate_singular_ball, sphere_rule, unit_sphere_area, Rule1D, SphereRule};

/// Step of the time difference, relative to `t`.
const TIME_STEP: f64 = 1e-4;

/// `∂_t` of `f` at `t`: central differences at `h` and `h/2` combined by
/// one Richardson step.
fn time_derivative(f: impl Fn(f64) -> f64, t: f64) -> f64 {
    let h = TIME_STEP * t;
    let central = |h: f64| (f(t + h) - f(t - h)) / (2.0 * h);
    (4.0 * central(h / 2.0) - central(h)) / 3.0
}

fn check_point(op: &'static str, data: &CauchyData, x: &[f64], t: f64, n: usize) -> Result<()> {
    if data.dim() != n || x.len() != n {
        return domain(op, format!("needs {n}-dimensional data and point"));
    }
    if !(t > 0.0 && t.is_finite()) {
        return domain(op, format!("time {t} must be positive"));
    }
    Ok(())
}

/// Kirchhoff's formula `u = ∂_t(t M_t φ) + t M_t ψ` in `ℝ³`, with `M_t` the
/// mean over `∂B(x, t)` computed by `rule`.
pub fn solve_kirchhoff_3d(data: &CauchyData, x: &[f64], t: f64, rule: &SphereRule) -> Result<f64> {
    const OP: &str = "solve_kirchhoff_3d";
    check_point(OP, data, x, t, 3)?;
    if rule.dim() != 3 || rule.is_empty() {
        return domain(OP, "needs a non-empty rule on the 2-sphere");
    }
    let area = unit_sphere_area(3);
    let mean = |g: &dyn Fn(&[f64]) -> f64, tau: f64| {
        let mut y = [0.0; 3];
        rule.integrate(|w| {
            for k in 0..3 {
                y[k] = x[k] + tau * w[k];
            }
            g(&y)
        }) / area
    };
    let phi = |y: &[f64]| data.phi(y);
    let psi = |y: &[f64]| data.psi(y);
    let displacement = time_derivative(|tau| tau * mean(&phi, tau), t);
    Ok(displacement + t * mean(&psi, t))
}

/// Quadrature for `(1/2π) ∫_{B(0,1)} g(z) / √(1 - |z|²) dz`.
struct UnitDiscRule {
    circle: SphereRule,
    radial: Rule1D,
}

impl UnitDiscRule {
    fn new(resolution: usize) -> Result<Self> {
        Ok(Self {
            circle: sphere_rule(2, resolution)?,
            radial: ball_singular_rule(2, 1.0, resolution)?,
        })
    }

    /// `N_τ g(x) = (1/(2πτ)) ∫_{B(x,τ)} g(y)/√(τ² - |y-x|²) dy`, rescaled to the unit disc.
    fn average(&self, g: &dyn Fn(&[f64]) -> f64, x: &[f64], tau: f64) -> f64 {
        let origin = [0.0; 2];
        integrate_singular_ball(&self.circle, &self.radial, &origin, |z| {
            g(&[x[0] + tau * z[0], x[1] + tau * z[1]])
        }) / (2.0 * PI)
    }
}

/// Poisson's formula `u = ∂_t(t N_t φ) + t N_t ψ` in `ℝ²`, where `N_t`
/// is the singular disc average normalised so that `N_t 1 = 1`.
pub fn solve_poisson_2d(data: &CauchyData, x: &[f64], t: f64, resolution: usize) -> Result<f64> {
    const OP: &str = "solve_poisson_2d";
    check_point(OP, data, x, t, 2)?;
    let rule = UnitDiscRule::new(resolution)?;
    let phi = |y: &[f64]| data.phi(y);
    let psi = |y: &[f64]| data.psi(y);
    let displacement = time_derivative(|tau| tau * rule.average(&phi, x, tau), t);
    Ok(displacement + t * rule.average(&psi, x, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::Bump;

    fn broad_velocity(n: usize) -> CauchyData {
        CauchyData::new(n, vec![], vec![Bump::gaussian(1.0, vec![0.0; n], 1e4)]).unwrap()
    }

    #[test]
    fn unit_velocity_gives_t() {
        let rule = sphere_rule(3, 8).unwrap();
        for t in [0.3, 1.0, 2.5] {
            let k = solve_kirchhoff_3d(&broad_velocity(3), &[0.2, 0.0, -0.1], t, &rule).unwrap();
            assert!((k - t).abs() < 1e-4);
            let p = solve_poisson_2d(&broad_velocity(2), &[0.2, 0.1], t, 16).unwrap();
            assert!((p - t).abs() < 1e-4);
        }
    }

    #[test]
    fn derivative_of_smooth_function() {
        let d = time_derivative(|t| t.sin() * t, 1.3);
        assert!((d - (1.3f64.sin() + 1.3 * 1.3f64.cos())).abs() < 1e-9);
    }

    #[test]
    fn far_data_is_not_seen() {
        let data3 = CauchyData::new(3, vec![Bump::gaussian(1.0, vec![10.0, 0.0, 0.0], 0.3)], vec![]).unwrap();
        let rule = sphere_rule(3, 16).unwrap();
        assert!(solve_kirchhoff_3d(&data3, &[0.0; 3], 2.0, &rule).unwrap().abs() < 1e-8);
        let data2 = CauchyData::new(2, vec![], vec![Bump::gaussian(1.0, vec![0.0, 10.0], 0.3)]).unwrap();
        assert!(solve_poisson_2d(&data2, &[0.0; 2], 2.0, 32).unwrap().abs() < 1e-8);
    }

    #[test]
    fn rejects_bad_arguments() {
        let rule = sphere_rule(3, 4).unwrap();
        let data = broad_velocity(3);
        assert!(solve_kirchhoff_3d(&data, &[0.0; 3], 0.0, &rule).is_err());
        assert!(solve_kirchhoff_3d(&data, &[0.0; 2], 1.0, &rule).is_err());
        assert!(solve_poisson_2d(&data, &[0.0; 3], 1.0, 16).is_err());
        assert!(solve_kirchhoff_3d(&data, &[0.0; 3], 1.0, &sphere_rule(2, 4).unwrap()).is_err());
    }
}

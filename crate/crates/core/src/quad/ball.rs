use std::f64::consts::FRAC_PI_2;

use super::gauss::{gauss_legendre, Rule1D};
use super::sphere::SphereRule;
use crate::error::{domain, Result};

/// Radial rule for `∫_0^R f(r) r^{n-1} / √(R² - r²) dr`.
///
/// With `r = R sin θ` the weight becomes `R^{n-1} sin^{n-1}θ dθ` on
/// `[0, π/2]`, which is integrated by Gauss-Legendre in `θ`. The returned
/// weights already include the `r^{n-1}` Jacobian and the singular factor,
/// so `Σ wᵢ f(rᵢ)` approximates the integral directly.
pub fn ball_singular_rule(n: usize, radius: f64, resolution: usize) -> Result<Rule1D> {
    const OP: &str = "ball_singular_rule";
    if !(radius > 0.0) {
        return domain(OP, format!("radius {radius} must be positive"));
    }
    if n < 1 {
        return domain(OP, "dimension must be positive");
    }
    let theta = gauss_legendre(resolution, 0.0, FRAC_PI_2)?;
    let power = (n - 1) as i32;
    let nodes = theta.nodes.iter().map(|t| radius * t.sin()).collect();
    let weights = theta.iter().map(|(t, w)| w * (radius * t.sin()).powi(power)).collect();
    Ok(Rule1D {
        nodes,
        weights,
        interval: (0.0, radius),
    })
}

/// `∫_{B(center, R)} f(y) / √(R² - |y - center|²) dy` as a product of a
/// radial [`ball_singular_rule`] and a sphere rule of matching dimension.
pub fn integrate_singular_ball(
    sphere: &SphereRule,
    radial: &Rule1D,
    center: &[f64],
    mut f: impl FnMut(&[f64]) -> f64,
) -> f64 {
    let n = sphere.dim();
    debug_assert_eq!(center.len(), n);
    let mut y = vec![0.0; n];
    let mut total = 0.0;
    for (omega, ws) in sphere.iter() {
        let mut shell = 0.0;
        for (r, wr) in radial.iter() {
            for k in 0..n {
                y[k] = center[k] + r * omega[k];
            }
            shell += wr * f(&y);
        }
        total += ws * shell;
    }
    total
}

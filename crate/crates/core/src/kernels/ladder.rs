//! The operator `(1/R ∂/∂R)` and its powers.

use crate::error::{domain, Result};
use crate::specfun::{bessel_j, bessel_j_half, Order};

/// `(1/R ∂/∂R)^j g` at `R`, by `j` nested central differences of step `h`.
pub fn radial_derivative_power(g: &dyn Fn(f64) -> Result<f64>, r: f64, j: u32, h: f64) -> Result<f64> {
    const OP: &str = "radial_derivative_power";
    if !(h > 0.0) {
        return domain(OP, format!("step {h} must be positive"));
    }
    if !(r > f64::from(j) * h) {
        return domain(OP, format!("need R > j·h, got R = {r}, j = {j}, h = {h}"));
    }
    nested(g, r, j, h)
}

fn nested(g: &dyn Fn(f64) -> Result<f64>, r: f64, j: u32, h: f64) -> Result<f64> {
    if j == 0 {
        return g(r);
    }
    let plus = nested(g, r + h, j - 1, h)?;
    let minus = nested(g, r - h, j - 1, h)?;
    Ok((plus - minus) / (2.0 * h * r))
}

/// [`radial_derivative_power`] at steps `h` and `h/2` combined to cancel the
/// leading `O(h²)` error.
pub fn radial_derivative_richardson(g: &dyn Fn(f64) -> Result<f64>, r: f64, j: u32, h: f64) -> Result<f64> {
    if j == 0 {
        return radial_derivative_power(g, r, 0, h);
    }
    let coarse = radial_derivative_power(g, r, j, h)?;
    let fine = radial_derivative_power(g, r, j, h / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// A function of `R` of the form `coef · |ξ|^{xi_power} · z^μ J_μ(z)`,
/// `z = R|ξ|`.
///
/// Since `d/dz (z^μ J_μ) = z^μ J_{μ-1}`, applying `(1/R ∂/∂R)` yields the
/// same form with `μ → μ - 1` and `xi_power → xi_power + 2`; the ladder is
/// walked exactly, without differencing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselLadder {
    pub coef: f64,
    pub xi_power: i32,
    pub order: Order,
}

impl BesselLadder {
    /// `(1/R ∂/∂R)` of `self`, or `None` once the order would drop below 0.
    pub fn step_down(self) -> Option<Self> {
        Some(Self {
            coef: self.coef,
            xi_power: self.xi_power + 2,
            order: self.order.lowered()?,
        })
    }

    pub fn step_down_by(self, steps: u32) -> Option<Self> {
        (0..steps).try_fold(self, |acc, _| acc.step_down())
    }

    /// Value at radius `r` and frequency magnitude `xi > 0`.
    ///
    /// Order 1/2 uses the elementary form of `J_{1/2}`; other orders use the
    /// power series.
    pub fn eval(&self, r: f64, xi: f64) -> Result<f64> {
        let z = r * xi;
        let mu = self.order.value();
        let bessel_part = if self.order == Order::HALF {
            z.sqrt() * bessel_j_half(z)?
        } else {
            z.powf(mu) * bessel_j(self.order, z)?
        };
        Ok(self.coef * xi.powi(self.xi_power) * bessel_part)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_steps_is_identity() {
        let g = |r: f64| Ok(r.exp());
        assert_eq!(radial_derivative_power(&g, 1.3, 0, 1e-3).unwrap(), 1.3f64.exp());
    }

    #[test]
    fn quadratic_is_exact() {
        let g = |r: f64| Ok(r * r);
        let v = radial_derivative_power(&g, 1.7, 1, 1e-3).unwrap();
        assert!((v - 2.0).abs() < 1e-10);
    }

    #[test]
    fn finite_differences_follow_the_analytic_step() {
        // g(R) = z^{3/2} J_{3/2}(z), z = aR; one step gives a² z^{1/2} J_{1/2}(z)
        let a = 1.7;
        let ladder = BesselLadder {
            coef: 1.0,
            xi_power: 0,
            order: Order::from_twice(3),
        };
        let g = |r: f64| ladder.eval(r, a);
        let stepped = ladder.step_down().unwrap();
        for r in [0.6, 1.4, 2.9] {
            let fd = radial_derivative_power(&g, r, 1, 1e-3).unwrap();
            let exact = stepped.eval(r, a).unwrap();
            assert!((fd - exact).abs() < 1e-5, "R = {r}: {fd} vs {exact}");
        }
        assert_eq!(stepped.xi_power, 2);
    }

    #[test]
    fn richardson_improves_two_steps() {
        let g = |r: f64| Ok((2.0 * r).sin() * r);
        let exact = |r: f64| {
            // (1/R d/dR)^2 of R sin 2R
            let d1 = |r: f64| ((2.0 * r).sin() + 2.0 * r * (2.0 * r).cos()) / r;
            let h = 1e-6;
            (d1(r + h) - d1(r - h)) / (2.0 * h * r)
        };
        let r = 1.2;
        let plain = radial_derivative_power(&g, r, 2, 1e-2).unwrap();
        let rich = radial_derivative_richardson(&g, r, 2, 1e-2).unwrap();
        assert!((rich - exact(r)).abs() < (plain - exact(r)).abs() / 10.0);
    }

    #[test]
    fn ladder_bottoms_out() {
        let ladder = BesselLadder {
            coef: 1.0,
            xi_power: 0,
            order: Order::from_twice(5),
        };
        assert_eq!(ladder.step_down_by(2).unwrap().order, Order::HALF);
        assert!(ladder.step_down_by(3).is_none());
    }

    #[test]
    fn rejects_bad_steps() {
        let g = |r: f64| Ok(r);
        assert!(radial_derivative_power(&g, 1.0, 1, 0.0).is_err());
        assert!(radial_derivative_power(&g, 0.1, 2, 0.1).is_err());
    }
}

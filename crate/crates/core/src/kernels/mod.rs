//! The propagator `sin(t|ξ|)/|ξ|` and its spherical-mean representations.

mod constants;
mod hankel;
mod ladder;
mod multipliers;
mod radial;
mod representation;

pub use constants::{constants, DimensionalConstants};
pub use hankel::{
    ascent_step_check, hankel_sine, lemma_closed_form, AscentCheck, HankelSineResult, Region, BOUNDARY_BAND,
};
pub use ladder::{radial_derivative_power, radial_derivative_richardson, BesselLadder};
pub use multipliers::{cosine_kernel, sine_kernel};
pub use radial::{radial_fourier, RadialProfile};
pub use representation::{
    ball_mean_ladder, ball_plane_wave, even_representation, odd_representation, sphere_mean_ladder,
    sphere_mean_plane_wave, BallMeanQuadrature, SphereMeanMethod, SphereMeanQuadrature,
};

use crate::error::{domain, Result};

/// A radius and a frequency vector in `ℝⁿ`, `2 ≤ n ≤ 7`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelQuery {
    n: usize,
    r: f64,
    xi: Vec<f64>,
}

impl KernelQuery {
    pub fn new(n: usize, r: f64, xi: Vec<f64>) -> Result<Self> {
        const OP: &str = "KernelQuery::new";
        if !(2..=7).contains(&n) {
            return domain(OP, format!("dimension {n} not in 2..=7"));
        }
        if !(r > 0.0 && r.is_finite()) {
            return domain(OP, format!("radius {r} must be positive"));
        }
        if xi.len() != n {
            return domain(OP, format!("xi has {} components, expected {n}", xi.len()));
        }
        if xi.iter().any(|v| !v.is_finite()) {
            return domain(OP, "xi must be finite");
        }
        Ok(Self { n, r, xi })
    }

    /// `ξ = (|ξ|/√n)(1, …, 1)`.
    pub fn along_diagonal(n: usize, r: f64, xi_norm: f64) -> Result<Self> {
        let c = xi_norm / (n as f64).sqrt();
        Self::new(n, r, vec![c; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn xi(&self) -> &[f64] {
        &self.xi
    }

    pub fn xi_norm(&self) -> f64 {
        self.xi.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// How the powers of `(1/R ∂/∂R)` are applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderMode {
    /// Exact steps on the Bessel closed form.
    Analytic,
    /// Central differences with Richardson extrapolation on a quadrature.
    FiniteDifference,
}

/// Point counts for the sphere and ball quadratures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelQuadrature {
    /// Gegenbauer points in the polar angle measured from `ξ`.
    pub leading: usize,
    /// Points in each remaining polar angle.
    pub others: usize,
    /// Uniform points in the azimuth.
    pub azimuth: usize,
    /// Points of the singular radial rule.
    pub radial: usize,
}

impl Default for KernelQuadrature {
    fn default() -> Self {
        Self {
            leading: 64,
            others: 4,
            azimuth: 8,
            radial: 48,
        }
    }
}

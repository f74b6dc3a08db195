use std::f64::consts::PI;
use std::fmt;

use crate::error::{domain, Error, Result};
use crate::quad::gauss_legendre;
use crate::specfun::{bessel_j, bessel_j_half, Order, SERIES_MAX_X};

/// Target size of the neglected half-line tail.
const TAIL_TOLERANCE: f64 = 1e-13;
const PANEL_POINTS: usize = 16;

/// A rapidly decaying radial profile `f(ρ)` with `|f(ρ)| ≤ C e^{-ρ/d}`.
pub struct RadialProfile {
    evaluator: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    decay_scale: f64,
    amplitude: f64,
}

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialProfile")
            .field("decay_scale", &self.decay_scale)
            .field("amplitude", &self.amplitude)
            .finish_non_exhaustive()
    }
}

impl RadialProfile {
    /// Wraps `f`, spot-checking the bound `|f(ρ)| ≤ amplitude · e^{-ρ/decay_scale}`
    /// on `ρ = k·d/4`, `k = 0, …, 160`.
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static, decay_scale: f64, amplitude: f64) -> Result<Self> {
        const OP: &str = "RadialProfile::new";
        if !(decay_scale > 0.0 && amplitude > 0.0) {
            return domain(OP, "decay_scale and amplitude must be positive");
        }
        for k in 0..=160 {
            let rho = k as f64 * decay_scale / 4.0;
            let bound = amplitude * (-rho / decay_scale).exp();
            let value = f(rho);
            if !value.is_finite() || value.abs() > bound * (1.0 + 1e-12) {
                return domain(
                    OP,
                    format!("|f({rho})| = {} exceeds the decay bound {bound}", value.abs()),
                );
            }
        }
        Ok(Self {
            evaluator: Box::new(f),
            decay_scale,
            amplitude,
        })
    }

    /// The Gaussian `e^{-ρ²/(2s²)}` with decay scale `s`.
    pub fn gaussian(s: f64) -> Result<Self> {
        // e^{-ρ²/2s²} ≤ e^{1/2} e^{-ρ/s}
        Self::new(move |rho| (-rho * rho / (2.0 * s * s)).exp(), s, 0.5f64.exp())
    }

    pub fn eval(&self, rho: f64) -> f64 {
        (self.evaluator)(rho)
    }

    pub fn decay_scale(&self) -> f64 {
        self.decay_scale
    }

    /// Bound on `∫_ρ^∞ s^p C e^{-s/d} ds` for `ρ ≥ p·d`.
    fn tail_bound(&self, rho: f64, power: f64) -> f64 {
        let d = self.decay_scale;
        self.amplitude * rho.powf(power) * (-rho / d).exp() * d * 2.0
    }
}

/// Fourier transform `∫_{ℝⁿ} f(|x|) e^{-ix·ξ} dx` of a radial function:
/// `(2π)^{n/2} |ξ|^{-(n-2)/2} ∫_0^∞ ρ^{n/2} f(ρ) J_{(n-2)/2}(|ξ|ρ) dρ`.
pub fn radial_fourier(n: usize, f: &RadialProfile, xi_norm: f64) -> Result<f64> {
    const OP: &str = "radial_fourier";
    if !(2..=7).contains(&n) {
        return domain(OP, format!("dimension {n} not in 2..=7"));
    }
    if !(xi_norm > 0.0) {
        return domain(OP, format!("|xi| = {xi_norm} must be positive"));
    }
    let power = n as f64 / 2.0;
    let order = Order::from_twice(n as u32 - 2);
    let d = f.decay_scale;

    let mut rho_max = d * power.max(1.0);
    while f.tail_bound(rho_max, power) > TAIL_TOLERANCE {
        rho_max += d;
    }
    if order != Order::HALF && xi_norm * rho_max > SERIES_MAX_X {
        // the series window cuts the range short; measure what is left out
        let cut = SERIES_MAX_X / xi_norm;
        let skipped = gauss_legendre(64, cut, rho_max)?.integrate(|s| s.powf(power) * f.eval(s).abs());
        let tail = skipped + f.tail_bound(rho_max, power);
        if tail > TAIL_TOLERANCE {
            return Err(Error::NonConvergence {
                op: OP,
                reason: format!("truncation tail {tail:e} at rho = {cut} exceeds {TAIL_TOLERANCE:e}"),
            });
        }
        rho_max = cut;
    }

    let bessel = |z: f64| -> Result<f64> {
        if order == Order::HALF {
            if z == 0.0 {
                Ok(0.0)
            } else {
                bessel_j_half(z)
            }
        } else {
            bessel_j(order, z)
        }
    };
    let panels = (rho_max / (d / 2.0).min(0.5 * PI / xi_norm)).ceil() as usize;
    let panel = rho_max / panels as f64;
    let base = gauss_legendre(PANEL_POINTS, 0.0, panel)?;
    let mut total = 0.0;
    for p in 0..panels {
        let start = p as f64 * panel;
        for (x, w) in base.iter() {
            let rho = start + x;
            total += w * rho.powf(power) * f.eval(rho) * bessel(xi_norm * rho)?;
        }
    }
    Ok((2.0 * PI).powf(power) * xi_norm.powf(-(power - 1.0)) * total)
}

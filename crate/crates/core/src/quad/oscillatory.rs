//! Abel-regularised sine integrals over the half-line.
//!
//! `∫_0^∞ sin(Rρ) g(ρ) dρ` is assigned the value
//! `lim_{ε→0⁺} ∫_0^∞ e^{-ερ} sin(Rρ) g(ρ) dρ`. Each damped integral is
//! computed by panelled Gauss-Legendre up to the point where the envelope
//! is negligible, and the limit is taken by polynomial extrapolation in
//! `ε` through a decreasing ladder.

use std::f64::consts::PI;

use super::gauss::gauss_legendre;
use crate::error::{domain, Error, Result};

/// Parameters for [`osc_halfline_sine`].
#[derive(Debug, Clone, PartialEq)]
pub struct OscConfig {
    /// Strictly decreasing, positive regularisation parameters.
    pub epsilon_ladder: Vec<f64>,
    /// Minimum truncation point of the half-line.
    pub rho_cutoff: f64,
    /// Gauss-Legendre nodes per panel.
    pub panel_points: usize,
    /// Envelope level `e^{-ερ}(1+ρ)^growth` at which a damped integral is cut.
    pub envelope_tol: f64,
    /// Highest angular frequency carried by `g` itself.
    pub g_bandwidth: f64,
    /// Polynomial growth exponent of `|g|` at infinity.
    pub g_growth: f64,
}

impl Default for OscConfig {
    fn default() -> Self {
        Self {
            epsilon_ladder: vec![0.2, 0.1, 0.05, 0.025, 0.0125],
            rho_cutoff: 200.0,
            panel_points: 8,
            envelope_tol: 1e-12,
            g_bandwidth: 0.0,
            g_growth: 0.0,
        }
    }
}

impl OscConfig {
    pub fn validate(&self) -> Result<()> {
        const OP: &str = "OscConfig";
        let ladder = &self.epsilon_ladder;
        if ladder.len() < 3 {
            return domain(OP, "epsilon_ladder needs at least three entries");
        }
        if ladder.iter().any(|&e| !(e > 0.0)) {
            return domain(OP, "epsilon_ladder entries must be positive");
        }
        if ladder.windows(2).any(|w| w[1] >= w[0]) {
            return domain(OP, "epsilon_ladder must be strictly decreasing");
        }
        if self.panel_points < 1 {
            return domain(OP, "panel_points must be at least 1");
        }
        if !(self.envelope_tol > 0.0 && self.envelope_tol < 1.0) {
            return domain(OP, "envelope_tol must lie in (0, 1)");
        }
        if !(self.g_bandwidth >= 0.0) || !self.g_growth.is_finite() {
            return domain(OP, "g_bandwidth must be non-negative and g_growth finite");
        }
        Ok(())
    }

    /// Ladder multiplied by `factor`.
    pub fn with_scaled_ladder(&self, factor: f64) -> Self {
        Self {
            epsilon_ladder: self.epsilon_ladder.iter().map(|e| e * factor).collect(),
            ..self.clone()
        }
    }

    /// Point beyond which `e^{-ερ}(1+ρ)^growth` stays under the envelope tolerance.
    fn truncation(&self, eps: f64) -> f64 {
        let log_tol = -self.envelope_tol.ln();
        let growth = self.g_growth.max(0.0);
        let mut rho = log_tol / eps;
        for _ in 0..50 {
            let next = (log_tol + growth * (1.0 + rho).ln()) / eps;
            if (next - rho).abs() <= 1e-9 * next {
                rho = next;
                break;
            }
            rho = next;
        }
        rho.max(self.rho_cutoff)
    }
}

/// Extrapolated value and the spread of the last two extrapolants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscResult {
    pub value: f64,
    pub error_estimate: f64,
}

/// Values of the polynomial interpolants through the first `k+1` ladder
/// points, evaluated at zero, for `k = 0, …, m-1` (Neville).
pub(crate) fn extrapolants_at_zero(eps: &[f64], values: &[f64]) -> Vec<f64> {
    let m = eps.len();
    let mut table = values.to_vec();
    let mut diagonal = vec![values[0]];
    // after pass `k`, table[i] holds the interpolant through points i-k..=i
    for k in 1..m {
        for i in (k..m).rev() {
            let (ei, ej) = (eps[i], eps[i - k]);
            table[i] = (ei * table[i - 1] - ej * table[i]) / (ei - ej);
        }
        diagonal.push(table[k]);
    }
    diagonal
}

/// Abel limit of `∫_0^∞ e^{-ερ} sin(Rρ) g(ρ) dρ` as `ε → 0⁺`.
pub fn osc_halfline_sine(g: impl Fn(f64) -> f64, r: f64, cfg: &OscConfig) -> Result<OscResult> {
    const OP: &str = "osc_halfline_sine";
    cfg.validate()?;
    if !(r > 0.0) {
        return domain(OP, format!("R = {r} must be positive"));
    }
    let wavelength = 2.0 * PI / r;
    if cfg.rho_cutoff < 10.0 * wavelength {
        return domain(
            OP,
            format!(
                "rho_cutoff {} shorter than ten wavelengths ({})",
                cfg.rho_cutoff,
                10.0 * wavelength
            ),
        );
    }

    let ladder = &cfg.epsilon_ladder;
    let cutoffs: Vec<f64> = ladder.iter().map(|&e| cfg.truncation(e)).collect();
    let end = cutoffs.iter().cloned().fold(0.0, f64::max);
    let panel = 0.25 * 2.0 * PI / (r + cfg.g_bandwidth);
    let panels = (end / panel).ceil() as usize;
    let base = gauss_legendre(cfg.panel_points, 0.0, panel)?;

    let mut sums = vec![0.0; ladder.len()];
    let mut comp = vec![0.0; ladder.len()];
    for p in 0..panels {
        let start = p as f64 * panel;
        let samples: Vec<(f64, f64)> = base
            .iter()
            .map(|(x, w)| {
                let rho = start + x;
                (rho, w * (r * rho).sin() * g(rho))
            })
            .collect();
        for (j, &eps) in ladder.iter().enumerate() {
            if start > cutoffs[j] {
                continue;
            }
            let contribution: f64 = samples.iter().map(|&(rho, v)| v * (-eps * rho).exp()).sum();
            // Kahan summation across panels
            let y = contribution - comp[j];
            let t = sums[j] + y;
            comp[j] = (t - sums[j]) - y;
            sums[j] = t;
        }
    }
    if sums.iter().any(|s| !s.is_finite()) {
        return Err(Error::NonConvergence {
            op: OP,
            reason: "damped integral is not finite".into(),
        });
    }

    let diag = extrapolants_at_zero(ladder, &sums);
    let m = diag.len();
    let value = diag[m - 1];
    let last = (diag[m - 1] - diag[m - 2]).abs();
    let previous = (diag[m - 2] - diag[m - 3]).abs();
    let floor = 1e-10 * value.abs().max(1.0);
    if last > previous && last > floor {
        return Err(Error::NonConvergence {
            op: OP,
            reason: format!("extrapolants do not contract ({previous:e} then {last:e})"),
        });
    }
    Ok(OscResult {
        value,
        error_estimate: last,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{bessel_j, Order};

    #[test]
    fn neville_reproduces_polynomials() {
        let eps = [0.4, 0.2, 0.1, 0.05];
        let vals: Vec<f64> = eps.iter().map(|e| 3.0 - 2.0 * e + 5.0 * e * e * e).collect();
        let diag = extrapolants_at_zero(&eps, &vals);
        assert!((diag[3] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn constant_weight_gives_reciprocal_frequency() {
        let res = osc_halfline_sine(|_| 1.0, 2.0, &OscConfig::default()).unwrap();
        assert!((res.value - 0.5).abs() < 2e-3);
        assert!((res.value - 0.5).abs() <= res.error_estimate.max(1e-12) * 10.0);
    }

    #[test]
    fn exponential_weight_closed_form() {
        let res = osc_halfline_sine(|rho| (-rho).exp(), 1.0, &OscConfig::default()).unwrap();
        assert!((res.value - 0.5).abs() < 1e-6, "{res:?}");
    }

    #[test]
    fn bessel_weight_inside_the_cone() {
        // ∫ sin(2ρ) J_0(ρ) dρ = 1/√3
        let cfg = OscConfig {
            g_bandwidth: 1.0,
            g_growth: -0.5,
            ..OscConfig::default()
        };
        let g = |rho: f64| {
            if rho <= 30.0 {
                bessel_j(Order::ZERO, rho).unwrap()
            } else {
                libm::j0(rho)
            }
        };
        let res = osc_halfline_sine(g, 2.0, &cfg).unwrap();
        assert!((res.value - 1.0 / 3f64.sqrt()).abs() < 5e-3, "{res:?}");
    }

    #[test]
    fn validation() {
        let mut cfg = OscConfig {
            epsilon_ladder: vec![0.1, 0.2, 0.05],
            ..OscConfig::default()
        };
        assert!(osc_halfline_sine(|_| 1.0, 1.0, &cfg).is_err());
        cfg.epsilon_ladder = vec![0.1, 0.05];
        assert!(osc_halfline_sine(|_| 1.0, 1.0, &cfg).is_err());
        let short = OscConfig {
            rho_cutoff: 1.0,
            ..OscConfig::default()
        };
        assert!(osc_halfline_sine(|_| 1.0, 1.0, &short).is_err());
        assert!(osc_halfline_sine(|_| 1.0, 0.0, &OscConfig::default()).is_err());
    }
}

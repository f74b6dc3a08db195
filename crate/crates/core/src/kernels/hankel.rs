//! Half-line Bessel-sine integrals `∫_0^∞ sin(Rρ) ρ^ν J_ν(tρ) dρ`.
//!
//! For `ν = 0` the integral converges conditionally and equals
//! `H(R - t)/√(R² - t²)`. For `ν ≥ 1` it only exists as a limit; every
//! value here is the Abel limit computed by [`osc_halfline_sine`].

use crate::error::{domain, Result};
use crate::quad::{osc_halfline_sine, OscConfig};
use crate::specfun::{bessel_j, Order};

/// Relative width of the excluded band around `R = t`.
pub const BOUNDARY_BAND: f64 = 1e-6;

/// Above this argument `J_ν` is taken from `libm` instead of the series.
const SERIES_SWITCH: f64 = 25.0;

/// Which side of the light cone `|x| = R` the point `t` lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// `t < R`
    Inside,
    /// `t > R`
    Outside,
}

impl Region {
    pub fn of(r: f64, t: f64) -> Self {
        if t < r {
            Region::Inside
        } else {
            Region::Outside
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Region::Inside => "inside",
            Region::Outside => "outside",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HankelSineResult {
    pub value: f64,
    pub region: Region,
    pub error_estimate: f64,
}

/// Integer-order `J_ν` over the whole half-line: series for small
/// arguments, `libm`'s `jn` (backward recurrence from `j0`/`j1`) beyond.
fn bessel_j_wide(nu: u32, x: f64) -> f64 {
    if x <= SERIES_SWITCH {
        bessel_j(Order::integer(nu), x).expect("inside series window")
    } else {
        libm::jn(nu as i32, x)
    }
}

fn check_arguments(op: &'static str, nu: Order, r: f64, t: f64) -> Result<u32> {
    if !nu.is_integer() || nu.twice() > 4 {
        return domain(op, format!("order {nu} not in {{0, 1, 2}}"));
    }
    if !(r > 0.0 && t > 0.0) {
        return domain(op, format!("need R, t > 0, got R = {r}, t = {t}"));
    }
    if (r - t).abs() < BOUNDARY_BAND * r.max(t) {
        return domain(op, format!("R = {r} and t = {t} lie in the boundary band"));
    }
    Ok(nu.twice() / 2)
}

/// Ladder adapted to the pair: the damped integral is analytic in `ε` only
/// for `|ε| < |R - t|`, so the default ladder is shrunk for close pairs.
fn ladder_for(r: f64, t: f64, cfg: &OscConfig) -> OscConfig {
    let factor = (r - t).abs().min(1.0);
    cfg.with_scaled_ladder(factor)
}

fn hankel_with_ladder(nu: u32, r: f64, t: f64, cfg: &OscConfig) -> Result<HankelSineResult> {
    let cfg = OscConfig {
        g_bandwidth: t,
        g_growth: f64::from(nu) - 0.5,
        ..cfg.clone()
    };
    let p = nu as i32;
    let g = |rho: f64| rho.powi(p) * bessel_j_wide(nu, t * rho);
    let res = osc_halfline_sine(g, r, &cfg)?;
    Ok(HankelSineResult {
        value: res.value,
        region: Region::of(r, t),
        error_estimate: res.error_estimate,
    })
}

/// Abel-regularised `∫_0^∞ sin(Rρ) ρ^ν J_ν(tρ) dρ` for `ν ∈ {0, 1, 2}`.
pub fn hankel_sine(nu: Order, r: f64, t: f64, cfg: &OscConfig) -> Result<HankelSineResult> {
    let k = check_arguments("hankel_sine", nu, r, t)?;
    hankel_with_ladder(k, r, t, &ladder_for(r, t, cfg))
}

/// The value `(1/R ∂/∂R)^ν` applied to `t^ν H(R-t)/√(R² - t²)`, namely
/// `(-1)^ν (2ν-1)!! t^ν (R² - t²)^{-ν-1/2}` inside the cone and 0 outside.
pub fn lemma_closed_form(nu: Order, r: f64, t: f64) -> Result<f64> {
    let k = check_arguments("lemma_closed_form", nu, r, t)?;
    if Region::of(r, t) == Region::Outside {
        return Ok(0.0);
    }
    let gap = r * r - t * t;
    let odd_factorial: f64 = (1..2 * k).step_by(2).map(f64::from).product();
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * odd_factorial * t.powi(k as i32) * gap.powf(-(f64::from(k) + 0.5)))
}

/// Both sides of one ascent step and their difference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AscentCheck {
    /// `(1/R ∂/∂R)` of the order `ν-1` integral, by central differences.
    pub lhs: f64,
    /// The order `ν` integral divided by `t`.
    pub rhs: f64,
    pub residual: f64,
    /// Error estimates of the integrals propagated through both sides.
    pub error_budget: f64,
}

/// Checks `(1/R ∂/∂R) ∫ sin(Rρ) ρ^{ν-1} J_{ν-1}(tρ) dρ = (1/t) ∫ sin(Rρ) ρ^ν J_ν(tρ) dρ`.
pub fn ascent_step_check(nu: Order, r: f64, t: f64, h: f64, cfg: &OscConfig) -> Result<AscentCheck> {
    const OP: &str = "ascent_step_check";
    let Some(lower) = nu.lowered() else {
        return domain(OP, "order must be at least 1");
    };
    let k = check_arguments(OP, nu, r, t)?;
    if !(h > 0.0 && 4.0 * h < (r - t).abs() && h < r) {
        return domain(OP, format!("step {h} not small against |R - t| = {}", (r - t).abs()));
    }
    // one ladder for all three integrals keeps their extrapolation errors correlated
    let ladder = ladder_for(r, t, cfg);
    let plus = hankel_with_ladder(k - 1, r + h, t, &ladder)?;
    let minus = hankel_with_ladder(k - 1, r - h, t, &ladder)?;
    let upper = hankel_with_ladder(k, r, t, &ladder)?;
    debug_assert_eq!(lower.twice() / 2, k - 1);
    let lhs = (plus.value - minus.value) / (2.0 * h * r);
    let rhs = upper.value / t;
    Ok(AscentCheck {
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
        error_budget: (plus.error_estimate + minus.error_estimate) / (2.0 * h * r) + upper.error_estimate / t,
    })
}

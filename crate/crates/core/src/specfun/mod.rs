//! Gamma at half-integers and Bessel functions of the first kind.
//!
//! `J_ν` is evaluated three ways so the routes can check each other:
//! the ascending power series, the Poisson integral
//!
//! ```text
//! J_ν(x) = (x/2)^ν / (Γ(ν+1/2) Γ(1/2)) ∫_{-1}^{1} (1-s²)^{ν-1/2} e^{ixs} ds
//! ```
//!
//! and, for `ν = 1/2`, the elementary form `√(2/π) x^{-1/2} sin x`.

mod ddouble;

use std::f64::consts::PI;
use std::fmt;

use crate::error::{domain, Error, Result};
use crate::quad::gauss_legendre;
use ddouble::DoubleDouble;

/// Largest argument accepted by [`bessel_j_series`].
///
/// Intermediate terms of the series grow like `e^x / x` before the
/// alternating sum collapses to `O(x^{-1/2})`; at 50 the largest term is
/// near `3·10^19`, which double-double accumulation still resolves to
/// better than `10^{-10}` absolute.
pub const SERIES_MAX_X: f64 = 50.0;

/// Default node count for [`bessel_j_poisson`].
pub const POISSON_DEFAULT_POINTS: usize = 96;

/// A Bessel order `ν ≥ 0` restricted to integers and half-integers.
///
/// Stored as `2ν` so that both families are represented exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Order {
    twice_nu: u32,
}

impl Order {
    pub const ZERO: Order = Order { twice_nu: 0 };
    pub const HALF: Order = Order { twice_nu: 1 };
    pub const ONE: Order = Order { twice_nu: 2 };

    pub const fn from_twice(twice_nu: u32) -> Self {
        Self { twice_nu }
    }

    pub const fn integer(nu: u32) -> Self {
        Self { twice_nu: 2 * nu }
    }

    /// Parses a float that must be an exact non-negative multiple of 1/2.
    pub fn from_f64(nu: f64) -> Result<Self> {
        let twice = 2.0 * nu;
        if !(twice >= 0.0) || twice.fract() != 0.0 || twice > u32::MAX as f64 {
            return domain("Order::from_f64", format!("{nu} is not a non-negative half-integer"));
        }
        Ok(Self { twice_nu: twice as u32 })
    }

    pub const fn twice(self) -> u32 {
        self.twice_nu
    }

    pub fn value(self) -> f64 {
        f64::from(self.twice_nu) / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.twice_nu.is_multiple_of(2)
    }

    /// `ν - 1`, if still non-negative.
    pub const fn lowered(self) -> Option<Self> {
        if self.twice_nu >= 2 {
            Some(Self {
                twice_nu: self.twice_nu - 2,
            })
        } else {
            None
        }
    }

    pub const fn raised(self) -> Self {
        Self {
            twice_nu: self.twice_nu + 2,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice_nu / 2)
        } else {
            write!(f, "{}/2", self.twice_nu)
        }
    }
}

/// Truncation policy for the ascending series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub max_terms: usize,
    /// Stop once the next term is below this fraction of the running sum.
    pub tail_tolerance: f64,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            max_terms: 200,
            tail_tolerance: 1e-16,
        }
    }
}

impl SeriesConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_terms < 1 {
            return domain("SeriesConfig", "max_terms must be at least 1");
        }
        if !(self.tail_tolerance > 0.0) {
            return domain("SeriesConfig", "tail_tolerance must be positive");
        }
        Ok(())
    }
}

/// `Γ(a)` for `a = twice_a / 2`, by the recursion `Γ(a+1) = aΓ(a)` from
/// `Γ(1/2) = √π` or `Γ(1) = 1`.
pub fn gamma_half(twice_a: u32) -> Result<f64> {
    if twice_a == 0 {
        return domain("gamma_half", "argument must be positive");
    }
    let (mut value, mut twice_k) = if twice_a % 2 == 1 { (PI.sqrt(), 1) } else { (1.0, 2) };
    while twice_k < twice_a {
        value *= f64::from(twice_k) / 2.0;
        twice_k += 2;
    }
    Ok(value)
}

fn gamma_order_plus_one(nu: Order) -> f64 {
    // Γ(ν+1) with 2(ν+1) ≥ 2, never rejected
    gamma_half(nu.twice() + 2).expect("positive argument")
}

/// `J_ν(x)` from the ascending series
/// `Σ (-1)^k (x/2)^{2k+ν} / (k! Γ(k+ν+1))`.
///
/// The sum of the normalised terms is accumulated in double-double
/// arithmetic; the common prefactor `(x/2)^ν / Γ(ν+1)` is applied last.
pub fn bessel_j_series(nu: Order, x: f64, cfg: SeriesConfig) -> Result<f64> {
    const OP: &str = "bessel_j_series";
    cfg.validate()?;
    if !(0.0..=SERIES_MAX_X).contains(&x) {
        return domain(OP, format!("x = {x} outside the series window [0, {SERIES_MAX_X}]"));
    }
    let prefactor = if nu.twice() == 0 {
        1.0
    } else {
        (x / 2.0).powf(nu.value()) / gamma_order_plus_one(nu)
    };
    if x == 0.0 {
        return Ok(prefactor);
    }

    let half = x / 2.0;
    let neg_q = DoubleDouble::product(half, half).neg();
    let nu2 = f64::from(nu.twice());
    let mut term = DoubleDouble::ONE;
    let mut sum = DoubleDouble::ONE;
    for k in 0..cfg.max_terms {
        let k1 = (k + 1) as f64;
        // (k+1)(k+1+ν) = (k+1)(2k+2+2ν)/2, exact in binary
        let denom = k1 * (2.0 * k1 + nu2) / 2.0;
        term = term.mul(neg_q).div_f64(denom);
        let t = term.abs_f64();
        if t < cfg.tail_tolerance * sum.abs_f64() || t < f64::MIN_POSITIVE {
            return Ok(prefactor * sum.to_f64());
        }
        sum = sum.add(term);
    }
    Err(Error::NonConvergence {
        op: OP,
        reason: format!(
            "tail above {} after {} terms at nu = {nu}, x = {x}",
            cfg.tail_tolerance, cfg.max_terms
        ),
    })
}

/// `J_ν` by the series with default truncation.
pub fn bessel_j(nu: Order, x: f64) -> Result<f64> {
    bessel_j_series(nu, x, SeriesConfig::default())
}

/// `J_{1/2}(x) = √2/√π · x^{-1/2} · sin x` for `x > 0`.
pub fn bessel_j_half(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return domain("bessel_j_half", format!("x = {x} must be positive"));
    }
    Ok((2.0 / PI).sqrt() / x.sqrt() * x.sin())
}

/// `J_ν(x)` from the Poisson integral, `ν ≥ 1/2`.
///
/// With `s = cos θ` the integral becomes
/// `∫_0^π sin^{2ν}θ cos(x cos θ) dθ`, whose integrand is analytic on
/// `[0, π]`. It is evaluated with a Gauss-Legendre rule in `θ`.
pub fn bessel_j_poisson(nu: Order, x: f64, quad_points: usize) -> Result<f64> {
    const OP: &str = "bessel_j_poisson";
    if nu.twice() < 1 {
        return domain(OP, "order must be at least 1/2");
    }
    if !(x >= 0.0) {
        return domain(OP, format!("x = {x} must be non-negative"));
    }
    let rule = gauss_legendre(quad_points, 0.0, PI)?;
    let power = nu.twice() as i32;
    let integral: f64 = rule
        .iter()
        .map(|(theta, w)| w * theta.sin().powi(power) * (x * theta.cos()).cos())
        .sum();
    // Γ(ν + 1/2) Γ(1/2)
    let norm = gamma_half(nu.twice() + 1)? * PI.sqrt();
    Ok((x / 2.0).powf(nu.value()) / norm * integral)
}

/// `|d/dx(x^ν J_ν(x)) - x^ν J_{ν-1}(x)|` with the derivative taken by a
/// central difference of step `h`. Needs `ν ≥ 1` and `x > h > 0`.
pub fn recurrence_residual(nu: Order, x: f64, h: f64) -> Result<f64> {
    const OP: &str = "recurrence_residual";
    let Some(lower) = nu.lowered() else {
        return domain(OP, "order must be at least 1");
    };
    if !(h > 0.0 && x > h) {
        return domain(OP, format!("need x > h > 0, got x = {x}, h = {h}"));
    }
    let p = nu.value();
    let scaled = |y: f64| -> Result<f64> { Ok(y.powf(p) * bessel_j(nu, y)?) };
    let derivative = (scaled(x + h)? - scaled(x - h)?) / (2.0 * h);
    Ok((derivative - x.powf(p) * bessel_j(lower, x)?).abs())
}

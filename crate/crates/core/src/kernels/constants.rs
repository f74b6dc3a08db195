use crate::error::{domain, Result};
use crate::quad::{unit_sphere_area, MAX_SPHERE_DIM, MIN_SPHERE_DIM};

/// Dimension-dependent constants of the representation formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionalConstants {
    pub n: usize,
    /// Surface measure of the unit sphere.
    pub omega_n: f64,
    /// Volume of the unit ball.
    pub v_n: f64,
    /// `1 / ((n-2)(n-4)⋯1)` for odd `n ≥ 3`.
    pub c_n: Option<f64>,
    /// `1 / (n(n-2)⋯2)` for even `n ≥ 2`.
    pub d_n: Option<f64>,
}

/// Product of `start, start-2, …` down to 1 or 2.
fn double_factorial(start: usize) -> f64 {
    (1..=start).rev().step_by(2).map(|k| k as f64).product()
}

pub fn constants(n: usize) -> Result<DimensionalConstants> {
    if !(MIN_SPHERE_DIM..=MAX_SPHERE_DIM).contains(&n) {
        return domain(
            "constants",
            format!("dimension {n} not in {MIN_SPHERE_DIM}..={MAX_SPHERE_DIM}"),
        );
    }
    let omega_n = unit_sphere_area(n);
    let odd = n % 2 == 1;
    Ok(DimensionalConstants {
        n,
        omega_n,
        v_n: omega_n / n as f64,
        c_n: odd.then(|| 1.0 / double_factorial(n - 2)),
        d_n: (!odd).then(|| 1.0 / double_factorial(n)),
    })
}

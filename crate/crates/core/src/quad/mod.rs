//! Quadrature rules: Gauss-Legendre, sphere and singular-ball product
//! rules, and Abel-regularised oscillatory half-line integrals.

mod ball;
mod gauss;
mod oscillatory;
mod sphere;

pub use ball::{ball_singular_rule, integrate_singular_ball};
pub use gauss::{gauss_gegenbauer, gauss_legendre, Rule1D};
pub use oscillatory::{osc_halfline_sine, OscConfig, OscResult};
pub use sphere::{sphere_rule, unit_sphere_area, SphereRule, MAX_SPHERE_DIM, MIN_SPHERE_DIM};

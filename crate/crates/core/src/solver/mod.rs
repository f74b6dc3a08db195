//! Solvers for `u_tt = Δu`, `u(·,0) = φ`, `u_t(·,0) = ψ`.
//!
//! The spectral route applies `cos(t|ξ|)` and `sin(t|ξ|)/|ξ|` on a periodic
//! grid. The pointwise routes evaluate Kirchhoff's spherical means in `ℝ³`
//! and Poisson's singular disc averages in `ℝ²`.

mod data;
mod grid;
mod pointwise;
mod spectral;

pub use data::{Bump, CauchyData, MARGIN_WIDTHS};
pub use grid::GridSpec;
pub use pointwise::{solve_kirchhoff_3d, solve_poisson_2d};
pub use spectral::{energy, solve_spectral, solve_spectral_many, wave_residual, SolutionField};

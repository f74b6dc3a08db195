//! Bessel-function machinery for the Cauchy problem of the wave equation
//! `u_tt = Δu` in `ℝⁿ`.
//!
//! - [`specfun`]: `Γ` at half-integers and `J_ν` by series, Poisson integral
//!   and the elementary half-order form.
//! - [`quad`]: quadrature rules used throughout.
//! - [`kernels`]: the propagator multipliers and their representations as
//!   radial derivatives of sphere and ball averages of plane waves.
//! - [`solver`]: spectral, Kirchhoff (n = 3) and Poisson (n = 2) solvers.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod kernels;
pub mod quad;
pub mod solver;
pub mod specfun;

pub use error::{Error, Result};

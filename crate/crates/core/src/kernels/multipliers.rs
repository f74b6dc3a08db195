/// Below this frequency `sin(Rξ)/ξ` is evaluated from its Taylor series.
const SMALL_FREQUENCY: f64 = 1e-8;

/// The propagator multiplier `sin(R|ξ|)/|ξ|`, continuous at `|ξ| = 0`.
pub fn sine_kernel(r: f64, xi_norm: f64) -> f64 {
    if xi_norm.abs() > SMALL_FREQUENCY {
        (r * xi_norm).sin() / xi_norm
    } else {
        let z = r * xi_norm;
        r * (1.0 - z * z / 6.0)
    }
}

/// The propagator multiplier `cos(t|ξ|)`, i.e. `∂_t` of [`sine_kernel`].
pub fn cosine_kernel(t: f64, xi_norm: f64) -> f64 {
    (t * xi_norm).cos()
}

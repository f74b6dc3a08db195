use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

use super::data::{Bump, CauchyData};
use super::grid::GridSpec;
use crate::error::{domain, Error, Result};
use crate::kernels::{cosine_kernel, sine_kernel};

/// Samples of `u(·, t)` and `∂_t u(·, t)` on a [`GridSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionField {
    pub grid: GridSpec,
    pub t: f64,
    pub values: Vec<f64>,
    pub dt_values: Vec<f64>,
}

impl SolutionField {
    pub fn value_at(&self, idx: &[usize]) -> f64 {
        self.values[self.grid.flat_index(idx)]
    }
}

/// In-place n-dimensional DFT, one axis at a time. The inverse is scaled so
/// that forward followed by inverse is the identity.
fn fft_nd(grid: &GridSpec, buf: &mut [Complex64], direction: FftDirection) {
    let len = grid.points();
    let fft = FftPlanner::new().plan_fft(len, direction);
    let mut line = vec![Complex64::new(0.0, 0.0); len];
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    let total = buf.len();
    for axis in 0..grid.dim() {
        let stride = len.pow((grid.dim() - 1 - axis) as u32);
        for start in 0..total {
            // first element of each line: index digit on `axis` is zero
            if !(start / stride).is_multiple_of(len) {
                continue;
            }
            for (k, slot) in line.iter_mut().enumerate() {
                *slot = buf[start + k * stride];
            }
            fft.process_with_scratch(&mut line, &mut scratch);
            for (k, v) in line.iter().enumerate() {
                buf[start + k * stride] = *v;
            }
        }
    }
    if direction == FftDirection::Inverse {
        let scale = 1.0 / total as f64;
        buf.iter_mut().for_each(|v| *v *= scale);
    }
}

fn sample(grid: &GridSpec, f: impl Fn(&[f64]) -> f64) -> Vec<Complex64> {
    (0..grid.len())
        .map(|flat| Complex64::new(f(&grid.coordinates(flat)), 0.0))
        .collect()
}

fn check_fit(op: &'static str, grid: &GridSpec, data: &CauchyData, t: f64) -> Result<()> {
    if data.dim() != grid.dim() {
        return domain(
            op,
            format!("data of dimension {} on a {}-dimensional grid", data.dim(), grid.dim()),
        );
    }
    let mut required: f64 = 0.0;
    for term in data.terms() {
        match (term, term.reach()) {
            (_, Some(reach)) => required = required.max(reach + t.abs()),
            (Bump::PlaneCosine { wavevector, .. }, None) => {
                if !grid.is_grid_frequency(wavevector) {
                    return domain(op, format!("wavevector {wavevector:?} is not a grid frequency"));
                }
            }
            _ => unreachable!("only plane waves lack a reach"),
        }
    }
    if required > grid.half_extent() {
        return Err(Error::Wraparound {
            op,
            required,
            available: grid.half_extent(),
        });
    }
    Ok(())
}

/// Transforms of `φ` and `ψ` samples together with `|ξ|` per bin.
struct Spectrum {
    phi: Vec<Complex64>,
    psi: Vec<Complex64>,
    xi: Vec<f64>,
}

impl Spectrum {
    fn new(grid: &GridSpec, data: &CauchyData) -> Self {
        let mut phi = sample(grid, |x| data.phi(x));
        let mut psi = sample(grid, |x| data.psi(x));
        fft_nd(grid, &mut phi, FftDirection::Forward);
        fft_nd(grid, &mut psi, FftDirection::Forward);
        let xi = grid.frequency_norms_sq().into_iter().map(f64::sqrt).collect();
        Self { phi, psi, xi }
    }

    /// `(û, ∂_t û)` at time `t`, any sign.
    fn evolve(&self, t: f64) -> (Vec<Complex64>, Vec<Complex64>) {
        let mut u = Vec::with_capacity(self.xi.len());
        let mut ut = Vec::with_capacity(self.xi.len());
        for ((&xi, p), q) in self.xi.iter().zip(&self.phi).zip(&self.psi) {
            let c = cosine_kernel(t, xi);
            let s = sine_kernel(t, xi);
            u.push(p * c + q * s);
            ut.push(-p * (xi * xi * s) + q * c);
        }
        (u, ut)
    }
}

fn real_part(grid: &GridSpec, mut spectrum: Vec<Complex64>) -> Vec<f64> {
    fft_nd(grid, &mut spectrum, FftDirection::Inverse);
    spectrum.into_iter().map(|v| v.re).collect()
}

fn field_at(grid: &GridSpec, spectrum: &Spectrum, t: f64) -> SolutionField {
    let (u, ut) = spectrum.evolve(t);
    SolutionField {
        grid: *grid,
        t,
        values: real_part(grid, u),
        dt_values: real_part(grid, ut),
    }
}

/// Evolution without the sign or wraparound checks.
pub(crate) fn evolve_unchecked(grid: &GridSpec, data: &CauchyData, t: f64) -> SolutionField {
    field_at(grid, &Spectrum::new(grid, data), t)
}

/// `u(·, t)` from the Fourier inversion formula on a periodic grid.
///
/// Requires every windowed term to satisfy `|x₀| + 6s + t ≤ L` and every
/// plane wave to be a grid frequency.
pub fn solve_spectral(grid: &GridSpec, data: &CauchyData, t: f64) -> Result<SolutionField> {
    const OP: &str = "solve_spectral";
    if !(t >= 0.0 && t.is_finite()) {
        return domain(OP, format!("time {t} must be non-negative"));
    }
    check_fit(OP, grid, data, t)?;
    Ok(evolve_unchecked(grid, data, t))
}

/// Several times from one pair of forward transforms.
pub fn solve_spectral_many(grid: &GridSpec, data: &CauchyData, times: &[f64]) -> Result<Vec<SolutionField>> {
    const OP: &str = "solve_spectral";
    let Some(&t_max) = times.iter().max_by(|a, b| a.total_cmp(b)) else {
        return Ok(Vec::new());
    };
    if times.iter().any(|t| !(*t >= 0.0 && t.is_finite())) {
        return domain(OP, "times must be non-negative");
    }
    check_fit(OP, grid, data, t_max)?;
    let spectrum = Spectrum::new(grid, data);
    Ok(times.iter().map(|&t| field_at(grid, &spectrum, t)).collect())
}

/// `Σ (|∂_t u|² + |∇u|²) Δxⁿ` with the gradient taken spectrally.
pub fn energy(field: &SolutionField) -> f64 {
    let grid = &field.grid;
    let to_complex = |v: &[f64]| v.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>();
    let mut u = to_complex(&field.values);
    let mut ut = to_complex(&field.dt_values);
    fft_nd(grid, &mut u, FftDirection::Forward);
    fft_nd(grid, &mut ut, FftDirection::Forward);
    let total: f64 = grid
        .frequency_norms_sq()
        .iter()
        .zip(u.iter().zip(&ut))
        .map(|(xi2, (a, b))| xi2 * a.norm_sqr() + b.norm_sqr())
        .sum();
    total * grid.cell_volume() / grid.len() as f64
}

/// `max |(u(t+dt) - 2u(t) + u(t-dt))/dt² - Δu(t)|` over the grid.
pub fn wave_residual(grid: &GridSpec, data: &CauchyData, t: f64, dt: f64) -> Result<f64> {
    const OP: &str = "wave_residual";
    if !(dt > 0.0 && t >= 0.0) {
        return domain(OP, format!("need t ≥ 0 and dt > 0, got t = {t}, dt = {dt}"));
    }
    check_fit(OP, grid, data, t + dt)?;
    let spectrum = Spectrum::new(grid, data);
    let at = |time: f64| real_part(grid, spectrum.evolve(time).0);
    let (plus, mid, minus) = (at(t + dt), spectrum.evolve(t).0, at(t - dt));
    let laplacian: Vec<Complex64> = mid.iter().zip(&spectrum.xi).map(|(v, xi)| -v * (xi * xi)).collect();
    let laplacian = real_part(grid, laplacian);
    let centre = real_part(grid, mid);
    Ok((0..grid.len())
        .map(|k| ((plus[k] - 2.0 * centre[k] + minus[k]) / (dt * dt) - laplacian[k]).abs())
        .fold(0.0, f64::max))
}

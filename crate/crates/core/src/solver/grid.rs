use std::f64::consts::PI;

use crate::error::{domain, Result};

/// Uniform periodic grid on `[-L, L)ⁿ` with `N` points per axis.
///
/// Flat indices are row-major: the last axis varies fastest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    n: usize,
    half_extent: f64,
    points: usize,
}

impl GridSpec {
    pub fn new(n: usize, half_extent: f64, points: usize) -> Result<Self> {
        const OP: &str = "GridSpec::new";
        if !(1..=3).contains(&n) {
            return domain(OP, format!("dimension {n} not in 1..=3"));
        }
        if !(half_extent > 0.0 && half_extent.is_finite()) {
            return domain(OP, format!("half-extent {half_extent} must be positive"));
        }
        if points < 16 || !points.is_power_of_two() {
            return domain(OP, format!("{points} points per axis; need a power of two ≥ 16"));
        }
        Ok(Self { n, half_extent, points })
    }

    /// 128 points per axis for `n ≤ 2`, 64 for `n = 3`.
    pub fn desk(n: usize, half_extent: f64) -> Result<Self> {
        Self::new(n, half_extent, if n == 3 { 64 } else { 128 })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn half_extent(&self) -> f64 {
        self.half_extent
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_extent / self.points as f64
    }

    pub fn len(&self) -> usize {
        self.points.pow(self.n as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.n as i32)
    }

    /// Coordinate `-L + j·h` of node `j` along one axis.
    pub fn node(&self, j: usize) -> f64 {
        -self.half_extent + j as f64 * self.spacing()
    }

    /// Angular frequency `2πk/(2L)` of FFT bin `j`, with `k ∈ [-N/2, N/2)`.
    pub fn frequency(&self, j: usize) -> f64 {
        let k = if j < self.points / 2 {
            j as f64
        } else {
            j as f64 - self.points as f64
        };
        PI * k / self.half_extent
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.n];
        for slot in idx.iter_mut().rev() {
            *slot = flat % self.points;
            flat /= self.points;
        }
        idx
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &j| acc * self.points + j)
    }

    pub fn coordinates(&self, flat: usize) -> Vec<f64> {
        self.multi_index(flat).into_iter().map(|j| self.node(j)).collect()
    }

    /// `|ξ|²` for every FFT bin, in flat order.
    pub fn frequency_norms_sq(&self) -> Vec<f64> {
        (0..self.len())
            .map(|flat| {
                self.multi_index(flat)
                    .into_iter()
                    .map(|j| self.frequency(j).powi(2))
                    .sum()
            })
            .collect()
    }

    /// Whether `k` lies on the frequency lattice strictly below Nyquist.
    pub fn is_grid_frequency(&self, k: &[f64]) -> bool {
        k.len() == self.n
            && k.iter().all(|&ki| {
                let m = ki * self.half_extent / PI;
                (m - m.round()).abs() < 1e-9 * m.abs().max(1.0) && m.round().abs() < (self.points / 2) as f64
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout() {
        let g = GridSpec::new(2, 4.0, 16).unwrap();
        assert_eq!(g.len(), 256);
        assert_eq!(g.spacing(), 0.5);
        assert_eq!(g.coordinates(17), vec![-3.5, -3.5]);
        assert_eq!(g.flat_index(&g.multi_index(123)), 123);
        assert_eq!(g.frequency(15), -PI / 4.0);
        assert_eq!(g.frequency(8), -2.0 * PI);
    }

    #[test]
    fn grid_frequencies() {
        let g = GridSpec::new(1, PI, 16).unwrap();
        assert!(g.is_grid_frequency(&[3.0]));
        assert!(!g.is_grid_frequency(&[2.5]));
        assert!(!g.is_grid_frequency(&[8.0]));
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(GridSpec::new(2, 1.0, 24).is_err());
        assert!(GridSpec::new(2, 1.0, 8).is_err());
        assert!(GridSpec::new(4, 1.0, 16).is_err());
        assert!(GridSpec::new(1, 0.0, 16).is_err());
    }
}

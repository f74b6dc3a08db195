use std::f64::consts::PI;

use super::gauss::{gauss_gegenbauer, Rule1D};
use crate::error::{domain, Result};
use crate::specfun::gamma_half;

pub const MIN_SPHERE_DIM: usize = 2;
pub const MAX_SPHERE_DIM: usize = 7;

/// Surface measure `ω_n = 2π^{n/2} / Γ(n/2)` of the unit sphere in `ℝⁿ`.
pub fn unit_sphere_area(n: usize) -> f64 {
    assert!(n >= 1, "dimension must be positive");
    2.0 * PI.powf(n as f64 / 2.0) / gamma_half(n as u32).expect("positive")
}

/// `∫_0^π sin^m φ dφ = √π Γ((m+1)/2) / Γ(m/2 + 1)`.
fn sine_power_integral(m: u32) -> f64 {
    PI.sqrt() * gamma_half(m + 1).expect("positive") / gamma_half(m + 2).expect("positive")
}

/// Product quadrature on the unit sphere `S^{n-1} ⊂ ℝⁿ`.
///
/// Built in hyperspherical coordinates. Each polar angle `φ_i` enters through
/// its cosine `u = cos φ_i`, where the Jacobian `sin^m φ_i dφ_i` becomes the
/// Gegenbauer weight `(1-u²)^{(m-1)/2} du`; those factors use Gauss-Gegenbauer
/// rules (plain Gauss-Legendre when `m = 1`). The azimuth is uniform. With
/// `k` points everywhere the product is exact for polynomials of degree
/// `2k - 1`.
#[derive(Debug, Clone)]
pub struct SphereRule {
    dim: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// `sphere_rule(n, resolution)`: `resolution` Gauss points per polar angle
/// and `2·resolution` azimuthal points.
pub fn sphere_rule(n: usize, resolution: usize) -> Result<SphereRule> {
    if resolution < 4 {
        return domain("sphere_rule", format!("resolution {resolution} below 4"));
    }
    SphereRule::product(n, resolution, resolution, 2 * resolution)
}

impl SphereRule {
    /// Product rule with `leading` points in `φ_1` (the angle measured from
    /// the first axis), `others` in the remaining polar angles and
    /// `azimuth` in the final angle. On the circle the azimuth is the angle
    /// from the first axis, so it gets `max(azimuth, 2·leading)` points.
    pub fn product(n: usize, leading: usize, others: usize, azimuth: usize) -> Result<Self> {
        const OP: &str = "SphereRule::product";
        if !(MIN_SPHERE_DIM..=MAX_SPHERE_DIM).contains(&n) {
            return domain(OP, format!("dimension {n} not in {MIN_SPHERE_DIM}..={MAX_SPHERE_DIM}"));
        }
        if leading == 0 || others == 0 || azimuth == 0 {
            return domain(OP, "every angle needs at least one node");
        }

        let polar: Vec<Rule1D> = (0..n - 2)
            .map(|i| {
                let m = (n - 2 - i) as u32;
                let count = if i == 0 { leading } else { others };
                let mut r = gauss_gegenbauer(count, f64::from(m) / 2.0)?;
                let total: f64 = r.weights.iter().sum();
                let exact = sine_power_integral(m);
                r.weights.iter_mut().for_each(|w| *w *= exact / total);
                Ok(r)
            })
            .collect::<Result<_>>()?;

        let azimuth = if n == 2 { azimuth.max(2 * leading) } else { azimuth };
        let dtheta = 2.0 * PI / azimuth as f64;
        let count = polar.iter().map(Rule1D::len).product::<usize>() * azimuth;
        let mut nodes = Vec::with_capacity(count * n);
        let mut weights = Vec::with_capacity(count);
        let mut point = vec![0.0; n];
        let mut index = vec![0usize; polar.len()];
        loop {
            // point = (cos φ1, sin φ1 cos φ2, …, Π sin φ_i · cos θ, Π sin φ_i · sin θ)
            let mut radius = 1.0;
            let mut w = 1.0;
            for (axis, (rule, &k)) in polar.iter().zip(&index).enumerate() {
                let u = rule.nodes[k];
                point[axis] = radius * u;
                radius *= (1.0 - u * u).max(0.0).sqrt();
                w *= rule.weights[k];
            }
            for j in 0..azimuth {
                let theta = dtheta * j as f64;
                point[n - 2] = radius * theta.cos();
                point[n - 1] = radius * theta.sin();
                nodes.extend_from_slice(&point);
                weights.push(w * dtheta);
            }

            let mut axis = polar.len();
            loop {
                if axis == 0 {
                    return Ok(Self { dim: n, nodes, weights });
                }
                axis -= 1;
                index[axis] += 1;
                if index[axis] < polar[axis].len() {
                    break;
                }
                index[axis] = 0;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn nodes(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.nodes.chunks_exact(self.dim)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> + '_ {
        self.nodes().zip(self.weights.iter().copied())
    }

    pub fn integrate(&self, mut f: impl FnMut(&[f64]) -> f64) -> f64 {
        self.iter().map(|(x, w)| w * f(x)).sum()
    }

    /// The rule reflected so that its first axis points along `axis`.
    ///
    /// Uses the Householder reflection exchanging `e_1` and `axis/|axis|`;
    /// a zero `axis` leaves the rule unchanged.
    pub fn aligned_to(&self, axis: &[f64]) -> Result<Self> {
        if axis.len() != self.dim {
            return domain(
                "SphereRule::aligned_to",
                format!("axis has {} components, rule has dimension {}", axis.len(), self.dim),
            );
        }
        let norm = axis.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Ok(self.clone());
        }
        let mut v: Vec<f64> = axis.iter().map(|a| -a / norm).collect();
        v[0] += 1.0;
        let vv: f64 = v.iter().map(|a| a * a).sum();
        if vv < 1e-30 {
            return Ok(self.clone());
        }
        let mut nodes = self.nodes.clone();
        for x in nodes.chunks_exact_mut(self.dim) {
            let dot: f64 = x.iter().zip(&v).map(|(a, b)| a * b).sum();
            let scale = 2.0 * dot / vv;
            x.iter_mut().zip(&v).for_each(|(a, b)| *a -= scale * b);
        }
        Ok(Self {
            dim: self.dim,
            nodes,
            weights: self.weights.clone(),
        })
    }
}

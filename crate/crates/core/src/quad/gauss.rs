use std::f64::consts::PI;

use crate::error::{domain, Result};

/// A one-dimensional quadrature rule on `interval`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule1D {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub interval: (f64, f64),
}

impl Rule1D {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.iter().map(|(x, w)| w * f(x)).sum()
    }

    /// The same rule mapped affinely onto `[lo, hi]`.
    pub fn mapped(&self, lo: f64, hi: f64) -> Rule1D {
        let (a, b) = self.interval;
        let scale = (hi - lo) / (b - a);
        Rule1D {
            nodes: self.nodes.iter().map(|x| lo + (x - a) * scale).collect(),
            weights: self.weights.iter().map(|w| w * scale).collect(),
            interval: (lo, hi),
        }
    }
}

/// Legendre polynomial `P_n(x)` and its derivative.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=n {
        let k = k as f64;
        let next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
        p_prev = p;
        p = next;
    }
    let nf = n as f64;
    let dp = nf * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Gauss-Legendre rule with `npoints` nodes on `[lo, hi]`, exact for
/// polynomials of degree `2·npoints - 1`.
///
/// Nodes are found by Newton iteration on `P_n` from the Tricomi initial
/// guesses; the rule is built on `[-1, 1]` and mapped.
pub fn gauss_legendre(npoints: usize, lo: f64, hi: f64) -> Result<Rule1D> {
    const OP: &str = "gauss_legendre";
    if npoints < 1 {
        return domain(OP, "need at least one node");
    }
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return domain(OP, format!("invalid interval [{lo}, {hi}]"));
    }
    if npoints == 1 {
        let rule = Rule1D {
            nodes: vec![0.0],
            weights: vec![2.0],
            interval: (-1.0, 1.0),
        };
        return Ok(rule.mapped(lo, hi));
    }

    let n = npoints;
    let nf = n as f64;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // ascending order: the i-th guess is the i-th largest root
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    let rule = Rule1D {
        nodes,
        weights,
        interval: (-1.0, 1.0),
    };
    Ok(rule.mapped(lo, hi))
}

/// Eigenvalues of a symmetric tridiagonal matrix together with the first
/// component of each normalised eigenvector (implicit QL with Wilkinson
/// shifts). `diag` has length `n`, `off` holds the `n - 1` off-diagonals.
fn tridiagonal_eigen(mut diag: Vec<f64>, off: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = diag.len();
    let mut e = off.to_vec();
    e.push(0.0);
    let mut first = vec![0.0; n];
    first[0] = 1.0;
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            assert!(iterations < 100, "tridiagonal QL failed to converge");
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                let z = first[i + 1];
                first[i + 1] = s * first[i] + c * z;
                first[i] = c * first[i] - s * z;
            }
            if underflow {
                continue;
            }
            diag[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    (diag, first)
}

/// Gauss-Gegenbauer rule on `[-1, 1]` for the weight `(1 - x²)^{λ - 1/2}`,
/// `λ > 0`, exact for polynomials of degree `2·npoints - 1`.
///
/// Built by Golub-Welsch from the Jacobi matrix of the Gegenbauer family;
/// the returned weights carry the weight function.
pub fn gauss_gegenbauer(npoints: usize, lambda: f64) -> Result<Rule1D> {
    const OP: &str = "gauss_gegenbauer";
    if npoints < 1 {
        return domain(OP, "need at least one node");
    }
    if !(lambda > 0.0) {
        return domain(OP, format!("lambda = {lambda} must be positive"));
    }
    // μ0 = ∫ (1-x²)^{λ-1/2} dx = √π Γ(λ+1/2) / Γ(λ+1)
    let mu0 = PI.sqrt() * libm::tgamma(lambda + 0.5) / libm::tgamma(lambda + 1.0);
    let off: Vec<f64> = (1..npoints)
        .map(|k| {
            let k = k as f64;
            (k * (k + 2.0 * lambda - 1.0) / (4.0 * (k + lambda) * (k + lambda - 1.0))).sqrt()
        })
        .collect();
    let (values, first) = tridiagonal_eigen(vec![0.0; npoints], &off);
    let mut pairs: Vec<(f64, f64)> = values.into_iter().zip(first).map(|(x, v)| (x, mu0 * v * v)).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    // symmetrise: the exact rule is even
    let n = pairs.len();
    for i in 0..n / 2 {
        let x = 0.5 * (pairs[n - 1 - i].0 - pairs[i].0);
        let w = 0.5 * (pairs[n - 1 - i].1 + pairs[i].1);
        pairs[i] = (-x, w);
        pairs[n - 1 - i] = (x, w);
    }
    if n % 2 == 1 {
        pairs[n / 2].0 = 0.0;
    }
    Ok(Rule1D {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
        interval: (-1.0, 1.0),
    })
}

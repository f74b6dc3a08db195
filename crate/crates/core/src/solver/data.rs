use crate::error::{domain, Result};

/// Widths of Gaussian tail kept clear of the periodic images,
/// `e^{-6²/2} ≈ 1.5e-8`.
pub const MARGIN_WIDTHS: f64 = 6.0;

/// One term of the initial-data family.
#[derive(Debug, Clone, PartialEq)]
pub enum Bump {
    /// `A e^{-|x-x₀|²/(2s²)}`
    Gaussian {
        amplitude: f64,
        center: Vec<f64>,
        width: f64,
    },
    /// `A e^{-|x-x₀|²/(2s²)} cos(k·(x-x₀))`
    WindowedCosine {
        amplitude: f64,
        center: Vec<f64>,
        width: f64,
        wavevector: Vec<f64>,
    },
    /// `A cos(k·x)` with no window; only meaningful on a periodic grid
    /// where `k` is a grid frequency.
    PlaneCosine { amplitude: f64, wavevector: Vec<f64> },
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

impl Bump {
    pub fn gaussian(amplitude: f64, center: Vec<f64>, width: f64) -> Self {
        Bump::Gaussian {
            amplitude,
            center,
            width,
        }
    }

    pub fn windowed_cosine(amplitude: f64, center: Vec<f64>, width: f64, wavevector: Vec<f64>) -> Self {
        Bump::WindowedCosine {
            amplitude,
            center,
            width,
            wavevector,
        }
    }

    pub fn plane_cosine(amplitude: f64, wavevector: Vec<f64>) -> Self {
        Bump::PlaneCosine { amplitude, wavevector }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            Bump::Gaussian {
                amplitude,
                center,
                width,
            } => amplitude * (-dist2(x, center) / (2.0 * width * width)).exp(),
            Bump::WindowedCosine {
                amplitude,
                center,
                width,
                wavevector,
            } => {
                let shifted: Vec<f64> = x.iter().zip(center).map(|(a, b)| a - b).collect();
                amplitude * (-dot(&shifted, &shifted) / (2.0 * width * width)).exp() * dot(wavevector, &shifted).cos()
            }
            Bump::PlaneCosine { amplitude, wavevector } => amplitude * dot(wavevector, x).cos(),
        }
    }

    pub fn amplitude(&self) -> f64 {
        match self {
            Bump::Gaussian { amplitude, .. }
            | Bump::WindowedCosine { amplitude, .. }
            | Bump::PlaneCosine { amplitude, .. } => *amplitude,
        }
    }

    fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        match &mut out {
            Bump::Gaussian { amplitude, .. }
            | Bump::WindowedCosine { amplitude, .. }
            | Bump::PlaneCosine { amplitude, .. } => *amplitude *= factor,
        }
        out
    }

    /// `|x₀| + 6s` for windowed terms, `None` for plane waves.
    pub fn reach(&self) -> Option<f64> {
        match self {
            Bump::Gaussian { center, width, .. } | Bump::WindowedCosine { center, width, .. } => {
                Some(dot(center, center).sqrt() + MARGIN_WIDTHS * width)
            }
            Bump::PlaneCosine { .. } => None,
        }
    }

    fn dim(&self) -> usize {
        match self {
            Bump::Gaussian { center, .. } | Bump::WindowedCosine { center, .. } => center.len(),
            Bump::PlaneCosine { wavevector, .. } => wavevector.len(),
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        const OP: &str = "CauchyData::new";
        if self.dim() != n {
            return domain(OP, format!("term of dimension {} in {n}-dimensional data", self.dim()));
        }
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        let ok = match self {
            Bump::Gaussian {
                amplitude,
                center,
                width,
            } => amplitude.is_finite() && finite(center) && *width > 0.0 && width.is_finite(),
            Bump::WindowedCosine {
                amplitude,
                center,
                width,
                wavevector,
            } => amplitude.is_finite() && finite(center) && finite(wavevector) && *width > 0.0 && width.is_finite(),
            Bump::PlaneCosine { amplitude, wavevector } => amplitude.is_finite() && finite(wavevector),
        };
        if ok {
            Ok(())
        } else {
            domain(OP, format!("invalid term {self:?}"))
        }
    }
}

/// Initial displacement `φ` and velocity `ψ`, each a finite sum of [`Bump`]s.
#[derive(Debug, Clone, PartialEq)]
pub struct CauchyData {
    n: usize,
    phi: Vec<Bump>,
    psi: Vec<Bump>,
}

impl CauchyData {
    pub fn new(n: usize, phi: Vec<Bump>, psi: Vec<Bump>) -> Result<Self> {
        if !(1..=7).contains(&n) {
            return domain("CauchyData::new", format!("dimension {n} not in 1..=7"));
        }
        for b in phi.iter().chain(&psi) {
            b.validate(n)?;
        }
        Ok(Self { n, phi, psi })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, Vec::new(), Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn phi_terms(&self) -> &[Bump] {
        &self.phi
    }

    pub fn psi_terms(&self) -> &[Bump] {
        &self.psi
    }

    pub fn phi(&self, x: &[f64]) -> f64 {
        self.phi.iter().map(|b| b.eval(x)).sum()
    }

    pub fn psi(&self, x: &[f64]) -> f64 {
        self.psi.iter().map(|b| b.eval(x)).sum()
    }

    /// Upper bound `Σ|A|` on `max(‖φ‖∞, ‖ψ‖∞)`.
    pub fn sup_bound(&self) -> f64 {
        let sum = |v: &[Bump]| v.iter().map(|b| b.amplitude().abs()).sum::<f64>();
        sum(&self.phi).max(sum(&self.psi))
    }

    /// `α·self + β·other`, term by term.
    pub fn combine(&self, alpha: f64, other: &CauchyData, beta: f64) -> Result<Self> {
        if self.n != other.n {
            return domain("CauchyData::combine", "dimensions differ");
        }
        let mix = |a: &[Bump], b: &[Bump]| -> Vec<Bump> {
            a.iter()
                .map(|t| t.scaled(alpha))
                .chain(b.iter().map(|t| t.scaled(beta)))
                .collect()
        };
        Ok(Self {
            n: self.n,
            phi: mix(&self.phi, &other.phi),
            psi: mix(&self.psi, &other.psi),
        })
    }

    pub(crate) fn terms(&self) -> impl Iterator<Item = &Bump> {
        self.phi.iter().chain(&self.psi)
    }
}

//! Command-line flags and the declarative config file. Each argument struct
//! is parsed from both; flags win over the file, which wins over defaults.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "wavekit",
    version,
    about = "Verification sweeps and solvers for the wave equation"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate J_ν by series, Poisson integral and the half-order closed form.
    BesselTable(BesselArgs),
    /// Compare the spherical-mean representations with sin(R|ξ|)/|ξ|.
    KernelVerify(KernelArgs),
    /// Check the Bessel-sine integrals and the ascent relation.
    LemmaVerify(LemmaArgs),
    /// Solve the Cauchy problem on a grid or at points.
    Solve(SolveArgs),
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommonArgs {
    /// TOML file with common keys and one table per subcommand.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Output directory; without it the report goes to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Tolerance override for the command's main comparison.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Worker threads; defaults to WAVEKIT_JOBS, then the number of CPUs.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BesselArgs {
    /// Orders, multiples of 1/2.
    #[arg(long, value_delimiter = ',')]
    pub nu: Option<Vec<f64>>,
    /// Explicit arguments; overrides the x range.
    #[arg(long, value_delimiter = ',')]
    pub x: Option<Vec<f64>>,
    #[arg(long)]
    pub x_min: Option<f64>,
    #[arg(long)]
    pub x_max: Option<f64>,
    #[arg(long)]
    pub x_count: Option<usize>,
    #[arg(long)]
    pub poisson_points: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    /// Analytic ladder for odd n, quadrature with differences for even n.
    Auto,
    Analytic,
    FiniteDifference,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelArgs {
    /// Dimensions to sample from, within 2..=7.
    #[arg(long, value_delimiter = ',')]
    pub dims: Option<Vec<usize>>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub r_min: Option<f64>,
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long)]
    pub xi_min: Option<f64>,
    #[arg(long)]
    pub xi_max: Option<f64>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Gauss points in the polar angle from ξ.
    #[arg(long)]
    pub resolution: Option<usize>,
    /// Points of the singular radial rule.
    #[arg(long)]
    pub radial: Option<usize>,
}

/// An `(R, t)` pair, written `R:t` on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(from = "[f64; 2]")]
pub struct Pair {
    pub r: f64,
    pub t: f64,
}

impl From<[f64; 2]> for Pair {
    fn from([r, t]: [f64; 2]) -> Self {
        Pair { r, t }
    }
}

impl FromStr for Pair {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (r, t) = s.split_once(':').ok_or_else(|| format!("expected R:t, got {s:?}"))?;
        let parse = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}"));
        Ok(Pair {
            r: parse(r)?,
            t: parse(t)?,
        })
    }
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LemmaArgs {
    /// Integer orders in {0, 1, 2}.
    #[arg(long, value_delimiter = ',')]
    pub orders: Option<Vec<u32>>,
    /// Explicit pairs `R:t`; overrides random sampling.
    #[arg(long, value_delimiter = ',')]
    pub pairs: Option<Vec<Pair>>,
    /// Number of random pairs.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub r_min: Option<f64>,
    #[arg(long)]
    pub r_max: Option<f64>,
    /// Tolerance on the ascent residual for orders 1 and 2.
    #[arg(long)]
    pub ascent_tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodArg {
    Spectral,
    Kirchhoff,
    Poisson,
    Crosscheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TermKind {
    Gaussian,
    WindowedCosine,
    PlaneCosine,
}

/// One term of φ or ψ in the config file.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub kind: TermKind,
    pub amplitude: f64,
    #[serde(default)]
    pub center: Option<Vec<f64>>,
    #[serde(default)]
    pub width: Option<f64>,
    #[serde(default)]
    pub wavevector: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveArgs {
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    /// Half-extent L of the box [-L, L)ⁿ; defaults to the smallest legal box.
    #[arg(long)]
    pub half_extent: Option<f64>,
    /// Grid points per axis.
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub times: Option<Vec<f64>>,
    /// Width of the default Gaussian φ when no terms are configured.
    #[arg(long)]
    pub width: Option<f64>,
    /// Number of random space-time points for the point solvers.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Quadrature resolution of the point solvers.
    #[arg(long)]
    pub resolution: Option<usize>,
    /// Time step of the residual diagnostic.
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(skip)]
    pub phi: Option<Vec<TermSpec>>,
    #[arg(skip)]
    pub psi: Option<Vec<TermSpec>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    out: Option<PathBuf>,
    seed: Option<u64>,
    tol: Option<f64>,
    jobs: Option<usize>,
    #[serde(rename = "bessel-table")]
    bessel_table: Option<BesselArgs>,
    #[serde(rename = "kernel-verify")]
    kernel_verify: Option<KernelArgs>,
    #[serde(rename = "lemma-verify")]
    lemma_verify: Option<LemmaArgs>,
    solve: Option<SolveArgs>,
}

macro_rules! fill {
    ($dst:expr, $src:expr; $($f:ident),* $(,)?) => {
        $( if $dst.$f.is_none() { $dst.$f = $src.$f; } )*
    };
}

fn read_config(path: &Path) -> Result<ConfigFile, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::config("config", format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

/// Fills every unset flag from the config file, if any.
pub fn resolve(mut cli: Cli) -> Result<Cli, CliError> {
    let Some(path) = cli.common.config.clone() else {
        return Ok(cli);
    };
    let file = read_config(&path)?;
    fill!(cli.common, file; out, seed, tol, jobs);
    match &mut cli.command {
        Command::BesselTable(a) => {
            if let Some(f) = file.bessel_table {
                fill!(a, f; nu, x, x_min, x_max, x_count, poisson_points);
            }
        }
        Command::KernelVerify(a) => {
            if let Some(f) = file.kernel_verify {
                fill!(a, f; dims, samples, r_min, r_max, xi_min, xi_max, mode, resolution, radial);
            }
        }
        Command::LemmaVerify(a) => {
            if let Some(f) = file.lemma_verify {
                fill!(a, f; orders, pairs, samples, r_min, r_max, ascent_tol);
            }
        }
        Command::Solve(a) => {
            if let Some(f) = file.solve {
                fill!(a, f; dim, method, half_extent, points, times, width, samples, resolution, dt, phi, psi);
            }
        }
    }
    Ok(cli)
}

pub fn jobs(common: &CommonArgs) -> Result<usize, CliError> {
    if let Some(j) = common.jobs {
        return if j == 0 {
            Err(CliError::config("jobs", "must be at least 1"))
        } else {
            Ok(j)
        };
    }
    match std::env::var("WAVEKIT_JOBS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(j) if j > 0 => Ok(j),
            _ => Err(CliError::config(
                "WAVEKIT_JOBS",
                format!("{v:?} is not a positive integer"),
            )),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

pub fn positive(field: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::config(field, format!("{v} must be positive")))
    }
}

pub fn range(field: &str, lo: f64, hi: f64) -> Result<(f64, f64), CliError> {
    if lo.is_finite() && hi.is_finite() && lo < hi {
        Ok((lo, hi))
    } else {
        Err(CliError::config(field, format!("empty range [{lo}, {hi}]")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_parse() {
        assert_eq!("2:1".parse::<Pair>().unwrap(), Pair { r: 2.0, t: 1.0 });
        assert!("2".parse::<Pair>().is_err());
    }

    #[test]
    fn file_fills_unset_flags_only() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "seed = 5\ntol = 0.5\n[kernel-verify]\ndims = [5]\nsamples = 3\n").unwrap();
        let cli = Cli::parse_from([
            "wavekit",
            "--config",
            path.to_str().unwrap(),
            "--tol",
            "0.25",
            "kernel-verify",
            "--samples",
            "9",
        ]);
        let cli = resolve(cli).unwrap();
        assert_eq!(cli.common.seed, Some(5));
        assert_eq!(cli.common.tol, Some(0.25));
        let Command::KernelVerify(k) = cli.command else {
            panic!()
        };
        assert_eq!(k.dims, Some(vec![5]));
        assert_eq!(k.samples, Some(9));
    }

    #[test]
    fn unknown_fields_are_named() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.toml");
        std::fs::write(&path, "[kernel-verify]\nsample = 3\n").unwrap();
        let cli = Cli::parse_from(["wavekit", "--config", path.to_str().unwrap(), "kernel-verify"]);
        let err = resolve(cli).unwrap_err().to_string();
        assert!(err.contains("sample"), "{err}");
    }

    #[test]
    fn solve_terms_from_file() {
        let text =
            "[solve]\ndim = 2\n[[solve.phi]]\nkind = \"gaussian\"\namplitude = 1.0\ncenter = [0.0, 0.0]\nwidth = 0.5\n";
        let f: ConfigFile = toml::from_str(text).unwrap();
        let s = f.solve.unwrap();
        assert_eq!(s.phi.unwrap()[0].kind, TermKind::Gaussian);
    }
}

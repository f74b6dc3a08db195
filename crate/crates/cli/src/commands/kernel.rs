use rand::Rng;
use wavekit::kernels::{
    even_representation, odd_representation, sine_kernel, KernelQuadrature, KernelQuery, LadderMode,
};

use super::{Ctx, Outcome};
use crate::config::{positive, range, KernelArgs, ModeArg};
use crate::error::CliError;
use crate::report::{Record, Report};

/// Default tolerance for dimension `n` under `mode`.
pub fn default_tol(n: usize, mode: LadderMode) -> f64 {
    match (n % 2 == 1, mode) {
        (true, LadderMode::Analytic) => 1e-6,
        (false, _) if n == 2 => 1e-4,
        _ => 1e-3,
    }
}

fn mode_for(n: usize, mode: ModeArg) -> LadderMode {
    match mode {
        ModeArg::Analytic => LadderMode::Analytic,
        ModeArg::FiniteDifference => LadderMode::FiniteDifference,
        ModeArg::Auto if n % 2 == 1 => LadderMode::Analytic,
        ModeArg::Auto => LadderMode::FiniteDifference,
    }
}

fn mode_name(mode: LadderMode) -> &'static str {
    match mode {
        LadderMode::Analytic => "analytic",
        LadderMode::FiniteDifference => "finite-difference",
    }
}

/// Uniform direction on the sphere by rejection from the cube.
fn direction(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm > 1e-3 && norm <= 1.0 {
            return v.into_iter().map(|a| a / norm).collect();
        }
    }
}

pub fn run(args: &KernelArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let dims = args.dims.clone().unwrap_or_else(|| vec![3]);
    if dims.is_empty() {
        return Err(CliError::config("dims", "empty list"));
    }
    if let Some(bad) = dims.iter().find(|n| !(2..=7).contains(*n)) {
        return Err(CliError::config("dims", format!("{bad} not in 2..=7")));
    }
    let samples = args.samples.unwrap_or(50);
    if samples == 0 {
        return Err(CliError::config("samples", "must be at least 1"));
    }
    let (r_lo, r_hi) = range("r_min/r_max", args.r_min.unwrap_or(0.5), args.r_max.unwrap_or(3.0))?;
    let (x_lo, x_hi) = range("xi_min/xi_max", args.xi_min.unwrap_or(0.1), args.xi_max.unwrap_or(5.0))?;
    positive("r_min", r_lo)?;
    positive("xi_min", x_lo)?;
    let mode = args.mode.unwrap_or(ModeArg::Auto);
    let defaults = KernelQuadrature::default();
    let quad = KernelQuadrature {
        leading: args.resolution.unwrap_or(defaults.leading),
        radial: args.radial.unwrap_or(defaults.radial),
        ..defaults
    };
    if quad.leading == 0 || quad.radial == 0 {
        return Err(CliError::config("resolution", "must be at least 1"));
    }

    let mut rng = ctx.rng();
    let cases: Vec<KernelQuery> = (0..samples)
        .map(|_| {
            let n = dims[rng.random_range(0..dims.len())];
            let r = rng.random_range(r_lo..r_hi);
            let xi_norm = rng.random_range(x_lo..x_hi);
            let xi = direction(&mut rng, n).into_iter().map(|a| a * xi_norm).collect();
            KernelQuery::new(n, r, xi).expect("sampled inside the domain")
        })
        .collect();

    let records = ctx.map(&cases, |q| {
        let n = q.n();
        let ladder = mode_for(n, mode);
        let tol = ctx.tol.unwrap_or_else(|| default_tol(n, ladder));
        let base = Record::new()
            .field("n", n)
            .field("r", q.r())
            .field("xi", q.xi().to_vec())
            .field("xi_norm", q.xi_norm())
            .field("mode", mode_name(ladder));
        let value = if n % 2 == 1 {
            odd_representation(q, ladder, &quad)
        } else {
            even_representation(q, ladder, &quad)
        };
        match value {
            Ok(v) => base.compared(v, sine_kernel(q.r(), q.xi_norm()), tol),
            Err(e) => base.failed(e.to_string()),
        }
    });

    let mut report = Report::new("kernel-verify", Some(ctx.seed));
    report.records = records;
    Ok(Outcome {
        report,
        files: Vec::new(),
    })
}

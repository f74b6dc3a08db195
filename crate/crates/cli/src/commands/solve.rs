use rand::Rng;
use wavekit::quad::sphere_rule;
use wavekit::solver::{
    energy, solve_kirchhoff_3d, solve_poisson_2d, solve_spectral_many, wave_residual, Bump, CauchyData, GridSpec,
    SolutionField,
};

use super::{Ctx, Outcome};
use crate::config::{positive, MethodArg, SolveArgs, TermKind, TermSpec};
use crate::error::CliError;
use crate::report::{fmt_f64, Record, Report, Table};

const IDENTITY_TOL: f64 = 1e-12;
const ENERGY_TOL: f64 = 1e-10;
const RESIDUAL_TOL: f64 = 1e-4;
const DEFAULT_DT: f64 = 1e-3;
const KIRCHHOFF_TOL: f64 = 1e-4;
const POISSON_TOL: f64 = 5e-4;

fn term(n: usize, spec: &TermSpec, field: &str) -> Result<Bump, CliError> {
    let need = |v: &Option<Vec<f64>>, what: &str| -> Result<Vec<f64>, CliError> {
        match v {
            Some(v) if v.len() == n => Ok(v.clone()),
            Some(v) => Err(CliError::config(
                field,
                format!("{what} has {} components, expected {n}", v.len()),
            )),
            None => Err(CliError::config(field, format!("{what} missing"))),
        }
    };
    let width = || {
        spec.width
            .ok_or_else(|| CliError::config(field, "width missing"))
            .and_then(|w| positive(field, w))
    };
    Ok(match spec.kind {
        TermKind::Gaussian => Bump::gaussian(spec.amplitude, need(&spec.center, "center")?, width()?),
        TermKind::WindowedCosine => Bump::windowed_cosine(
            spec.amplitude,
            need(&spec.center, "center")?,
            width()?,
            need(&spec.wavevector, "wavevector")?,
        ),
        TermKind::PlaneCosine => Bump::plane_cosine(spec.amplitude, need(&spec.wavevector, "wavevector")?),
    })
}

fn build_data(args: &SolveArgs, n: usize) -> Result<CauchyData, CliError> {
    let terms = |specs: &Option<Vec<TermSpec>>, field: &str| -> Result<Vec<Bump>, CliError> {
        specs.iter().flatten().map(|s| term(n, s, field)).collect()
    };
    let mut phi = terms(&args.phi, "phi")?;
    let psi = terms(&args.psi, "psi")?;
    if args.phi.is_none() && args.psi.is_none() {
        let width = positive("width", args.width.unwrap_or(0.8))?;
        phi.push(Bump::gaussian(1.0, vec![0.0; n], width));
    }
    CauchyData::new(n, phi, psi).map_err(|e| CliError::config("phi/psi", e))
}

/// The smallest half-extent that keeps every windowed term clear of its
/// images up to `t_max`.
fn minimal_half_extent(data: &CauchyData, t_max: f64) -> f64 {
    data.phi_terms()
        .iter()
        .chain(data.psi_terms())
        .filter_map(Bump::reach)
        .fold(1.0, f64::max)
        + t_max
}

fn grid_table(fields: &[SolutionField], meta: Vec<String>) -> Result<Table, CliError> {
    let grid = fields[0].grid;
    let n = grid.dim();
    let axes = ["x", "y", "z"];
    let mut header = vec!["t"];
    if n == 3 {
        header.push("slice");
    }
    header.extend(&axes[..n]);
    header.push("u");
    let mut rows = Vec::new();
    for f in fields {
        if n <= 2 {
            for flat in 0..grid.len() {
                let mut row = vec![fmt_f64(f.t)];
                row.extend(grid.coordinates(flat).into_iter().map(fmt_f64));
                row.push(fmt_f64(f.values[flat]));
                rows.push(row);
            }
        } else {
            // three axis lines through the centre node
            let mid = grid.points() / 2;
            for (axis, name) in axes.iter().enumerate() {
                for j in 0..grid.points() {
                    let mut idx = vec![mid; 3];
                    idx[axis] = j;
                    let flat = grid.flat_index(&idx);
                    let mut row = vec![fmt_f64(f.t), (*name).to_owned()];
                    row.extend(grid.coordinates(flat).into_iter().map(fmt_f64));
                    row.push(fmt_f64(f.values[flat]));
                    rows.push(row);
                }
            }
        }
    }
    Ok(Table {
        metadata: meta,
        header,
        rows,
    })
}

struct Setup {
    n: usize,
    method: MethodArg,
    data: CauchyData,
    grid: GridSpec,
    times: Vec<f64>,
    dt: f64,
}

fn setup(args: &SolveArgs) -> Result<Setup, CliError> {
    let n = args.dim.unwrap_or(2);
    if !(1..=3).contains(&n) {
        return Err(CliError::config("dim", format!("{n} not in 1..=3")));
    }
    let method = args.method.unwrap_or(MethodArg::Spectral);
    match (method, n) {
        (MethodArg::Kirchhoff, 3) | (MethodArg::Poisson, 2) | (MethodArg::Spectral, _) => {}
        (MethodArg::Crosscheck, 2 | 3) => {}
        _ => {
            return Err(CliError::config(
                "method",
                format!("{method:?} is not available in dimension {n}"),
            ));
        }
    }
    let times = args.times.clone().unwrap_or_else(|| vec![0.0, 0.5, 1.0]);
    if times.is_empty() {
        return Err(CliError::config("times", "empty list"));
    }
    if let Some(bad) = times.iter().find(|t| !(**t >= 0.0 && t.is_finite())) {
        return Err(CliError::config("times", format!("{bad} is not a non-negative time")));
    }
    let data = build_data(args, n)?;
    let dt = positive("dt", args.dt.unwrap_or(DEFAULT_DT))?;
    // the residual diagnostic looks one step past the last time
    let t_max = times.iter().copied().fold(0.0, f64::max) + dt;
    let half_extent = match args.half_extent {
        Some(l) => positive("half_extent", l)?,
        None => minimal_half_extent(&data, t_max),
    };
    let grid = match args.points {
        Some(p) => GridSpec::new(n, half_extent, p),
        None => GridSpec::desk(n, half_extent),
    }
    .map_err(|e| CliError::config("points", e))?;
    Ok(Setup {
        n,
        method,
        data,
        grid,
        times,
        dt,
    })
}

fn spectral(setup: &Setup, ctx: &Ctx, report: &mut Report) -> Result<Table, CliError> {
    let Setup {
        grid, data, times, dt, ..
    } = setup;
    let dt = *dt;
    let mut all_times = vec![0.0];
    all_times.extend(times.iter().copied());
    let fields = solve_spectral_many(grid, data, &all_times).map_err(|e| CliError::config("half_extent", e))?;
    let e0 = energy(&fields[0]);
    let mut energies = Vec::new();
    for f in &fields[1..] {
        let e = energy(f);
        energies.push(e);
        let drift = if e0 > 0.0 { (e / e0 - 1.0).abs() } else { e.abs() };
        report
            .records
            .push(Record::new().field("check", "energy").field("t", f.t).checked(
                e,
                e0,
                drift,
                ctx.tol.unwrap_or(ENERGY_TOL),
            ));
        if f.t == 0.0 {
            let worst = (0..grid.len())
                .map(|k| (f.values[k] - data.phi(&grid.coordinates(k))).abs())
                .fold(0.0, f64::max);
            report.records.push(
                Record::new()
                    .field("check", "initial_displacement")
                    .field("t", 0.0)
                    .checked(worst, 0.0, worst, IDENTITY_TOL),
            );
        } else {
            let residual = wave_residual(grid, data, f.t, dt).map_err(|e| CliError::config("half_extent", e))?;
            report.records.push(
                Record::new()
                    .field("check", "residual")
                    .field("t", f.t)
                    .field("dt", dt)
                    .checked(residual, 0.0, residual, RESIDUAL_TOL),
            );
        }
    }
    report.extras.push(("times", times.clone().into()));
    report.extras.push(("energy", energies.into()));
    report.extras.push(("energy_initial", e0.into()));
    let meta = vec![
        "wavekit solve".to_owned(),
        format!(
            "method = spectral, n = {}, N = {}, L = {}",
            grid.dim(),
            grid.points(),
            fmt_f64(grid.half_extent())
        ),
    ];
    grid_table(&fields[1..], meta)
}

struct PointCase {
    x: Vec<f64>,
    t: f64,
    idx: Vec<usize>,
}

fn point_cases(setup: &Setup, samples: usize, ctx: &Ctx) -> Result<Vec<PointCase>, CliError> {
    let positive_times: Vec<f64> = setup.times.iter().copied().filter(|t| *t > 0.0).collect();
    if positive_times.is_empty() {
        return Err(CliError::config("times", "point solvers need a positive time"));
    }
    let grid = &setup.grid;
    // nodes within the central half of the box in every coordinate
    let quarter = grid.points() / 4;
    let mut rng = ctx.rng();
    Ok((0..samples)
        .map(|_| {
            let idx: Vec<usize> = (0..setup.n).map(|_| rng.random_range(quarter..3 * quarter)).collect();
            let t = positive_times[rng.random_range(0..positive_times.len())];
            let x = grid.coordinates(grid.flat_index(&idx));
            PointCase { x, t, idx }
        })
        .collect())
}

fn pointwise(setup: &Setup, args: &SolveArgs, case: &PointCase) -> wavekit::Result<f64> {
    if setup.n == 3 {
        let rule = sphere_rule(3, args.resolution.unwrap_or(24))?;
        solve_kirchhoff_3d(&setup.data, &case.x, case.t, &rule)
    } else {
        solve_poisson_2d(&setup.data, &case.x, case.t, args.resolution.unwrap_or(48))
    }
}

fn points(setup: &Setup, args: &SolveArgs, ctx: &Ctx, report: &mut Report) -> Result<Table, CliError> {
    let samples = args.samples.unwrap_or(5);
    if samples == 0 {
        return Err(CliError::config("samples", "must be at least 1"));
    }
    if let Some(r) = args.resolution {
        if r < 4 {
            return Err(CliError::config("resolution", "must be at least 4"));
        }
    }
    let cases = point_cases(setup, samples, ctx)?;
    let values = ctx.map(&cases, |c| pointwise(setup, args, c));
    let crosscheck = setup.method == MethodArg::Crosscheck;
    let fields = if crosscheck {
        solve_spectral_many(&setup.grid, &setup.data, &setup.times).map_err(|e| CliError::config("half_extent", e))?
    } else {
        Vec::new()
    };
    let name = if setup.n == 3 { "kirchhoff" } else { "poisson" };
    let tol = ctx
        .tol
        .unwrap_or(if setup.n == 3 { KIRCHHOFF_TOL } else { POISSON_TOL });
    let mut rows = Vec::new();
    let mut worst: f64 = 0.0;
    for (case, value) in cases.iter().zip(values) {
        let base = Record::new()
            .field("method", name)
            .field("x", case.x.clone())
            .field("t", case.t);
        let mut row = vec![fmt_f64(case.t)];
        row.extend(case.x.iter().map(|v| fmt_f64(*v)));
        match value {
            Err(e) => {
                report.records.push(base.failed(e.to_string()));
                row.extend([String::new(), String::new()]);
            }
            Ok(v) if crosscheck => {
                let k = setup
                    .times
                    .iter()
                    .position(|t| *t == case.t)
                    .expect("time from the list");
                let oracle = fields[k].value_at(&case.idx);
                worst = worst.max((v - oracle).abs());
                report
                    .records
                    .push(base.field("oracle_method", "spectral").compared(v, oracle, tol));
                row.extend([fmt_f64(v), fmt_f64(oracle)]);
            }
            Ok(v) => {
                report.records.push(base.field("value", v));
                row.extend([fmt_f64(v), String::new()]);
            }
        }
        rows.push(row);
    }
    if crosscheck {
        report.extras.push(("max_discrepancy", worst.into()));
        report.extras.push(("tolerance", tol.into()));
    }
    let mut header = vec!["t"];
    header.extend(&["x", "y", "z"][..setup.n]);
    header.extend([name, "spectral"]);
    Ok(Table {
        metadata: vec![
            "wavekit solve".to_owned(),
            format!("method = {:?}, n = {}", setup.method, setup.n).to_lowercase(),
        ],
        header,
        rows,
    })
}

pub fn run(args: &SolveArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let setup = setup(args)?;
    let mut report = Report::new("solve", Some(ctx.seed));
    let table = match setup.method {
        MethodArg::Spectral => spectral(&setup, ctx, &mut report)?,
        _ => points(&setup, args, ctx, &mut report)?,
    };
    let name = if setup.method == MethodArg::Spectral {
        "solution.csv"
    } else {
        "points.csv"
    };
    Ok(Outcome {
        report,
        files: vec![(name.to_owned(), table.render()?)],
    })
}

use wavekit::specfun::{bessel_j, bessel_j_half, bessel_j_poisson, Order, POISSON_DEFAULT_POINTS};

use super::{Ctx, Outcome};
use crate::config::{range, BesselArgs};
use crate::error::CliError;
use crate::report::{fmt_f64, Record, Report, Table};

pub const DEFAULT_TOL: f64 = 1e-9;

struct Row {
    nu: Order,
    x: f64,
    series: Option<f64>,
    poisson: Option<f64>,
    half: Option<f64>,
    error: Option<String>,
}

impl Row {
    fn routes(&self) -> Vec<f64> {
        [self.series, self.poisson, self.half].into_iter().flatten().collect()
    }

    fn max_pairwise_diff(&self) -> f64 {
        let v = self.routes();
        let mut worst: f64 = 0.0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                worst = worst.max((v[i] - v[j]).abs());
            }
        }
        worst
    }
}

fn lattice(args: &BesselArgs) -> Result<Vec<f64>, CliError> {
    if let Some(xs) = &args.x {
        if xs.is_empty() {
            return Err(CliError::config("x", "empty list"));
        }
        if let Some(bad) = xs.iter().find(|x| !(**x >= 0.0 && x.is_finite())) {
            return Err(CliError::config("x", format!("{bad} is not a non-negative number")));
        }
        return Ok(xs.clone());
    }
    let (lo, hi) = range("x_min/x_max", args.x_min.unwrap_or(0.5), args.x_max.unwrap_or(10.0))?;
    if lo < 0.0 {
        return Err(CliError::config("x_min", format!("{lo} is negative")));
    }
    let count = args.x_count.unwrap_or(20);
    if count < 2 {
        return Err(CliError::config(
            "x_count",
            format!("{count} points cannot span a range"),
        ));
    }
    Ok((0..count)
        .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
        .collect())
}

pub fn run(args: &BesselArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let nus = args.nu.clone().unwrap_or_else(|| vec![0.0, 0.5, 1.0]);
    if nus.is_empty() {
        return Err(CliError::config("nu", "empty list"));
    }
    let orders = nus
        .iter()
        .map(|&v| Order::from_f64(v).map_err(|e| CliError::config("nu", e)))
        .collect::<Result<Vec<_>, _>>()?;
    let xs = lattice(args)?;
    let points = args.poisson_points.unwrap_or(POISSON_DEFAULT_POINTS);
    if points < 2 {
        return Err(CliError::config("poisson_points", "need at least 2"));
    }
    let tol = ctx.tol.unwrap_or(DEFAULT_TOL);

    let cases: Vec<(Order, f64)> = orders.iter().flat_map(|&nu| xs.iter().map(move |&x| (nu, x))).collect();
    let rows = ctx.map(&cases, |&(nu, x)| {
        let mut row = Row {
            nu,
            x,
            series: None,
            poisson: None,
            half: None,
            error: None,
        };
        let result = (|| -> wavekit::Result<()> {
            row.series = Some(bessel_j(nu, x)?);
            if nu.twice() >= 1 {
                row.poisson = Some(bessel_j_poisson(nu, x, points)?);
            }
            if nu == Order::HALF && x > 0.0 {
                row.half = Some(bessel_j_half(x)?);
            }
            Ok(())
        })();
        if let Err(e) = result {
            row.error = Some(e.to_string());
        }
        row
    });

    let mut report = Report::new("bessel-table", None);
    let mut table = Table {
        metadata: vec![
            "wavekit bessel-table".to_owned(),
            format!("tolerance = {}", fmt_f64(tol)),
            format!("poisson_points = {points}"),
        ],
        header: vec!["nu", "x", "series", "poisson", "half_closed", "max_pairwise_diff"],
        rows: Vec::new(),
    };
    let cell = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
    for row in &rows {
        let base = Record::new().field("nu", row.nu.value()).field("x", row.x);
        let diff = row.max_pairwise_diff();
        let record = match &row.error {
            Some(e) => base.failed(e.clone()),
            None => base
                .field("series", row.series)
                .field("poisson", row.poisson)
                .field("half_closed", row.half)
                // the series is the reference route
                .checked(
                    row.series.unwrap_or(f64::NAN),
                    row.series.unwrap_or(f64::NAN),
                    diff,
                    tol,
                ),
        };
        report.records.push(record);
        table.rows.push(vec![
            fmt_f64(row.nu.value()),
            fmt_f64(row.x),
            cell(row.series),
            cell(row.poisson),
            cell(row.half),
            if row.error.is_some() {
                String::new()
            } else {
                fmt_f64(diff)
            },
        ]);
    }
    Ok(Outcome {
        report,
        files: vec![("bessel_table.csv".to_owned(), table.render()?)],
    })
}

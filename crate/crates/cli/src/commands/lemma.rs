use rand::Rng;
use wavekit::kernels::{ascent_step_check, hankel_sine, lemma_closed_form, Region, BOUNDARY_BAND};
use wavekit::quad::OscConfig;
use wavekit::specfun::Order;

use super::{Ctx, Outcome};
use crate::config::{positive, range, LemmaArgs, Pair};
use crate::error::CliError;
use crate::report::{Record, Report};

pub const DEFAULT_TOL: f64 = 5e-3;
pub const DEFAULT_ASCENT_TOL: f64 = 1e-2;
const MAX_STEP: f64 = 1e-3;

fn check(nu: u32, pair: Pair, tol: f64, ascent_tol: f64) -> Record {
    let Pair { r, t } = pair;
    let order = Order::integer(nu);
    let base = Record::new().field("nu", nu as usize).field("r", r).field("t", t);
    if (r - t).abs() < BOUNDARY_BAND * r.max(t) {
        return base.skipped(format!("|R - t| inside the boundary band {BOUNDARY_BAND:e}"));
    }
    let region = Region::of(r, t);
    let base = base.field("region", region.as_str());
    let cfg = OscConfig::default();
    let result = (|| -> wavekit::Result<Record> {
        let integral = hankel_sine(order, r, t, &cfg)?;
        let closed = lemma_closed_form(order, r, t)?;
        let base = base
            .field("integral", integral.value)
            .field("closed_form", closed)
            .field("error_estimate", integral.error_estimate);
        if nu == 0 {
            let allowed = tol.max(3.0 * integral.error_estimate);
            return Ok(base.compared(integral.value, closed, allowed));
        }
        let h = MAX_STEP.min((r - t).abs() / 8.0);
        let chk = ascent_step_check(order, r, t, h, &cfg)?;
        Ok(base.field("step", h).field("error_budget", chk.error_budget).checked(
            chk.lhs,
            chk.rhs,
            chk.residual,
            ascent_tol,
        ))
    })();
    result.unwrap_or_else(|e| {
        Record::new()
            .field("nu", nu as usize)
            .field("r", r)
            .field("t", t)
            .failed(e.to_string())
    })
}

pub fn run(args: &LemmaArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let orders = args.orders.clone().unwrap_or_else(|| vec![0, 1, 2]);
    if orders.is_empty() {
        return Err(CliError::config("orders", "empty list"));
    }
    if let Some(bad) = orders.iter().find(|k| **k > 2) {
        return Err(CliError::config("orders", format!("{bad} not in {{0, 1, 2}}")));
    }
    let tol = positive("tol", ctx.tol.unwrap_or(DEFAULT_TOL))?;
    let ascent_tol = positive("ascent_tol", args.ascent_tol.unwrap_or(DEFAULT_ASCENT_TOL))?;
    let pairs = match &args.pairs {
        Some(p) if p.is_empty() => return Err(CliError::config("pairs", "empty list")),
        Some(p) => {
            for pair in p {
                positive("pairs", pair.r)?;
                positive("pairs", pair.t)?;
            }
            p.clone()
        }
        None => {
            let samples = args.samples.unwrap_or(10);
            if samples == 0 {
                return Err(CliError::config("samples", "must be at least 1"));
            }
            let (lo, hi) = range("r_min/r_max", args.r_min.unwrap_or(0.5), args.r_max.unwrap_or(3.0))?;
            positive("r_min", lo)?;
            let mut rng = ctx.rng();
            (0..samples)
                .map(|_| Pair {
                    r: rng.random_range(lo..hi),
                    t: rng.random_range(lo..hi),
                })
                .collect()
        }
    };

    let cases: Vec<(u32, Pair)> = orders
        .iter()
        .flat_map(|&k| pairs.iter().map(move |&p| (k, p)))
        .collect();
    let mut report = Report::new("lemma-verify", args.pairs.is_none().then_some(ctx.seed));
    report.records = ctx.map(&cases, |&(k, p)| check(k, p, tol, ascent_tol));
    Ok(Outcome {
        report,
        files: Vec::new(),
    })
}

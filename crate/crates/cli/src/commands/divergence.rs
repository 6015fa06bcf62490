use clap::{Arg, ArgMatches};
use pade_lab::blowup::{arg_cauchy_gaps, divergence_experiment, linear_regression, log_grid, DivergenceReport, Regression};
use serde::Serialize;

use super::{count, float, get_f64, get_usize};
use crate::config::Context;
use crate::error::{CliError, CliResult};
use crate::report::{num, Report, Table};
use crate::svg::Plot;
use crate::Experiment;

pub struct Divergence;

#[derive(Serialize)]
struct Gap {
    k: u32,
    gap: f64,
}

#[derive(Serialize)]
struct DivergenceOut {
    #[serde(flatten)]
    report: DivergenceReport,
    /// `I` against `ln ln(1/ε)`; absent with fewer than two rows.
    regression: Option<Regression>,
    /// `|arg h(2^-k) - arg h(2^-(k-1))|`
    arg_cauchy_gaps: Vec<Gap>,
}

fn lnln(eps: f64) -> f64 {
    (1.0 / eps).ln().ln()
}

impl Experiment for Divergence {
    fn name(&self) -> &'static str {
        "divergence"
    }

    fn about(&self) -> &'static str {
        "Partial integrals of the boundary integrand h from ε up to t0"
    }

    fn args(&self) -> Vec<Arg> {
        vec![
            float("eps-min", "1e-8", "Smallest ε"),
            float("eps-max", "1e-2", "Largest ε"),
            count("per-decade", "1", "ε values per decade"),
            float("t0", "0.5", "Upper limit, in (0, 1)"),
            count("gap-k-max", "25", "Report argument gaps for t = 2^-k up to this k"),
        ]
    }

    fn run(&self, m: &ArgMatches, _ctx: &Context) -> CliResult<Report> {
        let eps = log_grid(get_f64(m, "eps-min"), get_f64(m, "eps-max"), get_usize(m, "per-decade"))?;
        let k_max = u32::try_from(get_usize(m, "gap-k-max"))
            .ok()
            .filter(|&k| k <= 1000)
            .ok_or_else(|| CliError::Input("--gap-k-max must be at most 1000".into()))?;
        let report = divergence_experiment(&eps, get_f64(m, "t0"))?;

        let mut table = Table::new(&["eps", "I", "J", "comparator", "arg_h"]);
        for r in &report.rows {
            table.push(vec![num(r.eps), num(r.i), num(r.j), num(r.comparator), num(r.arg_h)]);
        }
        let xs: Vec<f64> = report.rows.iter().map(|r| lnln(r.eps)).collect();
        let is: Vec<f64> = report.rows.iter().map(|r| r.i).collect();
        let regression = if xs.len() >= 2 { Some(linear_regression(&xs, &is)?) } else { None };
        let series = |f: &dyn Fn(&pade_lab::blowup::DivergenceRow) -> f64| {
            report.rows.iter().map(|r| (lnln(r.eps), f(r))).collect::<Vec<_>>()
        };
        let plot = Plot::new("Partial integrals of h", "ln ln(1/ε)", "value")
            .line("I = |∫h|", series(&|r| r.i))
            .line("J = ∫|h|", series(&|r| r.j))
            .line("comparator", series(&|r| r.comparator));
        let gaps = arg_cauchy_gaps(k_max)?.into_iter().map(|(k, gap)| Gap { k, gap }).collect();
        let out = DivergenceOut { report, regression, arg_cauchy_gaps: gaps };
        Ok(Report::new(&out, table)?.with_plot(plot))
    }
}

use clap::{Arg, ArgMatches};
use pade_lab::approx::{universality_pipeline, CenterStatus, FitOptions, UniversalityConfig, UniversalityOutcome};
use serde::Serialize;

use super::{count, float, get_f64, get_usize, req_str, text};
use crate::config::Context;
use crate::error::CliResult;
use crate::report::{num, Report, Table};
use crate::Experiment;

pub struct Universality;

#[derive(Serialize)]
struct UniversalityOut {
    target: String,
    approximand: String,
    k: String,
    l: String,
    delta: String,
    outcome: UniversalityOutcome,
}

impl Experiment for Universality {
    fn name(&self) -> &'static str {
        "universality"
    }

    fn about(&self) -> &'static str {
        "Build a rational f near a target on K and an approximand on L, then certify it at every center of L"
    }

    fn args(&self) -> Vec<Arg> {
        vec![
            text("target", Some("inv-z-minus-2"), "Rational to approximate chordally on K"),
            text("approximand", Some("z-squared"), "Function to approximate with derivatives on L"),
            text("k", Some("circle:2,0,0.25,64"), "Sample K"),
            text("l", Some("disc-grid:0,0,0.5,8,10"), "Sample L (the Padé centers)"),
            text("delta", Some("disc-grid:0,0,0.5,8,10"), "Sample Δ for the derivative checks"),
            text("omega", Some("unit-disc"), "Domain that must stay pole-free"),
            count("s", "10", "Accuracy index: errors must stay below 1/s"),
            float("tol", "0.05", "Fit tolerance"),
            count("max-degree", "40", "Largest fit degree tried"),
            count("fit-order", "1", "Derivatives of the approximand matched on L"),
            count("derivative-orders", "3", "Derivatives 0..=this compared on Δ"),
            Arg::new("d")
                .long("d")
                .help("Fixed perturbation size instead of the automatic choice")
                .value_parser(clap::value_parser!(f64)),
        ]
    }

    fn run(&self, m: &ArgMatches, ctx: &Context) -> CliResult<Report> {
        let owned = |id: &str| req_str(m, id).map(str::to_string);
        let (target, approximand) = (owned("target")?, owned("approximand")?);
        let (k, l, delta) = (owned("k")?, owned("l")?, owned("delta")?);
        let cfg = UniversalityConfig {
            k: ctx.sample(&k)?,
            l: ctx.sample(&l)?,
            delta: ctx.sample(&delta)?,
            target: ctx.rational(&target)?,
            approximand: ctx.function(&approximand)?,
            omega: ctx.domain(req_str(m, "omega")?)?,
            s: get_usize(m, "s"),
            fit_order: get_usize(m, "fit-order"),
            fit: FitOptions { max_degree: get_usize(m, "max-degree"), tol: get_f64(m, "tol"), ..FitOptions::default() },
            derivative_orders: get_usize(m, "derivative-orders"),
            perturbation: m.get_one::<f64>("d").copied(),
        };
        let outcome = universality_pipeline(&cfg)?;

        let mut table = Table::new(&[
            "center_re",
            "center_im",
            "status",
            "hankel_abs",
            "normal",
            "common_zero_k",
            "common_zero_delta",
            "sup_chordal_k",
            "max_derivative_error",
        ]);
        for c in &outcome.certificate.centers {
            let status = match c.status {
                CenterStatus::Ok => "ok",
                CenterStatus::Degenerate => "degenerate",
                CenterStatus::Singular => "singular",
            };
            table.push(vec![
                num(c.center.re),
                num(c.center.im),
                status.to_string(),
                num(c.hankel.norm()),
                c.normal.to_string(),
                num(c.common_zero_k),
                num(c.common_zero_delta),
                num(c.sup_chordal_k),
                num(c.derivative_errors.iter().copied().fold(0.0, f64::max)),
            ]);
        }
        Report::new(&UniversalityOut { target, approximand, k, l, delta, outcome }, table)
    }
}

use clap::{Arg, ArgMatches};
use num_complex::Complex64;
use pade_lab::sphere::{rationalize_coefficients, sup_chordal};
use pade_lab::RationalFunction;
use serde::Serialize;

use super::{get_list, req_str, text};
use crate::config::Context;
use crate::error::{CliError, CliResult};
use crate::report::{num, Report, Table};
use crate::svg::Plot;
use crate::Experiment;

pub struct Rationalize;

#[derive(Serialize)]
struct Row {
    k: u32,
    sup_chordal: f64,
    argmax: Complex64,
    rounded: RationalFunction,
}

#[derive(Serialize)]
struct RationalizeOut {
    rational: RationalFunction,
    sample: String,
    mesh: f64,
    rows: Vec<Row>,
    non_increasing: bool,
}

impl Experiment for Rationalize {
    fn name(&self) -> &'static str {
        "rationalize"
    }

    fn about(&self) -> &'static str {
        "Round coefficients to dyadic precision 2^-k and measure the chordal error"
    }

    fn args(&self) -> Vec<Arg> {
        vec![
            text("rational", Some("pi-rational"), "Named rational"),
            text("precisions", Some("8,16,24,32,40"), "Comma-separated k values"),
            text("sample", Some("circle:0,0,1,720"), "Sample name or generator spec"),
        ]
    }

    fn run(&self, m: &ArgMatches, ctx: &Context) -> CliResult<Report> {
        let r = ctx.rational(req_str(m, "rational")?)?;
        let sname = req_str(m, "sample")?;
        let k = ctx.sample(sname)?;
        let mut rows = Vec::new();
        for v in get_list(m, "precisions")? {
            if !(v >= 0.0 && v.fract() == 0.0 && v <= 1074.0) {
                return Err(CliError::Input(format!("precision {v} is not an integer in 0..=1074")));
            }
            let bits = v as u32;
            let rounded = rationalize_coefficients(&r, bits)?;
            let sup = sup_chordal(|z| r.eval(z), |z| rounded.eval(z), &k)?;
            rows.push(Row { k: bits, sup_chordal: sup.value, argmax: sup.argmax, rounded });
        }
        let mut table = Table::new(&["k", "sup_chordal"]);
        for row in &rows {
            table.push(vec![row.k.to_string(), num(row.sup_chordal)]);
        }
        let plot = Plot::new("Chordal error after dyadic rounding", "k", "log10 sup chordal")
            .line("sup", rows.iter().map(|r| (r.k as f64, r.sup_chordal.max(1e-300).log10())).collect());
        let non_increasing = rows.windows(2).all(|w| w[1].sup_chordal <= w[0].sup_chordal);
        let out = RationalizeOut { rational: r, sample: sname.to_string(), mesh: k.mesh(), rows, non_increasing };
        Ok(Report::new(&out, table)?.with_plot(plot))
    }
}

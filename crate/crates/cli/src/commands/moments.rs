use clap::{Arg, ArgMatches};
use num_complex::Complex64;
use pade_lab::domains::{moment_test_about, Cycle};
use serde::Serialize;

use super::{count, float, get_complex, get_f64, get_usize, req_str, text};
use crate::config::{parse_cycle, Context};
use crate::error::CliResult;
use crate::report::{num, Report, Table};
use crate::Experiment;

pub struct Moments;

#[derive(Serialize)]
struct MomentsOut {
    f: String,
    cycle: Cycle,
    about: Complex64,
    tol: f64,
    moments: Vec<Complex64>,
    max_abs: f64,
}

impl Experiment for Moments {
    fn name(&self) -> &'static str {
        "moments"
    }

    fn about(&self) -> &'static str {
        "Contour moments ∮ (z - a)^i f(z) dz for i = 0..n-1"
    }

    fn args(&self) -> Vec<Arg> {
        vec![
            text("f", Some("exp"), "Named function"),
            text("cycle", Some("unit-circle"), "unit-circle, circle:cx,cy,r or square:cx,cy,half_side"),
            count("n", "3", "Number of moments"),
            text("about", Some("0"), "Base point a"),
            float("tol", "1e-12", "Quadrature tolerance"),
        ]
    }

    fn run(&self, m: &ArgMatches, ctx: &Context) -> CliResult<Report> {
        let fname = req_str(m, "f")?;
        let f = ctx.function(fname)?;
        let cycle = parse_cycle(req_str(m, "cycle")?)?;
        let about = get_complex(m, "about")?;
        let tol = get_f64(m, "tol");
        let moments = moment_test_about(|z| f.eval_finite(z), &cycle, get_usize(m, "n"), about, tol)?;
        let mut table = Table::new(&["i", "re", "im", "abs"]);
        for (i, v) in moments.iter().enumerate() {
            table.push(vec![i.to_string(), num(v.re), num(v.im), num(v.norm())]);
        }
        let max_abs = moments.iter().map(|v| v.norm()).fold(0.0, f64::max);
        Report::new(&MomentsOut { f: fname.to_string(), cycle, about, tol, moments, max_abs }, table)
    }
}

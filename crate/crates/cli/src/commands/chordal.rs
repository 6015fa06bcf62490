use clap::{Arg, ArgMatches};
use num_complex::Complex64;
use pade_lab::sphere::{chordal, sup_chordal};
use rayon::prelude::*;
use serde::Serialize;

use super::{req_str, text};
use crate::config::Context;
use crate::error::CliResult;
use crate::report::{num, Report, Table};
use crate::Experiment;

pub struct Chordal;

#[derive(Serialize)]
struct ChordalOut<'a> {
    f: &'a str,
    g: &'a str,
    sample: &'a str,
    points: usize,
    sup: f64,
    argmax: Complex64,
    mesh: f64,
}

impl Experiment for Chordal {
    fn name(&self) -> &'static str {
        "chordal"
    }

    fn about(&self) -> &'static str {
        "Sampled chordal distance between two named functions"
    }

    fn args(&self) -> Vec<Arg> {
        vec![
            text("f", Some("geometric"), "First function"),
            text("g", Some("inv-z-minus-2"), "Second function"),
            text("sample", Some("circle:0,0,0.5,64"), "Sample name or generator spec"),
        ]
    }

    fn run(&self, m: &ArgMatches, ctx: &Context) -> CliResult<Report> {
        let (fname, gname) = (req_str(m, "f")?, req_str(m, "g")?);
        let (f, g) = (ctx.function(fname)?, ctx.function(gname)?);
        let sname = req_str(m, "sample")?;
        let k = ctx.sample(sname)?;
        let sup = sup_chordal(|z| f.eval(z), |z| g.eval(z), &k)?;
        let per: Vec<f64> = k.points().par_iter().map(|&z| Ok(chordal(f.eval(z)?, g.eval(z)?))).collect::<pade_lab::Result<_>>()?;
        let mut table = Table::new(&["re", "im", "chordal"]);
        for (z, d) in k.points().iter().zip(per) {
            table.push(vec![num(z.re), num(z.im), num(d)]);
        }
        let out =
            ChordalOut { f: fname, g: gname, sample: sname, points: k.len(), sup: sup.value, argmax: sup.argmax, mesh: sup.mesh };
        Report::new(&out, table)
    }
}

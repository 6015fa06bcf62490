use clap::{Arg, ArgMatches};
use num_complex::Complex64;
use pade_lab::approx::volterra_apply;
use pade_lab::domains::starlike_antiderivative;
use pade_lab::PowerSeries;
use serde::Serialize;

use super::{count, flag, get_complex, get_flag, get_usize, req_str, text};
use crate::config::Context;
use crate::error::CliResult;
use crate::fixtures;
use crate::report::{complex_cells, Report, Table};
use crate::Experiment;

pub struct Volterra;

const CHECK_TOL: f64 = 1e-13;

#[derive(Serialize)]
struct CheckPoint {
    z: Complex64,
    series: Complex64,
    quadrature: Complex64,
    error: f64,
}

#[derive(Serialize)]
struct VolterraOut {
    f: String,
    g: String,
    center: Complex64,
    /// Exact through its truncation order.
    result: PowerSeries,
    /// Quadrature of `f g'` with both truncations taken as polynomials.
    checks: Vec<CheckPoint>,
    max_check_error: f64,
}

/// The series as a polynomial of order `order`, padded with zeros.
pub fn pad(s: &PowerSeries, order: usize) -> PowerSeries {
    let mut c = s.coefficients().to_vec();
    c.resize(order.max(c.len() - 1) + 1, Complex64::new(0.0, 0.0));
    PowerSeries::new(s.center(), c).expect("zero padding keeps coefficients finite")
}

/// `T_g(f)` with the truncated series read as polynomials: no term of
/// `f g'` is dropped, so the result is exact.
pub fn exact_transform(f: &PowerSeries, g: &PowerSeries) -> pade_lab::Result<PowerSeries> {
    let total = f.truncation_order() + g.truncation_order();
    volterra_apply(&pad(f, total), &pad(g, total + 1))
}

/// `∫_c^z f g'` along the segment, against `t` evaluated at `z`.
fn segment_check(f: &PowerSeries, g: &PowerSeries, t: &PowerSeries, z: Complex64) -> CliResult<CheckPoint> {
    let dg = g.to_local_polynomial().derivative();
    let c = f.center();
    let quadrature = starlike_antiderivative(|s| Ok(f.eval(s) * dg.eval(s - c)), c, z, CHECK_TOL)?;
    let series = t.eval(z);
    Ok(CheckPoint { z, series, quadrature, error: (series - quadrature).norm() })
}

impl Experiment for Volterra {
    fn name(&self) -> &'static str {
        "volterra"
    }

    fn about(&self) -> &'static str {
        "Coefficients of T_g(f) = ∫ f g' on truncated series, checked against quadrature"
    }

    fn args(&self) -> Vec<Arg> {
        vec![
            text("f", Some("exp"), "Named function for f"),
            text("g", Some("geometric"), "Named function for the symbol g"),
            flag("random", "Use a seeded random pair of series instead"),
            count("order", "12", "Truncation order of f (g gets one more)"),
            text("center", Some("0"), "Common expansion center"),
            text("check", Some("circle:0,0,0.4,10"), "Points where quadrature is compared"),
        ]
    }

    fn run(&self, m: &ArgMatches, ctx: &Context) -> CliResult<Report> {
        let center = get_complex(m, "center")?;
        let order = get_usize(m, "order");
        let (fname, gname, f, g) = if get_flag(m, "random") {
            let mut r = fixtures::rng(ctx.seed);
            let f = fixtures::random_series(&mut r, center, order);
            let g = fixtures::random_series(&mut r, center, order + 1);
            (format!("random:{}", ctx.seed), format!("random:{}", ctx.seed), f, g)
        } else {
            let (a, b) = (req_str(m, "f")?, req_str(m, "g")?);
            (a.to_string(), b.to_string(), ctx.function(a)?.taylor(center, order)?, ctx.function(b)?.taylor(center, order + 1)?)
        };
        let t = volterra_apply(&f, &g)?;
        let exact = exact_transform(&f, &g)?;
        let pts = ctx.sample(req_str(m, "check")?)?;
        let checks: Vec<CheckPoint> = pts.points().iter().map(|&z| segment_check(&f, &g, &exact, z)).collect::<CliResult<_>>()?;
        let mut table = Table::new(&["k", "re", "im"]);
        for (k, c) in t.coefficients().iter().enumerate() {
            let [a, b] = complex_cells(*c);
            table.push(vec![k.to_string(), a, b]);
        }
        let max_check_error = checks.iter().map(|c| c.error).fold(0.0, f64::max);
        Report::new(&VolterraOut { f: fname, g: gname, center, result: t, checks, max_check_error }, table)
    }
}

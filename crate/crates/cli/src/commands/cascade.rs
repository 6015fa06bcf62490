use clap::{Arg, ArgMatches};
use num_complex::Complex64;
use pade_lab::approx::{antiderivative_cascade, cascade_bounds, derivative_errors, CascadeBound};
use pade_lab::Polynomial;
use serde::Serialize;

use super::{count, float, get_complex, get_f64, get_usize, req_str, text};
use crate::config::Context;
use crate::error::{CliError, CliResult};
use crate::report::{num, Report, Table};
use crate::Experiment;

pub struct Cascade;

#[derive(Serialize)]
struct Level {
    k: usize,
    error: f64,
    /// `ε / (M + 1)^k`
    threshold: f64,
    within: bool,
    propagated_bound: f64,
}

#[derive(Serialize)]
struct CascadeOut {
    f: String,
    z0: Complex64,
    n: usize,
    taylor_degree: usize,
    path_budget: f64,
    eps: f64,
    grid: String,
    grid_points: usize,
    polynomial: Polynomial,
    levels: Vec<Level>,
    all_within: bool,
}

impl Experiment for Cascade {
    fn name(&self) -> &'static str {
        "cascade"
    }

    fn about(&self) -> &'static str {
        "Approximate f^(n) by a Taylor polynomial and integrate it back n times"
    }

    fn args(&self) -> Vec<Arg> {
        vec![
            text("f", Some("exp"), "Named function"),
            text("domain", Some("unit-disc"), "Domain (its path budget M sets the thresholds)"),
            text("z0", Some("0"), "Base point of the cascade"),
            count("n", "3", "Number of integrations"),
            count("taylor-degree", "12", "Degree of the polynomial for f^(n)"),
            text("grid", Some("disc-grid:0,0,1,8,25"), "Sample where the errors are measured"),
            float("eps", "1e-4", "Target accuracy ε"),
        ]
    }

    fn run(&self, m: &ArgMatches, ctx: &Context) -> CliResult<Report> {
        let fname = req_str(m, "f")?;
        let f = ctx.function(fname)?;
        let domain = ctx.domain(req_str(m, "domain")?)?;
        let z0 = get_complex(m, "z0")?;
        if !domain.contains(z0) {
            return Err(CliError::Core(pade_lab::Error::OutsideDomain(z0)));
        }
        let (n, deg, eps) = (get_usize(m, "n"), get_usize(m, "taylor-degree"), get_f64(m, "eps"));
        let gname = req_str(m, "grid")?;
        let grid = ctx.sample(gname)?;

        // p_n: the degree-`deg` Taylor polynomial of f^(n) at z0, in powers of z
        let local = f.taylor(z0, deg + n)?.to_local_polynomial();
        let top = local.nth_derivative(n).shift(-z0);
        let values = f.derivatives(z0, n.saturating_sub(1))?;
        let p = antiderivative_cascade(&values[..n], &top, z0, n)?;

        let errors = derivative_errors(f.as_ref(), &p, grid.points(), n)?;
        let budget = domain.path_budget().m;
        let bounds: Vec<CascadeBound> = cascade_bounds(&errors, budget);
        let levels: Vec<Level> = bounds
            .iter()
            .map(|b| {
                let threshold = eps / (budget + 1.0).powi(b.level as i32);
                Level { k: b.level, error: b.error, threshold, within: b.error < threshold, propagated_bound: b.bound }
            })
            .collect();

        let mut table = Table::new(&["k", "error", "threshold", "within", "propagated_bound"]);
        for l in &levels {
            table.push(vec![l.k.to_string(), num(l.error), num(l.threshold), l.within.to_string(), num(l.propagated_bound)]);
        }
        let out = CascadeOut {
            f: fname.to_string(),
            z0,
            n,
            taylor_degree: deg,
            path_budget: budget,
            eps,
            grid: gname.to_string(),
            grid_points: grid.len(),
            polynomial: p,
            all_within: levels.iter().all(|l| l.within),
            levels,
        };
        Report::new(&out, table)
    }
}

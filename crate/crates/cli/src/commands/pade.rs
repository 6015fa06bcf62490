use clap::{Arg, ArgMatches};
use num_complex::Complex64;
use pade_lab::pade::pade_construct;
use pade_lab::{Polynomial, PowerSeries, RationalFunction};
use serde::Serialize;

use super::{count, flag, get_complex, get_flag, get_str, get_usize, text};
use crate::config::Context;
use crate::error::{CliError, CliResult};
use crate::fixtures;
use crate::report::{complex_cells, Report, Table};
use crate::Experiment;

pub struct Pade;

#[derive(Serialize)]
struct Jacobi {
    numerator: Polynomial,
    denominator: Polynomial,
}

#[derive(Serialize)]
struct PadeOut {
    source: String,
    p: usize,
    q: usize,
    center: Complex64,
    normal: bool,
    hankel: Complex64,
    /// Coefficients below are in powers of `z - center`.
    basis: &'static str,
    /// `denominator(center) = 1` when that value is nonzero.
    normalized_at_center: bool,
    numerator: Polynomial,
    denominator: Polynomial,
    series: PowerSeries,
    /// Lowest terms in powers of `z`, monic denominator.
    rational: Option<RationalFunction>,
    jacobi: Jacobi,
}

// dividing by a real b0 turns exact zeros into -0.0
fn unsigned_zeros(p: &Polynomial) -> Polynomial {
    Polynomial::new(p.coeffs().iter().map(|c| c + Complex64::new(0.0, 0.0)).collect())
}

impl Experiment for Pade {
    fn name(&self) -> &'static str {
        "pade"
    }

    fn about(&self) -> &'static str {
        "The [p/q] Padé approximant of a named function, rational or seeded random series"
    }

    fn args(&self) -> Vec<Arg> {
        vec![
            text("builtin", None, "Named function (exp, geometric, log1m, ...)"),
            text("rational", None, "Named rational from the config or the builtins"),
            flag("random", "Use a seeded random series instead"),
            count("p", "1", "Numerator degree"),
            count("q", "1", "Denominator degree"),
            text("center", Some("0"), "Expansion center `re` or `re,im`"),
        ]
    }

    fn run(&self, m: &ArgMatches, ctx: &Context) -> CliResult<Report> {
        let (p, q) = (get_usize(m, "p"), get_usize(m, "q"));
        let center = get_complex(m, "center")?;
        let order = p + q;
        let (source, series) = match (get_str(m, "builtin"), get_str(m, "rational"), get_flag(m, "random")) {
            (Some(name), None, false) => (name.to_string(), ctx.function(name)?.taylor(center, order)?),
            (None, Some(name), false) => (name.to_string(), ctx.rational(name)?.taylor(center, order)?),
            (None, None, true) => (
                format!("random:{}", ctx.seed),
                fixtures::random_series(&mut fixtures::rng(ctx.seed), center, order),
            ),
            _ => return Err(CliError::Input("give exactly one of --builtin, --rational, --random".into())),
        };
        let approx = pade_construct(&series, p, q)?;
        let b0 = approx.denominator.coeff(0);
        let normalized = b0.norm() > 0.0;
        let (num, den) = if normalized {
            (unsigned_zeros(&approx.numerator.scale(b0.inv())), unsigned_zeros(&approx.denominator.scale(b0.inv())))
        } else {
            (approx.numerator.clone(), approx.denominator.clone())
        };

        let mut table = Table::new(&["k", "num_re", "num_im", "den_re", "den_im"]);
        for k in 0..=p.max(q) {
            let [a, b] = complex_cells(num.coeff(k));
            let [c, d] = complex_cells(den.coeff(k));
            table.push(vec![k.to_string(), a, b, c, d]);
        }
        let out = PadeOut {
            source,
            p,
            q,
            center,
            normal: approx.normal,
            hankel: approx.hankel,
            basis: "z - center",
            normalized_at_center: normalized,
            numerator: num,
            denominator: den,
            series,
            rational: approx.to_rational().ok(),
            jacobi: Jacobi { numerator: approx.numerator.clone(), denominator: approx.denominator.clone() },
        };
        Report::new(&out, table)
    }
}

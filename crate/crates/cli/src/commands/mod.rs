//! The subcommands, plus small helpers for reading their flags.

use clap::{value_parser, Arg, ArgMatches};
use num_complex::Complex64;

use crate::config::{parse_complex, parse_floats};
use crate::error::{CliError, CliResult};
use crate::Experiment;

mod cascade;
mod chordal;
mod divergence;
mod moments;
mod pade;
mod rationalize;
mod universality;
pub mod volterra;

pub fn builtin() -> Vec<Box<dyn Experiment>> {
    vec![
        Box::new(pade::Pade),
        Box::new(chordal::Chordal),
        Box::new(rationalize::Rationalize),
        Box::new(universality::Universality),
        Box::new(cascade::Cascade),
        Box::new(moments::Moments),
        Box::new(volterra::Volterra),
        Box::new(divergence::Divergence),
    ]
}

pub(crate) fn text(id: &'static str, default: Option<&'static str>, help: &'static str) -> Arg {
    let a = Arg::new(id).long(id).help(help).allow_hyphen_values(true);
    match default {
        Some(d) => a.default_value(d),
        None => a,
    }
}

pub(crate) fn float(id: &'static str, default: &'static str, help: &'static str) -> Arg {
    Arg::new(id).long(id).help(help).value_parser(value_parser!(f64)).allow_negative_numbers(true).default_value(default)
}

pub(crate) fn count(id: &'static str, default: &'static str, help: &'static str) -> Arg {
    Arg::new(id).long(id).help(help).value_parser(value_parser!(usize)).default_value(default)
}

pub(crate) fn flag(id: &'static str, help: &'static str) -> Arg {
    Arg::new(id).long(id).help(help).action(clap::ArgAction::SetTrue)
}

pub(crate) fn get_str<'a>(m: &'a ArgMatches, id: &str) -> Option<&'a str> {
    m.get_one::<String>(id).map(String::as_str)
}

pub(crate) fn req_str<'a>(m: &'a ArgMatches, id: &str) -> CliResult<&'a str> {
    get_str(m, id).ok_or_else(|| CliError::Input(format!("--{id} is required")))
}

pub(crate) fn get_f64(m: &ArgMatches, id: &str) -> f64 {
    *m.get_one::<f64>(id).expect("defaulted flag")
}

pub(crate) fn get_usize(m: &ArgMatches, id: &str) -> usize {
    *m.get_one::<usize>(id).expect("defaulted flag")
}

pub(crate) fn get_flag(m: &ArgMatches, id: &str) -> bool {
    m.get_flag(id)
}

pub(crate) fn get_complex(m: &ArgMatches, id: &str) -> CliResult<Complex64> {
    parse_complex(req_str(m, id)?)
}

pub(crate) fn get_list(m: &ArgMatches, id: &str) -> CliResult<Vec<f64>> {
    parse_floats(req_str(m, id)?)
}

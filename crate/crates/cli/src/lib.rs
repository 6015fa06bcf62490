//! `pade-lab` command line: one subcommand per experiment, chosen at runtime
//! from an [`ExperimentRegistry`].

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{value_parser, Arg, ArgMatches, Command};

pub mod commands;
pub mod config;
pub mod error;
pub mod fixtures;
pub mod report;
pub mod svg;

use config::{Config, Context};
use error::{CliResult, EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE};
use report::{emit_report, Format, Report};

/// Seed used by every randomized fixture unless `--seed` says otherwise.
pub const DEFAULT_SEED: u64 = 0x5EED_C0FFEE;

/// Caps the rayon pool when set to a positive integer.
pub const THREADS_ENV: &str = "PADE_LAB_THREADS";

/// A subcommand. Implementors declare their flags and turn parsed matches
/// into a [`Report`]; writing the report is left to the dispatcher.
pub trait Experiment: Send + Sync {
    fn name(&self) -> &'static str;
    fn about(&self) -> &'static str;
    fn args(&self) -> Vec<Arg>;
    fn run(&self, matches: &ArgMatches, ctx: &Context) -> CliResult<Report>;
}

#[derive(Default)]
pub struct ExperimentRegistry {
    entries: BTreeMap<&'static str, Box<dyn Experiment>>,
}

impl ExperimentRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_builtins() -> Self {
        let mut reg = Self::new();
        for e in commands::builtin() {
            reg.register(e);
        }
        reg
    }

    pub fn register(&mut self, e: Box<dyn Experiment>) {
        self.entries.insert(e.name(), e);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Experiment> {
        self.entries.get(name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    /// The full clap command tree.
    pub fn command(&self) -> Command {
        let mut cmd = Command::new("pade-lab")
            .about("Padé approximation, chordal universality and integration-operator experiments")
            .version(env!("CARGO_PKG_VERSION"))
            .subcommand_required(true)
            .arg_required_else_help(true)
            .arg(Arg::new("out").long("out").global(true).value_parser(value_parser!(PathBuf)).help(
                "Write the main report here instead of stdout; the extension picks the format",
            ))
            .arg(
                Arg::new("format")
                    .long("format")
                    .global(true)
                    .value_parser(["json", "csv", "svg"])
                    .help("Format of the main report [default: from --out, else json]"),
            )
            .arg(Arg::new("csv").long("csv").global(true).value_parser(value_parser!(PathBuf)).help("Also write the table as CSV"))
            .arg(Arg::new("svg").long("svg").global(true).value_parser(value_parser!(PathBuf)).help("Also write the plot as SVG"))
            .arg(
                Arg::new("config")
                    .long("config")
                    .global(true)
                    .value_parser(value_parser!(PathBuf))
                    .help("JSON file naming domains, samples and rationals"),
            )
            .arg(
                Arg::new("seed")
                    .long("seed")
                    .global(true)
                    .value_parser(value_parser!(u64))
                    .default_value(DEFAULT_SEED.to_string())
                    .help("Seed for randomized inputs"),
            );
        for e in self.entries.values() {
            cmd = cmd.subcommand(Command::new(e.name()).about(e.about()).args(e.args()));
        }
        cmd
    }
}

fn configure_threads() {
    let n = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()).filter(|&n| n > 0);
    if let Some(n) = n {
        // a second call in the same process (tests) finds the pool built already
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn execute(reg: &ExperimentRegistry, matches: &ArgMatches) -> CliResult<()> {
    let (name, sub) = matches.subcommand().expect("clap enforces a subcommand");
    let exp = reg.get(name).expect("clap only accepts registered subcommands");
    let config = match sub.get_one::<PathBuf>("config") {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let seed = *sub.get_one::<u64>("seed").expect("seed has a default");
    let ctx = Context::new(config, seed);
    let report = exp.run(sub, &ctx)?;

    let out = sub.get_one::<PathBuf>("out");
    let format = match sub.get_one::<String>("format") {
        Some(f) => Format::parse(f)?,
        None => out.map_or(Format::Json, |p| Format::for_path(p)),
    };
    emit_report(&report, format, out.map(PathBuf::as_path))?;
    if let Some(p) = sub.get_one::<PathBuf>("csv") {
        emit_report(&report, Format::Csv, Some(p))?;
    }
    if let Some(p) = sub.get_one::<PathBuf>("svg") {
        emit_report(&report, Format::Svg, Some(p))?;
    }
    Ok(())
}

/// Parse `argv`, run the experiment and return the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let reg = ExperimentRegistry::with_builtins();
    let matches = match reg.command().try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                ErrorKind::InvalidSubcommand
                | ErrorKind::MissingSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => EXIT_USAGE,
                _ => EXIT_PRECONDITION,
            };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    match execute(&reg, &matches) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("pade-lab: {e}");
            e.exit_code()
        }
    }
}

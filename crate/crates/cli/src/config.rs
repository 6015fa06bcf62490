//! JSON config: named domains, samples and rational functions that flags
//! can refer to, plus the lookups that fall back to builtins and inline specs.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use pade_lab::domains::{Cycle, DomainSpec, PolylinePath};
use pade_lab::{AnalyticFunction, CompactSample, FunctionRegistry, Polynomial, RationalFunction};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SampleEntry {
    /// A generator spec such as `circle:2,0,0.25,64`.
    Spec(String),
    Explicit(CompactSample),
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub domains: BTreeMap<String, DomainSpec>,
    #[serde(default)]
    pub samples: BTreeMap<String, SampleEntry>,
    #[serde(default)]
    pub rationals: BTreeMap<String, RationalFunction>,
}

impl Config {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

fn rational(num: &[f64], den: &[f64]) -> RationalFunction {
    RationalFunction::normalize(&Polynomial::from_real(num), &Polynomial::from_real(den))
        .expect("builtin rationals are well formed")
}

/// Rationals that are always available by name.
pub fn builtin_rationals() -> BTreeMap<String, RationalFunction> {
    let mut m = BTreeMap::new();
    m.insert("inv-z-minus-2".to_string(), rational(&[1.0], &[-2.0, 1.0]));
    m.insert("z-squared".to_string(), RationalFunction::from_polynomial(Polynomial::from_real(&[0.0, 0.0, 1.0])));
    m.insert("pi-rational".to_string(), rational(&[1.0, PI], &[-2.0, 1.0]));
    m
}

/// Everything a subcommand can look up by name.
pub struct Context {
    pub config: Config,
    pub seed: u64,
    rationals: BTreeMap<String, RationalFunction>,
    functions: FunctionRegistry,
}

impl Context {
    pub fn new(config: Config, seed: u64) -> Self {
        let mut rationals = builtin_rationals();
        rationals.extend(config.rationals.iter().map(|(k, v)| (k.clone(), v.clone())));
        let mut functions = FunctionRegistry::with_builtins();
        for (name, r) in &rationals {
            functions.register_as(name, Arc::new(r.clone()));
        }
        Context { config, seed, rationals, functions }
    }

    pub fn function(&self, name: &str) -> CliResult<Arc<dyn AnalyticFunction>> {
        Ok(self.functions.get(name)?)
    }

    pub fn function_names(&self) -> Vec<String> {
        self.functions.names().map(str::to_string).collect()
    }

    pub fn rational(&self, name: &str) -> CliResult<RationalFunction> {
        self.rationals
            .get(name)
            .cloned()
            .ok_or_else(|| CliError::Input(format!("unknown rational `{name}`")))
    }

    /// A config name, else an inline generator spec.
    pub fn sample(&self, name: &str) -> CliResult<CompactSample> {
        match self.config.samples.get(name) {
            Some(SampleEntry::Explicit(s)) => Ok(s.clone()),
            Some(SampleEntry::Spec(spec)) => Ok(CompactSample::parse(spec)?),
            None => Ok(CompactSample::parse(name)?),
        }
    }

    /// A config name, `unit-disc`, or `disc:cx,cy,r`.
    pub fn domain(&self, name: &str) -> CliResult<DomainSpec> {
        if let Some(d) = self.config.domains.get(name) {
            return Ok(d.clone());
        }
        if name == "unit-disc" {
            return Ok(DomainSpec::unit_disc());
        }
        if let Some(rest) = name.strip_prefix("disc:") {
            let v = parse_floats(rest)?;
            if v.len() == 3 {
                return Ok(DomainSpec::disc(Complex64::new(v[0], v[1]), v[2])?);
            }
        }
        Err(CliError::Input(format!("unknown domain `{name}`")))
    }
}

pub fn parse_floats(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| CliError::Input(format!("bad number `{t}` in `{s}`"))))
        .collect()
}

/// `x` or `x,y`.
pub fn parse_complex(s: &str) -> CliResult<Complex64> {
    match parse_floats(s)?.as_slice() {
        [re] => Ok(Complex64::new(*re, 0.0)),
        [re, im] => Ok(Complex64::new(*re, *im)),
        _ => Err(CliError::Input(format!("expected `re` or `re,im`, got `{s}`"))),
    }
}

/// `unit-circle`, `circle:cx,cy,r` or `square:cx,cy,half_side`.
pub fn parse_cycle(s: &str) -> CliResult<Cycle> {
    if s == "unit-circle" {
        return Ok(Cycle::unit_circle());
    }
    let (kind, rest) = s.split_once(':').ok_or_else(|| CliError::Input(format!("unknown cycle `{s}`")))?;
    let v = parse_floats(rest)?;
    match (kind, v.as_slice()) {
        ("circle", [x, y, r]) => Ok(Cycle::Circle { center: Complex64::new(*x, *y), radius: *r }),
        ("square", [x, y, h]) => Ok(Cycle::Polyline { path: PolylinePath::square(Complex64::new(*x, *y), *h)? }),
        _ => Err(CliError::Input(format!("unknown cycle `{s}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_names_shadow_builtins() {
        let json = r#"{
            "samples": {"K": "circle:2,0,0.25,64"},
            "domains": {"omega": {"kind": "disc", "center": [0, 0], "radius": 1}},
            "rationals": {"h": {"numerator": [[1, 0]], "denominator": [[-3, 0], [1, 0]]}}
        }"#;
        let cfg: Config = serde_json::from_str(json).unwrap();
        let ctx = Context::new(cfg, 1);
        assert_eq!(ctx.sample("K").unwrap().len(), 64);
        assert_eq!(ctx.sample("segment:0,0,1,0,5").unwrap().len(), 5);
        assert!(matches!(ctx.domain("omega").unwrap(), DomainSpec::Disc { .. }));
        let h = ctx.function("h").unwrap();
        assert!((h.eval_finite(Complex64::new(0.0, 0.0)).unwrap() + 1.0 / 3.0).norm() < 1e-15);
        assert!(ctx.rational("nope").is_err());
    }

    #[test]
    fn unknown_config_keys_are_rejected() {
        assert!(serde_json::from_str::<Config>(r#"{"shapes": {}}"#).is_err());
    }

    #[test]
    fn complex_and_cycle_syntax() {
        assert_eq!(parse_complex("1.5,-2").unwrap(), Complex64::new(1.5, -2.0));
        assert_eq!(parse_complex("-3").unwrap(), Complex64::new(-3.0, 0.0));
        assert!(parse_complex("1,2,3").is_err());
        assert!(matches!(parse_cycle("circle:0,0,0.3").unwrap(), Cycle::Circle { .. }));
        assert!(parse_cycle("ellipse:0,0,1").is_err());
    }
}

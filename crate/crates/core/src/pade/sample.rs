use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which generator produced a sample, so it can be regenerated finer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub params: Vec<f64>,
}

/// Finite stand-in for a compact set. `mesh` is the largest gap between
/// neighbouring points; sups over the sample are lower bounds for the set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSample")]
pub struct CompactSample {
    label: String,
    mesh: f64,
    points: Vec<Complex64>,
    #[serde(skip)]
    generator: Option<GeneratorSpec>,
}

#[derive(Deserialize)]
struct RawSample {
    label: String,
    mesh: f64,
    points: Vec<Complex64>,
}

impl TryFrom<RawSample> for CompactSample {
    type Error = Error;
    fn try_from(raw: RawSample) -> Result<Self> {
        CompactSample::with_mesh(raw.label, raw.points, raw.mesh)
    }
}

fn nearest_neighbour_mesh(points: &[Complex64]) -> f64 {
    if points.len() < 2 {
        return 0.0;
    }
    points
        .iter()
        .enumerate()
        .map(|(i, a)| {
            points
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, b)| (a - b).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

impl CompactSample {
    /// Explicit points; mesh is the largest nearest-neighbour distance.
    pub fn from_points(label: impl Into<String>, points: Vec<Complex64>) -> Result<Self> {
        let mesh = nearest_neighbour_mesh(&points);
        Self::with_mesh(label.into(), points, mesh)
    }

    pub fn with_mesh(label: String, points: Vec<Complex64>, mesh: f64) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidSample(format!("sample {label:?} has no points")));
        }
        if points.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidSample(format!("sample {label:?} has a non-finite point")));
        }
        // a single point is its own zero-mesh sample
        if !(mesh.is_finite() && (mesh > 0.0 || (points.len() == 1 && mesh == 0.0))) {
            return Err(Error::InvalidSample(format!("sample {label:?} has mesh {mesh}")));
        }
        Ok(CompactSample { label, mesh, points, generator: None })
    }

    pub fn circle(center: Complex64, radius: f64, n: usize) -> Result<Self> {
        SampleRegistry::builtin().generate("circle", &[center.re, center.im, radius, n as f64])
    }

    pub fn disc_grid(center: Complex64, radius: f64, rings: usize, angles: usize) -> Result<Self> {
        SampleRegistry::builtin()
            .generate("disc-grid", &[center.re, center.im, radius, rings as f64, angles as f64])
    }

    pub fn segment(a: Complex64, b: Complex64, n: usize) -> Result<Self> {
        SampleRegistry::builtin().generate("segment", &[a.re, a.im, b.re, b.im, n as f64])
    }

    /// Parse `name:p1,p2,...`, e.g. `circle:2,0,0.25,64`.
    pub fn parse(spec: &str) -> Result<Self> {
        let (name, rest) = spec
            .split_once(':')
            .ok_or_else(|| Error::InvalidSample(format!("expected name:params, got {spec:?}")))?;
        let params = rest
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidSample(format!("{spec:?}: {e}")))?;
        SampleRegistry::builtin().generate(name, &params)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn mesh(&self) -> f64 {
        self.mesh
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn generator(&self) -> Option<&GeneratorSpec> {
        self.generator.as_ref()
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// A `factor`-times finer version, if the generator is known.
    pub fn refine(&self, factor: usize) -> Option<CompactSample> {
        let spec = self.generator.as_ref()?;
        let reg = SampleRegistry::builtin();
        let gen = reg.get(&spec.name).ok()?;
        let params = gen.refine_params(&spec.params, factor);
        gen.generate(&params).ok().map(|s| s.relabel(format!("{} (x{factor})", self.label)))
    }

    /// Union of samples; the mesh is the largest of the parts.
    pub fn union(label: impl Into<String>, parts: &[&CompactSample]) -> Result<Self> {
        let points: Vec<Complex64> = parts.iter().flat_map(|s| s.points.iter().copied()).collect();
        let mesh = parts.iter().map(|s| s.mesh).fold(0.0, f64::max);
        let mesh = if mesh == 0.0 && points.len() > 1 { nearest_neighbour_mesh(&points) } else { mesh };
        Self::with_mesh(label.into(), points, mesh)
    }
}

/// A named way of sampling a standard compact.
pub trait SampleGenerator: Send + Sync {
    fn name(&self) -> &str;
    fn param_names(&self) -> &[&'static str];
    fn build(&self, params: &[f64]) -> Result<(Vec<Complex64>, f64)>;
    fn refine_params(&self, params: &[f64], factor: usize) -> Vec<f64>;

    fn generate(&self, params: &[f64]) -> Result<CompactSample> {
        let names = self.param_names();
        if params.len() != names.len() {
            return Err(Error::InvalidSample(format!(
                "{} expects {} parameters ({}), got {}",
                self.name(),
                names.len(),
                names.join(","),
                params.len()
            )));
        }
        let (points, mesh) = self.build(params)?;
        let label = format!("{}:{}", self.name(), params.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","));
        let mut s = CompactSample::with_mesh(label, points, mesh)?;
        s.generator = Some(GeneratorSpec { name: self.name().to_string(), params: params.to_vec() });
        Ok(s)
    }
}

fn count(x: f64, what: &str) -> Result<usize> {
    if x >= 1.0 && x.fract() == 0.0 && x < 1e7 {
        Ok(x as usize)
    } else {
        Err(Error::InvalidSample(format!("{what} must be a positive integer, got {x}")))
    }
}

fn positive(x: f64, what: &str) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(Error::InvalidSample(format!("{what} must be positive, got {x}")))
    }
}

struct Circle;

impl SampleGenerator for Circle {
    fn name(&self) -> &str {
        "circle"
    }
    fn param_names(&self) -> &[&'static str] {
        &["cx", "cy", "r", "n"]
    }
    fn build(&self, p: &[f64]) -> Result<(Vec<Complex64>, f64)> {
        let c = Complex64::new(p[0], p[1]);
        let r = positive(p[2], "radius")?;
        let n = count(p[3], "n")?;
        let pts = (0..n).map(|k| c + Complex64::from_polar(r, 2.0 * PI * k as f64 / n as f64)).collect();
        let mesh = if n == 1 { 0.0 } else { 2.0 * r * (PI / n as f64).sin() };
        Ok((pts, mesh))
    }
    fn refine_params(&self, p: &[f64], factor: usize) -> Vec<f64> {
        vec![p[0], p[1], p[2], p[3] * factor as f64]
    }
}

/// Centre plus `rings` concentric rings of `angles` points each.
struct DiscGrid;

impl SampleGenerator for DiscGrid {
    fn name(&self) -> &str {
        "disc-grid"
    }
    fn param_names(&self) -> &[&'static str] {
        &["cx", "cy", "r", "rings", "angles"]
    }
    fn build(&self, p: &[f64]) -> Result<(Vec<Complex64>, f64)> {
        let c = Complex64::new(p[0], p[1]);
        let r = positive(p[2], "radius")?;
        let rings = count(p[3], "rings")?;
        let angles = count(p[4], "angles")?;
        let mut pts = vec![c];
        for k in 1..=rings {
            let rho = r * k as f64 / rings as f64;
            for j in 0..angles {
                pts.push(c + Complex64::from_polar(rho, 2.0 * PI * j as f64 / angles as f64));
            }
        }
        let arc = if angles == 1 { 2.0 * r } else { 2.0 * r * (PI / angles as f64).sin() };
        Ok((pts, (r / rings as f64).max(arc)))
    }
    fn refine_params(&self, p: &[f64], factor: usize) -> Vec<f64> {
        let f = factor as f64;
        vec![p[0], p[1], p[2], p[3] * f, p[4] * f]
    }
}

struct Segment;

impl SampleGenerator for Segment {
    fn name(&self) -> &str {
        "segment"
    }
    fn param_names(&self) -> &[&'static str] {
        &["x0", "y0", "x1", "y1", "n"]
    }
    fn build(&self, p: &[f64]) -> Result<(Vec<Complex64>, f64)> {
        let a = Complex64::new(p[0], p[1]);
        let b = Complex64::new(p[2], p[3]);
        let n = count(p[4], "n")?;
        if n == 1 {
            return Ok((vec![a], 0.0));
        }
        let pts = (0..n).map(|k| a + (b - a) * (k as f64 / (n - 1) as f64)).collect();
        let mesh = (b - a).norm() / (n - 1) as f64;
        if mesh == 0.0 {
            return Err(Error::InvalidSample("segment endpoints coincide".into()));
        }
        Ok((pts, mesh))
    }
    fn refine_params(&self, p: &[f64], factor: usize) -> Vec<f64> {
        vec![p[0], p[1], p[2], p[3], (p[4] - 1.0) * factor as f64 + 1.0]
    }
}

#[derive(Clone)]
pub struct SampleRegistry {
    gens: BTreeMap<String, Arc<dyn SampleGenerator>>,
}

impl SampleRegistry {
    pub fn builtin() -> Self {
        let mut gens: BTreeMap<String, Arc<dyn SampleGenerator>> = BTreeMap::new();
        for g in [Arc::new(Circle) as Arc<dyn SampleGenerator>, Arc::new(DiscGrid), Arc::new(Segment)] {
            gens.insert(g.name().to_string(), g);
        }
        SampleRegistry { gens }
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn SampleGenerator>> {
        self.gens
            .get(name)
            .cloned()
            .ok_or_else(|| Error::InvalidSample(format!("unknown sample generator {name:?}")))
    }

    pub fn generate(&self, name: &str, params: &[f64]) -> Result<CompactSample> {
        self.get(name)?.generate(params)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.gens.keys().map(String::as_str)
    }
}

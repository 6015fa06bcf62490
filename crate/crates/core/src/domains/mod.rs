//! Jordan-type domains, bounded-length joining paths, path integrals and
//! the antiderivatives and moments built from them.

pub mod quadrature;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use quadrature::{integrate, CompensatedSum, QuadResult, DEFAULT_TOL};

/// Resolution used when a starlike profile is built from a function.
pub const STARLIKE_SAMPLES: usize = 2048;

/// Fraction of the gap between the floor and `min φ` at which the type-∗
/// corridor runs.
pub const CORRIDOR_MARGIN: f64 = 0.05;

/// A radial profile `ρ(θ)` sampled at `θ_k = 2πk/n`, linearly interpolated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct RadialProfile {
    rho: Vec<f64>,
    max: f64,
    diameter: f64,
}

impl TryFrom<Vec<f64>> for RadialProfile {
    type Error = Error;
    fn try_from(rho: Vec<f64>) -> Result<Self> {
        if rho.len() < 3 {
            return Err(Error::Precondition("a radial profile needs at least 3 samples".into()));
        }
        if rho.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
            return Err(Error::Precondition("radial profile must be strictly positive".into()));
        }
        let max = rho.iter().copied().fold(0.0, f64::max);
        let n = rho.len();
        let pts: Vec<Complex64> =
            (0..n).map(|k| Complex64::from_polar(rho[k], 2.0 * PI * k as f64 / n as f64)).collect();
        // sampled boundary diameter, never below the largest radius
        let mut diameter = max;
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i + 1..] {
                diameter = diameter.max((a - b).norm());
            }
        }
        Ok(RadialProfile { rho, max, diameter })
    }
}

impl From<RadialProfile> for Vec<f64> {
    fn from(p: RadialProfile) -> Self {
        p.rho
    }
}

impl RadialProfile {
    pub fn from_fn(f: impl Fn(f64) -> f64) -> Result<Self> {
        let n = STARLIKE_SAMPLES;
        Self::try_from((0..n).map(|k| f(2.0 * PI * k as f64 / n as f64)).collect::<Vec<_>>())
    }

    pub fn at(&self, theta: f64) -> f64 {
        let n = self.rho.len();
        let u = theta.rem_euclid(2.0 * PI) / (2.0 * PI) * n as f64;
        let k = (u.floor() as usize).min(n - 1);
        let frac = u - k as f64;
        self.rho[k] * (1.0 - frac) + self.rho[(k + 1) % n] * frac
    }

    pub fn samples(&self) -> &[f64] {
        &self.rho
    }
}

/// `φ` on `[0, 1]` sampled at `x_k = k/(n-1)`, linearly interpolated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct GraphProfile {
    phi: Vec<f64>,
    min: f64,
    max: f64,
}

impl TryFrom<Vec<f64>> for GraphProfile {
    type Error = Error;
    fn try_from(phi: Vec<f64>) -> Result<Self> {
        if phi.len() < 2 || phi.iter().any(|v| !v.is_finite()) {
            return Err(Error::Precondition("a graph profile needs at least 2 finite samples".into()));
        }
        let min = phi.iter().copied().fold(f64::INFINITY, f64::min);
        let max = phi.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(GraphProfile { phi, min, max })
    }
}

impl From<GraphProfile> for Vec<f64> {
    fn from(p: GraphProfile) -> Self {
        p.phi
    }
}

impl GraphProfile {
    pub fn from_fn(f: impl Fn(f64) -> f64, samples: usize) -> Result<Self> {
        let n = samples.max(2);
        Self::try_from((0..n).map(|k| f(k as f64 / (n - 1) as f64)).collect::<Vec<_>>())
    }

    pub fn at(&self, x: f64) -> f64 {
        let n = self.phi.len();
        let u = x.clamp(0.0, 1.0) * (n - 1) as f64;
        let k = (u.floor() as usize).min(n - 2);
        let frac = u - k as f64;
        self.phi[k] * (1.0 - frac) + self.phi[k + 1] * frac
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", try_from = "RawDomain")]
pub enum DomainSpec {
    Disc { center: Complex64, radius: f64 },
    Starlike { center: Complex64, profile: RadialProfile },
    /// `{0 < x < 1, floor < y < φ(x)}`.
    TypeStar { profile: GraphProfile, floor: f64 },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum RawDomain {
    Disc { center: Complex64, radius: f64 },
    Starlike { center: Complex64, profile: RadialProfile },
    TypeStar { profile: GraphProfile, floor: f64 },
}

impl TryFrom<RawDomain> for DomainSpec {
    type Error = Error;
    fn try_from(raw: RawDomain) -> Result<Self> {
        let d = match raw {
            RawDomain::Disc { center, radius } => DomainSpec::Disc { center, radius },
            RawDomain::Starlike { center, profile } => DomainSpec::Starlike { center, profile },
            RawDomain::TypeStar { profile, floor } => DomainSpec::TypeStar { profile, floor },
        };
        d.validate()?;
        Ok(d)
    }
}

impl DomainSpec {
    pub fn disc(center: Complex64, radius: f64) -> Result<Self> {
        let d = DomainSpec::Disc { center, radius };
        d.validate()?;
        Ok(d)
    }

    pub fn unit_disc() -> Self {
        DomainSpec::Disc { center: Complex64::new(0.0, 0.0), radius: 1.0 }
    }

    pub fn starlike(center: Complex64, rho: impl Fn(f64) -> f64) -> Result<Self> {
        Ok(DomainSpec::Starlike { center, profile: RadialProfile::from_fn(rho)? })
    }

    pub fn type_star(phi: impl Fn(f64) -> f64, floor: f64, samples: usize) -> Result<Self> {
        let d = DomainSpec::TypeStar { profile: GraphProfile::from_fn(phi, samples)?, floor };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            DomainSpec::Disc { radius, .. } if !(radius.is_finite() && *radius > 0.0) => {
                Err(Error::Precondition(format!("disc radius must be positive, got {radius}")))
            }
            DomainSpec::TypeStar { profile, floor } if !(*floor < profile.min()) => Err(Error::Precondition(
                format!("type-* floor {floor} must lie below min φ = {}", profile.min()),
            )),
            _ => Ok(()),
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        match self {
            DomainSpec::Disc { center, radius } => (z - center).norm() < *radius,
            DomainSpec::Starlike { center, profile } => {
                let w = z - center;
                let r = w.norm();
                r == 0.0 || r < profile.at(w.arg())
            }
            DomainSpec::TypeStar { profile, floor } => {
                z.re > 0.0 && z.re < 1.0 && z.im > *floor && z.im < profile.at(z.re)
            }
        }
    }

    pub fn diameter(&self) -> f64 {
        match self {
            DomainSpec::Disc { radius, .. } => 2.0 * radius,
            DomainSpec::Starlike { profile, .. } => profile.diameter,
            DomainSpec::TypeStar { profile, floor } => 1f64.hypot(profile.max() - floor),
        }
    }

    /// The certified joining-path bound for [`bounded_path`].
    pub fn path_budget(&self) -> PathBudget {
        let m = match self {
            DomainSpec::Disc { radius, .. } => 2.0 * radius,
            DomainSpec::Starlike { profile, .. } => 2.0 * profile.diameter,
            DomainSpec::TypeStar { profile, floor } => 2.0 * (profile.max() - floor) + 1.0,
        };
        PathBudget { m }
    }

}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolylinePath {
    vertices: Vec<Complex64>,
    length: f64,
}

impl PolylinePath {
    pub fn new(vertices: Vec<Complex64>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::Precondition("a path needs at least two vertices".into()));
        }
        let length = vertices.windows(2).map(|w| (w[1] - w[0]).norm()).sum();
        Ok(PolylinePath { vertices, length })
    }

    /// Counter-clockwise closed polygon through `vertices` (first vertex repeated at the end).
    pub fn closed(mut vertices: Vec<Complex64>) -> Result<Self> {
        if let Some(&first) = vertices.first() {
            vertices.push(first);
        }
        Self::new(vertices)
    }

    pub fn square(center: Complex64, half_side: f64) -> Result<Self> {
        let h = half_side;
        Self::closed(
            [(h, -h), (h, h), (-h, h), (-h, -h)].iter().map(|&(x, y)| center + Complex64::new(x, y)).collect(),
        )
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn is_closed(&self) -> bool {
        self.vertices.first() == self.vertices.last()
    }

    fn segments(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1])).filter(|(a, b)| a != b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathBudget {
    pub m: f64,
}

fn check_nodes(domain: &DomainSpec, path: &PolylinePath) -> Result<()> {
    let (x, _) = quadrature::gauss_legendre();
    for (a, b) in path.segments() {
        for &t in x.iter() {
            let z = a + (b - a) * (0.5 * (t + 1.0));
            if !domain.contains(z) {
                return Err(Error::OutsideDomain(z));
            }
        }
    }
    Ok(())
}

/// A joining path inside `domain` with its length bound.
pub fn bounded_path(domain: &DomainSpec, a: Complex64, b: Complex64) -> Result<(PolylinePath, PathBudget)> {
    for z in [a, b] {
        if !domain.contains(z) {
            return Err(Error::OutsideDomain(z));
        }
    }
    let vertices = match domain {
        DomainSpec::Disc { .. } => vec![a, b],
        DomainSpec::Starlike { center, .. } => vec![a, *center, b],
        DomainSpec::TypeStar { profile, floor } => {
            let y0 = floor + CORRIDOR_MARGIN * (profile.min() - floor);
            vec![a, Complex64::new(a.re, y0), Complex64::new(b.re, y0), b]
        }
    };
    let path = PolylinePath::new(vertices)?;
    check_nodes(domain, &path)?;
    let budget = domain.path_budget();
    assert!(
        path.length() <= budget.m * (1.0 + 1e-12),
        "path length {} exceeds its budget {}",
        path.length(),
        budget.m
    );
    Ok((path, budget))
}

/// `∫_γ f(z) dz`, segment by segment.
pub fn path_integral<F>(f: F, path: &PolylinePath, tol: f64) -> Result<QuadResult>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let segs: Vec<_> = path.segments().collect();
    if segs.is_empty() {
        return Ok(QuadResult { value: Complex64::new(0.0, 0.0), node_sup: 0.0, evaluations: 0 });
    }
    let per = tol / segs.len() as f64;
    let mut total = CompensatedSum::default();
    let mut sup = 0.0f64;
    let mut evals = 0;
    for (a, b) in segs {
        let d = b - a;
        let r = integrate(|t| f(a + d * t).map(|v| v * d), 0.0, 1.0, per)?;
        total.add(r.value);
        sup = sup.max(r.node_sup / d.norm());
        evals += r.evaluations;
    }
    Ok(QuadResult { value: total.value(), node_sup: sup, evaluations: evals })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Antiderivative {
    pub value: Complex64,
    pub budget: PathBudget,
    pub path_length: f64,
    /// Largest `|f|` over the quadrature nodes of the path.
    pub node_sup: f64,
}

/// `F(z) = ∫_{γ_z} f` along the bounded path from `z0` to `z`.
pub fn antiderivative_at<F>(f: F, domain: &DomainSpec, z0: Complex64, z: Complex64, tol: f64) -> Result<Antiderivative>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let (path, budget) = bounded_path(domain, z0, z)?;
    let q = path_integral(f, &path, tol)?;
    Ok(Antiderivative { value: q.value, budget, path_length: path.length(), node_sup: q.node_sup })
}

/// `∫_0^1 f(c + t(z - c)) (z - c) dt`.
pub fn starlike_antiderivative<F>(f: F, center: Complex64, z: Complex64, tol: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let d = z - center;
    if d.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(integrate(|t| f(center + d * t).map(|v| v * d), 0.0, 1.0, tol)?.value)
}

/// A closed integration cycle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Cycle {
    Polyline { path: PolylinePath },
    /// Positively oriented circle.
    Circle { center: Complex64, radius: f64 },
}

impl Cycle {
    pub fn unit_circle() -> Self {
        Cycle::Circle { center: Complex64::new(0.0, 0.0), radius: 1.0 }
    }

    pub fn integrate<F>(&self, f: F, tol: f64) -> Result<Complex64>
    where
        F: Fn(Complex64) -> Result<Complex64>,
    {
        match self {
            Cycle::Polyline { path } => {
                if !path.is_closed() {
                    return Err(Error::Precondition("moment cycle must be closed".into()));
                }
                Ok(path_integral(f, path, tol)?.value)
            }
            Cycle::Circle { center, radius } => {
                // four quarter arcs keep each panel smooth
                let mut total = CompensatedSum::default();
                for q in 0..4 {
                    let lo = 0.5 * PI * q as f64;
                    let r = integrate(
                        |t| {
                            let e = Complex64::from_polar(*radius, t);
                            f(center + e).map(|v| v * e * Complex64::i())
                        },
                        lo,
                        lo + 0.5 * PI,
                        tol / 4.0,
                    )?;
                    total.add(r.value);
                }
                Ok(total.value())
            }
        }
    }
}

/// `∫_γ z^i f(z) dz` for `i = 0..n`.
pub fn moment_test<F>(f: F, cycle: &Cycle, n: usize, tol: f64) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    moment_test_about(f, cycle, n, Complex64::new(0.0, 0.0), tol)
}

/// `∫_γ (z - a)^i f(z) dz` for `i = 0..n`.
pub fn moment_test_about<F>(f: F, cycle: &Cycle, n: usize, a: Complex64, tol: f64) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    (0..n).map(|i| cycle.integrate(|z| f(z).map(|v| v * (z - a).powu(i as u32)), tol)).collect()
}

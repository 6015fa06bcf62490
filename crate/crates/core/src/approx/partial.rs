use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::domains::{moment_test_about, Cycle};
use crate::error::{Error, Result};
use crate::linalg::polynomial_roots;
use crate::pade::CompactSample;
use crate::series::{quotient_series, Polynomial, RationalFunction};

/// Companion eigenvalues of an m-fold root scatter by about eps^(1/m), so
/// roots are grouped generously and the group is then confirmed by deflation.
pub const POLE_MERGE_TOL: f64 = 1e-4;
const DEFLATION_TOL: f64 = 1e-8;
pub const BOUNDARY_TOL: f64 = 1e-9;
/// Contour moments of a corrected function must vanish to this, relative to
/// `2π ρ^(j) max|r|` on the circle.
pub const MOMENT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Pole {
    pub location: Complex64,
    pub multiplicity: usize,
}

fn scale_of(z: Complex64) -> f64 {
    z.norm().max(1.0)
}

/// Try to confirm that `den` has an `m`-fold root at `a`; on success return
/// the cofactor `den / (z - a)^m`.
fn confirm_root(den: &Polynomial, a: Complex64, m: usize) -> Option<Polynomial> {
    let mut cur = den.clone();
    for _ in 0..m {
        let scale = cur.eval_abs(a);
        let (q, rem) = cur.deflate(a);
        if rem.norm() > DEFLATION_TOL * scale.max(f64::MIN_POSITIVE) {
            return None;
        }
        cur = q;
    }
    Some(cur)
}

/// An m-fold root is a simple root of the (m-1)-th derivative; polish there.
fn refine_multiple(den: &Polynomial, z: Complex64, m: usize) -> Complex64 {
    let d = den.nth_derivative(m - 1);
    let dd = d.derivative();
    let mut z = z;
    for _ in 0..5 {
        let step = d.eval(z) / dd.eval(z);
        if !step.is_finite() || step.norm() > POLE_MERGE_TOL * scale_of(z) {
            break;
        }
        z -= step;
    }
    z
}

/// Distinct zeros of `den` with multiplicities.
pub fn polynomial_zeros(den: &Polynomial) -> Result<Vec<Pole>> {
    let roots = polynomial_roots(den)?;
    let mut used = vec![false; roots.len()];
    let mut out = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        let tol = POLE_MERGE_TOL * scale_of(roots[i]);
        let group: Vec<usize> =
            (i..roots.len()).filter(|&j| !used[j] && (roots[j] - roots[i]).norm() <= tol).collect();
        let centroid = refine_multiple(den, group.iter().map(|&j| roots[j]).sum::<Complex64>() / group.len() as f64, group.len());
        let members = if group.len() > 1 && confirm_root(den, centroid, group.len()).is_some() {
            group
        } else {
            vec![i]
        };
        let location = if members.len() > 1 { centroid } else { roots[i] };
        for &j in &members {
            used[j] = true;
        }
        out.push(Pole { location, multiplicity: members.len() });
    }
    Ok(out)
}

/// Poles of `r` (numerator and denominator are already coprime).
pub fn poles(r: &RationalFunction) -> Result<Vec<Pole>> {
    polynomial_zeros(r.denominator())
}

/// Laurent coefficients `[c_{-1}, ..., c_{-m}]` of `r` at a pole of order `m`.
pub fn laurent_principal(r: &RationalFunction, pole: Pole) -> Result<Vec<Complex64>> {
    let a = pole.location;
    let m = pole.multiplicity;
    let cof = confirm_root(r.denominator(), a, m)
        .ok_or_else(|| Error::RootFinding(format!("{a} is not a pole of order {m}")))?;
    // A / C at a, C = B / (z - a)^m
    let t = quotient_series(&r.numerator().shift(a), &cof.shift(a), m - 1);
    Ok((1..=m).map(|j| t[m - j]).collect())
}

/// `Σ_j c[j-1] / (z - a)^j` over all listed poles, as one rational function.
fn assemble(parts: &[(Complex64, Vec<Complex64>)]) -> Result<RationalFunction> {
    let parts: Vec<_> = parts
        .iter()
        .map(|(a, c)| {
            let m = c.iter().rposition(|v| v.norm() > 0.0).map_or(0, |k| k + 1);
            (*a, c[..m].to_vec())
        })
        .filter(|(_, c)| !c.is_empty())
        .collect();
    if parts.is_empty() {
        return Ok(RationalFunction::from_polynomial(Polynomial::zero()));
    }
    let factors: Vec<Polynomial> = parts.iter().map(|(a, c)| Polynomial::linear_factor(*a).pow(c.len())).collect();
    let den = factors.iter().fold(Polynomial::one(), |acc, f| &acc * f);
    let mut num = Polynomial::zero();
    for (i, (a, c)) in parts.iter().enumerate() {
        let m = c.len();
        // Σ_j c_j (z - a)^(m - j)
        let local = Polynomial::new((0..m).map(|k| c[m - 1 - k]).collect()).shift(-*a);
        let others = factors.iter().enumerate().filter(|(j, _)| *j != i).fold(local, |acc, (_, f)| &acc * f);
        num = &num + &others;
    }
    RationalFunction::normalize(&num, &den)
}

/// Where poles are collected.
#[derive(Debug, Clone)]
pub enum Region {
    Disc { center: Complex64, radius: f64 },
    /// Interior of the closed polygon through the sample points, in order.
    Enclosed(CompactSample),
}

fn segment_distance(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + d * t)).norm()
}

impl Region {
    pub fn contains(&self, z: Complex64) -> Result<bool> {
        match self {
            Region::Disc { center, radius } => {
                let d = (z - center).norm();
                if (d - radius).abs() <= BOUNDARY_TOL * radius.max(1.0) {
                    return Err(Error::PoleOnBoundary(z));
                }
                Ok(d < *radius)
            }
            Region::Enclosed(s) => {
                let pts = s.points();
                if pts.len() < 3 {
                    return Err(Error::InvalidSample("an enclosing sample needs at least 3 points".into()));
                }
                let scale = pts.iter().map(|p| p.norm()).fold(1.0, f64::max);
                let mut winding = 0.0;
                for k in 0..pts.len() {
                    let (a, b) = (pts[k], pts[(k + 1) % pts.len()]);
                    if segment_distance(z, a, b) <= BOUNDARY_TOL * scale {
                        return Err(Error::PoleOnBoundary(z));
                    }
                    winding += ((b - z) / (a - z)).arg();
                }
                Ok((winding / (2.0 * PI)).round() != 0.0)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrincipalPart {
    pub rational: RationalFunction,
    pub poles: Vec<Pole>,
    /// `[c_{-1}, ..., c_{-m}]` per pole.
    pub coefficients: Vec<Vec<Complex64>>,
}

/// Circle around `a` that stays clear of every other pole.
fn isolating_radius(a: Complex64, all: &[Pole]) -> f64 {
    let gap = all
        .iter()
        .map(|p| (p.location - a).norm())
        .filter(|d| *d > POLE_MERGE_TOL * scale_of(a))
        .fold(f64::INFINITY, f64::min);
    (0.4 * gap).min(0.5 * scale_of(a))
}

/// Largest relative contour moment `∫ (z-a)^(j-1) g dz`, `j = 1..=n`, on a
/// circle of radius `rho` about `a`; `reference` sets the scale (the function before any subtraction).
fn relative_moments(
    g: &dyn Fn(Complex64) -> Result<Complex64>,
    reference: &RationalFunction,
    a: Complex64,
    rho: f64,
    n: usize,
) -> Result<(f64, f64)> {
    let cycle = Cycle::Circle { center: a, radius: rho };
    let sup = (0..64)
        .map(|k| reference.eval_finite(a + Complex64::from_polar(rho, 2.0 * PI * k as f64 / 64.0)).map(|v| v.norm()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let moments = moment_test_about(g, &cycle, n, a, 1e-14 * sup.max(1.0) * rho)?;
    let mut worst_abs = 0.0f64;
    let mut worst_rel = 0.0f64;
    for (i, m) in moments.iter().enumerate() {
        let scale = 2.0 * PI * rho.powi(i as i32 + 1) * sup;
        worst_abs = worst_abs.max(m.norm());
        worst_rel = worst_rel.max(if scale > 0.0 { m.norm() / scale } else { m.norm() });
    }
    Ok((worst_abs, worst_rel))
}

/// Sum of the principal parts of `r` at its poles inside `region`.
pub fn principal_parts(r: &RationalFunction, region: &Region) -> Result<PrincipalPart> {
    let all = poles(r)?;
    let mut inside = Vec::new();
    for p in &all {
        if region.contains(p.location)? {
            inside.push(*p);
        }
    }
    let coefficients = inside.iter().map(|p| laurent_principal(r, *p)).collect::<Result<Vec<_>>>()?;
    let parts: Vec<_> = inside.iter().map(|p| p.location).zip(coefficients.iter().cloned()).collect();
    let rational = assemble(&parts)?;
    // r - μ must be regular at every collected pole
    for p in &inside {
        let rho = isolating_radius(p.location, &all);
        let diff = |z: Complex64| Ok(r.eval_finite(z)? - rational.eval_finite(z)?);
        let (_, rel) = relative_moments(&diff, r, p.location, rho, p.multiplicity)?;
        if rel > MOMENT_TOL {
            return Err(Error::RootFinding(format!(
                "principal part at {} leaves a residual moment {rel:e}",
                p.location
            )));
        }
    }
    Ok(PrincipalPart { rational, poles: inside, coefficients })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidueRow {
    pub pole: Complex64,
    pub order: usize,
    pub coefficient: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidueCorrection {
    pub rational: RationalFunction,
    pub table: Vec<ResidueRow>,
    /// Largest `|∫ (z - a)^(j-1) r_n dz|` over poles and `j = 1..=n`.
    pub max_moment: f64,
    pub max_relative_moment: f64,
}

/// Subtract `Σ b_ij / (z - a_i)^j` (`j <= n`) so that the first `n` moments of
/// the result vanish around every listed pole.
pub fn residue_correction(r: &RationalFunction, listed: &[Complex64], n: usize) -> Result<ResidueCorrection> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let found = poles(r)?;
    let mut matched: Vec<Option<Pole>> = vec![None; listed.len()];
    for p in &found {
        let hit = listed
            .iter()
            .position(|a| (a - p.location).norm() <= POLE_MERGE_TOL * scale_of(*a))
            .ok_or(Error::PoleNotInList(p.location))?;
        matched[hit] = Some(*p);
    }
    let mut table = Vec::new();
    let mut parts = Vec::new();
    for (a, hit) in listed.iter().zip(&matched) {
        let coeffs = match hit {
            Some(p) => laurent_principal(r, Pole { location: *a, multiplicity: p.multiplicity })?,
            None => Vec::new(),
        };
        let b: Vec<Complex64> = (0..n).map(|j| coeffs.get(j).copied().unwrap_or_default()).collect();
        for (j, v) in b.iter().enumerate() {
            table.push(ResidueRow { pole: *a, order: j + 1, coefficient: *v });
        }
        parts.push((*a, b));
    }
    let rational = r.sub(&assemble(&parts)?)?;
    let mut max_moment = 0.0f64;
    let mut max_relative_moment = 0.0f64;
    let all: Vec<Pole> = listed.iter().map(|a| Pole { location: *a, multiplicity: 1 }).collect();
    for a in listed {
        let rho = isolating_radius(*a, &all);
        let g = |z: Complex64| rational.eval_finite(z);
        let (abs, rel) = relative_moments(&g, r, *a, rho, n)?;
        max_moment = max_moment.max(abs);
        max_relative_moment = max_relative_moment.max(rel);
    }
    Ok(ResidueCorrection { rational, table, max_moment, max_relative_moment })
}

//! Padé approximants from the Jacobi determinant formula, the Hankel
//! normality test, and the common-zero predicate on a sampled compact.

mod sample;

pub use sample::{CompactSample, GeneratorSpec, SampleGenerator, SampleRegistry};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::determinant;
use crate::series::{quotient_derivatives, quotient_on_sphere, ExtendedComplex, Polynomial, PowerSeries, RationalFunction};

/// Relative cutoff for `|det H|` in the normality test.
pub const NORMALITY_TOL: f64 = 1e-10;

/// A point is a numerical common zero when both `|A|` and `|B|` fall below
/// this fraction of their cancellation scales — the same rule that makes
/// evaluation report `0/0`.
pub const COMMON_ZERO_TOL: f64 = crate::series::VANISHING_TOL;

fn hankel_window(f: &PowerSeries, p: usize, q: usize) -> Result<Vec<Vec<Complex64>>> {
    f.require_order(p + q)?;
    let base = p as isize - q as isize;
    (1..=q as isize)
        .map(|i| (0..q as isize).map(|j| f.coeff(base + i + j)).collect())
        .collect()
}

/// `max(1, max |a_i|^q)` over the Hankel window.
fn hankel_scale(f: &PowerSeries, p: usize, q: usize) -> f64 {
    let lo = (p as isize - q as isize + 1).max(0) as usize;
    let hi = (p + q).saturating_sub(1).min(f.truncation_order());
    let m = if q == 0 || lo > hi {
        0.0
    } else {
        f.coefficients()[lo..=hi].iter().map(|c| c.norm()).fold(0.0, f64::max)
    };
    m.powi(q as i32).max(1.0)
}

/// The `q x q` Hankel determinant; `1` for `q = 0`.
pub fn hankel_determinant(f: &PowerSeries, p: usize, q: usize) -> Result<Complex64> {
    Ok(determinant(&hankel_window(f, p, q)?))
}

/// Outcome of the normality test; `hankel` is the witness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Normality {
    pub member: bool,
    pub hankel: Complex64,
    pub threshold: f64,
}

/// `f ∈ D_{p,q}(ζ)` for the series' own center.
pub fn in_d(f: &PowerSeries, p: usize, q: usize) -> Result<Normality> {
    let hankel = hankel_determinant(f, p, q)?;
    let threshold = NORMALITY_TOL * hankel_scale(f, p, q);
    Ok(Normality { member: hankel.norm() > threshold, hankel, threshold })
}

/// `[f; p/q]` at the series' center. Numerator and denominator are stored in
/// powers of `(z - center)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PadeApproximant {
    pub p: usize,
    pub q: usize,
    pub center: Complex64,
    pub numerator: Polynomial,
    pub denominator: Polynomial,
    pub hankel: Complex64,
    pub normal: bool,
}

/// Jacobi-formula approximant. Non-normal input still yields the
/// determinant polynomials with `normal = false`.
pub fn pade_construct(f: &PowerSeries, p: usize, q: usize) -> Result<PadeApproximant> {
    let normality = in_d(f, p, q)?;
    let base = p as isize - q as isize;
    // coefficient rows i = 1..q: (a_{p-q+i}, ..., a_{p+i})
    let rows: Vec<Vec<Complex64>> = (1..=q as isize)
        .map(|i| (0..=q as isize).map(|j| f.coeff(base + i + j)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let mut numerator = Polynomial::zero();
    let mut denominator = Polynomial::zero();
    for j in 0..=q {
        let minor: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| *v).collect())
            .collect();
        let mut m = determinant(&minor);
        if j % 2 == 1 {
            m = -m;
        }
        let w_pow = Polynomial::monomial(m, q - j);
        let s = f.partial_sum(base + j as isize)?;
        numerator = &numerator + &(&w_pow * &s);
        denominator = &denominator + &w_pow;
    }
    if numerator.is_zero() && denominator.is_zero() {
        return Err(Error::DegeneratePade);
    }
    Ok(PadeApproximant {
        p,
        q,
        center: f.center(),
        numerator,
        denominator,
        hankel: normality.hankel,
        normal: normality.member,
    })
}

impl PadeApproximant {
    pub fn from_parts(
        p: usize,
        q: usize,
        center: Complex64,
        numerator: Polynomial,
        denominator: Polynomial,
        hankel: Complex64,
        normal: bool,
    ) -> Self {
        PadeApproximant { p, q, center, numerator, denominator, hankel, normal }
    }

    pub fn eval_extended(&self, z: Complex64) -> Result<ExtendedComplex> {
        let w = z - self.center;
        quotient_on_sphere(
            z,
            self.numerator.eval(w),
            self.numerator.eval_abs(w),
            self.denominator.eval(w),
            self.denominator.eval_abs(w),
        )
    }

    /// `(A/B)^{(l)}(z)` for `l = 0..=max_order`.
    pub fn derivatives(&self, z: Complex64, max_order: usize) -> Result<Vec<Complex64>> {
        quotient_derivatives(&self.numerator, &self.denominator, z - self.center, max_order)
            .map_err(|e| match e {
                Error::PoleAtCenter(_) => Error::PoleAtCenter(z),
                other => other,
            })
    }

    /// The approximant as a normalized rational function of `z`.
    pub fn to_rational(&self) -> Result<RationalFunction> {
        let back = -self.center;
        RationalFunction::normalize(&self.numerator.shift(back), &self.denominator.shift(back))
    }
}

/// Result of the common-zero test over a sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CommonZero {
    pub member: bool,
    /// `min |A|^2 + |B|^2` over the sample.
    pub delta_hat: f64,
    /// `min_z max(|A|/Σ|a_i||w|^i, |B|/Σ|b_i||w|^i)`.
    pub relative: f64,
}

/// `(A, B)` share no zero on `K` (up to the scale-free cutoff).
pub fn in_e(approx: &PadeApproximant, k: &CompactSample) -> Result<CommonZero> {
    if k.points().is_empty() {
        return Err(Error::InvalidSample("empty sample".into()));
    }
    let mut delta_hat = f64::INFINITY;
    let mut relative = f64::INFINITY;
    for &z in k.points() {
        let w = z - approx.center;
        let (a, b) = (approx.numerator.eval(w), approx.denominator.eval(w));
        let ratio = |v: Complex64, s: f64| if s > 0.0 { v.norm() / s } else { 0.0 };
        delta_hat = delta_hat.min(a.norm_sqr() + b.norm_sqr());
        relative = relative.min(
            ratio(a, approx.numerator.eval_abs(w)).max(ratio(b, approx.denominator.eval_abs(w))),
        );
    }
    Ok(CommonZero { member: relative > COMMON_ZERO_TOL, delta_hat, relative })
}

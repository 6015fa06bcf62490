//! The chordal metric on the Riemann sphere and dyadic coefficient rounding.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pade::CompactSample;
use crate::series::{ExtendedComplex, Polynomial, RationalFunction};

/// `chi(a, b)`, always in `[0, 1]`.
pub fn chordal(a: ExtendedComplex, b: ExtendedComplex) -> f64 {
    use ExtendedComplex::*;
    match (a, b) {
        (Infinity, Infinity) => 0.0,
        (Finite(z), Infinity) | (Infinity, Finite(z)) => 1.0 / z.norm().hypot(1.0),
        (Finite(x), Finite(y)) => {
            if x == y {
                return 0.0;
            }
            let d = (x - y).norm() / (x.norm().hypot(1.0) * y.norm().hypot(1.0));
            d.min(1.0)
        }
    }
}

/// Chordal distance between `[a0 : a1]` and `[b0 : b1]` in homogeneous
/// coordinates; avoids forming huge quotients near poles.
pub fn chordal_projective(a: (Complex64, Complex64), b: (Complex64, Complex64)) -> f64 {
    let na = a.0.norm().hypot(a.1.norm());
    let nb = b.0.norm().hypot(b.1.norm());
    if na == 0.0 || nb == 0.0 {
        return f64::NAN;
    }
    let (a0, a1) = (a.0 / na, a.1 / na);
    let (b0, b1) = (b.0 / nb, b.1 / nb);
    (a0 * b1 - a1 * b0).norm().min(1.0)
}

/// Largest sampled chordal distance; a lower bound for the sup over the set
/// the sample stands for.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupEstimate {
    pub value: f64,
    pub mesh: f64,
    pub argmax: Complex64,
}

pub fn sup_chordal<F, G>(f: F, g: G, k: &CompactSample) -> Result<SupEstimate>
where
    F: Fn(Complex64) -> Result<ExtendedComplex> + Sync,
    G: Fn(Complex64) -> Result<ExtendedComplex> + Sync,
{
    let values: Vec<(usize, f64)> = k
        .points()
        .par_iter()
        .enumerate()
        .map(|(i, &z)| Ok((i, chordal(f(z)?, g(z)?))))
        .collect::<Result<_>>()?;
    // first index wins ties, so the argmax does not depend on scheduling
    let (i, value) = values
        .into_iter()
        .fold((0, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best });
    Ok(SupEstimate { value, mesh: k.mesh(), argmax: k.points()[i] })
}

fn round_dyadic(x: f64, k: u32) -> f64 {
    // once the ulp of x reaches 2^-k, x is already a multiple of 2^-k
    if x == 0.0 || k >= 1075 || x.abs() >= 2f64.powi(53 - k.min(1000) as i32) {
        return x;
    }
    let half = (k / 2) as i32;
    let rest = k as i32 - half;
    let scaled = x * 2f64.powi(half) * 2f64.powi(rest);
    scaled.round() * 2f64.powi(-half) * 2f64.powi(-rest)
}

fn round_poly(p: &Polynomial, k: u32) -> Polynomial {
    Polynomial::new(p.coeffs().iter().map(|c| Complex64::new(round_dyadic(c.re, k), round_dyadic(c.im, k))).collect())
}

/// Every real and imaginary part rounded to the nearest multiple of `2^-k`,
/// then re-normalized.
pub fn rationalize_coefficients(r: &RationalFunction, k: u32) -> Result<RationalFunction> {
    let den = round_poly(r.denominator(), k);
    if den.is_zero() {
        return Err(Error::PrecisionTooCoarse(k));
    }
    RationalFunction::normalize(&round_poly(r.numerator(), k), &den)
}

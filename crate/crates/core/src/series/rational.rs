use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ExtendedComplex, Polynomial, PowerSeries};
use crate::error::{Error, Result};

/// Euclid declares a common factor once a remainder drops below this
/// fraction of the current dividend's norm.
pub const COPRIME_TOL: f64 = 1e-10;

/// A denominator evaluation below this fraction of `sum |b_i||w|^i` counts as zero.
pub const VANISHING_TOL: f64 = 1e-13;

/// `A / B` with `gcd(A, B) = 1` and `B` monic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRational")]
pub struct RationalFunction {
    numerator: Polynomial,
    denominator: Polynomial,
}

#[derive(Deserialize)]
struct RawRational {
    numerator: Polynomial,
    denominator: Polynomial,
}

impl TryFrom<RawRational> for RationalFunction {
    type Error = Error;
    fn try_from(raw: RawRational) -> Result<Self> {
        RationalFunction::normalize(&raw.numerator, &raw.denominator)
    }
}

/// Monic gcd by the Euclidean algorithm with a scale-relative stopping rule.
pub fn polynomial_gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidDenominator);
    }
    if a.is_zero() {
        return Ok(b.monic());
    }
    if b.is_zero() {
        return Ok(a.monic());
    }
    let (mut x, mut y) = (a.monic(), b.monic());
    if x.degree() < y.degree() {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        if y.degree() == Some(0) {
            return Ok(Polynomial::one());
        }
        let (_, r) = x.div_rem(&y)?;
        if r.norm() <= COPRIME_TOL * x.norm() {
            return Ok(y);
        }
        x = y;
        y = r.monic();
    }
}

/// Value of `num/den` on the sphere given both values and their
/// cancellation scales.
pub(crate) fn quotient_on_sphere(
    at: Complex64,
    num: Complex64,
    num_scale: f64,
    den: Complex64,
    den_scale: f64,
) -> Result<ExtendedComplex> {
    let den_zero = den.norm() <= VANISHING_TOL * den_scale;
    let num_zero = num.norm() <= VANISHING_TOL * num_scale;
    match (num_zero, den_zero) {
        (true, true) => Err(Error::IndeterminateValue(at)),
        (false, true) => Ok(ExtendedComplex::Infinity),
        _ => Ok(ExtendedComplex::Finite(num / den)),
    }
}

/// Taylor coefficients of `num/den` in powers of the same variable as the
/// inputs, through `order`. `den(0)` must be nonzero.
pub fn quotient_series(num: &Polynomial, den: &Polynomial, order: usize) -> Vec<Complex64> {
    let b0 = den.coeff(0);
    let db = den.degree_or_zero();
    let mut out: Vec<Complex64> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut acc = num.coeff(n);
        for k in 1..=n.min(db) {
            acc -= den.coeff(k) * out[n - k];
        }
        out.push(acc / b0);
    }
    out
}

/// Derivatives `0..=max_order` of `num/den` at the local point `w`.
pub(crate) fn quotient_derivatives(
    num: &Polynomial,
    den: &Polynomial,
    w: Complex64,
    max_order: usize,
) -> Result<Vec<Complex64>> {
    let den_local = den.shift(w);
    if den_local.coeff(0).norm() <= VANISHING_TOL * den.eval_abs(w) {
        return Err(Error::PoleAtCenter(w));
    }
    let coeffs = quotient_series(&num.shift(w), &den_local, max_order);
    let mut fact = 1.0;
    Ok(coeffs
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            if k > 0 {
                fact *= k as f64;
            }
            c * fact
        })
        .collect())
}

impl RationalFunction {
    /// Cancel the common factor and make the denominator monic.
    pub fn normalize(numerator: &Polynomial, denominator: &Polynomial) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::InvalidDenominator);
        }
        if !(numerator.is_finite() && denominator.is_finite()) {
            return Err(Error::NonFinite("rational coefficients".into()));
        }
        if numerator.is_zero() {
            return Ok(RationalFunction { numerator: Polynomial::zero(), denominator: Polynomial::one() });
        }
        let g = polynomial_gcd(numerator, denominator)?;
        let (a, b) = if g.degree() == Some(0) {
            (numerator.clone(), denominator.clone())
        } else {
            (numerator.div_rem(&g)?.0, denominator.div_rem(&g)?.0)
        };
        let lead = b.leading().inv();
        Ok(RationalFunction { numerator: a.scale(lead), denominator: b.scale(lead) })
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction { numerator: p, denominator: Polynomial::one() }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn is_coprime(a: &Polynomial, b: &Polynomial) -> Result<bool> {
        Ok(polynomial_gcd(a, b)?.degree() == Some(0))
    }

    pub fn eval(&self, z: Complex64) -> Result<ExtendedComplex> {
        quotient_on_sphere(
            z,
            self.numerator.eval(z),
            self.numerator.eval_abs(z),
            self.denominator.eval(z),
            self.denominator.eval_abs(z),
        )
    }

    /// Finite value, or `PoleAtCenter` at a pole.
    pub fn eval_finite(&self, z: Complex64) -> Result<Complex64> {
        match self.eval(z)? {
            ExtendedComplex::Finite(v) => Ok(v),
            ExtendedComplex::Infinity => Err(Error::PoleAtCenter(z)),
        }
    }

    pub fn derivatives(&self, z: Complex64, max_order: usize) -> Result<Vec<Complex64>> {
        quotient_derivatives(&self.numerator, &self.denominator, z, max_order)
    }

    /// Taylor expansion at `center` through `order`.
    pub fn taylor(&self, center: Complex64, order: usize) -> Result<PowerSeries> {
        let den = self.denominator.shift(center);
        if den.coeff(0).norm() <= 1e-12 * self.denominator.eval_abs(center) {
            return Err(Error::PoleAtCenter(center));
        }
        let coeffs = quotient_series(&self.numerator.shift(center), &den, order);
        PowerSeries::new(center, coeffs)
    }

    pub fn add(&self, other: &RationalFunction) -> Result<Self> {
        let num = &(&self.numerator * &other.denominator) + &(&other.numerator * &self.denominator);
        let den = &self.denominator * &other.denominator;
        RationalFunction::normalize(&num, &den)
    }

    pub fn sub(&self, other: &RationalFunction) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        if c.norm() == 0.0 {
            return RationalFunction::from_polynomial(Polynomial::zero());
        }
        RationalFunction { numerator: self.numerator.scale(c), denominator: self.denominator.clone() }
    }

    pub fn add_polynomial(&self, p: &Polynomial) -> Result<Self> {
        let num = &self.numerator + &(p * &self.denominator);
        RationalFunction::normalize(&num, &self.denominator)
    }

    /// Max coefficient difference after zero padding.
    pub fn coefficient_distance(&self, other: &RationalFunction) -> f64 {
        fn dist(a: &Polynomial, b: &Polynomial) -> f64 {
            let n = a.coeffs().len().max(b.coeffs().len());
            (0..n).map(|i| (a.coeff(i) - b.coeff(i)).norm()).fold(0.0, f64::max)
        }
        dist(&self.numerator, &other.numerator).max(dist(&self.denominator, &other.denominator))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn roots(rs: &[f64]) -> Polynomial {
        Polynomial::from_roots(&rs.iter().map(|&r| c(r)).collect::<Vec<_>>())
    }

    #[test]
    fn cancels_common_linear_factor() {
        let r = RationalFunction::normalize(&roots(&[1.0, -2.0]), &roots(&[1.0, -3.0])).unwrap();
        assert!((r.numerator() - &roots(&[-2.0])).max_abs() < 1e-12);
        assert!((r.denominator() - &roots(&[-3.0])).max_abs() < 1e-12);
    }

    #[test]
    fn euclid_oracle_finds_the_shared_root() {
        let g = polynomial_gcd(&roots(&[1.0, -2.0]), &roots(&[1.0, -3.0])).unwrap();
        assert!((&g - &roots(&[1.0])).max_abs() < 1e-12);
    }

    #[test]
    fn coprime_monic_pair_is_left_alone() {
        let a = roots(&[-2.0]);
        let b = roots(&[-3.0]);
        let r = RationalFunction::normalize(&a, &b).unwrap();
        assert_eq!(r.numerator(), &a);
        assert_eq!(r.denominator(), &b);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::normalize(&Polynomial::one(), &Polynomial::zero()),
            Err(Error::InvalidDenominator)
        );
    }

    #[test]
    fn normalization_is_idempotent() {
        let r = RationalFunction::normalize(
            &Polynomial::from_real(&[3.0, -1.0, 2.0]),
            &Polynomial::from_real(&[1.0, 0.5, 4.0]),
        )
        .unwrap();
        let again = RationalFunction::normalize(r.numerator(), r.denominator()).unwrap();
        assert_eq!(again, r);
    }

    fn geometric() -> RationalFunction {
        RationalFunction::normalize(&Polynomial::one(), &Polynomial::from_real(&[1.0, -1.0])).unwrap()
    }

    #[test]
    fn geometric_series_at_origin() {
        let s = geometric().taylor(c(0.0), 5).unwrap();
        for a in s.coefficients() {
            assert!((a - c(1.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn geometric_series_at_one_half() {
        // brute force: 1/(1-z) = 1/(1/2 - w) = 2 sum (2w)^n
        let s = geometric().taylor(c(0.5), 3).unwrap();
        for (n, a) in s.coefficients().iter().enumerate() {
            assert!((a - c(2f64.powi(n as i32 + 1))).norm() < 1e-13);
        }
    }

    #[test]
    fn geometric_series_at_its_pole() {
        assert_eq!(geometric().taylor(c(1.0), 3), Err(Error::PoleAtCenter(c(1.0))));
    }

    #[test]
    fn derivatives_of_simple_pole() {
        let r = geometric();
        let z = Complex64::new(0.2, 0.3);
        let d = r.derivatives(z, 3).unwrap();
        let base = (c(1.0) - z).inv();
        assert!((d[0] - base).norm() < 1e-14);
        assert!((d[1] - base * base).norm() < 1e-13);
        assert!((d[3] - base.powi(4) * 6.0).norm() < 1e-12);
    }

    #[test]
    fn evaluation_at_pole_is_infinity() {
        assert_eq!(geometric().eval(c(1.0)).unwrap(), ExtendedComplex::Infinity);
    }
}

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::registry::AnalyticFunction;
use crate::series::{ExtendedComplex, Polynomial, PowerSeries, RationalFunction};

/// `μ + P`: a proper-ish rational part plus a polynomial, kept apart so that
/// evaluation never forms `P·B` with its large cancellations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplitRational {
    pub principal: RationalFunction,
    pub polynomial: Polynomial,
}

impl SplitRational {
    pub fn new(principal: RationalFunction, polynomial: Polynomial) -> Self {
        SplitRational { principal, polynomial }
    }

    /// Single-fraction form `(A + P B) / B`.
    pub fn to_rational(&self) -> Result<RationalFunction> {
        self.principal.add_polynomial(&self.polynomial)
    }

    pub fn numerator_degree(&self) -> usize {
        let a = self.principal.numerator().degree_or_zero();
        let pb = self.polynomial.degree().map_or(0, |d| d + self.principal.denominator().degree_or_zero());
        a.max(pb)
    }

    pub fn denominator_degree(&self) -> usize {
        self.principal.denominator().degree_or_zero()
    }
}

impl AnalyticFunction for SplitRational {
    fn name(&self) -> &str {
        "split-rational"
    }

    fn eval(&self, z: Complex64) -> Result<ExtendedComplex> {
        Ok(match self.principal.eval(z)? {
            ExtendedComplex::Finite(v) => ExtendedComplex::Finite(v + self.polynomial.eval(z)),
            ExtendedComplex::Infinity => ExtendedComplex::Infinity,
        })
    }

    fn derivatives(&self, z: Complex64, max_order: usize) -> Result<Vec<Complex64>> {
        let mut d = self.principal.derivatives(z, max_order)?;
        for (k, v) in d.iter_mut().enumerate() {
            *v += self.polynomial.eval_derivative(z, k);
        }
        Ok(d)
    }

    fn taylor(&self, center: Complex64, order: usize) -> Result<PowerSeries> {
        let mu = self.principal.taylor(center, order).map_err(|e| match e {
            Error::PoleAtCenter(c) => Error::SingularCenter(c),
            other => other,
        })?;
        let local = self.polynomial.shift(center);
        let coeffs = (0..=order).map(|k| mu.coefficients()[k] + local.coeff(k)).collect();
        PowerSeries::new(center, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_and_joined_forms_agree() {
        let mu = RationalFunction::normalize(&Polynomial::one(), &Polynomial::from_real(&[-2.0, 1.0])).unwrap();
        let f = SplitRational::new(mu, Polynomial::from_real(&[0.5, 0.0, 1.0]));
        let joined = f.to_rational().unwrap();
        let z = Complex64::new(0.3, -0.2);
        assert!((f.eval_finite(z).unwrap() - joined.eval_finite(z).unwrap()).norm() < 1e-14);
        let a = f.taylor(z, 6).unwrap();
        let b = joined.taylor(z, 6).unwrap();
        for (x, y) in a.coefficients().iter().zip(b.coefficients()) {
            assert!((x - y).norm() < 1e-13);
        }
        assert_eq!(f.numerator_degree(), 3);
        assert!(matches!(f.taylor(Complex64::new(2.0, 0.0), 3), Err(Error::SingularCenter(_))));
    }
}

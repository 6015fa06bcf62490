use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{polynomial_gcd, Polynomial, RationalFunction};

/// `p̃ + d z^p`, with `p` strictly above `deg p̃` so the result has exact degree `p`.
pub fn perturb_polynomial(base: &Polynomial, p: usize, d: Complex64) -> Result<Polynomial> {
    if let Some(n) = base.degree() {
        if p <= n {
            return Err(Error::DegreeViolation(format!("p = {p} must exceed deg p̃ = {n}")));
        }
    }
    if d.norm() == 0.0 || !d.is_finite() {
        return Err(Error::Precondition("perturbation must be finite and nonzero".into()));
    }
    let out = base + &Polynomial::monomial(d, p);
    if out.degree() != Some(p) {
        // d vanished under trimming relative to the other coefficients
        return Err(Error::PerturbationDegenerate);
    }
    Ok(out)
}

/// `A/B + d z^T` with `T = p - deg B`, returned in lowest terms.
pub fn perturb_rational(r: &RationalFunction, p: usize, d: Complex64) -> Result<RationalFunction> {
    let deg_b = r.denominator().degree_or_zero();
    if p < deg_b {
        return Err(Error::Precondition(format!("p = {p} is below deg B = {deg_b}")));
    }
    if d.norm() == 0.0 || !d.is_finite() {
        return Err(Error::Precondition("perturbation must be finite and nonzero".into()));
    }
    let t = p - deg_b;
    let num = r.numerator() + &(&Polynomial::monomial(d, t) * r.denominator());
    if num.is_zero() || polynomial_gcd(&num, r.denominator())?.degree_or_zero() > 0 {
        return Err(Error::PerturbationDegenerate);
    }
    RationalFunction::normalize(&num, r.denominator())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pade::pade_construct;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn cubic_perturbation_has_exact_degree() {
        let p = perturb_polynomial(&Polynomial::from_real(&[1.0, 1.0]), 3, c(1e-3)).unwrap();
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.coeff(3), c(1e-3));
        let series = RationalFunction::from_polynomial(p.clone()).taylor(c(0.0), 5).unwrap();
        let approx = pade_construct(&series, 3, 2).unwrap();
        let r = approx.to_rational().unwrap();
        assert!(r.coefficient_distance(&RationalFunction::from_polynomial(p)) < 1e-12);
    }

    #[test]
    fn degree_must_increase() {
        let base = Polynomial::from_real(&[1.0, 0.0, 2.0]);
        assert!(matches!(perturb_polynomial(&base, 2, c(1.0)), Err(Error::DegreeViolation(_))));
        assert!(matches!(perturb_polynomial(&base, 3, c(0.0)), Err(Error::Precondition(_))));
    }

    #[test]
    fn rational_perturbation_keeps_the_pole() {
        let r = RationalFunction::normalize(&Polynomial::one(), &Polynomial::from_real(&[-2.0, 1.0])).unwrap();
        let out = perturb_rational(&r, 3, c(1e-2)).unwrap();
        assert_eq!(out.numerator().degree(), Some(3));
        assert!((out.denominator() - r.denominator()).max_abs() < 1e-15);
        let z = c(0.5);
        let want = r.eval_finite(z).unwrap() + 1e-2 * z * z;
        assert!((out.eval_finite(z).unwrap() - want).norm() < 1e-14);
        assert!(matches!(perturb_rational(&r, 0, c(1.0)), Err(Error::Precondition(_))));
    }

    #[test]
    fn geometric_with_quadratic_perturbation() {
        let r = RationalFunction::normalize(&Polynomial::one(), &Polynomial::from_real(&[1.0, -1.0])).unwrap();
        // T = p - deg B = 2: (1 + 0.01 z^2 (1 - z)) / (1 - z), monic denominator
        let out = perturb_rational(&r, 3, c(0.01)).unwrap();
        let want = RationalFunction::normalize(
            &Polynomial::from_real(&[1.0, 0.0, 0.01, -0.01]),
            &Polynomial::from_real(&[1.0, -1.0]),
        )
        .unwrap();
        assert!(out.coefficient_distance(&want) < 1e-15);
        assert!(RationalFunction::is_coprime(out.numerator(), out.denominator()).unwrap());
    }

    #[test]
    fn cancelling_perturbation_is_rejected() {
        // a constant perturbed by its negative collapses to zero
        let k = RationalFunction::from_polynomial(Polynomial::constant(c(3.0)));
        assert!(matches!(perturb_rational(&k, 0, c(-3.0)), Err(Error::PerturbationDegenerate)));
    }
}

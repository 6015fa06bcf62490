//! Seeded random inputs shared by `--random` flags and the acceptance suite.
//! Everything draws from ChaCha8 so a seed pins the bytes on every platform.

use std::f64::consts::PI;

use num_complex::Complex64;
use pade_lab::{Error, ExtendedComplex, Polynomial, PowerSeries, RationalFunction, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform in the square `[-1, 1]²`.
pub fn unit_square(r: &mut impl Rng) -> Complex64 {
    Complex64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))
}

/// `|z|` uniform in `[lo, hi]`, argument uniform.
pub fn annulus(r: &mut impl Rng, lo: f64, hi: f64) -> Complex64 {
    Complex64::from_polar(r.random_range(lo..hi), r.random_range(-PI..PI))
}

/// Coefficients uniform in the unit square up to `order`.
pub fn random_series(r: &mut impl Rng, center: Complex64, order: usize) -> PowerSeries {
    PowerSeries::new(center, (0..=order).map(|_| unit_square(r)).collect()).expect("finite coefficients")
}

/// Coprime `A/B` with `deg A = num_deg`, `deg B = den_deg` and every pole
/// at distance ≥ 0.5 from `center`. Redraws until coprime.
pub fn random_rational(r: &mut impl Rng, num_deg: usize, den_deg: usize, center: Complex64) -> RationalFunction {
    loop {
        let roots: Vec<Complex64> = (0..den_deg).map(|_| center + annulus(r, 0.5, 2.0)).collect();
        let den = Polynomial::from_roots(&roots);
        let mut num: Vec<Complex64> = (0..=num_deg).map(|_| unit_square(r)).collect();
        // keep the leading coefficient away from zero so the degree is exact
        num[num_deg] = annulus(r, 0.5, 1.0);
        let num = Polynomial::new(num);
        if RationalFunction::is_coprime(&num, &den).unwrap_or(false) {
            if let Ok(rf) = RationalFunction::normalize(&num, &den) {
                return rf;
            }
        }
    }
}

/// Mixed points of the sphere: mostly finite over nine decades of modulus,
/// with zero and ∞ drawn often enough to exercise the special cases.
pub fn random_extended(r: &mut impl Rng) -> ExtendedComplex {
    match r.random_range(0..20) {
        0 => ExtendedComplex::Infinity,
        1 => ExtendedComplex::Finite(Complex64::new(0.0, 0.0)),
        _ => {
            let m = 10f64.powf(r.random_range(-4.5..4.5));
            ExtendedComplex::Finite(Complex64::from_polar(m, r.random_range(-PI..PI)))
        }
    }
}

/// A rational whose poles are exactly `poles`, each with the given order,
/// plus a random polynomial part of degree `poly_deg`.
pub fn rational_with_poles(r: &mut impl Rng, poles: &[(Complex64, usize)], poly_deg: usize) -> Result<RationalFunction> {
    let mut total = RationalFunction::from_polynomial(Polynomial::new((0..=poly_deg).map(|_| unit_square(r)).collect()));
    for &(a, m) in poles {
        for j in 1..=m {
            let mut c = unit_square(r);
            if j == m {
                c = annulus(r, 0.5, 1.0);
            }
            let den = Polynomial::linear_factor(a).pow(j);
            total = total.add(&RationalFunction::normalize(&Polynomial::constant(c), &den)?)?;
        }
    }
    Ok(total)
}

/// `c0 + c1 z + c2 z² + a e^{bz} + ρ/(z − w)` with `|w| ≥ 4`: analytic and
/// bounded on any domain inside the disc of radius 3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestFunction {
    pub poly: [Complex64; 3],
    pub amp: Complex64,
    pub rate: Complex64,
    pub residue: Complex64,
    pub pole: Complex64,
}

impl TestFunction {
    pub fn random(r: &mut impl Rng) -> Self {
        TestFunction {
            poly: [unit_square(r), unit_square(r), unit_square(r)],
            amp: unit_square(r),
            rate: unit_square(r) * 2.0,
            residue: unit_square(r),
            pole: annulus(r, 4.0, 6.0),
        }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let d = z - self.pole;
        if d.norm() == 0.0 {
            return Err(Error::SingularPoint(z));
        }
        Ok(self.poly[0] + z * (self.poly[1] + z * self.poly[2]) + self.amp * (self.rate * z).exp() + self.residue / d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_draws() {
        let a = random_series(&mut rng(7), Complex64::new(0.0, 0.0), 5);
        let b = random_series(&mut rng(7), Complex64::new(0.0, 0.0), 5);
        assert_eq!(a, b);
        let c = random_series(&mut rng(8), Complex64::new(0.0, 0.0), 5);
        assert_ne!(a, c);
    }

    #[test]
    fn random_rationals_have_the_asked_degrees() {
        let mut r = rng(3);
        for (n, d) in [(0, 1), (2, 2), (4, 1), (1, 4)] {
            let rf = random_rational(&mut r, n, d, Complex64::new(0.0, 0.0));
            assert_eq!(rf.numerator().degree(), Some(n));
            assert_eq!(rf.denominator().degree(), Some(d));
        }
    }

    #[test]
    fn listed_poles_are_the_only_poles() {
        let poles = [(Complex64::new(-2.0, 0.0), 2), (Complex64::new(0.0, 1.0), 2)];
        let rf = rational_with_poles(&mut rng(11), &poles, 1).unwrap();
        assert_eq!(rf.denominator().degree(), Some(4));
        for (a, _) in poles {
            assert!(rf.denominator().eval(a).norm() < 1e-12);
        }
    }
}

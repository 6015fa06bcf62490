//! Complex polynomials, truncated power series and rational functions.

mod extended;
mod polynomial;
mod power_series;
mod rational;

pub use extended::ExtendedComplex;
pub use polynomial::{Polynomial, ZERO_FLOOR};
pub use power_series::PowerSeries;
pub use rational::{polynomial_gcd, quotient_series, RationalFunction, COPRIME_TOL, VANISHING_TOL};

pub(crate) use rational::{quotient_derivatives, quotient_on_sphere};

use num_complex::Complex64;

use crate::error::Result;
use crate::registry::FunctionRegistry;

/// Taylor expansion of a named builtin (`exp`, `log1m`, `geometric`).
pub fn series_builtin(name: &str, center: Complex64, order: usize) -> Result<PowerSeries> {
    FunctionRegistry::with_builtins().taylor(name, center, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn close(s: &PowerSeries, expect: &[f64]) {
        assert_eq!(s.coefficients().len(), expect.len());
        for (a, e) in s.coefficients().iter().zip(expect) {
            assert!((a - Complex64::new(*e, 0.0)).norm() < 1e-15, "{a} vs {e}");
        }
    }

    #[test]
    fn builtin_fixtures() {
        let zero = Complex64::new(0.0, 0.0);
        close(&series_builtin("exp", zero, 4).unwrap(), &[1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0]);
        close(&series_builtin("log1m", zero, 3).unwrap(), &[0.0, -1.0, -0.5, -1.0 / 3.0]);
        close(&series_builtin("geometric", zero, 3).unwrap(), &[1.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn log1m_singular_at_one() {
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(series_builtin("log1m", one, 3), Err(Error::SingularCenter(one)));
    }
}

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::registry::AnalyticFunction;
use crate::series::{Polynomial, PowerSeries};

/// Integrate `p_n` back up `n` times, taking the constant at each level from
/// `values[k] = f^(k)(z0)`. The result `p` has `p^(n) = p_n` and matches the
/// first `n` derivatives of `f` at `z0`.
pub fn antiderivative_cascade(values: &[Complex64], top: &Polynomial, z0: Complex64, n: usize) -> Result<Polynomial> {
    if values.len() != n {
        return Err(Error::Precondition(format!("need {n} derivative values at z0, got {}", values.len())));
    }
    let mut p = top.clone();
    for k in (0..n).rev() {
        p = &p.antiderivative(z0) + &Polynomial::constant(values[k]);
    }
    Ok(p)
}

/// `max |f^(k) - p^(k)|` over `points`, for `k = 0..=n`.
pub fn derivative_errors(f: &dyn AnalyticFunction, p: &Polynomial, points: &[Complex64], n: usize) -> Result<Vec<f64>> {
    let mut out = vec![0.0f64; n + 1];
    for &z in points {
        let fd = f.derivatives(z, n)?;
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = slot.max((fd[k] - p.eval_derivative(z, k)).norm());
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CascadeBound {
    pub level: usize,
    pub error: f64,
    /// `M^(n-k) e_n / (n-k)!`
    pub bound: f64,
}

/// Error propagation through the cascade: `e_k <= M^(n-k) e_n / (n-k)!`.
pub fn cascade_bounds(errors: &[f64], path_budget: f64) -> Vec<CascadeBound> {
    let Some(&top) = errors.last() else {
        return Vec::new();
    };
    let n = errors.len() - 1;
    let mut fact = 1.0;
    let mut out = Vec::with_capacity(n + 1);
    for (i, k) in (0..=n).rev().enumerate() {
        if i > 0 {
            fact *= i as f64;
        }
        out.push(CascadeBound { level: k, error: errors[k], bound: path_budget.powi(i as i32) * top / fact });
    }
    out.reverse();
    out
}

/// `T_g(f)(z) = ∫_c^z f(t) g'(t) dt` on truncated series about a common center.
/// The output is exact through order `min(N_f + 1, N_g)`.
pub fn volterra_apply(f: &PowerSeries, g: &PowerSeries) -> Result<PowerSeries> {
    if f.center() != g.center() {
        return Err(Error::MismatchedCenters(f.center(), g.center()));
    }
    let a = f.coefficients();
    let b = g.coefficients();
    let order = (f.truncation_order() + 1).min(g.truncation_order());
    if order == 0 {
        return Err(Error::Precondition("the symbol needs at least a linear term".into()));
    }
    let mut c = vec![Complex64::new(0.0, 0.0); order + 1];
    for m in 0..order {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..=m {
            acc += a[k] * b[m - k + 1] * (m - k + 1) as f64;
        }
        c[m + 1] = acc / (m + 1) as f64;
    }
    PowerSeries::new(f.center(), c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::Exp;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn cascade_recovers_cubic() {
        // f = 1 + 2z + 3z^2 + 4z^3, f''' = 24
        let f = Polynomial::from_real(&[1.0, 2.0, 3.0, 4.0]);
        let z0 = c(0.3);
        let values: Vec<_> = (0..3).map(|k| f.eval_derivative(z0, k)).collect();
        let p = antiderivative_cascade(&values, &Polynomial::constant(c(24.0)), z0, 3).unwrap();
        assert!((&p - &f).max_abs() < 1e-13);
    }

    #[test]
    fn cascade_matches_exp_near_base() {
        let z0 = c(0.0);
        let top = Polynomial::new((0..12).map(|k| c(1.0 / (1..=k).map(|v| v as f64).product::<f64>())).collect());
        let p = antiderivative_cascade(&[c(1.0), c(1.0)], &top, z0, 2).unwrap();
        let pts: Vec<_> = (0..9).map(|k| Complex64::from_polar(0.5, k as f64)).collect();
        let e = derivative_errors(&Exp, &p, &pts, 2).unwrap();
        assert!(e.iter().all(|v| *v < 1e-8), "{e:?}");
        let b = cascade_bounds(&e, 1.0);
        assert_eq!(b.len(), 3);
        assert_eq!(b[2].bound, e[2]);
    }

    #[test]
    fn volterra_with_identity_symbol_integrates() {
        let f = PowerSeries::new(c(0.0), vec![c(1.0), c(2.0), c(3.0)]).unwrap();
        let g = PowerSeries::new(c(0.0), vec![c(0.0), c(1.0), c(0.0), c(0.0), c(0.0)]).unwrap();
        let out = volterra_apply(&f, &g).unwrap();
        let want = [c(0.0), c(1.0), c(1.0), c(1.0)];
        assert_eq!(out.coefficients(), &want);
    }

    #[test]
    fn volterra_rejects_different_centers() {
        let f = PowerSeries::new(c(0.0), vec![c(1.0)]).unwrap();
        let g = PowerSeries::new(c(1.0), vec![c(0.0), c(1.0)]).unwrap();
        assert!(matches!(volterra_apply(&f, &g), Err(Error::MismatchedCenters(..))));
    }

    #[test]
    fn volterra_of_exp_with_exp_symbol() {
        // ∫_0^z e^t e^t dt = (e^{2z} - 1)/2
        let e = Exp.taylor(c(0.0), 10).unwrap();
        let out = volterra_apply(&e, &e).unwrap();
        for (m, v) in out.coefficients().iter().enumerate().skip(1) {
            let want = 2f64.powi(m as i32 - 1) / (1..=m).map(|k| k as f64).product::<f64>();
            assert!((v - c(want)).norm() < 1e-14, "m={m}");
        }
    }

    fn series(v: Vec<(f64, f64)>) -> PowerSeries {
        PowerSeries::new(c(0.0), v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap()
    }

    proptest! {
        #[test]
        fn volterra_is_linear(
            f1 in prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 6),
            f2 in prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 6),
            g in prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 7),
            s in -3.0..3.0f64,
        ) {
            let (f1, f2, g) = (series(f1), series(f2), series(g));
            let lhs = volterra_apply(&f1.add(&f2.scale(c(s))).unwrap(), &g).unwrap();
            let a = volterra_apply(&f1, &g).unwrap();
            let b = volterra_apply(&f2, &g).unwrap();
            let rhs = a.add(&b.scale(c(s))).unwrap();
            for (x, y) in lhs.coefficients().iter().zip(rhs.coefficients()) {
                prop_assert!((x - y).norm() < 1e-11);
            }
            prop_assert_eq!(lhs.coefficients()[0], c(0.0));
        }
    }
}

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::least_squares;
use crate::pade::CompactSample;
use crate::series::Polynomial;

/// `target(z, l)` is the `l`-th derivative of the function to match.
pub type TargetFn = Arc<dyn Fn(Complex64, usize) -> Result<Complex64> + Send + Sync>;

#[derive(Clone)]
pub enum FitTarget {
    Function(TargetFn),
    /// `values[l][i]` at the `i`-th sample point; cannot be refined.
    Values(Vec<Vec<Complex64>>),
}

impl fmt::Debug for FitTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitTarget::Function(_) => write!(f, "Function(..)"),
            FitTarget::Values(v) => write!(f, "Values({} orders)", v.len()),
        }
    }
}

/// Match derivatives `0..=max_order` of the target on one sampled set.
#[derive(Debug, Clone)]
pub struct FitConstraint {
    pub sample: CompactSample,
    pub max_order: usize,
    pub target: FitTarget,
}

impl FitConstraint {
    pub fn function(
        sample: CompactSample,
        max_order: usize,
        f: impl Fn(Complex64, usize) -> Result<Complex64> + Send + Sync + 'static,
    ) -> Self {
        FitConstraint { sample, max_order, target: FitTarget::Function(Arc::new(f)) }
    }

    pub fn values(sample: CompactSample, values: Vec<Vec<Complex64>>) -> Result<Self> {
        if values.is_empty() || values.iter().any(|v| v.len() != sample.len()) {
            return Err(Error::Precondition("one value per sample point and order is required".into()));
        }
        Ok(FitConstraint { sample, max_order: values.len() - 1, target: FitTarget::Values(values) })
    }

    fn target_at(&self, sample: &CompactSample, i: usize, order: usize) -> Result<Complex64> {
        match &self.target {
            FitTarget::Function(f) => f(sample.points()[i], order),
            FitTarget::Values(v) => Ok(v[order][i]),
        }
    }

    /// The grid used for the acceptance check: 4x finer when possible.
    fn verification_sample(&self, factor: usize) -> CompactSample {
        match (&self.target, self.sample.refine(factor)) {
            (FitTarget::Function(_), Some(fine)) => fine,
            _ => self.sample.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub max_degree: usize,
    pub tol: f64,
    pub min_degree: usize,
    pub refine: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions { max_degree: 40, tol: 1e-2, min_degree: 0, refine: 4 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    pub polynomial: Polynomial,
    pub degree: usize,
    /// `residuals[c][l]`: max error of derivative `l` on constraint `c`'s
    /// verification grid.
    pub residuals: Vec<Vec<f64>>,
    pub verification_points: usize,
    pub basis_center: Complex64,
}

impl FitReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().flatten().copied().fold(0.0, f64::max)
    }
}

fn falling(k: usize, l: usize) -> f64 {
    (k + 1 - l..=k).map(|v| v as f64).product()
}

/// Solve the least-squares problem for one degree in the basis
/// `((z - c0)/rho)^k` and return the polynomial in `z`.
fn solve_degree(cons: &[FitConstraint], degree: usize, c0: Complex64, rho: f64) -> Result<Polynomial> {
    let cols = degree + 1;
    let rows: usize = cons.iter().map(|c| c.sample.len() * (c.max_order + 1)).sum();
    let mut a = DMatrix::<Complex64>::zeros(rows.max(cols), cols);
    let mut b = vec![Complex64::new(0.0, 0.0); rows.max(cols)];
    let mut r = 0;
    for c in cons {
        for l in 0..=c.max_order {
            let scale = rho.powi(-(l as i32));
            for (i, &z) in c.sample.points().iter().enumerate() {
                let u = (z - c0) / rho;
                for k in l..cols {
                    a[(r, k)] = u.powu((k - l) as u32) * (falling(k, l) * scale);
                }
                b[r] = c.target_at(&c.sample, i, l)?;
                r += 1;
            }
        }
    }
    // underdetermined systems get zero rows, i.e. a minimum-change solve
    let x = least_squares(&a, &b)?;
    let local = Polynomial::new(x.iter().enumerate().map(|(k, v)| v * rho.powi(-(k as i32))).collect());
    Ok(local.shift(-c0))
}

fn residuals(p: &Polynomial, cons: &[FitConstraint], refine: usize) -> Result<(Vec<Vec<f64>>, usize)> {
    let mut out = Vec::with_capacity(cons.len());
    let mut npts = 0;
    for c in cons {
        let sample = c.verification_sample(refine);
        npts += sample.len();
        let mut per = Vec::with_capacity(c.max_order + 1);
        for l in 0..=c.max_order {
            let dp = p.nth_derivative(l);
            let mut worst = 0.0f64;
            for i in 0..sample.len() {
                let e = (dp.eval(sample.points()[i]) - c.target_at(&sample, i, l)?).norm();
                worst = worst.max(if e.is_finite() { e } else { f64::INFINITY });
            }
            per.push(worst);
        }
        out.push(per);
    }
    Ok((out, npts))
}

/// Smallest-degree polynomial that meets every constraint to `tol` on the
/// (refined) verification grids.
pub fn two_set_poly_fit(cons: &[FitConstraint], opts: FitOptions) -> Result<FitReport> {
    if cons.is_empty() {
        return Err(Error::Precondition("at least one constraint set is required".into()));
    }
    for (i, a) in cons.iter().enumerate() {
        for b in &cons[i + 1..] {
            let gap = a
                .sample
                .points()
                .iter()
                .flat_map(|x| b.sample.points().iter().map(move |y| (x - y).norm()))
                .fold(f64::INFINITY, f64::min);
            if gap == 0.0 {
                return Err(Error::Precondition(format!(
                    "constraint sets {:?} and {:?} overlap",
                    a.sample.label(),
                    b.sample.label()
                )));
            }
        }
    }
    let pts = cons.iter().flat_map(|c| c.sample.points().iter().copied());
    let (mut lo, mut hi) = (Complex64::new(f64::INFINITY, f64::INFINITY), Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    for z in pts {
        lo = Complex64::new(lo.re.min(z.re), lo.im.min(z.im));
        hi = Complex64::new(hi.re.max(z.re), hi.im.max(z.im));
    }
    let c0 = (lo + hi) * 0.5;
    let rho = cons
        .iter()
        .flat_map(|c| c.sample.points().iter().map(|z| (z - c0).norm()))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);

    let mut best: Option<(f64, usize)> = None;
    for degree in opts.min_degree..=opts.max_degree {
        let p = match solve_degree(cons, degree, c0, rho) {
            Ok(p) => p,
            Err(Error::NonFinite(_)) => continue,
            Err(e) => return Err(e),
        };
        let (res, npts) = residuals(&p, cons, opts.refine)?;
        let worst = res.iter().flatten().copied().fold(0.0, f64::max);
        if best.is_none_or(|(b, _)| worst < b) {
            best = Some((worst, degree));
        }
        if worst <= opts.tol {
            return Ok(FitReport {
                degree: p.degree_or_zero(),
                polynomial: p,
                residuals: res,
                verification_points: npts,
                basis_center: c0,
            });
        }
    }
    let (best_residual, degree) = best.unwrap_or((f64::INFINITY, opts.max_degree));
    Err(Error::FitFailure { best_residual, degree })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn polynomial_target_is_recovered() {
        let l = CompactSample::disc_grid(c(0.0, 0.0), 0.5, 8, 10).unwrap();
        let con = FitConstraint::function(l, 2, |z, k| {
            Ok([z * z, z * 2.0, c(2.0, 0.0)].get(k).copied().unwrap_or(c(0.0, 0.0)))
        });
        let fit = two_set_poly_fit(&[con], FitOptions { tol: 1e-10, ..Default::default() }).unwrap();
        assert_eq!(fit.degree, 2);
        assert!((&fit.polynomial - &Polynomial::from_real(&[0.0, 0.0, 1.0])).max_abs() < 1e-13);
        assert!(fit.max_residual() < 1e-13);
    }

    fn two_disc_constraints(pole: f64) -> [FitConstraint; 2] {
        let k = CompactSample::circle(c(2.0, 0.0), 0.25, 64).unwrap();
        let l = CompactSample::disc_grid(c(0.0, 0.0), 0.5, 8, 10).unwrap();
        [
            FitConstraint::function(k, 0, move |z, _| Ok((z - pole).inv())),
            FitConstraint::function(l, 1, |z, k| Ok(if k == 0 { z * z } else { z * 2.0 })),
        ]
    }

    #[test]
    fn two_discs_are_separable() {
        let opts = FitOptions { max_degree: 40, tol: 0.1, ..Default::default() };
        let fit = two_set_poly_fit(&two_disc_constraints(1.2), opts).unwrap();
        assert!(fit.max_residual() <= 0.1);
        assert!(fit.degree <= 20, "{}", fit.degree);
        assert!(fit.verification_points > 64 + 81);
    }

    #[test]
    fn pole_hugging_target_is_out_of_reach_at_degree_40() {
        // 1/(z - 1.7) peaks at 20 on K; degree 40 cannot get within 0.1
        let opts = FitOptions { max_degree: 40, tol: 0.1, ..Default::default() };
        match two_set_poly_fit(&two_disc_constraints(1.7), opts) {
            Err(Error::FitFailure { best_residual, .. }) => assert!(best_residual > 1.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn incompatible_targets_fail() {
        let a = CompactSample::segment(c(-1.0, 0.0), c(-0.5, 0.0), 8).unwrap();
        let b = CompactSample::segment(c(0.5, 0.0), c(1.0, 0.0), 8).unwrap();
        let ca = FitConstraint::function(a, 0, |_, _| Ok(c(1.0, 0.0)));
        let cb = FitConstraint::function(b, 0, |_, _| Ok(c(-1.0, 0.0)));
        let err = two_set_poly_fit(&[ca, cb], FitOptions { max_degree: 0, tol: 1e-3, ..Default::default() });
        assert!(matches!(err, Err(Error::FitFailure { degree: 0, .. })));
        if let Err(Error::FitFailure { best_residual, .. }) = err {
            assert!((best_residual - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn explicit_values_are_checked_on_their_own_points() {
        let s = CompactSample::segment(c(0.0, 0.0), c(1.0, 0.0), 5).unwrap();
        let vals = vec![s.points().iter().map(|z| z * 3.0 + 1.0).collect()];
        let con = FitConstraint::values(s, vals).unwrap();
        let fit = two_set_poly_fit(&[con], FitOptions { tol: 1e-12, ..Default::default() }).unwrap();
        assert_eq!(fit.degree, 1);
        assert_eq!(fit.verification_points, 5);
    }
}

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::fit::{two_set_poly_fit, FitConstraint, FitOptions, FitReport};
use super::partial::{principal_parts, PrincipalPart, Region};
use super::perturb::perturb_polynomial;
use super::split::SplitRational;
use crate::domains::DomainSpec;
use crate::error::{Error, Result};
use crate::pade::{hankel_determinant, in_e, pade_construct, CompactSample};
use crate::registry::AnalyticFunction;
use crate::series::ZERO_FLOOR;
use crate::series::{ExtendedComplex, RationalFunction};
use crate::sphere::{chordal, sup_chordal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertificateOptions {
    pub p: usize,
    pub q: usize,
    pub s: usize,
    /// Derivatives `0..=derivative_orders` are compared on Δ.
    pub derivative_orders: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CenterStatus {
    Ok,
    /// Both Jacobi determinants vanish identically.
    Degenerate,
    /// The function has a pole at this center.
    Singular,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CenterRecord {
    pub center: Complex64,
    pub status: CenterStatus,
    pub hankel: Complex64,
    pub normal: bool,
    pub common_zero_k: f64,
    pub common_zero_delta: f64,
    pub sup_chordal_k: f64,
    pub derivative_errors: Vec<f64>,
}

impl CenterRecord {
    fn failed(center: Complex64, status: CenterStatus, hankel: Complex64, orders: usize) -> Self {
        CenterRecord {
            center,
            status,
            hankel,
            normal: false,
            common_zero_k: 0.0,
            common_zero_delta: 0.0,
            sup_chordal_k: 1.0,
            derivative_errors: vec![f64::INFINITY; orders + 1],
        }
    }
}

/// Sampled witness for membership of `f` in the E- and T-sets at `(p, q, s)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniversalityCertificate {
    pub p: usize,
    pub q: usize,
    pub s: usize,
    #[serde(rename = "sup_chordal_on_K")]
    pub sup_chordal_on_k: f64,
    /// Indexed by derivative order.
    pub sup_derivative_errors_on_delta: Vec<f64>,
    #[serde(rename = "hankel_values_over_L")]
    pub hankel_values_over_l: Vec<Complex64>,
    pub min_common_zero_k: f64,
    pub min_common_zero_delta: f64,
    pub mesh_k: f64,
    pub mesh_delta: f64,
    pub e_set_member: bool,
    pub t_set_member: bool,
    #[serde(skip)]
    pub centers: Vec<CenterRecord>,
}

fn certify_center(
    f: &dyn AnalyticFunction,
    target: &dyn AnalyticFunction,
    zeta: Complex64,
    k: &CompactSample,
    delta: &CompactSample,
    o: CertificateOptions,
) -> Result<CenterRecord> {
    let series = match f.taylor(zeta, o.p + o.q) {
        Ok(s) => s,
        Err(Error::SingularCenter(_)) | Err(Error::PoleAtCenter(_)) => {
            return Ok(CenterRecord::failed(zeta, CenterStatus::Singular, Complex64::new(0.0, 0.0), o.derivative_orders))
        }
        Err(e) => return Err(e),
    };
    let approx = match pade_construct(&series, o.p, o.q) {
        Ok(a) => a,
        Err(Error::DegeneratePade) => {
            let h = hankel_determinant(&series, o.p, o.q)?;
            return Ok(CenterRecord::failed(zeta, CenterStatus::Degenerate, h, o.derivative_orders));
        }
        Err(e) => return Err(e),
    };
    let ek = in_e(&approx, k)?;
    let ed = in_e(&approx, delta)?;
    // an indeterminate 0/0 value counts as the worst possible distance
    let sup = sup_chordal(
        |z| match approx.eval_extended(z) {
            Err(Error::IndeterminateValue(_)) => Ok(ExtendedComplex::Finite(Complex64::new(f64::NAN, 0.0))),
            other => other,
        },
        |z| target.eval(z),
        k,
    )?;
    let sup_k = if sup.value.is_nan() { 1.0 } else { sup.value };
    let mut derr = vec![0.0f64; o.derivative_orders + 1];
    for &z in delta.points() {
        let want = f.derivatives(z, o.derivative_orders)?;
        match approx.derivatives(z, o.derivative_orders) {
            Ok(got) => {
                for (l, slot) in derr.iter_mut().enumerate() {
                    let e = (got[l] - want[l]).norm();
                    *slot = slot.max(if e.is_finite() { e } else { f64::INFINITY });
                }
            }
            Err(Error::PoleAtCenter(_)) => derr.iter_mut().for_each(|v| *v = f64::INFINITY),
            Err(e) => return Err(e),
        }
    }
    Ok(CenterRecord {
        center: zeta,
        status: CenterStatus::Ok,
        hankel: approx.hankel,
        normal: approx.normal,
        common_zero_k: ek.relative,
        common_zero_delta: ed.relative,
        sup_chordal_k: sup_k,
        derivative_errors: derr,
    })
}

/// Check every center of `l`: normality, no common zeros on `k` and `delta`,
/// chordal closeness to `target` on `k`, derivative closeness to `f` on `delta`.
pub fn universality_certificate(
    f: &dyn AnalyticFunction,
    target: &dyn AnalyticFunction,
    l: &CompactSample,
    k: &CompactSample,
    delta: &CompactSample,
    o: CertificateOptions,
) -> Result<UniversalityCertificate> {
    if o.s == 0 {
        return Err(Error::Precondition("s must be positive".into()));
    }
    let centers: Vec<CenterRecord> =
        l.points().par_iter().map(|&z| certify_center(f, target, z, k, delta, o)).collect::<Result<_>>()?;
    let bound = 1.0 / o.s as f64;
    let max = |it: &mut dyn Iterator<Item = f64>| it.fold(0.0f64, f64::max);
    let min = |it: &mut dyn Iterator<Item = f64>| it.fold(f64::INFINITY, f64::min);
    let sup_k = max(&mut centers.iter().map(|c| c.sup_chordal_k));
    let sup_d: Vec<f64> =
        (0..=o.derivative_orders).map(|j| max(&mut centers.iter().map(|c| c.derivative_errors[j]))).collect();
    let min_k = min(&mut centers.iter().map(|c| c.common_zero_k));
    let min_d = min(&mut centers.iter().map(|c| c.common_zero_delta));
    let cutoff = crate::pade::COMMON_ZERO_TOL;
    let all_normal = centers.iter().all(|c| c.normal);
    Ok(UniversalityCertificate {
        p: o.p,
        q: o.q,
        s: o.s,
        sup_chordal_on_k: sup_k,
        hankel_values_over_l: centers.iter().map(|c| c.hankel).collect(),
        min_common_zero_k: min_k,
        min_common_zero_delta: min_d,
        mesh_k: k.mesh(),
        mesh_delta: delta.mesh(),
        e_set_member: all_normal && min_k > cutoff && sup_k < bound,
        t_set_member: all_normal && min_d > cutoff && sup_d.iter().all(|v| *v < bound),
        sup_derivative_errors_on_delta: sup_d,
        centers,
    })
}

/// Inputs of the end-to-end construction: approximate `target` chordally on
/// `k` and `approximand` with derivatives on `l`, by a rational function with
/// no poles in `omega`.
#[derive(Clone)]
pub struct UniversalityConfig {
    pub k: CompactSample,
    pub l: CompactSample,
    pub delta: CompactSample,
    pub target: RationalFunction,
    pub approximand: Arc<dyn AnalyticFunction>,
    pub omega: DomainSpec,
    pub s: usize,
    pub fit_order: usize,
    pub fit: FitOptions,
    pub derivative_orders: usize,
    /// Overrides the automatic choice of `d`.
    pub perturbation: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct UniversalityOutcome {
    pub function: SplitRational,
    pub principal: PrincipalPart,
    pub fit: FitReport,
    pub perturbation: f64,
    pub exponent: usize,
    pub attempts: usize,
    pub certificate: UniversalityCertificate,
}

const MAX_HALVINGS: usize = 40;

/// Principal parts of the target inside `k`, a two-set polynomial fit for the
/// rest, then a small `d z^T` so the Padé type is attained, then the certificate.
pub fn universality_pipeline(cfg: &UniversalityConfig) -> Result<UniversalityOutcome> {
    let principal = principal_parts(&cfg.target, &Region::Enclosed(cfg.k.clone()))?;
    for p in &principal.poles {
        if cfg.omega.contains(p.location) {
            return Err(Error::Unsupported(format!("pole {} of the target lies in the domain", p.location)));
        }
    }
    let mu = principal.rational.clone();
    let (h, m1, m2) = (cfg.target.clone(), mu.clone(), mu.clone());
    let g = cfg.approximand.clone();
    let kc = FitConstraint::function(cfg.k.clone(), 0, move |z, l| {
        Ok(h.derivatives(z, l)?[l] - m1.derivatives(z, l)?[l])
    });
    let lc = FitConstraint::function(cfg.l.clone(), cfg.fit_order, move |z, l| {
        Ok(g.derivatives(z, l)?[l] - m2.derivatives(z, l)?[l])
    });
    let fit = two_set_poly_fit(&[kc, lc], cfg.fit)?;

    let deg_b = mu.denominator().degree_or_zero();
    let t = fit.polynomial.degree().map_or(0, |d| d + 1);
    let (p, q) = (t + deg_b, deg_b);
    let sup_zt = cfg
        .k
        .points()
        .iter()
        .chain(cfg.l.points())
        .map(|z| z.norm().powi(t as i32))
        .fold(1.0f64, f64::max);
    // below this the new top coefficient is trimmed away as noise
    let floor = 10.0 * ZERO_FLOOR * fit.polynomial.max_abs().max(1.0);
    let mut d = cfg.perturbation.unwrap_or((1e-3 * cfg.fit.tol / sup_zt).max(floor));
    let opts = CertificateOptions { p, q, s: cfg.s, derivative_orders: cfg.derivative_orders };
    let mut attempts = 0;
    loop {
        attempts += 1;
        let poly = perturb_polynomial(&fit.polynomial, t, Complex64::new(d, 0.0))?;
        let f = SplitRational::new(mu.clone(), poly);
        let certificate = universality_certificate(&f, &cfg.target, &cfg.l, &cfg.k, &cfg.delta, opts)?;
        let done = certificate.e_set_member && certificate.t_set_member;
        if done || cfg.perturbation.is_some() || attempts > MAX_HALVINGS || 0.5 * d < floor {
            return Ok(UniversalityOutcome {
                function: f,
                principal,
                fit,
                perturbation: d,
                exponent: t,
                attempts,
                certificate,
            });
        }
        d *= 0.5;
    }
}

/// Chordal distance between two functions at one point, with `0/0` mapped to 1.
pub fn pointwise_chordal(a: Result<ExtendedComplex>, b: Result<ExtendedComplex>) -> Result<f64> {
    match (a, b) {
        (Err(Error::IndeterminateValue(_)), _) | (_, Err(Error::IndeterminateValue(_))) => Ok(1.0),
        (a, b) => Ok(chordal(a?, b?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::Geometric;
    use crate::series::Polynomial;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn degenerate_pade_is_not_a_member() {
        let l = CompactSample::disc_grid(c(0.0, 0.0), 0.5, 2, 4).unwrap();
        let k = CompactSample::circle(c(2.0, 0.0), 0.25, 16).unwrap();
        let o = CertificateOptions { p: 1, q: 2, s: 10, derivative_orders: 2 };
        let cert = universality_certificate(&Geometric, &Geometric, &l, &k, &l, o).unwrap();
        assert!(!cert.e_set_member && !cert.t_set_member);
        // the geometric series at 0 has an identically zero (1,2) Hankel determinant
        assert_eq!(cert.hankel_values_over_l[0], c(0.0, 0.0));
        assert_eq!(cert.centers[0].status, CenterStatus::Degenerate);
    }

    #[test]
    fn exact_rational_is_reproduced() {
        // f = 1/(z-2) + z^2: type (3, 1)
        let mu = RationalFunction::normalize(&Polynomial::one(), &Polynomial::from_real(&[-2.0, 1.0])).unwrap();
        let f = SplitRational::new(mu.clone(), Polynomial::from_real(&[0.0, 0.0, 1.0]));
        let l = CompactSample::disc_grid(c(0.0, 0.0), 0.5, 2, 4).unwrap();
        let k = CompactSample::circle(c(2.0, 0.0), 0.25, 16).unwrap();
        let o = CertificateOptions { p: 3, q: 1, s: 10, derivative_orders: 3 };
        let cert = universality_certificate(&f, &mu, &l, &k, &l, o).unwrap();
        assert!(cert.t_set_member);
        assert!(cert.sup_derivative_errors_on_delta.iter().all(|e| *e < 1e-9));
        // on K the polynomial part is not small, so chordal closeness fails
        assert!(!cert.e_set_member);
        let json = serde_json::to_value(&cert).unwrap();
        for key in ["sup_chordal_on_K", "sup_derivative_errors_on_delta", "hankel_values_over_L", "e_set_member", "t_set_member"] {
            assert!(json.get(key).is_some(), "{key}");
        }
    }
}

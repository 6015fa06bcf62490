//! The boundary-blowup counterexample: the map `g(z) = (z-1)exp((z+1)/(z-1))`,
//! its circle invariants, and the ln-ln divergence of `∫ h(t) dt` near `t = 0`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::domains::quadrature::{integrate, CompensatedSum};
use crate::error::{Error, Result};

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Quadrature tolerance for each slab of the divergence experiment.
pub const SLAB_TOL: f64 = 1e-12;

/// `g(z)`, with `g(1) = 0`; defined for `Re z <= 1`.
pub fn g_map(z: Complex64) -> Result<Complex64> {
    if z.re > 1.0 {
        return Err(Error::OutsideDomain(z));
    }
    if z == ONE {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok((z - 1.0) * ((z + 1.0) / (z - 1.0)).exp())
}

/// `g'(z) = exp((z+1)/(z-1)) (z-3)/(z-1)`.
pub fn g_derivative(z: Complex64) -> Result<Complex64> {
    if z.re > 1.0 {
        return Err(Error::OutsideDomain(z));
    }
    if z == ONE {
        return Err(Error::SingularPoint(z));
    }
    Ok(((z + 1.0) / (z - 1.0)).exp() * (z - 3.0) / (z - 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircleInvariants {
    pub radius: f64,
    pub samples: usize,
    /// `max - min` of `Re((z+1)/(z-1))` over the samples.
    pub re_variation: f64,
    /// `max - min` of `|exp((z+1)/(z-1))|`.
    pub modulus_variation: f64,
    /// Mean measured `Re((z+1)/(z-1))`.
    pub constant: f64,
}

/// Sample the circle of radius `r` centred at `1 - r` (tangent to the
/// vertical line at 1) at half-step angles, so `z = 1` is never hit.
pub fn circle_invariants(r: f64, samples: usize) -> Result<CircleInvariants> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Precondition(format!("circle radius must be positive, got {r}")));
    }
    if samples == 0 {
        return Err(Error::Precondition("need at least one sample".into()));
    }
    let mut re_vals = Vec::with_capacity(samples);
    let mut mod_vals = Vec::with_capacity(samples);
    for k in 0..samples {
        let theta = 2.0 * PI * (k as f64 + 0.5) / samples as f64;
        // e^{iθ} - 1 without cancellation
        let em1 = Complex64::new(-2.0 * (0.5 * theta).sin().powi(2), theta.sin());
        let zm1 = em1 * r;
        let zp1 = zm1 + 2.0;
        let u = zp1 / zm1;
        re_vals.push(u.re);
        mod_vals.push(u.exp().norm());
    }
    let spread = |v: &[f64]| {
        v.iter().copied().fold(f64::NEG_INFINITY, f64::max) - v.iter().copied().fold(f64::INFINITY, f64::min)
    };
    Ok(CircleInvariants {
        radius: r,
        samples,
        re_variation: spread(&re_vals),
        modulus_variation: spread(&mod_vals),
        constant: re_vals.iter().sum::<f64>() / samples as f64,
    })
}

/// `h(t) = e^{it} (e^{it}-3)/(e^{it}-1) / log(1-e^{it})` for `0 < t < π`.
///
/// Written through `w = 1 - e^{it} = 2 sin²(t/2) - i sin t`, which has
/// positive real part on the whole interval, as `e^{it}(2+w)/(w log w)`.
pub fn boundary_integrand(t: f64) -> Result<Complex64> {
    if !(t > 0.0 && t < PI) {
        return Err(Error::DomainError(t));
    }
    let w = Complex64::new(2.0 * (0.5 * t).sin().powi(2), -t.sin());
    if w.re <= 0.0 {
        return Err(Error::BranchCut(t));
    }
    let e = Complex64::from_polar(1.0, t);
    Ok(e * (w + 2.0) / (w * w.ln()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DivergenceRow {
    pub eps: f64,
    /// `|∫_ε^{t0} h|`
    pub i: f64,
    /// `∫_ε^{t0} |h|`
    pub j: f64,
    /// `2 (ln ln(1/ε) - ln ln(1/t0))`
    pub comparator: f64,
    pub arg_h: f64,
}

/// On `[eps, t1]` the argument of `h` moves by less than π/3, so
/// `|∫ h| >= ½ ∫|h|` must hold there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfMassCheck {
    pub eps: f64,
    pub t1: f64,
    pub arg_variation: f64,
    pub i_window: f64,
    pub j_window: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivergenceReport {
    pub t0: f64,
    pub rows: Vec<DivergenceRow>,
    pub half_mass: Option<HalfMassCheck>,
}

pub fn comparator(eps: f64, t0: f64) -> f64 {
    2.0 * ((1.0 / eps).ln().ln() - (1.0 / t0).ln().ln())
}

/// `(∫ h, ∫ |h|)` over `t ∈ [e^{-s_hi}, e^{-s_lo}]`, computed in `s`.
fn slab(s_lo: f64, s_hi: f64) -> Result<(Complex64, f64)> {
    let mut with = CompensatedSum::default();
    let mut abs = CompensatedSum::default();
    // unit-length pieces in s keep every panel smooth
    let pieces = ((s_hi - s_lo).ceil() as usize).max(1);
    let step = (s_hi - s_lo) / pieces as f64;
    for k in 0..pieces {
        let a = s_lo + step * k as f64;
        let b = if k + 1 == pieces { s_hi } else { a + step };
        let v = integrate(
            |s| {
                let t = (-s).exp();
                boundary_integrand(t).map(|h| h * t)
            },
            a,
            b,
            SLAB_TOL,
        )?;
        with.add(v.value);
        let m = integrate(
            |s| {
                let t = (-s).exp();
                boundary_integrand(t).map(|h| Complex64::new(h.norm() * t, 0.0))
            },
            a,
            b,
            SLAB_TOL,
        )?;
        abs.add(m.value);
    }
    Ok((with.value(), abs.value().re))
}

/// Partial integrals of `h` from each `ε` up to `t0`, largest `ε` first.
pub fn divergence_experiment(eps_list: &[f64], t0: f64) -> Result<DivergenceReport> {
    // t0 < 1 keeps ln ln(1/t0) finite
    if !(t0 > 0.0 && t0 < 1.0) {
        return Err(Error::DomainError(t0));
    }
    let mut eps: Vec<f64> = eps_list.to_vec();
    if let Some(&bad) = eps.iter().find(|&&e| !(e > 0.0 && e < t0)) {
        return Err(Error::DomainError(bad));
    }
    eps.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    eps.dedup();

    let s0 = -t0.ln();
    let mut acc_i = CompensatedSum::default();
    let mut acc_j = CompensatedSum::default();
    let mut prev = s0;
    let mut rows = Vec::with_capacity(eps.len());
    for &e in &eps {
        let s = -e.ln();
        let (dh, dj) = slab(prev, s)?;
        acc_i.add(dh);
        acc_j.add(Complex64::new(dj, 0.0));
        prev = s;
        rows.push(DivergenceRow {
            eps: e,
            i: acc_i.value().norm(),
            j: acc_j.value().re,
            comparator: comparator(e, t0),
            arg_h: boundary_integrand(e)?.arg(),
        });
    }
    let half_mass = match eps.last() {
        Some(&e) => Some(half_mass_check(e, t0)?),
        None => None,
    };
    Ok(DivergenceReport { t0, rows, half_mass })
}

/// Grow `t1` upward from `eps` on a log grid while the (unwrapped) argument
/// of `h` stays within a π/3 band, then compare `|∫h|` with `½∫|h|` there.
pub fn half_mass_check(eps: f64, t0: f64) -> Result<HalfMassCheck> {
    let n = 400;
    let (s_hi, s_lo) = (-eps.ln(), -t0.ln());
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut prev_arg: Option<f64> = None;
    let mut t1 = eps;
    let mut variation = 0.0;
    for k in 0..=n {
        let s = s_hi - (s_hi - s_lo) * k as f64 / n as f64;
        let t = (-s).exp();
        let mut a = boundary_integrand(t)?.arg();
        if let Some(p) = prev_arg {
            a += (2.0 * PI) * ((p - a) / (2.0 * PI)).round();
        }
        prev_arg = Some(a);
        let (nlo, nhi) = (lo.min(a), hi.max(a));
        if nhi - nlo >= PI / 3.0 {
            break;
        }
        lo = nlo;
        hi = nhi;
        variation = hi - lo;
        t1 = t;
    }
    let (ih, ij) = if t1 > eps { slab(-t1.ln(), s_hi)? } else { (Complex64::new(0.0, 0.0), 0.0) };
    let i_window = ih.norm();
    Ok(HalfMassCheck {
        eps,
        t1,
        arg_variation: variation,
        i_window,
        j_window: ij,
        holds: i_window >= 0.5 * ij - 1e-9,
    })
}

/// `|arg h(2^{-k}) - arg h(2^{-k+1})|` for `k = 2..=k_max`, indexed by `k`.
pub fn arg_cauchy_gaps(k_max: u32) -> Result<Vec<(u32, f64)>> {
    let mut out = Vec::new();
    let mut prev = boundary_integrand(0.5)?.arg();
    for k in 2..=k_max {
        let a = boundary_integrand(2f64.powi(-(k as i32)))?.arg();
        out.push((k, (a - prev).abs()));
        prev = a;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Regression {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn linear_regression(xs: &[f64], ys: &[f64]) -> Result<Regression> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::Precondition("regression needs two or more paired points".into()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Precondition("regression abscissae are all equal".into()));
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(Regression { slope, intercept: my - slope * mx, r_squared })
}

/// `ε` values `10^{-k/per_decade}` between `eps_max` and `eps_min`, largest first.
pub fn log_grid(eps_min: f64, eps_max: f64, per_decade: usize) -> Result<Vec<f64>> {
    if !(eps_min > 0.0 && eps_max >= eps_min) || per_decade == 0 {
        return Err(Error::Precondition(format!(
            "need 0 < eps-min <= eps-max and per-decade >= 1 (got {eps_min}, {eps_max}, {per_decade})"
        )));
    }
    let (hi, lo) = (eps_max.log10(), eps_min.log10());
    let steps = ((hi - lo) * per_decade as f64 + 1e-9).floor() as usize;
    Ok((0..=steps).map(|k| 10f64.powf(hi - k as f64 / per_decade as f64)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn direct_h(t: f64) -> Complex64 {
        let e = Complex64::from_polar(1.0, t);
        e * (e - 3.0) / (e - 1.0) / (ONE - e).ln()
    }

    #[test]
    fn g_fixtures() {
        assert_eq!(g_map(ONE).unwrap(), c(0.0, 0.0));
        assert!((g_map(c(-1.0, 0.0)).unwrap() - c(-2.0, 0.0)).norm() < 1e-15);
        assert!((g_map(c(0.0, 0.0)).unwrap() - c(-(-1f64).exp(), 0.0)).norm() < 1e-15);
        assert_eq!(g_derivative(ONE), Err(Error::SingularPoint(ONE)));
        assert!(matches!(g_map(c(1.5, 0.0)), Err(Error::OutsideDomain(_))));
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let z = c(-0.3, 0.4);
        let h = 1e-6;
        let fd = (g_map(z + h).unwrap() - g_map(z - h).unwrap()) / (2.0 * h);
        assert!((fd - g_derivative(z).unwrap()).norm() < 1e-8);
    }

    #[test]
    fn unit_circle_invariants() {
        let inv = circle_invariants(1.0, 256).unwrap();
        assert!(inv.constant.abs() < 1e-12);
        assert!(inv.modulus_variation < 1e-10);
    }

    #[test]
    fn half_radius_invariants() {
        let inv = circle_invariants(0.5, 256).unwrap();
        assert!(inv.re_variation < 1e-10 && inv.modulus_variation < 1e-10);
        // measured value is 1 - 1/r
        assert!((inv.constant + 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_sample_has_no_variation() {
        let inv = circle_invariants(0.3, 1).unwrap();
        assert_eq!(inv.re_variation, 0.0);
        assert_eq!(inv.modulus_variation, 0.0);
    }

    #[test]
    fn integrand_fixtures() {
        let t: f64 = 1e-6;
        let ratio = boundary_integrand(t).unwrap().norm() * t * t.ln().abs();
        assert!((ratio - 2.0).abs() < 0.2);
        let a = boundary_integrand(PI / 2.0).unwrap();
        assert!((a - direct_h(PI / 2.0)).norm() < 1e-12);
        assert_eq!(boundary_integrand(0.0), Err(Error::DomainError(0.0)));
        assert_eq!(boundary_integrand(-1.0), Err(Error::DomainError(-1.0)));
    }

    #[test]
    fn argument_settles_slowly() {
        let gaps = arg_cauchy_gaps(30).unwrap();
        for w in gaps.windows(2).skip(2) {
            assert!(w[1].1 < w[0].1, "gap at k={} did not shrink", w[1].0);
        }
        let a = boundary_integrand(2f64.powi(-40)).unwrap().arg();
        assert!((a + PI / 2.0).abs() < 0.1);
    }

    #[test]
    fn comparator_is_the_antiderivative_difference() {
        let e: f64 = 1e-4;
        let t0: f64 = 0.5;
        let q = integrate(
            |s| {
                let t = (-s).exp();
                Ok(c(1.0 / (t.ln().abs()) * 2.0, 0.0))
            },
            -t0.ln(),
            -e.ln(),
            1e-13,
        )
        .unwrap();
        assert!((q.value.re - comparator(e, t0)).abs() < 1e-12);
    }

    #[test]
    fn small_experiment() {
        let r = divergence_experiment(&[1e-3, 1e-2, 1e-4], 0.5).unwrap();
        assert_eq!(r.rows.iter().map(|r| r.eps).collect::<Vec<_>>(), vec![1e-2, 1e-3, 1e-4]);
        assert!(r.rows.windows(2).all(|w| w[1].i > w[0].i && w[1].j >= w[0].j));
        assert!(r.half_mass.unwrap().holds);
        assert!(divergence_experiment(&[0.6], 0.5).is_err());
    }

    #[test]
    fn grid_and_regression() {
        let g = log_grid(1e-8, 1e-2, 1).unwrap();
        assert_eq!(g.len(), 7);
        assert!((g[6] - 1e-8).abs() < 1e-20);
        let r = linear_regression(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.0]).unwrap();
        assert!((r.slope - 2.0).abs() < 1e-15 && (r.r_squared - 1.0).abs() < 1e-15);
    }
}

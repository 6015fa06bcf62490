use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub const NODES: usize = 16;
pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_LEVELS: usize = 24;

/// Nodes and weights of the 16-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre() -> &'static ([f64; NODES], [f64; NODES]) {
    static RULE: OnceLock<([f64; NODES], [f64; NODES])> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = NODES;
        let mut x = [0.0; NODES];
        let mut w = [0.0; NODES];
        for i in 0..n {
            // Chebyshev-like initial guess, then Newton on P_n
            let mut t = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, t);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * t * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
                let step = p1 / dp;
                t -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            x[i] = t;
            w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
        (x, w)
    })
}

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

fn two_sum(s: f64, c: f64, x: f64) -> (f64, f64) {
    let t = s + x;
    let c = if s.abs() >= x.abs() { c + ((s - t) + x) } else { c + ((x - t) + s) };
    (t, c)
}

impl CompensatedSum {
    pub fn add(&mut self, x: Complex64) {
        let (re, cre) = two_sum(self.sum.re, self.comp.re, x.re);
        let (im, cim) = two_sum(self.sum.im, self.comp.im, x.im);
        self.sum = Complex64::new(re, im);
        self.comp = Complex64::new(cre, cim);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: Complex64,
    /// Largest `|integrand|` seen at any node.
    pub node_sup: f64,
    pub evaluations: usize,
}

struct Panel {
    value: Complex64,
    l1: f64,
}

fn panel<F>(f: &F, a: f64, b: f64, sup: &mut f64, evals: &mut usize) -> Result<Panel>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let (x, w) = gauss_legendre();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = CompensatedSum::default();
    let mut l1 = 0.0;
    for i in 0..NODES {
        let v = f(mid + half * x[i])?;
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFinite(format!("integrand at t = {}", mid + half * x[i])));
        }
        *sup = sup.max(v.norm());
        acc.add(v * (w[i] * half));
        l1 += v.norm() * w[i] * half.abs();
    }
    *evals += NODES;
    Ok(Panel { value: acc.value(), l1 })
}

/// Adaptive bisection: accept a panel once the two halves agree with the
/// whole to `tol` (halved per level), or to the roundoff floor of the panel.
pub fn integrate<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let mut sup = 0.0f64;
    let mut evals = 0usize;
    let mut total = CompensatedSum::default();
    let whole = panel(&f, a, b, &mut sup, &mut evals)?;
    let mut stack = vec![(a, b, whole, tol, 0usize)];
    // left-first traversal keeps the summation order deterministic
    while let Some((lo, hi, whole, tol, level)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = panel(&f, lo, mid, &mut sup, &mut evals)?;
        let right = panel(&f, mid, hi, &mut sup, &mut evals)?;
        let both = left.value + right.value;
        let floor = 64.0 * f64::EPSILON * (left.l1 + right.l1);
        if (both - whole.value).norm() < tol.max(floor) {
            total.add(left.value);
            total.add(right.value);
            continue;
        }
        if level + 1 >= MAX_LEVELS {
            return Err(Error::NonConvergence(MAX_LEVELS));
        }
        stack.push((mid, hi, right, 0.5 * tol, level + 1));
        stack.push((lo, mid, left, 0.5 * tol, level + 1));
    }
    Ok(QuadResult { value: total.value(), node_sup: sup, evaluations: evals })
}

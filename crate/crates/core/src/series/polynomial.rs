use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Trailing coefficients at or below this fraction of the largest
/// coefficient magnitude are dropped.
pub const ZERO_FLOOR: f64 = 1e-13;

/// Dense complex polynomial, coefficient `i` multiplies `w^i`.
///
/// The variable is whatever the caller says it is: `z` for global
/// polynomials, `z - center` for local expansions (partial sums, Padé
/// numerators). Use [`Polynomial::shift`] to move between the two.
#[derive(Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl From<Vec<Complex64>> for Polynomial {
    fn from(coeffs: Vec<Complex64>) -> Self {
        Polynomial::new(coeffs)
    }
}

impl From<Polynomial> for Vec<Complex64> {
    fn from(p: Polynomial) -> Self {
        p.coeffs
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "Polynomial(0)");
        }
        write!(f, "Polynomial(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}{:+}i)w^{}", c.re, c.im, i)?;
        }
        write!(f, ")")
    }
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn one() -> Self {
        Polynomial::constant(Complex64::new(1.0, 0.0))
    }

    /// `c * w^n`
    pub fn monomial(c: Complex64, n: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = c;
        Polynomial::new(coeffs)
    }

    /// `w - root`
    pub fn linear_factor(root: Complex64) -> Self {
        Polynomial::new(vec![-root, Complex64::new(1.0, 0.0)])
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        roots
            .iter()
            .fold(Polynomial::one(), |acc, &r| &acc * &Polynomial::linear_factor(r))
    }

    fn trim(&mut self) {
        let scale = self.max_abs();
        if scale == 0.0 {
            self.coeffs.clear();
            return;
        }
        let floor = ZERO_FLOOR * scale;
        while let Some(last) = self.coeffs.last() {
            if last.norm() <= floor {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `w^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Complex64 {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    /// `None` is the sentinel degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial counted as degree 0.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn eval(&self, w: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * w + c)
    }

    /// `sum |c_i| |w|^i`, the scale against which cancellation in
    /// [`Polynomial::eval`] is judged.
    pub fn eval_abs(&self, w: Complex64) -> f64 {
        let r = w.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Polynomial::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    pub fn nth_derivative(&self, order: usize) -> Self {
        (0..order).fold(self.clone(), |p, _| p.derivative())
    }

    /// `order`-th derivative at `w` without building intermediate polynomials.
    pub fn eval_derivative(&self, w: Complex64, order: usize) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &c) in self.coeffs.iter().enumerate().skip(order).rev() {
            let falling: f64 = ((i - order + 1)..=i).map(|k| k as f64).product();
            acc = acc * w + c * falling;
        }
        acc
    }

    /// Antiderivative vanishing at `base`.
    pub fn antiderivative(&self, base: Complex64) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / (i + 1) as f64);
        }
        let mut p = Polynomial { coeffs };
        let offset = p.eval(base);
        if let Some(c0) = p.coeffs.first_mut() {
            *c0 -= offset;
        }
        p.trim();
        p
    }

    /// Coefficients of `Q(u) = P(u + c)`.
    pub fn shift(&self, c: Complex64) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let next = a[j + 1];
                a[j] += c * next;
            }
        }
        Polynomial::new(a)
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Polynomial::one(), |acc, _| &acc * self)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.leading().inv())
    }

    /// Quotient and remainder of long division.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dd = divisor.degree().ok_or(Error::InvalidDenominator)?;
        let Some(nd) = self.degree() else {
            return Ok((Polynomial::zero(), Polynomial::zero()));
        };
        if nd < dd {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Complex64::new(0.0, 0.0); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd] / lead;
            quot[k] = q;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= q * d;
            }
            rem[k + dd] = Complex64::new(0.0, 0.0);
        }
        rem.truncate(dd);
        // The remainder is trimmed relative to the dividend, not to itself.
        let floor = ZERO_FLOOR * self.max_abs();
        for c in rem.iter_mut() {
            if c.norm() <= floor {
                *c = Complex64::new(0.0, 0.0);
            }
        }
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Divide by `(w - root)` by synthetic division, returning the quotient
    /// and the remainder `P(root)`.
    pub fn deflate(&self, root: Complex64) -> (Polynomial, Complex64) {
        if self.coeffs.is_empty() {
            return (Polynomial::zero(), Complex64::new(0.0, 0.0));
        }
        let n = self.coeffs.len();
        let mut quot = vec![Complex64::new(0.0, 0.0); n - 1];
        let mut carry = Complex64::new(0.0, 0.0);
        for i in (0..n).rev() {
            let value = self.coeffs[i] + carry * root;
            if i == 0 {
                return (Polynomial::new(quot), value);
            }
            quot[i - 1] = value;
            carry = value;
        }
        unreachable!()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn product_of_conjugate_linears() {
        let a = Polynomial::from_real(&[1.0, 1.0]);
        let b = Polynomial::from_real(&[1.0, -1.0]);
        assert_eq!(&a * &b, Polynomial::from_real(&[1.0, 0.0, -1.0]));
    }

    #[test]
    fn derivative_and_antiderivative_of_cubic() {
        let cube = Polynomial::monomial(c(1.0), 3);
        assert_eq!(cube.derivative(), Polynomial::monomial(c(3.0), 2));
        let back = Polynomial::monomial(c(3.0), 2).antiderivative(c(0.0));
        assert_eq!(back, cube);
    }

    #[test]
    fn antiderivative_vanishes_at_base() {
        let p = Polynomial::from_real(&[2.0, -1.0, 0.5]);
        let base = Complex64::new(0.3, -0.7);
        let q = p.antiderivative(base);
        assert!(q.eval(base).norm() < 1e-15);
        assert!((&q.derivative() - &p).max_abs() < 1e-15);
    }

    #[test]
    fn zero_polynomial_has_sentinel_degree() {
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(Polynomial::from_real(&[0.0, 0.0]).degree(), None);
        assert_eq!(Polynomial::from_real(&[1.0, 1e-20]).degree(), Some(0));
    }

    #[test]
    fn trimming_is_scale_relative() {
        let p = Polynomial::from_real(&[1e-20, 1e-21]);
        assert_eq!(p.degree(), Some(1));
        let q = p.scale(c(1e25));
        assert_eq!(q.degree(), Some(1));
    }

    #[test]
    fn shift_matches_direct_evaluation() {
        let p = Polynomial::new(vec![
            Complex64::new(1.0, 2.0),
            Complex64::new(-0.5, 0.1),
            Complex64::new(0.0, 3.0),
            Complex64::new(2.0, 0.0),
        ]);
        let shift = Complex64::new(0.4, -1.2);
        let q = p.shift(shift);
        for u in [Complex64::new(0.1, 0.2), Complex64::new(-1.0, 0.5)] {
            assert!((q.eval(u) - p.eval(u + shift)).norm() < 1e-13);
        }
    }

    #[test]
    fn long_division_reconstructs_dividend() {
        let a = Polynomial::from_real(&[-2.0, 1.0, 1.0]);
        let b = Polynomial::from_real(&[-1.0, 1.0]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, Polynomial::from_real(&[2.0, 1.0]));
        assert!(r.is_zero());
        assert_eq!(a.div_rem(&Polynomial::zero()), Err(Error::InvalidDenominator));
    }

    #[test]
    fn deflation_returns_value_at_root() {
        let p = Polynomial::from_real(&[1.0, 2.0, 3.0]);
        let (q, rem) = p.deflate(c(2.0));
        assert!((rem - p.eval(c(2.0))).norm() < 1e-14);
        let rebuilt = &(&q * &Polynomial::linear_factor(c(2.0))) + &Polynomial::constant(rem);
        assert!((&rebuilt - &p).max_abs() < 1e-14);
    }

    #[test]
    fn derivative_evaluation_matches_symbolic() {
        let p = Polynomial::from_real(&[1.0, -2.0, 0.5, 4.0, -1.0]);
        let w = Complex64::new(0.7, 0.2);
        for order in 0..6 {
            let direct = p.nth_derivative(order).eval(w);
            assert!((p.eval_derivative(w, order) - direct).norm() < 1e-12);
        }
    }
}

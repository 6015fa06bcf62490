use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Polynomial;
use crate::error::{Error, Result};

/// Truncated Taylor expansion `sum_{n<=N} a_n (z - center)^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSeries")]
pub struct PowerSeries {
    center: Complex64,
    coefficients: Vec<Complex64>,
}

#[derive(Deserialize)]
struct RawSeries {
    center: Complex64,
    coefficients: Vec<Complex64>,
}

impl TryFrom<RawSeries> for PowerSeries {
    type Error = Error;
    fn try_from(raw: RawSeries) -> Result<Self> {
        PowerSeries::new(raw.center, raw.coefficients)
    }
}

impl PowerSeries {
    pub fn new(center: Complex64, coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::Precondition("a power series needs at least a_0".into()));
        }
        if coefficients.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite("series coefficient".into()));
        }
        Ok(PowerSeries { center, coefficients })
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn truncation_order(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `a_i`, with the convention `a_i = 0` for negative `i`.
    pub fn coeff(&self, i: isize) -> Result<Complex64> {
        if i < 0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        self.coefficients.get(i as usize).copied().ok_or(Error::InsufficientSeries {
            needed: i as usize,
            available: self.truncation_order(),
        })
    }

    pub fn require_order(&self, needed: usize) -> Result<()> {
        if needed > self.truncation_order() {
            return Err(Error::InsufficientSeries { needed, available: self.truncation_order() });
        }
        Ok(())
    }

    /// `S_k`, in powers of `(z - center)`; zero for negative `k`.
    pub fn partial_sum(&self, k: isize) -> Result<Polynomial> {
        if k < 0 {
            return Ok(Polynomial::zero());
        }
        self.require_order(k as usize)?;
        Ok(Polynomial::new(self.coefficients[..=k as usize].to_vec()))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let w = z - self.center;
        self.coefficients
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * w + c)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        PowerSeries {
            center: self.center,
            coefficients: self.coefficients.iter().map(|&a| a * c).collect(),
        }
    }

    /// Keep the first `order + 1` coefficients.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        self.require_order(order)?;
        Ok(PowerSeries { center: self.center, coefficients: self.coefficients[..=order].to_vec() })
    }

    /// The series as a polynomial in `(z - center)`.
    pub fn to_local_polynomial(&self) -> Polynomial {
        Polynomial::new(self.coefficients.clone())
    }

    /// Coefficient-wise sum of two series at the same center, truncated to
    /// the shorter one.
    pub fn add(&self, other: &PowerSeries) -> Result<Self> {
        if self.center != other.center {
            return Err(Error::MismatchedCenters(self.center, other.center));
        }
        let n = self.coefficients.len().min(other.coefficients.len());
        PowerSeries::new(
            self.center,
            (0..n).map(|i| self.coefficients[i] + other.coefficients[i]).collect(),
        )
    }
}

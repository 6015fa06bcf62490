//! Named analytic functions, looked up at runtime by the CLI and the fixtures.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{ExtendedComplex, Polynomial, PowerSeries, RationalFunction};

/// Something that can be evaluated on the sphere, differentiated and
/// expanded in a Taylor series.
pub trait AnalyticFunction: Send + Sync {
    fn name(&self) -> &str;

    fn eval(&self, z: Complex64) -> Result<ExtendedComplex>;

    /// `f(z), f'(z), ..., f^(max_order)(z)`.
    fn derivatives(&self, z: Complex64, max_order: usize) -> Result<Vec<Complex64>>;

    fn taylor(&self, center: Complex64, order: usize) -> Result<PowerSeries>;

    fn eval_finite(&self, z: Complex64) -> Result<Complex64> {
        match self.eval(z)? {
            ExtendedComplex::Finite(v) => Ok(v),
            ExtendedComplex::Infinity => Err(Error::SingularPoint(z)),
        }
    }
}

fn factorials(n: usize) -> Vec<f64> {
    let mut out = vec![1.0; n + 1];
    for k in 1..=n {
        out[k] = out[k - 1] * k as f64;
    }
    out
}

pub struct Exp;

impl AnalyticFunction for Exp {
    fn name(&self) -> &str {
        "exp"
    }
    fn eval(&self, z: Complex64) -> Result<ExtendedComplex> {
        Ok(z.exp().into())
    }
    fn derivatives(&self, z: Complex64, max_order: usize) -> Result<Vec<Complex64>> {
        Ok(vec![z.exp(); max_order + 1])
    }
    fn taylor(&self, center: Complex64, order: usize) -> Result<PowerSeries> {
        let e = center.exp();
        let fact = factorials(order);
        PowerSeries::new(center, fact.iter().map(|f| e / f).collect())
    }
}

/// `z^(-power)` for power 1 or 2.
pub struct InversePower {
    power: u32,
    name: &'static str,
}

impl InversePower {
    pub fn one_over_z() -> Self {
        InversePower { power: 1, name: "one-over-z" }
    }
    pub fn one_over_z_squared() -> Self {
        InversePower { power: 2, name: "one-over-z-squared" }
    }
    /// d^k/dz^k z^{-m} = (-1)^k (m)(m+1)...(m+k-1) z^{-m-k}
    fn falling(&self, k: usize) -> f64 {
        let m = self.power as f64;
        (0..k).map(|i| m + i as f64).product::<f64>() * if k % 2 == 0 { 1.0 } else { -1.0 }
    }
}

impl AnalyticFunction for InversePower {
    fn name(&self) -> &str {
        self.name
    }
    fn eval(&self, z: Complex64) -> Result<ExtendedComplex> {
        if z.norm() == 0.0 {
            return Ok(ExtendedComplex::Infinity);
        }
        Ok(z.powi(-(self.power as i32)).into())
    }
    fn derivatives(&self, z: Complex64, max_order: usize) -> Result<Vec<Complex64>> {
        if z.norm() == 0.0 {
            return Err(Error::SingularPoint(z));
        }
        Ok((0..=max_order)
            .map(|k| z.powi(-(self.power as i32) - k as i32) * self.falling(k))
            .collect())
    }
    fn taylor(&self, center: Complex64, order: usize) -> Result<PowerSeries> {
        if center.norm() == 0.0 {
            return Err(Error::SingularCenter(center));
        }
        let fact = factorials(order);
        let d = self.derivatives(center, order)?;
        PowerSeries::new(center, d.iter().zip(&fact).map(|(v, f)| v / f).collect())
    }
}

/// `1/(1 - z)`.
pub struct Geometric;

impl AnalyticFunction for Geometric {
    fn name(&self) -> &str {
        "geometric"
    }
    fn eval(&self, z: Complex64) -> Result<ExtendedComplex> {
        let d = Complex64::new(1.0, 0.0) - z;
        if d.norm() == 0.0 {
            return Ok(ExtendedComplex::Infinity);
        }
        Ok(d.inv().into())
    }
    fn derivatives(&self, z: Complex64, max_order: usize) -> Result<Vec<Complex64>> {
        let d = Complex64::new(1.0, 0.0) - z;
        if d.norm() == 0.0 {
            return Err(Error::SingularPoint(z));
        }
        let fact = factorials(max_order);
        Ok((0..=max_order).map(|k| d.powi(-(k as i32) - 1) * fact[k]).collect())
    }
    fn taylor(&self, center: Complex64, order: usize) -> Result<PowerSeries> {
        let d = Complex64::new(1.0, 0.0) - center;
        if d.norm() == 0.0 {
            return Err(Error::SingularCenter(center));
        }
        let r = d.inv();
        let mut acc = r;
        let mut coeffs = Vec::with_capacity(order + 1);
        for _ in 0..=order {
            coeffs.push(acc);
            acc *= r;
        }
        PowerSeries::new(center, coeffs)
    }
}

/// `log(1 - z)`, principal branch.
pub struct Log1m;

impl AnalyticFunction for Log1m {
    fn name(&self) -> &str {
        "log1m"
    }
    fn eval(&self, z: Complex64) -> Result<ExtendedComplex> {
        let d = Complex64::new(1.0, 0.0) - z;
        if d.norm() == 0.0 {
            return Ok(ExtendedComplex::Infinity);
        }
        Ok(d.ln().into())
    }
    fn derivatives(&self, z: Complex64, max_order: usize) -> Result<Vec<Complex64>> {
        let d = Complex64::new(1.0, 0.0) - z;
        if d.norm() == 0.0 {
            return Err(Error::SingularPoint(z));
        }
        let fact = factorials(max_order);
        let mut out = vec![d.ln()];
        for k in 1..=max_order {
            out.push(-d.powi(-(k as i32)) * fact[k - 1]);
        }
        Ok(out)
    }
    fn taylor(&self, center: Complex64, order: usize) -> Result<PowerSeries> {
        let d = Complex64::new(1.0, 0.0) - center;
        if d.norm() == 0.0 {
            return Err(Error::SingularCenter(center));
        }
        let r = d.inv();
        let mut coeffs = vec![d.ln()];
        let mut acc = Complex64::new(1.0, 0.0);
        for n in 1..=order {
            acc *= r;
            coeffs.push(-acc / n as f64);
        }
        PowerSeries::new(center, coeffs)
    }
}

impl AnalyticFunction for Polynomial {
    fn name(&self) -> &str {
        "polynomial"
    }
    fn eval(&self, z: Complex64) -> Result<ExtendedComplex> {
        Ok(Polynomial::eval(self, z).into())
    }
    fn derivatives(&self, z: Complex64, max_order: usize) -> Result<Vec<Complex64>> {
        let local = self.shift(z);
        let fact = factorials(max_order);
        Ok((0..=max_order).map(|k| local.coeff(k) * fact[k]).collect())
    }
    fn taylor(&self, center: Complex64, order: usize) -> Result<PowerSeries> {
        let local = self.shift(center);
        PowerSeries::new(center, (0..=order).map(|k| local.coeff(k)).collect())
    }
}

impl AnalyticFunction for RationalFunction {
    fn name(&self) -> &str {
        "rational"
    }
    fn eval(&self, z: Complex64) -> Result<ExtendedComplex> {
        RationalFunction::eval(self, z)
    }
    fn derivatives(&self, z: Complex64, max_order: usize) -> Result<Vec<Complex64>> {
        RationalFunction::derivatives(self, z, max_order)
    }
    fn taylor(&self, center: Complex64, order: usize) -> Result<PowerSeries> {
        RationalFunction::taylor(self, center, order)
    }
}

/// Name → function lookup; iteration order is by name.
#[derive(Clone, Default)]
pub struct FunctionRegistry {
    entries: BTreeMap<String, Arc<dyn AnalyticFunction>>,
}

impl FunctionRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_builtins() -> Self {
        let mut reg = Self::new();
        reg.register(Arc::new(Exp));
        reg.register(Arc::new(InversePower::one_over_z()));
        reg.register(Arc::new(InversePower::one_over_z_squared()));
        reg.register(Arc::new(Geometric));
        reg.register(Arc::new(Log1m));
        reg
    }

    pub fn register(&mut self, f: Arc<dyn AnalyticFunction>) {
        self.entries.insert(f.name().to_string(), f);
    }

    pub fn register_as(&mut self, name: &str, f: Arc<dyn AnalyticFunction>) {
        self.entries.insert(name.to_string(), f);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn AnalyticFunction>> {
        self.entries.get(name).cloned().ok_or_else(|| Error::UnknownBuiltin(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn taylor(&self, name: &str, center: Complex64, order: usize) -> Result<PowerSeries> {
        self.get(name)?.taylor(center, order)
    }
}

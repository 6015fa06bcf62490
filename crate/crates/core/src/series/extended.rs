use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtendedComplex {
    pub fn finite(re: f64, im: f64) -> Self {
        ExtendedComplex::Finite(Complex64::new(re, im))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedComplex::Infinity)
    }

    pub fn as_finite(&self) -> Option<Complex64> {
        match *self {
            ExtendedComplex::Finite(z) => Some(z),
            ExtendedComplex::Infinity => None,
        }
    }

    /// `1/z` on the sphere, with `1/0 = inf` and `1/inf = 0`.
    pub fn recip(&self) -> Self {
        match *self {
            ExtendedComplex::Infinity => ExtendedComplex::Finite(Complex64::new(0.0, 0.0)),
            ExtendedComplex::Finite(z) if z.norm() == 0.0 => ExtendedComplex::Infinity,
            ExtendedComplex::Finite(z) => ExtendedComplex::Finite(z.inv()),
        }
    }

    /// Homogeneous coordinates `[a : b]` with `z = a / b`.
    pub fn homogeneous(&self) -> (Complex64, Complex64) {
        match *self {
            ExtendedComplex::Finite(z) => (z, Complex64::new(1.0, 0.0)),
            ExtendedComplex::Infinity => (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
        }
    }
}

impl From<Complex64> for ExtendedComplex {
    fn from(z: Complex64) -> Self {
        ExtendedComplex::Finite(z)
    }
}

impl fmt::Display for ExtendedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedComplex::Finite(z) => write!(f, "{}", z),
            ExtendedComplex::Infinity => write!(f, "inf"),
        }
    }
}

// JSON form: `[re, im]` for finite points, the string "inf" for infinity.
impl Serialize for ExtendedComplex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtendedComplex::Finite(z) => z.serialize(s),
            ExtendedComplex::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Finite(Complex64),
            Tag(String),
        }
        match Repr::deserialize(d)? {
            Repr::Finite(z) => Ok(ExtendedComplex::Finite(z)),
            Repr::Tag(t) if t == "inf" => Ok(ExtendedComplex::Infinity),
            Repr::Tag(t) => Err(serde::de::Error::custom(format!("expected \"inf\", got {t:?}"))),
        }
    }
}

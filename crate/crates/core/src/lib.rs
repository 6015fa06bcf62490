//! Padé approximants, chordal approximation on the Riemann sphere, and the
//! integration-operator experiments built on top of them.
//!
//! Everything works in `f64` complex arithmetic. Compact sets are always
//! finite samples ([`CompactSample`]); sup-norms over them are lower bounds
//! reported together with the sample mesh.

pub mod approx;
pub mod blowup;
pub mod domains;
pub mod error;
pub mod linalg;
pub mod pade;
pub mod registry;
pub mod series;
pub mod sphere;

pub use error::{Error, Result};
pub use pade::{CompactSample, PadeApproximant};
pub use registry::{AnalyticFunction, FunctionRegistry};
pub use series::{ExtendedComplex, Polynomial, PowerSeries, RationalFunction};

pub use num_complex::Complex64;

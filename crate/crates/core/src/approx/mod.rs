//! Rational approximation: two-set polynomial fits, principal parts,
//! residue correction, antiderivative cascades and the universality
//! certificate.

pub mod cascade;
pub mod fit;
pub mod partial;
pub mod perturb;
pub mod split;
pub mod universality;

pub use cascade::{antiderivative_cascade, cascade_bounds, derivative_errors, volterra_apply, CascadeBound};
pub use fit::{two_set_poly_fit, FitConstraint, FitOptions, FitReport, FitTarget};
pub use partial::{
    laurent_principal, poles, polynomial_zeros, principal_parts, residue_correction, Pole, PrincipalPart, Region,
    ResidueCorrection, ResidueRow,
};
pub use perturb::{perturb_polynomial, perturb_rational};
pub use split::SplitRational;
pub use universality::{
    universality_certificate, universality_pipeline, CenterRecord, CenterStatus, CertificateOptions,
    UniversalityCertificate, UniversalityConfig, UniversalityOutcome,
};

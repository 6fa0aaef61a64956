//! Algebraic Laurent series: defining polynomials, Newton roots, certificates.

mod bivar;
pub mod instances;
mod newton;
mod seeds;

pub use bivar::{BivarPoly, LaurentPoly};
pub use newton::{hensel_condition, newton_root, verify_algebraic, ResidualValuation, RootCertificate};
pub use seeds::{seed_search, DEFAULT_SEED_DEPTH};

//! Exact arithmetic over F_p, F_p[X] and truncated F_p((X⁻¹)).

pub mod field;
pub mod norm;
pub mod poly;
pub mod series;

pub use field::{FieldElement, PrimeField};
pub use norm::{NormLog2, NormReading};
pub use poly::Poly;
pub use series::LaurentSeries;

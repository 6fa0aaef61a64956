//! Continued fractions over fields of formal Laurent series F_p((X⁻¹)) and
//! exact checks of Littlewood-type products |q|·‖qΘ‖·‖qΦ‖.

pub mod algebra;
pub mod cfengine;
pub mod construct;
pub mod cli;
pub mod error;
pub mod littlewood;
pub mod roots;
pub mod words;

pub use algebra::{FieldElement, LaurentSeries, NormLog2, NormReading, Poly, PrimeField};
pub use error::{Error, Result};

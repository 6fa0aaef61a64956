//! Littlewood products |q|·‖qΘ‖·‖qΦ‖, scans over q, and finite-window certificates.

mod certify;
mod checkpoints;
pub mod oracle;
mod scan;

use serde::Serialize;

use crate::algebra::{LaurentSeries, NormLog2, NormReading, Poly, PrimeField};
use crate::error::{Error, Result};

pub use certify::*;
pub use checkpoints::*;
pub use scan::*;

/// A number whose fractional parts ‖qΘ‖ we can read: a truncated series or an exact rational function.
#[derive(Clone, Debug)]
pub enum Target {
    Series(LaurentSeries),
    Rational { num: Poly, den: Poly },
}

impl Target {
    pub fn rational(num: Poly, den: Poly) -> Result<Target> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Target::Rational { num, den })
    }

    pub fn field(&self) -> PrimeField {
        match self {
            Target::Series(s) => s.field(),
            Target::Rational { num, .. } => num.field(),
        }
    }

    /// Precision of the underlying series, `None` when exact.
    pub fn precision(&self) -> Option<i64> {
        match self {
            Target::Series(s) => Some(s.precision()),
            Target::Rational { .. } => None,
        }
    }

    /// ‖qΘ‖ as a reading; at worst the trivial bound 2^{-1}.
    pub fn frac_log(&self, q: &Poly) -> NormReading {
        match self {
            Target::Series(s) => {
                let prod = s.mul_poly(q);
                if prod.precision() < 1 {
                    return NormReading::AtMost(-1);
                }
                prod.frac_part().norm()
            }
            Target::Rational { num, den } => {
                let (_, r) = (q * num).divmod(den).expect("nonzero denominator");
                match r.degree() {
                    None => NormReading::Exact(NormLog2::Zero),
                    Some(d) => NormReading::Exact(NormLog2::Pow(d as i64 - den.deg())),
                }
            }
        }
    }
}

/// Exponents of |q|, ‖qΘ‖, ‖qΦ‖ and of the two products built from them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LittlewoodReport {
    pub q: Poly,
    pub deg_q: i64,
    pub log_theta: NormReading,
    pub log_phi: NormReading,
    /// log2 of |q|·‖qΘ‖·‖qΦ‖.
    pub product1: NormReading,
    /// log2 of |q|²·‖qΘ‖·‖qΦ‖.
    pub product2: NormReading,
    pub precision_ok: bool,
}

pub fn product_at(q: &Poly, theta: &Target, phi: &Target) -> Result<LittlewoodReport> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let deg_q = q.deg();
    let log_theta = theta.frac_log(q);
    let log_phi = phi.frac_log(q);
    let product1 = log_theta.mul(log_phi).shift(deg_q);
    Ok(LittlewoodReport {
        q: q.clone(),
        deg_q,
        log_theta,
        log_phi,
        product1,
        product2: product1.shift(deg_q),
        precision_ok: product1.is_exact(),
    })
}

//! The ultrametric norm |F| = 2^m, kept as its base-2 logarithm.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Exact log2 of a norm: `Zero` for |0| = 0, otherwise `Pow(v)` for 2^v.
///
/// Ordered so that `Zero` is below every power. Multiplying norms adds
/// exponents, and anything times zero is zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormLog2 {
    Zero,
    Pow(i64),
}

impl NormLog2 {
    pub fn exponent(self) -> Option<i64> {
        match self {
            NormLog2::Zero => None,
            NormLog2::Pow(v) => Some(v),
        }
    }

    pub fn is_zero(self) -> bool {
        self == NormLog2::Zero
    }

    /// Multiply by 2^k.
    pub fn shift(self, k: i64) -> Self {
        match self {
            NormLog2::Zero => NormLog2::Zero,
            NormLog2::Pow(v) => NormLog2::Pow(v + k),
        }
    }
}

impl Mul for NormLog2 {
    type Output = NormLog2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: NormLog2) -> NormLog2 {
        match (self, rhs) {
            (NormLog2::Pow(a), NormLog2::Pow(b)) => NormLog2::Pow(a + b),
            _ => NormLog2::Zero,
        }
    }
}

impl fmt::Display for NormLog2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormLog2::Zero => write!(f, "0"),
            NormLog2::Pow(v) => write!(f, "2^{v}"),
        }
    }
}

/// A norm as read off a finite-precision series.
///
/// `AtMost(v)` is the precision-floor marker: every known coefficient
/// vanished, so the true norm is only bounded by 2^v.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormReading {
    Exact(NormLog2),
    AtMost(i64),
}

impl NormReading {
    pub fn is_exact(self) -> bool {
        matches!(self, NormReading::Exact(_))
    }

    pub fn exact(self) -> Option<NormLog2> {
        match self {
            NormReading::Exact(n) => Some(n),
            NormReading::AtMost(_) => None,
        }
    }

    /// The best known upper bound, as a norm.
    pub fn upper(self) -> NormLog2 {
        match self {
            NormReading::Exact(n) => n,
            NormReading::AtMost(v) => NormLog2::Pow(v),
        }
    }

    /// Product of readings; exact only if both factors are, or either is an exact zero.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: NormReading) -> NormReading {
        match (self, rhs) {
            (NormReading::Exact(NormLog2::Zero), _) | (_, NormReading::Exact(NormLog2::Zero)) => {
                NormReading::Exact(NormLog2::Zero)
            }
            (NormReading::Exact(a), NormReading::Exact(b)) => NormReading::Exact(a * b),
            (a, b) => match a.upper() * b.upper() {
                NormLog2::Pow(v) => NormReading::AtMost(v),
                NormLog2::Zero => NormReading::Exact(NormLog2::Zero),
            },
        }
    }

    pub fn shift(self, k: i64) -> Self {
        match self {
            NormReading::Exact(n) => NormReading::Exact(n.shift(k)),
            NormReading::AtMost(v) => NormReading::AtMost(v + k),
        }
    }

    /// Compare upper bounds; used for minima where bounds stand in for values.
    pub fn cmp_upper(self, other: NormReading) -> Ordering {
        self.upper().cmp(&other.upper())
    }
}

/// Serialized as the exponent, `null` for the zero norm.
impl Serialize for NormLog2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.exponent().serialize(s)
    }
}

/// Serialized as `{"log2": v, "exact": b}`; `log2` is `null` for an exact zero
/// and is an upper bound when `exact` is false.
impl Serialize for NormReading {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("NormReading", 2)?;
        st.serialize_field("log2", &self.upper().exponent())?;
        st.serialize_field("exact", &self.is_exact())?;
        st.end()
    }
}

impl fmt::Display for NormReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormReading::Exact(n) => write!(f, "{n}"),
            NormReading::AtMost(v) => write!(f, "<=2^{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_least() {
        assert!(NormLog2::Zero < NormLog2::Pow(i64::MIN));
        assert!(NormLog2::Pow(-3) < NormLog2::Pow(2));
    }

    #[test]
    fn products_add_exponents() {
        assert_eq!(NormLog2::Pow(2) * NormLog2::Pow(-5), NormLog2::Pow(-3));
        assert_eq!(NormLog2::Pow(2) * NormLog2::Zero, NormLog2::Zero);
        let r = NormReading::Exact(NormLog2::Pow(1)).mul(NormReading::AtMost(-9));
        assert_eq!(r, NormReading::AtMost(-8));
    }
}

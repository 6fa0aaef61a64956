//! Truncated Laurent series in X⁻¹ with absolute precision.
//!
//! A series of precision `N` knows every coefficient of X^{-h} for h ≤ N.
//! Operations propagate precision pessimistically, so every coefficient a
//! series reports is certain.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::field::PrimeField;
use crate::algebra::norm::{NormLog2, NormReading};
use crate::algebra::poly::{convolve, Poly};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    field: PrimeField,
    /// Exponent of `coeffs[0]`; meaningless when `coeffs` is empty.
    lead: i64,
    /// Coefficients of X^lead, X^{lead-1}, ..., X^{-prec}; first one nonzero.
    coeffs: Vec<u64>,
    prec: i64,
}

impl LaurentSeries {
    /// Build from coefficients of X^top, X^{top-1}, ... . Coefficients beyond
    /// the list (down to X^{-prec}) are zero; those below X^{-prec} are dropped.
    pub fn new(field: PrimeField, top: i64, coeffs: Vec<u64>, prec: i64) -> Self {
        let p = field.modulus();
        let skip = coeffs.iter().take_while(|&&c| c % p == 0).count();
        let lead = top - skip as i64;
        if skip == coeffs.len() || lead < -prec {
            return Self::zero(field, prec);
        }
        let len = (lead + prec + 1) as usize;
        let mut out: Vec<u64> = coeffs[skip..].iter().take(len).map(|&c| c % p).collect();
        out.resize(len, 0);
        LaurentSeries { field, lead, coeffs: out, prec }
    }

    pub fn zero(field: PrimeField, prec: i64) -> Self {
        LaurentSeries { field, lead: 0, coeffs: Vec::new(), prec }
    }

    pub fn one(field: PrimeField, prec: i64) -> Self {
        Self::new(field, 0, vec![1], prec)
    }

    /// c·X^e known to precision `prec`.
    pub fn monomial(field: PrimeField, c: i64, e: i64, prec: i64) -> Self {
        Self::new(field, e, vec![field.reduce(c)], prec)
    }

    pub fn from_poly(q: &Poly, prec: i64) -> Self {
        let coeffs: Vec<u64> = q.residues().iter().rev().copied().collect();
        Self::new(q.field(), q.deg(), coeffs, prec)
    }

    /// num/den expanded through X^{-prec}.
    pub fn from_rational(num: &Poly, den: &Poly, prec: i64) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = num.field();
        let s = prec.max(0) as usize;
        let (q, _) = num.shift(s).divmod(den)?;
        let coeffs: Vec<u64> = q.residues().iter().rev().copied().collect();
        Ok(Self::new(field, q.deg() - s as i64, coeffs, prec))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the leading term, if nonzero within precision.
    pub fn top_degree(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lead)
    }

    /// Coefficient of X^e, or `None` when it lies below the precision.
    pub fn coeff(&self, e: i64) -> Option<u64> {
        if e < -self.prec {
            return None;
        }
        if self.is_zero() || e > self.lead {
            return Some(0);
        }
        Some(self.coeffs[(self.lead - e) as usize])
    }

    /// Stored coefficients, leading first (empty for a zero series).
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficients for exponents `top` down to `-prec`, zero-padded above the lead.
    fn dense(&self, top: i64, prec: i64) -> Vec<u64> {
        let len = (top + prec + 1).max(0) as usize;
        let mut v = vec![0u64; len];
        if !self.is_zero() {
            for (i, slot) in v.iter_mut().enumerate() {
                let e = top - i as i64;
                if e <= self.lead && e >= -self.prec {
                    *slot = self.coeffs[(self.lead - e) as usize];
                }
            }
        }
        v
    }

    /// Upper bound on the exponent of |F|: the lead, or -prec-1 if zero.
    fn effective_top(&self) -> i64 {
        self.top_degree().unwrap_or(-self.prec - 1)
    }

    pub fn norm(&self) -> NormReading {
        match self.top_degree() {
            Some(m) => NormReading::Exact(NormLog2::Pow(m)),
            None => NormReading::AtMost(-self.prec - 1),
        }
    }

    /// The part with nonnegative powers of X.
    pub fn poly_part(&self) -> Poly {
        if self.is_zero() || self.lead < 0 {
            return Poly::zero(self.field);
        }
        let n = self.lead as usize + 1;
        let asc: Vec<u64> = self.coeffs[..n.min(self.coeffs.len())].iter().rev().copied().collect();
        Poly::from_residues(self.field, asc)
    }

    /// The part with only negative powers of X.
    pub fn frac_part(&self) -> LaurentSeries {
        if self.is_zero() {
            return self.clone();
        }
        if self.lead < 0 {
            return self.clone();
        }
        let start = (self.lead + 1) as usize;
        Self::new(self.field, -1, self.coeffs[start..].to_vec(), self.prec)
    }

    /// ‖F‖, the norm of the fractional part.
    pub fn frac_norm(&self) -> Result<NormReading> {
        if self.prec < 1 {
            return Err(Error::InsufficientPrecision { have: self.prec, need: 1 });
        }
        Ok(self.frac_part().norm())
    }

    /// Forget coefficients below X^{-prec}.
    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        Self::new(self.field, self.lead, self.coeffs.clone(), prec)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.field, other.field, "mixed moduli");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let prec = self.prec.min(other.prec);
        let top = self.effective_top().max(other.effective_top()).max(-prec);
        let a = self.dense(top, prec);
        let b = other.dense(top, prec);
        let f = self.field;
        let sum = a.iter().zip(&b).map(|(&x, &y)| f.add(x, y)).collect();
        Self::new(f, top, sum, prec)
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        LaurentSeries {
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> Self {
        let f = self.field;
        let c = c % f.modulus();
        if c == 0 {
            return Self::zero(f, self.prec);
        }
        LaurentSeries {
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
            ..self.clone()
        }
    }

    /// Multiply by X^k (exact: precision moves with the shift).
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            lead: self.lead + k,
            prec: self.prec - k,
            ..self.clone()
        }
    }

    /// Product; precision min(N_G - m_F, N_F - m_G) with m the leading exponents.
    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let prec = (other.prec - self.effective_top()).min(self.prec - other.effective_top());
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field, prec);
        }
        let top = self.lead + other.lead;
        let len = (top + prec + 1) as usize;
        let a = &self.coeffs[..self.coeffs.len().min(len)];
        let b = &other.coeffs[..other.coeffs.len().min(len)];
        Self::new(self.field, top, convolve(self.field, a, b, len), prec)
    }

    /// Product with an exact polynomial; precision drops by deg q.
    pub fn mul_poly(&self, q: &Poly) -> Self {
        assert_eq!(self.field, q.field(), "mixed moduli");
        let Some(dq) = q.degree() else {
            return Self::zero(self.field, i64::MAX / 4);
        };
        let prec = self.prec - dq as i64;
        if self.is_zero() {
            return Self::zero(self.field, prec);
        }
        let top = self.lead + dq as i64;
        let len = (top + prec + 1) as usize;
        let qd: Vec<u64> = q.residues().iter().rev().copied().collect();
        Self::new(self.field, top, convolve(self.field, &self.coeffs, &qd, len), prec)
    }

    /// Reciprocal. For leading exponent m and precision N the result has
    /// precision N + 2m.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::IndistinguishableFromZero { precision: self.prec });
        }
        let f = self.field;
        let n = self.coeffs.len();
        let c0inv = f.inv(self.coeffs[0]);
        let mut h = vec![0u64; n];
        h[0] = c0inv;
        for k in 1..n {
            let mut s = 0u64;
            for i in 1..=k {
                s = f.add(s, f.mul(self.coeffs[i], h[k - i]));
            }
            h[k] = f.neg(f.mul(s, c0inv));
        }
        Ok(Self::new(f, -self.lead, h, self.prec + 2 * self.lead))
    }

    /// The known part as an exact Laurent polynomial `G·X^{-prec}`.
    pub fn to_laurent_poly(&self) -> (Poly, i64) {
        let prec = self.prec;
        if self.is_zero() {
            return (Poly::zero(self.field), prec);
        }
        let asc: Vec<u64> = self.coeffs.iter().rev().copied().collect();
        (Poly::from_residues(self.field, asc), prec)
    }

    /// Whether the two series agree on every coefficient both know.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

/// On-disk form: coefficients leading first, from `top_degree` down to X^{-precision}.
#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    p: u64,
    top_degree: i64,
    coeffs: Vec<u64>,
    precision: i64,
}

impl Serialize for LaurentSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr {
            p: self.field.modulus(),
            top_degree: self.top_degree().unwrap_or(-self.prec),
            coeffs: self.coeffs.clone(),
            precision: self.prec,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = SeriesRepr::deserialize(d)?;
        let field = PrimeField::new(r.p).map_err(serde::de::Error::custom)?;
        if r.coeffs.iter().any(|&c| c >= r.p) {
            return Err(serde::de::Error::custom("coefficient out of range"));
        }
        Ok(LaurentSeries::new(field, r.top_degree, r.coeffs, r.precision))
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = self.lead - i as i64;
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "X")?,
                (1, c) => write!(f, "{c}*X")?,
                (e, 1) => write!(f, "X^{e}")?,
                (e, c) => write!(f, "{c}*X^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, "+O(X^{})", -self.prec - 1)
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rational_expansion_exact_and_geometric() {
        let k3 = f(3);
        let num = Poly::from_coeffs(k3, &[1, 0, 1]);
        let s = LaurentSeries::from_rational(&num, &Poly::x(k3), 5).unwrap();
        assert_eq!(s, LaurentSeries::new(k3, 1, vec![1, 0, 1], 5));

        let k2 = f(2);
        let s = LaurentSeries::from_rational(&Poly::one(k2), &Poly::linear(k2, 1, 1), 4).unwrap();
        assert_eq!(s.top_degree(), Some(-1));
        assert_eq!(s.coeffs(), &[1, 1, 1, 1]);
        assert_eq!(s.precision(), 4);

        let q = Poly::from_coeffs(f(5), &[2, 3, 1]);
        let one = LaurentSeries::from_rational(&q, &q, 7).unwrap();
        assert_eq!(one, LaurentSeries::one(f(5), 7));
        assert!(LaurentSeries::from_rational(&q, &Poly::zero(f(5)), 3).is_err());
    }

    #[test]
    fn inverse_of_x_plus_inverse_x() {
        let k = f(3);
        let s = LaurentSeries::new(k, 1, vec![1, 0, 1], 5);
        let inv = s.inv().unwrap();
        // precision N + 2m = 7
        assert_eq!(inv.precision(), 7);
        assert_eq!(inv.truncate(5), LaurentSeries::new(k, -1, vec![1, 0, 2, 0, 1], 5));
        let prod = s.mul(&inv);
        assert!(prod.agrees_with(&LaurentSeries::one(k, 40)));
        assert!(prod.precision() >= 5);
    }

    #[test]
    fn norms_and_fractional_parts() {
        let k = f(3);
        assert_eq!(LaurentSeries::zero(k, 4).norm(), NormReading::AtMost(-5));
        let s = LaurentSeries::new(k, 2, vec![1, 0, 1, 1], 8);
        assert_eq!(s.norm(), NormReading::Exact(NormLog2::Pow(2)));
        let t = LaurentSeries::new(k, -3, vec![1, 0, 0, 0, 1], 9);
        assert_eq!(t.norm(), NormReading::Exact(NormLog2::Pow(-3)));

        let u = LaurentSeries::new(k, 2, vec![1, 0, 0, 2], 6);
        assert_eq!(u.frac_norm().unwrap(), NormReading::Exact(NormLog2::Pow(-1)));
        let v = LaurentSeries::new(k, 1, vec![1, 0, 0, 0, 0, 1], 6);
        assert_eq!(v.frac_norm().unwrap(), NormReading::Exact(NormLog2::Pow(-4)));
        let q = LaurentSeries::from_poly(&Poly::from_coeffs(k, &[1, 2, 1]), 6);
        assert_eq!(q.frac_norm().unwrap(), NormReading::AtMost(-7));
        assert_eq!(u.poly_part().to_string(), "X^2");
        assert!(!u.poly_part().is_zero());
        assert!(LaurentSeries::zero(k, 0).frac_norm().is_err());
    }

    #[test]
    fn additive_inverse_and_identity() {
        let k = f(5);
        let s = LaurentSeries::new(k, 3, vec![2, 4, 0, 1, 3], 6);
        let z = s.add(&s.neg());
        assert!(z.is_zero());
        assert_eq!(z.precision(), 6);
        assert_eq!(s.mul(&LaurentSeries::one(k, 100)), s);
    }

    #[test]
    fn product_precision_is_pessimistic() {
        let k = f(2);
        // F = X^2 + ..., N = 10 ; G = X^{-1} + ..., N = 4
        let a = LaurentSeries::new(k, 2, vec![1, 1], 10);
        let b = LaurentSeries::new(k, -1, vec![1, 0, 1], 4);
        let c = a.mul(&b);
        assert_eq!(c.precision(), (4 - 2));
    }

    #[test]
    fn inverse_of_zero_fails() {
        let z = LaurentSeries::zero(f(3), 9);
        assert_eq!(z.inv(), Err(Error::IndistinguishableFromZero { precision: 9 }));
    }
}

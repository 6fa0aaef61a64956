//! Dense univariate polynomials over F_p.
//!
//! Coefficients are stored constant term first. The representation is
//! canonical: the zero polynomial has no coefficients and otherwise the last
//! stored coefficient is nonzero.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::algebra::field::{FieldElement, PrimeField};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

/// Truncated convolution of two residue sequences, keeping `out_len` terms.
///
/// Accumulates without reduction when the sum of products cannot overflow.
pub(crate) fn convolve(field: PrimeField, a: &[u64], b: &[u64], out_len: usize) -> Vec<u64> {
    let mut out = vec![0u64; out_len];
    if a.is_empty() || b.is_empty() || out_len == 0 {
        return out;
    }
    let p = field.modulus();
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let sq = (p - 1) * (p - 1);
    // number of products that may be summed before a reduction is needed
    let batch = u64::MAX.checked_div(sq).map_or(usize::MAX, |b| b.min(usize::MAX as u64) as usize);
    if batch >= short.len() {
        for (i, &x) in short.iter().enumerate() {
            if x == 0 || i >= out_len {
                continue;
            }
            let end = long.len().min(out_len - i);
            let row = &mut out[i..i + end];
            for (o, &y) in row.iter_mut().zip(&long[..end]) {
                *o += x * y;
            }
        }
        for o in out.iter_mut() {
            *o %= p;
        }
    } else {
        for (i, &x) in short.iter().enumerate() {
            if x == 0 || i >= out_len {
                continue;
            }
            let end = long.len().min(out_len - i);
            for (o, &y) in out[i..i + end].iter_mut().zip(&long[..end]) {
                *o = (*o + x * y) % p;
            }
        }
    }
    out
}

impl Poly {
    fn normalize(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        self
    }

    pub fn zero(field: PrimeField) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field, 1)
    }

    /// The indeterminate X.
    pub fn x(field: PrimeField) -> Self {
        Poly { field, coeffs: vec![0, 1] }
    }

    pub fn constant(field: PrimeField, c: i64) -> Self {
        Poly { field, coeffs: vec![field.reduce(c)] }.normalize()
    }

    /// c·X^deg.
    pub fn monomial(field: PrimeField, c: i64, deg: usize) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = field.reduce(c);
        Poly { field, coeffs }.normalize()
    }

    /// From signed integer coefficients, constant term first.
    pub fn from_coeffs(field: PrimeField, coeffs: &[i64]) -> Self {
        Poly {
            field,
            coeffs: coeffs.iter().map(|&c| field.reduce(c)).collect(),
        }
        .normalize()
    }

    /// From residues in [0, p), constant term first. Out-of-range values are reduced.
    pub fn from_residues(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        let p = field.modulus();
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        Poly { field, coeffs }.normalize()
    }

    /// a·X + b.
    pub fn linear(field: PrimeField, a: i64, b: i64) -> Self {
        Self::from_coeffs(field, &[b, a])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn residues(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_residues(self) -> Vec<u64> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as a signed integer, with -1 for the zero polynomial.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        FieldElement::new(self.field, self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().map(|&c| FieldElement::new(self.field, c))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => self.scale(self.field.inv(lc)),
        }
    }

    pub fn scale(&self, c: u64) -> Self {
        let f = self.field;
        let c = c % f.modulus();
        Poly {
            field: f,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
        .normalize()
    }

    /// Multiply by X^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { field: self.field, coeffs }
    }

    fn check(&self, other: &Poly) {
        assert_eq!(self.field, other.field, "mixed moduli");
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient and remainder with deg remainder < deg divisor.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check(divisor);
        let f = self.field;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(dn) = self.degree() else {
            return Ok((Poly::zero(f), Poly::zero(f)));
        };
        if dn < dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let lc_inv = f.inv(divisor.coeffs[dd]);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; dn - dd + 1];
        for i in (0..=dn - dd).rev() {
            let c = rem[i + dd];
            if c == 0 {
                continue;
            }
            let q = f.mul(c, lc_inv);
            quot[i] = q;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                if d != 0 {
                    rem[i + j] = f.sub(rem[i + j], f.mul(q, d));
                }
            }
        }
        rem.truncate(dd);
        Ok((
            Poly { field: f, coeffs: quot }.normalize(),
            Poly { field: f, coeffs: rem }.normalize(),
        ))
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.check(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divmod(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Substitute X ↦ c·X.
    pub fn scale_var(&self, c: i64) -> Self {
        let f = self.field;
        let c = f.reduce(c);
        let mut pw = 1;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| {
                let v = f.mul(a, pw);
                pw = f.mul(pw, c);
                v
            })
            .collect();
        Poly { field: f, coeffs }.normalize()
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Canonical total order: by degree, then coefficients from the top down.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check(rhs);
        let f = self.field;
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, &s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = f.add(*c, s);
        }
        Poly { field: f, coeffs }.normalize()
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = self.field;
        Poly {
            field: f,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let n = self.coeffs.len() + rhs.coeffs.len() - 1;
        Poly {
            field: self.field,
            coeffs: convolve(self.field, &self.coeffs, &rhs.coeffs, n),
        }
        .normalize()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Serialized as its canonical string.
impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Canonical form: terms in decreasing degree, e.g. `2*X^2+X+1`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "X")?,
                (1, c) => write!(f, "{c}*X")?,
                (i, 1) => write!(f, "X^{i}")?,
                (i, c) => write!(f, "{c}*X^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.field)
    }
}

impl Poly {
    /// Parse a polynomial in canonical or near-canonical form (`2*X^2+X+1`,
    /// `X^3 - X + 2`, `-X`). Coefficients may be any signed integers.
    pub fn parse(field: PrimeField, s: &str) -> Result<Poly> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms: Vec<(i64, String)> = Vec::new();
        let mut sign = 1i64;
        let mut cur = String::new();
        for ch in cleaned.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
                terms.push((sign, std::mem::take(&mut cur)));
                sign = if ch == '-' { -1 } else { 1 };
            } else if (ch == '+' || ch == '-') && cur.is_empty() {
                if ch == '-' {
                    sign = -sign;
                }
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(Error::Parse(format!("dangling sign in {s:?}")));
        }
        terms.push((sign, cur));
        let mut acc = Poly::zero(field);
        let bad = || Error::Parse(format!("cannot parse polynomial {s:?}"));
        for (sign, t) in terms {
            let (coef, deg) = if let Some(xpos) = t.find(['X', 'x']) {
                let head = &t[..xpos];
                let tail = &t[xpos + 1..];
                let coef: i64 = if head.is_empty() {
                    1
                } else {
                    head.strip_suffix('*').ok_or_else(bad)?.parse().map_err(|_| bad())?
                };
                let deg: usize = if tail.is_empty() {
                    1
                } else {
                    tail.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                };
                (coef, deg)
            } else {
                (t.parse::<i64>().map_err(|_| bad())?, 0)
            };
            acc = &acc + &Poly::monomial(field, sign * coef, deg);
        }
        Ok(acc)
    }
}

/// Parsing with an explicit field is the norm; this impl targets F_p given
/// as a `p:` prefix, e.g. `3:X^2+1`.
impl FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Poly> {
        let (p, body) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `p:poly`, got {s:?}")))?;
        let p: u64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad modulus in {s:?}")))?;
        Poly::parse(PrimeField::new(p)?, body)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn schoolbook_product_mod_3() {
        let a = Poly::from_coeffs(f(3), &[1, 0, 1]);
        let b = Poly::from_coeffs(f(3), &[2, 1]);
        assert_eq!((&a * &b).to_string(), "X^3+2*X^2+X+2");
    }

    #[test]
    fn identity_and_zero() {
        let a = Poly::from_coeffs(f(5), &[3, 0, 4, 1]);
        assert_eq!(&a * &Poly::one(f(5)), a);
        assert!((&a * &Poly::zero(f(5))).is_zero());
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn divmod_f2() {
        let a = Poly::from_coeffs(f(2), &[0, 1, 0, 1]);
        let (q, r) = a.divmod(&Poly::x(f(2))).unwrap();
        assert_eq!(q.to_string(), "X^2+1");
        assert!(r.is_zero());
        assert_eq!(a.divmod(&Poly::zero(f(2))), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_is_monic() {
        let k = f(7);
        let a = Poly::from_coeffs(k, &[1, 1]) * Poly::from_coeffs(k, &[3, 0, 1]);
        let b = Poly::from_coeffs(k, &[1, 1]) * Poly::from_coeffs(k, &[5, 3]);
        let g = a.scale(4).gcd(&b);
        assert_eq!(g, Poly::from_coeffs(k, &[1, 1]));
    }

    #[test]
    fn large_modulus_product_reduces() {
        let k = f(2_147_483_647);
        let a = Poly::from_coeffs(k, &[-1; 40]);
        let sq = &a * &a;
        // (-1)^2 summed over overlapping terms
        assert_eq!(sq.coeff(39).residue(), 40);
    }

    #[test]
    fn canonical_text_round_trips() {
        let k = f(3);
        for s in ["2*X^2+X+1", "X", "0", "2", "X^5+2*X^3"] {
            assert_eq!(Poly::parse(k, s).unwrap().to_string(), s);
        }
        assert_eq!(Poly::parse(k, "-X + 1").unwrap().to_string(), "2*X+1");
        assert_eq!("5:X^2-1".parse::<Poly>().unwrap().to_string(), "X^2+4");
        assert!(Poly::parse(k, "X^").is_err());
    }

    #[test]
    fn substitution_neg_x() {
        let k = f(3);
        assert_eq!(Poly::linear(k, 1, 1).scale_var(-1).to_string(), "2*X+1");
    }
}

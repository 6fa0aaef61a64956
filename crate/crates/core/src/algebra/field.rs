//! Prime fields F_p and their elements.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted; keeps every product below 2^62.
pub const MAX_MODULUS: u64 = 1 << 31;

/// The prime field F_p. Cheap to copy; carried by every element and polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeField {
    p: u64,
}

impl TryFrom<u64> for PrimeField {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u64 {
    fn from(f: PrimeField) -> u64 {
        f.p
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_MODULUS || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    /// Reduce a signed integer into [0, p).
    pub fn reduce(self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn elem(self, v: i64) -> FieldElement {
        FieldElement {
            residue: self.reduce(v),
            field: self,
        }
    }

    pub fn zero(self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(self) -> FieldElement {
        self.elem(1)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// A residue mod p together with its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    residue: u64,
    field: PrimeField,
}

impl FieldElement {
    pub fn new(field: PrimeField, residue: u64) -> Self {
        FieldElement {
            residue: residue % field.p,
            field,
        }
    }

    pub fn residue(self) -> u64 {
        self.residue
    }

    pub fn field(self) -> PrimeField {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.residue == 0
    }

    pub fn inv(self) -> Result<Self> {
        if self.residue == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElement {
            residue: self.field.inv(self.residue),
            field: self.field,
        })
    }

    fn check(self, other: Self) {
        assert_eq!(self.field, other.field, "mixed moduli");
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check(rhs);
        FieldElement {
            residue: self.field.add(self.residue, rhs.residue),
            field: self.field,
        }
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.check(rhs);
        FieldElement {
            residue: self.field.sub(self.residue, rhs.residue),
            field: self.field,
        }
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(rhs);
        FieldElement {
            residue: self.field.mul(self.residue, rhs.residue),
            field: self.field,
        }
    }
}

impl Div for FieldElement {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in F_p")
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        FieldElement {
            residue: self.field.neg(self.residue),
            field: self.field,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

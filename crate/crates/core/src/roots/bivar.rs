//! Polynomials in Z with coefficients in F_p[X], and exact evaluation at Laurent polynomials.

use std::fmt;

use serde::Serialize;

use crate::algebra::{LaurentSeries, NormLog2, Poly, PrimeField};
use crate::error::{Error, Result};

/// Σ c_i(X) Z^i, coefficients indexed by the power of Z.
#[derive(Clone, PartialEq, Eq)]
pub struct BivarPoly {
    field: PrimeField,
    coeffs: Vec<Poly>,
}

impl BivarPoly {
    pub fn new(field: PrimeField, mut coeffs: Vec<Poly>) -> Result<Self> {
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::Invalid("coefficients over mixed moduli".into()));
        }
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(BivarPoly { field, coeffs })
    }

    /// From integer coefficient lists, each constant-first.
    pub fn from_int(field: PrimeField, coeffs: &[&[i64]]) -> Result<Self> {
        Self::new(field, coeffs.iter().map(|c| Poly::from_coeffs(field, c)).collect())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Poly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Poly::zero(self.field))
    }

    /// The j-th Hasse derivative Σ C(i, j) c_i Z^{i−j}; `None` if it vanishes.
    pub fn hasse(&self, j: usize) -> Option<BivarPoly> {
        let f = self.field;
        let d = self.degree();
        if j > d {
            return None;
        }
        // Pascal rows mod p
        let mut row = vec![1u64];
        let mut out = Vec::with_capacity(d + 1 - j);
        for i in 0..=d {
            if i > 0 {
                let mut next = vec![1u64; i + 1];
                for k in 1..i {
                    next[k] = f.add(row[k - 1], row[k]);
                }
                row = next;
            }
            if i >= j {
                out.push(self.coeffs[i].scale(row[j]));
            }
        }
        BivarPoly::new(f, out).ok()
    }

    pub fn derivative(&self) -> Option<BivarPoly> {
        self.hasse(1)
    }

    /// Exact value at a Laurent polynomial.
    pub fn eval_exact(&self, z: &LaurentPoly) -> LaurentPoly {
        assert_eq!(z.field(), self.field, "mixed moduli");
        let z = z.normalized();
        let s = z.shift as usize;
        let d = self.degree();
        // H_d = c_d, H_i = H_{i+1} G + c_i X^{(d-i)s}; P(G X^{-s}) = H_0 X^{-ds}
        let mut h = self.coeffs[d].clone();
        for i in (0..d).rev() {
            h = &(&h * &z.num) + &self.coeffs[i].shift((d - i) * s);
        }
        LaurentPoly { num: h, shift: (d * s) as i64 }
    }

    /// Value at the known part of a series, as a series of the given precision.
    pub fn eval_truncated(&self, z: &LaurentSeries, prec: i64) -> LaurentSeries {
        self.eval_exact(&LaurentPoly::from_series(z)).to_series(prec)
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let zpart = match i {
                0 => String::new(),
                1 => "Z".to_string(),
                i => format!("Z^{i}"),
            };
            let single = c.residues().iter().filter(|&&r| r != 0).count() == 1;
            match (i, c.to_string().as_str(), single) {
                (0, s, _) => write!(f, "{s}")?,
                (_, "1", _) => write!(f, "{zpart}")?,
                (_, s, true) => write!(f, "{s}*{zpart}")?,
                (_, s, false) => write!(f, "({s})*{zpart}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.field)
    }
}

impl Serialize for BivarPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// An exact Laurent polynomial `num · X^{-shift}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    pub num: Poly,
    pub shift: i64,
}

impl LaurentPoly {
    pub fn new(num: Poly, shift: i64) -> Self {
        LaurentPoly { num, shift }
    }

    /// The known coefficients of a series, read as exact.
    pub fn from_series(f: &LaurentSeries) -> Self {
        let (num, shift) = f.to_laurent_poly();
        LaurentPoly { num, shift }
    }

    pub fn field(&self) -> PrimeField {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Same value with a nonnegative shift.
    fn normalized(&self) -> LaurentPoly {
        if self.shift >= 0 {
            self.clone()
        } else {
            LaurentPoly { num: self.num.shift((-self.shift) as usize), shift: 0 }
        }
    }

    pub fn norm(&self) -> NormLog2 {
        match self.num.degree() {
            None => NormLog2::Zero,
            Some(d) => NormLog2::Pow(d as i64 - self.shift),
        }
    }

    /// The same value as a series known to X^{-prec}.
    pub fn to_series(&self, prec: i64) -> LaurentSeries {
        LaurentSeries::from_poly(&self.num, prec - self.shift).shift(-self.shift)
    }
}

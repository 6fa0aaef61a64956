//! Exhaustive minimization of the Littlewood products over monic q of bounded degree.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{NormReading, Poly, PrimeField};
use crate::error::{Error, Result};
use crate::littlewood::{product_at, LittlewoodReport, Target};

/// The `idx`-th monic polynomial of degree `d`, lower coefficients read base p.
pub fn monic_poly(field: PrimeField, d: usize, mut idx: u64) -> Poly {
    let p = field.modulus();
    let mut c = vec![0u64; d + 1];
    c[d] = 1;
    for slot in c.iter_mut().take(d) {
        *slot = idx % p;
        idx /= p;
    }
    Poly::from_residues(field, c)
}

pub fn monic_count(field: PrimeField, d: usize) -> u64 {
    field.modulus().checked_pow(d as u32).expect("too many polynomials to enumerate")
}

/// Order for minima: smaller (upper bound of the) value first, then the least canonical string.
pub fn minimum_order(a: (&NormReading, &str), b: (&NormReading, &str)) -> Ordering {
    a.0.cmp_upper(*b.0).then_with(|| a.1.cmp(b.1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Minimum {
    pub value: NormReading,
    pub argmin: Poly,
}

impl Minimum {
    fn better(self, other: Minimum) -> Minimum {
        let a = self.argmin.to_string();
        let b = other.argmin.to_string();
        match minimum_order((&self.value, &a), (&other.value, &b)) {
            Ordering::Greater => other,
            _ => self,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    pub degree: usize,
    pub product1: Minimum,
    pub product2: Minimum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanResult {
    pub max_degree: usize,
    pub product1: Minimum,
    pub product2: Minimum,
    /// Some minimum sits on a precision floor, so it is only an upper bound.
    pub upper_bound: bool,
    pub rows: Vec<DegreeRow>,
}

fn row_for_degree(field: PrimeField, d: usize, theta: &Target, phi: &Target) -> DegreeRow {
    let reports = (0..monic_count(field, d)).into_par_iter().map(|i| {
        let q = monic_poly(field, d, i);
        product_at(&q, theta, phi).expect("monic q is nonzero")
    });
    let pick = |r: &LittlewoodReport, v: NormReading| Minimum { value: v, argmin: r.q.clone() };
    let (m1, m2) = reports
        .map(|r| (pick(&r, r.product1), pick(&r, r.product2)))
        .reduce_with(|a, b| (a.0.better(b.0), a.1.better(b.1)))
        .expect("at least one monic polynomial");
    DegreeRow { degree: d, product1: m1, product2: m2 }
}

/// Minima of both products over all nonzero q with deg q ≤ `max_degree`.
///
/// Only monic q are enumerated: scaling q by a unit leaves every exponent unchanged.
pub fn scan(theta: &Target, phi: &Target, max_degree: usize) -> Result<ScanResult> {
    if max_degree < 1 {
        return Err(Error::Invalid("scan degree must be at least 1".into()));
    }
    let field = theta.field();
    if phi.field() != field {
        return Err(Error::Invalid("Θ and Φ live over different fields".into()));
    }
    let rows: Vec<DegreeRow> = (0..=max_degree).map(|d| row_for_degree(field, d, theta, phi)).collect();
    let best = |get: fn(&DegreeRow) -> &Minimum| {
        rows.iter().map(|r| get(r).clone()).reduce(Minimum::better).expect("nonempty")
    };
    let product1 = best(|r| &r.product1);
    let product2 = best(|r| &r.product2);
    let upper_bound = !product1.value.is_exact() || !product2.value.is_exact();
    Ok(ScanResult { max_degree, product1, product2, upper_bound, rows })
}

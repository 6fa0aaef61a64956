//! A deliberately naive second implementation of the scan, for cross-checking.
//!
//! It enumerates every nonzero q (not only monic ones) and reads each
//! fractional coefficient of qΘ straight from the coefficient lists.

use serde::Serialize;

use crate::algebra::{LaurentSeries, NormLog2, NormReading, Poly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub product1: NormReading,
    pub argmin1: Poly,
    pub product2: NormReading,
    pub argmin2: Poly,
}

/// Coefficient of X^{-h} in qΘ, or `None` when Θ's precision does not reach it.
fn frac_coeff(q: &[u64], theta: &LaurentSeries, h: i64, p: u64) -> Option<u64> {
    let mut acc = 0u64;
    for (i, &qi) in q.iter().enumerate() {
        // X^i · X^{e} = X^{-h}  =>  e = -h - i
        let c = theta.coeff(-h - i as i64)?;
        acc = (acc + qi * c) % p;
    }
    Some(acc)
}

fn frac_reading(q: &[u64], theta: &LaurentSeries, p: u64) -> NormReading {
    let mut h = 1;
    loop {
        match frac_coeff(q, theta, h, p) {
            None => return NormReading::AtMost(-h),
            Some(0) => h += 1,
            Some(_) => return NormReading::Exact(NormLog2::Pow(-h)),
        }
    }
}

fn value(r: NormReading) -> (u8, i64) {
    match r.upper() {
        NormLog2::Zero => (0, 0),
        NormLog2::Pow(v) => (1, v),
    }
}

fn combine(a: NormReading, b: NormReading, shift: i64) -> NormReading {
    let zero = NormReading::Exact(NormLog2::Zero);
    if a == zero || b == zero {
        return zero;
    }
    let x = a.upper().exponent().expect("nonzero bound");
    let y = b.upper().exponent().expect("nonzero bound");
    if a.is_exact() && b.is_exact() {
        NormReading::Exact(NormLog2::Pow(x + y + shift))
    } else {
        NormReading::AtMost(x + y + shift)
    }
}

/// Brute-force minima of |q|·‖qΘ‖·‖qΦ‖ and |q|²·‖qΘ‖·‖qΦ‖ over all nonzero q with deg q ≤ `max_degree`.
/// Ties go to the least canonical string of the monic associate.
pub fn oracle_scan(theta: &LaurentSeries, phi: &LaurentSeries, max_degree: usize) -> OracleResult {
    let field = theta.field();
    let p = field.modulus();
    let total = p.pow(max_degree as u32 + 1);
    let mut best1: Option<((u8, i64), String, NormReading, Poly)> = None;
    let mut best2: Option<((u8, i64), String, NormReading, Poly)> = None;
    for idx in 1..total {
        let mut q = Vec::with_capacity(max_degree + 1);
        let mut t = idx;
        for _ in 0..=max_degree {
            q.push(t % p);
            t /= p;
        }
        while q.last() == Some(&0) {
            q.pop();
        }
        let deg = q.len() as i64 - 1;
        let a = frac_reading(&q, theta, p);
        let b = frac_reading(&q, phi, p);
        let p1 = combine(a, b, deg);
        let p2 = combine(a, b, 2 * deg);
        let lead_inv = field.inv(*q.last().unwrap());
        let monic: Vec<u64> = q.iter().map(|&c| c * lead_inv % p).collect();
        let poly = Poly::from_residues(field, monic);
        let name = poly.to_string();
        for (best, val) in [(&mut best1, p1), (&mut best2, p2)] {
            let key = value(val);
            let replace = match best {
                None => true,
                Some((k, n, _, _)) => key < *k || (key == *k && name < *n),
            };
            if replace {
                *best = Some((key, name.clone(), val, poly.clone()));
            }
        }
    }
    let (_, _, product1, argmin1) = best1.expect("nonempty");
    let (_, _, product2, argmin2) = best2.expect("nonempty");
    OracleResult { product1, argmin1, product2, argmin2 }
}

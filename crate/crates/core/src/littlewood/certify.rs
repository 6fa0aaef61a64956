//! Finite-window certificates for the palindrome and periodic-block conditions,
//! the exponent scan around the quartic with normal approximation, and Bad witnesses.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::algebra::{LaurentSeries, NormReading, Poly};
use crate::cfengine::CfWord;
use crate::error::{Error, Result};
use crate::littlewood::{monic_count, monic_poly, product_at, Target};
use crate::words::Word;

pub fn ser_ratio<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

fn ratio(a: usize, b: usize) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceCheck {
    pub u_len: usize,
    /// |V_k|, or |V^{[n_k]}| for the periodic form.
    pub v_len: usize,
    /// V_k is a palindrome (always true for the periodic form).
    pub palindrome: bool,
    #[serde(serialize_with = "ser_ratio")]
    pub ratio: BigRational,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionCertificate {
    /// Number of letters (a_0 included) over which M and m were measured.
    pub window: usize,
    pub instances: Vec<InstanceCheck>,
    /// The V lengths (or repetition counts) increase strictly.
    pub increasing: bool,
    #[serde(serialize_with = "ser_ratio")]
    pub x_empirical: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub big_m_empirical: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub small_m_empirical: BigRational,
    /// x must exceed this.
    #[serde(serialize_with = "ser_ratio")]
    pub condition_value: BigRational,
    pub satisfied: bool,
}

/// Checks that `parts`, placed after the first `lead` letters, form a prefix of `letters`;
/// returns the covered length.
fn check_prefix(letters: &[Poly], lead: usize, parts: &[&Word]) -> Result<usize> {
    let mut offset = lead;
    for part in parts {
        for (i, l) in part.iter().enumerate() {
            if letters.get(offset + i) != Some(l) {
                return Err(Error::PrefixMismatch { index: offset + i });
            }
        }
        offset += part.len();
    }
    Ok(offset)
}

/// deg q_ℓ for ℓ = 0..len, where letters[0] = a_0.
fn denominator_degrees(letters: &[Poly]) -> Vec<i64> {
    let mut out = vec![0i64];
    for l in letters.iter().skip(1) {
        out.push(out.last().unwrap() + l.deg());
    }
    out
}

fn extremes(vals: impl Iterator<Item = BigRational>) -> Result<(BigRational, BigRational)> {
    let mut it = vals.peekable();
    let first = it.peek().cloned().ok_or_else(|| Error::Invalid("empty window".into()))?;
    Ok(it.fold((first.clone(), first), |(hi, lo), v| {
        (if v > hi { v.clone() } else { hi }, if v < lo { v } else { lo })
    }))
}

/// Palindrome condition: each U_k V_k a prefix of the expansion a_0, a_1, … read from
/// `word`, V_k palindromes with |V_{k+1}| > |V_k| ≥ x|U_k|, and x > 3M/m − 1 for M, m the
/// extremes of deg q_ℓ/ℓ over the window. With `lead` = 1 the U_k start at a_1 and a_0
/// counts as one more letter of every U_k.
pub fn certify_palindromic(word: &CfWord, lead: usize, pairs: &[(Word, Word)]) -> Result<ConditionCertificate> {
    let letters = word.all_letters();
    let mut window = 0;
    let mut instances = Vec::new();
    for (u, v) in pairs {
        window = window.max(check_prefix(&letters, lead, &[u, v])?);
        instances.push(InstanceCheck {
            u_len: u.len() + lead,
            v_len: v.len(),
            palindrome: v.is_palindrome(),
            ratio: ratio(v.len(), (u.len() + lead).max(1)),
        });
    }
    let increasing = instances.windows(2).all(|w| w[1].v_len > w[0].v_len);
    let x = extremes(instances.iter().map(|i| i.ratio.clone()))?.1;
    let degs = denominator_degrees(&letters[..window]);
    let (big_m, small_m) = extremes((1..degs.len()).map(|l| BigRational::new(degs[l].into(), (l as i64).into())))?;
    let condition_value = BigRational::from_integer(3.into()) * &big_m / &small_m - BigRational::from_integer(1.into());
    let satisfied = increasing && instances.iter().all(|i| i.palindrome) && x > condition_value;
    Ok(ConditionCertificate {
        window,
        instances,
        increasing,
        x_empirical: x,
        big_m_empirical: big_m,
        small_m_empirical: small_m,
        condition_value,
        satisfied,
    })
}

/// Periodic-block condition: each U_k V^{[n_k]} a prefix of the expansion of `word`
/// (a_0 first), n_k increasing, |V^{[n_k]}| ≥ x|U_k|, and x > M/m for M, m the extreme
/// letter degrees a_1, a_2, … over the window.
pub fn certify_periodic(word: &CfWord, us: &[Word], v: &Word, ns: &[usize]) -> Result<ConditionCertificate> {
    let letters = word.all_letters();
    if us.len() != ns.len() {
        return Err(Error::Invalid("one repetition count per U_k is required".into()));
    }
    let mut window = 0;
    let mut instances = Vec::new();
    for (u, &n) in us.iter().zip(ns) {
        let vn = v.power(n);
        window = window.max(check_prefix(&letters, 0, &[u, &vn])?);
        instances.push(InstanceCheck {
            u_len: u.len(),
            v_len: vn.len(),
            palindrome: true,
            ratio: ratio(vn.len(), u.len().max(1)),
        });
    }
    let increasing = ns.windows(2).all(|w| w[1] > w[0]);
    let x = extremes(instances.iter().map(|i| i.ratio.clone()))?.1;
    let (big_m, small_m) =
        extremes(letters[..window].iter().skip(1).map(|l| BigRational::from_integer(l.deg().into())))?;
    let condition_value = &big_m / &small_m;
    let satisfied = increasing && x > condition_value;
    Ok(ConditionCertificate {
        window,
        instances,
        increasing,
        x_empirical: x,
        big_m_empirical: big_m,
        small_m_empirical: small_m,
        condition_value,
        satisfied,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExponentRow {
    pub q: Poly,
    pub deg_q: i64,
    /// (2 + ε)·deg q + log2‖qΘ‖ + log2‖qΘ^{-1}‖; the inequality adds 4·√(deg q / 3).
    #[serde(serialize_with = "ser_ratio")]
    pub rational_part: BigRational,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExponentScan {
    pub max_degree: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub epsilon: BigRational,
    pub checked: usize,
    /// q where the inequality fails; allowed for small degrees.
    pub violations: Vec<ExponentRow>,
    /// q whose fractional norms hit the precision floor; no conclusion drawn.
    pub floor_excluded: Vec<Poly>,
}

/// Whether A + 4·√(d/3) ≥ 0, decided exactly: for A < 0 this is 16d/3 ≥ A².
fn exponent_holds(a: &BigRational, d: i64) -> bool {
    if !a.is_negative() {
        return true;
    }
    BigRational::new(BigInt::from(16 * d), BigInt::from(3)) >= a * a
}

/// Over monic q with 1 ≤ deg q ≤ D, test
/// (2 + 4/√(3 deg q) + ε)·deg q + log2‖qΘ‖ + log2‖qΘ^{-1}‖ ≥ 0.
pub fn exponent_scan(theta: &LaurentSeries, max_degree: usize, epsilon: &BigRational) -> Result<ExponentScan> {
    let inv = Target::Series(theta.inv()?);
    let th = Target::Series(theta.clone());
    let field = theta.field();
    let jobs: Vec<(usize, u64)> = (1..=max_degree).flat_map(|d| (0..monic_count(field, d)).map(move |i| (d, i))).collect();
    let rows: Vec<std::result::Result<ExponentRow, Poly>> = jobs
        .par_iter()
        .map(|&(d, i)| {
            let q = monic_poly(field, d, i);
            let r = product_at(&q, &th, &inv).expect("monic q");
            let (Some(a), Some(b)) = (r.log_theta.exact(), r.log_phi.exact()) else {
                return Err(q);
            };
            let logs = match (a.exponent(), b.exponent()) {
                (Some(x), Some(y)) => x + y,
                _ => return Err(q),
            };
            let deg = d as i64;
            let rational_part =
                (BigRational::from_integer(2.into()) + epsilon) * BigRational::from_integer(deg.into())
                    + BigRational::from_integer(logs.into());
            let holds = exponent_holds(&rational_part, deg);
            Ok(ExponentRow { q, deg_q: deg, rational_part, holds })
        })
        .collect();
    let checked = rows.len();
    let mut violations = Vec::new();
    let mut floor_excluded = Vec::new();
    for row in rows {
        match row {
            Ok(r) if !r.holds => violations.push(r),
            Ok(_) => {}
            Err(q) => floor_excluded.push(q),
        }
    }
    Ok(ExponentScan { max_degree, epsilon: epsilon.clone(), checked, violations, floor_excluded })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BadWitness {
    pub letters_examined: usize,
    pub max_quotient_degree: i64,
    /// Index (1-based among a_1, a_2, …) of the first letter reaching the maximum.
    pub argmax: usize,
}

/// Largest degree among a_1, …, a_count.
pub fn bad_witness(word: &CfWord, count: usize) -> BadWitness {
    let mut best = (0i64, 0usize);
    let n = count.min(word.tail.len());
    for (i, l) in word.tail.iter().take(n).enumerate() {
        if l.deg() > best.0 {
            best = (l.deg(), i + 1);
        }
    }
    BadWitness { letters_examined: n, max_quotient_degree: best.0, argmax: best.1 }
}

/// Whether a reading is certainly below 2^v.
pub fn below(r: NormReading, v: i64) -> bool {
    match r.upper().exponent() {
        None => true,
        Some(e) => e < v,
    }
}

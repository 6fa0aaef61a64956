//! The palindrome mechanism: reports at the denominators the proofs single out.

use num_rational::BigRational;
use serde::Serialize;

use crate::algebra::{LaurentSeries, NormLog2, Poly};
use crate::cfengine::{cf_eval, denominators, eval_eventually_periodic, CfWord};
use crate::error::{Error, Result};
use crate::littlewood::{product_at, LittlewoodReport, Target};
use crate::words::Word;

/// Θ − a_0 = [0; a_1, a_2, …] and its reciprocal, both to precision `prec`.
fn normalized_pair(tail: &Word, prec: i64) -> Result<(CfWord, LaurentSeries, LaurentSeries)> {
    let w = CfWord::zero_then(tail.clone());
    let theta = cf_eval(&w, prec)?.series;
    let inv = theta.inv()?;
    Ok((w, theta, inv))
}

fn check_prefix(letters: &Word, parts: &[&Word]) -> Result<()> {
    let mut offset = 0;
    for part in parts {
        for (i, l) in part.iter().enumerate() {
            match letters.letters().get(offset + i) {
                Some(x) if x == l => {}
                _ => return Err(Error::PrefixMismatch { index: offset + i }),
            }
        }
        offset += part.len();
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct Checkpoint {
    /// a_1 … a_n is a palindrome; the report is taken at q = q_{n−1}.
    pub n: usize,
    pub deg_q_n: i64,
    pub report: LittlewoodReport,
    /// log2 ‖q_{n−1}Θ‖ = −deg q_n.
    pub theta_line: bool,
    /// log2 ‖q_{n−1}Θ^{-1}‖ ≤ −deg q_{n−1}.
    pub inverse_line: bool,
    /// product2 ≤ deg q_{n−1} − deg q_n < 0.
    pub product_line: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckpointSet {
    /// a_0 was nonzero and Θ was replaced by Θ − a_0.
    pub shifted_to_fraction: bool,
    pub precision: i64,
    pub checkpoints: Vec<Checkpoint>,
}

impl CheckpointSet {
    pub fn all_lines_hold(&self) -> bool {
        self.checkpoints.iter().all(|c| c.theta_line && c.inverse_line && c.product_line)
    }
}

/// Reports for the pair (Θ, Θ^{-1}) at q_{n−1} for every palindromic prefix a_1 … a_n, n ≥ 2.
pub fn palindrome_checkpoints(word: &CfWord, prec: i64) -> Result<CheckpointSet> {
    let (w, theta, inv) = normalized_pair(&word.tail, prec)?;
    let qs = denominators(&w);
    let (theta, inv) = (Target::Series(theta), Target::Series(inv));
    let mut checkpoints = Vec::new();
    for n in 2..=w.tail.len() {
        if !w.tail.prefix(n).is_palindrome() {
            continue;
        }
        let q = &qs[n - 1];
        let deg_q_n = qs[n].deg();
        let report = product_at(q, &theta, &inv)?;
        let theta_line = report.log_theta.exact() == Some(NormLog2::Pow(-deg_q_n));
        let inverse_line = report.log_phi.upper() <= NormLog2::Pow(-q.deg());
        let product_line = q.deg() < deg_q_n && report.product2.upper() <= NormLog2::Pow(q.deg() - deg_q_n);
        checkpoints.push(Checkpoint { n, deg_q_n, report, theta_line, inverse_line, product_line });
    }
    Ok(CheckpointSet { shifted_to_fraction: !word.a0.is_zero(), precision: prec, checkpoints })
}

#[derive(Clone, Debug, Serialize)]
pub struct MechanismRow {
    pub r: usize,
    pub s: usize,
    pub deg_q_r: i64,
    pub deg_q_rs: i64,
    pub deg_big_q: i64,
    pub big_q: Poly,
    pub report: LittlewoodReport,
    /// The exponent the proof compares against, before its implied constant.
    pub main_term: i64,
    /// Exponent minus main term; `None` when the exponent is −∞.
    pub excess: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Mechanism {
    pub precision: i64,
    pub rows: Vec<MechanismRow>,
    /// The largest excess over the rows: the measured implied constant.
    pub constant: Option<i64>,
    /// deg Q_k = deg q_{r_k} + deg q_{r_k+s_k} on every row (palindrome mechanism only).
    pub degree_identity: bool,
}

fn measured(rows: &[MechanismRow]) -> Option<i64> {
    rows.iter().filter_map(|r| r.excess).max()
}

/// Q_k = denominator of [0, U_k, V_k, Ū_k]; checks deg Q_k = deg q_{r_k} + deg q_{r_k+s_k} and
/// measures log2(|Q_k|·‖Q_kΘ‖·‖Q_kΘ^{-1}‖) − (3 deg q_{r_k} − deg q_{r_k+s_k}), where Θ = [0; letters].
pub fn palindrome_mechanism(letters: &Word, pairs: &[(Word, Word)], prec: i64) -> Result<Mechanism> {
    let (w, theta, inv) = normalized_pair(letters, prec)?;
    let qs = denominators(&w);
    let (theta, inv) = (Target::Series(theta), Target::Series(inv));
    let mut rows = Vec::new();
    let mut identity = true;
    for (u, v) in pairs {
        check_prefix(letters, &[u, v])?;
        let (r, s) = (u.len(), v.len());
        let inner = Word::concat_all(letters.field(), [u, v, &u.mirror()]);
        let big_q = CfWord::zero_then(inner).to_rational().1;
        let (deg_q_r, deg_q_rs) = (qs[r].deg(), qs[r + s].deg());
        identity &= big_q.deg() == deg_q_r + deg_q_rs;
        let report = product_at(&big_q, &theta, &inv)?;
        let main_term = 3 * deg_q_r - deg_q_rs;
        let excess = report.product1.upper().exponent().map(|e| e - main_term);
        rows.push(MechanismRow { r, s, deg_q_r, deg_q_rs, deg_big_q: big_q.deg(), big_q, report, main_term, excess });
    }
    Ok(Mechanism { precision: prec, constant: measured(&rows), rows, degree_identity: identity })
}

/// Φ = [V̄, V̄, V̄, …] to precision `prec`.
pub fn periodic_phi(v: &Word, prec: i64) -> Result<LaurentSeries> {
    let vbar = v.mirror();
    let first = vbar.letters().first().ok_or(Error::EmptyPeriod)?.clone();
    let pre = CfWord::new(first, Word::new(v.field(), vbar.letters()[1..].to_vec())?);
    Ok(eval_eventually_periodic(&pre, vbar.letters(), prec)?.series)
}

/// Q_k = denominator of [0, U_k, V^{[n_k]}]; measures log2 ‖Q_kΦ‖ − (M r_k − m s_k) for
/// Φ = [V̄, V̄, …] and Θ = [0; letters], with M, m the extreme letter degrees given.
pub fn periodic_mechanism(
    letters: &Word,
    us: &[Word],
    v: &Word,
    ns: &[usize],
    degree_bounds: (&BigRational, &BigRational),
    prec: i64,
) -> Result<Mechanism> {
    if us.len() != ns.len() {
        return Err(Error::Invalid("one repetition count per U_k is required".into()));
    }
    let (_, theta, _) = normalized_pair(letters, prec)?;
    let theta = Target::Series(theta);
    let phi = Target::Series(periodic_phi(v, prec)?);
    let qs = denominators(&CfWord::zero_then(letters.clone()));
    let (big_m, small_m) = degree_bounds;
    let mut rows = Vec::new();
    for (u, &n) in us.iter().zip(ns) {
        let vn = v.power(n);
        check_prefix(letters, &[u, &vn])?;
        let (r, s) = (u.len(), vn.len());
        let big_q = CfWord::zero_then(u.concat(&vn)).to_rational().1;
        let report = product_at(&big_q, &theta, &phi)?;
        let bound = big_m * BigRational::from_integer(r.into()) - small_m * BigRational::from_integer(s.into());
        let main_term = bound.ceil().to_integer().try_into().expect("small exponent");
        let excess = report.log_phi.upper().exponent().map(|e| e - main_term);
        rows.push(MechanismRow {
            r,
            s,
            deg_q_r: qs[r].deg(),
            deg_q_rs: qs[r + s].deg(),
            deg_big_q: big_q.deg(),
            big_q,
            report,
            main_term,
            excess,
        });
    }
    Ok(Mechanism { precision: prec, constant: measured(&rows), rows, degree_identity: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;

    #[test]
    fn two_equal_letters_give_a_checkpoint() {
        let f = PrimeField::new(2).unwrap();
        let x = Poly::x(f);
        let x1 = Poly::parse(f, "X+1").unwrap();
        let tail = Word::new(f, vec![x.clone(), x.clone(), Poly::parse(f, "X^2+1").unwrap(), x, x1]).unwrap();
        let set = palindrome_checkpoints(&CfWord::zero_then(tail), 8).unwrap();
        assert_eq!(set.checkpoints.len(), 1);
        assert_eq!(set.checkpoints[0].n, 2);
    }

    #[test]
    fn non_palindromic_tail_has_none() {
        let f = PrimeField::new(3).unwrap();
        let l: Vec<Poly> = ["X", "X+1", "X+2", "2*X", "X^2"].iter().map(|s| Poly::parse(f, s).unwrap()).collect();
        let set = palindrome_checkpoints(&CfWord::zero_then(Word::new(f, l).unwrap()), 6).unwrap();
        assert!(set.checkpoints.is_empty());
    }

    #[test]
    fn prefix_mismatch_names_index() {
        let f = PrimeField::new(3).unwrap();
        let x = Poly::x(f);
        let letters = Word::new(f, vec![x.clone(); 12]).unwrap();
        let u = Word::new(f, vec![x.clone(), x.clone()]).unwrap();
        let v = Word::new(f, vec![x.clone(), Poly::parse(f, "X+1").unwrap(), x]).unwrap();
        let err = palindrome_mechanism(&letters, &[(u, v)], 20).unwrap_err();
        assert_eq!(err, Error::PrefixMismatch { index: 3 });
    }
}

//! Building Φ from a badly approximable Θ and a gauge φ, checking the strengthened
//! product inequality at the designed denominators, and searching for linear relations.

mod gauge;
mod relation;

use serde::Serialize;

use crate::algebra::{LaurentSeries, NormLog2, Poly};
use crate::cfengine::{cf_eval, denominators, CfWord};
use crate::error::{Error, Result};
use crate::littlewood::{product_at, LittlewoodReport, Target};
use crate::words::Word;

pub use gauge::GaugeFunction;
pub use relation::{linear_relation_search, Relation};

/// n_1 = 1 and, for j ≥ 2, the least n_j ≥ 1 with φ(2^{m_j}) ≤ 2^{−2(M+2)(m_{j−1}+1)},
/// where m_j = n_1 + … + n_j + (j − 1).
pub fn choose_n_sequence(gauge: &GaugeFunction, max_degree: u32, stages: usize) -> Result<Vec<usize>> {
    if stages < 1 {
        return Err(Error::Invalid("at least one stage is required".into()));
    }
    let mut ns = vec![1usize];
    let mut m_prev = 1usize;
    for _ in 2..=stages {
        let bound = 2 * (max_degree as i64 + 2) * (m_prev as i64 + 1);
        let k = gauge.least_log2_argument(bound)? as usize;
        let n = k.saturating_sub(m_prev + 1).max(1);
        ns.push(n);
        m_prev += n + 1;
    }
    Ok(ns)
}

/// m_j = n_1 + … + n_j + (j − 1).
pub fn m_sequence(ns: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(ns.len());
    let mut acc = 0;
    for (j, &n) in ns.iter().enumerate() {
        acc += n + usize::from(j > 0);
        out.push(acc);
    }
    out
}

/// How the separators t_j are chosen.
#[derive(Clone, Debug)]
pub enum TChoice {
    /// X^{M+1} at every stage.
    Default,
    /// Bit j selects X^{M+1} (false) or X^{M+2} (true).
    Bits(Vec<bool>),
    /// Explicit separators, each of degree M+1 or M+2.
    Explicit(Vec<Poly>),
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiBuilder {
    /// a_1, a_2, … of Θ = [0; a_1, a_2, …].
    pub theta_tail: Word,
    pub max_degree: u32,
    pub n_seq: Vec<usize>,
    pub m_seq: Vec<usize>,
    pub t_seq: Vec<Poly>,
}

impl PhiBuilder {
    pub fn new(theta_tail: Word, max_degree: u32, n_seq: Vec<usize>, t: TChoice) -> Result<Self> {
        if n_seq.first() != Some(&1) {
            return Err(Error::Invalid("n_1 must be 1".into()));
        }
        let f = theta_tail.field();
        let stages = n_seq.len();
        let lo = max_degree as usize + 1;
        let t_seq = match t {
            TChoice::Default => vec![Poly::monomial(f, 1, lo); stages],
            TChoice::Bits(bits) => (0..stages)
                .map(|j| Poly::monomial(f, 1, lo + usize::from(bits.get(j).copied().unwrap_or(false))))
                .collect(),
            TChoice::Explicit(ts) => {
                if ts.len() < stages {
                    return Err(Error::Invalid(format!("need {stages} separators, got {}", ts.len())));
                }
                if let Some(bad) = ts.iter().find(|t| t.deg() != lo as i64 && t.deg() != lo as i64 + 1) {
                    return Err(Error::Invalid(format!("separator {bad} must have degree {lo} or {}", lo + 1)));
                }
                ts[..stages].to_vec()
            }
        };
        let need = *n_seq.iter().max().expect("nonempty");
        if theta_tail.len() < need {
            return Err(Error::InsufficientTheta { have: theta_tail.len(), need });
        }
        let m_seq = m_sequence(&n_seq);
        Ok(PhiBuilder { theta_tail, max_degree, n_seq, m_seq, t_seq })
    }

    pub fn stages(&self) -> usize {
        self.n_seq.len()
    }
}

/// Φ = [0; a_{n_1}, …, a_1, t_1, a_{n_2}, …, a_1, t_2, …] through stage J (m_J letters),
/// optionally followed by t_J.
pub fn build_phi(b: &PhiBuilder, with_last_separator: bool) -> CfWord {
    let f = b.theta_tail.field();
    let mut tail = Word::empty(f);
    for (j, &n) in b.n_seq.iter().enumerate() {
        if j > 0 {
            tail.push(b.t_seq[j - 1].clone()).expect("separators have positive degree");
        }
        tail.extend_from(&b.theta_tail.prefix(n).mirror());
    }
    if with_last_separator {
        tail.push(b.t_seq[b.stages() - 1].clone()).expect("positive degree");
    }
    CfWord::zero_then(tail)
}

#[derive(Clone, Debug, Serialize)]
pub struct Eq21Row {
    pub j: usize,
    pub n_j: usize,
    pub m_j: usize,
    pub deg_s: i64,
    pub report: LittlewoodReport,
    /// product2 ≤ −log2 φ(2^{deg s}).
    pub holds: bool,
    /// log2 ‖sΦ‖ ≤ −deg s.
    pub phi_line: bool,
    /// log2 ‖sΘ‖ ≤ −deg s + 2(M+2)(m_j − n_j).
    pub theta_line: bool,
    /// deg s = deg q_{n_j} + Σ_{k ≤ m_j − n_j} deg b_k.
    pub degree_line: bool,
    /// deg s + log2 ‖sΘ‖, when exact.
    pub growth: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Eq21Report {
    pub theta_precision: i64,
    pub phi_precision: i64,
    pub rows: Vec<Eq21Row>,
    /// The growth column increases strictly along j.
    pub growth_strict: bool,
}

impl Eq21Report {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds && r.phi_line && r.theta_line && r.degree_line) && self.growth_strict
    }
}

/// Θ precision that resolves ‖s_{m_J}Θ‖ for the builder.
pub fn required_theta_precision(b: &PhiBuilder) -> i64 {
    let qs = denominators(&CfWord::zero_then(b.theta_tail.prefix(*b.n_seq.iter().max().unwrap())));
    let top = b.n_seq.iter().map(|&n| qs[n].deg()).max().unwrap_or(0);
    2 * top + 2 * (b.max_degree as i64 + 2) + 2
}

/// The strengthened inequality |s|²‖sΘ‖‖sΦ‖ ≤ 1/φ(|s|) at s = s_{m_j}, j = 2..J,
/// with Θ = [0; theta_tail] given as a series.
pub fn verify_eq21(theta: &LaurentSeries, b: &PhiBuilder, gauge: &GaugeFunction) -> Result<Eq21Report> {
    let phi_word = build_phi(b, true);
    let ss = denominators(&phi_word);
    let phi_prec = 2 * ss.last().expect("nonempty").deg();
    let phi = Target::Series(cf_eval(&phi_word, phi_prec)?.series);
    let th = Target::Series(theta.clone());
    let qs = denominators(&CfWord::zero_then(b.theta_tail.clone()));
    let mut rows = Vec::new();
    for j in 2..=b.stages() {
        let (n, m) = (b.n_seq[j - 1], b.m_seq[j - 1]);
        let s = &ss[m];
        let deg_s = s.deg();
        let report = product_at(s, &th, &phi)?;
        let holds = match report.product2.upper().exponent() {
            None => true,
            Some(v) => gauge.at_most_pow2(deg_s as u64, v)?,
        };
        let phi_line = report.log_phi.upper() <= NormLog2::Pow(-deg_s);
        let slack = 2 * (b.max_degree as i64 + 2) * (m - n) as i64;
        let theta_line = report.log_theta.upper() <= NormLog2::Pow(-deg_s + slack);
        let b_sum: i64 = phi_word.tail.iter().take(m - n).map(|l| l.deg()).sum();
        let degree_line = deg_s == qs[n].deg() + b_sum;
        let growth = report.log_theta.exact().and_then(|e| e.exponent()).map(|e| deg_s + e);
        rows.push(Eq21Row { j, n_j: n, m_j: m, deg_s, report, holds, phi_line, theta_line, degree_line, growth });
    }
    let growth_strict = rows.windows(2).all(|w| match (w[0].growth, w[1].growth) {
        (Some(a), Some(b)) => b > a,
        _ => false,
    });
    Ok(Eq21Report { theta_precision: theta.precision(), phi_precision: phi_prec, rows, growth_strict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;
    use num_rational::BigRational;

    #[test]
    fn reciprocal_m1_sequence() {
        let ns = choose_n_sequence(&GaugeFunction::Reciprocal, 1, 3).unwrap();
        assert_eq!(ns[..2], [1, 10]);
        assert_eq!(m_sequence(&ns)[..2], [1, 12]);
        assert_eq!(m_sequence(&ns)[2], 6 * 13);
    }

    #[test]
    fn geometric_closed_form_matches_search() {
        let g = GaugeFunction::Geometric;
        let table = GaugeFunction::table(
            (1..=1 << 12).map(|d| BigRational::new(1.into(), num_bigint::BigInt::from(2).pow(d - 1))).collect(),
        )
        .unwrap();
        for m in 1..4 {
            assert_eq!(choose_n_sequence(&g, m, 3).unwrap(), choose_n_sequence(&table, m, 3).unwrap());
        }
        for (j, m) in m_sequence(&choose_n_sequence(&g, 2, 4).unwrap()).windows(2).enumerate() {
            let bound = 2 * 4 * (m[0] as i64 + 1);
            assert!(g.at_most_pow2(m[1] as u64, bound).unwrap(), "stage {}", j + 2);
        }
    }

    #[test]
    fn short_table_is_reported() {
        let t = GaugeFunction::parse("table:1,1/2,1/3,1/4").unwrap();
        assert!(matches!(choose_n_sequence(&t, 1, 2), Err(Error::GaugeTableExhausted { .. })));
    }

    #[test]
    fn mirrored_blocks() {
        let f = PrimeField::new(3).unwrap();
        let tail: Vec<Poly> = ["X", "X+1", "X+2", "2*X"].iter().map(|s| Poly::parse(f, s).unwrap()).collect();
        let b = PhiBuilder::new(Word::new(f, tail).unwrap(), 1, vec![1, 2, 3], TChoice::Default).unwrap();
        let w = build_phi(&b, false);
        let shown: Vec<String> = w.tail.iter().map(|l| l.to_string()).collect();
        assert_eq!(shown, ["X", "X^2", "X+1", "X", "X^2", "X+2", "X+1", "X"]);
        assert_eq!(w.tail.len(), b.m_seq[2]);
        let other = PhiBuilder::new(b.theta_tail.clone(), 1, vec![1, 2, 3], TChoice::Bits(vec![true])).unwrap();
        let w2 = build_phi(&other, false);
        let diff: Vec<usize> = (0..w.tail.len()).filter(|&i| w.tail[i] != w2.tail[i]).collect();
        assert_eq!(diff, [1]);
        assert!(PhiBuilder::new(b.theta_tail.clone(), 1, vec![1, 5], TChoice::Default).is_err());
    }
}

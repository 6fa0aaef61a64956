//! Continued fractions in F_p((X⁻¹)): expansion of a series into partial
//! quotients, and evaluation of a word back into convergents and series.

mod expand;
pub mod identities;

pub use expand::{cf_expand, cf_expand_rational, Expansion, Halt};

use std::fmt;

use crate::algebra::{LaurentSeries, Poly, PrimeField};
use crate::error::{Error, Result};
use crate::words::Word;

/// [a_0; a_1, a_2, …]: an unrestricted a_0 followed by letters of degree ≥ 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CfWord {
    pub a0: Poly,
    pub tail: Word,
}

impl CfWord {
    pub fn new(a0: Poly, tail: Word) -> Self {
        assert_eq!(a0.field(), tail.field(), "mixed moduli");
        CfWord { a0, tail }
    }

    /// [0; tail].
    pub fn zero_then(tail: Word) -> Self {
        CfWord { a0: Poly::zero(tail.field()), tail }
    }

    /// Read a letter sequence as [a_0; a_1, …] with a_0 the first letter.
    pub fn from_letters(field: PrimeField, letters: &[Poly]) -> Result<Self> {
        match letters.split_first() {
            None => Ok(CfWord::new(Poly::zero(field), Word::empty(field))),
            Some((a0, rest)) => Ok(CfWord::new(a0.clone(), Word::new(field, rest.to_vec())?)),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.a0.field()
    }

    /// Number of partial quotients including a_0.
    pub fn len(&self) -> usize {
        self.tail.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// a_i, with a_0 at index 0.
    pub fn letter(&self, i: usize) -> &Poly {
        if i == 0 {
            &self.a0
        } else {
            &self.tail[i - 1]
        }
    }

    /// a_0, a_1, … as a flat list.
    pub fn all_letters(&self) -> Vec<Poly> {
        std::iter::once(self.a0.clone()).chain(self.tail.iter().cloned()).collect()
    }

    /// Keep a_0 and the first `n` tail letters.
    pub fn prefix(&self, n: usize) -> CfWord {
        CfWord::new(self.a0.clone(), self.tail.prefix(n))
    }

    /// Convergents p_0/q_0, …, p_n/q_n.
    pub fn convergents(&self) -> Vec<Convergent> {
        Convergents::new(self).collect()
    }

    /// The last convergent, i.e. the exact value of the finite word.
    pub fn to_rational(&self) -> (Poly, Poly) {
        let c = Convergents::new(self).last().expect("at least one convergent");
        (c.p, c.q)
    }
}

impl fmt::Display for CfWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.a0)?;
        for (i, l) in self.tail.iter().enumerate() {
            write!(f, "{}{l}", if i == 0 { "; " } else { ", " })?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for CfWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {}", self.field())
    }
}

/// p_n/q_n with its index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub n: usize,
    pub p: Poly,
    pub q: Poly,
}

/// Streaming convergents from (p_{-1}, q_{-1}) = (1, 0), (p_0, q_0) = (a_0, 1)
/// via q_{n+1} = a_{n+1} q_n + q_{n-1}.
pub struct Convergents<'a> {
    word: &'a CfWord,
    next: usize,
    prev: (Poly, Poly),
    cur: (Poly, Poly),
}

impl<'a> Convergents<'a> {
    pub fn new(word: &'a CfWord) -> Self {
        let f = word.field();
        Convergents {
            word,
            next: 0,
            prev: (Poly::zero(f), Poly::zero(f)),
            cur: (Poly::one(f), Poly::zero(f)),
        }
    }
}

impl Iterator for Convergents<'_> {
    type Item = Convergent;

    fn next(&mut self) -> Option<Convergent> {
        if self.next >= self.word.len() {
            return None;
        }
        let a = self.word.letter(self.next);
        let p = &(a * &self.cur.0) + &self.prev.0;
        let q = if self.next == 0 {
            Poly::one(a.field())
        } else {
            &(a * &self.cur.1) + &self.prev.1
        };
        self.prev = std::mem::replace(&mut self.cur, (p.clone(), q.clone()));
        let n = self.next;
        self.next += 1;
        Some(Convergent { n, p, q })
    }
}

/// Convergent denominators q_0, …, q_n only.
pub fn denominators(word: &CfWord) -> Vec<Poly> {
    let f = word.field();
    let mut out = Vec::with_capacity(word.len());
    let mut prev = Poly::zero(f);
    let mut cur = Poly::one(f);
    out.push(cur.clone());
    for a in word.tail.iter() {
        let next = &(a * &cur) + &prev;
        prev = std::mem::replace(&mut cur, next);
        out.push(cur.clone());
    }
    out
}

/// A series evaluated from a word, with the convergent index that fixed it.
#[derive(Clone, Debug)]
pub struct Evaluated {
    pub series: LaurentSeries,
    pub index_used: usize,
}

/// Value of the infinite continued fraction beginning with `word`, to precision `prec`.
///
/// Any continuation of the word differs from p_n/q_n by at most
/// |q_n|^{-2}·2^{-1}, so the first n with 2·deg q_n ≥ prec settles every
/// coefficient through X^{-prec}. An empty tail is read as the exact value a_0.
pub fn cf_eval(word: &CfWord, prec: i64) -> Result<Evaluated> {
    if word.tail.is_empty() {
        return Ok(Evaluated {
            series: LaurentSeries::from_poly(&word.a0, prec),
            index_used: 0,
        });
    }
    let mut last_deg = 0;
    for c in Convergents::new(word) {
        last_deg = c.q.deg();
        if 2 * last_deg >= prec {
            return Ok(Evaluated {
                series: LaurentSeries::from_rational(&c.p, &c.q, prec)?,
                index_used: c.n,
            });
        }
    }
    Err(Error::Shortfall { achievable: 2 * last_deg, requested: prec })
}

/// Letters needed for `cf_eval` to reach precision `prec`, if the word has enough.
pub fn letters_for_precision(word: &CfWord, prec: i64) -> Option<usize> {
    let mut d = 0i64;
    if 2 * d >= prec {
        return Some(0);
    }
    for (i, a) in word.tail.iter().enumerate() {
        d += a.deg();
        if 2 * d >= prec {
            return Some(i + 1);
        }
    }
    None
}

/// (q_{n-1}, q_n) for the word's tail a_1 … a_n; q_{n-1}/q_n = [0; a_n, …, a_1].
pub fn reversal_quotient(word: &CfWord) -> Result<(Poly, Poly)> {
    let n = word.tail.len();
    if n == 0 {
        return Err(Error::Invalid("reversal needs at least one tail letter".into()));
    }
    let qs = denominators(word);
    Ok((qs[n - 1].clone(), qs[n].clone()))
}

/// [pre…, period, period, …] evaluated to precision `prec` by unrolling.
pub fn eval_eventually_periodic(pre: &CfWord, period: &[Poly], prec: i64) -> Result<Evaluated> {
    if period.is_empty() {
        return Err(Error::EmptyPeriod);
    }
    let f = pre.field();
    let period = Word::new(f, period.to_vec())?;
    let mut word = pre.clone();
    let mut deg: i64 = word.tail.iter().map(|l| l.deg()).sum();
    while 2 * deg < prec {
        word.tail.extend_from(&period);
        deg += period.iter().map(|l| l.deg()).sum::<i64>();
    }
    cf_eval(&word, prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn word(p: u64, a0: &str, tail: &[&str]) -> CfWord {
        let f = k(p);
        let t = tail.iter().map(|s| Poly::parse(f, s).unwrap()).collect();
        CfWord::new(Poly::parse(f, a0).unwrap(), Word::new(f, t).unwrap())
    }

    #[test]
    fn convergent_recursion() {
        let w = word(3, "0", &["X", "X^2"]);
        let qs = denominators(&w);
        assert_eq!(qs[1].to_string(), "X");
        assert_eq!(qs[2].to_string(), "X^3+1");
        let cs = w.convergents();
        assert_eq!(cs[2].q, qs[2]);
        assert_eq!(cs[2].p.to_string(), "X^2");
    }

    #[test]
    fn single_letter_word() {
        let w = word(5, "X^2+3", &[]);
        assert_eq!(w.to_rational(), (Poly::parse(k(5), "X^2+3").unwrap(), Poly::one(k(5))));
        let e = cf_eval(&w, 6).unwrap();
        assert_eq!(e.series, LaurentSeries::from_poly(&w.a0, 6));
    }

    #[test]
    fn reversal_small_cases() {
        let f = k(3);
        let w = word(3, "0", &["X", "X^2"]);
        let (a, b) = reversal_quotient(&w).unwrap();
        let rev = CfWord::zero_then(w.tail.mirror());
        let (rp, rq) = rev.to_rational();
        assert_eq!(&a * &rq, &b * &rp);
        assert_eq!((a.to_string(), b.to_string()), ("X".into(), "X^3+1".into()));

        let w1 = word(3, "0", &["2*X+1"]);
        let (q0, q1) = reversal_quotient(&w1).unwrap();
        assert_eq!(q0, Poly::one(f));
        assert_eq!(q1.to_string(), "2*X+1");
    }

    #[test]
    fn shortfall_reports_achievable() {
        let w = word(2, "0", &["X", "X"]);
        assert_eq!(cf_eval(&w, 9).unwrap_err(), Error::Shortfall { achievable: 4, requested: 9 });
    }

    #[test]
    fn periodic_root_of_quadratic() {
        // [0; X, X, …] = t with t = 1/(X + t), so t² + Xt − 1 = 0; over F_2 that is t² + Xt + 1.
        let f = k(2);
        let t = eval_eventually_periodic(&word(2, "0", &[]), &[Poly::x(f)], 12).unwrap().series;
        let lhs = t.mul(&t).add(&t.mul_poly(&Poly::x(f))).add(&LaurentSeries::one(f, 100));
        assert!(lhs.is_zero());
        assert!(lhs.precision() >= 10);
        assert_eq!(eval_eventually_periodic(&word(2, "0", &[]), &[], 5).unwrap_err(), Error::EmptyPeriod);
    }

    #[test]
    fn periodic_with_zero_preperiod_is_reciprocal() {
        let f = k(2);
        let inner = eval_eventually_periodic(&word(2, "X", &[]), &[Poly::x(f)], 30).unwrap().series;
        let outer = eval_eventually_periodic(&word(2, "0", &[]), &[Poly::x(f)], 30).unwrap().series;
        let prod = inner.mul(&outer);
        assert!(prod.sub(&LaurentSeries::one(f, 200)).is_zero());
        assert!(prod.precision() >= 28);
    }
}

use serde::Serialize;

use crate::algebra::{LaurentSeries, Poly};
use crate::cfengine::CfWord;
use crate::error::{Error, Result};
use crate::words::Word;

/// Why an expansion stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Halt {
    RequestedCountReached,
    PrecisionExhausted,
    InputWasRational,
}

#[derive(Clone, Debug)]
pub struct Expansion {
    pub word: CfWord,
    pub halt: Halt,
    /// Precision of the input series (`None` for exact rational input).
    pub precision: Option<i64>,
}

/// Partial quotients of a series known to precision N.
///
/// The known part of F is the rational R = G/X^N with |F − R| ≤ 2^{-N-1}.
/// Euclid runs on (G, X^N); a quotient a_{n+1} is emitted only while
/// 2·(deg q_n + deg a_{n+1}) + 2 ≤ N, which places p_{n+1}/q_{n+1} within
/// |q_{n+1}|^{-2} of F itself and so forces the same prefix on every series
/// agreeing with F to precision N. A zero remainder under the same margin
/// reports the input as rational. `max_terms` counts a_0.
pub fn cf_expand(f: &LaurentSeries, max_terms: usize) -> Result<Expansion> {
    let n = f.precision();
    if n < 2 {
        return Err(Error::InsufficientPrecision { have: n, need: 2 });
    }
    let (num, shift) = f.to_laurent_poly();
    let den = Poly::monomial(f.field(), 1, shift as usize);
    let budget = |deg_q: i64| 2 * deg_q + 2 <= n;
    let (word, halt) = euclid(num, den, max_terms, Some(&budget))?;
    Ok(Expansion { word, halt, precision: Some(n) })
}

/// Exact expansion of num/den by the extended Euclidean algorithm.
pub fn cf_expand_rational(num: &Poly, den: &Poly, max_terms: usize) -> Result<Expansion> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (word, halt) = euclid(num.clone(), den.clone(), max_terms, None)?;
    Ok(Expansion { word, halt, precision: None })
}

type Budget<'a> = Option<&'a dyn Fn(i64) -> bool>;

fn euclid(mut num: Poly, mut den: Poly, max_terms: usize, budget: Budget<'_>) -> Result<(CfWord, Halt)> {
    let field = num.field();
    let (a0, r) = num.divmod(&den)?;
    let allowed = |d: i64| budget.is_none_or(|b| b(d));
    let mut tail = Vec::new();
    let mut deg_q = 0i64;
    num = den;
    den = r;
    let halt = loop {
        if den.is_zero() {
            break if allowed(deg_q) { Halt::InputWasRational } else { Halt::PrecisionExhausted };
        }
        if tail.len() + 1 >= max_terms {
            break Halt::RequestedCountReached;
        }
        let (a, r) = num.divmod(&den)?;
        if !allowed(deg_q + a.deg()) {
            break Halt::PrecisionExhausted;
        }
        deg_q += a.deg();
        tail.push(a);
        num = den;
        den = r;
    };
    Ok((CfWord::new(a0, Word::from_trusted(field, tail)), halt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;
    use crate::cfengine::cf_eval;

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rational_series_terminates() {
        let f = k(3);
        let s = LaurentSeries::from_rational(&Poly::from_coeffs(f, &[1, 0, 1]), &Poly::x(f), 10).unwrap();
        let e = cf_expand(&s, 100).unwrap();
        assert_eq!(e.word.to_string(), "[X; X]");
        assert_eq!(e.halt, Halt::InputWasRational);
    }

    #[test]
    fn polynomial_input() {
        let f = k(5);
        let q = Poly::from_coeffs(f, &[1, 2, 3]);
        for n in [2, 5, 40] {
            let e = cf_expand(&LaurentSeries::from_poly(&q, n), 10).unwrap();
            assert_eq!(e.word.a0, q);
            assert!(e.word.tail.is_empty());
            assert_eq!(e.halt, Halt::InputWasRational);
        }
        let e = cf_expand_rational(&q, &Poly::one(f), 10).unwrap();
        assert_eq!(e.halt, Halt::InputWasRational);
    }

    #[test]
    fn low_precision_rejected() {
        let s = LaurentSeries::one(k(2), 1);
        assert!(cf_expand(&s, 3).is_err());
    }

    #[test]
    fn count_limit() {
        let f = k(2);
        let w = CfWord::zero_then(Word::new(f, vec![Poly::x(f); 30]).unwrap());
        let s = cf_eval(&w, 40).unwrap().series;
        let e = cf_expand(&s, 5).unwrap();
        assert_eq!(e.halt, Halt::RequestedCountReached);
        assert_eq!(e.word.len(), 5);
        let e = cf_expand(&s, 1000).unwrap();
        assert_eq!(e.halt, Halt::PrecisionExhausted);
        // 2(deg q_n + 1) + 2 <= 40 allows deg q_{n+1} <= 19
        assert_eq!(e.word.tail.len(), 19);
    }
}

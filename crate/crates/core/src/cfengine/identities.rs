//! Randomized checks of the basic continued-fraction identities: the degree
//! sum, the fractional norm at convergents, the reversal of a prefix, and the
//! upper and lower distance bounds for series sharing a prefix.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{cf_expand, denominators, CfWord};
use crate::algebra::{LaurentSeries, NormLog2, NormReading, Poly, PrimeField};
use crate::error::Result;
use crate::littlewood::Target;
use crate::words::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// deg q_n = Σ_{j ≤ n} deg a_j.
    DegreeSum,
    /// ‖q_n F‖ = |q_{n+1}|^{-1} < |q_n|^{-1}.
    ConvergentDistance,
    /// q_{n-1}/q_n = [0; a_n, …, a_1].
    Reversal,
    /// Shared first n letters give |Θ − Φ| ≤ |q_n|^{-2}.
    SharedPrefixUpper,
    /// Letters of degree ≤ M, shared first n, distinct (n+1)-th: |Θ − Φ| ≥ 2^{-2M}|q_n|^{-2}.
    SharedPrefixLower,
}

impl Identity {
    pub const ALL: [Identity; 5] = [
        Identity::DegreeSum,
        Identity::ConvergentDistance,
        Identity::Reversal,
        Identity::SharedPrefixUpper,
        Identity::SharedPrefixLower,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::DegreeSum => "degree-sum",
            Identity::ConvergentDistance => "convergent-distance",
            Identity::Reversal => "reversal",
            Identity::SharedPrefixUpper => "shared-prefix-upper",
            Identity::SharedPrefixLower => "shared-prefix-lower",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub identity: Identity,
    pub p: u64,
    pub seed: u64,
    pub instances: usize,
    pub failures: usize,
    /// The first failing word, when there is one.
    pub first_failure: Option<Word>,
}

/// A letter of degree in 1..=max_degree with uniform coefficients and nonzero leading term.
pub fn random_letter(rng: &mut impl Rng, field: PrimeField, max_degree: usize) -> Poly {
    let p = field.modulus();
    let d = rng.gen_range(1..=max_degree);
    let mut c: Vec<u64> = (0..d).map(|_| rng.gen_range(0..p)).collect();
    c.push(rng.gen_range(1..p));
    Poly::from_residues(field, c)
}

pub fn random_word(rng: &mut impl Rng, field: PrimeField, len: usize, max_degree: usize) -> Word {
    let letters = (0..len).map(|_| random_letter(rng, field, max_degree)).collect();
    Word::new(field, letters).expect("letters of positive degree")
}

fn exact_value(w: &Word, prec: i64) -> Result<LaurentSeries> {
    let (num, den) = CfWord::zero_then(w.clone()).to_rational();
    LaurentSeries::from_rational(&num, &den, prec)
}

fn log_at_most(r: NormReading, v: i64) -> bool {
    r.upper() <= NormLog2::Pow(v)
}

/// Checks one identity on a word; for the two distance bounds the word is the
/// shared prefix and the tails are drawn from `rng`.
pub fn check(identity: Identity, w: &Word, rng: &mut impl Rng, max_degree: usize) -> Result<bool> {
    let f = w.field();
    let cf = CfWord::zero_then(w.clone());
    let qs = denominators(&cf);
    Ok(match identity {
        Identity::DegreeSum => {
            let mut acc = 0;
            qs.iter().enumerate().all(|(n, q)| {
                acc += if n == 0 { 0 } else { w[n - 1].deg() };
                q.deg() == acc
            })
        }
        Identity::ConvergentDistance => {
            let top = qs.last().expect("nonempty").deg();
            let theta = exact_value(w, 2 * top + 2)?;
            let e = cf_expand(&theta, w.len() + 1)?;
            let certified = e.word.tail.len();
            let target = Target::Series(theta);
            certified >= 1
                && e.word.tail == w.prefix(certified)
                && (0..certified).all(|n| {
                let r = target.frac_log(&qs[n]);
                r == NormReading::Exact(NormLog2::Pow(-qs[n + 1].deg())) && -qs[n + 1].deg() < -qs[n].deg()
            })
        }
        Identity::Reversal => (2..=w.len()).all(|n| {
            let rev = w.prefix(n).mirror();
            let (num, den) = CfWord::zero_then(rev).to_rational();
            &num * &qs[n] == &den * &qs[n - 1]
        }),
        Identity::SharedPrefixUpper | Identity::SharedPrefixLower => {
            let n = w.len();
            let dq = qs[n].deg();
            let (la, lb) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
            let mut a = w.concat(&random_word(rng, f, la, max_degree));
            let mut b = w.concat(&random_word(rng, f, lb, max_degree));
            if identity == Identity::SharedPrefixLower {
                while a[n] == b[n] {
                    let fresh = random_letter(rng, f, max_degree);
                    let mut letters = b.into_letters();
                    letters[n] = fresh;
                    b = Word::new(f, letters)?;
                }
            } else if rng.gen_bool(0.25) {
                a.truncate(n);
            }
            let m = max_degree as i64;
            let prec = 2 * dq + 2 * m + 2;
            let diff = exact_value(&a, prec)?.sub(&exact_value(&b, prec)?).norm();
            if identity == Identity::SharedPrefixUpper {
                log_at_most(diff, -2 * dq)
            } else {
                matches!(diff, NormReading::Exact(NormLog2::Pow(v)) if v >= -2 * m - 2 * dq)
            }
        }
    })
}

/// `count` random instances over F_p, words of length 1..=50 and letter degree ≤ 3.
pub fn run_suite(identity: Identity, p: u64, count: usize, seed: u64) -> Result<SuiteReport> {
    let field = PrimeField::new(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (p << 32) ^ identity as u64);
    let mut failures = 0;
    let mut first_failure = None;
    for _ in 0..count {
        let max_degree = rng.gen_range(1..=3);
        let len = rng.gen_range(1..=50);
        let w = random_word(&mut rng, field, len, max_degree);
        if !check(identity, &w, &mut rng, max_degree)? {
            failures += 1;
            first_failure.get_or_insert(w);
        }
    }
    Ok(SuiteReport { identity, p, seed, instances: count, failures, first_failure })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_for_small_primes() {
        for id in Identity::ALL {
            for p in [2, 3, 5] {
                let r = run_suite(id, p, 30, 1).unwrap();
                assert_eq!(r.failures, 0, "{r:?}");
            }
        }
    }

    #[test]
    fn lower_bound_is_attained() {
        // [0; X] and [0; X+1] differ by 1/(X(X+1)) = 2^{-2}: equality with M = 1, q_0 = 1.
        let f = PrimeField::new(2).unwrap();
        let a = exact_value(&Word::single(Poly::x(f)).unwrap(), 8).unwrap();
        let b = exact_value(&Word::single(Poly::linear(f, 1, 1)).unwrap(), 8).unwrap();
        assert_eq!(a.sub(&b).norm(), NormReading::Exact(NormLog2::Pow(-2)));
    }
}

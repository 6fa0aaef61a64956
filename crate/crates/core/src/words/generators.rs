//! Exact prefixes of the infinite words attached to several algebraic series.
//!
//! Infinite words are exposed as prefix generators taking a letter count.
//! Letters such as −X, X/3 and 3X are concretized into canonical residues.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::algebra::{Poly, PrimeField};
use crate::cfengine::CfWord;
use crate::error::{Error, Result};
use crate::words::Word;

pub fn f3() -> PrimeField {
    PrimeField::new(3).expect("3 is prime")
}

fn lin(f: PrimeField, a: i64, b: i64) -> Poly {
    Poly::linear(f, a, b)
}

fn repeat(letter: &Poly, n: usize) -> Word {
    Word::from_trusted(letter.field(), vec![letter.clone(); n])
}

fn pow_usize(base: usize, e: u32) -> usize {
    base.checked_pow(e).expect("block length overflows usize")
}

/// H_n = X^{[3^n−2]}, X+ε, 2X+ε, (2X)^{[3^n−2]}, 2X+ε, X+ε with ε = 2 for odd n, 1 otherwise.
pub fn mills_robbins_block(n: u32) -> Word {
    assert!(n >= 1, "H_n is defined for n >= 1");
    let f = f3();
    let eps = if n % 2 == 1 { 2 } else { 1 };
    let r = pow_usize(3, n) - 2;
    let mut w = repeat(&lin(f, 1, 0), r);
    w.extend_from(&Word::from_trusted(f, vec![lin(f, 1, eps), lin(f, 2, eps)]));
    w.extend_from(&repeat(&lin(f, 2, 0), r));
    w.extend_from(&Word::from_trusted(f, vec![lin(f, 2, eps), lin(f, 1, eps)]));
    w
}

/// First `count` letters of X, 2X+2, X+1, H_1, H_2, … (the first letter is a_0).
pub fn mills_robbins_prefix(count: usize) -> Word {
    let f = f3();
    let mut w = Word::from_trusted(f, vec![lin(f, 1, 0), lin(f, 2, 2), lin(f, 1, 1)]);
    let mut n = 1;
    while w.len() < count {
        w.extend_from(&mills_robbins_block(n));
        n += 1;
    }
    w.truncate(count);
    w
}

/// The quartic's expansion [X; 2X+2, X+1, H_1, …] with `count` letters in total.
pub fn mills_robbins_word(count: usize) -> CfWord {
    CfWord::from_letters(f3(), mills_robbins_prefix(count.max(1)).letters()).expect("linear letters")
}

/// Palindrome data for the Mills–Robbins word: U_n = X,2X+2,X+1,H_1,…,H_{n−1}
/// and the palindrome V_n = H_n, X^{[3^n−2]}, both assembled from blocks.
pub fn mills_robbins_uv(n: u32) -> (Word, Word) {
    let f = f3();
    let mut u = Word::from_trusted(f, vec![lin(f, 1, 0), lin(f, 2, 2), lin(f, 1, 1)]);
    for i in 1..n {
        u.extend_from(&mills_robbins_block(i));
    }
    let mut v = mills_robbins_block(n);
    v.extend_from(&repeat(&lin(f3(), 1, 0), pow_usize(3, n) - 2));
    (u, v)
}

/// u_n = (k+2)·3^n − 2.
pub fn lasjaunias_exponent(k: usize, n: u32) -> usize {
    (k + 2) * pow_usize(3, n) - 2
}

/// H_n((−1)^n X) with H_n(X) = (X+1) X^{[u_n]} (X+1).
pub fn lasjaunias_block(k: usize, n: u32) -> Word {
    let f = f3();
    let s = if n.is_multiple_of(2) { 1 } else { -1 };
    let mut w = Word::from_trusted(f, vec![lin(f, s, 1)]);
    w.extend_from(&repeat(&lin(f, s, 0), lasjaunias_exponent(k, n)));
    w.push(lin(f, s, 1)).expect("linear");
    w
}

/// Θ(k) = [0; H_0(X), H_1(−X), H_2(X), …] with `count` tail letters.
pub fn lasjaunias_word(k: usize, count: usize) -> CfWord {
    let f = f3();
    let mut tail = Word::empty(f);
    let mut n = 0;
    while tail.len() < count {
        tail.extend_from(&lasjaunias_block(k, n));
        n += 1;
    }
    tail.truncate(count);
    CfWord::zero_then(tail)
}

/// Palindrome data for Θ(k), even n ≥ 2: U_n = H_0(X)…H_{n−2}(X)(−X+1) and
/// V_n = (−X)^{[u_{n−1}]}(−X+1)(X+1)X^{[u_n]}(X+1)(−X+1)(−X)^{[u_{n−1}]}.
pub fn lasjaunias_uv(k: usize, n: u32) -> (Word, Word) {
    assert!(n >= 2 && n.is_multiple_of(2), "U_n, V_n are defined for even n >= 2");
    let f = f3();
    let mut u = Word::empty(f);
    for i in 0..=n - 2 {
        u.extend_from(&lasjaunias_block(k, i));
    }
    u.push(lin(f, -1, 1)).expect("linear");
    let outer = repeat(&lin(f, -1, 0), lasjaunias_exponent(k, n - 1));
    let mut v = outer.clone();
    v.extend_from(&Word::from_trusted(f, vec![lin(f, -1, 1), lin(f, 1, 1)]));
    v.extend_from(&repeat(&lin(f, 1, 0), lasjaunias_exponent(k, n)));
    v.extend_from(&Word::from_trusted(f, vec![lin(f, 1, 1), lin(f, -1, 1)]));
    v.extend_from(&outer);
    (u, v)
}

fn binomial(n: u64, r: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// f_k = Σ_{0 ≤ 2j ≤ k} C(k−j, j) X^{k−2j}, binomials taken over Z then reduced.
pub fn fib_poly(field: PrimeField, k: usize) -> Poly {
    let p = BigUint::from(field.modulus());
    let mut coeffs = vec![0i64; k + 1];
    for j in 0..=k / 2 {
        let c = binomial((k - j) as u64, j as u64) % &p;
        coeffs[k - 2 * j] = c.to_i64().expect("residue fits");
    }
    Poly::from_coeffs(field, &coeffs)
}

fn theta_p_field(p: u64) -> Result<PrimeField> {
    let f = PrimeField::new(p)?;
    if p < 5 {
        return Err(Error::Invalid(format!("the Theta_p family needs p >= 5, got {p}")));
    }
    Ok(f)
}

/// X/3, 3X, −X/3 and −X over F_p.
struct ThetaPLetters {
    x: Poly,
    x_third: Poly,
    three_x: Poly,
    neg_x_third: Poly,
    neg_x: Poly,
}

impl ThetaPLetters {
    fn new(f: PrimeField) -> Self {
        let third = f.inv(3) as i64;
        ThetaPLetters {
            x: lin(f, 1, 0),
            x_third: lin(f, third, 0),
            three_x: lin(f, 3, 0),
            neg_x_third: lin(f, -third, 0),
            neg_x: lin(f, -1, 0),
        }
    }

    fn v3(&self) -> Word {
        Word::from_trusted(self.x.field(), vec![self.x_third.clone(), self.three_x.clone()])
    }

    fn vm1(&self) -> Word {
        Word::from_trusted(self.x.field(), vec![self.neg_x.clone(), self.neg_x.clone()])
    }
}

/// L_k(3) = (X/3, 3X)^{[(p^k−1)/2]}.
pub fn theta_p_l3(p: u64, k: u32) -> Result<Word> {
    let f = theta_p_field(p)?;
    Ok(ThetaPLetters::new(f).v3().power((pow_usize(p as usize, k) - 1) / 2))
}

/// L_k(−1) = (−X, −X)^{[(p^k−1)/2]}.
pub fn theta_p_lm1(p: u64, k: u32) -> Result<Word> {
    let f = theta_p_field(p)?;
    Ok(ThetaPLetters::new(f).vm1().power((pow_usize(p as usize, k) - 1) / 2))
}

/// First `count` letters of X, L_0(3), −X/3, L_0(−1), X, L_1(3), −X/3, L_1(−1), …
/// (the first letter is a_0).
pub fn theta_p_prefix(p: u64, count: usize) -> Result<Word> {
    let f = theta_p_field(p)?;
    let l = ThetaPLetters::new(f);
    let mut w = Word::empty(f);
    let mut k = 0u32;
    while w.len() < count {
        let reps = (pow_usize(p as usize, k) - 1) / 2;
        w.push(l.x.clone())?;
        w.extend_from(&l.v3().power(reps));
        w.push(l.neg_x_third.clone())?;
        w.extend_from(&l.vm1().power(reps));
        k += 1;
    }
    w.truncate(count);
    Ok(w)
}

/// Θ_p as [X; …] with `count` letters in total.
pub fn theta_p_word(p: u64, count: usize) -> Result<CfWord> {
    let f = theta_p_field(p)?;
    CfWord::from_letters(f, theta_p_prefix(p, count.max(1))?.letters())
}

/// Palindrome data for Θ_p: U_n = X, −X/3, X, L_1(3), −X/3, L_1(−1), X, …, L_{n−1}(−1), X
/// and the palindrome V_n = (X/3, 3X)^{[(p^n−3)/2]}, X/3, both assembled from blocks.
pub fn theta_p_uv(p: u64, n: u32) -> Result<(Word, Word)> {
    let f = theta_p_field(p)?;
    let l = ThetaPLetters::new(f);
    let mut u = Word::from_trusted(f, vec![l.x.clone()]);
    for k in 0..n {
        u.extend_from(&theta_p_l3(p, k)?);
        u.push(l.neg_x_third.clone())?;
        u.extend_from(&theta_p_lm1(p, k)?);
        u.push(l.x.clone())?;
    }
    let mut v = l.v3().power((pow_usize(p as usize, n) - 3) / 2);
    v.push(l.x_third.clone())?;
    Ok((u, v))
}

/// The period word (X/3, 3X) whose powers L_n(3) consist of.
pub fn theta_p_v3(p: u64) -> Result<Word> {
    Ok(ThetaPLetters::new(theta_p_field(p)?).v3())
}

/// Ω_0 = ε, Ω_1 = X, Ω_n = Ω_{n−1} (−X) Ω_{n−2}^{(3)} (−X) Ω_{n−1}.
pub fn omega(n: usize) -> Word {
    let f = f3();
    let neg_x = Word::from_trusted(f, vec![lin(f, -1, 0)]);
    let mut prev = Word::empty(f);
    if n == 0 {
        return prev;
    }
    let mut cur = Word::from_trusted(f, vec![lin(f, 1, 0)]);
    for _ in 2..=n {
        let next = Word::concat_all(f, [&cur, &neg_x, &prev.cube(), &neg_x, &cur]);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// |Ω_n|.
pub fn omega_len(n: usize) -> usize {
    let (mut a, mut b) = (0usize, 1usize);
    if n == 0 {
        return 0;
    }
    for _ in 2..=n {
        let c = 2 * b + 2 + a;
        a = b;
        b = c;
    }
    b
}

/// [0; Ω_∞] with `count` tail letters.
pub fn buck_robbins_word(count: usize) -> CfWord {
    let mut n = 1;
    while omega_len(n) < count {
        n += 1;
    }
    let mut w = omega(n);
    w.truncate(count);
    CfWord::zero_then(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(w: &Word) -> Vec<String> {
        w.iter().map(|l| l.to_string()).collect()
    }

    #[test]
    fn mills_robbins_h1_and_h2() {
        assert_eq!(ws(&mills_robbins_block(1)), ["X", "X+2", "2*X+2", "2*X", "2*X+2", "X+2"]);
        let h2 = ws(&mills_robbins_block(2));
        assert_eq!(h2.len(), 18);
        assert!(h2[..7].iter().all(|l| l == "X"));
        assert_eq!(&h2[7..9], ["X+1", "2*X+1"]);
        assert!(h2[9..16].iter().all(|l| l == "2*X"));
        assert_eq!(&h2[16..], ["2*X+1", "X+1"]);
        for n in 1..=6 {
            assert_eq!(mills_robbins_block(n).len(), 2 * 3usize.pow(n));
        }
    }

    #[test]
    fn mills_robbins_prefix_blocks() {
        let w = mills_robbins_prefix(81);
        assert_eq!(ws(&w.prefix(3)), ["X", "2*X+2", "X+1"]);
        assert_eq!(w.letters()[3..9], *mills_robbins_block(1).letters());
        assert_eq!(3 + 6 + 18 + 54, 81);
        assert_eq!(w.letters()[27..81], *mills_robbins_block(3).letters());
    }

    #[test]
    fn lasjaunias_first_blocks() {
        let w = lasjaunias_word(0, 8);
        assert!(w.a0.is_zero());
        assert_eq!(ws(&w.tail), ["X+1", "X+1", "2*X+1", "2*X", "2*X", "2*X", "2*X", "2*X+1"]);
        assert_eq!(lasjaunias_exponent(0, 1), 4);
    }

    #[test]
    fn fibonacci_polys() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(fib_poly(f, 0).to_string(), "1");
        assert_eq!(fib_poly(f, 1).to_string(), "X");
        assert_eq!(fib_poly(f, 2).to_string(), "X^2+1");
        for p in [5, 7, 11] {
            let f = PrimeField::new(p).unwrap();
            for k in 2..=30 {
                let rec = &(&Poly::x(f) * &fib_poly(f, k - 1)) + &fib_poly(f, k - 2);
                assert_eq!(fib_poly(f, k), rec, "p={p} k={k}");
            }
        }
    }

    #[test]
    fn theta_5_start() {
        let w = theta_p_prefix(5, 7).unwrap();
        assert_eq!(ws(&w), ["X", "3*X", "X", "2*X", "3*X", "2*X", "3*X"]);
        assert_eq!(theta_p_l3(5, 1).unwrap(), theta_p_v3(5).unwrap().power(2));
        assert!(theta_p_prefix(3, 4).is_err());
    }

    #[test]
    fn omega_small() {
        assert!(omega(0).is_empty());
        assert_eq!(ws(&omega(2)), ["X", "2*X", "2*X", "X"]);
        let o3 = omega(3);
        assert_eq!(o3.len(), 11);
        let mut expect = ws(&omega(2));
        expect.extend(["2*X", "X^3", "2*X"].map(String::from));
        expect.extend(ws(&omega(2)));
        assert_eq!(ws(&o3), expect);
        for n in 0..=10 {
            assert_eq!(omega(n).len(), omega_len(n));
        }
    }

    #[test]
    fn omega_palindromes_nested() {
        for n in 1..=10 {
            let o = omega(n);
            assert!(o.is_palindrome(), "n={n}");
            if n >= 2 {
                let prev = omega(n - 1);
                assert!(prev.first_mismatch_against(o.letters()).is_none());
                assert_eq!(o.letters()[o.len() - prev.len()..], *prev.letters());
            }
        }
    }

    #[test]
    fn degree_patterns() {
        assert!(mills_robbins_prefix(300).iter().all(|l| l.deg() == 1));
        assert!(lasjaunias_word(2, 300).tail.iter().all(|l| l.deg() == 1));
        assert!(theta_p_prefix(7, 300).unwrap().iter().all(|l| l.deg() == 1));
        for l in omega(8).iter() {
            let d = l.degree().unwrap();
            let mut e = d;
            while e % 3 == 0 {
                e /= 3;
            }
            assert_eq!(e, 1, "Ω letter degree {d} is not a power of 3");
            assert_eq!(l.residues().iter().filter(|&&c| c != 0).count(), 1);
        }
    }

    fn assert_uv_prefix(full: &Word, u: &Word, v: &Word) {
        let mut uv = u.clone();
        uv.extend_from(v);
        assert!(uv.len() <= full.len());
        assert!(uv.first_mismatch_against(full.letters()).is_none());
        assert!(v.is_palindrome());
    }

    #[test]
    fn mills_robbins_uv_lengths() {
        for n in 2..=5u32 {
            let (u, v) = mills_robbins_uv(n);
            assert_eq!(u.len(), 3usize.pow(n));
            assert_eq!(v.len(), 3usize.pow(n + 1) - 2);
            assert_uv_prefix(&mills_robbins_prefix(3usize.pow(n + 2)), &u, &v);
        }
    }

    #[test]
    fn lasjaunias_uv_lengths() {
        for k in 0..=3usize {
            for n in [2u32, 4] {
                let (u, v) = lasjaunias_uv(k, n);
                let t = 3usize.pow(n - 1);
                assert_eq!(2 * u.len(), (k + 2) * t - k);
                assert_eq!(v.len(), 5 * (k + 2) * t - 2);
                assert!(v.len() >= 3 * u.len() + 3);
                let full = lasjaunias_word(k, u.len() + v.len() + 5).tail;
                assert_uv_prefix(&full, &u, &v);
            }
        }
    }

    #[test]
    fn theta_p_uv_lengths() {
        for p in [5u64, 7, 11] {
            for n in [2u32, 3] {
                let (u, v) = theta_p_uv(p, n).unwrap();
                let pn = (p as usize).pow(n);
                assert_eq!(u.len(), 1 + 2 * (pn - 1) / (p as usize - 1));
                assert_eq!(v.len(), pn - 2);
                let full = theta_p_prefix(p, u.len() + v.len() + 3).unwrap();
                assert_uv_prefix(&full, &u, &v);
            }
        }
    }
}

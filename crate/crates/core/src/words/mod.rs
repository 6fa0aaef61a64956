//! Words over the alphabet F_p[X] \ F_p and generators for the explicit
//! continued-fraction expansions of several algebraic series.

mod generators;

pub use generators::*;

use std::fmt;
use std::ops::Index;

use crate::algebra::{Poly, PrimeField};
use crate::error::{Error, Result};

/// A finite word whose letters are polynomials of degree at least one.
///
/// `len()` counts letters; it is unrelated to the norm of a series.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    field: PrimeField,
    letters: Vec<Poly>,
}

impl Word {
    pub fn empty(field: PrimeField) -> Self {
        Word { field, letters: Vec::new() }
    }

    pub fn new(field: PrimeField, letters: Vec<Poly>) -> Result<Self> {
        for (index, l) in letters.iter().enumerate() {
            assert_eq!(l.field(), field, "mixed moduli");
            if l.deg() < 1 {
                return Err(Error::DegreeZeroLetter { index, degree: l.deg() });
            }
        }
        Ok(Word { field, letters })
    }

    /// Letters known to have positive degree by construction.
    pub(crate) fn from_trusted(field: PrimeField, letters: Vec<Poly>) -> Self {
        debug_assert!(letters.iter().all(|l| l.deg() >= 1));
        Word { field, letters }
    }

    pub fn single(letter: Poly) -> Result<Self> {
        Word::new(letter.field(), vec![letter])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Poly] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Poly> {
        self.letters
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Poly> {
        self.letters.iter()
    }

    pub fn push(&mut self, letter: Poly) -> Result<()> {
        if letter.deg() < 1 {
            return Err(Error::DegreeZeroLetter { index: self.len(), degree: letter.deg() });
        }
        assert_eq!(letter.field(), self.field, "mixed moduli");
        self.letters.push(letter);
        Ok(())
    }

    pub fn extend_from(&mut self, other: &Word) {
        assert_eq!(other.field, self.field, "mixed moduli");
        self.letters.extend_from_slice(&other.letters);
    }

    pub fn truncate(&mut self, len: usize) {
        self.letters.truncate(len);
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word::from_trusted(self.field, self.letters[..len.min(self.len())].to_vec())
    }

    /// W̄ = w_m … w_1.
    pub fn mirror(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word::from_trusted(self.field, letters)
    }

    pub fn is_palindrome(&self) -> bool {
        let n = self.letters.len();
        (0..n / 2).all(|i| self.letters[i] == self.letters[n - 1 - i])
    }

    /// W^{[ℓ]}: ℓ copies of W.
    pub fn power(&self, copies: usize) -> Word {
        let mut letters = Vec::with_capacity(self.len() * copies);
        for _ in 0..copies {
            letters.extend_from_slice(&self.letters);
        }
        Word::from_trusted(self.field, letters)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.extend_from(other);
        w
    }

    pub fn concat_all<'a>(field: PrimeField, parts: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut w = Word::empty(field);
        for p in parts {
            w.extend_from(p);
        }
        w
    }

    /// Apply `f` to every letter; images of degree zero are rejected.
    pub fn letter_map(&self, f: impl Fn(&Poly) -> Poly) -> Result<Word> {
        let letters = self.letters.iter().map(f).collect();
        Word::new(self.field, letters)
    }

    /// W^{(3)}: every letter cubed.
    pub fn cube(&self) -> Word {
        self.letter_map(|l| l.pow(3)).expect("cubing preserves positive degree")
    }

    /// Substitution X ↦ −X in every letter.
    pub fn neg_x(&self) -> Word {
        self.letter_map(|l| l.scale_var(-1)).expect("X -> -X preserves degree")
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.letters.iter().filter_map(|l| l.degree()).max()
    }

    /// Index of the first letter where `self` differs from `other`'s prefix,
    /// or `None` if `self` is a prefix of `other`.
    pub fn first_mismatch_against(&self, other: &[Poly]) -> Option<usize> {
        for (i, l) in self.letters.iter().enumerate() {
            if other.get(i) != Some(l) {
                return Some(i);
            }
        }
        None
    }
}

impl Index<usize> for Word {
    type Output = Poly;
    fn index(&self, i: usize) -> &Poly {
        &self.letters[i]
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Poly;
    type IntoIter = std::slice::Iter<'a, Poly>;
    fn into_iter(self) -> Self::IntoIter {
        self.letters.iter()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// File form: `{"p": p, "letters": [[c0, c1, …], …]}`, coefficients constant-first.
#[derive(serde::Serialize, serde::Deserialize)]
struct WordRepr {
    p: u64,
    letters: Vec<Vec<u64>>,
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let letters = self.letters.iter().map(|l| l.residues().to_vec()).collect();
        WordRepr { p: self.field.modulus(), letters }.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = WordRepr::deserialize(d)?;
        let field = PrimeField::new(r.p).map_err(D::Error::custom)?;
        if r.letters.iter().flatten().any(|&c| c >= r.p) {
            return Err(D::Error::custom("coefficient out of range"));
        }
        let letters = r.letters.into_iter().map(|c| Poly::from_residues(field, c)).collect();
        Word::new(field, letters).map_err(D::Error::custom)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {}", self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn w(p: u64, s: &[&str]) -> Word {
        let f = k(p);
        Word::new(f, s.iter().map(|t| Poly::parse(f, t).unwrap()).collect()).unwrap()
    }

    #[test]
    fn mirror_palindrome_power() {
        assert_eq!(w(3, &["X", "2*X+2", "X+1"]).mirror(), w(3, &["X+1", "2*X+2", "X"]));
        assert!(w(3, &["X", "2*X", "X"]).is_palindrome());
        assert!(!w(3, &["X", "2*X"]).is_palindrome());
        assert_eq!(w(3, &["X"]).power(3), w(3, &["X", "X", "X"]));
        assert!(w(3, &["X"]).power(0).is_empty());
    }

    #[test]
    fn letter_maps() {
        assert_eq!(w(3, &["X"]).cube(), w(3, &["X^3"]));
        assert_eq!(w(3, &["X+1"]).cube(), w(3, &["X^3+1"]));
        assert_eq!(w(3, &["X+1"]).neg_x(), w(3, &["2*X+1"]));
        let to_const = w(3, &["X"]).letter_map(|l| Poly::one(l.field()));
        assert_eq!(to_const, Err(Error::DegreeZeroLetter { index: 0, degree: 0 }));
    }

    #[test]
    fn rejects_constant_letters() {
        let f = k(5);
        assert!(Word::new(f, vec![Poly::x(f), Poly::constant(f, 2)]).is_err());
    }

    #[test]
    fn frobenius_cube_is_linear_on_letters() {
        let f = k(3);
        for a in 1..3 {
            for b in 0..3 {
                let l = Poly::linear(f, a, b);
                assert_eq!(l.pow(3), Poly::from_coeffs(f, &[b, 0, 0, a]));
            }
        }
    }
}

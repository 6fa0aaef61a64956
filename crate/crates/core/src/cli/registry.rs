//! Named instances: each id maps to a defining polynomial, a word generator, or both.

use std::ops::RangeInclusive;

use serde::Serialize;

use crate::algebra::{LaurentSeries, PrimeField};
use crate::cfengine::{cf_eval, CfWord};
use crate::error::{Error, Result};
use crate::roots::instances::*;
use crate::roots::{newton_root, seed_search, BivarPoly, DEFAULT_SEED_DEPTH};
use crate::words::*;

/// Leading exponents searched for root branches.
pub const SEED_TOPS: RangeInclusive<i64> = -3..=1;

#[derive(Clone, Debug, Serialize)]
pub struct InstanceDescriptor {
    pub id: String,
    pub p: u64,
    /// Defining polynomial, when the instance is given as a root.
    pub polynomial: Option<BivarPoly>,
    /// The instance also has an explicit word generator.
    pub has_word: bool,
    pub note: &'static str,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub descriptor: InstanceDescriptor,
    word: Option<WordGen>,
}

#[derive(Clone, Copy, Debug)]
enum WordGen {
    MillsRobbins,
    Lasjaunias(usize),
    ThetaP(u64),
    BuckRobbins,
    PeriodicPhi(u64),
}

/// Every id pattern, for listings and error messages.
pub const IDS: [&str; 7] = [
    "frobenius(p)",
    "baum-sweet",
    "mills-robbins",
    "lasjaunias(k)",
    "theta-p(p)",
    "phi-p(p)",
    "buck-robbins",
];

fn arg(id: &str, name: &str) -> Option<u64> {
    id.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?.trim().parse().ok()
}

fn unknown(id: &str) -> Error {
    Error::UnknownId(id.to_string())
}

/// Resolve an instance id; unknown or malformed ids give `Error::UnknownId`.
pub fn lookup(id: &str) -> Result<Instance> {
    let id = id.trim();
    let mk = |p: u64, polynomial: Option<BivarPoly>, word: Option<WordGen>, note| Instance {
        descriptor: InstanceDescriptor { id: id.to_string(), p, polynomial, has_word: word.is_some(), note },
        word,
    };
    if let Some(p) = arg(id, "frobenius") {
        let poly = frobenius(p).map_err(|_| unknown(id))?;
        return Ok(mk(p, Some(poly), None, "root of Z^(p+1) + XZ - 1, expansion [0; X, X^p, X^(p^2), ...]"));
    }
    if let Some(k) = arg(id, "lasjaunias") {
        return Ok(mk(3, None, Some(WordGen::Lasjaunias(k as usize)), "quartic [0; H_0(X), H_1(-X), H_2(X), ...] over F_3"));
    }
    if let Some(p) = arg(id, "theta-p") {
        let poly = theta_p_poly(p).map_err(|_| unknown(id))?;
        return Ok(mk(p, Some(poly), Some(WordGen::ThetaP(p)), "degree p+1 series [X, L_0(3), -X/3, L_0(-1), X, ...]"));
    }
    if let Some(p) = arg(id, "phi-p") {
        theta_p_v3(p).map_err(|_| unknown(id))?;
        return Ok(mk(p, None, Some(WordGen::PeriodicPhi(p)), "quadratic [3X, X/3, 3X, X/3, ...]"));
    }
    match id {
        "baum-sweet" => Ok(mk(2, Some(baum_sweet()), None, "root of XZ^3 + Z + X over F_2, partial quotients of degree <= 2")),
        "mills-robbins" => Ok(mk(
            3,
            Some(mills_robbins_quartic()),
            Some(WordGen::MillsRobbins),
            "quartic over F_3 with expansion [X, 2X+2, X+1, H_1, H_2, ...]",
        )),
        "buck-robbins" => Ok(mk(
            3,
            Some(buck_robbins()),
            Some(WordGen::BuckRobbins),
            "unique root of Z^4 + Z^2 - XZ + 1 over F_3, expansion [0; Omega_inf]",
        )),
        _ => Err(unknown(id)),
    }
}

impl Instance {
    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.descriptor.p).expect("registered moduli are prime")
    }

    /// The generated word with `count` letters in total (a_0 included).
    pub fn word(&self, count: usize) -> Option<Result<CfWord>> {
        let tail = count.saturating_sub(1);
        Some(match self.word? {
            WordGen::MillsRobbins => Ok(mills_robbins_word(count.max(1))),
            WordGen::Lasjaunias(k) => Ok(lasjaunias_word(k, tail)),
            WordGen::ThetaP(p) => theta_p_word(p, count),
            WordGen::BuckRobbins => Ok(buck_robbins_word(tail)),
            WordGen::PeriodicPhi(p) => theta_p_v3(p).and_then(|v| {
                let w = v.power(count / 2 + 1);
                let mut letters = w.into_letters();
                letters.rotate_left(1);
                letters.truncate(count.max(1));
                CfWord::from_letters(v.field(), &letters)
            }),
        })
    }

    /// The series to precision `prec`: the Newton root when a polynomial is known
    /// (the unique branch among the seeds), otherwise the word evaluated.
    pub fn series(&self, prec: i64) -> Result<LaurentSeries> {
        if let Some(poly) = &self.descriptor.polynomial {
            let seeds = seed_search(poly, SEED_TOPS, DEFAULT_SEED_DEPTH);
            let [seed] = seeds.as_slice() else {
                return Err(Error::Invalid(format!("{}: expected one root branch, found {}", self.descriptor.id, seeds.len())));
            };
            return Ok(newton_root(poly, seed, prec)?.root);
        }
        let mut count = 16usize;
        loop {
            let w = self.word(count).expect("word-defined instance")?;
            match cf_eval(&w, prec) {
                Ok(e) => return Ok(e.series),
                Err(Error::Shortfall { .. }) => count *= 2,
                Err(e) => return Err(e),
            }
        }
    }
}

//! Resolving command arguments into series, words or exact rationals.

use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use super::registry::lookup;
use crate::algebra::{LaurentSeries, Poly, PrimeField};
use crate::cfengine::CfWord;
use crate::error::{Error, Result};
use crate::words::Word;

/// Contents of an input file, told apart by their keys.
#[derive(Clone, Debug)]
pub enum Source {
    Series(LaurentSeries),
    /// Letters a_1, a_2, … of [0; word].
    Word(Word),
    Rational { num: Poly, den: Poly },
}

#[derive(Deserialize)]
struct RationalRepr {
    p: u64,
    num: Vec<u64>,
    den: Vec<u64>,
}

fn parse_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{}: {e}", path.display()))
}

/// Read a series `{p, top_degree, coeffs, precision}`, word `{p, letters}` or
/// rational `{p, num, den}` file; polynomial coefficients are constant-first.
pub fn read_source(path: &Path) -> Result<Source> {
    let text = std::fs::read_to_string(path).map_err(|e| parse_err(path, e))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| parse_err(path, e))?;
    if v.get("coeffs").is_some() {
        return Ok(Source::Series(serde_json::from_value(v).map_err(|e| parse_err(path, e))?));
    }
    if v.get("letters").is_some() {
        return Ok(Source::Word(serde_json::from_value(v).map_err(|e| parse_err(path, e))?));
    }
    if v.get("num").is_some() {
        let r: RationalRepr = serde_json::from_value(v).map_err(|e| parse_err(path, e))?;
        let f = PrimeField::new(r.p)?;
        if r.num.iter().chain(&r.den).any(|&c| c >= r.p) {
            return Err(parse_err(path, "coefficient out of range"));
        }
        let den = Poly::from_residues(f, r.den);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Source::Rational { num: Poly::from_residues(f, r.num), den });
    }
    Err(parse_err(path, "expected a series, word or rational object"))
}

pub(crate) fn is_file_arg(arg: &str) -> bool {
    arg.ends_with(".json") || Path::new(arg).is_file()
}

/// A value for the scanner: exact rational, or a series at the given precision.
pub(crate) enum Resolved {
    Series(LaurentSeries),
    Rational { num: Poly, den: Poly },
}

/// Resolve `<id>`, `<id>^-1` or a file at precision `prec` (ignored for files and rationals).
pub(crate) fn resolve(arg: &str, prec: i64) -> Result<(Resolved, bool)> {
    if is_file_arg(arg) {
        return Ok((
            match read_source(Path::new(arg))? {
                Source::Series(s) => Resolved::Series(s),
                Source::Word(w) => Resolved::Series(crate::cfengine::cf_eval(&CfWord::zero_then(w), prec)?.series),
                Source::Rational { num, den } => Resolved::Rational { num, den },
            },
            false,
        ));
    }
    let (id, inverse) = match arg.strip_suffix("^-1") {
        Some(id) => (id, true),
        None => (arg, false),
    };
    let inst = lookup(id)?;
    // 1/Θ loses 2·log|Θ| digits; ask for a little more.
    let s = inst.series(prec + 8)?;
    let s = if inverse { s.inv()?.truncate(prec) } else { s.truncate(prec) };
    Ok((Resolved::Series(s), true))
}

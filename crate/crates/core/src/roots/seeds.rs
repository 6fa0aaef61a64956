//! Exhaustive search for Newton seeds among short Laurent polynomials.

use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::algebra::LaurentSeries;
use crate::roots::bivar::{BivarPoly, LaurentPoly};
use crate::roots::newton::{hensel_condition, newton_root};

pub const DEFAULT_SEED_DEPTH: usize = 4;

/// Candidate leading coefficients: `depth` coefficients numbered by `idx`.
fn candidate(p: u64, depth: usize, mut idx: u64) -> Vec<u64> {
    let mut c = vec![0u64; depth];
    c[0] = 1 + idx % (p - 1);
    idx /= p - 1;
    for slot in c.iter_mut().skip(1) {
        *slot = idx % p;
        idx /= p;
    }
    c
}

fn search_at_depth(poly: &BivarPoly, tops: &RangeInclusive<i64>, depth: usize) -> Vec<LaurentSeries> {
    let field = poly.field();
    let p = field.modulus();
    let per_top = (p - 1) * p.pow(depth as u32 - 1);
    let jobs: Vec<(i64, u64)> = tops.clone().flat_map(|t| (0..per_top).map(move |i| (t, i))).collect();
    let mut found: Vec<(i64, Vec<u64>)> = jobs
        .par_iter()
        .filter_map(|&(top, idx)| {
            let coeffs = candidate(p, depth, idx);
            let prec = depth as i64 - 1 - top;
            let seed = LaurentSeries::new(field, top, coeffs, prec);
            hensel_condition(poly, &LaurentPoly::from_series(&seed)).ok()?;
            let mut cert = newton_root(poly, &seed, prec).ok()?;
            let lead = cert.root.top_degree()?;
            let need = depth as i64 - 1 - lead;
            if cert.root.precision() < need {
                cert = newton_root(poly, &seed, need).ok()?;
            }
            let label: Vec<u64> = (0..depth as i64).map(|k| cert.root.coeff(lead - k).unwrap_or(0)).collect();
            Some((lead, label))
        })
        .collect();
    found.sort();
    found.dedup();
    found
        .into_iter()
        .map(|(top, label)| LaurentSeries::new(field, top, label, depth as i64 - 1 - top))
        .collect()
}

/// Seeds for every root branch whose leading exponent lies in `tops`, labelled by
/// the root's first `depth` coefficients and sorted by (leading exponent, label).
///
/// The depth is widened once, by two coefficients, when nothing is found.
pub fn seed_search(poly: &BivarPoly, tops: RangeInclusive<i64>, depth: usize) -> Vec<LaurentSeries> {
    assert!(depth >= 1, "seed depth must be positive");
    let seeds = search_at_depth(poly, &tops, depth);
    if seeds.is_empty() {
        return search_at_depth(poly, &tops, depth + 2);
    }
    seeds
}

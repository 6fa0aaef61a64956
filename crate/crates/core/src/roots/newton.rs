//! Newton lifting in the X⁻¹-adic topology, and residual certificates.

use serde::{Deserialize, Serialize};

use crate::algebra::{LaurentSeries, NormLog2};
use crate::error::{Error, Result};
use crate::roots::bivar::{BivarPoly, LaurentPoly};

const MAX_ITERATIONS: usize = 64;

/// Outcome of checking P(F) = 0 against the precision of F.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum ResidualValuation {
    /// |P(F)| ≤ 2^{-valuation}.
    Vanishes { valuation: i64 },
    /// P(F) has a certified nonzero leading term X^{leading_exponent}.
    Refuted { leading_exponent: i64 },
}

impl ResidualValuation {
    pub fn valuation(self) -> Option<i64> {
        match self {
            ResidualValuation::Vanishes { valuation } => Some(valuation),
            ResidualValuation::Refuted { .. } => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootCertificate {
    pub root: LaurentSeries,
    /// The exact approximant behind `root` has |P| ≤ 2^{-residual_valuation}.
    pub residual_valuation: i64,
    pub derivative_norm: NormLog2,
    /// The approximant is an exact root (P vanishes identically on it).
    pub exact: bool,
    pub residual_history: Vec<i64>,
}

/// log2 of |P^{[j]}(z)| for j = 0..=deg P, `None` where the value is zero.
fn hasse_norms(p: &BivarPoly, z: &LaurentPoly) -> Vec<Option<i64>> {
    (0..=p.degree())
        .map(|j| {
            let pj = if j == 0 { Some(p.clone()) } else { p.hasse(j) };
            pj.and_then(|q| q.eval_exact(z).norm().exponent())
        })
        .collect()
}

/// Largest exponent of Σ_{j≥1} H_j ε^j over |ε| ≤ 2^{-(prec+1)}, or `None` if every term vanishes.
fn perturbation_bound(h: &[Option<i64>], prec: i64) -> Option<i64> {
    h.iter()
        .enumerate()
        .skip(1)
        .filter_map(|(j, hj)| hj.map(|e| e - j as i64 * (prec + 1)))
        .max()
}

/// Residual valuation of P at a series known to its precision.
///
/// The known part T is evaluated exactly; the unknown tail contributes at most
/// max_j |P^{[j]}(T)|·2^{-j(N+1)}. A residual above that bound is a refutation.
pub fn verify_algebraic(p: &BivarPoly, f: &LaurentSeries) -> ResidualValuation {
    let t = LaurentPoly::from_series(f);
    let h = hasse_norms(p, &t);
    let bound = perturbation_bound(&h, f.precision());
    match (h[0], bound) {
        (Some(r), Some(b)) if r > b => ResidualValuation::Refuted { leading_exponent: r },
        (Some(r), None) => ResidualValuation::Refuted { leading_exponent: r },
        (_, Some(b)) => ResidualValuation::Vanishes { valuation: -b },
        (None, None) => ResidualValuation::Vanishes { valuation: i64::MAX },
    }
}

/// Whether |P(seed)| < |P'(seed)|², reading the seed as exact.
pub fn hensel_condition(p: &BivarPoly, seed: &LaurentPoly) -> Result<(Option<i64>, i64)> {
    let r = p.eval_exact(seed).norm().exponent();
    let e = p
        .derivative()
        .and_then(|d| d.eval_exact(seed).norm().exponent())
        .ok_or(Error::DerivativeVanishes)?;
    match r {
        Some(r) if r >= 2 * e => Err(Error::HenselViolated { residual: r, derivative: e }),
        _ => Ok((r, e)),
    }
}

/// Lift `seed` to a root of `p` known to precision `prec`.
///
/// Each step is checked against the bound
/// |P(F − δ)| ≤ max_{j≥2} |P^{[j]}(F)||δ|^j, together with the truncation error.
pub fn newton_root(p: &BivarPoly, seed: &LaurentSeries, prec: i64) -> Result<RootCertificate> {
    let deriv = p.derivative().ok_or(Error::DerivativeVanishes)?;
    let mut z = LaurentPoly::from_series(seed);
    let (_, e0) = hensel_condition(p, &z)?;
    let mut margin = e0.max(0) + 2;
    let mut history = Vec::new();
    let mut last: Option<i64> = None;
    for _ in 0..MAX_ITERATIONS {
        let h = hasse_norms(p, &z);
        let e = h[1].ok_or(Error::DerivativeVanishes)?;
        let Some(r) = h[0] else {
            history.push(i64::MAX);
            return Ok(RootCertificate {
                root: z.to_series(prec),
                residual_valuation: i64::MAX,
                derivative_norm: NormLog2::Pow(e),
                exact: true,
                residual_history: history,
            });
        };
        history.push(-r);
        if r >= 2 * e {
            return Err(Error::HenselViolated { residual: r, derivative: e });
        }
        // the true root lies within |P(z)|/|P'(z)| of z
        let known = -(r - e) - 1;
        if -r >= prec && known >= prec {
            return Ok(RootCertificate {
                root: z.to_series(prec),
                residual_valuation: -r,
                derivative_norm: NormLog2::Pow(e),
                exact: false,
                residual_history: history,
            });
        }
        if let Some(prev) = last {
            if r >= prev {
                // stalled on the truncation floor
                margin *= 2;
            }
        }
        last = Some(r);
        let work = prec + margin + e.max(0);
        let rs = p.eval_exact(&z);
        let ds = deriv.eval_exact(&z);
        let dprec = work + 2 * e.abs() + r.abs() + 2;
        let delta = rs.to_series(work + e.abs() + 2).mul(&ds.to_series(dprec).inv()?);
        debug_assert!(delta.precision() >= work);
        let next = LaurentPoly::from_series(&z.to_series(work).sub(&delta.truncate(work)));
        // rigorous bound on the new residual
        let dnorm = r - e;
        let quad = h
            .iter()
            .enumerate()
            .skip(2)
            .filter_map(|(j, hj)| hj.map(|x| x + j as i64 * dnorm))
            .max();
        let shifted: Vec<Option<i64>> = (0..h.len())
            .map(|j| {
                (j..h.len())
                    .filter_map(|i| h[i].map(|x| x + (i - j) as i64 * dnorm.max(0)))
                    .max()
            })
            .collect();
        let trunc = perturbation_bound(&shifted, work);
        let bound = quad.into_iter().chain(trunc).max();
        let r_next = p.eval_exact(&next).norm().exponent();
        if let (Some(rn), Some(b)) = (r_next, bound) {
            assert!(rn <= b, "Newton step exceeded its residual bound: {rn} > {b}");
        }
        z = next;
    }
    Err(Error::NoConvergence { iterations: MAX_ITERATIONS })
}

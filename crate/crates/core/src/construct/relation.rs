//! Low-degree relations AΘ + BΦ + C ≡ 0 modulo X^{-N}, by elimination over F_p.

use serde::Serialize;

use crate::algebra::{LaurentSeries, Poly, PrimeField};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    /// Largest degree among A, B, C.
    pub degree: i64,
    /// The relation was checked on coefficients down to X^{-checked_to}.
    pub checked_to: i64,
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(f: PrimeField, m: &mut [Vec<u64>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let inv = f.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let k = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(k, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

fn solve(theta: &LaurentSeries, phi: &LaurentSeries, d: usize, n: i64) -> Option<(Vec<u64>, i64)> {
    let f = theta.field();
    let cols = 3 * (d + 1);
    let top = d as i64 + theta.top_degree().unwrap_or(0).max(phi.top_degree().unwrap_or(0)).max(0);
    let bottom = -(n.min(theta.precision()).min(phi.precision()) - d as i64);
    let mut rows = Vec::new();
    for e in (bottom..=top).rev() {
        let mut row = vec![0u64; cols];
        for i in 0..=d {
            row[i] = theta.coeff(e - i as i64).expect("coefficient within precision");
            row[d + 1 + i] = phi.coeff(e - i as i64).expect("coefficient within precision");
            if e == i as i64 {
                row[2 * (d + 1) + i] = 1;
            }
        }
        rows.push(row);
    }
    let pivots = rref(f, &mut rows, cols);
    let free = (0..cols).rev().find(|c| !pivots.contains(c))?;
    let mut v = vec![0u64; cols];
    v[free] = 1;
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = f.neg(rows[r][free]);
    }
    Some((v, -bottom))
}

/// The relation of least degree D' ≤ D with AΘ + BΦ + C vanishing through X^{-N}, if any.
///
/// Among the solutions of that degree the one returned is canonical: it is the
/// nullspace vector with the last free coordinate set to 1, then scaled so the
/// first nonzero of A, B, C (by that order) is monic.
pub fn linear_relation_search(theta: &LaurentSeries, phi: &LaurentSeries, max_degree: usize, n: i64) -> Option<Relation> {
    let f = theta.field();
    for d in 0..=max_degree {
        let Some((v, checked_to)) = solve(theta, phi, d, n) else { continue };
        let part = |k: usize| Poly::from_residues(f, v[k * (d + 1)..(k + 1) * (d + 1)].to_vec());
        let (a, b, c) = (part(0), part(1), part(2));
        let lead = [&a, &b, &c].iter().find(|p| !p.is_zero()).and_then(|p| p.leading()).expect("nonzero");
        let s = f.inv(lead.residue());
        let (a, b, c) = (a.scale(s), b.scale(s), c.scale(s));
        let degree = a.deg().max(b.deg()).max(c.deg());
        return Some(Relation { a, b, c, degree, checked_to });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planted_relation() {
        let f = PrimeField::new(5).unwrap();
        let theta = LaurentSeries::new(f, -1, vec![1, 3, 4, 0, 2, 2, 1, 0, 3, 3, 1, 4, 2, 0, 1, 1, 2, 3, 4, 1], 40);
        // Φ = (XΘ + 1)/X = Θ + X^{-1}
        let phi = theta.add(&LaurentSeries::monomial(f, 1, -1, 40));
        let r = linear_relation_search(&theta, &phi, 3, 40).unwrap();
        assert_eq!(r.degree, 1);
        assert_eq!((r.a.to_string(), r.b.to_string(), r.c.to_string()), ("X".into(), "4*X".into(), "1".into()));
    }

    #[test]
    fn identical_series() {
        let f = PrimeField::new(3).unwrap();
        let theta = LaurentSeries::new(f, -1, vec![1, 2, 0, 2, 1, 1, 0, 2, 2, 2, 1, 0, 1, 2, 2, 0, 0, 1, 2, 1], 30);
        let r = linear_relation_search(&theta, &theta, 2, 30).unwrap();
        assert_eq!((r.a.to_string(), r.b.to_string(), r.c.to_string()), ("1".into(), "2".into(), "0".into()));
    }
}

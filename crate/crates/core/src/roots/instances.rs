//! Defining polynomials of the named algebraic series.

use crate::algebra::{Poly, PrimeField};
use crate::cfengine::CfWord;
use crate::error::{Error, Result};
use crate::roots::BivarPoly;
use crate::words::fib_poly;

/// Z^{p+1} + XZ − 1.
pub fn frobenius(p: u64) -> Result<BivarPoly> {
    let f = PrimeField::new(p)?;
    let mut c = vec![Poly::zero(f); p as usize + 2];
    c[0] = Poly::constant(f, -1);
    c[1] = Poly::x(f);
    c[p as usize + 1] = Poly::one(f);
    BivarPoly::new(f, c)
}

/// XZ³ + Z + X over F_2.
pub fn baum_sweet() -> BivarPoly {
    let f = PrimeField::new(2).expect("prime");
    BivarPoly::from_int(f, &[&[0, 1], &[1], &[], &[0, 1]]).expect("nonzero")
}

/// X(X+2)Z⁴ − (X³+2X²+2X+2)Z³ + Z − X − 1 over F_3.
pub fn mills_robbins_quartic() -> BivarPoly {
    let f = PrimeField::new(3).expect("prime");
    BivarPoly::from_int(f, &[&[-1, -1], &[1], &[], &[-2, -2, -2, -1], &[0, 2, 1]]).expect("nonzero")
}

fn theta_p_family(p: u64, const_factor: i64) -> Result<BivarPoly> {
    let f = PrimeField::new(p)?;
    if p < 5 {
        return Err(Error::Invalid(format!("the Theta_p family needs p >= 5, got {p}")));
    }
    let x = Poly::x(f);
    let x2m3 = Poly::from_coeffs(f, &[-3, 0, 1]);
    let fa = fib_poly(f, p as usize - 2);
    let fb = fib_poly(f, p as usize - 1);
    let mut c = vec![Poly::zero(f); p as usize + 2];
    c[p as usize + 1] = x.clone();
    c[p as usize] = -&x2m3;
    c[1] = &(&x * &fa) - &fb.scale(3);
    c[0] = &(&fb * &x).scale(f.reduce(const_factor)) - &(&fa * &x2m3);
    BivarPoly::new(f, c)
}

/// XZ^{p+1} − (X²−3)Z^p + (X f_{p−2} − 3 f_{p−1})Z − f_{p−2}(X²−3) + 3 f_{p−1}X,
/// the relation satisfied by the word [X, L_0(3), −X/3, L_0(−1), X, …].
pub fn theta_p_poly(p: u64) -> Result<BivarPoly> {
    theta_p_family(p, 3)
}

/// The same family with constant term −f_{p−2}(X²−3) + f_{p−1}X.
pub fn theta_p_poly_unit_constant(p: u64) -> Result<BivarPoly> {
    theta_p_family(p, 1)
}

/// Z⁴ + Z² − XZ + 1 over F_3.
pub fn buck_robbins() -> BivarPoly {
    let f = PrimeField::new(3).expect("prime");
    BivarPoly::from_int(f, &[&[1], &[0, -1], &[1], &[], &[1]]).expect("nonzero")
}

/// q_k Z⁴ − p_k Z³ + q_{k+3} Z − p_{k+3}, built from the convergents of `word`.
pub fn lasjaunias_relation(word: &CfWord, k: usize) -> Result<BivarPoly> {
    let conv = word.prefix(k + 3).convergents();
    if conv.len() < k + 4 {
        return Err(Error::Invalid(format!("need {} letters for the relation with k = {k}", k + 4)));
    }
    let (a, b) = (&conv[k], &conv[k + 3]);
    let f = word.field();
    BivarPoly::new(f, vec![-&b.p, b.q.clone(), Poly::zero(f), -&a.p, a.q.clone()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(frobenius(2).unwrap().to_string(), "Z^3 + X*Z + 2".replace('2', "1"));
        assert_eq!(baum_sweet().to_string(), "X*Z^3 + Z + X");
        assert_eq!(buck_robbins().to_string(), "Z^4 + Z^2 + 2*X*Z + 1");
        assert_eq!(mills_robbins_quartic().to_string(), "(X^2+2*X)*Z^4 + (2*X^3+X^2+X+1)*Z^3 + Z + 2*X+2");
        assert_eq!(theta_p_poly(5).unwrap().degree(), 6);
    }
}

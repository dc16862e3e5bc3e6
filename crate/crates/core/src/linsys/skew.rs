//! Twisted polynomial ring `k[τ]` with `τ a = a^q τ`.
//!
//! A [`UniPoly`] with coefficients `a_j` stands for `Σ a_j τ^j`, i.e. the
//! operator `x -> Σ a_j x^(q^j)`. Products, divisions and gcds here are the
//! ones that match composition of those operators.

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::upoly::UniPoly;

/// `a ⊗ b` with `L(a) ∘ L(b) = L(a ⊗ b)`.
pub fn twisted_mul(a: &UniPoly, b: &UniPoly, f: &FieldSpec) -> UniPoly {
    if a.is_zero() || b.is_zero() {
        return UniPoly::zero();
    }
    let mut out = vec![FieldElement::ZERO; a.coeffs().len() + b.coeffs().len() - 1];
    for (i, &ai) in a.coeffs().iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, &bj) in b.coeffs().iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(ai, f.frobenius_q(bj, i)));
        }
    }
    UniPoly::new(out)
}

/// `c τ^d ⊗ b`.
fn shifted(c: FieldElement, d: usize, b: &UniPoly, f: &FieldSpec) -> UniPoly {
    let mut out = vec![FieldElement::ZERO; d];
    out.extend(b.coeffs().iter().map(|&bj| f.mul(c, f.frobenius_q(bj, d))));
    UniPoly::new(out)
}

/// `a = quot ⊗ b + rem` with `deg rem < deg b`.
pub fn right_divrem(a: &UniPoly, b: &UniPoly, f: &FieldSpec) -> Result<(UniPoly, UniPoly)> {
    let db = b.degree().ok_or(Error::DivisionByZero)?;
    let lb = b.leading();
    let mut rem = a.clone();
    let mut quot = vec![FieldElement::ZERO; a.coeffs().len().saturating_sub(db)];
    while let Some(dr) = rem.degree() {
        if dr < db {
            break;
        }
        let d = dr - db;
        let c = f.div(rem.leading(), f.frobenius_q(lb, d))?;
        quot[d] = c;
        rem = rem.sub(&shifted(c, d, b, f), f);
    }
    Ok((UniPoly::new(quot), rem))
}

/// Greatest common right divisor, monic; returns `(g, s, t)` with
/// `s ⊗ a + t ⊗ b = g`.
pub fn gcrd_ext(a: &UniPoly, b: &UniPoly, f: &FieldSpec) -> (UniPoly, UniPoly, UniPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
    let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
    while !r1.is_zero() {
        let (qt, r) = right_divrem(&r0, &r1, f).expect("nonzero divisor");
        let s = s0.sub(&twisted_mul(&qt, &s1, f), f);
        let t = t0.sub(&twisted_mul(&qt, &t1, f), f);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.is_zero() {
        return (r0, s0, t0);
    }
    // left scaling by a constant keeps the identity
    let inv = f.inv(r0.leading()).expect("nonzero");
    (r0.scale(inv, f), s0.scale(inv, f), t0.scale(inv, f))
}

pub fn gcrd(a: &UniPoly, b: &UniPoly, f: &FieldSpec) -> UniPoly {
    gcrd_ext(a, b, f).0
}

/// Monic gcrd of a family (zero for an empty or all-zero family).
pub fn gcrd_all<'a, I>(polys: I, f: &FieldSpec) -> UniPoly
where
    I: IntoIterator<Item = &'a UniPoly>,
{
    polys.into_iter().fold(UniPoly::zero(), |acc, p| gcrd(&acc, p, f))
}

/// `(A, B)` with `A ⊗ f0 + B ⊗ fw = 1`.
pub fn skew_bezout(f0: &UniPoly, fw: &UniPoly, f: &FieldSpec) -> Result<(UniPoly, UniPoly)> {
    let (g, s, t) = gcrd_ext(f0, fw, f);
    if !(g.degree() == Some(0) && g.leading().is_one()) {
        return Err(Error::NotCoprime { gcd: g.into_coeffs() });
    }
    Ok((s, t))
}

/// Applies the operator `Σ a_j τ^j` to `x`.
pub fn apply(a: &UniPoly, x: FieldElement, f: &FieldSpec) -> FieldElement {
    let mut acc = FieldElement::ZERO;
    let mut xj = x;
    for &c in a.coeffs() {
        acc = f.add(acc, f.mul(c, xj));
        xj = f.frobenius_q(xj, 1);
    }
    acc
}

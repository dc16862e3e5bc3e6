//! Dense univariate polynomials over a [`FieldSpec`], little-endian by degree.

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    /// Builds a polynomial from `c0, c1, ...`, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_raw(raw: &[u32]) -> Self {
        Self::new(raw.iter().map(|&c| FieldElement::from_raw(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(FieldElement::ONE)
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(FieldElement::ONE, 1)
    }

    pub fn monomial(c: FieldElement, degree: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(field: &FieldSpec, n: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; n + 1];
        coeffs[0] = field.neg(FieldElement::ONE);
        coeffs[n] = FieldElement::ONE;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElement> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn add(&self, other: &Self, f: &FieldSpec) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self, f: &FieldSpec) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self, f: &FieldSpec) -> Self {
        Self::new(self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: FieldElement, f: &FieldSpec) -> Self {
        Self::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self, f: &FieldSpec) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::new(out)
    }

    pub fn divrem(&self, divisor: &Self, f: &FieldSpec) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = f.mul(rem[k], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[k - dd] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] = f.sub(rem[k - dd + j], f.mul(c, b));
            }
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, divisor: &Self, f: &FieldSpec) -> Result<Self> {
        Ok(self.divrem(divisor, f)?.1)
    }

    pub fn monic(&self, f: &FieldSpec) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = f.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv, f)
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self, f: &FieldSpec) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self, f: &FieldSpec) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (qt, r) = r0.divrem(&r1, f).expect("nonzero divisor");
            let s = s0.sub(&qt.mul(&s1, f), f);
            let t = t0.sub(&qt.mul(&t1, f), f);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(r0.leading()).expect("nonzero");
        (r0.scale(inv, f), s0.scale(inv, f), t0.scale(inv, f))
    }

    pub fn eval(&self, x: FieldElement, f: &FieldSpec) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Applies `x -> x^(q^i)` to every coefficient.
    pub fn frobenius(&self, i: usize, f: &FieldSpec) -> Self {
        Self::new(self.coeffs.iter().map(|&c| f.frobenius_q(c, i)).collect())
    }

    /// Whether every coefficient lies in `k'`.
    pub fn over_subfield(&self, f: &FieldSpec) -> bool {
        self.coeffs.iter().all(|&c| f.lies_in_subfield(c))
    }

    /// Trial division by every monic polynomial of degree at most `deg/2`
    /// whose coefficients range over all elements of `f`.
    pub fn is_irreducible(&self, f: &FieldSpec) -> bool {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return false,
        };
        let size = f.order() as u64;
        for k in 1..=d / 2 {
            let total = size.pow(k as u32);
            for mut v in 0..total {
                let mut coeffs = Vec::with_capacity(k + 1);
                for _ in 0..k {
                    coeffs.push(FieldElement::from_raw((v % size) as u32));
                    v /= size;
                }
                coeffs.push(FieldElement::ONE);
                let cand = UniPoly { coeffs };
                if self.rem(&cand, f).expect("monic divisor").is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// All monic divisors, in increasing order of raw encoding per degree.
    pub fn monic_divisors(&self, f: &FieldSpec) -> Vec<UniPoly> {
        let d = match self.degree() {
            Some(d) => d,
            None => return Vec::new(),
        };
        let size = f.order() as u64;
        let mut out = Vec::new();
        for k in 0..=d {
            let total = size.pow(k as u32);
            for mut v in 0..total {
                let mut coeffs = Vec::with_capacity(k + 1);
                for _ in 0..k {
                    coeffs.push(FieldElement::from_raw((v % size) as u32));
                    v /= size;
                }
                coeffs.push(FieldElement::ONE);
                let cand = UniPoly { coeffs };
                if self.rem(&cand, f).expect("monic divisor").is_zero() {
                    out.push(cand);
                }
            }
        }
        out
    }
}

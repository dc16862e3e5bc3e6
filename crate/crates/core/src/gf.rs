//! Finite-field tower arithmetic `GF(p) ⊂ k' = GF(q) ⊂ k = GF(q^n)`.
//!
//! `k'` is `GF(p)[s]/(m1)` with `deg m1 = e`, and `k` is `k'[t]/(m2)` with
//! `deg m2 = n`. An element of `k` is stored as a packed integer whose base-`p`
//! digits are its coordinates: digit `j*e + l` is the coefficient of `s^l` in
//! the `t^j` coordinate. Elements of `k'` are exactly the packed values `< q`.
//!
//! Small fields (at most [`TABLE_LIMIT`] elements) get full operation tables so
//! that the row-reduction kernels in `falldeg` run on lookups; larger fields
//! fall back to tower arithmetic.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::upoly::UniPoly;

/// Fields with at most this many elements get lookup tables.
pub const TABLE_LIMIT: u32 = 256;

const MAX_ORDER: u64 = 1 << 24;

/// An element of `k`, packed as base-`p` coordinate digits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.0 == 1
    }

    /// The packed coordinate index.
    #[inline]
    pub fn raw(self) -> u32 {
        self.0
    }

    /// Unchecked constructor; see [`FieldSpec::element`] for the validated one.
    #[inline]
    pub fn from_raw(raw: u32) -> Self {
        FieldElement(raw)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

struct Tables {
    mul: Vec<FieldElement>,
    // only for odd p; characteristic 2 adds with xor
    add: Option<Vec<FieldElement>>,
    neg: Vec<FieldElement>,
    inv: Vec<FieldElement>,
    frob: Vec<FieldElement>,
}

/// Serialized field description: `{p, e, n, m1: [c0..ce], m2: [c0..cn]}`.
///
/// `m1` coefficients are in `GF(p)`; `m2` coefficients are elements of `k'`
/// written as their packed index (for `e = 1` this is just the residue).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpecJson {
    pub p: u32,
    pub e: usize,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m1: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m2: Option<Vec<u32>>,
}

/// A validated tower `GF(p) ⊂ k' ⊂ k` together with its Frobenius matrix.
pub struct FieldSpec {
    p: u32,
    e: usize,
    n: usize,
    q: u32,
    order: u32,
    m1: Vec<u32>,
    m2: Vec<FieldElement>,
    // frob[j] holds the k'-coordinates of (t^j)^q
    frob: Vec<Vec<FieldElement>>,
    tables: Option<Tables>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.e == other.e
            && self.n == other.n
            && self.m1 == other.m1
            && self.m2 == other.m2
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("n", &self.n)
            .field("m1", &self.m1)
            .field("m2", &self.m2.iter().map(|c| c.0).collect::<Vec<_>>())
            .finish()
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds and validates a field tower.
///
/// When a modulus is omitted the lexicographically least monic irreducible of
/// the right degree is used, comparing coefficient vectors from the top degree
/// down (equivalently, the smallest base-`p` / base-`q` integer encoding).
pub fn make_field(
    p: u32,
    e: usize,
    n: usize,
    m1: Option<&[u32]>,
    m2: Option<&[u32]>,
) -> Result<Arc<FieldSpec>> {
    if !is_prime(p) {
        return Err(Error::NonPrimeCharacteristic(p));
    }
    if e == 0 || n == 0 {
        return Err(Error::InvalidField("e and n must be positive".into()));
    }
    let order = (p as u64)
        .checked_pow((e * n) as u32)
        .filter(|&o| o <= MAX_ORDER)
        .ok_or_else(|| Error::InvalidField(format!("GF({p}^{}) is too large", e * n)))?;
    let q = (p as u64).pow(e as u32) as u32;
    let _ = order;

    let prime = FieldSpec::raw(p, 1, 1, vec![0, 1], vec![FieldElement::ZERO, FieldElement::ONE]);
    let m1 = match m1 {
        Some(c) => {
            let ok = c.len() == e + 1 && c[e] == 1 && c.iter().all(|&x| x < p);
            let poly = UniPoly::new(c.iter().map(|&x| FieldElement(x)).collect());
            if !ok || !poly.is_irreducible(&prime) {
                return Err(Error::ReducibleModulus { which: "m1" });
            }
            c.to_vec()
        }
        None => least_irreducible(&prime, e)
            .ok_or(Error::ReducibleModulus { which: "m1" })?
            .coeffs()
            .iter()
            .map(|c| c.0)
            .collect(),
    };

    let sub = FieldSpec::raw(p, e, 1, m1.clone(), vec![FieldElement::ZERO, FieldElement::ONE]);
    let m2: Vec<FieldElement> = match m2 {
        Some(c) => {
            let ok = c.len() == n + 1 && c[n] == 1 && c.iter().all(|&x| x < q);
            let poly = UniPoly::new(c.iter().map(|&x| FieldElement(x)).collect());
            if !ok || !poly.is_irreducible(&sub) {
                return Err(Error::ReducibleModulus { which: "m2" });
            }
            c.iter().map(|&x| FieldElement(x)).collect()
        }
        None => least_irreducible(&sub, n)
            .ok_or(Error::ReducibleModulus { which: "m2" })?
            .coeffs()
            .to_vec(),
    };
    Ok(Arc::new(FieldSpec::raw(p, e, n, m1, m2)))
}

/// Same as [`make_field`] from the serialized form.
pub fn make_field_from_json(spec: &FieldSpecJson) -> Result<Arc<FieldSpec>> {
    make_field(spec.p, spec.e, spec.n, spec.m1.as_deref(), spec.m2.as_deref())
}

fn least_irreducible(base: &FieldSpec, degree: usize) -> Option<UniPoly> {
    let size = base.order() as u64;
    let total = size.checked_pow(degree as u32)?;
    (0..total).find_map(|mut v| {
        let mut coeffs = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            coeffs.push(FieldElement((v % size) as u32));
            v /= size;
        }
        coeffs.push(FieldElement::ONE);
        let poly = UniPoly::new(coeffs);
        poly.is_irreducible(base).then_some(poly)
    })
}

impl FieldSpec {
    fn raw(p: u32, e: usize, n: usize, m1: Vec<u32>, m2: Vec<FieldElement>) -> FieldSpec {
        let q = p.pow(e as u32);
        let order = q.pow(n as u32);
        let mut spec = FieldSpec { p, e, n, q, order, m1, m2, frob: Vec::new(), tables: None };
        let t = spec.t();
        let mut frob = Vec::with_capacity(n);
        let mut tj = FieldElement::ONE;
        for _ in 0..n {
            let image = spec.pow_slow(tj, q as u64);
            frob.push(spec.kprime_coords(image));
            tj = spec.mul_slow(tj, t);
        }
        spec.frob = frob;
        if order <= TABLE_LIMIT {
            spec.tables = Some(spec.build_tables());
        }
        spec
    }

    fn build_tables(&self) -> Tables {
        let size = self.order as usize;
        let mut mul = vec![FieldElement::ZERO; size * size];
        for a in 0..size {
            for b in a..size {
                let c = self.mul_slow(FieldElement(a as u32), FieldElement(b as u32));
                mul[a * size + b] = c;
                mul[b * size + a] = c;
            }
        }
        let add = (self.p != 2).then(|| {
            let mut add = vec![FieldElement::ZERO; size * size];
            for a in 0..size {
                for b in 0..size {
                    add[a * size + b] = FieldElement(self.add_slow(a as u32, b as u32));
                }
            }
            add
        });
        let neg = (0..size).map(|a| FieldElement(self.neg_slow(a as u32))).collect();
        let mut inv = vec![FieldElement::ZERO; size];
        for a in 1..size {
            if inv[a].is_zero() {
                for b in 1..size {
                    if mul[a * size + b].is_one() {
                        inv[a] = FieldElement(b as u32);
                        inv[b] = FieldElement(a as u32);
                        break;
                    }
                }
            }
        }
        let frob = (0..size).map(|a| self.frobenius_once(FieldElement(a as u32))).collect();
        Tables { mul, add, neg, inv, frob }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `|k'|`.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// `|k| = q^n`.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn m1(&self) -> &[u32] {
        &self.m1
    }

    pub fn m2(&self) -> &[FieldElement] {
        &self.m2
    }

    pub fn to_json(&self) -> FieldSpecJson {
        FieldSpecJson {
            p: self.p,
            e: self.e,
            n: self.n,
            m1: Some(self.m1.clone()),
            m2: Some(self.m2.iter().map(|c| c.0).collect()),
        }
    }

    /// The subfield `k'` as a tower with `n = 1`.
    pub fn subfield(&self) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::raw(
            self.p,
            self.e,
            1,
            self.m1.clone(),
            vec![FieldElement::ZERO, FieldElement::ONE],
        ))
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The class of `t` in `k = k'[t]/(m2)`.
    pub fn t(&self) -> FieldElement {
        if self.n >= 2 {
            FieldElement(self.q)
        } else {
            self.neg_slow(self.m2[0].0).into()
        }
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn element(&self, raw: u32) -> Result<FieldElement> {
        if raw < self.order {
            Ok(FieldElement(raw))
        } else {
            Err(Error::InvalidInput(format!("{raw} is not an element of GF({})", self.order)))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    pub fn subfield_elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(0..self.order))
    }

    pub fn random_subfield<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(0..self.q))
    }

    #[inline]
    pub fn lies_in_subfield(&self, x: FieldElement) -> bool {
        x.0 < self.q
    }

    /// The `n` coordinates of `x` over `k'` in the basis `1, t, ..., t^{n-1}`.
    pub fn kprime_coords(&self, x: FieldElement) -> Vec<FieldElement> {
        let mut v = x.0;
        (0..self.n)
            .map(|_| {
                let c = v % self.q;
                v /= self.q;
                FieldElement(c)
            })
            .collect()
    }

    pub fn from_kprime_coords(&self, coords: &[FieldElement]) -> Result<FieldElement> {
        if coords.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "expected {} k'-coordinates, got {}",
                self.n,
                coords.len()
            )));
        }
        let mut acc = 0u32;
        for (i, c) in coords.iter().enumerate().rev() {
            if c.0 >= self.q {
                return Err(Error::CoordinateNotInField { index: i });
            }
            acc = acc * self.q + c.0;
        }
        Ok(FieldElement(acc))
    }

    /// Full coordinate vector: `n` rows of `e` residues mod `p`.
    pub fn coords(&self, x: FieldElement) -> Vec<Vec<u32>> {
        self.kprime_coords(x)
            .into_iter()
            .map(|c| self.digits(c.0, self.e))
            .collect()
    }

    pub fn from_coords(&self, coords: &[Vec<u32>]) -> Result<FieldElement> {
        if coords.len() != self.n || coords.iter().any(|c| c.len() != self.e) {
            return Err(Error::InvalidInput("coordinate shape does not match the field".into()));
        }
        let flat: Vec<u32> = coords.iter().flatten().copied().collect();
        self.from_flat_digits(&flat)
    }

    /// Flat little-endian digit vector of length `n*e`.
    pub fn flat_digits(&self, x: FieldElement) -> Vec<u32> {
        self.digits(x.0, self.n * self.e)
    }

    pub fn from_flat_digits(&self, digits: &[u32]) -> Result<FieldElement> {
        if digits.len() != self.n * self.e {
            return Err(Error::InvalidInput(format!(
                "expected {} coordinates, got {}",
                self.n * self.e,
                digits.len()
            )));
        }
        let mut acc = 0u32;
        for (i, &d) in digits.iter().enumerate().rev() {
            if d >= self.p {
                return Err(Error::CoordinateNotInField { index: i });
            }
            acc = acc * self.p + d;
        }
        Ok(FieldElement(acc))
    }

    fn digits(&self, mut v: u32, len: usize) -> Vec<u32> {
        (0..len)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    // ---- arithmetic -------------------------------------------------------

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        match &self.tables {
            Some(t) => t.add.as_ref().expect("odd tables")[(a.0 * self.order + b.0) as usize],
            None => FieldElement(self.add_slow(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        match &self.tables {
            Some(t) => t.neg[a.0 as usize],
            None => FieldElement(self.neg_slow(a.0)),
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.tables {
            Some(t) => t.mul[(a.0 * self.order + b.0) as usize],
            None => self.mul_slow(a, b),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => t.inv[a.0 as usize],
            None => self.pow_slow(a, self.order as u64 - 2),
        })
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, exp: u64) -> FieldElement {
        let mut base = a;
        let mut exp = exp;
        let mut acc = FieldElement::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `x^(q^i)`, computed through the precomputed Frobenius matrix.
    pub fn frobenius_q(&self, x: FieldElement, i: usize) -> FieldElement {
        let steps = i % self.n;
        let mut y = x;
        for _ in 0..steps {
            y = match &self.tables {
                Some(t) => t.frob[y.0 as usize],
                None => self.frobenius_once(y),
            };
        }
        y
    }

    /// `x^(q^i)` by repeated exponentiation; kept as a cross-check.
    pub fn frobenius_by_pow(&self, x: FieldElement, i: usize) -> FieldElement {
        (0..i).fold(x, |y, _| self.pow(y, self.q as u64))
    }

    /// The `n x n` matrix over `k'` of `x -> x^q` in the polynomial basis:
    /// column `j` holds the coordinates of `(t^j)^q`.
    pub fn frobenius_matrix(&self) -> Vec<Vec<FieldElement>> {
        (0..self.n)
            .map(|r| (0..self.n).map(|j| self.frob[j][r]).collect())
            .collect()
    }

    fn frobenius_once(&self, x: FieldElement) -> FieldElement {
        let coords = self.kprime_coords(x);
        let mut out = vec![0u32; self.n];
        for (j, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (r, slot) in out.iter_mut().enumerate() {
                let term = self.kp_mul(c.0, self.frob[j][r].0);
                *slot = self.add_slow(*slot, term);
            }
        }
        FieldElement(out.iter().rev().fold(0, |acc, &c| acc * self.q + c))
    }

    // ---- tower arithmetic without tables -----------------------------------

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let (mut r, mut w) = (0u32, 1u32);
        while a > 0 || b > 0 {
            r += ((a % self.p + b % self.p) % self.p) * w;
            a /= self.p;
            b /= self.p;
            if a > 0 || b > 0 {
                w *= self.p;
            }
        }
        r
    }

    fn neg_slow(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut a = a;
        let (mut r, mut w) = (0u32, 1u32);
        while a > 0 {
            r += ((self.p - a % self.p) % self.p) * w;
            a /= self.p;
            if a > 0 {
                w *= self.p;
            }
        }
        r
    }

    fn kp_mul(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let e = self.e;
        let p = self.p as u64;
        let da = self.digits(a, e);
        let db = self.digits(b, e);
        let mut conv = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                conv[i + j] = (conv[i + j] + x as u64 * y as u64) % p;
            }
        }
        for d in (e..2 * e - 1).rev() {
            let c = conv[d];
            if c == 0 {
                continue;
            }
            for r in 0..e {
                let sub = c * self.m1[r] as u64 % p;
                conv[d - e + r] = (conv[d - e + r] + p - sub) % p;
            }
            conv[d] = 0;
        }
        conv[..e].iter().rev().fold(0u32, |acc, &c| acc * self.p + c as u32)
    }

    fn mul_slow(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let n = self.n;
        if n == 1 {
            return FieldElement(self.kp_mul(a.0, b.0));
        }
        let ca = self.kprime_coords(a);
        let cb = self.kprime_coords(b);
        let mut conv = vec![0u32; 2 * n - 1];
        for (i, x) in ca.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in cb.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                conv[i + j] = self.add_slow(conv[i + j], self.kp_mul(x.0, y.0));
            }
        }
        for d in (n..2 * n - 1).rev() {
            let c = conv[d];
            if c == 0 {
                continue;
            }
            for r in 0..n {
                let term = self.kp_mul(c, self.m2[r].0);
                conv[d - n + r] = self.add_slow(conv[d - n + r], self.neg_slow(term));
            }
            conv[d] = 0;
        }
        FieldElement(conv[..n].iter().rev().fold(0u32, |acc, &c| acc * self.q + c))
    }

    fn pow_slow(&self, a: FieldElement, exp: u64) -> FieldElement {
        let mut base = a;
        let mut exp = exp;
        let mut acc = FieldElement::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            exp >>= 1;
        }
        acc
    }
}

impl From<u32> for FieldElement {
    fn from(v: u32) -> Self {
        FieldElement(v)
    }
}

/// The Moore matrix `Γ` of a basis: entry `(i, j)` is `α_j^(q^i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusMatrix {
    entries: Vec<Vec<FieldElement>>,
}

impl FrobeniusMatrix {
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn inverse(&self, field: &FieldSpec) -> Result<Vec<Vec<FieldElement>>> {
        linalg::inverse(field, &self.entries).ok_or(Error::NotABasis)
    }
}

/// Builds `Γ` for `basis` and checks that it is invertible.
pub fn moore_matrix(field: &FieldSpec, basis: &[FieldElement]) -> Result<FrobeniusMatrix> {
    let n = field.n();
    if basis.len() != n {
        return Err(Error::InvalidInput(format!(
            "a basis of k/k' has {n} elements, got {}",
            basis.len()
        )));
    }
    let entries: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| basis.iter().map(|&a| field.frobenius_q(a, i)).collect())
        .collect();
    if linalg::determinant(field, &entries).is_zero() {
        return Err(Error::NotABasis);
    }
    Ok(FrobeniusMatrix { entries })
}

/// The polynomial basis `1, t, ..., t^{n-1}`.
pub fn polynomial_basis(field: &FieldSpec) -> Vec<FieldElement> {
    let t = field.t();
    let mut out = Vec::with_capacity(field.n());
    let mut acc = FieldElement::ONE;
    for _ in 0..field.n() {
        out.push(acc);
        acc = field.mul(acc, t);
    }
    out
}

//! Sparse multivariate polynomials over `k` (or `k'`, stored inside `k`).
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is graded
//! reverse-lexicographic, so iteration is in a fixed degree-compatible order.

pub mod format;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};

/// Exponent vector. Ordered by grevlex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        MonomialOrder::GrevLex.cmp(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree-compatible monomial orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
    GrLex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        let by_degree = a.degree().cmp(&b.degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        match self {
            MonomialOrder::GrLex => a.0.cmp(&b.0),
            MonomialOrder::GrevLex => {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grevlex" => Ok(MonomialOrder::GrevLex),
            "grlex" => Ok(MonomialOrder::GrLex),
            other => Err(Error::Parse(format!("unknown monomial order {other:?}"))),
        }
    }
}

/// Total degree, with a distinguished value for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(u32),
}

impl Degree {
    pub fn at_most(self, i: u32) -> bool {
        match self {
            Degree::NegInf => true,
            Degree::Finite(d) => d <= i,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Which level of the tower the coefficients are meant to live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    K,
    KPrime,
}

struct RingInner {
    field: Arc<FieldSpec>,
    level: Level,
    vars: Vec<String>,
}

/// A polynomial ring over `k` or `k'` with named, ordered variables.
#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

impl Ring {
    pub fn new(field: Arc<FieldSpec>, level: Level, vars: Vec<String>) -> Result<Ring> {
        let mut seen = std::collections::HashSet::new();
        for v in &vars {
            if v.is_empty() || !seen.insert(v.as_str()) {
                return Err(Error::InvalidInput(format!("duplicate or empty variable name {v:?}")));
            }
        }
        Ok(Ring(Arc::new(RingInner { field, level, vars })))
    }

    /// Variables named `X0, X1, ...`.
    pub fn with_indexed_vars(field: Arc<FieldSpec>, level: Level, prefix: &str, n: usize) -> Ring {
        let vars = (0..n).map(|i| format!("{prefix}{i}")).collect();
        Ring::new(field, level, vars).expect("distinct names")
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.0.field
    }

    pub fn level(&self) -> Level {
        self.0.level
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn same_as(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.vars == other.0.vars && *self.0.field == *other.0.field)
    }

    pub fn zero(&self) -> MultiPoly {
        MultiPoly::zero(self)
    }

    pub fn one(&self) -> MultiPoly {
        MultiPoly::constant(self, FieldElement::ONE)
    }

    pub fn var(&self, i: usize) -> MultiPoly {
        MultiPoly::var(self, i)
    }

    /// Number of monomials of total degree at most `d`.
    pub fn dim_truncation(&self, d: u32) -> u64 {
        binomial(self.nvars() as u64 + d as u64, d as u64)
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({:?} over {:?}, {:?})", self.0.level, self.0.field, self.0.vars)
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone)]
pub struct MultiPoly {
    ring: Ring,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format::to_text(self))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format::to_text(self))
    }
}

impl MultiPoly {
    pub fn zero(ring: &Ring) -> Self {
        MultiPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Ring, c: FieldElement) -> Self {
        Self::monomial(ring, c, Monomial::one(ring.nvars()))
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring, FieldElement::ONE, Monomial::var(ring.nvars(), i))
    }

    pub fn monomial(ring: &Ring, c: FieldElement, m: Monomial) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { ring: ring.clone(), terms }
    }

    /// Sums the given terms; repeated monomials are combined.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, FieldElement)>,
    {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            if m.nvars() != ring.nvars() {
                return Err(Error::InvalidInput(format!(
                    "exponent vector has {} entries, ring has {} variables",
                    m.nvars(),
                    ring.nvars()
                )));
            }
            if c.raw() >= ring.field().order() {
                return Err(Error::InvalidInput(format!("coefficient {c:?} is not in the field")));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let f = self.ring.0.field.clone();
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> &FieldSpec {
        &self.ring.0.field
    }

    /// Terms in descending grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, FieldElement)> {
        self.terms.iter().rev().map(|(m, c)| (m, *c))
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn degree(&self) -> Degree {
        // the grevlex maximum has maximal total degree
        self.terms.keys().next_back().map_or(Degree::NegInf, |m| Degree::Finite(m.degree()))
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn leading(&self, order: MonomialOrder) -> Option<(&Monomial, FieldElement)> {
        match order {
            MonomialOrder::GrevLex => self.terms.iter().next_back().map(|(m, c)| (m, *c)),
            MonomialOrder::GrLex => {
                self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0)).map(|(m, c)| (m, *c))
            }
        }
    }

    /// True when every coefficient lies in `k'`.
    pub fn lies_in_subfield(&self) -> bool {
        let f = self.field();
        self.terms.values().all(|&c| f.lies_in_subfield(c))
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let f = self.field();
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let f = self.field();
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, &a)| (m.clone(), f.mul(a, c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let f = self.ring.0.field.clone();
        let mut out = Self::zero(&self.ring);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                out.add_term(a.mul(b), f.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, m: &Monomial, c: FieldElement) -> Self {
        let f = self.field();
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, &ca)| (a.mul(m), f.mul(ca, c))).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        let f = self.field();
        let mut acc = FieldElement::ZERO;
        for (m, &c) in &self.terms {
            let mut t = c;
            for (&x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = f.mul(t, f.pow(x, e as u64));
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }

    /// Substitutes `images[v]` for variable `v`; all images must share one ring.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() < self.ring.nvars() {
            let name = self.ring.vars()[images.len()].clone();
            return Err(Error::UnassignedVariable(name));
        }
        let target = images.first().map(|p| p.ring.clone()).unwrap_or_else(|| self.ring.clone());
        if images.iter().any(|p| !p.ring.same_as(&target)) {
            return Err(Error::RingMismatch);
        }
        // cache powers per variable
        let mut powers: Vec<Vec<MultiPoly>> = vec![vec![target.one()]; images.len()];
        let mut out = MultiPoly::zero(&target);
        for (m, &c) in self.terms.iter() {
            let mut t = MultiPoly::constant(&target, c);
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e as usize {
                    let next = powers[v].last().unwrap().mul(&images[v])?;
                    powers[v].push(next);
                }
                t = t.mul(&powers[v][e as usize])?;
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Substitution keyed by variable name.
    pub fn substitute_named(
        &self,
        target: &Ring,
        assignment: &BTreeMap<String, MultiPoly>,
    ) -> Result<MultiPoly> {
        let images = self
            .ring
            .vars()
            .iter()
            .map(|v| assignment.get(v).cloned().ok_or_else(|| Error::UnassignedVariable(v.clone())))
            .collect::<Result<Vec<_>>>()?;
        if images.is_empty() {
            let c = self.coeff(&Monomial::one(0));
            return Ok(MultiPoly::constant(target, c));
        }
        self.substitute(&images)
    }

    /// Acts by `x -> x^(q^i)` on every coefficient.
    pub fn apply_sigma(&self, i: usize) -> Self {
        let f = self.field();
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), f.frobenius_q(c, i))).collect(),
        }
    }

    /// Reduces modulo `x_v^a -> x_v^b` for each variable with a relation.
    /// `rel[v] = None` leaves that variable alone.
    pub fn normal_form_field_eqs(&self, rel: &[Option<(u32, u32)>]) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, &c) in &self.terms {
            let mut e = m.0.clone();
            for (v, r) in rel.iter().enumerate() {
                if let Some((a, b)) = *r {
                    debug_assert!(a > b);
                    if e[v] >= a {
                        let period = a - b;
                        e[v] = b + (e[v] - b) % period;
                    }
                }
            }
            out.add_term(Monomial(e), c);
        }
        out
    }

    /// Same relation `x^a -> x^b` on every variable.
    pub fn normal_form_uniform(&self, a: u32, b: u32) -> Self {
        self.normal_form_field_eqs(&vec![Some((a, b)); self.ring.nvars()])
    }

    /// Re-homes the polynomial into `target`, sending variable `v` to `map[v]`.
    pub fn rename_into(&self, target: &Ring, map: &[usize]) -> Self {
        let mut out = Self::zero(target);
        for (m, &c) in &self.terms {
            let mut e = vec![0u32; target.nvars()];
            for (v, &x) in m.0.iter().enumerate() {
                e[map[v]] += x;
            }
            out.add_term(Monomial(e), c);
        }
        out
    }

    pub fn random<R: Rng + ?Sized>(ring: &Ring, max_degree: u32, nterms: usize, rng: &mut R) -> Self {
        let f = ring.field().clone();
        let mut out = Self::zero(ring);
        for _ in 0..nterms {
            let d = rng.gen_range(0..=max_degree);
            let mut e = vec![0u32; ring.nvars()];
            if ring.nvars() > 0 {
                for _ in 0..d {
                    e[rng.gen_range(0..ring.nvars())] += 1;
                }
            }
            let c = match ring.level() {
                Level::K => f.random(rng),
                Level::KPrime => f.random_subfield(rng),
            };
            out.add_term(Monomial(e), c);
        }
        out
    }
}

/// A finite list of polynomials in one ring.
#[derive(Clone, Debug)]
pub struct PolySystem {
    ring: Ring,
    polys: Vec<MultiPoly>,
}

impl PolySystem {
    pub fn new(ring: &Ring, polys: Vec<MultiPoly>) -> Result<Self> {
        if polys.iter().any(|p| !p.ring.same_as(ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(PolySystem { ring: ring.clone(), polys })
    }

    pub fn empty(ring: &Ring) -> Self {
        PolySystem { ring: ring.clone(), polys: Vec::new() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn push(&mut self, p: MultiPoly) -> Result<()> {
        if !p.ring.same_as(&self.ring) {
            return Err(Error::RingMismatch);
        }
        self.polys.push(p);
        Ok(())
    }

    /// `deg F`: the maximum total degree, 0 for an empty or all-zero system.
    pub fn degree(&self) -> u32 {
        self.polys.iter().filter_map(|p| p.degree().finite()).max().unwrap_or(0)
    }

    /// Whether `point` is a common zero.
    pub fn vanishes_at(&self, point: &[FieldElement]) -> bool {
        self.polys.iter().all(|p| p.eval(point).is_zero())
    }
}

impl PartialEq for PolySystem {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.polys == other.polys
    }
}

//! Incremental computation of `V_{F,i}` for `i = 0, 1, 2, ...`.
//!
//! Columns are monomials in ascending order, appended one degree at a time.
//! Rows are sparse, fully reduced against the pivots that existed when they
//! were inserted, and keyed by their leading (highest) column.
//!
//! Closure only needs products by single variables: `R` is a domain, so any
//! `h·g` with `deg(hg) ≤ i` factors into steps `x·(...)` that each stay within
//! degree `i`. Rows of `V_{i-1}` of degree `≤ i-2` already have all such
//! products inside `V_{i-1}`, so moving from `i-1` to `i` only multiplies the
//! degree-`(i-1)` rows, adds the degree-`i` generators, and then closes over
//! any new rows of degree `< i` (the falls).

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::mono::{Codec, Mono};
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::poly::{Degree, Monomial, MonomialOrder, MultiPoly, PolySystem, Ring};

const NONE: u32 = u32::MAX;

type Row = Vec<(u32, FieldElement)>;

pub struct SpanEngine {
    ring: Ring,
    field: Arc<FieldSpec>,
    codec: Codec,
    order: MonomialOrder,
    degree: Option<u32>,
    cols: Vec<Mono>,
    col_index: HashMap<Mono, u32>,
    // deg_start[d] is the first column of degree d; one extra sentinel entry
    deg_start: Vec<usize>,
    mul: Vec<u32>,
    rows: Vec<Row>,
    pivot_row: Vec<u32>,
    rows_by_degree: Vec<usize>,
    gens: Vec<Vec<(Mono, FieldElement)>>,
    acc: Vec<FieldElement>,
}

impl SpanEngine {
    pub fn new(system: &PolySystem, order: MonomialOrder) -> Result<SpanEngine> {
        let ring = system.ring().clone();
        let codec = Codec::new(ring.nvars(), order)?;
        let mut gens = Vec::new();
        for p in system.polys() {
            if p.is_zero() {
                continue;
            }
            let mut t = p
                .terms()
                .map(|(m, c)| Ok((codec.encode(m.exps())?, c)))
                .collect::<Result<Vec<_>>>()?;
            t.sort_by_key(|x| x.0);
            gens.push(t);
        }
        gens.sort_by_key(|t| t.last().expect("nonzero").0.degree());
        Ok(SpanEngine {
            field: ring.field().clone(),
            ring,
            codec,
            order,
            degree: None,
            cols: Vec::new(),
            col_index: HashMap::new(),
            deg_start: vec![0],
            mul: Vec::new(),
            rows: Vec::new(),
            pivot_row: Vec::new(),
            rows_by_degree: Vec::new(),
            gens,
            acc: Vec::new(),
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// The degree `D` such that the engine currently holds `V_{F,D}`.
    pub fn degree(&self) -> Option<u32> {
        self.degree
    }

    /// `dim V_{F,D}`.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// `dim(V_{F,D} ∩ R_{≤j})`.
    pub fn dim_at_most(&self, j: u32) -> usize {
        self.rows_by_degree.iter().take(j as usize + 1).sum()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    /// Advances from `V_{F,D-1}` to `V_{F,D}`.
    pub fn step(&mut self) -> Result<()> {
        let d = self.degree.map_or(0, |d| d + 1);
        self.extend_columns(d)?;
        self.rows_by_degree.push(0);

        let nvars = self.codec.nvars();
        let mut queue: VecDeque<u32> = VecDeque::new();
        if d > 0 {
            for (r, row) in self.rows.iter().enumerate() {
                if self.cols[row.last().expect("nonempty").0 as usize].degree() == d - 1 {
                    queue.push_back(r as u32);
                }
            }
        }

        let gens: Vec<Row> = self
            .gens
            .iter()
            .filter(|g| g.last().expect("nonzero").0.degree() == d)
            .map(|g| g.iter().map(|&(m, c)| (self.col_index[&m], c)).collect())
            .collect();
        for g in gens {
            if let Some(r) = self.insert(g) {
                if self.row_degree(r) < d {
                    queue.push_back(r);
                }
            }
        }

        while let Some(r) = queue.pop_front() {
            if self.row_degree(r) + 1 > d {
                continue;
            }
            for v in 0..nvars {
                let product: Row = self.rows[r as usize]
                    .iter()
                    .map(|&(c, a)| (self.mul[c as usize * nvars + v], a))
                    .collect();
                if let Some(new) = self.insert(product) {
                    if self.row_degree(new) < d {
                        queue.push_back(new);
                    }
                }
            }
        }
        self.degree = Some(d);
        Ok(())
    }

    /// Runs until the engine holds `V_{F,i}`.
    pub fn advance_to(&mut self, i: u32) -> Result<()> {
        while self.degree.is_none_or(|d| d < i) {
            self.step()?;
        }
        Ok(())
    }

    fn row_degree(&self, r: u32) -> u32 {
        let lead = self.rows[r as usize].last().expect("nonempty").0;
        self.cols[lead as usize].degree()
    }

    fn extend_columns(&mut self, d: u32) -> Result<()> {
        let fresh = self.codec.monomials_of_degree(d);
        let start = self.cols.len();
        for (k, m) in fresh.iter().enumerate() {
            self.col_index.insert(*m, (start + k) as u32);
        }
        self.cols.extend(fresh);
        self.deg_start.push(self.cols.len());
        self.pivot_row.resize(self.cols.len(), NONE);
        self.acc.resize(self.cols.len(), FieldElement::ZERO);
        // products of degree-(d-1) columns now exist
        let nvars = self.codec.nvars();
        self.mul.resize(start * nvars, NONE);
        if d > 0 {
            let lo = self.deg_start[d as usize - 1];
            for c in lo..start {
                for v in 0..nvars {
                    let prod = self.codec.mul_var(self.cols[c], v);
                    self.mul[c * nvars + v] = *self
                        .col_index
                        .get(&prod)
                        .ok_or_else(|| Error::InvalidInput("column enumeration gap".into()))?;
                }
            }
        }
        Ok(())
    }

    /// Reduces `row` (ascending columns) and inserts it if nonzero.
    fn insert(&mut self, row: Row) -> Option<u32> {
        let reduced = self.reduce(&row)?;
        let lead = reduced.last().expect("nonempty").0;
        let r = self.rows.len() as u32;
        self.pivot_row[lead as usize] = r;
        let deg = self.cols[lead as usize].degree() as usize;
        self.rows_by_degree[deg] += 1;
        self.rows.push(reduced);
        Some(r)
    }

    fn reduce(&mut self, row: &[(u32, FieldElement)]) -> Option<Row> {
        let f = &*self.field;
        let top = row.last()?.0 as usize;
        for &(c, a) in row {
            self.acc[c as usize] = f.add(self.acc[c as usize], a);
        }
        let mut out: Row = Vec::new();
        for c in (0..=top).rev() {
            let a = self.acc[c];
            if a.is_zero() {
                continue;
            }
            self.acc[c] = FieldElement::ZERO;
            let p = self.pivot_row[c];
            if p == NONE {
                out.push((c as u32, a));
                continue;
            }
            let pr = &self.rows[p as usize];
            let neg = f.neg(a);
            for &(cc, b) in &pr[..pr.len() - 1] {
                let slot = &mut self.acc[cc as usize];
                *slot = f.add(*slot, f.mul(neg, b));
            }
        }
        if out.is_empty() {
            return None;
        }
        out.reverse();
        let inv = f.inv(out.last().expect("nonempty").1).expect("nonzero");
        for e in out.iter_mut() {
            e.1 = f.mul(e.1, inv);
        }
        Some(out)
    }

    /// Snapshot of the current space in reduced row-echelon form.
    pub fn snapshot(&self) -> DegreeSpan {
        let f = &*self.field;
        let mut order: Vec<u32> = (0..self.rows.len() as u32).collect();
        order.sort_by_key(|&r| self.rows[r as usize].last().expect("nonempty").0);
        let mut rref: Vec<Row> = Vec::with_capacity(order.len());
        let mut pivot_at: HashMap<u32, usize> = HashMap::new();
        let mut acc = vec![FieldElement::ZERO; self.cols.len()];
        for &r in &order {
            let row = &self.rows[r as usize];
            let lead = row.last().expect("nonempty").0;
            for &(c, a) in row {
                acc[c as usize] = a;
            }
            let mut out: Row = Vec::new();
            for c in (0..=lead as usize).rev() {
                let a = acc[c];
                if a.is_zero() {
                    continue;
                }
                acc[c] = FieldElement::ZERO;
                match pivot_at.get(&(c as u32)) {
                    Some(&k) if c as u32 != lead => {
                        let neg = f.neg(a);
                        let pr = &rref[k];
                        for &(cc, b) in &pr[..pr.len() - 1] {
                            acc[cc as usize] = f.add(acc[cc as usize], f.mul(neg, b));
                        }
                    }
                    _ => out.push((c as u32, a)),
                }
            }
            out.reverse();
            pivot_at.insert(lead, rref.len());
            rref.push(out);
        }
        DegreeSpan {
            ring: self.ring.clone(),
            order: self.order,
            degree_cap: self.degree.unwrap_or(0),
            monomials: self.cols.iter().map(|&m| Monomial::new(self.codec.decode(m))).collect(),
            col_index: self.col_index.clone(),
            codec: self.codec,
            basis: rref,
        }
    }
}

/// Reduced row-echelon basis of `V_{F,i}` over the monomials of degree `≤ i`.
#[derive(Clone)]
pub struct DegreeSpan {
    ring: Ring,
    order: MonomialOrder,
    degree_cap: u32,
    monomials: Vec<Monomial>,
    col_index: HashMap<Mono, u32>,
    codec: Codec,
    basis: Vec<Row>,
}

impl std::fmt::Debug for DegreeSpan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DegreeSpan")
            .field("degree_cap", &self.degree_cap)
            .field("columns", &self.monomials.len())
            .field("dim", &self.basis.len())
            .finish()
    }
}

impl DegreeSpan {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    /// Column enumeration, ascending in the monomial order.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Sparse rows `(column, coefficient)`; pivots strictly increase and are 1.
    pub fn rows(&self) -> &[Vec<(u32, FieldElement)>] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<u32> {
        self.basis.iter().map(|r| r.last().expect("nonempty").0).collect()
    }

    pub fn dense_rows(&self) -> Vec<Vec<FieldElement>> {
        self.basis
            .iter()
            .map(|r| {
                let mut v = vec![FieldElement::ZERO; self.monomials.len()];
                for &(c, a) in r {
                    v[c as usize] = a;
                }
                v
            })
            .collect()
    }

    pub fn row_poly(&self, k: usize) -> MultiPoly {
        MultiPoly::from_terms(
            &self.ring,
            self.basis[k].iter().map(|&(c, a)| (self.monomials[c as usize].clone(), a)),
        )
        .expect("columns are ring monomials")
    }

    pub fn polys(&self) -> Vec<MultiPoly> {
        (0..self.basis.len()).map(|k| self.row_poly(k)).collect()
    }

    /// `dim(V ∩ R_{≤j})`.
    pub fn dim_at_most(&self, j: u32) -> usize {
        self.basis
            .iter()
            .filter(|r| self.monomials[r.last().expect("nonempty").0 as usize].degree() <= j)
            .count()
    }

    /// Remainder of `p` after reduction by the basis.
    pub fn reduce(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if !p.ring().same_as(&self.ring) {
            return Err(Error::RingMismatch);
        }
        if let Degree::Finite(d) = p.degree() {
            if d > self.degree_cap {
                return Err(Error::DegreeTooHigh { degree: d, cap: self.degree_cap });
            }
        }
        let f = self.ring.field().clone();
        let mut acc = vec![FieldElement::ZERO; self.monomials.len()];
        for (m, c) in p.terms() {
            let col = self.col_index[&self.codec.encode(m.exps())?];
            acc[col as usize] = c;
        }
        let by_pivot: HashMap<u32, usize> =
            self.basis.iter().enumerate().map(|(k, r)| (r.last().expect("nonempty").0, k)).collect();
        for c in (0..acc.len()).rev() {
            let a = acc[c];
            if a.is_zero() {
                continue;
            }
            if let Some(&k) = by_pivot.get(&(c as u32)) {
                let neg = f.neg(a);
                for &(cc, b) in &self.basis[k] {
                    acc[cc as usize] = f.add(acc[cc as usize], f.mul(neg, b));
                }
            }
        }
        MultiPoly::from_terms(
            &self.ring,
            acc.iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(c, &a)| (self.monomials[c].clone(), a)),
        )
    }

    pub fn contains(&self, p: &MultiPoly) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }
}

/// `V_{F,i}` under the grevlex column order.
pub fn span_closure(system: &PolySystem, i: u32) -> Result<DegreeSpan> {
    span_closure_with_order(system, i, MonomialOrder::GrevLex)
}

pub fn span_closure_with_order(
    system: &PolySystem,
    i: u32,
    order: MonomialOrder,
) -> Result<DegreeSpan> {
    let mut engine = SpanEngine::new(system, order)?;
    engine.advance_to(i)?;
    Ok(engine.snapshot())
}

/// `f ≡_i g (mod F)`.
pub fn equiv_mod(f: &MultiPoly, g: &MultiPoly, i: u32, system: &PolySystem) -> Result<bool> {
    let diff = f.sub(g)?;
    if let Degree::Finite(d) = diff.degree() {
        if d > i {
            return Err(Error::DegreeTooHigh { degree: d, cap: i });
        }
    }
    if diff.is_zero() {
        return Ok(true);
    }
    span_closure(system, i)?.contains(&diff)
}

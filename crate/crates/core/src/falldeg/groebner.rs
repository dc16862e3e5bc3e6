//! A small Buchberger with the Gebauer–Möller pair update.
//!
//! Only used as an oracle: ideal membership and `dim(I ∩ R_{≤j})` for
//! certifying last-fall-degree computations.

use std::collections::BTreeMap;

use super::mono::{Codec, Mono};
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::poly::{Monomial, MonomialOrder, MultiPoly, PolySystem, Ring};

pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;

/// Terms sorted by descending monomial.
type Terms = Vec<(Mono, FieldElement)>;

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    gens: Vec<MultiPoly>,
    leads: Vec<Vec<u32>>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Reduced basis, sorted by ascending leading monomial.
    pub fn gens(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn leading_monomials(&self) -> &[Vec<u32>] {
        &self.leads
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.leads.iter().any(|m| m.iter().all(|&e| e == 0))
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// Largest total degree among the basis elements (0 when empty).
    pub fn max_degree(&self) -> u32 {
        self.gens.iter().filter_map(|g| g.degree().finite()).max().unwrap_or(0)
    }

    pub fn is_standard(&self, exps: &[u32]) -> bool {
        !self.leads.iter().any(|l| l.iter().zip(exps).all(|(a, b)| a <= b))
    }

    pub fn normal_form(&self, f: &MultiPoly) -> Result<MultiPoly> {
        if !f.ring().same_as(&self.ring) {
            return Err(Error::RingMismatch);
        }
        let codec = Codec::new(self.ring.nvars(), self.order)?;
        let field = self.ring.field().clone();
        let basis: Vec<Terms> =
            self.gens.iter().map(|g| to_terms(&codec, g)).collect::<Result<_>>()?;
        let refs: Vec<&Terms> = basis.iter().collect();
        let nf = reduce_full_refs(&codec, &field, &to_terms(&codec, f)?, &refs);
        Ok(from_terms(&codec, &self.ring, &nf))
    }

    pub fn contains(&self, f: &MultiPoly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Number of standard monomials of degree at most `j`.
    pub fn standard_count(&self, j: u32) -> u64 {
        if self.is_unit_ideal() {
            return 0;
        }
        let codec = Codec::new(self.ring.nvars(), self.order).expect("checked at construction");
        let leads: Vec<Mono> =
            self.leads.iter().map(|l| codec.encode(l).expect("bounded")).collect();
        let mut count = 0;
        for d in 0..=j {
            for m in codec.monomials_of_degree(d) {
                if !leads.iter().any(|&l| codec.divides(l, m)) {
                    count += 1;
                }
            }
        }
        count
    }
}

/// `dim_k(I ∩ R_{≤j})` read off from the standard monomials.
pub fn ideal_truncation_dim(g: &GroebnerBasis, j: u32) -> u64 {
    g.ring.dim_truncation(j) - g.standard_count(j)
}

pub fn groebner_toy(f: &PolySystem) -> Result<GroebnerBasis> {
    groebner_with(f, MonomialOrder::GrevLex, DEFAULT_STEP_BUDGET)
}

pub fn groebner_with(f: &PolySystem, order: MonomialOrder, budget: usize) -> Result<GroebnerBasis> {
    let ring = f.ring().clone();
    let codec = Codec::new(ring.nvars(), order)?;
    let field = ring.field().clone();
    let mut st = State { codec, polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };

    for p in f.polys() {
        let t = to_terms(&codec, p)?;
        if t.is_empty() {
            continue;
        }
        let t = make_monic(&field, t);
        if t[0].0.degree() == 0 {
            return Ok(unit_basis(&ring, order));
        }
        st.update(t);
    }

    let mut steps = 0usize;
    while !st.pairs.is_empty() {
        steps += 1;
        if steps > budget {
            return Err(Error::StepBudgetExceeded(budget));
        }
        // normal selection strategy: smallest lcm first
        let (pos, _) = st
            .pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| (p.lcm, p.i, p.j))
            .expect("nonempty");
        let pair = st.pairs.swap_remove(pos);
        let s = spoly(&codec, &field, &st.polys[pair.i], &st.polys[pair.j]);
        let basis: Vec<&Terms> =
            st.active.iter().enumerate().filter(|(_, &a)| a).map(|(k, _)| &st.polys[k]).collect();
        let h = reduce_full_refs(&codec, &field, &s, &basis);
        if h.is_empty() {
            continue;
        }
        let h = make_monic(&field, h);
        if h[0].0.degree() == 0 {
            return Ok(unit_basis(&ring, order));
        }
        st.update(h);
    }

    // minimalise and interreduce
    let mut minimal: Vec<Terms> = Vec::new();
    let mut active: Vec<&Terms> =
        st.active.iter().enumerate().filter(|(_, &a)| a).map(|(k, _)| &st.polys[k]).collect();
    active.sort_by_key(|t| t[0].0);
    for (k, t) in active.iter().enumerate() {
        let lead = t[0].0;
        let redundant = active.iter().enumerate().any(|(l, u)| {
            l != k && codec.divides(u[0].0, lead) && (u[0].0 != lead || l < k)
        });
        if !redundant {
            minimal.push((*t).clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Terms> =
            minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, t)| t).collect();
        let head = minimal[k][0];
        let tail = minimal[k][1..].to_vec();
        let mut r = vec![head];
        r.extend(reduce_full_refs(&codec, &field, &tail, &others));
        reduced.push(r);
    }
    reduced.sort_by_key(|t| t[0].0);
    let leads = reduced.iter().map(|t| codec.decode(t[0].0)).collect();
    let gens = reduced.iter().map(|t| from_terms(&codec, &ring, t)).collect();
    Ok(GroebnerBasis { ring, order, gens, leads })
}

fn unit_basis(ring: &Ring, order: MonomialOrder) -> GroebnerBasis {
    GroebnerBasis {
        ring: ring.clone(),
        order,
        gens: vec![ring.one()],
        leads: vec![vec![0; ring.nvars()]],
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
}

struct State {
    codec: Codec,
    polys: Vec<Terms>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State {
    fn lead(&self, k: usize) -> Mono {
        self.polys[k][0].0
    }

    fn update(&mut self, h: Terms) {
        let c = &self.codec;
        let hl = h[0].0;
        let hk = self.polys.len();
        self.polys.push(h);
        self.active.push(true);

        let cands: Vec<(usize, Mono)> = (0..hk)
            .filter(|&g| self.active[g])
            .map(|g| (g, c.lcm(hl, self.lead(g))))
            .collect();
        let mut kept: Vec<(usize, Mono)> = Vec::new();
        for (idx, &(g1, l1)) in cands.iter().enumerate() {
            if c.coprime(hl, self.lead(g1)) {
                kept.push((g1, l1));
                continue;
            }
            let dominated = cands[idx + 1..].iter().chain(kept.iter()).any(|&(_, l2)| c.divides(l2, l1));
            if !dominated {
                kept.push((g1, l1));
            }
        }
        let fresh: Vec<Pair> = kept
            .into_iter()
            .filter(|&(g, _)| !c.coprime(hl, self.lead(g)))
            .map(|(g, l)| Pair { i: g, j: hk, lcm: l })
            .collect();

        let polys = &self.polys;
        self.pairs.retain(|p| {
            let l = p.lcm;
            !(c.divides(hl, l)
                && c.lcm(polys[p.i][0].0, hl) != l
                && c.lcm(hl, polys[p.j][0].0) != l)
        });
        self.pairs.extend(fresh);

        for g in 0..hk {
            if self.active[g] && c.divides(hl, self.lead(g)) {
                self.active[g] = false;
            }
        }
    }
}

fn make_monic(field: &FieldSpec, t: Terms) -> Terms {
    let inv = field.inv(t[0].1).expect("nonzero leading coefficient");
    t.into_iter().map(|(m, c)| (m, field.mul(c, inv))).collect()
}

fn spoly(codec: &Codec, field: &FieldSpec, a: &Terms, b: &Terms) -> Terms {
    let l = codec.lcm(a[0].0, b[0].0);
    let ma = codec.div(l, a[0].0);
    let mb = codec.div(l, b[0].0);
    let mut acc: BTreeMap<Mono, FieldElement> = BTreeMap::new();
    for &(m, c) in &a[1..] {
        add_into(field, &mut acc, codec.mul(m, ma), c);
    }
    for &(m, c) in &b[1..] {
        add_into(field, &mut acc, codec.mul(m, mb), field.neg(c));
    }
    acc.into_iter().rev().collect()
}

fn add_into(field: &FieldSpec, acc: &mut BTreeMap<Mono, FieldElement>, m: Mono, c: FieldElement) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(m).or_insert(FieldElement::ZERO);
    *e = field.add(*e, c);
    if e.is_zero() {
        acc.remove(&m);
    }
}

/// Full normal form of `f` against monic `basis`.
fn reduce_full_refs(codec: &Codec, field: &FieldSpec, f: &Terms, basis: &[&Terms]) -> Terms {
    let mut acc: BTreeMap<Mono, FieldElement> = f.iter().copied().collect();
    let mut rem: Terms = Vec::new();
    while let Some((&m, &c)) = acc.iter().next_back() {
        acc.remove(&m);
        match basis.iter().find(|g| codec.divides(g[0].0, m)) {
            Some(g) => {
                let q = codec.div(m, g[0].0);
                let neg = field.neg(c);
                for &(gm, gc) in &g[1..] {
                    add_into(field, &mut acc, codec.mul(gm, q), field.mul(neg, gc));
                }
            }
            None => rem.push((m, c)),
        }
    }
    rem
}

pub(crate) fn to_terms(codec: &Codec, p: &MultiPoly) -> Result<Terms> {
    let mut t = p
        .terms()
        .map(|(m, c)| Ok((codec.encode(m.exps())?, c)))
        .collect::<Result<Terms>>()?;
    t.sort_by_key(|a| std::cmp::Reverse(a.0));
    Ok(t)
}

pub(crate) fn from_terms(codec: &Codec, ring: &Ring, t: &[(Mono, FieldElement)]) -> MultiPoly {
    MultiPoly::from_terms(ring, t.iter().map(|&(m, c)| (Monomial::new(codec.decode(m)), c)))
        .expect("terms decoded in the ring")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::poly::Level;

    fn ring2(p: u32, n: usize, nvars: usize) -> Ring {
        let f = make_field(p, 1, n, None, None).unwrap();
        Ring::with_indexed_vars(f, Level::K, "X", nvars)
    }

    #[test]
    fn single_variable() {
        let r = ring2(2, 1, 2);
        let sys = PolySystem::new(&r, vec![r.var(0)]).unwrap();
        let g = groebner_toy(&sys).unwrap();
        assert_eq!(g.gens(), &[r.var(0)]);
        assert_eq!(ideal_truncation_dim(&g, 1), 1);
    }

    #[test]
    fn unit_ideal() {
        // X0^2, X0 X1 + 1: X1*X0^2 - X0*(X0 X1 + 1) = -X0, then X0*X1 + 1 reduces to 1
        let r = ring2(2, 1, 2);
        let a = r.var(0).pow(2);
        let b = r.var(0).mul(&r.var(1)).unwrap().add(&r.one()).unwrap();
        let g = groebner_toy(&PolySystem::new(&r, vec![a, b]).unwrap()).unwrap();
        assert!(g.is_unit_ideal());
        assert_eq!(ideal_truncation_dim(&g, 0), 1);
    }

    #[test]
    fn reduced_basis_property() {
        let r = ring2(3, 1, 3);
        let x = |i| r.var(i);
        let f1 = x(0).pow(2).add(&x(1)).unwrap();
        let f2 = x(1).mul(&x(2)).unwrap().sub(&x(0)).unwrap();
        let sys = PolySystem::new(&r, vec![f1.clone(), f2.clone()]).unwrap();
        for order in [MonomialOrder::GrevLex, MonomialOrder::GrLex] {
            let g = groebner_with(&sys, order, DEFAULT_STEP_BUDGET).unwrap();
            assert!(g.contains(&f1).unwrap());
            assert!(g.contains(&f2).unwrap());
            assert!(!g.contains(&x(0)).unwrap());
            let leads = g.leading_monomials();
            for (a, la) in leads.iter().enumerate() {
                for (b, lb) in leads.iter().enumerate() {
                    if a != b {
                        assert!(!la.iter().zip(lb).all(|(u, v)| u <= v));
                    }
                }
            }
        }
    }
}

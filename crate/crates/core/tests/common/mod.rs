//! Seeded property checkers shared by the property suites and the acceptance run.
//! Each returns `Err(description)` on the first counterexample.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weil_core::descent::{
    build_fprime1, build_g1, build_g2, weil_descend, DescentContext,
};
use weil_core::falldeg::{
    equiv_mod, groebner_toy, last_fall_degree_with, span_closure, FallOptions,
};
use weil_core::gf::{make_field, moore_matrix, FieldElement, FieldSpec};
use weil_core::harness::{gbar_system, gen_random_system};
use weil_core::linsys::{
    brute_force_solve, reducibility_check, solve_structured, InvariantSubspace, LinearizedPoly,
    LinearizedSystem, SearchOptions,
};
use weil_core::poly::{Level, MonomialOrder, MultiPoly, PolySystem, Ring};
use weil_core::upoly::UniPoly;
use weil_core::Error;

pub type Check = Result<(), String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every tower with `q^n <= 64` (and `n >= 2` where that fits).
pub const SMALL_FIELDS: &[(u32, usize, usize)] = &[
    (2, 1, 2),
    (2, 1, 3),
    (2, 1, 4),
    (2, 1, 5),
    (2, 1, 6),
    (3, 1, 2),
    (3, 1, 3),
    (5, 1, 2),
    (7, 1, 2),
    (2, 2, 2),
    (2, 2, 3),
    (2, 3, 2),
];

pub fn field(p: u32, e: usize, n: usize) -> Arc<FieldSpec> {
    make_field(p, e, n, None, None).expect("valid tower")
}

fn pick<'a, T, R: Rng>(items: &'a [T], rng: &mut R) -> &'a T {
    &items[rng.gen_range(0..items.len())]
}

// ---------------------------------------------------------------- linear algebra

/// Rank over `f`, plain Gaussian elimination.
pub fn rank(f: &FieldSpec, rows: &[Vec<FieldElement>]) -> usize {
    independent(f, rows).len()
}

/// Reduced copies of an independent subset spanning the same space.
fn independent(f: &FieldSpec, rows: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
    let mut basis: Vec<(usize, Vec<FieldElement>)> = Vec::new();
    for r in rows {
        let mut v = r.clone();
        for (p, b) in &basis {
            let c = v[*p];
            if !c.is_zero() {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            let inv = f.inv(v[p]).unwrap();
            for x in v.iter_mut() {
                *x = f.mul(*x, inv);
            }
            for (_, b) in basis.iter_mut() {
                let c = b[p];
                if !c.is_zero() {
                    for (x, &y) in b.iter_mut().zip(&v) {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
            basis.push((p, v));
        }
    }
    basis.into_iter().map(|(_, v)| v).collect()
}

// ---------------------------------------------------------------- gf

pub fn frobenius_composition(p: u32, e: usize, n: usize) -> Check {
    let f = field(p, e, n);
    let q = f.q() as u64;
    for x in f.elements() {
        let mut iter = x;
        for i in 0..=n {
            let direct = f.pow(x, q.pow(i as u32));
            if f.frobenius_q(x, i) != direct || iter != direct {
                return Err(format!("GF({p}^{e})^{n}: frobenius_q({x:?}, {i}) disagrees with x^(q^{i})"));
            }
            iter = f.frobenius_q(iter, 1);
        }
    }
    Ok(())
}

pub fn frobenius_is_ring_map(p: u32, e: usize, n: usize) -> Check {
    let f = field(p, e, n);
    let els: Vec<_> = f.elements().collect();
    for i in 0..n {
        for &x in &els {
            for &y in &els {
                let fx = f.frobenius_q(x, i);
                let fy = f.frobenius_q(y, i);
                if f.frobenius_q(f.add(x, y), i) != f.add(fx, fy) || f.frobenius_q(f.mul(x, y), i) != f.mul(fx, fy) {
                    return Err(format!("GF({p}^{e})^{n}: frobenius_q not a ring map at i={i}"));
                }
            }
        }
    }
    Ok(())
}

fn kprime_independent(f: &FieldSpec, tuple: &[FieldElement]) -> bool {
    // coordinate vectors over k' embedded in k
    let rows: Vec<Vec<FieldElement>> = tuple.iter().map(|&a| f.kprime_coords(a)).collect();
    rank(f, &rows) == tuple.len()
}

pub fn moore_exhaustive_gf4() -> Check {
    let f = field(2, 1, 2);
    let els: Vec<_> = f.elements().collect();
    for &a in &els {
        for &b in &els {
            let ok = moore_matrix(&f, &[a, b]).is_ok();
            if ok != kprime_independent(&f, &[a, b]) {
                return Err(format!("moore_matrix invertibility wrong for ({a:?}, {b:?})"));
            }
        }
    }
    Ok(())
}

pub fn moore_random(seed: u64) -> Check {
    let mut r = rng(seed);
    let &(p, e, n) = pick(SMALL_FIELDS, &mut r);
    let f = field(p, e, n);
    for _ in 0..20 {
        let tuple: Vec<_> = (0..n)
            .map(|_| if r.gen_bool(0.3) { f.random_subfield(&mut r) } else { f.random(&mut r) })
            .collect();
        if moore_matrix(&f, &tuple).is_ok() != kprime_independent(&f, &tuple) {
            return Err(format!("GF({p}^{e})^{n}: moore_matrix invertibility wrong for {tuple:?}"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- poly

fn random_ring<R: Rng>(r: &mut R, max_vars: usize) -> Ring {
    let &(p, e, n) = pick(&[(2, 1, 2), (2, 1, 3), (3, 1, 2), (5, 1, 1), (2, 2, 2)], r);
    let nv = r.gen_range(1..=max_vars);
    Ring::with_indexed_vars(field(p, e, n), Level::K, "X", nv)
}

fn nonzero_random<R: Rng>(ring: &Ring, deg: u32, terms: usize, r: &mut R) -> MultiPoly {
    loop {
        let p = MultiPoly::random(ring, deg, terms, r);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn degree_additive(seed: u64) -> Check {
    let mut r = rng(seed);
    let ring = random_ring(&mut r, 4);
    for _ in 0..50 {
        let a = nonzero_random(&ring, 4, 5, &mut r);
        let b = nonzero_random(&ring, 4, 5, &mut r);
        let ab = a.mul(&b).map_err(|e| e.to_string())?;
        let (da, db, dab) = (a.degree().finite(), b.degree().finite(), ab.degree().finite());
        if dab != Some(da.unwrap() + db.unwrap()) {
            return Err(format!("deg({}) + deg({}) != deg of product", da.unwrap(), db.unwrap()));
        }
    }
    Ok(())
}

pub fn substitute_homomorphism(seed: u64) -> Check {
    let mut r = rng(seed);
    let ring = random_ring(&mut r, 3);
    let target = Ring::with_indexed_vars(ring.field().clone(), Level::K, "Y", r.gen_range(1..=3));
    let images: Vec<_> = (0..ring.nvars()).map(|_| MultiPoly::random(&target, 2, 3, &mut r)).collect();
    let e = |x: weil_core::Error| x.to_string();
    for _ in 0..10 {
        let a = MultiPoly::random(&ring, 3, 4, &mut r);
        let b = MultiPoly::random(&ring, 3, 4, &mut r);
        let (sa, sb) = (a.substitute(&images).map_err(e)?, b.substitute(&images).map_err(e)?);
        if a.add(&b).map_err(e)?.substitute(&images).map_err(e)? != sa.add(&sb).map_err(e)? {
            return Err("substitute does not preserve sums".into());
        }
        if a.mul(&b).map_err(e)?.substitute(&images).map_err(e)? != sa.mul(&sb).map_err(e)? {
            return Err("substitute does not preserve products".into());
        }
    }
    Ok(())
}

pub fn sigma_composes(seed: u64) -> Check {
    let mut r = rng(seed);
    let ring = random_ring(&mut r, 3);
    let n = ring.field().n();
    for _ in 0..20 {
        let f = MultiPoly::random(&ring, 3, 5, &mut r);
        let (i, j) = (r.gen_range(0..2 * n), r.gen_range(0..2 * n));
        if f.apply_sigma(i).apply_sigma(j) != f.apply_sigma((i + j) % n) {
            return Err(format!("sigma_{i} sigma_{j} != sigma_{}", (i + j) % n));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- falldeg

/// Small random system with field equations, so the ideal is zero-dimensional.
pub fn small_system<R: Rng>(r: &mut R, max_vars: usize) -> PolySystem {
    let &(p, n) = pick(&[(2, 1), (2, 2), (3, 1)], r);
    let f = field(p, 1, n);
    let nv = r.gen_range(1..=max_vars);
    let ring = Ring::with_indexed_vars(f.clone(), Level::K, "X", nv);
    let deg = r.gen_range(1..=2);
    let count = r.gen_range(1..=nv);
    let mut sys = gen_random_system(&ring, deg, count, 3, r).unwrap();
    if r.gen_bool(0.7) {
        // field equations of the prime field keep the Gröbner basis small
        for v in 0..nv {
            sys.push(ring.var(v).pow(p).sub(&ring.var(v)).unwrap()).unwrap();
        }
    }
    sys
}

fn all_monomials(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    fn rec(nv: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == nv {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(nv, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, deg, &mut Vec::new(), &mut out);
    out
}

/// `dim V_{F,i}` by repeated multiplication of the degree `<= i-1` part by every variable.
pub fn naive_dim(sys: &PolySystem, i: u32) -> usize {
    let ring = sys.ring();
    let f = ring.field().clone();
    let nv = ring.nvars();
    let monos = all_monomials(nv, i);
    let index: HashMap<Vec<u32>, usize> = monos.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
    let top: Vec<usize> = (0..monos.len()).filter(|&k| monos[k].iter().sum::<u32>() == i).collect();
    let dense = |p: &MultiPoly| {
        let mut v = vec![FieldElement::ZERO; monos.len()];
        for (m, c) in p.terms() {
            v[index[m.exps()]] = c;
        }
        v
    };
    let mut span: Vec<Vec<FieldElement>> =
        sys.polys().iter().filter(|p| p.degree().at_most(i)).map(dense).collect();
    loop {
        let basis = independent(&f, &span);
        // combinations with no degree-i part
        let mut pivots: Vec<(usize, Vec<FieldElement>)> = Vec::new();
        let mut low = Vec::new();
        for b in &basis {
            let mut v = b.clone();
            for (p, w) in &pivots {
                let c = f.div(v[*p], w[*p]).unwrap();
                if !c.is_zero() {
                    for (x, &y) in v.iter_mut().zip(w) {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
            match top.iter().copied().find(|&k| !v[k].is_zero()) {
                Some(p) => pivots.push((p, v)),
                None => low.push(v),
            }
        }
        let mut grown = basis.clone();
        for l in &low {
            for var in 0..nv {
                let mut w = vec![FieldElement::ZERO; monos.len()];
                for (k, &c) in l.iter().enumerate() {
                    if !c.is_zero() {
                        let mut m = monos[k].clone();
                        m[var] += 1;
                        w[index[&m]] = c;
                    }
                }
                grown.push(w);
            }
        }
        let r = rank(&f, &grown);
        if r == basis.len() {
            return r;
        }
        span = grown;
    }
}

pub fn closure_matches_naive(seed: u64) -> Check {
    let mut r = rng(seed);
    let sys = small_system(&mut r, 4);
    for i in 1..=5 {
        let engine = span_closure(&sys, i).map_err(|e| e.to_string())?.dim();
        let naive = naive_dim(&sys, i);
        if engine != naive {
            return Err(format!("dim V_(F,{i}): engine {engine}, naive {naive}"));
        }
    }
    Ok(())
}

pub fn closure_monotone(seed: u64) -> Check {
    let mut r = rng(seed);
    let sys = small_system(&mut r, 3);
    for i in 2..=5 {
        let lo = span_closure(&sys, i - 1).map_err(|e| e.to_string())?;
        let hi = span_closure(&sys, i).map_err(|e| e.to_string())?;
        for p in lo.polys() {
            if !hi.contains(&p).map_err(|e| e.to_string())? {
                return Err(format!("V_(F,{}) not inside V_(F,{i})", i - 1));
            }
        }
    }
    Ok(())
}

pub fn closure_sound(seed: u64) -> Check {
    let mut r = rng(seed);
    let sys = small_system(&mut r, 3);
    let gb = groebner_toy(&sys).map_err(|e| e.to_string())?;
    let span = span_closure(&sys, 4).map_err(|e| e.to_string())?;
    for p in span.polys() {
        if !gb.normal_form(&p).map_err(|e| e.to_string())?.is_zero() {
            return Err("a row of V_(F,4) is not in the ideal".into());
        }
    }
    Ok(())
}

fn certified_lfd(sys: &PolySystem, order: MonomialOrder) -> Result<Option<u32>, String> {
    let q = sys.ring().field().q();
    let cap = weil_core::falldeg::default_cap(q, sys.degree().max(1), sys.ring().nvars());
    let prof = last_fall_degree_with(sys, &FallOptions { order, ..FallOptions::new(cap) })
        .map_err(|e| e.to_string())?;
    Ok(prof.is_certified().then_some(prof.last_fall_degree))
}

pub fn order_independent(seed: u64) -> Check {
    let mut r = rng(seed);
    let sys = small_system(&mut r, 3);
    let a = certified_lfd(&sys, MonomialOrder::GrevLex)?;
    let b = certified_lfd(&sys, MonomialOrder::GrLex)?;
    match (a, b) {
        (Some(x), Some(y)) if x != y => Err(format!("grevlex gives {x}, grlex gives {y}")),
        _ => Ok(()),
    }
}

fn recombine(sys: &PolySystem, m: &[Vec<FieldElement>]) -> Result<PolySystem, String> {
    let mixed = m
        .iter()
        .map(|row| {
            row.iter()
                .zip(sys.polys())
                .try_fold(sys.ring().zero(), |acc, (&c, p)| acc.add(&p.scale(c)))
        })
        .collect::<weil_core::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    PolySystem::new(sys.ring(), mixed).map_err(|e| e.to_string())
}

/// Invertible `M`; with `filtered`, row `r` only uses generators of degree
/// at most `deg f_r` and has a nonzero diagonal (generators sorted by degree).
fn random_invertible<R: Rng>(f: &FieldSpec, degs: &[u32], filtered: bool, r: &mut R) -> Vec<Vec<FieldElement>> {
    let k = degs.len();
    loop {
        let m: Vec<Vec<FieldElement>> = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        if !filtered || degs[b] <= degs[a] {
                            let mut c = f.random(r);
                            while a == b && filtered && c.is_zero() {
                                c = f.random(r);
                            }
                            c
                        } else {
                            FieldElement::ZERO
                        }
                    })
                    .collect()
            })
            .collect();
        if rank(f, &m) == k {
            return m;
        }
    }
}

/// `span F_{<=i}` for `i = 0..=deg F`, as ranks of the truncated generator sets
/// together with the rank of their union with `other`'s.
fn truncations_agree(a: &PolySystem, b: &PolySystem) -> bool {
    let f = a.ring().field().clone();
    let top = a.degree().max(b.degree());
    let monos = all_monomials(a.ring().nvars(), top);
    let index: HashMap<Vec<u32>, usize> = monos.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
    let dense = |p: &MultiPoly| {
        let mut v = vec![FieldElement::ZERO; monos.len()];
        for (m, c) in p.terms() {
            v[index[m.exps()]] = c;
        }
        v
    };
    (0..=top).all(|i| {
        let ra: Vec<_> = a.polys().iter().filter(|p| p.degree().at_most(i)).map(dense).collect();
        let rb: Vec<_> = b.polys().iter().filter(|p| p.degree().at_most(i)).map(dense).collect();
        let both: Vec<_> = ra.iter().chain(&rb).cloned().collect();
        let r = rank(&f, &both);
        rank(&f, &ra) == r && rank(&f, &rb) == r
    })
}

/// Invertible recombination keeps `max(d_F, D)` with `D` the largest generator
/// degree, and keeps `d_F` itself whenever every `span F_{<=i}` is unchanged.
pub fn recombination_invariant(seed: u64) -> Check {
    let mut r = rng(seed);
    let unsorted = small_system(&mut r, 3);
    let mut polys = unsorted.polys().to_vec();
    polys.sort_by_key(|p| p.degree().finite().unwrap_or(0));
    let sys = PolySystem::new(unsorted.ring(), polys).unwrap();
    let f = sys.ring().field().clone();
    let degs: Vec<u32> = sys.polys().iter().map(|p| p.degree().finite().unwrap_or(0)).collect();
    let base = certified_lfd(&sys, MonomialOrder::GrevLex)?;
    for filtered in [true, false] {
        let mixed = recombine(&sys, &random_invertible(&f, &degs, filtered, &mut r))?;
        let top = sys.degree().max(mixed.degree());
        if let (Some(x), Some(y)) = (base, certified_lfd(&mixed, MonomialOrder::GrevLex)?) {
            if x.max(top) != y.max(top) {
                return Err(format!("max(d_F, {top}) = {} but max(d_(MF), {top}) = {}", x.max(top), y.max(top)));
            }
            if truncations_agree(&sys, &mixed) && x != y {
                return Err(format!("same truncated spans but d_F = {x}, d_(MF) = {y}"));
            }
        }
    }
    Ok(())
}

/// `F = {x, x^2 + x}` against `MF = {x^2, x^2 + x}` over `GF(2)`.
pub fn recombination_mixed_degrees_example() -> (u32, u32) {
    let f = field(2, 1, 1);
    let ring = Ring::with_indexed_vars(f, Level::K, "X", 1);
    let x = ring.var(0);
    let x2 = x.pow(2);
    let a = PolySystem::new(&ring, vec![x.clone(), x2.add(&x).unwrap()]).unwrap();
    let b = PolySystem::new(&ring, vec![x2.clone(), x2.add(&x).unwrap()]).unwrap();
    let d = |s: &PolySystem| last_fall_degree_with(s, &FallOptions::new(6)).unwrap().last_fall_degree;
    (d(&a), d(&b))
}

// ---------------------------------------------------------------- descent

fn descent_setup<R: Rng>(r: &mut R, max_vars: usize, max_deg: u32) -> (PolySystem, DescentContext) {
    let &(p, e, n) = pick(&[(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2)], r);
    let f = field(p, e, n);
    let ring = Ring::with_indexed_vars(f, Level::K, "X", r.gen_range(1..=max_vars));
    let deg = r.gen_range(1..=max_deg);
    let sys = gen_random_system(&ring, deg, r.gen_range(1..=2), 4, r).unwrap();
    let ctx = DescentContext::new(&ring, None).unwrap();
    (sys, ctx)
}

pub fn descent_reconstructs(seed: u64) -> Check {
    let mut r = rng(seed);
    let (sys, ctx) = descent_setup(&mut r, 3, 4);
    let e = |x: Error| x.to_string();
    for f in sys.polys() {
        let parts = weil_descend(f, &ctx).map_err(e)?;
        let mut sum = ctx.descended_ring().zero();
        for (p, &a) in parts.iter().zip(ctx.basis()) {
            if !p.lies_in_subfield() {
                return Err("descended component has coefficients outside k'".into());
            }
            if !p.degree().at_most(f.degree().finite().unwrap_or(0)) {
                return Err("descended component exceeds deg f".into());
            }
            sum = sum.add(&p.scale(a)).map_err(e)?;
        }
        if sum != ctx.substituted(f).map_err(e)? {
            return Err("sum of alpha_j f_j differs from f(sum alpha_j X_j)".into());
        }
    }
    Ok(())
}

pub fn descent_basis_independent(seed: u64) -> Check {
    let mut r = rng(seed);
    let (sys, ctx) = descent_setup(&mut r, 2, 2);
    let f = ctx.field().clone();
    let other = loop {
        let b: Vec<_> = (0..f.n()).map(|_| f.random(&mut r)).collect();
        if let Ok(c) = DescentContext::new(sys.ring(), Some(b)) {
            break c;
        }
    };
    let qd = f.q() * sys.degree();
    let a = certified_lfd(&build_fprime1(&sys, &ctx).map_err(|e| e.to_string())?, MonomialOrder::GrevLex)?;
    let b = certified_lfd(&build_fprime1(&sys, &other).map_err(|e| e.to_string())?, MonomialOrder::GrevLex)?;
    match (a, b) {
        (Some(x), Some(y)) if x.max(qd) != y.max(qd) => {
            Err(format!("max(d, qd) is {} for one basis and {} for another", x.max(qd), y.max(qd)))
        }
        _ => Ok(()),
    }
}

pub fn g2_absorbs_g1(seed: u64) -> Check {
    let mut r = rng(seed);
    let (sys, ctx) = descent_setup(&mut r, 1, 2);
    let e = |x: Error| x.to_string();
    let g1 = build_g1(&sys, &ctx).map_err(e)?;
    let g2 = build_g2(&sys, &ctx).map_err(e)?;
    let qd = ctx.field().q() * sys.degree();
    let zero = ctx.descended_ring().zero();
    for g in g1.polys() {
        if !equiv_mod(g, &zero, qd, &g2).map_err(e)? {
            return Err(format!("an element of G_1 is outside V_(G_2,{qd})"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- linsys

pub const LINSYS_FIELDS: &[(u32, usize, usize)] = &[(2, 1, 2), (2, 1, 3), (2, 1, 4), (3, 1, 2), (2, 2, 2)];

fn random_linearized<R: Rng>(f: &Arc<FieldSpec>, m: usize, count: usize, bound: usize, r: &mut R) -> LinearizedSystem {
    let polys = (0..count)
        .map(|_| {
            let comps = (0..m).map(|_| UniPoly::new((0..bound).map(|_| f.random(r)).collect())).collect();
            LinearizedPoly::new(comps, bound).unwrap()
        })
        .collect();
    LinearizedSystem::new(f, m, polys).unwrap()
}

pub fn linearized_is_linear(seed: u64) -> Check {
    let mut r = rng(seed);
    let &(p, e, n) = pick(LINSYS_FIELDS, &mut r);
    let f = field(p, e, n);
    let sys = random_linearized(&f, 1, 1, n + 1, &mut r);
    let l = &sys.polys()[0];
    let els: Vec<_> = f.elements().collect();
    let subs: Vec<_> = f.subfield_elements().collect();
    for &x in &els {
        for &y in &els {
            if l.eval(&[f.add(x, y)], &f) != f.add(l.eval(&[x], &f), l.eval(&[y], &f)) {
                return Err("L(x + y) != L(x) + L(y)".into());
            }
        }
        for &c in &subs {
            if l.eval(&[f.mul(c, x)], &f) != f.mul(c, l.eval(&[x], &f)) {
                return Err("L(c x) != c L(x) for c in k'".into());
            }
        }
    }
    Ok(())
}

pub fn l_matches_ell_on_w(seed: u64) -> Check {
    let mut r = rng(seed);
    let &(p, e, n) = pick(LINSYS_FIELDS, &mut r);
    let f = field(p, e, n);
    let all = InvariantSubspace::all(&f).map_err(|e| e.to_string())?;
    let w = pick(&all, &mut r);
    let m = r.gen_range(1..=2);
    let sys = random_linearized(&f, m, 1, n + 2, &mut r);
    let l = &sys.polys()[0];
    let ell = l.reduce_mod(w);
    let els = w.elements();
    let mut points: Vec<Vec<FieldElement>> = vec![vec![]];
    for _ in 0..m {
        points = points
            .into_iter()
            .flat_map(|pt| els.iter().map(move |&x| [pt.clone(), vec![x]].concat()))
            .collect();
    }
    for pt in points {
        if l.eval(&pt, &f) != ell.eval_frobenius(&pt, &f) {
            return Err(format!("L(f) and l(f) differ at {pt:?}"));
        }
    }
    Ok(())
}

pub fn solver_matches_oracle(seed: u64) -> Check {
    let mut r = rng(seed);
    let &(p, e, n) = pick(LINSYS_FIELDS, &mut r);
    let f = field(p, e, n);
    let all = InvariantSubspace::all(&f).map_err(|e| e.to_string())?;
    let w = pick(&all, &mut r);
    let m = r.gen_range(1..=2);
    let sys = random_linearized(&f, m, r.gen_range(0..=m), r.gen_range(1..=n + 1), &mut r);
    let oracle = brute_force_solve(&sys, w);
    for g in &oracle.generators {
        if !sys.vanishes_at(g) || !g.iter().all(|&x| w.contains(x)) {
            return Err("oracle generator is not a solution in W^m".into());
        }
    }
    match solve_structured(&sys, w, &SearchOptions { seed, ..SearchOptions::default() }) {
        Ok(s) if !s.same_subspace(&oracle, &f) => Err(format!(
            "structured basis (dim {}) differs from oracle (dim {})",
            s.dim(),
            oracle.dim()
        )),
        Ok(_) | Err(Error::NotReducible) => Ok(()),
        Err(e) => Err(e.to_string()),
    }
}

/// `dim_{k'} ker L(g)|_W = deg g` for every monic `g | f_W`, counted by enumeration.
pub fn kernel_dimension_law(p: u32, e: usize, n: usize) -> Check {
    let f = field(p, e, n);
    let sub = f.subfield();
    let q = f.q() as usize;
    for w in InvariantSubspace::all(&f).map_err(|e| e.to_string())? {
        let els = w.elements();
        for g in w.f_w().monic_divisors(&sub) {
            let d = g.degree().unwrap();
            let basis = w.kernel_of(&g);
            let lin = LinearizedPoly::new(vec![g.clone()], d + 1).map_err(|e| e.to_string())?;
            let roots = els.iter().filter(|&&x| lin.eval(&[x], &f).is_zero()).count();
            if basis.len() != d || roots != q.pow(d as u32) {
                return Err(format!(
                    "f_W {:?}, g {:?}: kernel basis {} and {} roots for degree {d}",
                    w.f_w(),
                    g,
                    basis.len(),
                    roots
                ));
            }
        }
    }
    Ok(())
}

/// With `f_W` irreducible over `k'` every stage with `V ∩ S_{1i} != V ∩ S_{1,i+1}`
/// has a form with nonzero stage component; the check should then report reducible.
pub fn irreducible_fw_is_reducible(seed: u64) -> Check {
    let mut r = rng(seed);
    let &(p, n) = pick(&[(2, 3), (2, 5), (3, 2), (2, 4)], &mut r);
    let f = field(p, 1, n);
    let sub = f.subfield();
    let ws: Vec<_> = InvariantSubspace::all(&f)
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter(|w| w.f_w().is_irreducible(&sub))
        .collect();
    let w = pick(&ws, &mut r);
    let m = 2;
    let sys = random_linearized(&f, m, r.gen_range(1..=2), w.nprime().max(2), &mut r);
    let report = reducibility_check(&sys, w, &SearchOptions { seed, ..SearchOptions::default() })
        .map_err(|e| e.to_string())?;
    let tested = report.stages.iter().filter(|s| s.dim != s.next_dim);
    if tested.clone().all(|s| s.projection_dim > 0) && !report.reducible {
        let comps: Vec<_> = sys.polys().iter().map(|l| l.components().to_vec()).collect();
        return Err(format!(
            "GF({p}^{n}), f_W {:?} irreducible, system {comps:?}: reported not reducible",
            w.f_w()
        ));
    }
    Ok(())
}

/// `d_Ḡ <= (q-1)m + 1` on reducible instances the engine certifies.
/// Returns whether the instance was exercised.
pub fn gbar_bound(seed: u64) -> Result<bool, String> {
    let mut r = rng(seed);
    let &(p, e, n) = pick(&[(2, 1, 2), (2, 1, 3), (2, 1, 4), (3, 1, 2)], &mut r);
    let f = field(p, e, n);
    let all = InvariantSubspace::all(&f).map_err(|e| e.to_string())?;
    let w = pick(&all, &mut r);
    let m = r.gen_range(1..=2);
    let sys = random_linearized(&f, m, r.gen_range(0..=m), r.gen_range(1..=n + 1), &mut r);
    let report = reducibility_check(&sys, w, &SearchOptions { seed, ..SearchOptions::default() })
        .map_err(|e| e.to_string())?;
    if !report.reducible {
        return Ok(false);
    }
    let bound = (f.q() - 1) * m as u32 + 1;
    let g = gbar_system(&sys, w).map_err(|e| e.to_string())?;
    let prof = last_fall_degree_with(&g, &FallOptions::new(bound + 3)).map_err(|e| e.to_string())?;
    if !prof.is_certified() {
        return Ok(false);
    }
    if prof.last_fall_degree > bound {
        return Err(format!("d_Gbar = {} above {bound}", prof.last_fall_degree));
    }
    Ok(true)
}

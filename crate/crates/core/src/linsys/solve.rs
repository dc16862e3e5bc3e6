use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::skew::{gcrd, gcrd_all, skew_bezout};
use super::{InvariantSubspace, LinearForm, LinearizedSystem};
use crate::error::{Error, Result};
use crate::falldeg::span_closure;
use crate::gf::{FieldElement, FieldSpec};
use crate::linalg;
use crate::poly::{Degree, Level, PolySystem, Ring};
use crate::upoly::UniPoly;

/// Knobs for the witness search and the solver's field-size ceiling.
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub seed: u64,
    pub random_draws: usize,
    /// Exhaustive search runs when the stage space has at most this `k'`-dimension.
    pub exhaustive_dim_cap: usize,
    /// Decide stages the random and exhaustive searches cannot by the gcrd of
    /// all stage components (the projection is a left ideal of `k[τ]/(f_W)`).
    pub module_certificate: bool,
    pub q_ceiling: u32,
    pub allow_large_q: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            seed: 0,
            random_draws: 64,
            exhaustive_dim_cap: 16,
            module_certificate: true,
            q_ceiling: 7,
            allow_large_q: false,
        }
    }
}

/// `k[x_{ij} : i < m, j < n']`, variable `x{i}_{j}` at index `i*n' + j`.
pub fn qbar_ring(field: &std::sync::Arc<FieldSpec>, m: usize, nprime: usize) -> Result<Ring> {
    let names = (0..m).flat_map(|i| (0..nprime).map(move |j| format!("x{i}_{j}"))).collect();
    Ring::new(field.clone(), Level::K, names)
}

/// `{x_{ij}^q - x_{i,j+1}} ∪ {x_{i,n'-1}^q - ℓ(g_W(x_i))}`, stage by stage.
pub fn build_qbar(w: &InvariantSubspace, m: usize) -> Result<PolySystem> {
    let f = w.field();
    let np = w.nprime();
    let ring = qbar_ring(f, m, np)?;
    let q = f.q();
    let mut out = Vec::new();
    for i in 0..m {
        for j in 0..np {
            let x = ring.var(i * np + j);
            let image = if j + 1 < np {
                ring.var(i * np + j + 1)
            } else {
                let comps: Vec<UniPoly> =
                    (0..m).map(|r| if r == i { w.g_w().clone() } else { UniPoly::zero() }).collect();
                LinearForm::new(&comps, np)?.to_multipoly(&ring)?
            };
            out.push(x.pow(q).sub(&image)?);
        }
    }
    PolySystem::new(&ring, out)
}

/// The linear form congruent to `f^q` modulo `Q̄`.
pub fn frobenius_step(form: &LinearForm, w: &InvariantSubspace) -> LinearForm {
    let f = w.field();
    let np = w.nprime();
    let rows = form
        .rows()
        .iter()
        .map(|row| {
            let mut out = vec![FieldElement::ZERO; np];
            for (j, &b) in row.iter().enumerate() {
                let bq = f.frobenius_q(b, 1);
                if bq.is_zero() {
                    continue;
                }
                if j + 1 < np {
                    out[j + 1] = f.add(out[j + 1], bq);
                } else {
                    for (l, &g) in w.g_w().coeffs().iter().enumerate() {
                        out[l] = f.add(out[l], f.mul(bq, g));
                    }
                }
            }
            out
        })
        .collect();
    LinearForm::from_rows(rows, np).expect("width preserved")
}

/// The linear form congruent to `L(g) ∘ f` modulo `Q̄`.
pub fn lcompose_reduce(g: &UniPoly, form: &LinearForm, w: &InvariantSubspace) -> LinearForm {
    let f = w.field();
    let mut acc = LinearForm::zero(form.nvars(), form.width());
    let mut power = form.clone();
    for &c in g.coeffs() {
        if !c.is_zero() {
            acc = acc.add(&power.scale(c, f), f);
        }
        power = frobenius_step(&power, w);
    }
    acc
}

/// `(A, B)` with `A f0 + B f_W = 1` and `deg A < deg f_W`, in `k[x]`.
pub fn bezout(f0: &UniPoly, fw: &UniPoly, field: &FieldSpec) -> Result<(UniPoly, UniPoly)> {
    let (g, s, _) = f0.ext_gcd(fw, field);
    if g != UniPoly::one() {
        return Err(Error::NotCoprime { gcd: g.into_coeffs() });
    }
    let a = s.rem(fw, field)?;
    let (b, r) = UniPoly::one().sub(&a.mul(f0, field), field).divrem(fw, field)?;
    debug_assert!(r.is_zero());
    Ok((a, b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchOutcome {
    /// The stage spaces coincide; nothing to search.
    NotNeeded,
    Random,
    Exhaustive,
    Certificate,
}

#[derive(Clone, Debug)]
pub struct StageReport {
    pub stage: usize,
    /// `dim_k (V ∩ S_{1i})`.
    pub dim: usize,
    /// `dim_k (V ∩ S_{1,i+1})`.
    pub next_dim: usize,
    /// `k`-dimension of the stage-`i` components of `V ∩ S_{1i}`.
    pub projection_dim: usize,
    pub witness: Option<LinearForm>,
    pub outcome: SearchOutcome,
    /// Whether some sampled stage component has ordinary gcd 1 with `f_W`;
    /// `None` when not searched to completion.
    pub ordinary_witness: Option<bool>,
}

impl StageReport {
    pub fn eliminated(&self) -> bool {
        self.dim != self.next_dim
    }
}

#[derive(Clone, Debug)]
pub struct ReducibilityReport {
    pub reducible: bool,
    pub stages: Vec<StageReport>,
    /// `k`-basis of `V_{Ḡ,q} ∩ S_1` in reduced echelon form.
    pub span: Vec<LinearForm>,
}

/// `V_{Ḡ,q} ∩ S_1` for `Ḡ = F̄ ∪ Q̄`.
fn linear_span(sys: &LinearizedSystem, w: &InvariantSubspace) -> Result<Vec<LinearForm>> {
    let f = w.field();
    let m = sys.nvars();
    let np = w.nprime();
    let mut g = build_qbar(w, m)?;
    for p in sys.polys() {
        let form = p.reduce_mod(w);
        if !form.is_zero() {
            g.push(form.to_multipoly(g.ring())?)?;
        }
    }
    let span = span_closure(&g, f.q())?;
    let mut rows: Vec<Vec<FieldElement>> = span
        .polys()
        .iter()
        .filter(|p| p.degree().at_most(1) && p.degree() != Degree::NegInf)
        .map(|p| LinearForm::from_multipoly(p, m, np).map(|l| l.flat()))
        .collect::<Result<_>>()?;
    linalg::rref(f, &mut rows);
    Ok(rows.iter().map(|r| LinearForm::from_flat(r, np)).collect())
}

fn is_unit(p: &UniPoly) -> bool {
    p.degree() == Some(0)
}

enum Search {
    Found(LinearForm),
    Exhausted,
    Budget,
}

fn combine(basis: &[LinearForm], coeffs: &[FieldElement], f: &FieldSpec) -> LinearForm {
    let mut acc = LinearForm::zero(basis[0].nvars(), basis[0].width());
    for (b, &c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c, f), f);
        }
    }
    acc
}

fn run_search<P>(
    basis: &[LinearForm],
    stage: usize,
    field: &FieldSpec,
    opts: &SearchOptions,
    rng: &mut ChaCha8Rng,
    pred: P,
) -> (Search, bool)
where
    P: Fn(&UniPoly) -> bool,
{
    if basis.is_empty() {
        return (Search::Exhausted, true);
    }
    let r = basis.len();
    for _ in 0..opts.random_draws {
        let c: Vec<FieldElement> = (0..r).map(|_| field.random(rng)).collect();
        let cand = combine(basis, &c, field);
        if pred(&cand.component(stage)) {
            return (Search::Found(cand), false);
        }
    }
    if r * field.n() > opts.exhaustive_dim_cap {
        return (Search::Budget, false);
    }
    let size = field.order() as u64;
    let total = size.pow(r as u32);
    for mut v in 1..total {
        let c: Vec<FieldElement> = (0..r)
            .map(|_| {
                let d = FieldElement::from_raw((v % size) as u32);
                v /= size;
                d
            })
            .collect();
        let cand = combine(basis, &c, field);
        if pred(&cand.component(stage)) {
            return (Search::Found(cand), true);
        }
    }
    (Search::Exhausted, true)
}

/// Decides whether `F` is reducible for `W`, reporting a witness form for
/// every stage where `V ∩ S_{1i} ≠ V ∩ S_{1,i+1}`.
///
/// A witness is a form of `V ∩ S_{1i}` whose stage-`i` component `g` has
/// `gcrd(g, f_W) = 1` in `k[τ]`; that is the condition under which the
/// stage variables can be eliminated.
pub fn reducibility_check(
    sys: &LinearizedSystem,
    w: &InvariantSubspace,
    opts: &SearchOptions,
) -> Result<ReducibilityReport> {
    let f = w.field().as_ref();
    let np = w.nprime();
    let m = sys.nvars();
    let span = linear_span(sys, w)?;
    let stage_space = |i: usize| -> Vec<LinearForm> {
        span.iter().filter(|l| l.in_stage(i)).cloned().collect()
    };
    let mut stages = Vec::new();
    let mut reducible = true;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for i in 0..m.saturating_sub(1) {
        let here = stage_space(i);
        let next_dim = span.iter().filter(|l| l.in_stage(i + 1)).count();
        let comps: Vec<UniPoly> = here.iter().map(|l| l.component(i)).collect();
        let projection_dim = {
            let rows: Vec<Vec<FieldElement>> = here.iter().map(|l| l.rows()[i].clone()).collect();
            if rows.is_empty() { 0 } else { linalg::rank(f, &rows) }
        };
        let mut report = StageReport {
            stage: i,
            dim: here.len(),
            next_dim,
            projection_dim,
            witness: None,
            outcome: SearchOutcome::NotNeeded,
            ordinary_witness: None,
        };
        if report.eliminated() {
            let (found, exhaustive) =
                run_search(&here, i, f, opts, &mut rng, |g| is_unit(&gcrd(g, w.f_w(), f)));
            match found {
                Search::Found(l) => {
                    report.outcome =
                        if exhaustive { SearchOutcome::Exhaustive } else { SearchOutcome::Random };
                    report.witness = Some(l);
                }
                Search::Exhausted => report.outcome = SearchOutcome::Exhaustive,
                Search::Budget => {
                    if !opts.module_certificate {
                        return Err(Error::SearchBudgetExceeded { stage: i });
                    }
                    report.outcome = SearchOutcome::Certificate;
                    if is_unit(&gcrd_all(comps.iter().chain([w.f_w()]), f)) {
                        report.witness = Some(unit_witness(&here, i, np, f));
                    }
                }
            }
            let (ord, complete) =
                run_search(&here, i, f, opts, &mut rng, |g| g.gcd(w.f_w(), f) == UniPoly::one());
            report.ordinary_witness = match ord {
                Search::Found(_) => Some(true),
                Search::Exhausted if complete => Some(false),
                _ => None,
            };
            if report.witness.is_none() {
                reducible = false;
            }
        }
        stages.push(report);
    }
    Ok(ReducibilityReport { reducible, stages, span })
}

/// A form of `here` whose stage-`i` component is exactly `1`, assuming the
/// components fill all of `k^{n'}`.
fn unit_witness(here: &[LinearForm], i: usize, np: usize, f: &FieldSpec) -> LinearForm {
    // reorder columns so stage i comes first, then echelonize
    let m = here[0].nvars();
    let order: Vec<usize> =
        (i * np..(i + 1) * np).chain((0..m * np).filter(|c| c / np != i)).collect();
    let mut rows: Vec<Vec<FieldElement>> = here
        .iter()
        .map(|l| {
            let flat = l.flat();
            order.iter().map(|&c| flat[c]).collect()
        })
        .collect();
    let pivots = linalg::rref(f, &mut rows);
    let k = pivots.iter().position(|&p| p == 0).expect("component 1 is reachable");
    let mut flat = vec![FieldElement::ZERO; m * np];
    for (pos, &c) in order.iter().enumerate() {
        flat[c] = rows[k][pos];
    }
    LinearForm::from_flat(&flat, np)
}

/// `x_{ij} ≡ ℓ_{ij}` for one eliminated stage; `gamma` is filled in after
/// back-substitution and involves only the stages that are never eliminated.
#[derive(Clone, Debug)]
pub struct StageSubstitution {
    pub stage: usize,
    pub ell: Vec<LinearForm>,
    pub gamma: Vec<LinearForm>,
}

/// Turns a witness for `stage` into substitutions `x_{stage,j} -> ℓ_j ∈ S_{1,stage+1}`.
pub fn eliminate_stage(stage: usize, witness: &LinearForm, w: &InvariantSubspace) -> Result<StageSubstitution> {
    let f = w.field().as_ref();
    let np = w.nprime();
    let g = witness.component(stage);
    let (a, _) = skew_bezout(&g, w.f_w(), f).map_err(|_| Error::GcdConditionFailed { stage })?;
    let mut e = lcompose_reduce(&a, witness, w);
    let mut ell = Vec::with_capacity(np);
    for j in 0..np {
        if e.component(stage) != UniPoly::monomial(FieldElement::ONE, j) {
            return Err(Error::GcdConditionFailed { stage });
        }
        ell.push(e.without_stage(stage).scale(f.from_int(-1), f));
        e = frobenius_step(&e, w);
    }
    Ok(StageSubstitution { stage, ell, gamma: Vec::new() })
}

/// Replaces every eliminated variable by its `γ`.
fn substitute(form: &LinearForm, subs: &[StageSubstitution], f: &FieldSpec) -> LinearForm {
    let mut out = form.clone();
    for s in subs {
        for (j, g) in s.gamma.iter().enumerate() {
            let c = out.coeff(s.stage, j);
            if !c.is_zero() {
                out = out.add(&g.scale(c, f), f);
            }
        }
        out = out.without_stage(s.stage);
    }
    out
}

/// A `k'`-basis of `Z_W(F)` with the data that produced it.
#[derive(Clone, Debug)]
pub struct SolutionBasis {
    pub generators: Vec<Vec<FieldElement>>,
    pub trace: Vec<StageSubstitution>,
    /// Monic `g` with `ker L(g) ∩ W` the last coordinate's solution space.
    pub final_gcd: Option<UniPoly>,
    pub reducible: Option<bool>,
}

impl SolutionBasis {
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    fn vectors(&self, f: &FieldSpec) -> Vec<Vec<FieldElement>> {
        self.generators.iter().map(|g| point_coords(g, f)).collect()
    }

    /// Reduced echelon `k'`-coordinates of the span, the canonical form used for comparison.
    pub fn canonical(&self, f: &FieldSpec) -> Vec<Vec<FieldElement>> {
        let mut rows = self.vectors(f);
        linalg::rref(f, &mut rows);
        rows
    }

    pub fn contains(&self, point: &[FieldElement], f: &FieldSpec) -> bool {
        let mut rows = self.vectors(f);
        let r = linalg::rank(f, &rows);
        rows.push(point_coords(point, f));
        linalg::rank(f, &rows) == r
    }

    pub fn same_subspace(&self, other: &SolutionBasis, f: &FieldSpec) -> bool {
        self.canonical(f) == other.canonical(f)
    }

    pub fn to_json(&self, f: &FieldSpec) -> SolutionBasisJson {
        let coords = |p: &[FieldElement]| -> Vec<Vec<u32>> {
            p.iter().map(|&x| f.kprime_coords(x).iter().map(|c| c.raw()).collect()).collect()
        };
        let form = |l: &LinearForm| -> Vec<Vec<Vec<u32>>> {
            l.rows().iter().map(|r| r.iter().map(|&c| f.flat_digits(c)).collect()).collect()
        };
        SolutionBasisJson {
            dim: self.dim(),
            generators: self.generators.iter().map(|g| coords(g)).collect(),
            trace: self
                .trace
                .iter()
                .map(|s| TraceJson { stage: s.stage, gamma: s.gamma.iter().map(form).collect() })
                .collect(),
            final_gcd: self.final_gcd.as_ref().map(|g| g.coeffs().iter().map(|c| f.flat_digits(*c)).collect()),
            reducible: self.reducible,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub stage: usize,
    /// `γ_{stage,j}` as `[i][j']` coefficient tables.
    pub gamma: Vec<Vec<Vec<Vec<u32>>>>,
}

/// Generators are listed as `m` coordinate vectors over `k'` each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionBasisJson {
    pub dim: usize,
    pub generators: Vec<Vec<Vec<u32>>>,
    pub trace: Vec<TraceJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_gcd: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reducible: Option<bool>,
}

fn point_coords(point: &[FieldElement], f: &FieldSpec) -> Vec<FieldElement> {
    point.iter().flat_map(|&x| f.kprime_coords(x)).collect()
}

fn check_ceiling(f: &FieldSpec, opts: &SearchOptions) -> Result<()> {
    if f.q() > opts.q_ceiling && !opts.allow_large_q {
        return Err(Error::FieldTooLarge { q: f.q(), ceiling: opts.q_ceiling });
    }
    Ok(())
}

/// Solves `F` on `W^m` by stage elimination followed by a gcrd collapse on
/// the last variable.
pub fn solve_structured(
    sys: &LinearizedSystem,
    w: &InvariantSubspace,
    opts: &SearchOptions,
) -> Result<SolutionBasis> {
    let f = w.field().as_ref();
    check_ceiling(f, opts)?;
    let report = reducibility_check(sys, w, opts)?;
    if !report.reducible {
        return Err(Error::NotReducible);
    }
    let m = sys.nvars();
    let np = w.nprime();
    let mut subs = Vec::new();
    for st in report.stages.iter().filter(|s| s.eliminated()) {
        let witness = st.witness.as_ref().expect("reducible stages carry witnesses");
        subs.push(eliminate_stage(st.stage, witness, w)?);
    }
    // later stages first, so each γ only sees stages that stay
    for k in (0..subs.len()).rev() {
        let gamma = subs[k].ell.iter().map(|l| substitute(l, &subs[k + 1..], f)).collect();
        subs[k].gamma = gamma;
    }

    let mut h: Vec<LinearForm> = report.span.iter().map(|l| substitute(l, &subs, f)).collect();
    for s in &subs {
        for j in 0..np {
            let lhs = frobenius_step(&s.gamma[j], w);
            let rhs = if j + 1 < np {
                s.gamma[j + 1].clone()
            } else {
                w.g_w().coeffs().iter().enumerate().fold(LinearForm::zero(m, np), |acc, (l, &c)| {
                    acc.add(&s.gamma[l].scale(c, f), f)
                })
            };
            h.push(lhs.sub(&rhs, f));
        }
    }
    if let Some(bad) = h.iter().find(|l| !l.in_stage(m - 1)) {
        return Err(Error::DimensionMismatch(format!(
            "reduced relation involves stage {} before the last",
            bad.lowest_stage().unwrap_or(0)
        )));
    }
    let comps: Vec<UniPoly> = h.iter().map(|l| l.component(m - 1)).collect();
    let g = gcrd_all(comps.iter().chain([w.f_w()]), f);
    let kernel = w.kernel_of(&g);

    let eliminated: Vec<usize> = subs.iter().map(|s| s.stage).collect();
    let fill = |mut point: Vec<FieldElement>| -> Vec<FieldElement> {
        for s in &subs {
            point[s.stage] = s.gamma[0].eval_frobenius(&point, f);
        }
        point
    };
    let mut generators = Vec::new();
    for i in (0..m - 1).filter(|i| !eliminated.contains(i)) {
        for &b in w.basis() {
            let mut p = vec![FieldElement::ZERO; m];
            p[i] = b;
            generators.push(fill(p));
        }
    }
    for &kv in &kernel {
        let mut p = vec![FieldElement::ZERO; m];
        p[m - 1] = kv;
        generators.push(fill(p));
    }
    Ok(SolutionBasis { generators, trace: subs, final_gcd: Some(g), reducible: Some(true) })
}

/// `Z_W(F)` as the kernel of the stacked `k'`-linear map `W^m -> k^{|F|}`.
pub fn brute_force_solve(sys: &LinearizedSystem, w: &InvariantSubspace) -> SolutionBasis {
    let f = w.field().as_ref();
    let m = sys.nvars();
    let np = w.nprime();
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    for p in sys.polys() {
        // column (i, l) holds L(f_i)(w_l)
        let cols: Vec<Vec<FieldElement>> = (0..m)
            .flat_map(|i| w.basis().iter().map(move |&b| (i, b)))
            .map(|(i, b)| f.kprime_coords(super::apply(p.component(i), b, f)))
            .collect();
        for r in 0..f.n() {
            rows.push(cols.iter().map(|c| c[r]).collect());
        }
    }
    let kernel = linalg::kernel(f, &rows, m * np);
    let generators = kernel
        .iter()
        .map(|u| u.chunks(np).map(|c| w.combine(c)).collect())
        .collect();
    SolutionBasis { generators, trace: Vec::new(), final_gcd: None, reducible: None }
}

/// Every point of `W^m` where `F` vanishes.
pub fn enumerate_solutions(sys: &LinearizedSystem, w: &InvariantSubspace) -> Vec<Vec<FieldElement>> {
    let elems = w.elements();
    let m = sys.nvars();
    let mut out = Vec::new();
    let mut idx = vec![0usize; m];
    loop {
        let point: Vec<FieldElement> = idx.iter().map(|&k| elems[k]).collect();
        if sys.vanishes_at(&point) {
            out.push(point);
        }
        let mut v = 0;
        loop {
            if v == m {
                return out;
            }
            idx[v] += 1;
            if idx[v] < elems.len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

/// Draws a random linearized system with `count` polynomials of per-variable length `bound`.
pub fn random_linearized<R: Rng + ?Sized>(
    field: &std::sync::Arc<FieldSpec>,
    m: usize,
    count: usize,
    bound: usize,
    rng: &mut R,
) -> LinearizedSystem {
    let polys = (0..count)
        .map(|_| {
            let comps = (0..m).map(|_| UniPoly::new((0..bound).map(|_| field.random(rng)).collect())).collect();
            super::LinearizedPoly::new(comps, bound).expect("within bound")
        })
        .collect();
    LinearizedSystem::new(field, m, polys).expect("consistent shape")
}

//! `q`-linearized polynomials over `k`, their linear-form shadows in the
//! variables `x_{ij}`, the Frobenius-stable subspaces `W ⊆ k`, and a solver
//! for the common zeros of a linearized system inside `W^m`.

mod skew;
mod solve;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::linalg;
use crate::poly::{Level, Monomial, MultiPoly, Ring};
use crate::upoly::UniPoly;

pub use skew::{apply, gcrd, gcrd_all, gcrd_ext, right_divrem, skew_bezout, twisted_mul};
pub use solve::{
    bezout, brute_force_solve, build_qbar, eliminate_stage, enumerate_solutions, frobenius_step,
    lcompose_reduce, qbar_ring, random_linearized, reducibility_check, solve_structured,
    ReducibilityReport, SearchOptions, SearchOutcome, SolutionBasis, SolutionBasisJson,
    StageReport, StageSubstitution, TraceJson,
};

/// `L(f) = Σ_i Σ_j a_{ij} x_i^(q^j)`, stored as one coefficient vector per variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedPoly {
    components: Vec<UniPoly>,
    bound: usize,
}

impl LinearizedPoly {
    /// The `L` operator: `components[i]` is `f_i ∈ k[x]`, each of degree `< bound`.
    pub fn new(components: Vec<UniPoly>, bound: usize) -> Result<Self> {
        check_bound(&components, bound)?;
        Ok(LinearizedPoly { components, bound })
    }

    pub fn zero(nvars: usize, bound: usize) -> Self {
        LinearizedPoly { components: vec![UniPoly::zero(); nvars], bound }
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn components(&self) -> &[UniPoly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &UniPoly {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(UniPoly::is_zero)
    }

    /// `deg L(f)`, or `None` for the zero map.
    pub fn degree(&self, q: u32) -> Option<u64> {
        self.components
            .iter()
            .filter_map(|c| c.degree())
            .max()
            .map(|j| (q as u64).pow(j as u32))
    }

    pub fn eval(&self, point: &[FieldElement], f: &FieldSpec) -> FieldElement {
        self.components
            .iter()
            .zip(point)
            .fold(FieldElement::ZERO, |acc, (c, &x)| f.add(acc, apply(c, x, f)))
    }

    /// The polynomial `Σ a_{ij} X_i^(q^j)` in `ring`.
    pub fn to_multipoly(&self, ring: &Ring) -> Result<MultiPoly> {
        if ring.nvars() != self.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "{} variables in ring, {} in the linearized polynomial",
                ring.nvars(),
                self.nvars()
            )));
        }
        let q = ring.field().q();
        let mut terms = Vec::new();
        for (i, c) in self.components.iter().enumerate() {
            for (j, &a) in c.coeffs().iter().enumerate() {
                if !a.is_zero() {
                    let mut e = vec![0; self.nvars()];
                    e[i] = q.pow(j as u32);
                    terms.push((Monomial::new(e), a));
                }
            }
        }
        MultiPoly::from_terms(ring, terms)
    }

    /// Components reduced modulo `f_W`; the result acts on `W^m` exactly as `self`.
    pub fn reduce_mod(&self, w: &InvariantSubspace) -> LinearForm {
        let f = w.field();
        let rows = self
            .components
            .iter()
            .map(|c| pad(&c.rem(w.f_w(), f).expect("f_W is nonzero"), w.nprime()))
            .collect();
        LinearForm { coeffs: rows, width: w.nprime() }
    }
}

fn check_bound(components: &[UniPoly], bound: usize) -> Result<()> {
    for (var, c) in components.iter().enumerate() {
        if let Some(d) = c.degree() {
            if d >= bound {
                return Err(Error::DegreeExceedsBound { var, degree: d, bound });
            }
        }
    }
    Ok(())
}

fn pad(p: &UniPoly, width: usize) -> Vec<FieldElement> {
    let mut v = p.coeffs().to_vec();
    v.resize(width, FieldElement::ZERO);
    v
}

/// A linear form `Σ b_{ij} x_{ij}`, `j < width`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<Vec<FieldElement>>,
    width: usize,
}

impl LinearForm {
    /// The `ℓ` operator.
    pub fn new(components: &[UniPoly], width: usize) -> Result<Self> {
        check_bound(components, width)?;
        Ok(LinearForm { coeffs: components.iter().map(|c| pad(c, width)).collect(), width })
    }

    pub fn from_rows(coeffs: Vec<Vec<FieldElement>>, width: usize) -> Result<Self> {
        if coeffs.iter().any(|r| r.len() != width) {
            return Err(Error::DimensionMismatch("linear form row width".into()));
        }
        Ok(LinearForm { coeffs, width })
    }

    pub fn zero(nvars: usize, width: usize) -> Self {
        LinearForm { coeffs: vec![vec![FieldElement::ZERO; width]; nvars], width }
    }

    /// The form `x_{ij}`.
    pub fn var(nvars: usize, width: usize, i: usize, j: usize) -> Self {
        let mut l = Self::zero(nvars, width);
        l.coeffs[i][j] = FieldElement::ONE;
        l
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn coeff(&self, i: usize, j: usize) -> FieldElement {
        self.coeffs[i][j]
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.coeffs
    }

    /// Flat coefficient vector indexed by `i*width + j`.
    pub fn flat(&self) -> Vec<FieldElement> {
        self.coeffs.concat()
    }

    pub fn from_flat(v: &[FieldElement], width: usize) -> Self {
        LinearForm { coeffs: v.chunks(width).map(<[_]>::to_vec).collect(), width }
    }

    /// Stage `i` as a polynomial `Σ_j b_{ij} x^j`.
    pub fn component(&self, i: usize) -> UniPoly {
        UniPoly::new(self.coeffs[i].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c.is_zero())
    }

    /// Membership in `S_{1r}`: no variable of a stage below `r` occurs.
    pub fn in_stage(&self, r: usize) -> bool {
        self.coeffs.iter().take(r).flatten().all(|c| c.is_zero())
    }

    /// First stage with a nonzero coefficient.
    pub fn lowest_stage(&self) -> Option<usize> {
        self.coeffs.iter().position(|r| r.iter().any(|c| !c.is_zero()))
    }

    pub fn add(&self, other: &Self, f: &FieldSpec) -> Self {
        self.zip(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Self, f: &FieldSpec) -> Self {
        self.zip(other, |a, b| f.sub(a, b))
    }

    pub fn scale(&self, c: FieldElement, f: &FieldSpec) -> Self {
        let coeffs = self.coeffs.iter().map(|r| r.iter().map(|&a| f.mul(c, a)).collect()).collect();
        LinearForm { coeffs, width: self.width }
    }

    fn zip(&self, other: &Self, op: impl Fn(FieldElement, FieldElement) -> FieldElement) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| op(x, y)).collect())
            .collect();
        LinearForm { coeffs, width: self.width }
    }

    /// Zeroes out stage `i`.
    pub fn without_stage(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.coeffs[i].iter_mut().for_each(|c| *c = FieldElement::ZERO);
        out
    }

    /// Evaluates at `x_{ij} = values[i][j]`.
    pub fn eval(&self, values: &[Vec<FieldElement>], f: &FieldSpec) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        for (row, vals) in self.coeffs.iter().zip(values) {
            for (&b, &v) in row.iter().zip(vals) {
                acc = f.add(acc, f.mul(b, v));
            }
        }
        acc
    }

    /// Evaluates under `x_{ij} = x_i^(q^j)`, which is how the form acts on `W^m`.
    pub fn eval_frobenius(&self, point: &[FieldElement], f: &FieldSpec) -> FieldElement {
        self.coeffs
            .iter()
            .zip(point)
            .fold(FieldElement::ZERO, |acc, (row, &x)| f.add(acc, apply(&UniPoly::new(row.clone()), x, f)))
    }

    pub fn to_multipoly(&self, ring: &Ring) -> Result<MultiPoly> {
        let n = self.nvars() * self.width;
        if ring.nvars() != n {
            return Err(Error::DimensionMismatch(format!("ring has {} variables, form needs {n}", ring.nvars())));
        }
        let terms = self
            .flat()
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(v, c)| (Monomial::var(n, v), c));
        MultiPoly::from_terms(ring, terms)
    }

    /// Reads a homogeneous linear polynomial of the `x_{ij}` ring.
    pub fn from_multipoly(p: &MultiPoly, nvars: usize, width: usize) -> Result<Self> {
        let mut flat = vec![FieldElement::ZERO; nvars * width];
        for (m, c) in p.terms() {
            match m.exps().iter().position(|&e| e > 0) {
                Some(v) if m.degree() == 1 => flat[v] = c,
                _ => return Err(Error::InvalidInput("not a homogeneous linear form".into())),
            }
        }
        Ok(Self::from_flat(&flat, width))
    }
}

/// Per-variable substitution `x_i -> g(f_i(x_i))` with ordinary polynomial composition.
///
/// This is composition of the conventional polynomials. The linearized maps
/// compose through [`twisted_mul`] instead: `L(g) ∘ L(f_i) = L(g ⊗ f_i)`.
pub fn compose(g: &UniPoly, f: &[UniPoly], field: &FieldSpec) -> Vec<UniPoly> {
    f.iter()
        .map(|fi| {
            g.coeffs().iter().rev().fold(UniPoly::zero(), |acc, &c| {
                acc.mul(fi, field).add(&UniPoly::constant(c), field)
            })
        })
        .collect()
}

/// A Frobenius-stable `k'`-subspace `W = ker f_W(τ) ⊆ k`.
#[derive(Clone, Debug)]
pub struct InvariantSubspace {
    field: Arc<FieldSpec>,
    f_w: UniPoly,
    g_w: UniPoly,
    basis: Vec<FieldElement>,
    tau: Vec<Vec<FieldElement>>,
    // maps k'-coordinates of an element of W to its coordinates in `basis`
    decoder: Vec<Vec<FieldElement>>,
}

impl InvariantSubspace {
    /// Builds `W` from a monic divisor `f_W` of `x^n - 1` over `k'`.
    pub fn from_fw(f_w: &UniPoly, field: &Arc<FieldSpec>) -> Result<Self> {
        let f = field.as_ref();
        let Some(nprime) = f_w.degree().filter(|&d| d >= 1) else {
            return Err(Error::InvalidInput("f_W must have degree at least 1".into()));
        };
        if !f_w.is_monic() || !f_w.over_subfield(f) {
            return Err(Error::InvalidInput("f_W must be monic with coefficients in k'".into()));
        }
        let n = f.n();
        if !UniPoly::x_pow_minus_one(f, n).rem(f_w, f)?.is_zero() {
            return Err(Error::NotADivisor);
        }
        // matrix of f_W(τ) on k'-coordinates
        let fr = f.frobenius_matrix();
        let mut op = vec![vec![FieldElement::ZERO; n]; n];
        let mut power = identity(n);
        for &c in f_w.coeffs() {
            for r in 0..n {
                for s in 0..n {
                    op[r][s] = f.add(op[r][s], f.mul(c, power[r][s]));
                }
            }
            power = linalg::mat_mul(f, &fr, &power);
        }
        let kernel = linalg::kernel(f, &op, n);
        if kernel.len() != nprime {
            return Err(Error::DimensionMismatch(format!(
                "ker f_W(τ) has dimension {} but deg f_W = {nprime}",
                kernel.len()
            )));
        }
        let basis: Vec<FieldElement> =
            kernel.iter().map(|v| f.from_kprime_coords(v)).collect::<Result<_>>()?;
        let decoder = left_inverse(f, &kernel);
        let g_w = UniPoly::monomial(FieldElement::ONE, nprime).sub(f_w, f);
        let mut w = InvariantSubspace {
            field: field.clone(),
            f_w: f_w.clone(),
            g_w,
            basis,
            tau: Vec::new(),
            decoder,
        };
        let tau_cols: Vec<Vec<FieldElement>> =
            w.basis.iter().map(|&b| w.coordinates(f.frobenius_q(b, 1)).expect("τ(W) ⊆ W")).collect();
        w.tau = (0..nprime).map(|r| tau_cols.iter().map(|c| c[r]).collect()).collect();
        Ok(w)
    }

    /// `W = k`.
    pub fn whole(field: &Arc<FieldSpec>) -> Result<Self> {
        Self::from_fw(&UniPoly::x_pow_minus_one(field, field.n()), field)
    }

    /// `W = k'`.
    pub fn subfield(field: &Arc<FieldSpec>) -> Result<Self> {
        Self::from_fw(&UniPoly::new(vec![field.from_int(-1), FieldElement::ONE]), field)
    }

    /// Every `W`, one per monic divisor of `x^n - 1` over `k'`.
    pub fn all(field: &Arc<FieldSpec>) -> Result<Vec<Self>> {
        let sub = field.subfield();
        UniPoly::x_pow_minus_one(field, field.n())
            .monic_divisors(&sub)
            .iter()
            .filter(|d| d.degree().unwrap_or(0) >= 1)
            .map(|d| Self::from_fw(d, field))
            .collect()
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn f_w(&self) -> &UniPoly {
        &self.f_w
    }

    /// `g_W = x^{n'} - f_W`.
    pub fn g_w(&self) -> &UniPoly {
        &self.g_w
    }

    pub fn nprime(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    /// Matrix of `τ|_W` in [`Self::basis`] (column `j` holds `τ(w_j)`).
    pub fn tau_matrix(&self) -> &[Vec<FieldElement>] {
        &self.tau
    }

    /// Coordinates of `x` in the basis of `W`, or `None` if `x ∉ W`.
    pub fn coordinates(&self, x: FieldElement) -> Option<Vec<FieldElement>> {
        let f = &self.field;
        let c = linalg::mat_vec(f, &self.decoder, &f.kprime_coords(x));
        (self.combine(&c) == x).then_some(c)
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        self.coordinates(x).is_some()
    }

    /// `Σ c_l w_l`.
    pub fn combine(&self, coords: &[FieldElement]) -> FieldElement {
        let f = &self.field;
        coords
            .iter()
            .zip(&self.basis)
            .fold(FieldElement::ZERO, |acc, (&c, &b)| f.add(acc, f.mul(c, b)))
    }

    /// All `q^{n'}` elements of `W`.
    pub fn elements(&self) -> Vec<FieldElement> {
        let sub: Vec<FieldElement> = self.field.subfield_elements().collect();
        let mut out = vec![FieldElement::ZERO];
        for &b in &self.basis {
            out = out
                .iter()
                .flat_map(|&x| sub.iter().map(move |&c| (x, c)))
                .map(|(x, c)| self.field.add(x, self.field.mul(c, b)))
                .collect();
        }
        out
    }

    /// `k'`-basis of `ker L(g) ∩ W`.
    pub fn kernel_of(&self, g: &UniPoly) -> Vec<FieldElement> {
        let f = &self.field;
        let cols: Vec<Vec<FieldElement>> = self.basis.iter().map(|&b| f.kprime_coords(apply(g, b, f))).collect();
        let rows: Vec<Vec<FieldElement>> =
            (0..f.n()).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
        linalg::kernel(f, &rows, self.nprime()).iter().map(|v| self.combine(v)).collect()
    }
}

fn identity(n: usize) -> Vec<Vec<FieldElement>> {
    (0..n)
        .map(|r| (0..n).map(|c| if r == c { FieldElement::ONE } else { FieldElement::ZERO }).collect())
        .collect()
}

/// For independent vectors `v_0..v_{d-1}` in `F^n`, a `d x n` matrix `P` with
/// `P v_l = e_l`.
fn left_inverse(f: &FieldSpec, vectors: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
    let d = vectors.len();
    let n = vectors.first().map_or(0, Vec::len);
    // choose d coordinates on which the vectors are independent
    let mut chosen: Vec<usize> = Vec::new();
    for r in 0..n {
        let mut trial = chosen.clone();
        trial.push(r);
        let sub: Vec<Vec<FieldElement>> =
            trial.iter().map(|&t| vectors.iter().map(|v| v[t]).collect()).collect();
        if linalg::rank(f, &sub) == trial.len() {
            chosen = trial;
        }
        if chosen.len() == d {
            break;
        }
    }
    let square: Vec<Vec<FieldElement>> =
        chosen.iter().map(|&t| vectors.iter().map(|v| v[t]).collect()).collect();
    let inv = linalg::inverse(f, &square).expect("independent vectors");
    (0..d)
        .map(|l| {
            let mut row = vec![FieldElement::ZERO; n];
            for (k, &t) in chosen.iter().enumerate() {
                row[t] = inv[l][k];
            }
            row
        })
        .collect()
}

/// Linearized system `F` in `m` variables.
#[derive(Clone, Debug)]
pub struct LinearizedSystem {
    field: Arc<FieldSpec>,
    nvars: usize,
    polys: Vec<LinearizedPoly>,
}

impl LinearizedSystem {
    pub fn new(field: &Arc<FieldSpec>, nvars: usize, polys: Vec<LinearizedPoly>) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::InvalidInput("at least one variable is required".into()));
        }
        if let Some(p) = polys.iter().find(|p| p.nvars() != nvars) {
            return Err(Error::DimensionMismatch(format!(
                "expected {nvars} variables, found {}",
                p.nvars()
            )));
        }
        Ok(LinearizedSystem { field: field.clone(), nvars, polys })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn polys(&self) -> &[LinearizedPoly] {
        &self.polys
    }

    pub fn vanishes_at(&self, point: &[FieldElement]) -> bool {
        self.polys.iter().all(|p| p.eval(point, &self.field).is_zero())
    }

    /// `F` as ordinary polynomials in `X0..X{m-1}` over `k`.
    pub fn to_poly_system(&self) -> Result<crate::poly::PolySystem> {
        let ring = Ring::with_indexed_vars(self.field.clone(), Level::K, "X", self.nvars);
        let polys = self.polys.iter().map(|p| p.to_multipoly(&ring)).collect::<Result<_>>()?;
        crate::poly::PolySystem::new(&ring, polys)
    }
}

/// Wire form of a linearized system: `coeffs[f][i][j]` is `a_{ij}` of the
/// `f`-th polynomial as flat digits; `fw` holds `f_W` from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearizedSystemJson {
    pub field: crate::gf::FieldSpecJson,
    pub m: usize,
    pub coeffs: Vec<Vec<Vec<Vec<u32>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fw: Option<Vec<u32>>,
}

impl LinearizedSystemJson {
    pub fn to_system(&self) -> Result<(LinearizedSystem, Option<UniPoly>)> {
        let field = crate::gf::make_field_from_json(&self.field)?;
        let mut polys = Vec::new();
        for table in &self.coeffs {
            if table.len() != self.m {
                return Err(Error::DimensionMismatch(format!(
                    "coefficient table has {} rows, m = {}",
                    table.len(),
                    self.m
                )));
            }
            let comps = table
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|d| field.from_flat_digits(d))
                        .collect::<Result<Vec<_>>>()
                        .map(UniPoly::new)
                })
                .collect::<Result<Vec<_>>>()?;
            let bound = comps.iter().map(|c| c.coeffs().len()).max().unwrap_or(0).max(1);
            polys.push(LinearizedPoly::new(comps, bound)?);
        }
        let fw = match &self.fw {
            Some(raw) => Some(UniPoly::new(
                raw.iter().map(|&r| field.element(r)).collect::<Result<Vec<_>>>()?,
            )),
            None => None,
        };
        Ok((LinearizedSystem::new(&field, self.m, polys)?, fw))
    }

    pub fn from_system(sys: &LinearizedSystem, fw: Option<&UniPoly>) -> Self {
        let f = sys.field();
        LinearizedSystemJson {
            field: f.to_json(),
            m: sys.nvars(),
            coeffs: sys
                .polys()
                .iter()
                .map(|p| {
                    p.components()
                        .iter()
                        .map(|c| c.coeffs().iter().map(|&a| f.flat_digits(a)).collect())
                        .collect()
                })
                .collect(),
            fw: fw.map(|g| g.coeffs().iter().map(|c| c.raw()).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn l_and_ell_share_coefficients() {
        let f = make_field(2, 1, 3, None, None).unwrap();
        let a = f.t();
        let comps = vec![UniPoly::new(vec![FieldElement::ONE, FieldElement::ZERO, a])];
        let lp = LinearizedPoly::new(comps.clone(), 3).unwrap();
        let ring = Ring::with_indexed_vars(f.clone(), Level::K, "X", 1);
        let x = ring.var(0);
        assert_eq!(lp.to_multipoly(&ring).unwrap(), x.add(&x.pow(4).scale(a)).unwrap());
        let form = LinearForm::new(&comps, 3).unwrap();
        assert_eq!(form.coeff(0, 0), FieldElement::ONE);
        assert_eq!(form.coeff(0, 2), a);
        assert_eq!(
            LinearizedPoly::new(comps.clone(), 2).unwrap_err(),
            Error::DegreeExceedsBound { var: 0, degree: 2, bound: 2 }
        );
        assert!(LinearForm::new(&comps, 2).is_err());

        let two = LinearForm::new(&[UniPoly::one(), UniPoly::one()], 2).unwrap();
        assert_eq!(two.flat(), vec![FieldElement::ONE, FieldElement::ZERO, FieldElement::ONE, FieldElement::ZERO]);
    }

    #[test]
    fn subspace_examples() {
        let f = make_field(2, 1, 3, None, None).unwrap();
        let whole = InvariantSubspace::whole(&f).unwrap();
        assert_eq!(whole.nprime(), 3);
        assert_eq!(whole.elements().len(), 8);
        let sub = InvariantSubspace::subfield(&f).unwrap();
        assert_eq!(sub.nprime(), 1);
        let mut els = sub.elements();
        els.sort();
        assert_eq!(els, vec![f.zero(), f.one()]);

        let w = InvariantSubspace::from_fw(&UniPoly::from_raw(&[1, 1, 1]), &f).unwrap();
        assert_eq!(w.nprime(), 2);
        for &b in w.basis() {
            assert!(apply(w.f_w(), b, &f).is_zero());
            assert!(w.contains(f.frobenius_q(b, 1)));
        }
        assert_eq!(w.g_w(), &UniPoly::from_raw(&[1, 1]));
        assert_eq!(
            InvariantSubspace::from_fw(&UniPoly::from_raw(&[1, 0, 1]), &f).unwrap_err(),
            Error::NotADivisor
        );
        assert_eq!(InvariantSubspace::all(&f).unwrap().len(), 3);
    }

    #[test]
    fn repeated_factor_subspaces() {
        // x^2 - 1 = (x+1)^2 over GF(2)
        let f = make_field(2, 1, 2, None, None).unwrap();
        let all = InvariantSubspace::all(&f).unwrap();
        let dims: Vec<usize> = all.iter().map(InvariantSubspace::nprime).collect();
        assert_eq!(dims, vec![1, 2]);
    }

    #[test]
    fn literal_compose_differs_from_operator_composition() {
        let f = make_field(2, 1, 2, None, None).unwrap();
        let g = UniPoly::from_raw(&[0, 0, 1]);
        let fi = UniPoly::from_raw(&[1, 1]);
        let literal = &compose(&g, std::slice::from_ref(&fi), &f)[0];
        assert_eq!(literal, &UniPoly::from_raw(&[1, 0, 1]));
        let twisted = twisted_mul(&g, &fi, &f);
        let t = f.t();
        let direct = apply(&g, apply(&fi, t, &f), &f);
        assert_eq!(apply(&twisted, t, &f), direct);
        assert_ne!(apply(literal, t, &f), direct);
        assert_eq!(compose(&UniPoly::x(), std::slice::from_ref(&fi), &f), vec![fi]);
    }
}

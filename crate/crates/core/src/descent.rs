//! Weil descent `F -> F'` and the auxiliary systems `F_1`, `F'_1`, `G`, `G_1`, `G_2`.
//!
//! Variable layout is fixed so emitted systems are byte-stable: the descended
//! variable `X_{ij}` has index `i*n + j` and is named `X{i}_{j}`; in `F_1` the
//! original variables come first, followed by `Y{i}_{j}` (`j = 1..n-1`) at
//! index `m + i*(n-1) + (j-1)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{moore_matrix, polynomial_basis, FieldElement, FieldSpec, FrobeniusMatrix};
use crate::linalg;
use crate::poly::{Level, Monomial, MultiPoly, PolySystem, Ring};

/// A basis `α_0..α_{n-1}` of `k/k'` with its Moore matrix.
#[derive(Clone, Debug)]
pub struct DescentContext {
    field: Arc<FieldSpec>,
    basis: Vec<FieldElement>,
    gamma: FrobeniusMatrix,
    m: usize,
    // inverse of the k'-coordinate matrix whose column j is alpha_j
    coord_inv: Vec<Vec<FieldElement>>,
    source: Ring,
    target: Ring,
}

impl DescentContext {
    /// `basis = None` selects the polynomial basis `1, t, ..., t^{n-1}`.
    pub fn new(source: &Ring, basis: Option<Vec<FieldElement>>) -> Result<DescentContext> {
        let field = source.field().clone();
        let n = field.n();
        let m = source.nvars();
        let basis = basis.unwrap_or_else(|| polynomial_basis(&field));
        let gamma = moore_matrix(&field, &basis)?;
        let coords: Vec<Vec<FieldElement>> = (0..n)
            .map(|r| basis.iter().map(|&a| field.kprime_coords(a)[r]).collect())
            .collect();
        let coord_inv = linalg::inverse(&field, &coords).ok_or(Error::NotABasis)?;
        let names = (0..m)
            .flat_map(|i| (0..n).map(move |j| format!("X{i}_{j}")))
            .collect();
        let target = Ring::new(field.clone(), Level::KPrime, names)?;
        Ok(DescentContext { field, basis, gamma, m, coord_inv, source: source.clone(), target })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    pub fn gamma(&self) -> &FrobeniusMatrix {
        &self.gamma
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.field.n()
    }

    pub fn source_ring(&self) -> &Ring {
        &self.source
    }

    /// `k'[X_{ij}]` (coefficients stored in `k`).
    pub fn descended_ring(&self) -> &Ring {
        &self.target
    }

    /// Coordinates `β` with `c = Σ β_j α_j`, `β_j ∈ k'`.
    pub fn decompose(&self, c: FieldElement) -> Vec<FieldElement> {
        linalg::mat_vec(&self.field, &self.coord_inv, &self.field.kprime_coords(c))
    }

    pub fn recompose(&self, coords: &[FieldElement]) -> FieldElement {
        coords
            .iter()
            .zip(&self.basis)
            .fold(FieldElement::ZERO, |acc, (&b, &a)| self.field.add(acc, self.field.mul(b, a)))
    }

    /// `g_f = f(Σ_j α_j X_{0j}, ...)` in `k[X_{ij}]`.
    pub fn substituted(&self, f: &MultiPoly) -> Result<MultiPoly> {
        let ring = self.target_k();
        let n = self.n();
        let images: Vec<MultiPoly> = (0..self.m)
            .map(|i| {
                let mut s = ring.zero();
                for (j, &a) in self.basis.iter().enumerate() {
                    s = s.add(&ring.var(i * n + j).scale(a)).expect("same ring");
                }
                s
            })
            .collect();
        if !f.ring().same_as(&self.source) {
            return Err(Error::RingMismatch);
        }
        if self.m == 0 {
            return Ok(MultiPoly::constant(&ring, f.coeff(&Monomial::one(0))));
        }
        f.substitute(&images)
    }

    fn target_k(&self) -> Ring {
        // same variables as the descended ring; the level tag does not affect arithmetic
        self.target.clone()
    }
}

/// Weil descent of one polynomial: `(f_0, ..., f_{n-1})` with
/// `f(Σ α_j X_{0j}, ...) = Σ_j f_j α_j` and every `f_j` over `k'`.
pub fn weil_descend(f: &MultiPoly, ctx: &DescentContext) -> Result<Vec<MultiPoly>> {
    let g = ctx.substituted(f)?;
    let n = ctx.n();
    let ring = ctx.descended_ring();
    let mut parts: Vec<Vec<(Monomial, FieldElement)>> = vec![Vec::new(); n];
    for (m, c) in g.terms() {
        for (j, b) in ctx.decompose(c).into_iter().enumerate() {
            if !b.is_zero() {
                parts[j].push((m.clone(), b));
            }
        }
    }
    parts.into_iter().map(|t| MultiPoly::from_terms(ring, t)).collect()
}

/// `F' = {f_j}` in `f`-major order; zero components are dropped.
pub fn weil_descent_system(system: &PolySystem, ctx: &DescentContext) -> Result<PolySystem> {
    let mut out = Vec::new();
    for f in system.polys() {
        out.extend(weil_descend(f, ctx)?.into_iter().filter(|p| !p.is_zero()));
    }
    PolySystem::new(ctx.descended_ring(), out)
}

/// Field equations `X^q - X` for every variable of `ring`.
pub fn field_equations(ring: &Ring, q: u32) -> Vec<MultiPoly> {
    (0..ring.nvars())
        .map(|v| ring.var(v).pow(q).sub(&ring.var(v)).expect("same ring"))
        .collect()
}

/// `F'_1 = F' ∪ {X_{ij}^q - X_{ij}}`.
pub fn build_fprime1(system: &PolySystem, ctx: &DescentContext) -> Result<PolySystem> {
    let mut s = weil_descent_system(system, ctx)?;
    for e in field_equations(ctx.descended_ring(), ctx.field.q()) {
        s.push(e)?;
    }
    Ok(s)
}

/// The ring of `F_1`: the original variables, then `Y{i}_{j}`.
pub fn f1_ring(source: &Ring) -> Result<Ring> {
    let n = source.field().n();
    let mut names = source.vars().to_vec();
    for i in 0..source.nvars() {
        for j in 1..n {
            names.push(format!("Y{i}_{j}"));
        }
    }
    Ring::new(source.field().clone(), Level::K, names)
}

/// `F_1 = F ∪ {X_i^q - Y_{i1}, ..., Y_{i,n-1}^q - X_i}`; for `n = 1` the chain
/// is `X_i^q - X_i`.
pub fn build_f1(system: &PolySystem) -> Result<PolySystem> {
    let src = system.ring();
    let ring = f1_ring(src)?;
    let m = src.nvars();
    let n = src.field().n();
    let q = src.field().q();
    let map: Vec<usize> = (0..m).collect();
    let mut polys: Vec<MultiPoly> = system.polys().iter().map(|p| p.rename_into(&ring, &map)).collect();
    for i in 0..m {
        // chain X_i -> Y_i1 -> ... -> Y_{i,n-1} -> X_i
        let chain: Vec<usize> =
            std::iter::once(i).chain((1..n).map(|j| m + i * (n - 1) + (j - 1))).collect();
        for (k, &v) in chain.iter().enumerate() {
            let next = chain[(k + 1) % chain.len()];
            polys.push(ring.var(v).pow(q).sub(&ring.var(next))?);
        }
    }
    PolySystem::new(&ring, polys)
}

/// `G = {g_f^{σ_0}, ..., g_f^{σ_{n-1}} : f ∈ F}` over `k[X_{ij}]`.
pub fn build_sigma_orbit_g(system: &PolySystem, ctx: &DescentContext) -> Result<PolySystem> {
    let mut out = Vec::new();
    for f in system.polys() {
        let g = ctx.substituted(f)?;
        for i in 0..ctx.n() {
            out.push(g.apply_sigma(i));
        }
    }
    PolySystem::new(ctx.descended_ring(), out)
}

/// `G_1 = G ∪ {X_{ij}^q - X_{ij}}`.
pub fn build_g1(system: &PolySystem, ctx: &DescentContext) -> Result<PolySystem> {
    let mut s = build_sigma_orbit_g(system, ctx)?;
    for e in field_equations(ctx.descended_ring(), ctx.field.q()) {
        s.push(e)?;
    }
    Ok(s)
}

/// `G_2 = {g_f(Z)} ∪ {Z_{ij}^q - Z_{ij}}`, with `Z_{ij}` sharing the layout of `X_{ij}`.
pub fn build_g2(system: &PolySystem, ctx: &DescentContext) -> Result<PolySystem> {
    let mut out = Vec::new();
    for f in system.polys() {
        out.push(ctx.substituted(f)?);
    }
    out.extend(field_equations(ctx.descended_ring(), ctx.field.q()));
    PolySystem::new(ctx.descended_ring(), out)
}

/// The coordinate change `(X_i, Y_{i1}, ..., Y_{i,n-1})ᵀ = Γ (Z_{i0}, ..., Z_{i,n-1})ᵀ`
/// applied to a polynomial of the `F_1` ring.
pub fn f1_to_z(p: &MultiPoly, ctx: &DescentContext) -> Result<MultiPoly> {
    let n = ctx.n();
    let m = ctx.m();
    let z = ctx.descended_ring();
    let row = |l: usize, i: usize| -> MultiPoly {
        let mut s = z.zero();
        for j in 0..n {
            s = s.add(&z.var(i * n + j).scale(ctx.gamma().get(l, j))).expect("same ring");
        }
        s
    };
    let mut images: Vec<MultiPoly> = (0..m).map(|i| row(0, i)).collect();
    for i in 0..m {
        for l in 1..n {
            images.push(row(l, i));
        }
    }
    p.substitute(&images)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `k^m -> k'^{mn}`.
    Forward,
    /// `k'^{mn} -> k^m`.
    Backward,
}

/// Moves a point between `k^m` and `k'^{mn}` through the basis.
pub fn solution_transport(
    point: &[FieldElement],
    ctx: &DescentContext,
    direction: Direction,
) -> Result<Vec<FieldElement>> {
    let f = &ctx.field;
    let n = ctx.n();
    match direction {
        Direction::Forward => {
            if point.len() != ctx.m {
                return Err(Error::InvalidInput(format!("expected {} coordinates", ctx.m)));
            }
            let mut out = Vec::with_capacity(ctx.m * n);
            for (i, &x) in point.iter().enumerate() {
                if x.raw() >= f.order() {
                    return Err(Error::CoordinateNotInField { index: i });
                }
                out.extend(ctx.decompose(x));
            }
            Ok(out)
        }
        Direction::Backward => {
            if point.len() != ctx.m * n {
                return Err(Error::InvalidInput(format!("expected {} coordinates", ctx.m * n)));
            }
            if let Some(idx) = point.iter().position(|&x| !f.lies_in_subfield(x)) {
                return Err(Error::CoordinateNotInField { index: idx });
            }
            Ok(point.chunks(n).map(|c| ctx.recompose(c)).collect())
        }
    }
}

/// `(x_i) -> (x_i, x_i^q, ..., x_i^{q^{n-1}})` laid out as in [`f1_ring`].
pub fn f1_point(point: &[FieldElement], field: &FieldSpec) -> Vec<FieldElement> {
    let n = field.n();
    let mut out = point.to_vec();
    for &x in point {
        for j in 1..n {
            out.push(field.frobenius_q(x, j));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn setup(n: usize, m: usize) -> (Arc<FieldSpec>, Ring, DescentContext) {
        let f = make_field(2, 1, n, None, None).unwrap();
        let r = Ring::with_indexed_vars(f.clone(), Level::K, "X", m);
        let ctx = DescentContext::new(&r, None).unwrap();
        (f, r, ctx)
    }

    #[test]
    fn linear_descent() {
        let (_, r, ctx) = setup(2, 1);
        let parts = weil_descend(&r.var(0), &ctx).unwrap();
        let t = ctx.descended_ring();
        assert_eq!(parts, vec![t.var(0), t.var(1)]);
    }

    #[test]
    fn square_over_gf4() {
        let (_, r, ctx) = setup(2, 1);
        let parts = weil_descend(&r.var(0).pow(2), &ctx).unwrap();
        let t = ctx.descended_ring();
        assert_eq!(parts[0], t.var(0).pow(2).add(&t.var(1).pow(2)).unwrap());
        assert_eq!(parts[1], t.var(1).pow(2));
    }

    #[test]
    fn constant_descent() {
        let (f, r, ctx) = setup(3, 1);
        let parts = weil_descend(&MultiPoly::constant(&r, f.one()), &ctx).unwrap();
        let t = ctx.descended_ring();
        assert_eq!(parts[0], t.one());
        assert!(parts[1].is_zero() && parts[2].is_zero());
    }

    #[test]
    fn f1_shapes() {
        let (_, r, _) = setup(2, 1);
        let sys = PolySystem::new(&r, vec![r.var(0)]).unwrap();
        let f1 = build_f1(&sys).unwrap();
        let g = f1.ring();
        assert_eq!(g.vars(), &["X0".to_string(), "Y0_1".to_string()]);
        assert_eq!(
            f1.polys(),
            &[
                g.var(0),
                g.var(0).pow(2).sub(&g.var(1)).unwrap(),
                g.var(1).pow(2).sub(&g.var(0)).unwrap()
            ]
        );

        let f = make_field(3, 1, 1, None, None).unwrap();
        let r1 = Ring::with_indexed_vars(f, Level::K, "X", 1);
        let f1 = build_f1(&PolySystem::new(&r1, vec![]).unwrap()).unwrap();
        assert_eq!(f1.polys(), &[r1.var(0).pow(3).sub(&r1.var(0)).unwrap()]);
    }

    #[test]
    fn fprime1_shape() {
        let (_, r, ctx) = setup(2, 1);
        let sys = PolySystem::new(&r, vec![r.var(0)]).unwrap();
        let s = build_fprime1(&sys, &ctx).unwrap();
        let t = ctx.descended_ring();
        assert_eq!(
            s.polys(),
            &[
                t.var(0),
                t.var(1),
                t.var(0).pow(2).sub(&t.var(0)).unwrap(),
                t.var(1).pow(2).sub(&t.var(1)).unwrap()
            ]
        );
    }

    #[test]
    fn transport_roundtrip() {
        let (f, _, ctx) = setup(3, 2);
        for a in f.elements() {
            for b in [f.zero(), f.t(), a] {
                let fwd = solution_transport(&[a, b], &ctx, Direction::Forward).unwrap();
                assert!(fwd.iter().all(|&c| f.lies_in_subfield(c)));
                assert_eq!(solution_transport(&fwd, &ctx, Direction::Backward).unwrap(), vec![a, b]);
            }
        }
        let bad = vec![f.t(), f.zero(), f.zero(), f.zero(), f.zero(), f.zero()];
        assert_eq!(
            solution_transport(&bad, &ctx, Direction::Backward).unwrap_err(),
            Error::CoordinateNotInField { index: 0 }
        );
    }
}

//! The spaces `V_{F,i}`, the relation `≡_i` and the last fall degree `d_F`.

mod groebner;
pub(crate) mod mono;
mod span;

use serde::{Deserialize, Serialize};

pub use groebner::{
    groebner_toy, groebner_with, ideal_truncation_dim, GroebnerBasis, DEFAULT_STEP_BUDGET,
};
pub use span::{equiv_mod, span_closure, span_closure_with_order, DegreeSpan, SpanEngine};

use crate::error::{Error, Result};
use crate::poly::{MonomialOrder, PolySystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FallStatus {
    Certified,
    CapLimited,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRecord {
    pub degree: u32,
    pub dim_v: usize,
    pub dim_v_cap_lower: usize,
    pub dim_prev: usize,
    pub fall: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FallProfile {
    pub records: Vec<DegreeRecord>,
    pub last_fall_degree: u32,
    pub status: FallStatus,
    /// Degree at which the computation stopped.
    pub reached: u32,
    /// Largest degree in the reduced Gröbner basis, when one was computed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groebner_degree: Option<u32>,
}

impl FallProfile {
    pub fn is_certified(&self) -> bool {
        self.status == FallStatus::Certified
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FallOptions {
    pub cap: u32,
    pub certify: bool,
    pub order: MonomialOrder,
    pub step_budget: usize,
}

impl FallOptions {
    pub fn new(cap: u32) -> Self {
        FallOptions { cap, certify: true, order: MonomialOrder::GrevLex, step_budget: DEFAULT_STEP_BUDGET }
    }
}

/// `max(q·deg F, (q-1)·#vars + 1) + 2`.
pub fn default_cap(q: u32, deg_f: u32, nvars: usize) -> u32 {
    (q * deg_f).max((q - 1) * nvars as u32 + 1) + 2
}

pub fn last_fall_degree(system: &PolySystem, cap: u32, certify: bool) -> Result<FallProfile> {
    last_fall_degree_with(system, &FallOptions { certify, ..FallOptions::new(cap) })
}

/// Computes `V_{F,i}` for `i = 1, 2, ...` and records where falls happen.
///
/// With `certify`, the run stops at the first `D ≥ max deg(GB)` where
/// `dim(V_{F,D} ∩ R_{≤j}) = dim(I ∩ R_{≤j})` for every `j ≤ D`. From there on
/// `V_{F,i} = I ∩ R_{≤i}` for all `i ≥ D` (a standard representation of an
/// ideal element never exceeds its own degree), so no later fall exists.
pub fn last_fall_degree_with(system: &PolySystem, opts: &FallOptions) -> Result<FallProfile> {
    if opts.cap < 1 {
        return Err(Error::InvalidInput("cap must be at least 1".into()));
    }
    let gb = if opts.certify {
        match groebner_with(system, opts.order, opts.step_budget) {
            Ok(g) => Some(g),
            Err(Error::StepBudgetExceeded(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let gb_degree = gb.as_ref().map(|g| g.max_degree());

    let mut engine = SpanEngine::new(system, opts.order)?;
    engine.step()?;
    let mut records = Vec::new();
    let mut last = 0;
    let mut status = FallStatus::CapLimited;
    let mut reached = 0;
    for d in 1..=opts.cap {
        let prev = engine.dim();
        engine.step()?;
        let lower = engine.dim_at_most(d - 1);
        let fall = lower > prev;
        if fall {
            last = d;
        }
        records.push(DegreeRecord {
            degree: d,
            dim_v: engine.dim(),
            dim_v_cap_lower: lower,
            dim_prev: prev,
            fall,
        });
        reached = d;
        if let Some(g) = &gb {
            if d >= g.max_degree()
                && (0..=d).all(|j| engine.dim_at_most(j) as u64 == ideal_truncation_dim(g, j))
            {
                status = FallStatus::Certified;
                break;
            }
        }
    }
    Ok(FallProfile { records, last_fall_degree: last, status, reached, groebner_degree: gb_degree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::poly::{Level, Ring};

    fn ring(p: u32, nvars: usize) -> Ring {
        Ring::with_indexed_vars(make_field(p, 1, 1, None, None).unwrap(), Level::K, "X", nvars)
    }

    #[test]
    fn span_of_single_variable() {
        let r = ring(2, 2);
        let sys = PolySystem::new(&r, vec![r.var(0)]).unwrap();
        let s = span_closure(&sys, 2).unwrap();
        assert_eq!(s.dim(), 3);
        let x0 = r.var(0);
        assert!(s.contains(&x0.pow(2)).unwrap());
        assert!(s.contains(&x0.mul(&r.var(1)).unwrap()).unwrap());
        assert!(!s.contains(&r.var(1).pow(2)).unwrap());
        assert_eq!(span_closure(&PolySystem::empty(&r), 3).unwrap().dim(), 0);
    }

    #[test]
    fn span_picks_up_falls() {
        let r = ring(2, 1);
        let x = r.var(0);
        let sys = PolySystem::new(&r, vec![x.pow(2).add(&x).unwrap(), x.pow(2)]).unwrap();
        let s = span_closure(&sys, 2).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&x).unwrap());
    }

    #[test]
    fn rref_shape() {
        let r = ring(3, 2);
        let x = |i| r.var(i);
        let sys = PolySystem::new(
            &r,
            vec![x(0).pow(2).sub(&x(1)).unwrap(), x(0).mul(&x(1)).unwrap().add(&r.one()).unwrap()],
        )
        .unwrap();
        let s = span_closure(&sys, 4).unwrap();
        let piv = s.pivots();
        assert!(piv.windows(2).all(|w| w[0] < w[1]));
        for (k, row) in s.rows().iter().enumerate() {
            assert!(row.last().unwrap().1.is_one());
            for (l, other) in s.rows().iter().enumerate() {
                if l != k {
                    assert!(other.iter().all(|&(c, _)| c != piv[k]));
                }
            }
        }
    }

    #[test]
    fn fall_profiles() {
        let r = ring(2, 2);
        let sys = PolySystem::new(&r, vec![r.var(0)]).unwrap();
        let p = last_fall_degree(&sys, 5, true).unwrap();
        assert_eq!(p.last_fall_degree, 0);
        assert!(p.is_certified());
        assert_eq!(p.reached, 1);

        let x = |i| r.var(i);
        let sys = PolySystem::new(&r, vec![x(0).pow(2).add(&x(1)).unwrap(), x(1)]).unwrap();
        let p = last_fall_degree(&sys, 6, true).unwrap();
        assert_eq!(p.last_fall_degree, 0);
        assert!(p.is_certified());

        // X0^2 + X1, X0 X1: the degree-3 combination X0 (X0^2 + X1) ... gives no fall,
        // but X1 * (X0^2 + X1) - X0 * (X0 X1) = X1^2 falls to degree 2 at i = 3
        let sys = PolySystem::new(
            &r,
            vec![x(0).pow(2).add(&x(1)).unwrap(), x(0).mul(&x(1)).unwrap()],
        )
        .unwrap();
        let p = last_fall_degree(&sys, 8, true).unwrap();
        assert!(p.is_certified());
        assert_eq!(p.last_fall_degree, 3);
    }

    #[test]
    fn equiv_mod_examples() {
        let r = ring(2, 2);
        let h = r.var(0).pow(2).add(&r.var(1)).unwrap();
        let sys = PolySystem::new(&r, vec![h.clone()]).unwrap();
        let f = r.var(1).mul(&h).unwrap();
        assert!(equiv_mod(&f, &r.zero(), 3, &sys).unwrap());
        assert!(equiv_mod(&f, &f, 3, &sys).unwrap());
        assert!(!equiv_mod(&r.var(1), &r.zero(), 3, &sys).unwrap());
        assert_eq!(
            equiv_mod(&f, &r.zero(), 2, &sys).unwrap_err(),
            Error::DegreeTooHigh { degree: 3, cap: 2 }
        );
    }
}

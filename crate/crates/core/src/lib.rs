//! Weil descent, last fall degrees and linearized systems over finite fields.
//!
//! The crate is organised bottom-up:
//!
//! * [`gf`]: the tower `GF(p) ⊂ k' ⊂ k` and its Frobenius.
//! * [`poly`]: sparse multivariate polynomials over `k`.
//! * [`falldeg`]: the spaces `V_{F,i}`, last fall degrees and a small Buchberger.
//! * [`descent`]: Weil descent and the auxiliary systems `F_1`, `F'_1`, `G`, `G_1`, `G_2`.
//! * [`linsys`]: linearized polynomials, invariant subspaces and the structured solver.
//! * [`harness`]: seeded experiment campaigns used by the CLI and tests.

pub mod descent;
pub mod error;
pub mod falldeg;
pub mod gf;
pub mod harness;
pub mod linalg;
pub mod linsys;
pub mod poly;
pub mod upoly;

pub use error::{Error, Result};
pub use gf::{make_field, FieldElement, FieldSpec};

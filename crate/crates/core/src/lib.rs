//! Exact decision procedures for the algebraicity (equivalently, global
//! boundedness) of generating functions of first- and second-order
//! P-recursive sequences with linear polynomial coefficients.
//!
//! The crate is organized bottom-up:
//!
//! * [`arith`]: rationals, `ℚ(√D)`, polynomials and truncated series.
//! * [`linalg`]: exact elimination and nullspaces.
//! * [`recurrence`]: order-1 and order-2 recurrence models.
//! * [`hypergeom`]: the order-1 decider.
//! * [`integral`]: algebraicity of `∫ xⁿ (1 + a₁x + a₂x²)^q dx`.
//! * [`order2`]: the all / none / line classification for order 2.
//! * [`probes`]: numeric oracles used to cross-check every verdict.
//! * [`batch`]: data-parallel drivers (rayon behind the `parallel` feature).

pub mod arith;
pub mod batch;
pub mod hypergeom;
pub mod integral;
pub mod linalg;
pub mod order2;
pub mod probes;
pub mod recurrence;

pub use arith::{Rational, TruncatedSeries, UniPoly};

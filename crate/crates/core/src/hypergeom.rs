//! Order-1 decider: `(n + b₀)sₙ + (a₁n + b₁)sₙ₋₁ = 0`.
//!
//! The generating function is, up to algebraic factors,
//! `₂F₁([b₀, b₀ − b₁/a₁], [b₀ + 1]; −a₁x)`, so its algebraicity is read off
//! the Gaussian algebraicity criterion with `α = b₀`, `β = b₀ − b₁/a₁`,
//! `k = 1`. Both the criterion and its specialization are implemented and
//! must agree.

use num_traits::{Signed, Zero};

use crate::arith::{int, is_natural, is_neg_natural, Rational};
use crate::recurrence::Order1Rec;

/// Parameters of `₂F₁([α, β], [α + k]; x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub k: i64,
}

/// Which line of the Gaussian criterion fired (`0` for `k ≤ 0`).
pub fn gauss_2f1_condition(p: &GaussParams) -> Option<u8> {
    if p.k <= 0 {
        return Some(0);
    }
    let (a, b) = (&p.alpha, &p.beta);
    let k = int(p.k);
    let (ai, bi) = (a.is_integer(), b.is_integer());
    let zero = Rational::zero();
    if ai && !bi {
        return Some(1);
    }
    if !ai && is_neg_natural(b) {
        return Some(2);
    }
    if !ai && !bi && is_natural(&(b - a - &k)) {
        return Some(3);
    }
    if ai && bi {
        let gap_ok = b - a >= k;
        if a < b && *b <= zero && gap_ok {
            return Some(4);
        }
        if zero < *a && a < b && gap_ok {
            return Some(5);
        }
        if *b <= zero && zero < *a {
            return Some(6);
        }
    }
    None
}

pub fn gauss_2f1_algebraic(p: &GaussParams) -> bool {
    gauss_2f1_condition(p).is_some()
}

/// The five conditions stated directly in `(b₀, r = b₁/a₁)`; returns the
/// index of the first that holds.
pub fn order1_condition(b0: &Rational, r: &Rational) -> Option<u8> {
    let (b0i, ri) = (b0.is_integer(), r.is_integer());
    let zero = Rational::zero();
    let beta = b0 - r;
    if is_natural(b0) && !ri {
        return Some(1);
    }
    if !b0i && is_neg_natural(&beta) {
        return Some(2);
    }
    if !b0i && !beta.is_integer() && is_neg_natural(&(r + int(1))) {
        return Some(3);
    }
    if b0i && ri {
        if r.is_negative() && zero < *b0 && *r <= int(-1) {
            return Some(4);
        }
        if zero < *b0 && b0 <= r {
            return Some(5);
        }
    }
    None
}

/// The substitution `α = b₀`, `β = b₀ − b₁/a₁`, `k = 1`.
pub fn gauss_params(rec: &Order1Rec) -> GaussParams {
    GaussParams { alpha: rec.b0().clone(), beta: rec.b0() - rec.ratio(), k: 1 }
}

/// Whether every solution of `rec` has an algebraic (equivalently globally
/// bounded) generating function.
///
/// For `b₀ = 0` the solution is `s₀(1 + a₁x)^{−1−b₁/a₁}` and the
/// hypergeometric factor degenerates to the constant 1, which the general
/// criterion does not cover; that case is algebraic outright.
pub fn hypergeom_globally_bounded(rec: &Order1Rec) -> bool {
    let direct = order1_condition(rec.b0(), &rec.ratio()).is_some();
    let routed = gauss_2f1_algebraic(&gauss_params(rec));
    assert_eq!(direct, routed, "order-1 condition list and Gaussian criterion disagree for {rec:?}");
    rec.b0().is_zero() || direct
}

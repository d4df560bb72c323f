//! Order-1 and order-2 recurrences with linear coefficients, their
//! validation, normalization and exact unrolling.
//!
//! Order 2: `(n + b₀)sₙ + (a₁n + b₁)sₙ₋₁ + (a₂n + b₂)sₙ₋₂ = 0`.
//! Order 1: `(n + b₀)sₙ + (a₁n + b₁)sₙ₋₁ = 0`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{fmt_rational, int, is_natural, is_neg_positive_natural, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecurrenceError {
    #[error("leading coefficient vanishes identically")]
    LeadingZero,
    #[error("a1 = 0 after normalization")]
    VanishingA1,
    #[error("a2 = 0 after normalization")]
    VanishingA2,
    #[error("b0 = {0} makes n + b0 vanish at some n >= 1")]
    ExcludedB0(String),
    #[error("n + b0 vanishes at n = {0}")]
    DivisionByZero(usize),
}

/// Linear coefficient `slope·n + offset`, as written in input documents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCoeff {
    pub slope: Rational,
    pub offset: Rational,
}

impl LinearCoeff {
    pub fn new(slope: Rational, offset: Rational) -> Self {
        Self { slope, offset }
    }

    pub fn ints(slope: i64, offset: i64) -> Self {
        Self::new(int(slope), int(offset))
    }

    pub fn eval(&self, n: usize) -> Rational {
        &self.slope * int(n as i64) + &self.offset
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialPair {
    pub s0: Rational,
    pub s1: Rational,
}

impl InitialPair {
    pub fn new(s0: Rational, s1: Rational) -> Self {
        Self { s0, s1 }
    }

    pub fn ints(s0: i64, s1: i64) -> Self {
        Self::new(int(s0), int(s1))
    }

    pub fn is_zero(&self) -> bool {
        self.s0.is_zero() && self.s1.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Order1Rec {
    b0: Rational,
    a1: Rational,
    b1: Rational,
}

impl Order1Rec {
    pub fn new(b0: Rational, a1: Rational, b1: Rational) -> Result<Self, RecurrenceError> {
        if a1.is_zero() {
            return Err(RecurrenceError::VanishingA1);
        }
        if is_neg_positive_natural(&b0) {
            return Err(RecurrenceError::ExcludedB0(fmt_rational(&b0)));
        }
        Ok(Self { b0, a1, b1 })
    }

    /// Divides `(α₀n + β₀)sₙ + (α₁n + β₁)sₙ₋₁` through by `α₀`.
    pub fn normalize(leading: &LinearCoeff, trailing: &LinearCoeff) -> Result<Self, RecurrenceError> {
        if leading.slope.is_zero() {
            return Err(RecurrenceError::LeadingZero);
        }
        let l = &leading.slope;
        Self::new(&leading.offset / l, &trailing.slope / l, &trailing.offset / l)
    }

    pub fn b0(&self) -> &Rational {
        &self.b0
    }
    pub fn a1(&self) -> &Rational {
        &self.a1
    }
    pub fn b1(&self) -> &Rational {
        &self.b1
    }

    /// `b₁ / a₁`
    pub fn ratio(&self) -> Rational {
        &self.b1 / &self.a1
    }

    /// `s₀ … s_N` from the given `s₀`.
    pub fn generate_terms(&self, s0: &Rational, n: usize) -> Result<Vec<Rational>, RecurrenceError> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(s0.clone());
        for k in 1..=n {
            let lead = int(k as i64) + &self.b0;
            if lead.is_zero() {
                return Err(RecurrenceError::DivisionByZero(k));
            }
            let prev = &out[k - 1];
            let next = -(&self.a1 * int(k as i64) + &self.b1) * prev / lead;
            out.push(next);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Order2Rec {
    b0: Rational,
    a1: Rational,
    b1: Rational,
    a2: Rational,
    b2: Rational,
}

impl Order2Rec {
    /// Validates `a₁, a₂ ≠ 0` and `b₀ ∉ {−2, −3, …}`.
    pub fn new(b0: Rational, a1: Rational, b1: Rational, a2: Rational, b2: Rational) -> Result<Self, RecurrenceError> {
        if a1.is_zero() {
            return Err(RecurrenceError::VanishingA1);
        }
        if a2.is_zero() {
            return Err(RecurrenceError::VanishingA2);
        }
        if b0.is_integer() && b0 <= int(-2) {
            return Err(RecurrenceError::ExcludedB0(fmt_rational(&b0)));
        }
        Ok(Self { b0, a1, b1, a2, b2 })
    }

    pub fn from_ints(b0: i64, a1: i64, b1: i64, a2: i64, b2: i64) -> Result<Self, RecurrenceError> {
        Self::new(int(b0), int(a1), int(b1), int(a2), int(b2))
    }

    /// Divides `(α₀n+β₀)sₙ + (α₁n+β₁)sₙ₋₁ + (α₂n+β₂)sₙ₋₂` through by `α₀`.
    pub fn normalize(leading: &LinearCoeff, middle: &LinearCoeff, trailing: &LinearCoeff) -> Result<Self, RecurrenceError> {
        if leading.slope.is_zero() {
            return Err(RecurrenceError::LeadingZero);
        }
        let l = &leading.slope;
        Self::new(
            &leading.offset / l,
            &middle.slope / l,
            &middle.offset / l,
            &trailing.slope / l,
            &trailing.offset / l,
        )
    }

    pub fn b0(&self) -> &Rational {
        &self.b0
    }
    pub fn a1(&self) -> &Rational {
        &self.a1
    }
    pub fn b1(&self) -> &Rational {
        &self.b1
    }
    pub fn a2(&self) -> &Rational {
        &self.a2
    }
    pub fn b2(&self) -> &Rational {
        &self.b2
    }

    /// The coefficient triple in document form.
    pub fn coefficients(&self) -> [LinearCoeff; 3] {
        [
            LinearCoeff::new(Rational::one(), self.b0.clone()),
            LinearCoeff::new(self.a1.clone(), self.b1.clone()),
            LinearCoeff::new(self.a2.clone(), self.b2.clone()),
        ]
    }

    /// `(2a₂b₁ − a₁a₂b₀)/a₁`, the value of `b₂` that removes the artanh
    /// factor from the general solution.
    pub fn b2_expected(&self) -> Rational {
        (int(2) * &self.a2 * &self.b1 - &self.a1 * &self.a2 * &self.b0) / &self.a1
    }

    /// `s₀ … s_N`; the output has `N + 1` entries.
    pub fn generate_terms(&self, init: &InitialPair, n: usize) -> Result<Vec<Rational>, RecurrenceError> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(init.s0.clone());
        if n >= 1 {
            out.push(init.s1.clone());
        }
        for k in 2..=n {
            let kk = int(k as i64);
            let lead = &kk + &self.b0;
            if lead.is_zero() {
                return Err(RecurrenceError::DivisionByZero(k));
            }
            let rhs = (&self.a1 * &kk + &self.b1) * &out[k - 1] + (&self.a2 * &kk + &self.b2) * &out[k - 2];
            out.push(-rhs / lead);
        }
        Ok(out)
    }
}

pub const REASON_B2_MISMATCH: &str = "b2_mismatch";
pub const REASON_B0_NOT_NATURAL: &str = "b0_not_natural";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDiagnostic {
    pub in_restricted_class: bool,
    pub b2_expected: Rational,
    pub b0_is_natural: bool,
    pub reasons: Vec<&'static str>,
}

/// Never fails: reports whether `rec` is in the class the order-2 decider
/// handles (`b₂ = b2_expected` and `b₀ ∈ ℕ`, zero included).
pub fn check_restricted_class(rec: &Order2Rec) -> ClassDiagnostic {
    let b2_expected = rec.b2_expected();
    let b0_is_natural = is_natural(&rec.b0);
    let mut reasons = Vec::new();
    if rec.b2 != b2_expected {
        reasons.push(REASON_B2_MISMATCH);
    }
    if !b0_is_natural {
        reasons.push(REASON_B0_NOT_NATURAL);
    }
    ClassDiagnostic { in_restricted_class: reasons.is_empty(), b2_expected, b0_is_natural, reasons }
}

/// Linear recurrences with polynomial coefficients of any degree, used for
/// the Apéry fixtures that fall outside the linear-coefficient model.
/// `coeffs[k]` multiplies `sₙ₋ₖ`; each is given by its value at `n`.
pub fn unroll_polynomial_recurrence(
    coeffs: &[crate::arith::UniPoly],
    init: &[Rational],
    n: usize,
) -> Result<Vec<Rational>, RecurrenceError> {
    let order = coeffs.len() - 1;
    assert_eq!(init.len(), order);
    let mut out: Vec<Rational> = init.iter().take(n + 1).cloned().collect();
    for k in order..=n {
        let kk = int(k as i64);
        let lead = coeffs[0].eval(&kk);
        if lead.is_zero() {
            return Err(RecurrenceError::DivisionByZero(k));
        }
        let rhs: Rational = (1..=order).map(|j| coeffs[j].eval(&kk) * &out[k - j]).sum();
        out.push(-rhs / lead);
    }
    Ok(out)
}

/// Fixture recurrences used across tests, benches and the CLI corpus.
pub mod fixtures {
    use super::*;

    /// `(n+2)mₙ = (2n+1)mₙ₋₁ + (3n−3)mₙ₋₂`
    pub fn motzkin() -> Order2Rec {
        Order2Rec::from_ints(2, -2, -1, -3, 3).unwrap()
    }
    /// `nsₙ = (2n−1)sₙ₋₁ + (3n−3)sₙ₋₂`
    pub fn central_trinomial() -> Order2Rec {
        Order2Rec::from_ints(0, -2, 1, -3, 3).unwrap()
    }
    /// `(n+1)sₙ = (6n−3)sₙ₋₁ − (n−2)sₙ₋₂`
    pub fn large_schroeder() -> Order2Rec {
        Order2Rec::from_ints(1, -6, 3, 1, -2).unwrap()
    }
    /// `(n+3)sₙ = (n+1)sₙ₋₁ + (2n−2)sₙ₋₂`
    pub fn fully_transcendental() -> Order2Rec {
        Order2Rec::from_ints(3, -1, -1, -2, 2).unwrap()
    }
    /// `nsₙ + (2n+3)sₙ₋₁ + 9(n+3)sₙ₋₂ = 0`
    pub fn quadratic_power_line() -> Order2Rec {
        Order2Rec::from_ints(0, 2, 3, 9, 27).unwrap()
    }
    /// `(n+1)cₙ = (4n−2)cₙ₋₁`, the Catalan numbers.
    pub fn catalan_shift() -> Order1Rec {
        Order1Rec::new(int(1), int(-4), int(2)).unwrap()
    }
}

use num_traits::Zero;
use thiserror::Error;

use super::{exact_rational_sqrt, int, QuadScalar, QuadraticNumber, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("a2 = 0: 1 + a1 x is not a quadratic")]
    NotQuadratic,
}

/// The factorization `1 + a₁x + a₂x² = (1 + αx)(1 + βx)`.
///
/// `α = (a₁ − √D)/2` and `β = (a₁ + √D)/2` with `D = a₁² − 4a₂`, so for
/// rational roots `α < β`, and for an irrational pair `α` carries the
/// negative radical part and `β = ᾱ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootPair {
    Rational { alpha: Rational, beta: Rational },
    Conjugate { alpha: QuadraticNumber, beta: QuadraticNumber },
    Double(Rational),
}

impl RootPair {
    pub fn is_double(&self) -> bool {
        matches!(self, RootPair::Double(_))
    }

    pub fn alpha(&self) -> QuadScalar {
        match self {
            RootPair::Rational { alpha, .. } => QuadScalar::Rational(alpha.clone()),
            RootPair::Conjugate { alpha, .. } => QuadScalar::Quadratic(alpha.clone()),
            RootPair::Double(a) => QuadScalar::Rational(a.clone()),
        }
    }

    pub fn beta(&self) -> QuadScalar {
        match self {
            RootPair::Rational { beta, .. } => QuadScalar::Rational(beta.clone()),
            RootPair::Conjugate { beta, .. } => QuadScalar::Quadratic(beta.clone()),
            RootPair::Double(a) => QuadScalar::Rational(a.clone()),
        }
    }
}

/// `D = a₁² − 4a₂`
pub fn discriminant(a1: &Rational, a2: &Rational) -> Rational {
    a1 * a1 - int(4) * a2
}

pub fn quad_root_pair(a1: &Rational, a2: &Rational) -> Result<RootPair, RootError> {
    if a2.is_zero() {
        return Err(RootError::NotQuadratic);
    }
    let d = discriminant(a1, a2);
    let half = a1 / int(2);
    if d.is_zero() {
        return Ok(RootPair::Double(half));
    }
    if let Some(s) = exact_rational_sqrt(&d) {
        let h = s / int(2);
        return Ok(RootPair::Rational { alpha: &half - &h, beta: &half + &h });
    }
    let alpha = QuadraticNumber::new(half.clone(), -crate::arith::rat(1, 2), d.clone())
        .expect("non-square discriminant");
    let beta = alpha.conj();
    Ok(RootPair::Conjugate { alpha, beta })
}

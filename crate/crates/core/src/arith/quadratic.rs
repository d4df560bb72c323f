use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use super::{exact_rational_sqrt, fmt_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadraticError {
    #[error("discriminant {0} is the square of a rational")]
    SquareDiscriminant(String),
}

/// The minimal field interface shared by `ℚ` and `ℚ(√D)`, enough for
/// residue computations that are generic over the root field.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Embeds a rational into the same field as `self`.
    fn embed(&self, r: Rational) -> Self;
    fn is_zero_elem(&self) -> bool;

    fn zero_like(&self) -> Self {
        self.embed(Rational::zero())
    }
    fn one_like(&self) -> Self {
        self.embed(Rational::one())
    }
    fn pow_u(&self, e: usize) -> Self {
        let mut acc = self.one_like();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Field for Rational {
    fn embed(&self, r: Rational) -> Self {
        r
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

/// An element `rational_part + radical_part·√D` of `ℚ(√D)`, `D` a non-square.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    rational_part: Rational,
    radical_part: Rational,
    discriminant: Rational,
}

impl QuadraticNumber {
    pub fn new(
        rational_part: Rational,
        radical_part: Rational,
        discriminant: Rational,
    ) -> Result<Self, QuadraticError> {
        if exact_rational_sqrt(&discriminant).is_some() {
            return Err(QuadraticError::SquareDiscriminant(fmt_rational(&discriminant)));
        }
        Ok(Self { rational_part, radical_part, discriminant })
    }

    /// `√D` itself.
    pub fn sqrt_of(discriminant: Rational) -> Result<Self, QuadraticError> {
        Self::new(Rational::zero(), Rational::one(), discriminant)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational_part
    }
    pub fn radical_part(&self) -> &Rational {
        &self.radical_part
    }
    pub fn discriminant(&self) -> &Rational {
        &self.discriminant
    }

    fn with(&self, rational_part: Rational, radical_part: Rational) -> Self {
        Self { rational_part, radical_part, discriminant: self.discriminant.clone() }
    }

    pub fn conj(&self) -> Self {
        self.with(self.rational_part.clone(), -self.radical_part.clone())
    }

    /// `a² − D b²`
    pub fn norm(&self) -> Rational {
        &self.rational_part * &self.rational_part
            - &self.discriminant * &self.radical_part * &self.radical_part
    }

    pub fn trace(&self) -> Rational {
        &self.rational_part + &self.rational_part
    }

    pub fn is_rational(&self) -> bool {
        self.radical_part.is_zero()
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(self.with(&self.rational_part / &n, -&self.radical_part / &n))
    }

    fn check_same_field(&self, other: &Self) {
        assert_eq!(
            self.discriminant, other.discriminant,
            "mixing elements of different quadratic fields"
        );
    }
}

impl fmt::Debug for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}*sqrt({})",
            fmt_rational(&self.rational_part),
            fmt_rational(&self.radical_part),
            fmt_rational(&self.discriminant)
        )
    }
}

impl Add for QuadraticNumber {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check_same_field(&rhs);
        self.with(self.rational_part.clone() + rhs.rational_part, self.radical_part.clone() + rhs.radical_part)
    }
}

impl Sub for QuadraticNumber {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.check_same_field(&rhs);
        self.with(self.rational_part.clone() - rhs.rational_part, self.radical_part.clone() - rhs.radical_part)
    }
}

impl Mul for QuadraticNumber {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check_same_field(&rhs);
        let (a, b) = (&self.rational_part, &self.radical_part);
        let (c, d) = (&rhs.rational_part, &rhs.radical_part);
        let re = a * c + &self.discriminant * b * d;
        let im = a * d + b * c;
        self.with(re, im)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for QuadraticNumber {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let inv = rhs.inv().expect("division by zero in a quadratic field");
        self * inv
    }
}

impl Neg for QuadraticNumber {
    type Output = Self;
    fn neg(self) -> Self {
        self.with(-self.rational_part.clone(), -self.radical_part.clone())
    }
}

impl Field for QuadraticNumber {
    fn embed(&self, r: Rational) -> Self {
        self.with(r, Rational::zero())
    }
    fn is_zero_elem(&self) -> bool {
        self.rational_part.is_zero() && self.radical_part.is_zero()
    }
}

/// A scalar that is either a plain rational or lives in a quadratic field.
/// Roots of `1 + a₁x + a₂x²` and the quantities derived from them are
/// reported in this form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum QuadScalar {
    Rational(Rational),
    Quadratic(QuadraticNumber),
}

impl QuadScalar {
    pub fn is_zero(&self) -> bool {
        match self {
            QuadScalar::Rational(r) => r.is_zero(),
            QuadScalar::Quadratic(q) => q.is_zero_elem(),
        }
    }

    /// The rational and radical parts (radical part 0 for rationals).
    pub fn parts(&self) -> (Rational, Rational) {
        match self {
            QuadScalar::Rational(r) => (r.clone(), Rational::zero()),
            QuadScalar::Quadratic(q) => (q.rational_part().clone(), q.radical_part().clone()),
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            QuadScalar::Rational(r) => QuadScalar::Rational(r.clone()),
            QuadScalar::Quadratic(q) => QuadScalar::Quadratic(q.conj()),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            QuadScalar::Rational(r) => Some(r),
            QuadScalar::Quadratic(q) if q.is_rational() => Some(q.rational_part()),
            QuadScalar::Quadratic(_) => None,
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        match self {
            QuadScalar::Rational(r) => QuadScalar::Rational(r * k),
            QuadScalar::Quadratic(q) => QuadScalar::Quadratic(q.clone() * q.embed(k.clone())),
        }
    }

    /// Sum of two scalars; both must come from the same field.
    pub fn plus(&self, other: &Self) -> Self {
        match (self, other) {
            (QuadScalar::Rational(a), QuadScalar::Rational(b)) => QuadScalar::Rational(a + b),
            (QuadScalar::Quadratic(a), QuadScalar::Quadratic(b)) => QuadScalar::Quadratic(a.clone() + b.clone()),
            (QuadScalar::Quadratic(a), QuadScalar::Rational(b))
            | (QuadScalar::Rational(b), QuadScalar::Quadratic(a)) => {
                QuadScalar::Quadratic(a.clone() + a.embed(b.clone()))
            }
        }
    }

    pub fn times(&self, other: &Self) -> Self {
        match (self, other) {
            (QuadScalar::Rational(a), QuadScalar::Rational(b)) => QuadScalar::Rational(a * b),
            (QuadScalar::Quadratic(a), QuadScalar::Quadratic(b)) => QuadScalar::Quadratic(a.clone() * b.clone()),
            (QuadScalar::Quadratic(a), QuadScalar::Rational(b))
            | (QuadScalar::Rational(b), QuadScalar::Quadratic(a)) => {
                QuadScalar::Quadratic(a.clone() * a.embed(b.clone()))
            }
        }
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadScalar::Rational(r) => f.write_str(&fmt_rational(r)),
            QuadScalar::Quadratic(q) => write!(f, "{q}"),
        }
    }
}

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{denominator_lcm, fmt_rational, gen_binomials, int, Rational, UniPoly};

/// A power series known exactly up to (excluding) `x^order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// The series whose first `coeffs.len()` coefficients are `coeffs`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Self { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| int(c)).collect())
    }

    /// A polynomial viewed as a series known to `order` terms.
    pub fn from_poly(p: &UniPoly, order: usize) -> Self {
        Self::new((0..order).map(|k| p.coeff(k)).collect())
    }

    pub fn one(order: usize) -> Self {
        Self::from_poly(&UniPoly::constant(Rational::one()), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..order.min(self.order())].to_vec())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Cauchy product, truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        // Convolve over ℤ after clearing denominators; one division per entry.
        let (la, ia) = cleared(&self.coeffs[..n]);
        let (lb, ib) = cleared(&other.coeffs[..n]);
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in ia.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in ib.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        let l = la * lb;
        Self::new(out.into_iter().map(|c| Rational::new(c, l.clone())).collect())
    }

    /// Multiplies by `x^k`; the known order grows by `k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    /// Termwise antiderivative with zero constant term.
    pub fn integrate(&self) -> Self {
        let mut v = Vec::with_capacity(self.order() + 1);
        v.push(Rational::zero());
        v.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / int(k as i64 + 1)),
        );
        Self::new(v)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    /// Successive powers `1, S, S², …, S^max` at this order.
    pub fn powers(&self, max: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(max + 1);
        out.push(Self::one(self.order()));
        for j in 1..=max {
            let next = out[j - 1].mul(self);
            out.push(next);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

fn cleared(xs: &[Rational]) -> (BigInt, Vec<BigInt>) {
    let l = denominator_lcm(xs);
    let ints = xs.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    (l, ints)
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(fmt_rational).collect();
        write!(f, "[{}] + O(x^{})", parts.join(", "), self.order())
    }
}

/// First `n` coefficients of `(1 + a₁x + a₂x²)^q`, via
/// `d_m = Σ_k binom(q, k) · binom(k, m−k) · a₁^{2k−m} · a₂^{m−k}`.
///
/// Panics if `n == 0`.
pub fn series_expand_quadratic_power(a1: &Rational, a2: &Rational, q: &Rational, n: usize) -> TruncatedSeries {
    assert!(n >= 1, "expansion order must be at least 1");
    let gb = gen_binomials(q, n - 1);
    let pow = |base: &Rational| {
        let mut v = Vec::with_capacity(n);
        let mut acc = Rational::one();
        for _ in 0..n {
            v.push(acc.clone());
            acc *= base;
        }
        v
    };
    let p1 = pow(a1);
    let p2 = pow(a2);

    // Pascal row k holds binom(k, 0..=k).
    let mut row: Vec<BigInt> = vec![BigInt::one()];
    let mut coeffs = vec![Rational::zero(); n];
    for k in 0..n {
        if k > 0 {
            let mut next = Vec::with_capacity(k + 1);
            next.push(BigInt::one());
            for j in 1..k {
                next.push(&row[j - 1] + &row[j]);
            }
            next.push(BigInt::one());
            row = next;
        }
        if gb[k].is_zero() {
            continue;
        }
        // x^m picks j = m − k factors of a₂x² among the k factors.
        for (j, b) in row.iter().enumerate() {
            let m = k + j;
            if m >= n {
                break;
            }
            let term = &gb[k] * Rational::from_integer(b.clone()) * &p1[k - j] * &p2[j];
            coeffs[m] += term;
        }
    }
    TruncatedSeries::new(coeffs)
}

//! Exact scalar, polynomial and power-series arithmetic.
//!
//! Everything here is built on [`num_rational::BigRational`]; no floating
//! point is used anywhere in the crate.

mod poly;
mod quadratic;
mod roots;
mod series;

pub use poly::UniPoly;
pub use quadratic::{Field, QuadScalar, QuadraticError, QuadraticNumber};
pub use roots::{discriminant, quad_root_pair, RootError, RootPair};
pub use series::{series_expand_quadratic_power, TruncatedSeries};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Builds `num/den` from machine integers. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `x ∈ ℤ`
pub fn is_integer(x: &Rational) -> bool {
    x.is_integer()
}

/// `x ∈ ℕ = {0, 1, 2, …}`
pub fn is_natural(x: &Rational) -> bool {
    x.is_integer() && !x.is_negative()
}

/// `x ∈ −ℕ = {0, −1, −2, …}`
pub fn is_neg_natural(x: &Rational) -> bool {
    x.is_integer() && !x.is_positive()
}

/// `x ∈ −ℕ* = {−1, −2, …}`
pub fn is_neg_positive_natural(x: &Rational) -> bool {
    x.is_integer() && x.is_negative()
}

/// Returns `x` as an `i64` when it is an integer that fits.
pub fn to_i64(x: &Rational) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    i64::try_from(x.numer()).ok()
}

/// Exact square root of a non-negative integer, if it is a perfect square.
pub fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact square root of a rational, if it is the square of a rational.
///
/// Numerator and denominator are tested separately; this is sound because
/// the fraction is reduced.
pub fn exact_rational_sqrt(x: &Rational) -> Option<Rational> {
    let n = exact_isqrt(x.numer())?;
    let d = exact_isqrt(x.denom())?;
    Some(Rational::new(n, d))
}

/// Generalized binomial coefficient `binom(q, k)` for rational `q`, via the
/// running product `q (q−1) ⋯ (q−k+1) / k!`.
pub fn gen_binomial(q: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * (q - int(i as i64)) / int(i as i64 + 1);
    }
    acc
}

/// All generalized binomials `binom(q, 0..=k_max)`.
pub fn gen_binomials(q: &Rational, k_max: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(k_max + 1);
    let mut acc = Rational::one();
    out.push(acc.clone());
    for i in 0..k_max {
        acc = acc * (q - int(i as i64)) / int(i as i64 + 1);
        out.push(acc.clone());
    }
    out
}

/// Ordinary binomial coefficient as a big integer (zero when `k > n`).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses an exact rational literal `p` or `p/q`. Decimal points, exponents
/// and zero denominators are rejected.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let ok = |t: &str| {
        let t = t.strip_prefix(['-', '+']).unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    match s.split_once('/') {
        Some((n, d)) => {
            if !ok(n) || !d.bytes().all(|b| b.is_ascii_digit()) || d.is_empty() {
                return None;
            }
            let n: BigInt = n.trim_start_matches('+').parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            (!d.is_zero()).then(|| Rational::new(n, d))
        }
        None => {
            if !ok(s) {
                return None;
            }
            s.trim_start_matches('+').parse::<BigInt>().ok().map(Rational::from_integer)
        }
    }
}

/// Least common multiple of the denominators of `xs` (1 for an empty slice).
pub fn denominator_lcm<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction (first nonzero entry keeps its sign).
pub fn primitive_integer_vector(xs: &[Rational]) -> Vec<BigInt> {
    let l = denominator_lcm(xs);
    let ints: Vec<BigInt> = xs.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_predicates() {
        assert!(is_natural(&int(0)));
        assert!(is_natural(&int(3)));
        assert!(!is_natural(&int(-1)));
        assert!(!is_natural(&rat(1, 2)));
        assert!(is_neg_natural(&int(0)));
        assert!(is_neg_natural(&int(-4)));
        assert!(!is_neg_natural(&rat(-3, 2)));
        assert!(!is_neg_positive_natural(&int(0)));
        assert!(is_neg_positive_natural(&int(-1)));
    }

    #[test]
    fn sqrt_detection() {
        assert_eq!(exact_rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(exact_rational_sqrt(&rat(8, 1)), None);
        assert_eq!(exact_rational_sqrt(&rat(1, 2)), None);
        assert_eq!(exact_rational_sqrt(&rat(-4, 1)), None);
        assert_eq!(exact_rational_sqrt(&int(0)), Some(int(0)));
    }

    #[test]
    fn binomials() {
        assert_eq!(gen_binomial(&rat(1, 2), 2), rat(-1, 8));
        assert_eq!(gen_binomial(&int(-1), 5), int(-1));
        assert_eq!(gen_binomials(&int(4), 5), vec![int(1), int(4), int(6), int(4), int(1), int(0)]);
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("3"), Some(int(3)));
        assert_eq!(parse_rational("-6/4"), Some(rat(-3, 2)));
        assert_eq!(parse_rational(" +2/3 "), Some(rat(2, 3)));
        assert_eq!(parse_rational("0.5"), None);
        assert_eq!(parse_rational("1e3"), None);
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1/-2"), None);
        assert_eq!(parse_rational(""), None);
        assert_eq!(parse_rational("-"), None);
        assert_eq!(fmt_rational(&rat(-3, 6)), "-1/2");
        assert_eq!(fmt_rational(&int(7)), "7");
    }

    #[test]
    fn primitive_vectors() {
        let v = primitive_integer_vector(&[rat(3, 2), rat(-9, 4)]);
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(-3)]);
    }
}

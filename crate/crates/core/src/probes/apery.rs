use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{binomial, int, Rational, UniPoly};
use crate::probes::{almost_integrality_probe, DenominatorReport};
use crate::recurrence::unroll_polynomial_recurrence;

/// `Σₖ C(n,k)² C(n+k,k)`.
pub fn apery_small(n: u64) -> BigInt {
    (0..=n).fold(BigInt::zero(), |acc, k| {
        let c = binomial(n, k);
        acc + &c * &c * binomial(n + k, k)
    })
}

/// Coefficients of `n²aₙ − (11n² − 11n + 3)aₙ₋₁ − (n−1)²aₙ₋₂ = 0`.
pub fn apery_small_recurrence() -> Vec<UniPoly> {
    vec![UniPoly::from_ints(&[0, 0, 1]), UniPoly::from_ints(&[-3, 11, -11]), UniPoly::from_ints(&[-1, 2, -1])]
}

/// `a₀ … a_depth` from `(a₀, a₁)`.
pub fn unroll_apery_small(a0: &Rational, a1: &Rational, depth: usize) -> Vec<Rational> {
    unroll_polynomial_recurrence(&apery_small_recurrence(), &[a0.clone(), a1.clone()], depth)
        .expect("leading coefficient n² is nonzero for n ≥ 2")
}

/// Big Apéry numbers `A₀ … A_depth` from `(1, 5)` via
/// `n³Aₙ = (34n³ − 51n² + 27n − 5)Aₙ₋₁ − (n−1)³Aₙ₋₂`. Their generating
/// function is transcendental even though the sequence is integral.
pub fn apery_big_fixture(depth: usize) -> Vec<Rational> {
    let coeffs = [UniPoly::from_ints(&[0, 0, 0, 1]), UniPoly::from_ints(&[5, -27, 51, -34]), UniPoly::from_ints(&[-1, 3, -3, 1])];
    unroll_polynomial_recurrence(&coeffs, &[int(1), int(5)], depth).expect("n³ is nonzero for n ≥ 2")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AperyReport {
    pub depth: usize,
    /// `(1, 3)` direction.
    pub standard: DenominatorReport,
    /// Off-line directions `(a₀, a₁)` with their reports.
    pub off_line: Vec<((i64, i64), DenominatorReport)>,
}

impl AperyReport {
    /// The standard direction stays integral and every off-line one fails.
    pub fn uniqueness_witnessed(&self) -> bool {
        self.standard.all_integral() && self.off_line.iter().all(|(_, r)| r.first_bad_index.is_some())
    }
}

/// Unrolls `(1, 3)` together with `(0, 1)` and `extra` off-line pairs.
pub fn apery_uniqueness_probe(depth: usize, prime_threshold: u64, extra: &[(i64, i64)]) -> AperyReport {
    assert!(depth >= 10, "depth must be at least 10");
    let standard = almost_integrality_probe(&unroll_apery_small(&int(1), &int(3), depth), prime_threshold);
    let mut dirs = vec![(0, 1)];
    dirs.extend(extra.iter().copied().filter(|&(a, b)| b != 3 * a));
    let off_line = dirs
        .into_iter()
        .map(|(a, b)| ((a, b), almost_integrality_probe(&unroll_apery_small(&int(a), &int(b), depth), prime_threshold)))
        .collect();
    AperyReport { depth, standard, off_line }
}

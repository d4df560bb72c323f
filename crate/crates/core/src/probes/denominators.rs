use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::Rational;

pub const DEFAULT_DEPTH: usize = 200;
pub const DEFAULT_THRESHOLD: u64 = 50;
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProbeConfig {
    /// A prime above this in a denominator marks a term as bad.
    pub threshold: u64,
    /// Trial division runs over primes up to this bound.
    pub trial_bound: u64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        Self { threshold: DEFAULT_THRESHOLD, trial_bound: DEFAULT_TRIAL_BOUND }
    }
}

/// `P(bₙ)`, the largest prime factor of a denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LargestPrime {
    /// Fully factored; `1` for `bₙ = ±1`.
    Known(u64),
    /// A cofactor without prime factors below the trial bound remains.
    AboveTrialBound,
}

impl LargestPrime {
    pub fn exceeds(&self, threshold: u64) -> bool {
        match self {
            LargestPrime::Known(p) => *p > threshold,
            LargestPrime::AboveTrialBound => true,
        }
    }
}

/// Denominator forensics for a finite run of sequence terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenominatorReport {
    pub depth: usize,
    pub threshold: u64,
    /// Largest fully factored prime seen in any denominator (`1` if none).
    pub max_prime_seen: u64,
    pub any_large_cofactor: bool,
    /// First index whose denominator has a prime factor above the threshold.
    pub first_bad_index: Option<usize>,
    pub per_term: Vec<LargestPrime>,
}

impl DenominatorReport {
    /// No prime above the threshold up to the probed depth.
    pub fn looks_almost_integral(&self) -> bool {
        self.first_bad_index.is_none()
    }

    pub fn all_integral(&self) -> bool {
        self.per_term.iter().all(|p| *p == LargestPrime::Known(1))
    }
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

fn default_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(DEFAULT_TRIAL_BOUND))
}

/// Primes grouped so that each group's product fits in a `u64`; one big
/// remainder per group replaces one per prime.
fn grouped(primes: &[u64]) -> Vec<(u64, &[u64])> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < primes.len() {
        let mut prod: u64 = 1;
        let mut end = start;
        while end < primes.len() {
            match prod.checked_mul(primes[end]) {
                Some(p) => {
                    prod = p;
                    end += 1;
                }
                None => break,
            }
        }
        out.push((prod, &primes[start..end]));
        start = end;
    }
    out
}

/// `P(n)` by trial division over `primes` (sorted ascending).
fn largest_prime_with(n: &BigUint, primes: &[u64]) -> LargestPrime {
    if n <= &BigUint::one() {
        return LargestPrime::Known(1);
    }
    let mut rest = n.clone();
    let mut largest = 1;
    for (prod, group) in grouped(primes) {
        let r = (&rest % prod).to_u64().expect("remainder below u64 modulus");
        for &p in group {
            if r.is_multiple_of(p) {
                largest = p;
                while (&rest % p).is_zero() {
                    rest /= p;
                }
            }
        }
        if rest.is_one() {
            return LargestPrime::Known(largest);
        }
        // Whatever is left is prime once it drops below the next prime squared.
        let next = group.last().copied().unwrap_or(1);
        if rest < BigUint::from(next) * next {
            return LargestPrime::Known(rest.to_u64().expect("below trial bound squared"));
        }
    }
    LargestPrime::AboveTrialBound
}

pub fn largest_prime_factor(n: &BigInt, trial_bound: u64) -> LargestPrime {
    let n = n.magnitude();
    if trial_bound == DEFAULT_TRIAL_BOUND {
        largest_prime_with(n, default_primes())
    } else {
        largest_prime_with(n, &primes_up_to(trial_bound))
    }
}

pub fn almost_integrality_probe(terms: &[Rational], threshold: u64) -> DenominatorReport {
    almost_integrality_probe_with(terms, ProbeConfig { threshold, ..ProbeConfig::default() })
}

pub fn almost_integrality_probe_with(terms: &[Rational], cfg: ProbeConfig) -> DenominatorReport {
    assert!(!terms.is_empty(), "probe needs at least one term");
    let per_term: Vec<LargestPrime> = terms.iter().map(|t| largest_prime_factor(t.denom(), cfg.trial_bound)).collect();
    let max_prime_seen = per_term
        .iter()
        .filter_map(|p| match p {
            LargestPrime::Known(v) => Some(*v),
            LargestPrime::AboveTrialBound => None,
        })
        .max()
        .unwrap_or(1);
    let any_large_cofactor = per_term.contains(&LargestPrime::AboveTrialBound);
    let first_bad_index = per_term.iter().position(|p| p.exceeds(cfg.threshold));
    DenominatorReport { depth: terms.len(), threshold: cfg.threshold, max_prime_seen, any_large_cofactor, first_bad_index, per_term }
}

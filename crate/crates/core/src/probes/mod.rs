//! Numeric oracles that check decider verdicts independently.
//!
//! None of them proves anything: a clean denominator report at finite depth
//! is evidence of global boundedness, and a found annihilator is only
//! verified to the truncation order.

mod annihilator;
mod apery;
mod denominators;
mod integrality;
mod klazar_luca;

pub use annihilator::{guess_annihilator, guess_annihilator_with_margin, AnnihilatorGuess, GuessError, DEFAULT_MARGIN};
pub use apery::{
    apery_big_fixture, apery_small, apery_small_recurrence, apery_uniqueness_probe, unroll_apery_small, AperyReport,
};
pub use denominators::{
    almost_integrality_probe, almost_integrality_probe_with, largest_prime_factor, primes_up_to, DenominatorReport,
    LargestPrime, ProbeConfig, DEFAULT_DEPTH, DEFAULT_THRESHOLD, DEFAULT_TRIAL_BOUND,
};
pub use integrality::{quadratic_power_integral, rad};
pub use klazar_luca::{klazar_luca_d_probe, KlazarLucaError, PrimeResidue};

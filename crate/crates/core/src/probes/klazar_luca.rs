use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{int, rat, series_expand_quadratic_power, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KlazarLucaError {
    #[error("prime {0} must exceed 3")]
    PrimeTooSmall(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} divides a numerator or denominator of a1, a2")]
    NotCoprime(u64),
    #[error("exponent n = {0} must be even")]
    OddExponent(usize),
    #[error("a1 and a2 must be nonzero")]
    ZeroCoefficient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeResidue {
    pub prime: u64,
    /// `[x^{p−n−1}] (1 + a₁x + a₂x²)^{−(n+1)/2}` reduced mod `p`.
    pub residue: u64,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn divides(p: u64, x: &BigInt) -> bool {
    (x % BigInt::from(p)).is_zero()
}

fn reduce_mod(x: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = x.denom().mod_floor(&pb);
    if den.is_zero() {
        return None;
    }
    // p is prime, so den^{p−2} inverts den.
    let inv = den.modpow(&BigInt::from(p - 2), &pb);
    (x.numer().mod_floor(&pb) * inv % &pb).to_u64()
}

/// For every prime `p`, the coefficient `d_{p−n−1}` of
/// `(1 + a₁x + a₂x²)^{−(n+1)/2}` modulo `p`.
pub fn klazar_luca_d_probe(
    a1: &Rational,
    a2: &Rational,
    exponent_n: usize,
    primes: &[u64],
) -> Result<Vec<PrimeResidue>, KlazarLucaError> {
    if !exponent_n.is_multiple_of(2) {
        return Err(KlazarLucaError::OddExponent(exponent_n));
    }
    if a1.is_zero() || a2.is_zero() {
        return Err(KlazarLucaError::ZeroCoefficient);
    }
    for &p in primes {
        if p <= 3 {
            return Err(KlazarLucaError::PrimeTooSmall(p));
        }
        if !is_prime(p) {
            return Err(KlazarLucaError::NotPrime(p));
        }
        if [a1.numer(), a1.denom(), a2.numer(), a2.denom()].into_iter().any(|x| divides(p, x)) {
            return Err(KlazarLucaError::NotCoprime(p));
        }
    }
    let Some(&pmax) = primes.iter().max() else {
        return Ok(Vec::new());
    };
    let q = -rat(exponent_n as i64 + 1, 2);
    let order = (pmax as usize).saturating_sub(exponent_n).max(1);
    let d = series_expand_quadratic_power(a1, a2, &q, order);
    Ok(primes
        .iter()
        .map(|&p| {
            let idx = (p as usize).checked_sub(exponent_n + 1);
            let coeff = idx.map(|i| d.coeff(i).clone()).unwrap_or_else(|| int(0));
            let residue = reduce_mod(&coeff, p).expect("coefficient denominators are coprime to p");
            PrimeResidue { prime: p, residue }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probes::primes_up_to;

    fn motzkin_primes() -> Vec<u64> {
        primes_up_to(101).into_iter().filter(|&p| p > 3).collect()
    }

    #[test]
    fn motzkin_residues_never_vanish() {
        for n in [0, 2] {
            let r = klazar_luca_d_probe(&int(-2), &int(-3), n, &motzkin_primes()).unwrap();
            assert_eq!(r.len(), motzkin_primes().len());
            assert!(r.iter().all(|x| x.residue != 0), "n = {n}: {r:?}");
        }
    }

    #[test]
    fn rejects_bad_primes() {
        let e = klazar_luca_d_probe(&int(-2), &int(-3), 0, &[2, 5]);
        assert_eq!(e, Err(KlazarLucaError::PrimeTooSmall(2)));
        assert_eq!(klazar_luca_d_probe(&int(-2), &int(-3), 0, &[9]), Err(KlazarLucaError::NotPrime(9)));
        assert_eq!(klazar_luca_d_probe(&int(5), &int(-3), 0, &[5]), Err(KlazarLucaError::NotCoprime(5)));
        assert_eq!(klazar_luca_d_probe(&int(-2), &int(-3), 1, &[5]), Err(KlazarLucaError::OddExponent(1)));
    }

    #[test]
    fn modular_reduction() {
        assert_eq!(reduce_mod(&rat(3, 2), 7), Some(5));
        assert_eq!(reduce_mod(&rat(-1, 3), 5), Some(3));
        assert_eq!(reduce_mod(&rat(1, 5), 5), None);
    }
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::Rational;

/// Product of the distinct primes dividing `k` (`rad(1) = 1`).
pub fn rad(k: &BigInt) -> BigInt {
    let mut n = k.clone();
    if n < BigInt::zero() {
        n = -n;
    }
    let mut out = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            out *= &p;
            while (&n % &p).is_zero() {
                n /= &p;
            }
        }
        p += 1;
    }
    if n > BigInt::one() {
        out *= n;
    }
    out
}

fn divides(d: &BigInt, x: &BigInt) -> bool {
    (x % d).is_zero()
}

/// Whether `(1 + ax + bx²)^λ` has integer coefficients.
pub fn quadratic_power_integral(a: &BigInt, b: &BigInt, lam: &Rational) -> bool {
    let k = lam.denom().clone();
    let m = &k * rad(&k);
    if divides(&m, a) && divides(&m, b) {
        return true;
    }
    if k.is_even() {
        let kappa = &k / 2;
        let m = &kappa * rad(&kappa);
        let four = BigInt::from(4);
        return divides(&m, a)
            && divides(&m, b)
            && a.mod_floor(&four) == BigInt::from(2)
            && b.mod_floor(&four) == BigInt::one();
    }
    false
}

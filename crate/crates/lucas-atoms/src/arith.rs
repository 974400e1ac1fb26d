//! Small integer number-theory helpers: divisors, totient, primes,
//! binomial coefficients, p-adic valuations.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// All positive divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

/// Prime factorization of `n >= 1` by trial division, as `(prime, exponent)`
/// pairs in ascending prime order.
pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler totient via trial-division factorization.  Errors on `n = 0`.
pub fn totient(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("totient is undefined at 0".into()));
    }
    let mut phi = n;
    for (p, _) in prime_factors(n) {
        phi = phi / p * (p - 1);
    }
    Ok(phi)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime(p)).collect()
}

pub fn is_square_free(n: u64) -> bool {
    n >= 1 && prime_factors(n).iter().all(|&(_, e)| e == 1)
}

/// `true` when `n = p^m` with `m >= 1` for the given prime `p`.
pub fn is_power_of(n: u64, p: u64) -> bool {
    if n < p {
        return false;
    }
    let mut n = n;
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Binomial coefficient with the usual conventions: zero when `k < 0` or
/// `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Sign used in the square and run-length identities: `-1` for even `m`,
/// `+1` for odd `m`.
pub fn epsilon(m: u64) -> i64 {
    if m.is_multiple_of(2) {
        -1
    } else {
        1
    }
}

/// Jacobi symbol `(a | n)` for odd positive `n`.
pub fn jacobi(a: i64, n: u64) -> i64 {
    debug_assert!(n % 2 == 1 && n > 0);
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut result = 1i64;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                result = -result;
            }
        }
        core::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Exact p-adic valuation of a nonzero integer by repeated division.
pub fn nu_p(value: &BigInt, p: u64) -> Result<u32> {
    if value.is_zero() {
        return Err(Error::InvalidArgument(
            "p-adic valuation of 0 is infinite".into(),
        ));
    }
    let p = BigInt::from(p);
    let mut v = value.abs();
    let mut nu = 0;
    loop {
        let (q, r) = num_integer::div_rem(v.clone(), p.clone());
        if !r.is_zero() {
            return Ok(nu);
        }
        nu += 1;
        v = q;
        if v.is_one() {
            return Ok(nu);
        }
    }
}

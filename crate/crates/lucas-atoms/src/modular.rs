//! Evaluations of Lucas atoms modulo 2 and 3, the extreme-coefficient
//! facts feeding them, and 2-/3-adic valuations of cyclotomic values.
//!
//! The divisibility patterns are exact characterizations: for example
//! `2 | P_n(1,1)` holds precisely for `n = 3 * 2^m`, and `3 | P_n(0,1)`
//! precisely for `n = 2 * 3^m`.  The sweep functions assert both
//! directions for every index in range.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{self, is_power_of, nu_p, totient};
use crate::context::Context;
use crate::error::{Error, Result};

/// Extreme coefficients of `P_n` for `n >= 3`: the coefficient `c_0` of
/// `s^phi(n)` and the coefficient of `t^(phi(n)/2)`.  `c_0` is always 1;
/// the top `t`-coefficient is `p` when `n = 2 p^m` for a prime `p` and 1
/// otherwise.  Both facts are asserted before returning.
pub fn leading_coeffs(ctx: &Context, n: u64) -> Result<(BigInt, BigInt)> {
    if n < 3 {
        return Err(Error::InvalidArgument(
            "extreme coefficients are described for n >= 3".into(),
        ));
    }
    let atom = ctx.lucas_atom(n)?;
    let phi = totient(n)? as u32;
    let c0 = atom.coeff(phi, 0);
    let c_top = atom.coeff(0, phi / 2);
    if !c0.is_one() {
        return Err(Error::Internal(format!("P_{} is not monic in s: {}", n, c0)));
    }
    let expected = expected_top_coefficient(n);
    if c_top != expected {
        return Err(Error::Internal(format!(
            "top t-coefficient of P_{} is {}, expected {}",
            n, c_top, expected
        )));
    }
    Ok((c0, c_top))
}

fn expected_top_coefficient(n: u64) -> BigInt {
    if n.is_multiple_of(2) {
        let half = n / 2;
        let factors = arith::prime_factors(half);
        if factors.len() == 1 {
            return BigInt::from(factors[0].0);
        }
    }
    BigInt::one()
}

/// Evaluation points allowed by the mod-2 characterization.
pub const MOD2_POINTS: [(i64, i64); 4] = [(0, 0), (1, 0), (0, 1), (1, 1)];

/// Evaluation points allowed by the mod-3 characterization.
pub const MOD3_POINTS: [(i64, i64); 9] = [
    (0, 0),
    (1, 0),
    (-1, 0),
    (0, 1),
    (0, -1),
    (1, 1),
    (-1, 1),
    (1, -1),
    (-1, -1),
];

/// Whether `2 | P_n(point)` for `n >= 2` at one of [`MOD2_POINTS`].
pub fn mod2_divides(ctx: &Context, n: u64, point: (i64, i64)) -> Result<bool> {
    if n < 2 {
        return Err(Error::InvalidArgument("mod-2 facts start at n = 2".into()));
    }
    if !MOD2_POINTS.contains(&point) {
        return Err(Error::InvalidArgument(format!(
            "point {:?} is outside the mod-2 characterization",
            point
        )));
    }
    let value = ctx.lucas_atom(n)?.evaluate_i64(point.0, point.1);
    Ok(value.is_even())
}

/// Whether `3 | P_n(point)` for `n >= 3` at one of [`MOD3_POINTS`].
/// All powers of `s` in `P_n` are even for `n >= 3`, so the sign of the
/// first coordinate never matters.
pub fn mod3_divides(ctx: &Context, n: u64, point: (i64, i64)) -> Result<bool> {
    if n < 3 {
        return Err(Error::InvalidArgument("mod-3 facts start at n = 3".into()));
    }
    if !MOD3_POINTS.contains(&point) {
        return Err(Error::InvalidArgument(format!(
            "point {:?} is outside the mod-3 characterization",
            point
        )));
    }
    let value = ctx.lucas_atom(n)?.evaluate_i64(point.0, point.1);
    Ok(value.is_multiple_of(&BigInt::from(3)))
}

/// Checks the mod-2 characterization at a single index: `P_n(0,0) = 0`,
/// `P_n(1,0) = 1`, `2 | P_n(0,1)` iff `n = 2^m` with `m >= 1`, and
/// `2 | P_n(1,1)` iff `n = 3 * 2^m` with `m >= 0`.
pub fn mod2_check(ctx: &Context, n: u64) -> Result<(), String> {
    let atom = ctx.lucas_atom(n).map_err(|e| format!("n = {}: {}", n, e))?;
    if !atom.evaluate_i64(0, 0).is_zero() {
        return Err(format!("P_{}(0,0) != 0", n));
    }
    if !atom.evaluate_i64(1, 0).is_one() {
        return Err(format!("P_{}(1,0) != 1", n));
    }
    let expect_01 = is_power_of(n, 2);
    if atom.evaluate_i64(0, 1).is_even() != expect_01 {
        return Err(format!("2 | P_{}(0,1) expected {}", n, expect_01));
    }
    let expect_11 = n.is_multiple_of(3) && (n / 3 == 1 || is_power_of(n / 3, 2));
    if atom.evaluate_i64(1, 1).is_even() != expect_11 {
        return Err(format!("2 | P_{}(1,1) expected {}", n, expect_11));
    }
    Ok(())
}

/// Checks the mod-3 characterization at a single index: `P_n(0,0) = 0`,
/// `P_n(+-1,0) = 1`, `3 | P_n(0,+-1)` iff `n = 2 * 3^m` with `m >= 1`,
/// `3 | P_n(+-1,1)` iff `n = 4 * 3^m`, and `3 | P_n(+-1,-1)` iff
/// `n = 3^(m+1)`.
pub fn mod3_check(ctx: &Context, n: u64) -> Result<(), String> {
    let atom = ctx.lucas_atom(n).map_err(|e| format!("n = {}: {}", n, e))?;
    if !atom.evaluate_i64(0, 0).is_zero() {
        return Err(format!("P_{}(0,0) != 0", n));
    }
    for sign in [1i64, -1] {
        if !atom.evaluate_i64(sign, 0).is_one() {
            return Err(format!("P_{}({},0) != 1", n, sign));
        }
    }
    let three = BigInt::from(3);
    let divisible = |x: i64, y: i64| atom.evaluate_i64(x, y).is_multiple_of(&three);
    let expect_01 = n.is_multiple_of(2) && is_power_of(n / 2, 3);
    let expect_11 = n.is_multiple_of(4) && (n / 4 == 1 || is_power_of(n / 4, 3));
    let expect_1m1 = is_power_of(n, 3);
    for sign in [1i64, -1] {
        if divisible(0, sign) != expect_01 {
            return Err(format!("3 | P_{}(0,{}) expected {}", n, sign, expect_01));
        }
        if divisible(sign, 1) != expect_11 {
            return Err(format!("3 | P_{}({},1) expected {}", n, sign, expect_11));
        }
        if divisible(sign, -1) != expect_1m1 {
            return Err(format!("3 | P_{}({},-1) expected {}", n, sign, expect_1m1));
        }
    }
    // Evenness of the s-powers makes the sign of s irrelevant.
    for (x, y) in [(1i64, 1i64), (1, -1)] {
        if atom.evaluate_i64(x, y) != atom.evaluate_i64(-x, y) {
            return Err(format!("P_{}({},{}) != P_{}({},{})", n, x, y, n, -x, y));
        }
    }
    Ok(())
}

/// Asserts the full mod-2 characterization for `2 <= n <= max_n`.
pub fn mod2_sweep(ctx: &Context, max_n: u64) -> Result<Vec<String>> {
    Ok((2..=max_n).filter_map(|n| mod2_check(ctx, n).err()).collect())
}

/// Asserts the full mod-3 characterization for `3 <= n <= max_n`.
pub fn mod3_sweep(ctx: &Context, max_n: u64) -> Result<Vec<String>> {
    Ok((3..=max_n).filter_map(|n| mod3_check(ctx, n).err()).collect())
}

/// Exact `p`-adic valuation of `Phi_n(b)` for `p` in `{2, 3}` and
/// `n >= 3`, computed by repeated exact division.
pub fn nu_p_phi(ctx: &Context, p: u64, n: u64, b: i64) -> Result<u32> {
    if p != 2 && p != 3 {
        return Err(Error::InvalidArgument(
            "valuations are characterized only for p = 2 and p = 3".into(),
        ));
    }
    if n < 3 {
        return Err(Error::InvalidArgument("requires n >= 3".into()));
    }
    let value = ctx.cyclotomic(n)?.evaluate(&BigInt::from(b), &BigInt::zero());
    nu_p(&value, p)
}

/// The exact condition for `nu_2(Phi_n(b)) = 1` when `n >= 3`: `n` is a
/// power of two (at least 4) and `b` is odd.  In every other case the
/// valuation is 0.
pub fn nu2_is_one(n: u64, b: i64) -> bool {
    is_power_of(n, 2) && n >= 4 && b % 2 != 0
}

/// The exact condition for `nu_3(Phi_n(b)) = 1` when `n >= 3`: either
/// `n = 3^m` with `b = 1 (mod 3)`, or `n = 2 * 3^m` with `b = 2 (mod 3)`
/// (the latter via `Phi_{2m'}(b) = Phi_{m'}(-b)` for odd `m'`).  In every
/// other case the valuation is 0.  Witness for the second family:
/// `Phi_6(2) = 3`.
pub fn nu3_is_one(n: u64, b: i64) -> bool {
    (is_power_of(n, 3) && b.rem_euclid(3) == 1)
        || (n.is_multiple_of(2) && is_power_of(n / 2, 3) && b.rem_euclid(3) == 2)
}

/// Checks the valuation characterizations at a single index for all
/// `|b| <= max_b`: the valuation equals 1 exactly under [`nu2_is_one`] /
/// [`nu3_is_one`] and 0 otherwise.
pub fn valuation_check(ctx: &Context, n: u64, max_b: i64) -> Result<(), String> {
    for b in -max_b..=max_b {
        let v2 = nu_p_phi(ctx, 2, n, b).map_err(|e| format!("n = {}: {}", n, e))?;
        let expect2: u32 = nu2_is_one(n, b).into();
        if v2 != expect2 {
            return Err(format!("nu_2(Phi_{}({})) = {}, expected {}", n, b, v2, expect2));
        }
        let v3 = nu_p_phi(ctx, 3, n, b).map_err(|e| format!("n = {}: {}", n, e))?;
        let expect3: u32 = nu3_is_one(n, b).into();
        if v3 != expect3 {
            return Err(format!("nu_3(Phi_{}({})) = {}, expected {}", n, b, v3, expect3));
        }
    }
    Ok(())
}

/// Asserts the valuation characterizations for `3 <= n <= max_n`,
/// `|b| <= max_b`.
pub fn valuation_sweep(ctx: &Context, max_n: u64, max_b: i64) -> Result<Vec<String>> {
    Ok((3..=max_n)
        .filter_map(|n| valuation_check(ctx, n, max_b).err())
        .collect())
}

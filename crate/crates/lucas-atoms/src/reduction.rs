//! Reduction formulas: computing `P_{pn}` and `P_{p^m n}` from smaller
//! atoms, the closed form for `P_{2p}`, and the paired cyclotomic
//! identities obtained by specializing at `s = q^p + 1`, `t = eps(p) q^p`.

use alloc::format;

use crate::arith::{binomial, is_prime};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::poly::{IntPoly2, VarPair};

/// The substitution pair attached to a prime: `(s^2 + 2t, -t^2)` for
/// `p = 2` and `(s P_{2p}, t^p)` for odd `p`.
pub fn prime_substitution(ctx: &Context, p: u64) -> Result<(IntPoly2, IntPoly2)> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{} is not prime", p)));
    }
    if p == 2 {
        Ok((
            IntPoly2::parse("s^2+2t", VarPair::ST).expect("literal"),
            IntPoly2::parse("-t^2", VarPair::ST).expect("literal"),
        ))
    } else {
        let sub_s = &IntPoly2::s() * &ctx.lucas_atom(2 * p)?;
        let sub_t = IntPoly2::monomial(VarPair::ST, 0, p as u32, 1);
        Ok((sub_s, sub_t))
    }
}

/// Computes `P_{pn}` for a prime `p` not dividing `n >= 2` as
/// `P_n(sub) / P_n` with the substitution of [`prime_substitution`].
pub fn reduce_pn(ctx: &Context, p: u64, n: u64) -> Result<IntPoly2> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "reduction requires n >= 2, got {}",
            n
        )));
    }
    if n.is_multiple_of(p) {
        return Err(Error::InvalidArgument(format!(
            "reduction requires p not dividing n, got p = {}, n = {}",
            p, n
        )));
    }
    let (sub_s, sub_t) = prime_substitution(ctx, p)?;
    let atom = ctx.lucas_atom(n)?;
    let numerator = atom.substitute(&sub_s, &sub_t)?;
    numerator.exact_div(&atom).map_err(|e| {
        Error::Internal(format!(
            "reduction division failed for p = {}, n = {}: {}",
            p, n, e
        ))
    })
}

/// Computes `P_{p^m n}` for `m >= 2`, `p` prime not dividing `n >= 1`, by
/// substituting into `P_{p^(m-1) n}`.
pub fn reduce_prime_power(ctx: &Context, p: u64, m: u32, n: u64) -> Result<IntPoly2> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "prime-power reduction requires m >= 2, got {}",
            m
        )));
    }
    if n == 0 || n.is_multiple_of(p) {
        return Err(Error::InvalidArgument(format!(
            "prime-power reduction requires p not dividing n >= 1, got p = {}, n = {}",
            p, n
        )));
    }
    let (sub_s, sub_t) = prime_substitution(ctx, p)?;
    let base = ctx.lucas_atom(p.pow(m - 1) * n)?;
    base.substitute(&sub_s, &sub_t)
}

/// Closed form for `P_{2p}` with `p` an odd prime:
/// `sum_k [C(p-k, k) + C(p-k-1, k-1)] s^(p-2k-1) t^k`.
pub fn p2p_closed_form(p: u64) -> Result<IntPoly2> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!(
            "expected an odd prime, got {}",
            p
        )));
    }
    let p = p as i64;
    let mut terms = alloc::vec::Vec::new();
    let mut k = 0i64;
    while 2 * k < p {
        let c = binomial(p - k, k) + binomial(p - k - 1, k - 1);
        terms.push(((p - 2 * k - 1) as u32, k as u32, c));
        k += 1;
    }
    Ok(IntPoly2::from_terms(VarPair::ST, terms))
}

/// Verifies the cyclotomic counterpart of the reductions and returns the
/// common value:
///
/// * without `m`: `Phi_{pn} Phi_n = P_n(q^p + 1, -q^p)` for `n >= 2`;
/// * with `m >= 2`: `Phi_{p^m n} = P_{p^(m-1) n}(q^p + 1, -q^p)`.
///
/// In both cases `p` must be a prime not dividing `n`.  The second
/// argument is `-q^p` for every prime: it is the image of `t^p` (odd `p`)
/// or `-t^2` (`p = 2`) under `t = -q`, and the sign matters as soon as the
/// atom actually involves `t` (e.g. `Phi_12 Phi_4 = q^6 + 1 =
/// P_4(q^3 + 1, -q^3)`, whereas `P_4(q^3 + 1, q^3) = q^6 + 4q^3 + 1`).
pub fn phi_atom_corollary(
    ctx: &Context,
    p: u64,
    n: u64,
    m: Option<u32>,
) -> Result<IntPoly2> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{} is not prime", p)));
    }
    if n == 0 || n.is_multiple_of(p) {
        return Err(Error::InvalidArgument(format!(
            "requires p not dividing n >= 1, got p = {}, n = {}",
            p, n
        )));
    }
    let q_sub_s = IntPoly2::from_terms(VarPair::Q, [(p as u32, 0, 1.into()), (0, 0, 1.into())]);
    let q_sub_t = IntPoly2::monomial(VarPair::Q, p as u32, 0, -1);
    let (lhs, rhs, what) = match m {
        None => {
            if n < 2 {
                return Err(Error::InvalidArgument(
                    "the product form requires n >= 2".into(),
                ));
            }
            let lhs = &ctx.cyclotomic(p * n)? * &ctx.cyclotomic(n)?;
            let rhs = ctx.lucas_atom(n)?.substitute(&q_sub_s, &q_sub_t)?;
            (lhs, rhs, format!("p = {}, n = {}", p, n))
        }
        Some(m) => {
            if m < 2 {
                return Err(Error::InvalidArgument(
                    "the prime-power form requires m >= 2".into(),
                ));
            }
            let lhs = ctx.cyclotomic(p.pow(m) * n)?;
            let rhs = ctx
                .lucas_atom(p.pow(m - 1) * n)?
                .substitute(&q_sub_s, &q_sub_t)?;
            (lhs, rhs, format!("p = {}, m = {}, n = {}", p, m, n))
        }
    };
    if lhs != rhs {
        return Err(Error::Internal(format!(
            "cyclotomic reduction identity failed at {}: {} != {}",
            what, lhs, rhs
        )));
    }
    Ok(lhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(text: &str) -> IntPoly2 {
        IntPoly2::parse(text, VarPair::ST).unwrap()
    }

    fn qp(text: &str) -> IntPoly2 {
        IntPoly2::parse(text, VarPair::Q).unwrap()
    }

    #[test]
    fn reduce_pn_examples() {
        let ctx = Context::new();
        // p = 2, n = 3 gives P_6.
        assert_eq!(reduce_pn(&ctx, 2, 3).unwrap(), st("s^2+3t"));
        // p = 3, n = 2: P_2 = s collapses both sides to P_6.
        assert_eq!(reduce_pn(&ctx, 3, 2).unwrap(), ctx.lucas_atom(6).unwrap());
        // p = 2, n = 5 gives P_10.
        assert_eq!(reduce_pn(&ctx, 2, 5).unwrap(), ctx.lucas_atom(10).unwrap());
    }

    #[test]
    fn reduce_pn_guards() {
        let ctx = Context::new();
        assert!(reduce_pn(&ctx, 2, 4).is_err());
        assert!(reduce_pn(&ctx, 2, 1).is_err());
        assert!(reduce_pn(&ctx, 6, 5).is_err());
    }

    #[test]
    fn reduce_prime_power_examples() {
        let ctx = Context::new();
        // P_4 from P_2.
        assert_eq!(reduce_prime_power(&ctx, 2, 2, 1).unwrap(), st("s^2+2t"));
        // P_8 from P_4.
        assert_eq!(reduce_prime_power(&ctx, 2, 3, 1).unwrap(), st("s^4+4s^2t+2t^2"));
        assert_eq!(
            reduce_prime_power(&ctx, 2, 3, 1).unwrap(),
            ctx.lucas_atom(8).unwrap()
        );
        // P_9 from P_3.
        assert_eq!(
            reduce_prime_power(&ctx, 3, 2, 1).unwrap(),
            st("s^6+6s^4t+9s^2t^2+t^3")
        );
        assert_eq!(
            reduce_prime_power(&ctx, 3, 2, 1).unwrap(),
            ctx.lucas_atom(9).unwrap()
        );
        assert!(reduce_prime_power(&ctx, 2, 1, 3).is_err());
        assert!(reduce_prime_power(&ctx, 2, 2, 4).is_err());
    }

    #[test]
    fn reductions_cover_the_small_prime_rectangle() {
        let ctx = Context::new();
        for p in [2u64, 3, 5, 7, 11, 13] {
            for n in 2..=60u64 {
                if n % p == 0 {
                    continue;
                }
                assert_eq!(
                    reduce_pn(&ctx, p, n).unwrap(),
                    ctx.lucas_atom(p * n).unwrap(),
                    "p = {}, n = {}",
                    p,
                    n
                );
            }
        }
    }

    #[test]
    fn p2p_matches_atoms_for_odd_primes_to_31() {
        let ctx = Context::new();
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let closed = p2p_closed_form(p).unwrap();
            assert_eq!(closed, ctx.lucas_atom(2 * p).unwrap(), "p = {}", p);
            let lhs = &IntPoly2::s() * &closed;
            let rhs = &ctx.lucas(p as i64 + 1) + &(&IntPoly2::t() * &ctx.lucas(p as i64 - 1));
            assert_eq!(lhs, rhs, "p = {}", p);
        }
    }

    #[test]
    fn p2p_values() {
        let ctx = Context::new();
        assert_eq!(p2p_closed_form(3).unwrap(), st("s^2+3t"));
        assert_eq!(p2p_closed_form(5).unwrap(), st("s^4+5s^2t+5t^2"));
        // s P_10 = {6} + t{4}.
        let lhs = &IntPoly2::s() * &p2p_closed_form(5).unwrap();
        let rhs = &ctx.lucas(6) + &(&IntPoly2::t() * &ctx.lucas(4));
        assert_eq!(lhs, rhs);
        assert_eq!(p2p_closed_form(7).unwrap(), ctx.lucas_atom(14).unwrap());
        assert!(p2p_closed_form(2).is_err());
        assert!(p2p_closed_form(9).is_err());
    }

    #[test]
    fn phi_corollary_examples() {
        let ctx = Context::new();
        assert_eq!(phi_atom_corollary(&ctx, 2, 3, None).unwrap(), qp("q^4+q^2+1"));
        assert_eq!(phi_atom_corollary(&ctx, 3, 2, None).unwrap(), qp("q^3+1"));
        // A case where the sign of the second argument matters.
        assert_eq!(phi_atom_corollary(&ctx, 3, 4, None).unwrap(), qp("q^6+1"));
        assert_eq!(
            ctx.lucas_atom(4)
                .unwrap()
                .substitute(&qp("q^3+1"), &qp("-q^3"))
                .unwrap(),
            qp("q^6+1")
        );
        assert_eq!(phi_atom_corollary(&ctx, 3, 1, Some(2)).unwrap(), qp("q^6+q^3+1"));
        // Phi_12 = P_6(q^2 + 1, -q^2).
        assert_eq!(
            phi_atom_corollary(&ctx, 2, 3, Some(2)).unwrap(),
            ctx.cyclotomic(12).unwrap()
        );
        assert!(phi_atom_corollary(&ctx, 2, 1, None).is_err());
        assert!(phi_atom_corollary(&ctx, 2, 2, None).is_err());
        assert!(phi_atom_corollary(&ctx, 2, 3, Some(1)).is_err());
    }
}

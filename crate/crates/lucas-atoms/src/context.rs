//! Shared computation context: memo tables for Lucas polynomials,
//! Lucatorials, cyclotomic polynomials, and Lucas atoms.
//!
//! All cached values are immutable once stored and the tables admit
//! concurrent readers with at-most-once insertion per key, so a `Context`
//! can be shared freely across threads.  Indices beyond a table's ceiling
//! are computed on demand and returned without being cached.

use alloc::format;

use crate::arith::divisors;
use crate::cache::SlotTable;
use crate::error::{Error, Result};
use crate::gamma;
use crate::poly::{IntPoly2, VarPair};

/// Default ceiling for the Lucas polynomial and Lucatorial tables.
pub const DEFAULT_LUCAS_CACHE_MAX: usize = 2000;
/// Default ceiling for the atom and cyclotomic tables.
pub const DEFAULT_ATOM_CACHE_MAX: usize = 1000;

pub struct Context {
    lucas: SlotTable<IntPoly2>,
    lucatorial: SlotTable<IntPoly2>,
    cyclotomic: SlotTable<IntPoly2>,
    atom: SlotTable<IntPoly2>,
}

impl Default for Context {
    fn default() -> Self {
        Self::new()
    }
}

impl Context {
    pub fn new() -> Self {
        Self::with_caps(DEFAULT_LUCAS_CACHE_MAX, DEFAULT_ATOM_CACHE_MAX)
    }

    /// Builds a context whose tables cache indices up to and including the
    /// given ceilings.
    pub fn with_caps(lucas_max: usize, atom_max: usize) -> Self {
        Context {
            lucas: SlotTable::new(lucas_max.saturating_add(1)),
            lucatorial: SlotTable::new(lucas_max.saturating_add(1)),
            cyclotomic: SlotTable::new(atom_max.saturating_add(1)),
            atom: SlotTable::new(atom_max.saturating_add(1)),
        }
    }

    /// The Lucas polynomial `{n}`: `{0} = 0`, `{1} = 1`,
    /// `{n} = s{n-1} + t{n-2}`, and `{n} = 0 for n <= 0`.
    pub fn lucas(&self, n: i64) -> IntPoly2 {
        if n <= 0 {
            return IntPoly2::zero(VarPair::ST);
        }
        let n = n as u64;
        if n == 1 {
            return IntPoly2::one(VarPair::ST);
        }
        if let Some(p) = self.lucas.get(n) {
            return p.clone();
        }
        let s = IntPoly2::s();
        let t = IntPoly2::t();
        // Resume from the highest cached consecutive pair at or below n.
        let cap = self.lucas.capacity() as u64;
        let mut start = 2u64;
        let mut a = IntPoly2::zero(VarPair::ST); // {start - 2}
        let mut b = IntPoly2::one(VarPair::ST); // {start - 1}
        let mut j = n.min(cap.saturating_sub(1));
        while j >= 3 {
            if let (Some(p_prev), Some(p)) = (self.lucas.get(j - 1), self.lucas.get(j)) {
                a = p_prev.clone();
                b = p.clone();
                start = j + 1;
                break;
            }
            j -= 1;
        }
        if start > n {
            // A concurrent writer filled the table up to n while this
            // thread was scanning; b already holds {n}.
            return b;
        }
        for i in start..=n {
            let next = &(&s * &b) + &(&t * &a);
            if i < cap {
                self.lucas.insert(i, next.clone());
            }
            a = b;
            b = next;
        }
        b
    }

    /// The Lucatorial `{n}! = {1}{2}...{n}`, with `{0}! = 1`.
    pub fn lucatorial(&self, n: u64) -> IntPoly2 {
        if let Some(p) = self.lucatorial.get(n) {
            return p.clone();
        }
        let cap = self.lucatorial.capacity() as u64;
        let mut start = 1u64;
        let mut acc = IntPoly2::one(VarPair::ST);
        let hi = n.min(cap.saturating_sub(1));
        let mut j = hi;
        while j >= 1 {
            if let Some(p) = self.lucatorial.get(j) {
                acc = p.clone();
                start = j + 1;
                break;
            }
            j -= 1;
        }
        if n == 0 {
            self.lucatorial.insert(0, acc.clone());
            return acc;
        }
        for i in start..=n {
            acc = &acc * &self.lucas(i as i64);
            if i < cap {
                self.lucatorial.insert(i, acc.clone());
            }
        }
        acc
    }

    /// The cyclotomic polynomial `Phi_n(q)`, computed by exact division of
    /// `q^n - 1` by the product of `Phi_d` over proper divisors `d` of `n`.
    pub fn cyclotomic(&self, n: u64) -> Result<IntPoly2> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "cyclotomic polynomial is undefined at 0".into(),
            ));
        }
        if let Some(p) = self.cyclotomic.get(n) {
            return Ok(p.clone());
        }
        let value = if n == 1 {
            IntPoly2::parse("q-1", VarPair::Q).expect("literal")
        } else {
            let mut proper = IntPoly2::one(VarPair::Q);
            for d in divisors(n) {
                if d < n {
                    proper = &proper * &self.cyclotomic(d)?;
                }
            }
            let qn_minus_1 = IntPoly2::from_terms(
                VarPair::Q,
                [(n as u32, 0, 1.into()), (0, 0, (-1).into())],
            );
            qn_minus_1.exact_div(&proper).map_err(|e| {
                Error::Internal(format!("cyclotomic division failed for n = {}: {}", n, e))
            })?
        };
        if let Some(p) = self.cyclotomic.insert(n, value.clone()) {
            return Ok(p.clone());
        }
        Ok(value)
    }

    /// The Lucas atom `P_n`: `P_1 = 1` and `P_n = Gamma(Phi_n)` for
    /// `n >= 2`, so that `{n} = prod_{d|n} P_d`.
    ///
    /// On first computation the gamma route is cross-checked against the
    /// independent division route `{n} / prod_{d|n, d<n} P_d`; disagreement
    /// or a negative coefficient is a fatal internal error.
    pub fn lucas_atom(&self, n: u64) -> Result<IntPoly2> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "Lucas atoms are indexed from 1".into(),
            ));
        }
        if let Some(p) = self.atom.get(n) {
            return Ok(p.clone());
        }
        let value = if n == 1 {
            IntPoly2::one(VarPair::ST)
        } else {
            let via_gamma = gamma::gamma_map(&self.cyclotomic(n)?)?;
            let mut proper = IntPoly2::one(VarPair::ST);
            for d in divisors(n) {
                if d < n {
                    proper = &proper * &self.lucas_atom(d)?;
                }
            }
            let via_division =
                self.lucas(n as i64).exact_div(&proper).map_err(|e| {
                    Error::Internal(format!(
                        "atom division route failed for n = {}: {}",
                        n, e
                    ))
                })?;
            if via_gamma != via_division {
                return Err(Error::Internal(format!(
                    "atom routes disagree for n = {}: gamma gave {}, division gave {}",
                    n, via_gamma, via_division
                )));
            }
            if !via_gamma.is_nonnegative() {
                return Err(Error::Internal(format!(
                    "atom P_{} has a negative coefficient: {}",
                    n, via_gamma
                )));
            }
            via_gamma
        };
        if let Some(p) = self.atom.insert(n, value.clone()) {
            return Ok(p.clone());
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn st(text: &str) -> IntPoly2 {
        IntPoly2::parse(text, VarPair::ST).unwrap()
    }

    fn qp(text: &str) -> IntPoly2 {
        IntPoly2::parse(text, VarPair::Q).unwrap()
    }

    #[test]
    fn lucas_small_table() {
        let ctx = Context::new();
        assert!(ctx.lucas(0).is_zero());
        assert!(ctx.lucas(-5).is_zero());
        assert!(ctx.lucas(1).is_one());
        assert_eq!(ctx.lucas(2), IntPoly2::s());
        assert_eq!(ctx.lucas(3), st("s^2+t"));
        assert_eq!(ctx.lucas(4), st("s^3+2st"));
        assert_eq!(ctx.lucas(5), st("s^4+3s^2t+t^2"));
        assert_eq!(ctx.lucas(6), st("s^5+4s^3t+3st^2"));
    }

    #[test]
    fn lucas_beyond_cache_ceiling() {
        let ctx = Context::with_caps(8, 8);
        let small = Context::new();
        assert_eq!(ctx.lucas(20), small.lucas(20));
        assert_eq!(ctx.lucatorial(12), small.lucatorial(12));
    }

    #[test]
    fn lucatorial_values() {
        let ctx = Context::new();
        assert!(ctx.lucatorial(0).is_one());
        assert_eq!(ctx.lucatorial(3), st("s^3+st"));
        assert_eq!(ctx.lucatorial(4).evaluate_i64(2, -1), 24.into());
    }

    #[test]
    fn cyclotomic_values() {
        let ctx = Context::new();
        assert_eq!(ctx.cyclotomic(1).unwrap(), qp("q-1"));
        assert_eq!(ctx.cyclotomic(2).unwrap(), qp("q+1"));
        assert_eq!(ctx.cyclotomic(5).unwrap(), qp("1+q+q^2+q^3+q^4"));
        assert_eq!(ctx.cyclotomic(6).unwrap(), qp("q^2-q+1"));
        assert_eq!(ctx.cyclotomic(12).unwrap(), qp("q^4-q^2+1"));
        assert!(ctx.cyclotomic(0).is_err());
    }

    #[test]
    fn cyclotomic_degree_is_totient() {
        let ctx = Context::new();
        for n in 2..=120u64 {
            let phi = ctx.cyclotomic(n).unwrap();
            assert_eq!(
                phi.degree_stats().unwrap().deg as u64,
                crate::arith::totient(n).unwrap(),
                "n = {}",
                n
            );
        }
    }

    #[test]
    fn atoms_match_table_of_small_values() {
        let ctx = Context::new();
        assert!(ctx.lucas_atom(1).unwrap().is_one());
        assert_eq!(ctx.lucas_atom(2).unwrap(), IntPoly2::s());
        assert_eq!(ctx.lucas_atom(3).unwrap(), st("s^2+t"));
        assert_eq!(ctx.lucas_atom(4).unwrap(), st("s^2+2t"));
        assert_eq!(ctx.lucas_atom(5).unwrap(), st("s^4+3s^2t+t^2"));
        assert_eq!(ctx.lucas_atom(6).unwrap(), st("s^2+3t"));
    }

    #[test]
    fn atoms_are_quasi_homogeneous() {
        // Each monomial s^a t^b of P_n has a + 2b = totient(n) for n >= 3.
        let ctx = Context::new();
        for n in 3..=150u64 {
            let atom = ctx.lucas_atom(n).unwrap();
            let phi = crate::arith::totient(n).unwrap();
            for (i, j, _) in atom.terms() {
                assert_eq!(i as u64 + 2 * j as u64, phi, "n = {}", n);
            }
        }
    }

    #[test]
    fn atom_12_reconstructs_lucas_12() {
        let ctx = Context::new();
        let mut prod = IntPoly2::one(VarPair::ST);
        for d in [1u64, 2, 3, 4, 6, 12] {
            prod = &prod * &ctx.lucas_atom(d).unwrap();
        }
        assert_eq!(prod, ctx.lucas(12));
    }

    #[test]
    fn display_matches_expected_format() {
        let ctx = Context::new();
        assert_eq!(ctx.lucas_atom(6).unwrap().to_string(), "s^2 + 3*t");
    }
}

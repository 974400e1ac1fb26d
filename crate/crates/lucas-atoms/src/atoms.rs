//! Atomic decompositions and the polynomiality gate.
//!
//! A quotient of products of Lucas polynomials is described by a
//! [`QuotientSpec`] holding the numerator and denominator index multisets.
//! Since `{n} = prod_{d|n} P_d`, the exponent of the atom `P_d` in a product
//! `prod_i {n_i}` is simply the number of indices `n_i` divisible by `d`.
//! The quotient is a polynomial exactly when every atom exponent in the
//! numerator is at least the matching exponent in the denominator, and then
//! it equals `prod_d P_d^(a_d - b_d)` with nonnegative coefficients.  The
//! gate itself is pure divisor counting; no polynomial arithmetic happens
//! until a quotient is actually materialized.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::arith::divisors;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::poly::{IntPoly2, VarPair};

pub use crate::arith::totient;

/// Numerator and denominator index multisets of a quotient
/// `prod_i {n_i} / prod_j {k_j}`.  Indices must be at least 1; index 1
/// contributes nothing since `{1} = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSpec {
    num: Vec<u64>,
    den: Vec<u64>,
}

impl QuotientSpec {
    pub fn new(num: Vec<u64>, den: Vec<u64>) -> Result<Self> {
        if num.iter().chain(den.iter()).any(|&i| i == 0) {
            return Err(Error::InvalidArgument(
                "quotient indices must be at least 1".into(),
            ));
        }
        Ok(QuotientSpec { num, den })
    }

    pub fn numerator(&self) -> &[u64] {
        &self.num
    }

    pub fn denominator(&self) -> &[u64] {
        &self.den
    }

    /// Appends `{1}{2}...{n}` (a Lucatorial) to the numerator.
    pub fn num_factorial(mut self, n: u64) -> Self {
        self.num.extend(1..=n);
        self
    }

    /// Appends `{1}{2}...{n}` to the denominator.
    pub fn den_factorial(mut self, n: u64) -> Self {
        self.den.extend(1..=n);
        self
    }
}

/// Map from atom index `d >= 2` to its exponent in a decomposition.
/// Exponents of a product are nonnegative; differences may go negative,
/// which is exactly the non-polynomiality signal.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AtomExponents {
    exps: BTreeMap<u64, i64>,
}

impl AtomExponents {
    pub fn get(&self, d: u64) -> i64 {
        self.exps.get(&d).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.exps.iter().map(|(&d, &e)| (d, e))
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    fn bump(&mut self, d: u64, by: i64) {
        let e = self.exps.entry(d).or_insert(0);
        *e += by;
        if *e == 0 {
            self.exps.remove(&d);
        }
    }

    /// Pointwise difference `self - other`.
    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, e) in other.iter() {
            out.bump(d, -e);
        }
        out
    }
}

fn product_exponents(indices: &[u64]) -> AtomExponents {
    let mut exps = AtomExponents::default();
    for &n in indices {
        for d in divisors(n) {
            if d >= 2 {
                exps.bump(d, 1);
            }
        }
    }
    exps
}

/// Atom exponents `(a, b)` of the numerator and denominator products:
/// `a_d` counts the numerator indices divisible by `d`, likewise `b_d`.
pub fn atom_exponents(spec: &QuotientSpec) -> (AtomExponents, AtomExponents) {
    (product_exponents(spec.numerator()), product_exponents(spec.denominator()))
}

/// Decides polynomiality of the quotient: true exactly when `a_d >= b_d`
/// for every `d >= 2`.  The witness is the difference `a - b`.
pub fn is_polynomial(spec: &QuotientSpec) -> (bool, AtomExponents) {
    let (a, b) = atom_exponents(spec);
    let diff = a.sub(&b);
    let ok = diff.iter().all(|(_, e)| e >= 0);
    (ok, diff)
}

/// Materializes the quotient as `prod_d P_d^(a_d - b_d)` when the gate
/// passes; returns [`Error::NotPolynomial`] with the violated exponents
/// otherwise.  A successful result always has nonnegative coefficients.
pub fn quotient_poly(ctx: &Context, spec: &QuotientSpec) -> Result<IntPoly2> {
    let (a, b) = atom_exponents(spec);
    let diff = a.sub(&b);
    let violations: Vec<(u64, u64, u64)> = diff
        .iter()
        .filter(|&(_, e)| e < 0)
        .map(|(d, _)| (d, a.get(d) as u64, b.get(d) as u64))
        .collect();
    if !violations.is_empty() {
        return Err(Error::NotPolynomial { violations });
    }
    let mut out = IntPoly2::one(VarPair::ST);
    for (d, e) in diff.iter() {
        if e > 0 {
            out = &out * &ctx.lucas_atom(d)?.pow(e as u32);
        }
    }
    Ok(out)
}

//! Finite irreducible Coxeter groups, their degree tables, and the Lucas
//! analogues of Fuss-Catalan, rational Catalan, and Fuss-Narayana numbers.
//!
//! All analogues are built by handing one [`QuotientSpec`] per quotient to
//! the atom gate, which certifies polynomiality and nonnegativity; the
//! classical per-type product formulas are kept only as integer oracles.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::atoms::{self, QuotientSpec};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::lucas;
use crate::poly::{IntPoly2, VarPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    D,
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2,
}

/// A finite irreducible Coxeter group together with its degree multiset
/// `d_1 <= ... <= d_n`.  Degrees may repeat (`D_n` for even `n`), so they
/// are never deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterGroup {
    family: Family,
    rank: u32,
    m: Option<u32>,
    degrees: Vec<u64>,
}

impl CoxeterGroup {
    /// `A_n` for `n >= 1`, degrees `2, 3, ..., n+1`.
    pub fn a(n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidArgument("A_n requires n >= 1".into()));
        }
        Ok(Self::build(Family::A, n, None, (2..=n as u64 + 1).collect()))
    }

    /// `B_n` for `n >= 2`, degrees `2, 4, ..., 2n`.
    pub fn b(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument("B_n requires n >= 2".into()));
        }
        Ok(Self::build(Family::B, n, None, (1..=n as u64).map(|j| 2 * j).collect()))
    }

    /// `D_n` for `n >= 4`, degrees `2, 4, ..., 2n-2` together with `n`.
    pub fn d(n: u32) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidArgument("D_n requires n >= 4".into()));
        }
        let mut degrees: Vec<u64> = (1..n as u64).map(|j| 2 * j).collect();
        degrees.push(n as u64);
        degrees.sort_unstable();
        Ok(Self::build(Family::D, n, None, degrees))
    }

    pub fn e6() -> Self {
        Self::build(Family::E6, 6, None, alloc::vec![2, 5, 6, 8, 9, 12])
    }

    pub fn e7() -> Self {
        Self::build(Family::E7, 7, None, alloc::vec![2, 6, 8, 10, 12, 14, 18])
    }

    pub fn e8() -> Self {
        Self::build(Family::E8, 8, None, alloc::vec![2, 8, 12, 14, 18, 20, 24, 30])
    }

    pub fn f4() -> Self {
        Self::build(Family::F4, 4, None, alloc::vec![2, 6, 8, 12])
    }

    pub fn h3() -> Self {
        Self::build(Family::H3, 3, None, alloc::vec![2, 6, 10])
    }

    pub fn h4() -> Self {
        Self::build(Family::H4, 4, None, alloc::vec![2, 12, 20, 30])
    }

    /// The dihedral group `I_2(m)` for `m >= 3`, degrees `2, m`.
    /// `m = 2` is reducible and excluded.
    pub fn i2(m: u32) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidArgument("I_2(m) requires m >= 3".into()));
        }
        let mut degrees = alloc::vec![2, m as u64];
        degrees.sort_unstable();
        Ok(Self::build(Family::I2, 2, Some(m), degrees))
    }

    fn build(family: Family, rank: u32, m: Option<u32>, degrees: Vec<u64>) -> Self {
        debug_assert_eq!(degrees.len(), rank as usize);
        debug_assert!(degrees.windows(2).all(|w| w[0] <= w[1]));
        CoxeterGroup { family, rank, m, degrees }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Degree multiset in ascending order.
    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// The largest degree (the Coxeter number).
    pub fn top_degree(&self) -> u64 {
        *self.degrees.last().expect("rank >= 1")
    }
}

impl fmt::Display for CoxeterGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A => write!(f, "A{}", self.rank),
            Family::B => write!(f, "B{}", self.rank),
            Family::D => write!(f, "D{}", self.rank),
            Family::E6 => write!(f, "E6"),
            Family::E7 => write!(f, "E7"),
            Family::E8 => write!(f, "E8"),
            Family::F4 => write!(f, "F4"),
            Family::H3 => write!(f, "H3"),
            Family::H4 => write!(f, "H4"),
            Family::I2 => write!(f, "I2:{}", self.m.expect("dihedral parameter")),
        }
    }
}

impl FromStr for CoxeterGroup {
    type Err = Error;

    /// Parses names like `A5`, `B4`, `D6`, `E6`, `F4`, `H3`, `I2:7`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown Coxeter group '{}'", s));
        let rest = |prefix: &str| -> Result<u32> {
            s[prefix.len()..].parse::<u32>().map_err(|_| bad())
        };
        match s {
            "E6" => return Ok(Self::e6()),
            "E7" => return Ok(Self::e7()),
            "E8" => return Ok(Self::e8()),
            "F4" => return Ok(Self::f4()),
            "H3" => return Ok(Self::h3()),
            "H4" => return Ok(Self::h4()),
            _ => {}
        }
        if let Some(m) = s.strip_prefix("I2:") {
            let m = m.parse::<u32>().map_err(|_| bad())?;
            return Self::i2(m);
        }
        match s.chars().next() {
            Some('A') => Self::a(rest("A")?),
            Some('B') => Self::b(rest("B")?),
            Some('D') => Self::d(rest("D")?),
            _ => Err(bad()),
        }
    }
}

/// Lucas analogue of the rational Catalan number
/// `Cat(a,b) = (1/(a+b)) C(a+b, a)`, defined for coprime `a, b >= 1`.
pub fn rational_catalan(ctx: &Context, a: u64, b: u64) -> Result<IntPoly2> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidArgument("requires a, b >= 1".into()));
    }
    if a.gcd(&b) != 1 {
        return Err(Error::Unsupported(format!(
            "rational Catalan analogue requires gcd(a, b) = 1, got a = {}, b = {}",
            a, b
        )));
    }
    let spec = QuotientSpec::new(Vec::new(), alloc::vec![a + b])?
        .num_factorial(a + b)
        .den_factorial(a)
        .den_factorial(b);
    atoms::quotient_poly(ctx, &spec)
}

/// Lucas analogue of the Fuss-Catalan number
/// `Cat^(k) W = prod_j (d_j + k d_n) / d_j` for `k >= 1`.
pub fn fuss_catalan(ctx: &Context, group: &CoxeterGroup, k: u64) -> Result<IntPoly2> {
    if k == 0 {
        return Err(Error::InvalidArgument("requires k >= 1".into()));
    }
    let h = group.top_degree();
    let spec = QuotientSpec::new(
        group.degrees().iter().map(|&d| d + k * h).collect(),
        group.degrees().to_vec(),
    )?;
    atoms::quotient_poly(ctx, &spec).map_err(|e| certified(group, k, e))
}

/// Integer Fuss-Catalan number `prod_j (d_j + k d_n) / d_j`, used as the
/// independent oracle for the `(s, t) = (2, -1)` specialization.
pub fn fuss_catalan_count(group: &CoxeterGroup, k: u64) -> BigInt {
    let h = group.top_degree();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for &d in group.degrees() {
        num *= BigInt::from(d + k * h);
        den *= BigInt::from(d);
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    q
}

/// Lucas analogue of the Fuss-Narayana number
/// `Nar^(k) W = n prod_{j<n} (k d_n - d_j + 2) / d_j`; the leading factor
/// `n` becomes the Lucas polynomial `{n}` of the rank.
///
/// Unlike the Fuss-Catalan case, this quotient is *not* always a
/// polynomial: for `H3` with `k = 2 (mod 3)` the atom `P_6` occurs only in
/// the denominator, and for `E7` with `k = 4 (mod 7)` the same happens to
/// `P_14`.  Those cases return [`Error::NotPolynomial`] with the exponent
/// deficit as witness; the integer value of [`fuss_narayana_count`] is
/// available regardless.
pub fn fuss_narayana(ctx: &Context, group: &CoxeterGroup, k: u64) -> Result<IntPoly2> {
    if k == 0 {
        return Err(Error::InvalidArgument("requires k >= 1".into()));
    }
    let h = group.top_degree();
    let lower = &group.degrees()[..group.rank() as usize - 1];
    let mut num: Vec<u64> = alloc::vec![group.rank() as u64];
    for &d in lower {
        let f = k * h + 2 - d;
        debug_assert!(f >= 1);
        num.push(f);
    }
    let spec = QuotientSpec::new(num, lower.to_vec())?;
    atoms::quotient_poly(ctx, &spec)
}

/// Integer Fuss-Narayana number `n prod_{j<n} (k d_n - d_j + 2) / d_j`.
pub fn fuss_narayana_count(group: &CoxeterGroup, k: u64) -> BigInt {
    let h = group.top_degree();
    let lower = &group.degrees()[..group.rank() as usize - 1];
    let mut num = BigInt::from(group.rank());
    let mut den = BigInt::one();
    for &d in lower {
        num *= BigInt::from(k * h + 2 - d);
        den *= BigInt::from(d);
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    q
}

fn certified(group: &CoxeterGroup, k: u64, e: Error) -> Error {
    // Fuss-Catalan quotients pass the gate for every group and k >= 1; a
    // failure here means the gate or the degree table is wrong.
    match e {
        Error::NotPolynomial { .. } => Error::Internal(format!(
            "certified quotient failed the gate for {} at k = {}: {}",
            group, k, e
        )),
        other => other,
    }
}

/// The Fuss-Narayana analogue fails the atom gate exactly for these
/// `(family, k)` classes; see [`fuss_narayana`].
pub fn narayana_gate_exception(group: &CoxeterGroup, k: u64) -> bool {
    match group.family() {
        Family::H3 => k % 3 == 2,
        Family::E7 => k % 7 == 4,
        _ => false,
    }
}

/// Classical-family Fuss-Narayana analogues with a free rank-index `i`.
///
/// * type A: `(1/{n}) {n choose i} {kn choose n-i-1}` for `0 <= i <= n-1`;
/// * type B: `{n choose i} {kn choose n-i}` for `0 <= i <= n`;
/// * type D: `{n choose i}{k(n-1) choose n-i} + {n-2 choose i}{k(n-1)+1 choose n-i}`,
///   each summand certified separately, with out-of-range Lucanomials
///   contributing zero.
///
/// For the exceptional families no product formula is available; use
/// [`fuss_narayana`] for `i = 1`.
pub fn narayana_classical(
    ctx: &Context,
    family: Family,
    n: u64,
    i: u64,
    k: u64,
) -> Result<IntPoly2> {
    if k == 0 {
        return Err(Error::InvalidArgument("requires k >= 1".into()));
    }
    match family {
        Family::A => {
            if n < 1 || i + 1 > n {
                return Err(Error::InvalidArgument(format!(
                    "type A requires 0 <= i <= n-1, got n = {}, i = {}",
                    n, i
                )));
            }
            // One spec so the whole quotient, including the 1/{n} factor,
            // passes through the gate at once.
            let spec = QuotientSpec::new(Vec::new(), alloc::vec![n])?
                .num_factorial(n)
                .den_factorial(i)
                .den_factorial(n - i)
                .num_factorial(k * n)
                .den_factorial(n - i - 1)
                .den_factorial(k * n - (n - i - 1));
            atoms::quotient_poly(ctx, &spec)
        }
        Family::B => {
            if i > n || n < 2 {
                return Err(Error::InvalidArgument(format!(
                    "type B requires n >= 2 and 0 <= i <= n, got n = {}, i = {}",
                    n, i
                )));
            }
            let left = lucas::lucanomial(ctx, n, i)?;
            let right = lucas::lucanomial(ctx, k * n, n - i)?;
            Ok(&left * &right)
        }
        Family::D => {
            if i > n || n < 4 {
                return Err(Error::InvalidArgument(format!(
                    "type D requires n >= 4 and 0 <= i <= n, got n = {}, i = {}",
                    n, i
                )));
            }
            let first = &lucanomial_or_zero(ctx, n, i)?
                * &lucanomial_or_zero(ctx, k * (n - 1), n - i)?;
            let second = &lucanomial_or_zero(ctx, n - 2, i)?
                * &lucanomial_or_zero(ctx, k * (n - 1) + 1, n - i)?;
            Ok(&first + &second)
        }
        other => Err(Error::Unsupported(format!(
            "no product formula is available for family {:?} with a free index i; \
             only i = 1 is supported via the degree product",
            other
        ))),
    }
}

fn lucanomial_or_zero(ctx: &Context, n: u64, k: u64) -> Result<IntPoly2> {
    if k > n {
        return Ok(IntPoly2::zero(VarPair::ST));
    }
    lucas::lucanomial(ctx, n, k)
}

/// Every group of the standard table with classical ranks up to
/// `max_rank` and dihedral parameters `3..=max_i2`.
pub fn standard_groups(max_rank: u32, max_i2: u32) -> Vec<CoxeterGroup> {
    let mut out = Vec::new();
    for n in 1..=max_rank {
        out.push(CoxeterGroup::a(n).expect("rank checked"));
    }
    for n in 2..=max_rank {
        out.push(CoxeterGroup::b(n).expect("rank checked"));
    }
    for n in 4..=max_rank {
        out.push(CoxeterGroup::d(n).expect("rank checked"));
    }
    out.push(CoxeterGroup::e6());
    out.push(CoxeterGroup::e7());
    out.push(CoxeterGroup::e8());
    out.push(CoxeterGroup::f4());
    out.push(CoxeterGroup::h3());
    out.push(CoxeterGroup::h4());
    for m in 3..=max_i2 {
        out.push(CoxeterGroup::i2(m).expect("m checked"));
    }
    out
}

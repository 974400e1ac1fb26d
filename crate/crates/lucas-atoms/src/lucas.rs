//! Lucas-polynomial combinatorics: the closed form, Lucatorials and
//! Lucanomials, the tiling model, and the classical identity sweeps.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::arith::{binomial, epsilon, primes_up_to};
use crate::atoms::{self, QuotientSpec};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::poly::{IntPoly2, VarPair};
use crate::reduction::prime_substitution;

/// Closed form `{n} = sum_k C(n-k-1, k) s^(n-2k-1) t^k` for `n >= 1`.
/// Built directly from binomial coefficients, independently of the
/// recurrence, so the two construction routes can be checked against each
/// other.
pub fn closed_form(n: u64) -> IntPoly2 {
    let mut terms = Vec::new();
    let n = n as i64;
    let mut k = 0i64;
    while 2 * k < n {
        let c = binomial(n - k - 1, k);
        terms.push(((n - 2 * k - 1) as u32, k as u32, c));
        k += 1;
    }
    IntPoly2::from_terms(VarPair::ST, terms)
}

/// The Lucanomial `{n}! / ({k}! {n-k}!)`, constructed through the atom
/// gate with no rational intermediates.
pub fn lucanomial(ctx: &Context, n: u64, k: u64) -> Result<IntPoly2> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "lucanomial requires 0 <= k <= n, got n = {}, k = {}",
            n, k
        )));
    }
    let spec = QuotientSpec::new(Vec::new(), Vec::new())?
        .num_factorial(n)
        .den_factorial(k)
        .den_factorial(n - k);
    atoms::quotient_poly(ctx, &spec)
}

/// The m-divisible Lucanomial built from `{n:m}! = {m}{2m}...{nm}`;
/// `m = 1` reduces to the plain Lucanomial.
pub fn m_divisible_lucanomial(ctx: &Context, n: u64, k: u64, m: u64) -> Result<IntPoly2> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "m-divisible lucanomial requires 0 <= k <= n, got n = {}, k = {}",
            n, k
        )));
    }
    let stride = |top: u64| (1..=top).map(|i| i * m);
    let spec = QuotientSpec::new(
        stride(n).collect(),
        stride(k).chain(stride(n - k)).collect(),
    )?;
    atoms::quotient_poly(ctx, &spec)
}

/// A tile covers one box (monomino) or two (domino).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tile {
    Monomino,
    Domino,
}

/// One tiling of a row of boxes; its weight is
/// `s^(#monominoes) * t^(#dominoes)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tiling {
    pub tiles: Vec<Tile>,
}

impl Tiling {
    /// Number of boxes covered.
    pub fn covers(&self) -> u64 {
        self.tiles
            .iter()
            .map(|t| match t {
                Tile::Monomino => 1,
                Tile::Domino => 2,
            })
            .sum()
    }

    pub fn weight(&self) -> IntPoly2 {
        let monos = self.tiles.iter().filter(|&&t| t == Tile::Monomino).count();
        let doms = self.tiles.len() - monos;
        IntPoly2::monomial(VarPair::ST, monos as u32, doms as u32, 1)
    }
}

/// Enumeration ceiling: the tiling count grows like the Fibonacci numbers.
pub const TILINGS_MAX: u64 = 25;

/// All tilings of a row of `n` boxes in lexicographic tile order
/// (monomino before domino).  `n = 0` yields the single empty tiling.
pub fn tilings(n: u64) -> Result<Vec<Tiling>> {
    if n > TILINGS_MAX {
        return Err(Error::InvalidArgument(format!(
            "tilings are enumerated only up to {} boxes",
            TILINGS_MAX
        )));
    }
    let mut out = Vec::new();
    let mut stack: Vec<Tile> = Vec::new();
    enumerate(n, &mut stack, &mut out);
    Ok(out)
}

fn enumerate(remaining: u64, stack: &mut Vec<Tile>, out: &mut Vec<Tiling>) {
    if remaining == 0 {
        out.push(Tiling { tiles: stack.clone() });
        return;
    }
    stack.push(Tile::Monomino);
    enumerate(remaining - 1, stack, out);
    stack.pop();
    if remaining >= 2 {
        stack.push(Tile::Domino);
        enumerate(remaining - 2, stack, out);
        stack.pop();
    }
}

/// Total weight of all tilings of a row of `n` boxes; equals `{n+1}`.
pub fn tilings_weight(n: u64) -> Result<IntPoly2> {
    let mut total = IntPoly2::zero(VarPair::ST);
    for t in tilings(n)? {
        total = &total + &t.weight();
    }
    Ok(total)
}

/// The five classical identities swept by [`verify_identity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityKind {
    /// `{m+n} = {m+1}{n} + t{m}{n-1}`
    MPlusN,
    /// `{m}^2 = {m-1}{m+1} + eps(m) t^(m-1)`
    TileSq,
    /// `{n} = ({m+1} + t{m-1}){n-m} + eps(m) t^m {n-2m}` for `n >= 2m`
    Mnrr,
    /// `{pn} = {p} * {n}` evaluated at the prime substitution for `p`
    PnDecomp,
    /// `s P_{2p} = {p+1} + t{p-1}` for odd primes `p`
    P2p,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 5] = [
        IdentityKind::MPlusN,
        IdentityKind::TileSq,
        IdentityKind::Mnrr,
        IdentityKind::PnDecomp,
        IdentityKind::P2p,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::MPlusN => "M_PLUS_N",
            IdentityKind::TileSq => "TILE_SQ",
            IdentityKind::Mnrr => "MNRR",
            IdentityKind::PnDecomp => "PN_DECOMP",
            IdentityKind::P2p => "P2P",
        }
    }

    pub fn parse(name: &str) -> Option<IdentityKind> {
        let upper: String = name
            .chars()
            .map(|c| c.to_ascii_uppercase())
            .map(|c| if c == '-' { '_' } else { c })
            .collect();
        Self::ALL.into_iter().find(|k| k.name() == upper)
    }
}

/// Sweep bounds for [`verify_identity`]: `m, n` range over `0..=max`,
/// primes over `p <= max_p`.
#[derive(Debug, Clone, Copy)]
pub struct IdentityBounds {
    pub max_m: u64,
    pub max_n: u64,
    pub max_p: u64,
}

impl Default for IdentityBounds {
    fn default() -> Self {
        IdentityBounds { max_m: 60, max_n: 60, max_p: 13 }
    }
}

/// Outcome of an identity sweep; `failures` lists the offending instances
/// (expected: none).
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub kind: IdentityKind,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks one instance of an identity; `Err` carries a description of the
/// violated equation.
pub fn check_identity(
    ctx: &Context,
    kind: IdentityKind,
    params: (u64, u64),
) -> Result<(), String> {
    let (x, y) = params;
    match kind {
        IdentityKind::MPlusN => {
            let (m, n) = (x as i64, y as i64);
            let lhs = ctx.lucas(m + n);
            let rhs = &(&ctx.lucas(m + 1) * &ctx.lucas(n))
                + &(&IntPoly2::t() * &(&ctx.lucas(m) * &ctx.lucas(n - 1)));
            expect_equal(lhs, rhs, || format!("m = {}, n = {}", m, n))
        }
        IdentityKind::TileSq => {
            let m = x as i64;
            let lhs = ctx.lucas(m).pow(2);
            let eps = IntPoly2::monomial(
                VarPair::ST,
                0,
                (m - 1) as u32,
                epsilon(m as u64),
            );
            let rhs = &(&ctx.lucas(m - 1) * &ctx.lucas(m + 1)) + &eps;
            expect_equal(lhs, rhs, || format!("m = {}", m))
        }
        IdentityKind::Mnrr => {
            let (m, n) = (x as i64, y as i64);
            let lhs = ctx.lucas(n);
            let bracket = &ctx.lucas(m + 1) + &(&IntPoly2::t() * &ctx.lucas(m - 1));
            let tail = &IntPoly2::monomial(VarPair::ST, 0, m as u32, epsilon(m as u64))
                * &ctx.lucas(n - 2 * m);
            let rhs = &(&bracket * &ctx.lucas(n - m)) + &tail;
            expect_equal(lhs, rhs, || format!("m = {}, n = {}", m, n))
        }
        IdentityKind::PnDecomp => {
            let (p, n) = (x, y);
            let lhs = ctx.lucas((p * n) as i64);
            let (sub_s, sub_t) = match prime_substitution(ctx, p) {
                Ok(pair) => pair,
                Err(e) => return Err(format!("p = {}: {}", p, e)),
            };
            let rhs = match ctx.lucas(n as i64).substitute(&sub_s, &sub_t) {
                Ok(inner) => &ctx.lucas(p as i64) * &inner,
                Err(e) => return Err(format!("p = {}, n = {}: {}", p, n, e)),
            };
            expect_equal(lhs, rhs, || format!("p = {}, n = {}", p, n))
        }
        IdentityKind::P2p => {
            let p = x;
            let atom = match ctx.lucas_atom(2 * p) {
                Ok(a) => a,
                Err(e) => return Err(format!("p = {}: {}", p, e)),
            };
            let lhs = &IntPoly2::s() * &atom;
            let rhs = &ctx.lucas(p as i64 + 1)
                + &(&IntPoly2::t() * &ctx.lucas(p as i64 - 1));
            expect_equal(lhs, rhs, || format!("p = {}", p))
        }
    }
}

fn expect_equal(
    lhs: IntPoly2,
    rhs: IntPoly2,
    params: impl Fn() -> String,
) -> Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{}: expected {}, got {}", params(), lhs, rhs))
    }
}

/// Parameter list for an identity sweep at the given bounds.
pub fn identity_instances(kind: IdentityKind, bounds: &IdentityBounds) -> Vec<(u64, u64)> {
    match kind {
        // n starts at 1: at n = 0 the right side would need {-1}, which is
        // 1/t rather than a polynomial.
        IdentityKind::MPlusN => (0..=bounds.max_m)
            .flat_map(|m| (1..=bounds.max_n).map(move |n| (m, n)))
            .collect(),
        IdentityKind::TileSq => (1..=bounds.max_m).map(|m| (m, 0)).collect(),
        IdentityKind::Mnrr => (1..=bounds.max_m)
            .flat_map(|m| (2 * m..=bounds.max_n.max(2 * m)).map(move |n| (m, n)))
            .filter(|&(m, n)| n <= bounds.max_n && n >= 2 * m)
            .collect(),
        IdentityKind::PnDecomp => primes_up_to(bounds.max_p)
            .into_iter()
            .flat_map(|p| (0..=bounds.max_n).map(move |n| (p, n)))
            .collect(),
        IdentityKind::P2p => primes_up_to(bounds.max_p)
            .into_iter()
            .filter(|&p| p >= 3)
            .map(|p| (p, 0))
            .collect(),
    }
}

/// Sweeps one identity over the bounds, collecting violations.
pub fn verify_identity(
    ctx: &Context,
    kind: IdentityKind,
    bounds: &IdentityBounds,
) -> Result<IdentityReport> {
    if bounds.max_m == 0 && bounds.max_n == 0 && bounds.max_p == 0 {
        return Err(Error::InvalidArgument("empty identity sweep range".into()));
    }
    let instances = identity_instances(kind, bounds);
    let mut failures = Vec::new();
    for &params in &instances {
        if let Err(msg) = check_identity(ctx, kind, params) {
            failures.push(format!("{}: {}", kind.name(), msg));
        }
    }
    Ok(IdentityReport { kind, instances: instances.len(), failures })
}

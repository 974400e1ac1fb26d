//! Palindromicity, gamma expansions, and the gamma map.
//!
//! A univariate polynomial with total degree `d` (degree plus minimum
//! degree) is palindromic when its coefficient sequence is symmetric about
//! `d/2`.  Every palindromic polynomial expands uniquely in the basis
//! `q^j (1+q)^{d-2j}`; the coefficients of that expansion are the *gamma
//! coefficients*.  The gamma map sends the basis element `q^j (1+q)^{d-2j}`
//! to `s^{d-2j} (-t)^j`, is multiplicative, and is inverted on its image by
//! the substitution `s -> 1+q`, `t -> -q`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{IntPoly2, VarPair};

/// Gamma coefficients `gamma_0 .. gamma_{floor(d/2)}` of a palindromic
/// polynomial of total degree `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaVector {
    /// Total degree of the source polynomial.
    pub d: u32,
    /// `gammas[j]` multiplies `q^j (1+q)^{d-2j}`.
    pub gammas: Vec<BigInt>,
}

impl GammaVector {
    /// Rebuilds the source polynomial `sum_j gamma_j q^j (1+q)^{d-2j}`.
    pub fn reconstruct(&self) -> IntPoly2 {
        let one_plus_q = IntPoly2::parse("1+q", VarPair::Q).expect("literal");
        let mut total = IntPoly2::zero(VarPair::Q);
        for (j, g) in self.gammas.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let j = j as u32;
            let basis = IntPoly2::monomial(VarPair::Q, j, 0, g.clone())
                .checked_mul(&one_plus_q.pow(self.d - 2 * j))
                .expect("same context");
            total = total.checked_add(&basis).expect("same context");
        }
        total
    }
}

/// Whether `p` is palindromic about half its total degree.  The zero
/// polynomial counts as palindromic.  Bivariate input is rejected.
pub fn is_palindromic(p: &IntPoly2) -> Result<bool> {
    if !p.is_univariate() {
        return Err(Error::NotUnivariate);
    }
    if p.is_zero() {
        return Ok(true);
    }
    let stats = p.degree_stats().expect("nonzero");
    let d = stats.tdeg;
    for (i, _, c) in p.terms() {
        if p.coeff(d - i, 0) != *c {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Gamma expansion of a nonzero palindromic polynomial.
///
/// The basis is unitriangular, so the coefficients are read off by
/// successive subtraction: `gamma_j` is the current coefficient of `q^j`,
/// after which `gamma_j q^j (1+q)^{d-2j}` is removed.  The binomial row
/// of `(1+q)^{d-2j}` is maintained incrementally by synthetic division,
/// keeping the whole expansion quadratic in the degree.
pub fn gamma_expand(p: &IntPoly2) -> Result<GammaVector> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !is_palindromic(p)? {
        return Err(Error::NotPalindromic);
    }
    let stats = p.degree_stats().expect("nonzero");
    let d = stats.tdeg;
    let mut residual = alloc::vec![BigInt::zero(); stats.deg as usize + 1];
    for (i, _, c) in p.terms() {
        residual[i as usize] = c.clone();
    }
    // gamma_j = 0 below the minimum degree; the basis row starts at
    // (1+q)^(d - 2 mdeg), whose degree never exceeds deg(p).
    let mut gammas = alloc::vec![BigInt::zero(); stats.mdeg as usize];
    let mut row_deg = (stats.deg - stats.mdeg) as usize;
    let mut row = alloc::vec![BigInt::one(); row_deg + 1];
    for i in 1..=row_deg {
        row[i] = &row[i - 1] * (row_deg - i + 1) / i;
    }
    for j in stats.mdeg..=d / 2 {
        let j = j as usize;
        let g = residual[j].clone();
        if !g.is_zero() {
            for (i, b) in row.iter().enumerate().take(row_deg + 1) {
                residual[j + i] -= &g * b;
            }
        }
        gammas.push(g);
        if (j as u32) < d / 2 && row_deg >= 2 {
            // Two synthetic divisions by (1 + q).
            for _ in 0..2 {
                for i in 1..row_deg {
                    let prev = row[i - 1].clone();
                    row[i] -= prev;
                }
                row_deg -= 1;
            }
        }
    }
    if residual.iter().any(|c| !c.is_zero()) {
        // Unreachable for palindromic input.
        return Err(Error::NotPalindromic);
    }
    Ok(GammaVector { d, gammas })
}

/// The gamma map: `sum_j gamma_j q^j (1+q)^{d-2j}` goes to
/// `sum_j gamma_j s^{d-2j} (-t)^j`.  Zero maps to zero; non-palindromic
/// input (including anti-palindromic polynomials) is rejected.
pub fn gamma_map(p: &IntPoly2) -> Result<IntPoly2> {
    if p.is_zero() {
        return Ok(IntPoly2::zero(VarPair::ST));
    }
    let gv = gamma_expand(p)?;
    let mut terms = Vec::with_capacity(gv.gammas.len());
    for (j, g) in gv.gammas.into_iter().enumerate() {
        let j = j as u32;
        let sign = if j % 2 == 1 { -g } else { g };
        terms.push((gv.d - 2 * j, j, sign));
    }
    Ok(IntPoly2::from_terms(VarPair::ST, terms))
}

/// Evaluates `f(1+q, -q)`, the inverse of [`gamma_map`] on its image.
pub fn gamma_inverse(f: &IntPoly2) -> Result<IntPoly2> {
    if f.vars() != VarPair::ST {
        return Err(Error::VarMismatch { left: f.vars(), right: VarPair::ST });
    }
    let one_plus_q = IntPoly2::parse("1+q", VarPair::Q).expect("literal");
    let minus_q = IntPoly2::parse("-q", VarPair::Q).expect("literal");
    f.substitute(&one_plus_q, &minus_q)
}

//! Two-square decompositions of Lucas atoms.
//!
//! For square-free `n >= 5` with `n = 1 (mod 4)` there are integer
//! polynomials with `P_n = G^2 + n t H^2` and `4 P_n = E^2 - n t^2 F^2`;
//! for even square-free `n >= 4` the sum form instead decomposes `P_{2n}`.
//! For `n = 3 (mod 4)` no analogue exists: the pure power of `t` in the
//! atom can come from neither square.
//!
//! All witnesses are computed exactly, with no numerical search.  Each
//! identity is the norm form of a factorization of a cyclotomic polynomial
//! into two Galois-conjugate halves over the real quadratic field of
//! discriminant `n` (or `4n`): grouping the roots by the quadratic residue
//! character makes the half-products stable under the index-two subgroup
//! of the Galois group, so their sum is an integer polynomial and their
//! difference is `sqrt(n)` times one.  The computation happens in
//! `Z[x]/Phi_M(x)` with a quadratic Gauss sum standing in for `sqrt(n)`,
//! and the gamma map carries the identities from `q` to `(s, t)`.  Every
//! witness is re-verified by complete bivariate expansion before it is
//! returned.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_square_free, jacobi, totient};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::gamma;
use crate::poly::{IntPoly2, VarPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoSquareKind {
    /// `P_target = first^2 + n t second^2`
    Lucas,
    /// `4 P_target = first^2 - n t^2 second^2`
    Gauss,
}

/// A verified two-square decomposition of `P_target`.
///
/// `n` is the multiplier appearing in the identity; `target` is the atom
/// index (`2n` in the even sum-form case, `n` otherwise).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSquareWitness {
    pub n: u64,
    pub target: u64,
    pub kind: TwoSquareKind,
    pub first: IntPoly2,
    pub second: IntPoly2,
}

impl TwoSquareWitness {
    /// Re-checks the defining identity by exact expansion.
    pub fn verify(&self, ctx: &Context) -> Result<()> {
        let atom = ctx.lucas_atom(self.target)?;
        let ok = match self.kind {
            TwoSquareKind::Lucas => {
                let nt = IntPoly2::monomial(VarPair::ST, 0, 1, BigInt::from(self.n));
                atom == &self.first.pow(2) + &(&nt * &self.second.pow(2))
            }
            TwoSquareKind::Gauss => {
                let four = IntPoly2::constant(VarPair::ST, 4);
                let nt2 = IntPoly2::monomial(VarPair::ST, 0, 2, BigInt::from(self.n));
                &four * &atom == &self.first.pow(2) - &(&nt2 * &self.second.pow(2))
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Internal(format!(
                "two-square witness for n = {} failed re-verification",
                self.n
            )))
        }
    }
}

/// Sum-form decomposition `P = G^2 + n t H^2`.
///
/// Accepts square-free `n >= 5` with `n = 1 (mod 4)` (decomposing `P_n`)
/// and even square-free `n >= 4` (decomposing `P_{2n}`).  Indices with
/// `n = 3 (mod 4)` are rejected with [`Error::NoTwoSquareAnalogue`];
/// other indices fall outside the supporting theorem.
pub fn two_square_lucas(ctx: &Context, n: u64) -> Result<TwoSquareWitness> {
    if n % 2 == 1 && n % 4 == 3 {
        return Err(Error::NoTwoSquareAnalogue { n });
    }
    if !is_square_free(n) {
        return Err(Error::Unsupported(format!(
            "the sum form requires square-free n, and {} is not square-free",
            n
        )));
    }
    let target = if n.is_multiple_of(2) {
        if n < 4 {
            return Err(Error::Unsupported(
                "the even sum form requires n >= 4".into(),
            ));
        }
        2 * n
    } else {
        if n < 5 {
            return Err(Error::Unsupported(
                "the odd sum form requires n >= 5".into(),
            ));
        }
        n
    };
    let u = totient(target)? as u32 / 2;

    // Phi_target = C^2 - n q D^2 from the character halves.
    let (c, d) = if n % 2 == 1 {
        // Roots +-zeta_n^m of Phi_n(q^2), signed by the Jacobi character.
        let ring = CycloRing::new(ctx, n)?;
        let mut roots = Vec::new();
        for m in 1..n {
            if num_integer::gcd(m, n) == 1 {
                let mut r = ring.x_power(m);
                if jacobi(m as i64, n) == -1 {
                    for coord in &mut r {
                        *coord = -core::mem::take(coord);
                    }
                }
                roots.push(r);
            }
        }
        let gauss = ring.gauss_sum(|k| jacobi(k as i64, n));
        ring.check_gauss_square(&gauss, n)?;
        // 1/sqrt(n) = gauss / n.
        split_half_product(&ring, &roots, &gauss, n)?
    } else {
        // Roots of Phi_{2 target}(q) = Phi_target(q^2) with Kronecker
        // character of discriminant 4n; here sqrt(n) = gauss / 2.
        let order = 4 * n;
        let ring = CycloRing::new(ctx, order)?;
        let chi = |j: u64| jacobi((4 * n) as i64, j);
        let mut roots = Vec::new();
        for j in 1..order {
            if num_integer::gcd(j, order) == 1 && chi(j) == 1 {
                roots.push(ring.x_power(j));
            }
        }
        let gauss = ring.gauss_sum(chi);
        ring.check_gauss_square(&gauss, 4 * n)?;
        // 1/sqrt(n) = 2/gauss = 2 gauss/(4n) = gauss/(2n).
        split_half_product(&ring, &roots, &gauss, 2 * n)?
    };

    let phi_target = ctx.cyclotomic(target)?;
    let cd_identity = {
        let nq = IntPoly2::monomial(VarPair::Q, 1, 0, BigInt::from(n));
        &c.pow(2) - &(&nq * &d.pow(2))
    };
    if cd_identity != phi_target {
        return Err(Error::Internal(format!(
            "character-half factorization failed for the sum form at n = {}",
            n
        )));
    }

    let first = gamma::gamma_map(&c)
        .map_err(|e| Error::Internal(format!("sum-form half for n = {}: {}", n, e)))?;
    let second = normalize_sign(gamma::gamma_map(&d).map_err(|e| {
        Error::Internal(format!("sum-form half for n = {}: {}", n, e))
    })?);
    let witness = TwoSquareWitness { n, target, kind: TwoSquareKind::Lucas, first, second };
    witness.verify(ctx)?;
    check_sdeg(&witness.first, u, "G")?;
    check_sdeg(&witness.second, u - 1, "H")?;
    Ok(witness)
}

/// Difference-form decomposition `4 P_n = E^2 - n t^2 F^2` for square-free
/// `n >= 5` with `n = 1 (mod 4)`: here the halves group the roots of
/// `Phi_n` itself by the Jacobi character, the trace gives `E` and the
/// codifference gives `F`.
pub fn two_square_gauss(ctx: &Context, n: u64) -> Result<TwoSquareWitness> {
    if n % 2 == 1 && n % 4 == 3 {
        return Err(Error::NoTwoSquareAnalogue { n });
    }
    if n.is_multiple_of(2) || n < 5 {
        return Err(Error::Unsupported(
            "the difference form requires odd n >= 5 with n = 1 (mod 4)".into(),
        ));
    }
    if !is_square_free(n) {
        return Err(Error::Unsupported(format!(
            "the difference form requires square-free n, and {} is not square-free",
            n
        )));
    }
    let u = totient(n)? as u32 / 2;
    if u < 2 {
        return Err(Error::Unsupported("requires totient(n) >= 4".into()));
    }

    let ring = CycloRing::new(ctx, n)?;
    let half = |sign: i64| -> Vec<Vec<BigInt>> {
        let roots: Vec<Vec<BigInt>> = (1..n)
            .filter(|&k| num_integer::gcd(k, n) == 1 && jacobi(k as i64, n) == sign)
            .map(|k| ring.x_power(k))
            .collect();
        ring.product_of_linear_factors(&roots)
    };
    let plus = half(1);
    let minus = half(-1);
    let gauss = ring.gauss_sum(|k| jacobi(k as i64, n));
    ring.check_gauss_square(&gauss, n)?;

    // A = trace of the halves; sqrt(n) q B = their difference.
    let n_big = BigInt::from(n);
    let mut a_terms = Vec::new();
    let mut b_terms = Vec::new();
    for (i, (p, m)) in plus.iter().zip(minus.iter()).enumerate() {
        let sum: Vec<BigInt> = p.iter().zip(m.iter()).map(|(x, y)| x + y).collect();
        let coeff = ring.as_integer(&sum).ok_or_else(|| {
            Error::Internal("trace of character halves is not an integer".into())
        })?;
        if !coeff.is_zero() {
            a_terms.push((i as u32, 0, coeff));
        }

        let diff: Vec<BigInt> = p.iter().zip(m.iter()).map(|(x, y)| x - y).collect();
        let coeff = ring.divide_by_gauss(&diff, &gauss, &n_big)?;
        if !coeff.is_zero() {
            if i == 0 {
                return Err(Error::Internal(
                    "character-half difference has a constant term".into(),
                ));
            }
            b_terms.push((i as u32 - 1, 0, coeff));
        }
    }
    let a = IntPoly2::from_terms(VarPair::Q, a_terms);
    let b = IntPoly2::from_terms(VarPair::Q, b_terms);

    // Exact check on the cyclotomic side before mapping down.
    let four_phi = {
        let four = IntPoly2::constant(VarPair::Q, 4);
        &four * &ctx.cyclotomic(n)?
    };
    let nq2b2 = {
        let nq2 = IntPoly2::monomial(VarPair::Q, 2, 0, BigInt::from(n));
        &nq2 * &b.pow(2)
    };
    if &a.pow(2) - &nq2b2 != four_phi {
        return Err(Error::Internal(format!(
            "character-half factorization failed for the difference form at n = {}",
            n
        )));
    }

    let first = gamma::gamma_map(&a)
        .map_err(|e| Error::Internal(format!("difference-form half for n = {}: {}", n, e)))?;
    let second = normalize_sign(gamma::gamma_map(&b).map_err(|e| {
        Error::Internal(format!("difference-form half for n = {}: {}", n, e))
    })?);
    let witness = TwoSquareWitness { n, target: n, kind: TwoSquareKind::Gauss, first, second };
    witness.verify(ctx)?;
    check_sdeg(&witness.first, u, "E")?;
    check_sdeg(&witness.second, u - 2, "F")?;
    Ok(witness)
}

/// Builds `U = prod (q - r)` over the given ring elements, splits it into
/// even and odd parts `U = C(q^2) + q W(q^2)`, and returns `(C, D)` where
/// `D = W / sqrt(n)` is recovered by multiplying with the Gauss sum and
/// dividing by `scale` (`n` when `gauss^2 = n`, or adjusted when the sum
/// realizes a multiple of the square root).
fn split_half_product(
    ring: &CycloRing,
    roots: &[Vec<BigInt>],
    gauss: &[BigInt],
    scale: u64,
) -> Result<(IntPoly2, IntPoly2)> {
    let u = ring.product_of_linear_factors(roots);
    let scale = BigInt::from(scale);
    let mut c_terms = Vec::new();
    let mut d_terms = Vec::new();
    for (i, coeff) in u.iter().enumerate() {
        if i % 2 == 0 {
            let value = ring.as_integer(coeff).ok_or_else(|| {
                Error::Internal("even part of the half product is not rational".into())
            })?;
            if !value.is_zero() {
                c_terms.push((i as u32 / 2, 0, value));
            }
        } else {
            let value = ring.divide_by_gauss(coeff, gauss, &scale)?;
            if !value.is_zero() {
                d_terms.push((i as u32 / 2, 0, value));
            }
        }
    }
    Ok((
        IntPoly2::from_terms(VarPair::Q, c_terms),
        IntPoly2::from_terms(VarPair::Q, d_terms),
    ))
}

/// Flips the sign so the leading `s`-coefficient is positive; witnesses
/// are squared, so the sign is free.
fn normalize_sign(poly: IntPoly2) -> IntPoly2 {
    if let Ok(stats) = poly.degree_stats() {
        let lead_j = poly
            .terms()
            .filter(|&(i, _, _)| i == stats.sdeg)
            .map(|(_, j, _)| j)
            .min()
            .expect("nonzero");
        if poly.coeff(stats.sdeg, lead_j).is_negative() {
            return -poly;
        }
    }
    poly
}

fn check_sdeg(poly: &IntPoly2, expected: u32, name: &str) -> Result<()> {
    let got = poly.degree_stats().map_err(|_| {
        Error::Internal(format!("two-square factor {} vanished", name))
    })?;
    if got.sdeg != expected {
        return Err(Error::Internal(format!(
            "two-square factor {} has sdeg {}, expected {}",
            name, got.sdeg, expected
        )));
    }
    Ok(())
}

/// Dense arithmetic in `Z[x]/Phi_M(x)`.
struct CycloRing {
    modulus: Vec<BigInt>,
    phi: usize,
    order: u64,
}

impl CycloRing {
    fn new(ctx: &Context, order: u64) -> Result<Self> {
        let phi_poly = ctx.cyclotomic(order)?;
        let phi = phi_poly.degree_stats().expect("cyclotomic is nonzero").deg as usize;
        let mut modulus = alloc::vec![BigInt::zero(); phi + 1];
        for (i, _, c) in phi_poly.terms() {
            modulus[i as usize] = c.clone();
        }
        Ok(CycloRing { modulus, phi, order })
    }

    fn zero(&self) -> Vec<BigInt> {
        alloc::vec![BigInt::zero(); self.phi]
    }

    fn one(&self) -> Vec<BigInt> {
        let mut v = self.zero();
        v[0] = BigInt::one();
        v
    }

    /// Reduces a dense polynomial modulo the (monic) modulus.
    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let phi = self.phi;
        let mut i = v.len();
        while i > phi {
            i -= 1;
            if v[i].is_zero() {
                continue;
            }
            let c = core::mem::replace(&mut v[i], BigInt::zero());
            let shift = i - phi;
            for (j, m) in self.modulus.iter().enumerate().take(phi) {
                if !m.is_zero() {
                    v[shift + j] -= &c * m;
                }
            }
        }
        v.truncate(phi);
        v.resize(phi, BigInt::zero());
        v
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = alloc::vec![BigInt::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        self.reduce(out)
    }

    fn x_power(&self, k: u64) -> Vec<BigInt> {
        let mut raw = alloc::vec![BigInt::zero(); k as usize + 1];
        raw[k as usize] = BigInt::one();
        self.reduce(raw)
    }

    /// `Some(c)` when the element is the rational integer `c`.
    fn as_integer(&self, v: &[BigInt]) -> Option<BigInt> {
        if v[1..].iter().all(|c| c.is_zero()) {
            Some(v[0].clone())
        } else {
            None
        }
    }

    /// The quadratic Gauss sum `sum_k chi(k) x^k` over `k` coprime to the
    /// ring order.
    fn gauss_sum(&self, chi: impl Fn(u64) -> i64) -> Vec<BigInt> {
        let mut raw = alloc::vec![BigInt::zero(); self.order as usize];
        for k in 1..self.order {
            if num_integer::gcd(k, self.order) == 1 {
                raw[k as usize] = BigInt::from(chi(k));
            }
        }
        self.reduce(raw)
    }

    fn check_gauss_square(&self, gauss: &[BigInt], expected: u64) -> Result<()> {
        match self.as_integer(&self.mul(gauss, gauss)) {
            Some(sq) if sq == BigInt::from(expected) => Ok(()),
            other => Err(Error::Internal(format!(
                "Gauss sum square is {:?}, expected {}",
                other, expected
            ))),
        }
    }

    /// Interprets `v` as `sqrt * c` with `sqrt = gauss / k` for the scale
    /// `k * sqrt^2 = gauss^2 / k = scale`, returning the rational integer
    /// `c = v * gauss / scale`.
    fn divide_by_gauss(
        &self,
        v: &[BigInt],
        gauss: &[BigInt],
        scale: &BigInt,
    ) -> Result<BigInt> {
        let scaled = self.mul(v, gauss);
        let mut out = Vec::with_capacity(scaled.len());
        for c in scaled {
            let (q, r) = num_integer::div_rem(c, scale.clone());
            if !r.is_zero() {
                return Err(Error::Internal(
                    "element is not an integer multiple of the square root".into(),
                ));
            }
            out.push(q);
        }
        self.as_integer(&out).ok_or_else(|| {
            Error::Internal("element is not rational after removing the square root".into())
        })
    }

    /// `prod_i (q - r_i)` as a polynomial in `q` with ring coefficients.
    fn product_of_linear_factors(&self, roots: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let mut poly: Vec<Vec<BigInt>> = alloc::vec![self.one()];
        for r in roots {
            let mut next = alloc::vec![self.zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                for (dst, src) in next[i + 1].iter_mut().zip(c.iter()) {
                    *dst += src;
                }
                let shifted = self.mul(c, r);
                for (dst, src) in next[i].iter_mut().zip(shifted.iter()) {
                    *dst -= src;
                }
            }
            poly = next;
        }
        poly
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(text: &str) -> IntPoly2 {
        IntPoly2::parse(text, VarPair::ST).unwrap()
    }

    #[test]
    fn witness_for_5() {
        let ctx = Context::new();
        let w = two_square_lucas(&ctx, 5).unwrap();
        assert_eq!(w.target, 5);
        assert_eq!(w.first, st("s^2-t"));
        assert_eq!(w.second, st("s"));
        w.verify(&ctx).unwrap();
    }

    #[test]
    fn witness_for_13() {
        let ctx = Context::new();
        let w = two_square_lucas(&ctx, 13).unwrap();
        w.verify(&ctx).unwrap();
        assert_eq!(w.first.degree_stats().unwrap().sdeg, 6);
        assert_eq!(w.second.degree_stats().unwrap().sdeg, 5);
        // Top coefficient of G is +1.
        assert_eq!(w.first.coeff(6, 0), BigInt::one());
    }

    #[test]
    fn witnesses_for_larger_odd_indices() {
        let ctx = Context::new();
        for n in [17u64, 21, 29, 33] {
            let w = two_square_lucas(&ctx, n).unwrap();
            w.verify(&ctx).unwrap();
            let u = totient(n).unwrap() as u32 / 2;
            assert_eq!(w.first.degree_stats().unwrap().sdeg, u, "n = {}", n);
            assert_eq!(w.second.degree_stats().unwrap().sdeg, u - 1, "n = {}", n);
        }
    }

    #[test]
    fn witness_for_even_6() {
        let ctx = Context::new();
        let w = two_square_lucas(&ctx, 6).unwrap();
        assert_eq!(w.target, 12);
        assert_eq!(w.first, st("s^2-t"));
        assert_eq!(w.second, st("s"));
        w.verify(&ctx).unwrap();
    }

    #[test]
    fn witnesses_for_even_indices() {
        let ctx = Context::new();
        for n in [6u64, 10, 14, 22] {
            let w = two_square_lucas(&ctx, n).unwrap();
            assert_eq!(w.target, 2 * n);
            w.verify(&ctx).unwrap();
            // sdeg here follows the totient of the decomposed atom.
            let u = totient(2 * n).unwrap() as u32 / 2;
            assert_eq!(w.first.degree_stats().unwrap().sdeg, u, "n = {}", n);
            assert_eq!(w.second.degree_stats().unwrap().sdeg, u - 1, "n = {}", n);
        }
    }

    #[test]
    fn rejections() {
        let ctx = Context::new();
        assert_eq!(
            two_square_lucas(&ctx, 7).unwrap_err(),
            Error::NoTwoSquareAnalogue { n: 7 }
        );
        assert!(matches!(
            two_square_lucas(&ctx, 4),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            two_square_lucas(&ctx, 9),
            Err(Error::Unsupported(_))
        ));
        assert_eq!(
            two_square_gauss(&ctx, 11).unwrap_err(),
            Error::NoTwoSquareAnalogue { n: 11 }
        );
        assert!(matches!(two_square_gauss(&ctx, 6), Err(Error::Unsupported(_))));
    }

    #[test]
    fn gauss_witness_for_5() {
        let ctx = Context::new();
        let w = two_square_gauss(&ctx, 5).unwrap();
        assert_eq!(w.first, st("2s^2+3t"));
        assert!(w.second.is_one());
        w.verify(&ctx).unwrap();
    }

    #[test]
    fn gauss_witnesses_for_larger_indices() {
        let ctx = Context::new();
        for n in [13u64, 17, 21, 29, 33] {
            let w = two_square_gauss(&ctx, n).unwrap();
            w.verify(&ctx).unwrap();
            let u = totient(n).unwrap() as u32 / 2;
            assert_eq!(w.first.degree_stats().unwrap().sdeg, u, "n = {}", n);
            assert_eq!(w.second.degree_stats().unwrap().sdeg, u - 2, "n = {}", n);
        }
    }
}

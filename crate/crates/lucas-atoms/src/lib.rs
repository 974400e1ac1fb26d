//! Exact arithmetic for Lucas polynomials and Lucas atoms.
//!
//! The Lucas polynomials `{n}` in the variables `s`, `t` are defined by
//! `{0} = 0`, `{1} = 1` and `{n} = s{n-1} + t{n-2}`.  Every `{n}` factors
//! as a product of *Lucas atoms* `P_d` over the divisors `d` of `n`, where
//! `P_n` is the image of the cyclotomic polynomial `Phi_n(q)` under the
//! gamma map that sends `q^j (1+q)^{d-2j}` to `s^{d-2j} (-t)^j`.  Atomic
//! decompositions behave like prime factorizations: a quotient of products
//! of Lucas polynomials is a polynomial exactly when every atom occurs at
//! least as often in the numerator as in the denominator, and in that case
//! the quotient has nonnegative integer coefficients.
//!
//! This crate implements the polynomial kernel (sparse, arbitrary-precision,
//! at most two variables), the gamma machinery, the atom factorization and
//! its polynomiality gate, Lucas analogues of Catalan and Narayana numbers
//! for all finite irreducible Coxeter groups, reduction formulas for atoms,
//! two-square decompositions, and evaluation theorems modulo 2 and 3.
//!
//! Everything is exact: no floating point, no rational intermediates.  The
//! crate is `no_std` (it requires `alloc`); caches live in an explicit
//! [`Context`] value whose tables admit concurrent readers.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

mod cache;

pub mod arith;
pub mod atoms;
pub mod context;
pub mod coxeter;
pub mod error;
pub mod gamma;
pub mod lucas;
pub mod modular;
pub mod poly;
pub mod reduction;
pub mod suites;
pub mod two_square;

pub use atoms::{AtomExponents, QuotientSpec};
pub use context::Context;
pub use coxeter::{CoxeterGroup, Family};
pub use error::Error;
pub use gamma::GammaVector;
pub use poly::{DegreeStats, IntPoly2, VarPair};
pub use two_square::{TwoSquareKind, TwoSquareWitness};

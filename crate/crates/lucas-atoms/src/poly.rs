//! Sparse exact polynomials in at most two variables over arbitrary-precision
//! integers.
//!
//! [`IntPoly2`] stores a canonical map from exponent pairs to nonzero
//! coefficients, so structural equality is polynomial equality.  Univariate
//! polynomials (in `q`) reuse the same engine with the second exponent pinned
//! to zero; there is one arithmetic code path for everything.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The two variable contexts used by the crate: bivariate `(s, t)` for Lucas
/// polynomials and atoms, univariate `(q, _)` for cyclotomic polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarPair {
    /// Variables `s` and `t`.
    ST,
    /// Variable `q`; the second slot is unused.
    Q,
}

impl VarPair {
    /// Symbol names, e.g. `("s", "t")` or `("q", "_")`.
    pub fn names(self) -> (&'static str, &'static str) {
        match self {
            VarPair::ST => ("s", "t"),
            VarPair::Q => ("q", "_"),
        }
    }
}

impl fmt::Display for VarPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.names();
        write!(f, "({},{})", a, b)
    }
}

/// Degree statistics of a nonzero polynomial, all taken in the first
/// variable: `deg` is the largest exponent, `mdeg` the smallest exponent
/// appearing in a nonzero term, `tdeg = deg + mdeg`, and `sdeg` is the
/// largest power of `s` (identical to `deg`; kept as the conventional name
/// for bivariate use).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeStats {
    pub deg: u32,
    pub mdeg: u32,
    pub tdeg: u32,
    pub sdeg: u32,
}

/// Sparse two-variable polynomial with `BigInt` coefficients in canonical
/// form: no stored coefficient is zero, and the zero polynomial is the empty
/// term map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly2 {
    vars: VarPair,
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl IntPoly2 {
    /// The zero polynomial.
    pub fn zero(vars: VarPair) -> Self {
        IntPoly2 { vars, terms: BTreeMap::new() }
    }

    /// The constant polynomial `1`.
    pub fn one(vars: VarPair) -> Self {
        Self::constant(vars, BigInt::one())
    }

    /// A constant polynomial.
    pub fn constant(vars: VarPair, c: impl Into<BigInt>) -> Self {
        Self::monomial(vars, 0, 0, c)
    }

    /// The monomial `c * x^i * y^j` where `(x, y)` are the context variables.
    pub fn monomial(vars: VarPair, i: u32, j: u32, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        IntPoly2 { vars, terms }
    }

    /// The variable `s`.
    pub fn s() -> Self {
        Self::monomial(VarPair::ST, 1, 0, 1)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(VarPair::ST, 0, 1, 1)
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(VarPair::Q, 1, 0, 1)
    }

    /// Builds a polynomial from exponent/coefficient triples, combining
    /// duplicates and dropping zeros.
    pub fn from_terms(
        vars: VarPair,
        iter: impl IntoIterator<Item = (u32, u32, BigInt)>,
    ) -> Self {
        let mut terms: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for (i, j, c) in iter {
            if c.is_zero() {
                continue;
            }
            match terms.entry((i, j)) {
                alloc::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                alloc::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        IntPoly2 { vars, terms }
    }

    pub fn vars(&self) -> VarPair {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    /// True when no term involves the second variable.
    pub fn is_univariate(&self) -> bool {
        self.terms.keys().all(|&(_, j)| j == 0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `x^i y^j`, zero if the term is absent.
    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Iterates terms in map order (ascending exponent pairs).
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    /// Terms in canonical print order: descending power of the first
    /// variable, ties by ascending power of the second.
    pub fn sorted_terms(&self) -> Vec<(u32, u32, &BigInt)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by_key(|&(i, j, _)| (Reverse(i), j));
        v
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VarMismatch { left: self.vars, right: other.vars })
        }
    }

    /// Sum, failing on mismatched variable contexts.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut terms = self.terms.clone();
        for (&k, c) in &other.terms {
            match terms.entry(k) {
                alloc::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
                alloc::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        Ok(IntPoly2 { vars: self.vars, terms })
    }

    /// Difference, failing on mismatched variable contexts.
    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.clone().neg())
    }

    /// Product, failing on mismatched variable contexts.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut terms: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                let k = (i1 + i2, j1 + j2);
                let prod = c1 * c2;
                match terms.entry(k) {
                    alloc::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    alloc::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += prod;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
        }
        Ok(IntPoly2 { vars: self.vars, terms })
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.checked_mul(&base).expect("same context");
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base).expect("same context");
            }
        }
        result
    }

    /// Leading term under lexicographic order (first variable before second).
    fn leading_term(&self) -> Option<((u32, u32), &BigInt)> {
        // BTreeMap keys are ordered lexicographically already.
        self.terms.iter().next_back().map(|(&k, c)| (k, c))
    }

    /// Exact division over the integers by repeated leading-term elimination
    /// under lexicographic order.  Returns [`Error::NotDivisible`] when no
    /// integer polynomial quotient exists and fails fast on the first
    /// non-integer leading-term quotient.
    pub fn exact_div(&self, den: &Self) -> Result<Self> {
        self.check_vars(den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ((di, dj), dc) = den.leading_term().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        while let Some(((ri, rj), rc)) = rem.leading_term() {
            if ri < di || rj < dj {
                return Err(Error::NotDivisible);
            }
            let (q, r) = num_integer::div_rem(rc.clone(), dc.clone());
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            let qterm = Self::monomial(self.vars, ri - di, rj - dj, q.clone());
            rem = rem.checked_sub(&qterm.checked_mul(den)?)?;
            quot.insert((ri - di, rj - dj), q);
        }
        Ok(IntPoly2 { vars: self.vars, terms: quot })
    }

    /// True when `self` is an exact integer multiple of `den`.
    pub fn is_divisible_by(&self, den: &Self) -> bool {
        self.exact_div(den).is_ok()
    }

    /// Simultaneous substitution of both variables, fully expanded.  The
    /// replacements must share a variable context, which becomes the context
    /// of the result.  Implemented by Horner accumulation over the first
    /// variable with a nested Horner pass over the second.
    pub fn substitute(&self, for_first: &Self, for_second: &Self) -> Result<Self> {
        for_first.check_vars(for_second)?;
        let out_vars = for_first.vars;
        if self.is_zero() {
            return Ok(Self::zero(out_vars));
        }
        // Rows indexed by the first-variable exponent; each row is the
        // coefficient polynomial in the second variable.
        let mut rows: BTreeMap<u32, BTreeMap<u32, BigInt>> = BTreeMap::new();
        let mut max_i = 0;
        for (&(i, j), c) in &self.terms {
            rows.entry(i).or_default().insert(j, c.clone());
            max_i = max_i.max(i);
        }
        let mut acc = Self::zero(out_vars);
        for i in (0..=max_i).rev() {
            if !acc.is_zero() {
                acc = acc.checked_mul(for_first)?;
            }
            if let Some(row) = rows.get(&i) {
                // Horner in the second variable.
                let max_j = *row.keys().next_back().expect("nonempty row");
                let mut row_acc = Self::zero(out_vars);
                for j in (0..=max_j).rev() {
                    if !row_acc.is_zero() {
                        row_acc = row_acc.checked_mul(for_second)?;
                    }
                    if let Some(c) = row.get(&j) {
                        row_acc =
                            row_acc.checked_add(&Self::constant(out_vars, c.clone()))?;
                    }
                }
                acc = acc.checked_add(&row_acc)?;
            }
        }
        Ok(acc)
    }

    /// Exact integer evaluation at `(x, y)`.
    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let mut xpow: BTreeMap<u32, BigInt> = BTreeMap::new();
        let mut ypow: BTreeMap<u32, BigInt> = BTreeMap::new();
        let mut total = BigInt::zero();
        for (&(i, j), c) in &self.terms {
            let xi = xpow.entry(i).or_insert_with(|| pow_big(x, i)).clone();
            let yj = ypow.entry(j).or_insert_with(|| pow_big(y, j)).clone();
            total += c * xi * yj;
        }
        total
    }

    /// Convenience wrapper over [`IntPoly2::evaluate`] for small points.
    pub fn evaluate_i64(&self, x: i64, y: i64) -> BigInt {
        self.evaluate(&BigInt::from(x), &BigInt::from(y))
    }

    /// Degree statistics in the first variable; undefined for zero.
    pub fn degree_stats(&self) -> Result<DegreeStats> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut deg = 0u32;
        let mut mdeg = u32::MAX;
        for &(i, _) in self.terms.keys() {
            deg = deg.max(i);
            mdeg = mdeg.min(i);
        }
        Ok(DegreeStats { deg, mdeg, tdeg: deg + mdeg, sdeg: deg })
    }

    /// Parses `text` in the given variable context.  The grammar accepts
    /// integer coefficients with optional sign, `*` (optional) between
    /// factors, `^` for nonnegative integer powers, parentheses, and the
    /// context's variables; whitespace is insignificant.
    pub fn parse(text: &str, vars: VarPair) -> Result<Self> {
        parser::parse(text, vars)
    }

    /// Parses `text`, inferring the context from the variables present
    /// (`q` selects the univariate context; default is `(s, t)`).
    pub fn parse_infer(text: &str) -> Result<Self> {
        let vars = if text.contains('q') { VarPair::Q } else { VarPair::ST };
        parser::parse(text, vars)
    }
}

fn pow_big(base: &BigInt, e: u32) -> BigInt {
    if e == 0 {
        return BigInt::one();
    }
    num_traits::pow::pow(base.clone(), e as usize)
}

impl Neg for IntPoly2 {
    type Output = IntPoly2;
    fn neg(mut self) -> IntPoly2 {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &IntPoly2 {
    type Output = IntPoly2;
    fn neg(self) -> IntPoly2 {
        self.clone().neg()
    }
}

// Operator forms panic on mismatched contexts; use the `checked_*` methods
// where the contexts are not statically known.
impl Add for &IntPoly2 {
    type Output = IntPoly2;
    fn add(self, rhs: &IntPoly2) -> IntPoly2 {
        self.checked_add(rhs).expect("variable contexts must match")
    }
}

impl Sub for &IntPoly2 {
    type Output = IntPoly2;
    fn sub(self, rhs: &IntPoly2) -> IntPoly2 {
        self.checked_sub(rhs).expect("variable contexts must match")
    }
}

impl Mul for &IntPoly2 {
    type Output = IntPoly2;
    fn mul(self, rhs: &IntPoly2) -> IntPoly2 {
        self.checked_mul(rhs).expect("variable contexts must match")
    }
}

impl fmt::Display for IntPoly2 {
    /// Canonical text form: terms in decreasing power of the first variable,
    /// ties by increasing power of the second; `parse` round-trips it.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (first, second) = self.vars.names();
        for (idx, (i, j, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.magnitude();
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                parts.push(mag.to_string());
            }
            if i > 0 {
                parts.push(var_power(first, i));
            }
            if j > 0 {
                parts.push(var_power(second, j));
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

fn var_power(name: &str, e: u32) -> String {
    if e == 1 {
        name.to_string()
    } else {
        let mut s = String::from(name);
        s.push('^');
        s.push_str(&e.to_string());
        s
    }
}

mod parser {
    use super::{IntPoly2, VarPair};
    use crate::error::{Error, Result};
    use alloc::format;
    use alloc::string::ToString;
    use alloc::vec::Vec;
    use num_bigint::BigInt;
    use num_traits::Zero;

    #[derive(Debug, Clone, PartialEq)]
    enum Tok {
        Int(BigInt),
        Var(char),
        Plus,
        Minus,
        Star,
        Caret,
        LParen,
        RParen,
    }

    fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
        let chars: Vec<char> = text.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            match c {
                ' ' | '\t' | '\n' | '\r' => i += 1,
                '+' => {
                    toks.push((i, Tok::Plus));
                    i += 1;
                }
                '-' | '\u{2212}' => {
                    toks.push((i, Tok::Minus));
                    i += 1;
                }
                '*' => {
                    toks.push((i, Tok::Star));
                    i += 1;
                }
                '^' => {
                    toks.push((i, Tok::Caret));
                    i += 1;
                }
                '(' => {
                    toks.push((i, Tok::LParen));
                    i += 1;
                }
                ')' => {
                    toks.push((i, Tok::RParen));
                    i += 1;
                }
                '0'..='9' => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let digits: alloc::string::String =
                        chars[start..i].iter().collect();
                    let value = digits.parse::<BigInt>().map_err(|_| Error::Parse {
                        pos: start,
                        msg: "invalid integer".to_string(),
                    })?;
                    toks.push((start, Tok::Int(value)));
                }
                'a'..='z' | 'A'..='Z' => {
                    toks.push((i, Tok::Var(c)));
                    i += 1;
                }
                other => {
                    return Err(Error::Parse {
                        pos: i,
                        msg: format!("unexpected character '{}'", other),
                    })
                }
            }
        }
        Ok(toks)
    }

    struct Parser {
        toks: Vec<(usize, Tok)>,
        pos: usize,
        vars: VarPair,
        end: usize,
    }

    impl Parser {
        fn peek(&self) -> Option<&Tok> {
            self.toks.get(self.pos).map(|(_, t)| t)
        }

        fn here(&self) -> usize {
            self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
        }

        fn bump(&mut self) -> Option<Tok> {
            let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
            if t.is_some() {
                self.pos += 1;
            }
            t
        }

        // expr := ['+'|'-'] term { ('+'|'-') term }
        fn expr(&mut self) -> Result<IntPoly2> {
            let mut negate = false;
            while let Some(t) = self.peek() {
                match t {
                    Tok::Plus => {
                        self.bump();
                    }
                    Tok::Minus => {
                        negate = !negate;
                        self.bump();
                    }
                    _ => break,
                }
            }
            let mut acc = self.term()?;
            if negate {
                acc = -acc;
            }
            loop {
                match self.peek() {
                    Some(Tok::Plus) => {
                        self.bump();
                        let t = self.signed_term()?;
                        acc = acc.checked_add(&t)?;
                    }
                    Some(Tok::Minus) => {
                        self.bump();
                        let t = self.signed_term()?;
                        acc = acc.checked_sub(&t)?;
                    }
                    _ => break,
                }
            }
            Ok(acc)
        }

        fn signed_term(&mut self) -> Result<IntPoly2> {
            let mut negate = false;
            while let Some(Tok::Minus | Tok::Plus) = self.peek() {
                if let Some(Tok::Minus) = self.peek() {
                    negate = !negate;
                }
                self.bump();
            }
            let t = self.term()?;
            Ok(if negate { -t } else { t })
        }

        // term := factor { ['*'] factor }
        fn term(&mut self) -> Result<IntPoly2> {
            let mut acc = self.factor()?;
            loop {
                match self.peek() {
                    Some(Tok::Star) => {
                        self.bump();
                        let f = self.factor()?;
                        acc = acc.checked_mul(&f)?;
                    }
                    // Implicit multiplication: a factor follows directly.
                    Some(Tok::Int(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                        let f = self.factor()?;
                        acc = acc.checked_mul(&f)?;
                    }
                    _ => break,
                }
            }
            Ok(acc)
        }

        // factor := primary ['^' uint]
        fn factor(&mut self) -> Result<IntPoly2> {
            let base = self.primary()?;
            if let Some(Tok::Caret) = self.peek() {
                self.bump();
                let pos = self.here();
                match self.bump() {
                    Some(Tok::Int(e)) => {
                        let e: u32 = e.try_into().map_err(|_| Error::Parse {
                            pos,
                            msg: "exponent out of range".to_string(),
                        })?;
                        Ok(base.pow(e))
                    }
                    _ => Err(Error::Parse {
                        pos,
                        msg: "expected integer exponent after '^'".to_string(),
                    }),
                }
            } else {
                Ok(base)
            }
        }

        fn primary(&mut self) -> Result<IntPoly2> {
            let pos = self.here();
            match self.bump() {
                Some(Tok::Int(v)) => Ok(IntPoly2::constant(self.vars, v)),
                Some(Tok::Var(c)) => {
                    let (first, second) = self.vars.names();
                    let name = c.to_string();
                    if name == first {
                        Ok(IntPoly2::monomial(self.vars, 1, 0, 1))
                    } else if name == second {
                        Ok(IntPoly2::monomial(self.vars, 0, 1, 1))
                    } else {
                        Err(Error::Parse {
                            pos,
                            msg: format!(
                                "unknown variable '{}' in context {}",
                                c, self.vars
                            ),
                        })
                    }
                }
                Some(Tok::LParen) => {
                    let inner = self.expr()?;
                    match self.bump() {
                        Some(Tok::RParen) => Ok(inner),
                        _ => Err(Error::Parse {
                            pos: self.here(),
                            msg: "expected ')'".to_string(),
                        }),
                    }
                }
                _ => Err(Error::Parse {
                    pos,
                    msg: "expected integer, variable, or '('".to_string(),
                }),
            }
        }
    }

    pub(super) fn parse(text: &str, vars: VarPair) -> Result<IntPoly2> {
        let toks = lex(text)?;
        if toks.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "empty input".to_string() });
        }
        let end = text.chars().count();
        let mut p = Parser { toks, pos: 0, vars, end };
        let poly = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse {
                pos: p.here(),
                msg: "trailing input".to_string(),
            });
        }
        // Canonical form already holds; zero check only for completeness.
        debug_assert!(poly.terms.values().all(|c| !c.is_zero()));
        Ok(poly)
    }
}

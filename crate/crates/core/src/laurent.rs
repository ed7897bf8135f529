//! Sparse multivariate Laurent polynomials over the integers.
//!
//! A [`Laurent`] lives in a fixed ambient ring `Z[x1^±1, ..., xm^±1]`; the
//! variable count `m` is part of the value and binary operations require it
//! to agree. Terms are kept in a `BTreeMap` keyed by exponent vector, so
//! iteration (and therefore rendering and hashing) is in lexicographic order
//! with `x1` most significant. Zero coefficients are never stored.
//!
//! # Text grammar
//!
//! ```text
//! poly    := "0" | term (sep term)*
//! sep     := " + " | " - "
//! term    := ["-"] (int | [int "*"] factor ("*" factor)*)
//! factor  := "x" index ["^" ["-"] digits]
//! ```
//!
//! Terms appear in ascending lexicographic order of their exponent vectors.
//! A coefficient of `1` (or `-1`, as a bare sign) is omitted unless the term is
//! a constant; an exponent of `1` is omitted, as are variables with exponent
//! `0`. Negative exponents are written `x2^-3`. The parser also accepts
//! arbitrary whitespace and terms in any order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exponent type for a single variable.
pub type Exp = i32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("dimension mismatch: {left} variables vs {right} variables")]
    DimensionMismatch { left: usize, right: usize },
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("operation undefined on the zero polynomial")]
    EmptyPolynomial,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("invalid variable order: {0}")]
    BadOrder(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// An exponent vector `(e1, ..., em)`, one entry per ambient variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<Exp>);

impl Monomial {
    pub fn new(exponents: Vec<Exp>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// `x_index^exp` in `nvars` variables.
    pub fn var(nvars: usize, index: usize, exp: Exp) -> Self {
        let mut v = vec![0; nvars];
        v[index] = exp;
        Monomial(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exponents(&self) -> &[Exp] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Exp {
        self.0[i]
    }

    pub fn into_inner(self) -> Vec<Exp> {
        self.0
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, LaurentError> {
        self.zip_with(other, Exp::checked_add)
    }

    pub fn checked_div(&self, other: &Monomial) -> Result<Monomial, LaurentError> {
        self.zip_with(other, Exp::checked_sub)
    }

    pub fn checked_pow(&self, k: Exp) -> Result<Monomial, LaurentError> {
        self.0
            .iter()
            .map(|e| e.checked_mul(k).ok_or(LaurentError::ExponentOverflow))
            .collect::<Result<Vec<_>, _>>()
            .map(Monomial)
    }

    /// True iff every exponent of `self` is at least the matching one in `other`.
    pub fn dominates(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    fn zip_with(
        &self,
        other: &Monomial,
        f: impl Fn(Exp, Exp) -> Option<Exp>,
    ) -> Result<Monomial, LaurentError> {
        if self.0.len() != other.0.len() {
            return Err(LaurentError::DimensionMismatch { left: self.0.len(), right: other.0.len() });
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| f(a, b).ok_or(LaurentError::ExponentOverflow))
            .collect::<Result<Vec<_>, _>>()
            .map(Monomial)
    }
}

impl From<Vec<Exp>> for Monomial {
    fn from(v: Vec<Exp>) -> Self {
        Monomial(v)
    }
}

/// A Laurent polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Laurent {
    pub fn zero(nvars: usize) -> Self {
        Laurent { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::term(nvars, Monomial::one(nvars), c)
    }

    /// The coordinate variable `x_{index+1}`.
    pub fn var(nvars: usize, index: usize) -> Self {
        Self::term(nvars, Monomial::var(nvars, index, 1), 1)
    }

    pub fn term(nvars: usize, mono: Monomial, c: impl Into<BigInt>) -> Self {
        assert_eq!(mono.len(), nvars, "monomial length must equal the variable count");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Laurent { nvars, terms }
    }

    pub fn monomial(exponents: Vec<Exp>) -> Self {
        let n = exponents.len();
        Self::term(n, Monomial(exponents), 1)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated exponent vectors.
    pub fn from_terms<I, C>(nvars: usize, terms: I) -> Result<Self, LaurentError>
    where
        I: IntoIterator<Item = (Vec<Exp>, C)>,
        C: Into<BigInt>,
    {
        let mut p = Laurent::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(LaurentError::DimensionMismatch { left: nvars, right: e.len() });
            }
            p.add_term(Monomial(e), c.into());
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Terms in canonical (ascending lex) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    /// Lex-largest term.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Adds `c * mono` in place, pruning a resulting zero.
    pub fn add_term(&mut self, mono: Monomial, c: BigInt) {
        debug_assert_eq!(mono.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dims(&self, other: &Laurent) -> Result<(), LaurentError> {
        if self.nvars != other.nvars {
            Err(LaurentError::DimensionMismatch { left: self.nvars, right: other.nvars })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Laurent) -> Result<Laurent, LaurentError> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Laurent) -> Result<Laurent, LaurentError> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Laurent) -> Result<Laurent, LaurentError> {
        self.check_dims(other)?;
        let mut out = Laurent::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.checked_mul(mb)?, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn checked_pow(&self, k: u32) -> Result<Laurent, LaurentError> {
        if self.is_monomial() {
            let (m, c) = self.terms.iter().next().unwrap();
            let e = Exp::try_from(k).map_err(|_| LaurentError::ExponentOverflow)?;
            return Ok(Laurent::term(self.nvars, m.checked_pow(e)?, c.pow(k)));
        }
        let mut result = Laurent::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn pow(&self, k: u32) -> Laurent {
        self.checked_pow(k).expect("exponent overflow in pow")
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Result<Laurent, LaurentError> {
        if mono.len() != self.nvars {
            return Err(LaurentError::DimensionMismatch { left: self.nvars, right: mono.len() });
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.checked_mul(mono)?, c.clone())))
            .collect::<Result<BTreeMap<_, _>, LaurentError>>()?;
        Ok(Laurent { nvars: self.nvars, terms })
    }

    pub fn scale(&self, c: &BigInt) -> Laurent {
        if c.is_zero() {
            return Laurent::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect();
        Laurent { nvars: self.nvars, terms }
    }

    /// Per-variable minimum exponent over all terms; `None` for zero.
    pub fn min_exponents(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |mut acc, m| {
            for (a, &b) in acc.0.iter_mut().zip(&m.0) {
                *a = (*a).min(b);
            }
            acc
        }))
    }

    pub fn max_exponents(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |mut acc, m| {
            for (a, &b) in acc.0.iter_mut().zip(&m.0) {
                *a = (*a).max(b);
            }
            acc
        }))
    }

    /// Division with remainder: returns `(q, r)` with `q * d + r == self`.
    ///
    /// Both operands are first shifted to ordinary polynomials whose
    /// per-variable minimum exponent is zero; the shifted dividend is then
    /// reduced by the lex-leading term of the shifted divisor. A leading term
    /// that is not divisible (as a monomial, or because its integer
    /// coefficient is not a multiple) moves to the remainder. The remainder is
    /// zero exactly when `d` divides `self` in the Laurent ring.
    pub fn div_rem(&self, d: &Laurent) -> Result<(Laurent, Laurent), LaurentError> {
        self.check_dims(d)?;
        if d.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok((Laurent::zero(self.nvars), Laurent::zero(self.nvars)));
        }
        let shift_p = self.min_exponents().unwrap();
        let shift_d = d.min_exponents().unwrap();
        let inv = |m: &Monomial| m.checked_pow(-1);
        let mut rest = self.mul_monomial(&inv(&shift_p)?)?;
        let divisor = d.mul_monomial(&inv(&shift_d)?)?;
        let (lead_m, lead_c) = divisor.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();

        let mut quot = Laurent::zero(self.nvars);
        let mut rem = Laurent::zero(self.nvars);
        while let Some((m, c)) = rest.terms.pop_last() {
            let (q, r) = c.div_rem(&lead_c);
            if m.dominates(&lead_m) && r.is_zero() {
                let t = m.checked_div(&lead_m)?;
                for (dm, dc) in divisor.terms.iter().rev().skip(1) {
                    rest.add_term(dm.checked_mul(&t)?, -(dc * &q));
                }
                quot.add_term(t, q);
            } else {
                rem.add_term(m, c);
            }
        }
        let quot = quot.mul_monomial(&shift_p.checked_div(&shift_d)?)?;
        let rem = rem.mul_monomial(&shift_p)?;
        Ok((quot, rem))
    }

    /// `Some(q)` with `q * d == self` when `d` divides `self` exactly.
    pub fn exact_divide(&self, d: &Laurent) -> Result<Option<Laurent>, LaurentError> {
        let (q, r) = self.div_rem(d)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Decomposes `self = Σ_d c_d · x_k^d` with each `c_d` free of `x_k`.
    pub fn coefficients_in_variable(&self, k: usize) -> Result<BTreeMap<Exp, Laurent>, LaurentError> {
        if k >= self.nvars {
            return Err(LaurentError::VariableOutOfRange { index: k, nvars: self.nvars });
        }
        let mut out: BTreeMap<Exp, Laurent> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let d = std::mem::replace(&mut e[k], 0);
            out.entry(d)
                .or_insert_with(|| Laurent::zero(self.nvars))
                .add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// The lowest mutable monomial under the lex order given by `order`.
    ///
    /// `order` lists the `n` mutable variables (0-based) from most to least
    /// significant; variables `n..m` are frozen. Returns the mutable exponent
    /// vector (indexed by original variable, length `n`) of the lex-smallest
    /// mutable monomial, together with the full frozen-variable coefficient
    /// attached to it.
    pub fn lowest_monomial(&self, order: &[usize]) -> Result<(Vec<Exp>, Laurent), LaurentError> {
        let n = order.len();
        if n > self.nvars {
            return Err(LaurentError::BadOrder(format!("{n} mutable variables exceed {}", self.nvars)));
        }
        let mut seen = vec![false; n];
        for &v in order {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(LaurentError::BadOrder(format!("{order:?} is not a permutation of 0..{n}")));
            }
        }
        let key = |m: &Monomial| order.iter().map(|&v| m.0[v]).collect::<Vec<_>>();
        let lowest = self
            .terms
            .keys()
            .min_by(|a, b| key(a).cmp(&key(b)))
            .ok_or(LaurentError::EmptyPolynomial)?;
        let target = key(lowest);
        let mut coeff = Laurent::zero(self.nvars);
        for (m, c) in &self.terms {
            if key(m) == target {
                let mut e = m.0.clone();
                e[..n].iter_mut().for_each(|x| *x = 0);
                coeff.add_term(Monomial(e), c.clone());
            }
        }
        Ok((lowest.0[..n].to_vec(), coeff))
    }

    /// True iff `x_k` does not appear in any term.
    pub fn is_free_of(&self, k: usize) -> bool {
        self.terms.keys().all(|m| m.0[k] == 0)
    }

    /// True iff every coefficient is a positive integer.
    pub fn has_positive_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Renders as `(numerator)/(denominator monomial)`, clearing negative
    /// exponents. Intended for human-facing output; the canonical form is
    /// the [`fmt::Display`] rendering.
    pub fn to_fraction_string(&self) -> String {
        let Some(min) = self.min_exponents() else {
            return "0".to_string();
        };
        let den: Vec<Exp> = min.0.iter().map(|&e| (-e).max(0)).collect();
        if den.iter().all(|&e| e == 0) {
            return self.to_string();
        }
        let num = self.mul_monomial(&Monomial(den.clone())).expect("exponent overflow");
        let den = Laurent::monomial(den).to_string();
        let num_s = num.to_string();
        let num_s = if num.len() > 1 { format!("({num_s})") } else { num_s };
        format!("{num_s}/({den})")
    }

    /// Parses the canonical text grammar in `nvars` variables.
    pub fn parse(s: &str, nvars: usize) -> Result<Laurent, LaurentError> {
        Parser { src: s.as_bytes(), pos: 0, nvars }.poly()
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent[{}]({})", self.nvars, self)
    }
}

fn write_monomial(f: &mut impl fmt::Write, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_char('*')?;
        }
        first = false;
        write!(f, "x{}", i + 1)?;
        if e != 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, LaurentError> {
        Err(LaurentError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<&str, LaurentError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn poly(mut self) -> Result<Laurent, LaurentError> {
        let mut p = Laurent::zero(self.nvars);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            None => return self.err("empty input"),
            _ => 1,
        };
        loop {
            let (m, c) = self.term()?;
            p.add_term(m, c * sign);
            match self.peek() {
                None => break,
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(ch) => return self.err(format!("unexpected '{}'", ch as char)),
            }
            self.pos += 1;
        }
        Ok(p)
    }

    fn term(&mut self) -> Result<(Monomial, BigInt), LaurentError> {
        let mut coeff = BigInt::one();
        let mut exps = vec![0 as Exp; self.nvars];
        let mut expect_factor = true;
        if matches!(self.peek(), Some(b'0'..=b'9')) {
            coeff = self.digits()?.parse().unwrap();
            expect_factor = false;
            if self.peek() == Some(b'*') {
                self.pos += 1;
                expect_factor = true;
            }
        }
        if expect_factor {
            loop {
                if self.peek() != Some(b'x') {
                    return self.err("expected variable");
                }
                self.pos += 1;
                let idx: usize = match self.digits()?.parse() {
                    Ok(i) => i,
                    Err(_) => return self.err("bad variable index"),
                };
                if idx == 0 || idx > self.nvars {
                    return self.err(format!("variable x{idx} outside x1..x{}", self.nvars));
                }
                let mut e: Exp = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let neg = if self.peek() == Some(b'-') {
                        self.pos += 1;
                        true
                    } else {
                        false
                    };
                    e = match self.digits()?.parse::<Exp>() {
                        Ok(v) => v,
                        Err(_) => return self.err("exponent out of range"),
                    };
                    if neg {
                        e = -e;
                    }
                }
                exps[idx - 1] = exps[idx - 1]
                    .checked_add(e)
                    .ok_or(LaurentError::ExponentOverflow)?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        Ok((Monomial(exps), coeff))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Laurent> for &Laurent {
            type Output = Laurent;
            fn $method(self, rhs: &Laurent) -> Laurent {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Laurent> for Laurent {
            type Output = Laurent;
            fn $method(self, rhs: Laurent) -> Laurent {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Laurent> for Laurent {
            type Output = Laurent;
            fn $method(self, rhs: &Laurent) -> Laurent {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Laurent { nvars: self.nvars, terms }
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

/// Orders polynomials by their canonical term sequence; only used to sort
/// collections deterministically.
impl PartialOrd for Laurent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Laurent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nvars.cmp(&other.nvars).then_with(|| self.terms.iter().cmp(other.terms.iter()))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exponents: Vec<Exp>,
    coefficient: String,
}

#[derive(Serialize, Deserialize)]
struct LaurentRepr {
    nvars: usize,
    terms: Vec<TermRepr>,
}

/// JSON: `{"nvars": m, "terms": [{"exponents": [..], "coefficient": "decimal"}]}`,
/// terms in canonical order. Coefficients are strings so they stay exact.
impl Serialize for Laurent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LaurentRepr {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermRepr { exponents: m.0.clone(), coefficient: c.to_string() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Laurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = LaurentRepr::deserialize(d)?;
        let terms = repr
            .terms
            .into_iter()
            .map(|t| {
                let c: BigInt = t.coefficient.parse().map_err(D::Error::custom)?;
                Ok((t.exponents, c))
            })
            .collect::<Result<Vec<_>, D::Error>>()?;
        Laurent::from_terms(repr.nvars, terms).map_err(D::Error::custom)
    }
}

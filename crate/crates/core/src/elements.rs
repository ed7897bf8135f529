//! The sequence-of-sequences construction.
//!
//! For `a ∈ Z^n` a tuple `s = (s_1, ..., s_n)` assigns to each mutable vertex
//! a bit sequence of length `[a_i]_+`. `S_all(a)` is the set of all such
//! tuples and `S_gcc(a)` keeps those with `s_i · s̄_j = 0` on every arrow
//! `i -> j` of `Q_B`. Summing the weight
//!
//! ```text
//! Π_{(i,j) ∈ Q_B~} x_i^{b_ij |s̄_j|} x_j^{-b_ji |s_i|}
//! ```
//!
//! over `S_gcc` (resp. `S_all`) and multiplying by `Π x_l^{-a_l}` gives
//! `x~[a]` (resp. `z[a]`).
//!
//! Tuples are enumerated in lex order over the concatenation
//! `s_1 ‖ s_2 ‖ ... ‖ s_n`, with `s_{i,1}` the most significant bit of `s_i`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exchange::{exp, ExchangeError, ExtendedMatrix};
use crate::laurent::{Exp, Laurent, LaurentError, Monomial};

/// Default bound on `Σ [a_i]_+`; `|S_all| = 2^{Σ [a_i]_+}`.
pub const DEFAULT_CAP: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElementsError {
    #[error("a has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("sum of positive parts {total} exceeds the enumeration cap {cap}")]
    TooLarge { total: u64, cap: u32 },
    #[error("a_{index} = {value} is not 0 or 1")]
    NotZeroOne { index: usize, value: i64 },
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Exchange(#[from] ExchangeError),
}

/// A finite 0/1 sequence of length at most 64. Bit `r` holds `t_{r+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitSeq {
    len: u32,
    bits: u64,
}

impl BitSeq {
    pub fn empty() -> Self {
        BitSeq { len: 0, bits: 0 }
    }

    pub fn new(len: u32, bits: u64) -> Self {
        assert!(len <= 64);
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        BitSeq { len, bits: bits & mask }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let v = bits.iter().enumerate().fold(0u64, |acc, (r, &b)| acc | (u64::from(b & 1) << r));
        BitSeq::new(bits.len() as u32, v)
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn raw(&self) -> u64 {
        self.bits
    }

    /// `t_{r+1}` for 0-based `r`.
    pub fn get(&self, r: u32) -> bool {
        r < self.len && (self.bits >> r) & 1 == 1
    }

    pub fn to_vec(&self) -> Vec<u8> {
        (0..self.len).map(|r| self.get(r) as u8).collect()
    }

    pub fn complement(&self) -> Self {
        BitSeq::new(self.len, !self.bits)
    }

    /// `|t|`
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// `t · t'` over the common prefix.
    pub fn dot(&self, other: &BitSeq) -> u32 {
        let l = self.len.min(other.len);
        (BitSeq::new(l, self.bits).bits & other.bits).count_ones()
    }
}

impl fmt::Display for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.to_vec().iter().map(u8::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// One tuple `s = (s_1, ..., s_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GccTuple(pub Vec<BitSeq>);

impl GccTuple {
    pub fn seqs(&self) -> &[BitSeq] {
        &self.0
    }
}

impl fmt::Display for GccTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(BitSeq::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub(crate) fn pos(x: i64) -> u32 {
    u32::try_from(x.max(0)).expect("a_i out of range")
}

/// `x~[a]`, `z[a]` and friends relative to one extended exchange matrix.
#[derive(Debug, Clone, Copy)]
pub struct Elements<'a> {
    matrix: &'a ExtendedMatrix,
    cap: u32,
}

struct Layout {
    lens: Vec<u32>,
    offsets: Vec<u32>,
    total: u32,
}

impl Layout {
    fn tuple(&self, counter: u64) -> GccTuple {
        GccTuple(
            self.lens
                .iter()
                .zip(&self.offsets)
                .map(|(&len, &off)| {
                    let mut bits = 0u64;
                    for r in 0..len {
                        let pos = self.total - 1 - (off + r);
                        bits |= ((counter >> pos) & 1) << r;
                    }
                    BitSeq::new(len, bits)
                })
                .collect(),
        )
    }
}

impl<'a> Elements<'a> {
    pub fn new(matrix: &'a ExtendedMatrix) -> Self {
        Elements { matrix, cap: DEFAULT_CAP }
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self
    }

    pub fn matrix(&self) -> &'a ExtendedMatrix {
        self.matrix
    }

    fn layout(&self, a: &[i64]) -> Result<Layout, ElementsError> {
        let n = self.matrix.n();
        if a.len() != n {
            return Err(ElementsError::LengthMismatch { expected: n, got: a.len() });
        }
        let total: u64 = a.iter().map(|&x| x.max(0) as u64).sum();
        if total > u64::from(self.cap.min(62)) {
            return Err(ElementsError::TooLarge { total, cap: self.cap });
        }
        let lens: Vec<u32> = a.iter().map(|&x| pos(x)).collect();
        let offsets = lens
            .iter()
            .scan(0u32, |acc, &l| {
                let o = *acc;
                *acc += l;
                Some(o)
            })
            .collect();
        Ok(Layout { lens, offsets, total: total as u32 })
    }

    /// `s_i · s̄_j = 0` for every arrow `i -> j` of `Q_B`.
    pub fn is_gcc(&self, s: &GccTuple) -> bool {
        self.matrix
            .qb()
            .edges()
            .all(|(i, j)| s.0[i].dot(&s.0[j].complement()) == 0)
    }

    /// All tuples, in lex order.
    pub fn s_all(&self, a: &[i64]) -> Result<Vec<GccTuple>, ElementsError> {
        let layout = self.layout(a)?;
        Ok((0..1u64 << layout.total).map(|c| layout.tuple(c)).collect())
    }

    /// The globally compatible tuples, in lex order.
    pub fn s_gcc(&self, a: &[i64]) -> Result<Vec<GccTuple>, ElementsError> {
        Ok(self.s_all(a)?.into_iter().filter(|s| self.is_gcc(s)).collect())
    }

    pub fn count_gcc(&self, a: &[i64]) -> Result<u64, ElementsError> {
        let layout = self.layout(a)?;
        let qb: Vec<_> = self.matrix.qb().edges().collect();
        Ok((0..1u64 << layout.total)
            .filter(|&c| {
                let s = layout.tuple(c);
                qb.iter().all(|&(i, j)| s.0[i].dot(&s.0[j].complement()) == 0)
            })
            .count() as u64)
    }

    /// The monomial contributed by `s`, prefactor `Π x_l^{-a_l}` included.
    pub fn summand(&self, a: &[i64], s: &GccTuple) -> Monomial {
        let weights: Vec<u32> = s.0.iter().map(BitSeq::weight).collect();
        let lens: Vec<u32> = a.iter().map(|&x| pos(x)).collect();
        Monomial::new(self.summand_exponents(a, &lens, &weights))
    }

    fn summand_exponents(&self, a: &[i64], lens: &[u32], weights: &[u32]) -> Vec<Exp> {
        let (m, n) = (self.matrix.m(), self.matrix.n());
        let mut e: Vec<i64> = (0..m).map(|l| if l < n { -a[l] } else { 0 }).collect();
        let s_w = |v: usize| if v < n { i64::from(weights[v]) } else { 0 };
        let sbar_w = |v: usize| if v < n { i64::from(lens[v] - weights[v]) } else { 0 };
        for (i, j) in self.matrix.qb_tilde().edges() {
            e[i] += self.matrix.b(i, j) * sbar_w(j);
            e[j] += -self.matrix.b(j, i) * s_w(i);
        }
        e.into_iter().map(exp).collect()
    }

    fn sum_over(&self, a: &[i64], gcc_only: bool) -> Result<Laurent, ElementsError> {
        let layout = self.layout(a)?;
        let qb: Vec<_> = self.matrix.qb().edges().collect();
        // Summands depend only on the weights |s_i|; tally those first.
        let mut tally: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        for c in 0..1u64 << layout.total {
            let s = layout.tuple(c);
            if gcc_only && !qb.iter().all(|&(i, j)| s.0[i].dot(&s.0[j].complement()) == 0) {
                continue;
            }
            *tally.entry(s.0.iter().map(BitSeq::weight).collect()).or_default() += 1;
        }
        let mut out = Laurent::zero(self.matrix.m());
        for (w, count) in tally {
            let e = self.summand_exponents(a, &layout.lens, &w);
            out.add_term(Monomial::new(e), BigInt::from(count));
        }
        Ok(out)
    }

    /// `x~[a]`
    pub fn xtilde(&self, a: &[i64]) -> Result<Laurent, ElementsError> {
        self.sum_over(a, true)
    }

    /// `z[a]` as the sum over all of `S_all(a)`.
    pub fn z_by_enumeration(&self, a: &[i64]) -> Result<Laurent, ElementsError> {
        self.sum_over(a, false)
    }

    /// `z[a] = Π x_i^{<-a_i>}`, where `x^{<r>}` is `x^r` for `r >= 0` and
    /// `(x')^{-r}` otherwise.
    pub fn z(&self, a: &[i64]) -> Result<Laurent, ElementsError> {
        let (m, n) = (self.matrix.m(), self.matrix.n());
        if a.len() != n {
            return Err(ElementsError::LengthMismatch { expected: n, got: a.len() });
        }
        let mut mono = vec![0 as Exp; m];
        let mut out = Laurent::one(m);
        for (i, &ai) in a.iter().enumerate() {
            if ai <= 0 {
                mono[i] = exp(-ai);
            } else {
                out = out.checked_mul(&self.matrix.adjacent_variable(i).checked_pow(pos(ai))?)?;
            }
        }
        Ok(out.mul_monomial(&Monomial::new(mono))?)
    }

    /// The simplified formula for `a ∈ {0,1}^n`:
    /// `Π x_i^{-a_i} Σ_{s ∈ S} Π_i x_i^{Σ_j (a_j - s_j)[b_ij]_+ + s_j [-b_ij]_+}`
    /// over `s ≤ a` with `(s_i, a_j - s_j) ≠ (1, 1)` on every arrow of `Q_B`.
    pub fn xtilde_01(&self, a: &[i64]) -> Result<Laurent, ElementsError> {
        let (m, n) = (self.matrix.m(), self.matrix.n());
        if a.len() != n {
            return Err(ElementsError::LengthMismatch { expected: n, got: a.len() });
        }
        if let Some(i) = a.iter().position(|&x| x != 0 && x != 1) {
            return Err(ElementsError::NotZeroOne { index: i + 1, value: a[i] });
        }
        let qb: Vec<_> = self.matrix.qb().edges().collect();
        let mut out = Laurent::zero(m);
        for mask in 0u32..1 << n {
            let s: Vec<i64> = (0..n).map(|i| i64::from((mask >> i) & 1)).collect();
            if (0..n).any(|i| s[i] > a[i]) {
                continue;
            }
            if qb.iter().any(|&(i, j)| s[i] == 1 && a[j] - s[j] == 1) {
                continue;
            }
            let e: Vec<Exp> = (0..m)
                .map(|i| {
                    let base = if i < n { -a[i] } else { 0 };
                    let sum: i64 = (0..n)
                        .map(|j| {
                            let b = self.matrix.get(i, j);
                            (a[j] - s[j]) * b.max(0) + s[j] * (-b).max(0)
                        })
                        .sum();
                    exp(base + sum)
                })
                .collect();
            out.add_term(Monomial::new(e), BigInt::from(1));
        }
        Ok(out)
    }

    /// Splits `a` along the weakly connected components of `Q_B`: one vector
    /// per component, carrying `a` on the component and zero elsewhere.
    pub fn factor_components(&self, a: &[i64]) -> Result<Vec<Vec<i64>>, ElementsError> {
        let n = self.matrix.n();
        if a.len() != n {
            return Err(ElementsError::LengthMismatch { expected: n, got: a.len() });
        }
        Ok(self
            .matrix
            .qb()
            .weak_components()
            .into_iter()
            .map(|comp| {
                let mut v = vec![0; n];
                for i in comp {
                    v[i] = a[i];
                }
                v
            })
            .collect())
    }
}

/// Layer decomposition of `a`: the exponent vector `([-a_i]_+)_i` of the
/// monomial factor, and the 0/1 layers `f_k(a_+)` for `k = 1..max a_i`,
/// where `f_k(a)_i = 1` iff `k <= a_i`.
pub fn factor_positive(a: &[i64]) -> (Vec<i64>, Vec<Vec<i64>>) {
    let mono = a.iter().map(|&x| (-x).max(0)).collect();
    let top = a.iter().copied().max().unwrap_or(0).max(0);
    let layers = (1..=top).map(|k| a.iter().map(|&x| i64::from(k <= x)).collect()).collect();
    (mono, layers)
}

/// `x~[a]` with the default enumeration cap.
pub fn xtilde(a: &[i64], matrix: &ExtendedMatrix) -> Result<Laurent, ElementsError> {
    Elements::new(matrix).xtilde(a)
}

/// `z[a]` by the product formula.
pub fn z_element(a: &[i64], matrix: &ExtendedMatrix) -> Result<Laurent, ElementsError> {
    Elements::new(matrix).z(a)
}

//! Expansion in the standard monomial basis `{z[b]}` of an acyclic seed.
//!
//! Variables are ordered by a topological order of `Q_B` (sources first) and
//! compared lexicographically with the first variable most significant. The
//! map `f` sends `a` to the exponent vector of the lowest mutable monomial of
//! `z[a]`; it is coordinatewise `Z≥0`-linear with
//!
//! ```text
//! f(e_k)  = −e_k + Σ_{k→i} |b_ik| e_i   if k has an incoming arrow
//! f(e_k)  = −e_k                          otherwise
//! f(−e_k) =  e_k
//! ```
//!
//! and is inverted by a triangular recursion along the topological order.
//! All vectors here use the original (unpermuted) indices.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::elements::{Elements, ElementsError};
use crate::exchange::{ExchangeError, ExtendedMatrix};
use crate::laurent::{Laurent, LaurentError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasisError {
    #[error("Q_B has a directed cycle; standard monomials need an acyclic seed")]
    NotAcyclic,
    #[error("not in the span: greedy expansion stopped after {iterations} steps with remainder {remainder}")]
    NotInSpan { iterations: usize, remainder: String },
    #[error(transparent)]
    Elements(#[from] ElementsError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Exchange(#[from] ExchangeError),
}

/// Which family the greedy expansion runs against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Standard,
    Xtilde,
}

/// `Σ u(b) · z[b]` (or `x~[b]`) with `u(b) ∈ ZP`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub family: Family,
    /// Topological order used for the lex order, most significant first.
    pub order: Vec<usize>,
    pub terms: BTreeMap<Vec<i64>, Laurent>,
}

impl Expansion {
    /// `Σ u(b) · z[b]`, recomputed from scratch.
    pub fn reassemble(&self, matrix: &ExtendedMatrix) -> Result<Laurent, BasisError> {
        let e = Elements::new(matrix);
        let mut out = Laurent::zero(matrix.m());
        for (b, u) in &self.terms {
            let basis = element(&e, self.family, b)?;
            out = out.checked_add(&u.checked_mul(&basis)?)?;
        }
        Ok(out)
    }

    /// Shape: `[{"b":[int,...],"coefficient":"<laurent>"}, ...]`, with `b`
    /// in ascending order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(b, u)| serde_json::json!({"b": b, "coefficient": u.to_string()}))
                .collect(),
        )
    }
}

fn element(e: &Elements<'_>, family: Family, b: &[i64]) -> Result<Laurent, ElementsError> {
    match family {
        Family::Standard => e.z(b),
        Family::Xtilde => e.xtilde(b),
    }
}

fn order_of(matrix: &ExtendedMatrix) -> Result<Vec<usize>, BasisError> {
    matrix.topological_order().map_err(|_| BasisError::NotAcyclic)
}

/// `(f(e_k), f(−e_k))` for each `k`.
pub fn lowest_map_images(matrix: &ExtendedMatrix) -> Result<Vec<(Vec<i64>, Vec<i64>)>, BasisError> {
    order_of(matrix)?;
    let n = matrix.n();
    let q = matrix.qb();
    Ok((0..n)
        .map(|k| {
            let mut plus = vec![0; n];
            plus[k] = -1;
            if q.in_degree(k) > 0 {
                for i in 0..n {
                    if q.has_edge(k, i) {
                        plus[i] += matrix.get(i, k).abs();
                    }
                }
            }
            let mut minus = vec![0; n];
            minus[k] = 1;
            (plus, minus)
        })
        .collect())
}

/// `f(b) = Σ |b_i| f(s(b_i) e_i)`.
pub fn lowest_map(matrix: &ExtendedMatrix, b: &[i64]) -> Result<Vec<i64>, BasisError> {
    let images = lowest_map_images(matrix)?;
    let n = matrix.n();
    let mut out = vec![0; n];
    for (i, &bi) in b.iter().enumerate() {
        let img = if bi >= 0 { &images[i].0 } else { &images[i].1 };
        for k in 0..n {
            out[k] += bi.abs() * img[k];
        }
    }
    Ok(out)
}

/// The unique `b` with `f(b) = c`:
/// `b_k = Σ_{i before k} |b_i| ⟨f(s(b_i) e_i), e_k⟩ − c_k` along the order.
pub fn invert_lowest(matrix: &ExtendedMatrix, c: &[i64]) -> Result<Vec<i64>, BasisError> {
    let order = order_of(matrix)?;
    let images = lowest_map_images(matrix)?;
    let mut b = vec![0i64; matrix.n()];
    for (pos, &k) in order.iter().enumerate() {
        let acc: i64 = order[..pos]
            .iter()
            .map(|&i| {
                let img = if b[i] >= 0 { &images[i].0 } else { &images[i].1 };
                b[i].abs() * img[k]
            })
            .sum();
        b[k] = acc - c[k];
    }
    Ok(b)
}

/// Greedy expansion of `p` in `{z[b]}` (or `{x~[b]}`): repeatedly take the
/// lowest mutable monomial of the remainder with its `ZP` coefficient `c`,
/// locate the `b` whose basis element has that lowest monomial, divide `c`
/// exactly by that element's lowest coefficient and subtract.
///
/// `cap` bounds the number of steps; `None` means ten times the number of
/// terms of `p`.
pub fn expand(p: &Laurent, matrix: &ExtendedMatrix, family: Family, cap: Option<usize>) -> Result<Expansion, BasisError> {
    let order = order_of(matrix)?;
    let e = Elements::new(matrix);
    let cap = cap.unwrap_or(10 * p.len().max(1));
    let mut rest = p.clone();
    let mut terms: BTreeMap<Vec<i64>, Laurent> = BTreeMap::new();
    let mut steps = 0;
    while !rest.is_zero() {
        if steps == cap {
            return Err(BasisError::NotInSpan { iterations: steps, remainder: rest.to_string() });
        }
        steps += 1;
        let (low, coeff) = rest.lowest_monomial(&order)?;
        let low: Vec<i64> = low.into_iter().map(i64::from).collect();
        let b = invert_lowest(matrix, &low)?;
        let basis = element(&e, family, &b)?;
        let (basis_low, basis_coeff) = basis.lowest_monomial(&order)?;
        debug_assert_eq!(basis_low.iter().map(|&x| i64::from(x)).collect::<Vec<_>>(), low);
        let u = coeff
            .exact_divide(&basis_coeff)?
            .ok_or_else(|| BasisError::NotInSpan { iterations: steps, remainder: rest.to_string() })?;
        rest = rest.checked_sub(&u.checked_mul(&basis)?)?;
        let slot = terms.entry(b.clone()).or_insert_with(|| Laurent::zero(matrix.m()));
        *slot = slot.checked_add(&u)?;
        if slot.is_zero() {
            terms.remove(&b);
        }
    }
    Ok(Expansion { family, order, terms })
}

/// Expansion in the standard monomial basis.
pub fn expand_standard(p: &Laurent, matrix: &ExtendedMatrix) -> Result<Expansion, BasisError> {
    expand(p, matrix, Family::Standard, None)
}

/// `z[a]` written in terms of the `x~[b]`.
pub fn express_z_in_xtilde(a: &[i64], matrix: &ExtendedMatrix) -> Result<Expansion, BasisError> {
    let z = Elements::new(matrix).z(a)?;
    expand(&z, matrix, Family::Xtilde, None)
}

/// `b ≺ a`: `b_i ≤ a_i` for all `i` and `Σ [b_i]_+ < Σ [a_i]_+`.
pub fn precedes(b: &[i64], a: &[i64]) -> bool {
    let pos = |v: &[i64]| v.iter().map(|&x| x.max(0)).sum::<i64>();
    b.iter().zip(a).all(|(x, y)| x <= y) && pos(b) < pos(a)
}

/// Coefficient 1 at `a`, every other support vector `≺ a`.
pub fn check_expansion_support(e: &Expansion, a: &[i64]) -> bool {
    e.terms.get(a).is_some_and(Laurent::is_one) && e.terms.keys().all(|b| b == a || precedes(b, a))
}

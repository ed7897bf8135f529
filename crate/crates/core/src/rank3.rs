//! Rank-3 skew-symmetric seeds with a cyclic principal part.
//!
//! `τ(B) = (|b_23|, |b_31|, |b_12|)`. The group Γ generated by
//!
//! ```text
//! μ_1: (x,y,z) ↦ (x, xz−y, z)   μ_2: (x,y,z) ↦ (x, y, xy−z)   μ_3: (x,y,z) ↦ (yz−x, y, z)
//! ```
//!
//! acts on triples; matrix mutation at vertex 1, 2, 3 acts on `τ` as
//! `μ_3`, `μ_1`, `μ_2` respectively. Generators here are 0-based: `gamma_mu(t, 0)`
//! is `μ_1`.
//!
//! In canonical form `B = [[0,a,−c],[−a,0,b],[c,−b,0]]` with `a ≥ b ≥ c`,
//! `τ(B) = (b,c,a)`, the grading is `deg x = (b,c,a)` and the witness is
//! `Y = x~[(1,0,1)] / x_2^b`, homogeneous of degree `ac − b − a`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::elements::{ElementsError, Elements};
use crate::exchange::{exp, ExchangeError, ExtendedMatrix};
use crate::laurent::{Laurent, LaurentError, Monomial};
use crate::upper::{check_ux_membership, MembershipReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Rank3Error {
    #[error("expected 3 mutable vertices, found {n}")]
    NotRankThree { n: usize },
    #[error("principal part is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("τ = {tau} lies in an acyclic mutation class")]
    Acyclic { tau: Rank3Triple },
    #[error("principal part is not cyclic (b12, b23, b31 must share a sign)")]
    NotCyclic,
    #[error("τ = {tau} is not the root of its orbit; mutate towards the root {root} first")]
    NotRoot { tau: Rank3Triple, root: Rank3Triple },
    #[error("B·G ≠ 0 for G = τ(B)")]
    NotGraded,
    #[error("cannot take the degree of 0")]
    ZeroPolynomial,
    #[error("not homogeneous: {first} has degree {first_degree}, {second} has degree {second_degree}")]
    Inhomogeneous { first: String, first_degree: i64, second: String, second_degree: i64 },
    #[error("audit failed at mutation word {word}: {reason}")]
    Audit { word: String, reason: String },
    #[error("integer overflow")]
    Overflow,
    #[error(transparent)]
    Exchange(#[from] ExchangeError),
    #[error(transparent)]
    Elements(#[from] ElementsError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// An integer triple; as `τ(B)` all entries are nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Rank3Triple(pub [i64; 3]);

impl Rank3Triple {
    pub fn new(x: i64, y: i64, z: i64) -> Self {
        Rank3Triple([x, y, z])
    }

    /// Coordinatewise `≤`.
    pub fn le(&self, other: &Rank3Triple) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Rank3Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

fn checked_gamma(t: Rank3Triple, i: usize) -> Option<Rank3Triple> {
    let [x, y, z] = t.0;
    let mut out = t.0;
    match i {
        0 => out[1] = x.checked_mul(z)?.checked_sub(y)?,
        1 => out[2] = x.checked_mul(y)?.checked_sub(z)?,
        2 => out[0] = y.checked_mul(z)?.checked_sub(x)?,
        _ => panic!("Γ generator index {i} out of range"),
    }
    Some(Rank3Triple(out))
}

/// `μ_{i+1}(t)`. Panics on `i > 2` or on overflow.
pub fn gamma_mu(t: Rank3Triple, i: usize) -> Rank3Triple {
    checked_gamma(t, i).expect("Γ action overflowed i64")
}

/// The Γ generator matching matrix mutation at 0-based vertex `k`.
pub fn generator_for_vertex(k: usize) -> usize {
    [2, 0, 1][k]
}

/// `a, b, c ≥ 2` and `abc + 4 ≥ a² + b² + c²`.
pub fn classify_nonacyclic(t: Rank3Triple) -> bool {
    let [a, b, c] = t.0.map(i128::from);
    a >= 2 && b >= 2 && c >= 2 && a * b * c + 4 >= a * a + b * b + c * c
}

/// The two sides of the Markov-type inequality, `(abc + 4, a² + b² + c²)`.
pub fn classify_sides(t: Rank3Triple) -> (i128, i128) {
    let [a, b, c] = t.0.map(i128::from);
    (a * b * c + 4, a * a + b * b + c * c)
}

/// `t ≤ μ_i(t)` for every `i`.
pub fn is_m1(t: Rank3Triple) -> bool {
    (0..3).all(|i| checked_gamma(t, i).map_or(true, |s| t.le(&s)))
}

/// Descends to the root of the orbit, at each step applying the strictly
/// decreasing generator with the smallest image (ties to the smallest index).
pub fn find_root(t: Rank3Triple) -> Result<Rank3Triple, Rank3Error> {
    if !classify_nonacyclic(t) {
        return Err(Rank3Error::Acyclic { tau: t });
    }
    let mut cur = t;
    loop {
        let step = (0..3)
            .filter_map(|i| checked_gamma(cur, i))
            .filter(|s| s.le(&cur) && *s != cur)
            .min_by_key(Rank3Triple::sum);
        match step {
            Some(s) => cur = s,
            None => return Ok(cur),
        }
    }
}

/// `τ(B) = (|b_23|, |b_31|, |b_12|)`.
pub fn tau(matrix: &ExtendedMatrix) -> Result<Rank3Triple, Rank3Error> {
    if matrix.n() != 3 {
        return Err(Rank3Error::NotRankThree { n: matrix.n() });
    }
    if !matrix.is_skew_symmetric() {
        return Err(Rank3Error::NotSkewSymmetric);
    }
    Ok(Rank3Triple::new(matrix.get(1, 2).abs(), matrix.get(2, 0).abs(), matrix.get(0, 1).abs()))
}

fn is_cyclic(matrix: &ExtendedMatrix) -> bool {
    let s = [matrix.get(0, 1), matrix.get(1, 2), matrix.get(2, 0)];
    s.iter().all(|&x| x > 0) || s.iter().all(|&x| x < 0)
}

/// `G = τ(B)^T` padded with zeros for frozen variables; checks `B·G = 0`.
pub fn grading_vector(matrix: &ExtendedMatrix) -> Result<Vec<i64>, Rank3Error> {
    let t = tau(matrix)?;
    let g = t.0;
    for i in 0..3 {
        let row: i64 = (0..3).map(|j| matrix.get(i, j) * g[j]).sum();
        if row != 0 {
            return Err(Rank3Error::NotGraded);
        }
    }
    let mut out = g.to_vec();
    out.resize(matrix.m(), 0);
    Ok(out)
}

fn mono_degree(m: &Monomial, grading: &[i64]) -> i64 {
    m.exponents().iter().zip(grading).map(|(&e, &g)| i64::from(e) * g).sum()
}

/// The common degree of all monomials of `p`.
pub fn degree_of(p: &Laurent, grading: &[i64]) -> Result<i64, Rank3Error> {
    let mut terms = p.terms();
    let (first, _) = terms.next().ok_or(Rank3Error::ZeroPolynomial)?;
    let d = mono_degree(first, grading);
    for (m, _) in terms {
        let e = mono_degree(m, grading);
        if e != d {
            let show = |x: &Monomial| Laurent::term(p.nvars(), x.clone(), 1).to_string();
            return Err(Rank3Error::Inhomogeneous { first: show(first), first_degree: d, second: show(m), second_degree: e });
        }
    }
    Ok(d)
}

/// A seed relabeled into canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalSeed {
    pub matrix: ExtendedMatrix,
    /// New mutable index `p` is old index `permutation[p]` (0-based).
    pub permutation: [usize; 3],
    /// Whether the whole matrix was negated to make `b_12 > 0`. The
    /// exchange binomials, hence the cluster algebra, are unchanged.
    pub negated: bool,
    /// `(a, b, c)` with `b_12 = a ≥ b_23 = b ≥ b_31 = c`.
    pub params: (i64, i64, i64),
}

/// Lex-smallest relabeling (then sign) giving
/// `b_12 = a ≥ b_23 = b ≥ b_31 = c > 0`.
pub fn canonicalize(matrix: &ExtendedMatrix) -> Result<CanonicalSeed, Rank3Error> {
    let t = tau(matrix)?;
    if !is_cyclic(matrix) {
        return Err(Rank3Error::NotCyclic);
    }
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for perm in PERMS {
        let relabeled = matrix.relabel(&perm);
        let negated = relabeled.get(0, 1) < 0;
        let canon = if negated { negate(&relabeled) } else { relabeled };
        let (a, b, c) = (canon.get(0, 1), canon.get(1, 2), canon.get(2, 0));
        if a >= b && b >= c && c > 0 {
            return Ok(CanonicalSeed { matrix: canon, permutation: perm, negated, params: (a, b, c) });
        }
    }
    unreachable!("some relabeling of a cyclic triple {t} is sorted")
}

fn negate(matrix: &ExtendedMatrix) -> ExtendedMatrix {
    let rows = matrix.rows().into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect();
    ExtendedMatrix::new(matrix.m(), matrix.n(), rows).expect("negation preserves validity")
}

/// `α_i^± = Π_{j ≥ 4} x_j^{[±b_ji]_+}` as monomials over all `m` variables.
pub fn alphas(matrix: &ExtendedMatrix) -> [(Monomial, Monomial); 3] {
    let m = matrix.m();
    let make = |i: usize, sign: i64| {
        Monomial::new((0..m).map(|j| if j < 3 { 0 } else { exp((sign * matrix.get(j, i)).max(0)) }).collect())
    };
    [0, 1, 2].map(|i| (make(i, 1), make(i, -1)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditRow {
    /// 1-based mutation indices, in canonical labels.
    pub mutation_word: Vec<usize>,
    /// `τ` of the matrix after the last mutation.
    pub tau_triple: Rank3Triple,
    pub new_variable_degree: i64,
    /// Whether the variable was expanded as a Laurent polynomial and its
    /// homogeneity checked directly.
    pub expanded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Audit {
    pub depth: usize,
    /// `ac − b − a`.
    pub bound: i64,
    pub initial_degrees: [i64; 3],
    pub rows: Vec<AuditRow>,
    /// Smallest degree over the non-exceptional new variables.
    pub min_other_degree: Option<i64>,
    /// Exceptional variables met, with their degrees.
    pub exceptions: Vec<(String, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub canonical: CanonicalSeed,
    /// `Y` in the canonical labels.
    pub y: Laurent,
    pub degree: i64,
    pub membership: MembershipReport,
    /// The three identities expressing `Y` as a Laurent polynomial in the
    /// clusters through `z_1`, `z_2`, `z_3`.
    pub rewritten_forms: [bool; 3],
    pub depth_audit: Option<Audit>,
}

impl WitnessReport {
    pub fn to_json(&self) -> serde_json::Value {
        let (a, b, c) = self.canonical.params;
        serde_json::json!({
            "params": {"a": a, "b": b, "c": c},
            "permutation": self.canonical.permutation.map(|p| p + 1),
            "negated": self.canonical.negated,
            "y": self.y.to_fraction_string(),
            "degree": self.degree,
            "membership": self.membership.to_json(),
            "rewritten_forms": self.rewritten_forms,
            "depth_audit": self.depth_audit,
        })
    }
}

fn require_root(matrix: &ExtendedMatrix) -> Result<CanonicalSeed, Rank3Error> {
    let t = tau(matrix)?;
    if !classify_nonacyclic(t) {
        return Err(Rank3Error::Acyclic { tau: t });
    }
    if !is_m1(t) {
        return Err(Rank3Error::NotRoot { tau: t, root: find_root(t)? });
    }
    canonicalize(matrix)
}

/// The closed form of `Y` over the canonical seed.
pub fn y_closed_form(canon: &CanonicalSeed) -> Result<Laurent, Rank3Error> {
    let m = canon.matrix.m();
    let (a, b, c) = canon.params;
    let [(a1p, a1m), _, (a3p, a3m)] = alphas(&canon.matrix);
    let x = |e: [i64; 3]| {
        let mut v = vec![0; m];
        for i in 0..3 {
            v[i] = exp(e[i]);
        }
        Monomial::new(v)
    };
    let term = |parts: &[&Monomial]| -> Result<Laurent, LaurentError> {
        let mut acc = Monomial::one(m);
        for p in parts {
            acc = acc.checked_mul(p)?;
        }
        Ok(Laurent::term(m, acc, 1))
    };
    let num = term(&[&a1m, &a3m, &x([c, a - b, 0])])?
        .checked_add(&term(&[&a1m, &a3p, &x([0, a, 0])])?)?
        .checked_add(&term(&[&a1p, &a3p, &x([0, 0, c])])?)?;
    Ok(num.mul_monomial(&x([-1, 0, -1]))?)
}

fn check_rewritten_forms(canon: &CanonicalSeed, y: &Laurent) -> Result<[bool; 3], Rank3Error> {
    let mat = &canon.matrix;
    let m = mat.m();
    let (a, b, c) = canon.params;
    let [(a1p, a1m), (a2p, a2m), (a3p, a3m)] = alphas(mat).map(|(p, q)| (Laurent::term(m, p, 1), Laurent::term(m, q, 1)));
    let xs: Vec<Laurent> = (0..3).map(|i| Laurent::var(m, i)).collect();
    let zs: Vec<Laurent> = (0..3).map(|i| mat.adjacent_variable(i)).collect();
    let p = |l: &Laurent, e: i64| l.checked_pow(u32::try_from(e).expect("nonnegative exponent"));

    let n1 = a1m.checked_mul(&p(&xs[1], a)?)?.checked_add(&a1p.checked_mul(&p(&xs[2], c)?)?)?;
    let lhs1 = y.checked_mul(&p(&zs[0], c - 1)?)?.checked_mul(&xs[2])?;
    let rhs1 = a3p
        .checked_mul(&p(&zs[0], c)?)?
        .checked_add(&a1m.checked_mul(&a3m)?.checked_mul(&p(&n1, c - 1)?)?.checked_mul(&p(&xs[1], a - b)?)?)?;

    let n2 = a2p.checked_mul(&p(&xs[0], a)?)?.checked_add(&a2m.checked_mul(&p(&xs[2], b)?)?)?;
    let lhs2 = y.checked_mul(&xs[0])?.checked_mul(&p(&zs[1], a)?)?.checked_mul(&xs[2])?;
    let rhs2 = a1m
        .checked_mul(&a3m)?
        .checked_mul(&p(&xs[0], c)?)?
        .checked_mul(&p(&n2, a - b)?)?
        .checked_mul(&p(&zs[1], b)?)?
        .checked_add(&a1p.checked_mul(&a3p)?.checked_mul(&p(&zs[1], a)?)?.checked_mul(&p(&xs[2], c)?)?)?
        .checked_add(&a1m.checked_mul(&a3p)?.checked_mul(&p(&n2, a)?)?)?;

    let n3 = a3m.checked_mul(&p(&xs[0], c)?)?.checked_add(&a3p.checked_mul(&p(&xs[1], b)?)?)?;
    let lhs3 = y.checked_mul(&xs[0])?.checked_mul(&p(&zs[2], c - 1)?)?;
    let rhs3 = a1m
        .checked_mul(&p(&xs[1], a - b)?)?
        .checked_mul(&p(&zs[2], c)?)?
        .checked_add(&a1p.checked_mul(&a3p)?.checked_mul(&p(&n3, c - 1)?)?)?;

    Ok([lhs1 == rhs1, lhs2 == rhs2, lhs3 == rhs3])
}

/// Builds `Y` for a root seed and checks it from every angle available.
pub fn construct_y(matrix: &ExtendedMatrix) -> Result<WitnessReport, Rank3Error> {
    let canon = require_root(matrix)?;
    let (a, b, c) = canon.params;
    let m = canon.matrix.m();
    let y = y_closed_form(&canon)?;
    let via_xtilde = Elements::new(&canon.matrix)
        .xtilde(&[1, 0, 1])?
        .mul_monomial(&Monomial::var(m, 1, -exp(b)))?;
    assert_eq!(y, via_xtilde, "closed form of Y disagrees with x~[(1,0,1)]/x2^b");
    let grading = grading_vector(&canon.matrix)?;
    let degree = degree_of(&y, &grading)?;
    assert_eq!(degree, a * c - b - a);
    let membership = check_ux_membership(&y, &canon.matrix)?;
    let rewritten_forms = check_rewritten_forms(&canon, &y)?;
    Ok(WitnessReport { canonical: canon, y, degree, membership, rewritten_forms, depth_audit: None })
}

#[derive(Debug, Clone)]
struct Var {
    /// Word that created the variable; empty for initial ones.
    word: Vec<usize>,
    degree: i64,
    expr: Option<Laurent>,
}

#[derive(Debug, Clone)]
struct Node {
    matrix: ExtendedMatrix,
    vars: [Var; 3],
    word: Vec<usize>,
}

fn word_string(w: &[usize]) -> String {
    let parts: Vec<String> = w.iter().map(|k| (k + 1).to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Walks all mutation words without immediate repeats up to `depth`,
/// starting from the canonical root seed. Degrees are tracked exactly;
/// variables created by words of length at most `expand_depth` are also
/// expanded as Laurent polynomials and their homogeneity checked.
pub fn degree_audit(matrix: &ExtendedMatrix, depth: usize, expand_depth: usize) -> Result<Audit, Rank3Error> {
    let canon = require_root(matrix)?;
    let (a, b, c) = canon.params;
    let bound = a * c - b - a;
    let m = canon.matrix.m();
    let g0 = grading_vector(&canon.matrix)?;
    let init = |i: usize| Var { word: Vec::new(), degree: g0[i], expr: Some(Laurent::var(m, i)) };
    let root = Node { matrix: canon.matrix.clone(), vars: [init(0), init(1), init(2)], word: Vec::new() };

    let mut rows = Vec::new();
    let mut exceptions = Vec::new();
    let mut min_other: Option<i64> = None;
    let mut seen: HashSet<(Vec<Vec<i64>>, Vec<Vec<usize>>)> = HashSet::new();
    let mut queue = VecDeque::from([root]);
    while let Some(node) = queue.pop_front() {
        if node.word.len() == depth {
            continue;
        }
        for k in 0..3 {
            if node.word.last() == Some(&k) {
                continue;
            }
            let mut word = node.word.clone();
            word.push(k);
            let fail = |reason: String| Rank3Error::Audit { word: word_string(&word), reason };

            let next = node.matrix.mutate(k)?;
            let mut var_degs = [0i64; 3];
            for (i, v) in node.vars.iter().enumerate() {
                var_degs[i] = v.degree;
            }
            let (pos_deg, neg_deg) = (0..3).filter(|&i| i != k).fold((0i64, 0i64), |(p, q), i| {
                let bik = node.matrix.get(i, k);
                (p + bik.max(0) * var_degs[i], q + (-bik).max(0) * var_degs[i])
            });
            if pos_deg != neg_deg {
                return Err(fail(format!("exchange relation not homogeneous ({pos_deg} vs {neg_deg})")));
            }
            let degree = pos_deg - var_degs[k];

            let expr = match (&node.vars.iter().all(|v| v.expr.is_some()), word.len() <= expand_depth) {
                (true, true) => {
                    let cluster: Vec<Laurent> = node.vars.iter().map(|v| v.expr.clone().unwrap()).collect();
                    Some(exchange_expr(&node.matrix, &cluster, k).map_err(|e| fail(e.to_string()))?)
                }
                _ => None,
            };
            if let Some(e) = &expr {
                let d = degree_of(e, &g0).map_err(|e| fail(e.to_string()))?;
                if d != degree {
                    return Err(fail(format!("expanded degree {d} differs from tracked degree {degree}")));
                }
            }

            let t_old = tau(&node.matrix)?;
            let t_new = tau(&next)?;
            if !t_old.le(&t_new) {
                return Err(fail(format!("τ decreased from {t_old} to {t_new}")));
            }
            let mut vars = node.vars.clone();
            vars[k] = Var { word: word.clone(), degree, expr };
            let degs = [vars[0].degree, vars[1].degree, vars[2].degree];
            if degs != t_new.0 {
                return Err(fail(format!("grading {degs:?} differs from τ = {t_new}")));
            }

            if word == [2] {
                exceptions.push(("z3".to_string(), degree));
            } else {
                if degree <= bound {
                    return Err(fail(format!("degree {degree} does not exceed {bound}")));
                }
                min_other = Some(min_other.map_or(degree, |x| x.min(degree)));
            }
            rows.push(AuditRow {
                mutation_word: word.iter().map(|k| k + 1).collect(),
                tau_triple: t_new,
                new_variable_degree: degree,
                expanded: vars[k].expr.is_some(),
            });

            let mut ids: Vec<Vec<usize>> = vars.iter().map(|v| v.word.clone()).collect();
            ids.sort();
            if seen.insert((next.rows(), ids)) {
                queue.push_back(Node { matrix: next, vars, word });
            }
        }
    }
    Ok(Audit {
        depth,
        bound,
        initial_degrees: [g0[0], g0[1], g0[2]],
        rows,
        min_other_degree: min_other,
        exceptions,
    })
}

fn exchange_expr(matrix: &ExtendedMatrix, cluster: &[Laurent], k: usize) -> Result<Laurent, Rank3Error> {
    let m = matrix.m();
    let side = |sign: i64| -> Result<Laurent, Rank3Error> {
        let frozen = Monomial::new((0..m).map(|j| if j < 3 { 0 } else { exp((sign * matrix.get(j, k)).max(0)) }).collect());
        let mut acc = Laurent::term(m, frozen, 1);
        for (i, x) in cluster.iter().enumerate() {
            let e = (sign * matrix.get(i, k)).max(0);
            if e > 0 {
                acc = acc.checked_mul(&x.checked_pow(u32::try_from(e).map_err(|_| Rank3Error::Overflow)?)?)?;
            }
        }
        Ok(acc)
    };
    let num = side(1)?.checked_add(&side(-1)?)?;
    num.exact_divide(&cluster[k])?.ok_or(Rank3Error::Exchange(ExchangeError::NonLaurent { k: k + 1 }))
}

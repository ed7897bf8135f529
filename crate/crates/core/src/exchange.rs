//! Extended exchange matrices, seed mutation and the digraphs `Q_B`, `Q_B~`.
//!
//! All indices in this module are 0-based. Rendered messages use 1-based
//! labels to match the variable names `x1..xm`.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::{Exp, Laurent, LaurentError, Monomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExchangeError {
    #[error("malformed matrix: {0}")]
    Shape(String),
    #[error("principal part not sign-skew-symmetric at ({i},{j}): b_ij = {bij}, b_ji = {bji}")]
    NotSignSkewSymmetric { i: usize, j: usize, bij: i64, bji: i64 },
    #[error("mutation at {k} is ill-defined: result not sign-skew-symmetric at ({i},{j})")]
    IllDefinedMutation { k: usize, i: usize, j: usize },
    #[error("direction {k} out of range 1..={n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("Q_B has an oriented cycle")]
    NotAcyclic,
    #[error("matrix entry overflow")]
    Overflow,
    #[error("internal: exchange polynomial at {k} not divisible by the cluster variable")]
    NonLaurent { k: usize },
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// A simple digraph on vertices `0..vertices`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let edges = edges.into_iter().filter(|(i, j)| i != j).collect();
        Digraph { vertices, edges }
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i, j))
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(_, j)| j == v).count()
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        !self.edges.iter().any(|&(i, j)| i == v || j == v)
    }

    /// Kahn's algorithm, always emitting the smallest available vertex.
    /// `None` when there is a directed cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.vertices];
        for &(_, j) in &self.edges {
            indeg[j] += 1;
        }
        let mut ready: BinaryHeap<Reverse<usize>> =
            (0..self.vertices).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(self.vertices);
        while let Some(Reverse(v)) = ready.pop() {
            order.push(v);
            for &(_, j) in self.edges.range((v, 0)..(v + 1, 0)) {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    ready.push(Reverse(j));
                }
            }
        }
        (order.len() == self.vertices).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Weakly connected components, each sorted, ordered by smallest vertex.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], v: usize) -> usize {
            let mut r = v;
            while p[r] != r {
                r = p[r];
            }
            p[v] = r;
            r
        }
        for &(i, j) in &self.edges {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut root_slot = vec![usize::MAX; self.vertices];
        for v in 0..self.vertices {
            let r = find(&mut parent, v);
            if root_slot[r] == usize::MAX {
                root_slot[r] = comps.len();
                comps.push(Vec::new());
            }
            comps[root_slot[r]].push(v);
        }
        comps
    }
}

impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, (i, j)) in self.edges.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "({},{})", i + 1, j + 1)?;
        }
        f.write_str("}")
    }
}

/// An `m x n` integer matrix whose top `n x n` block is sign-skew-symmetric.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtendedMatrix {
    m: usize,
    n: usize,
    entries: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    m: usize,
    n: usize,
    entries: Vec<Vec<i64>>,
}

impl Serialize for ExtendedMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixRepr { m: self.m, n: self.n, entries: self.rows() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExtendedMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = MatrixRepr::deserialize(d)?;
        ExtendedMatrix::new(r.m, r.n, r.entries).map_err(serde::de::Error::custom)
    }
}

fn sign(x: i64) -> i64 {
    x.signum()
}

impl ExtendedMatrix {
    /// Validates shape, `m >= n >= 1`, and sign-skew-symmetry of the
    /// principal part.
    pub fn new(m: usize, n: usize, rows: Vec<Vec<i64>>) -> Result<Self, ExchangeError> {
        if n == 0 || m < n {
            return Err(ExchangeError::Shape(format!("need m >= n >= 1, got m = {m}, n = {n}")));
        }
        if rows.len() != m {
            return Err(ExchangeError::Shape(format!("expected {m} rows, got {}", rows.len())));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(ExchangeError::Shape(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
        }
        let mat = ExtendedMatrix { m, n, entries: rows.into_iter().flatten().collect() };
        if let Some((i, j)) = mat.sign_skew_violation() {
            return Err(ExchangeError::NotSignSkewSymmetric {
                i: i + 1,
                j: j + 1,
                bij: mat.get(i, j),
                bji: mat.get(j, i),
            });
        }
        Ok(mat)
    }

    /// Infers `m` and `n` from the row list.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self, ExchangeError> {
        let n = rows.first().map_or(0, Vec::len);
        Self::new(rows.len(), n, rows)
    }

    pub fn from_json(s: &str) -> Result<Self, ExchangeError> {
        let r: MatrixRepr =
            serde_json::from_str(s).map_err(|e| ExchangeError::Shape(e.to_string()))?;
        Self::new(r.m, r.n, r.entries)
    }

    /// The Markov-type matrix `M(a)` with cyclic entries `±a`.
    pub fn markov(a: i64) -> Self {
        Self::from_rows(vec![vec![0, a, -a], vec![-a, 0, a], vec![a, -a, 0]]).unwrap()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn frozen(&self) -> usize {
        self.m - self.n
    }

    /// `b_ij` for `i < m`, `j < n`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    /// Entry of the square `m x m` extension: `b_ij = -b_ji` when only `i`
    /// is mutable, zero when both are frozen.
    pub fn b(&self, i: usize, j: usize) -> i64 {
        if j < self.n {
            self.get(i, j)
        } else if i < self.n {
            -self.get(j, i)
        } else {
            0
        }
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n).map(<[i64]>::to_vec).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.m).map(|i| self.get(i, j)).collect()
    }

    fn sign_skew_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            if self.get(i, i) != 0 {
                return Some((i, i));
            }
            for j in i + 1..self.n {
                let (x, y) = (self.get(i, j), self.get(j, i));
                let ok = (x == 0 && y == 0) || sign(x) == -sign(y) && x != 0 && y != 0;
                if !ok {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == -self.get(j, i)))
    }

    /// Matrix mutation in direction `k`.
    pub fn mutate(&self, k: usize) -> Result<ExtendedMatrix, ExchangeError> {
        if k >= self.n {
            return Err(ExchangeError::IndexOutOfRange { k: k + 1, n: self.n });
        }
        let mut entries = Vec::with_capacity(self.entries.len());
        for i in 0..self.m {
            for j in 0..self.n {
                let bij = self.get(i, j);
                let v = if i == k || j == k {
                    -bij
                } else {
                    let (bik, bkj) = (self.get(i, k), self.get(k, j));
                    let t = bik
                        .abs()
                        .checked_mul(bkj)
                        .and_then(|x| x.checked_add(bik.checked_mul(bkj.abs())?))
                        .ok_or(ExchangeError::Overflow)?;
                    bij.checked_add(t / 2).ok_or(ExchangeError::Overflow)?
                };
                entries.push(v);
            }
        }
        let out = ExtendedMatrix { m: self.m, n: self.n, entries };
        match out.sign_skew_violation() {
            Some((i, j)) => Err(ExchangeError::IllDefinedMutation { k: k + 1, i: i + 1, j: j + 1 }),
            None => Ok(out),
        }
    }

    /// `Q_B`: edge `(i, j)` iff `b_ij > 0`, on the mutable vertices.
    pub fn qb(&self) -> Digraph {
        let n = self.n;
        Digraph::new(n, (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| self.b(i, j) > 0))
    }

    /// `Q_B~`: edge `(i, j)` iff `b_ij > 0` in the square extension.
    pub fn qb_tilde(&self) -> Digraph {
        let m = self.m;
        Digraph::new(m, (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).filter(|&(i, j)| self.b(i, j) > 0))
    }

    pub fn is_acyclic(&self) -> bool {
        self.qb().is_acyclic()
    }

    /// A vertex order in which every edge of `Q_B` goes forward; ties are
    /// broken by smallest index.
    pub fn topological_order(&self) -> Result<Vec<usize>, ExchangeError> {
        self.qb().topological_order().ok_or(ExchangeError::NotAcyclic)
    }

    /// Relabels mutable indices so that new index `p` is old index `order[p]`.
    /// Frozen rows are untouched.
    pub fn relabel(&self, order: &[usize]) -> ExtendedMatrix {
        assert_eq!(order.len(), self.n);
        let mut rows = Vec::with_capacity(self.m);
        for p in 0..self.m {
            let i = if p < self.n { order[p] } else { p };
            rows.push(order.iter().map(|&j| self.get(i, j)).collect());
        }
        ExtendedMatrix::new(self.m, self.n, rows).expect("relabeling preserves validity")
    }

    /// No two columns proportional with a ratio of two odd integers.
    pub fn is_coprime(&self) -> bool {
        for j in 0..self.n {
            for k in j + 1..self.n {
                if odd_proportional(&self.column(j), &self.column(k)) {
                    return false;
                }
            }
        }
        true
    }

    /// Rank over the rationals (fraction-free elimination).
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> =
            self.rows().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        let (rows, cols) = (self.m, self.n);
        let mut rank = 0;
        let mut prev = BigInt::from(1);
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
            a.swap(rank, p);
            for r in rank + 1..rows {
                for cc in c + 1..cols {
                    let v = (&a[r][cc] * &a[rank][c] - &a[r][c] * &a[rank][cc]) / &prev;
                    a[r][cc] = v;
                }
                a[r][c] = BigInt::zero();
            }
            prev = a[rank][c].clone();
            rank += 1;
        }
        rank
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.n
    }

    /// The frozen-variable monomials `y_j = Π_{i>n} x_i^{b_ij}`.
    pub fn coefficient_tuple(&self) -> Vec<Laurent> {
        (0..self.n)
            .map(|j| {
                let mut e = vec![0 as Exp; self.m];
                for (i, slot) in e.iter_mut().enumerate().skip(self.n) {
                    *slot = exp(self.get(i, j));
                }
                Laurent::monomial(e)
            })
            .collect()
    }

    /// The two exchange monomials `Π x_i^{[b_ik]_+}` and `Π x_i^{[-b_ik]_+}`
    /// over all `m` initial variables.
    pub fn exchange_monomials(&self, k: usize) -> (Monomial, Monomial) {
        let pos = (0..self.m).map(|i| exp(self.get(i, k).max(0))).collect();
        let neg = (0..self.m).map(|i| exp((-self.get(i, k)).max(0))).collect();
        (Monomial::new(pos), Monomial::new(neg))
    }

    /// The one-step variable `x'_k` in the initial variables.
    pub fn adjacent_variable(&self, k: usize) -> Laurent {
        let (pos, neg) = self.exchange_monomials(k);
        let num = Laurent::term(self.m, pos, 1) + Laurent::term(self.m, neg, 1);
        num.mul_monomial(&Monomial::var(self.m, k, -1)).expect("exponent overflow")
    }
}

pub(crate) fn exp(x: i64) -> Exp {
    Exp::try_from(x).expect("exponent out of range")
}

fn odd_proportional(u: &[i64], v: &[i64]) -> bool {
    let uz = u.iter().all(|&x| x == 0);
    let vz = v.iter().all(|&x| x == 0);
    if uz || vz {
        // Two zero columns are proportional with any ratio, 1/1 included.
        return uz && vz;
    }
    // Find p/q with q*u == p*v.
    let idx = u.iter().position(|&x| x != 0).unwrap();
    if v[idx] == 0 {
        return false;
    }
    let (p, q) = (u[idx] as i128, v[idx] as i128);
    if !u.iter().zip(v).all(|(&a, &b)| (a as i128) * q == (b as i128) * p) {
        return false;
    }
    let g = num_integer::gcd(p, q);
    (p / g) % 2 != 0 && (q / g) % 2 != 0
}

impl fmt::Display for ExtendedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// A seed: an exchange matrix with its cluster expressed in the initial
/// variables `x1..xm`.
#[derive(Debug, Clone)]
pub struct Seed {
    matrix: ExtendedMatrix,
    cluster: Vec<Laurent>,
    history: Vec<usize>,
}

impl Seed {
    pub fn initial(matrix: ExtendedMatrix) -> Self {
        let m = matrix.m();
        let cluster = (0..matrix.n()).map(|i| Laurent::var(m, i)).collect();
        Seed { matrix, cluster, history: Vec::new() }
    }

    pub fn matrix(&self) -> &ExtendedMatrix {
        &self.matrix
    }

    pub fn cluster(&self) -> &[Laurent] {
        &self.cluster
    }

    /// Mutation directions applied so far (0-based).
    pub fn history(&self) -> &[usize] {
        &self.history
    }

    /// Seed mutation in direction `k`.
    pub fn mutate(&self, k: usize) -> Result<Seed, ExchangeError> {
        let matrix = self.matrix.mutate(k)?;
        let new_var = self.exchange(k)?;
        let mut cluster = self.cluster.clone();
        cluster[k] = new_var;
        let mut history = self.history.clone();
        history.push(k);
        Ok(Seed { matrix, cluster, history })
    }

    /// The exchange relation value `x'_k` without building the new seed.
    pub fn exchange(&self, k: usize) -> Result<Laurent, ExchangeError> {
        let (n, m) = (self.matrix.n(), self.matrix.m());
        if k >= n {
            return Err(ExchangeError::IndexOutOfRange { k: k + 1, n });
        }
        let mut pos = Laurent::one(m);
        let mut neg = Laurent::one(m);
        let mut frozen_pos = vec![0 as Exp; m];
        let mut frozen_neg = vec![0 as Exp; m];
        for i in 0..m {
            let b = self.matrix.get(i, k);
            if b == 0 {
                continue;
            }
            let e = b.unsigned_abs() as u32;
            if i < n {
                let f = self.cluster[i].checked_pow(e)?;
                if b > 0 {
                    pos = pos.checked_mul(&f)?;
                } else {
                    neg = neg.checked_mul(&f)?;
                }
            } else if b > 0 {
                frozen_pos[i] = exp(b);
            } else {
                frozen_neg[i] = exp(-b);
            }
        }
        let num = pos.mul_monomial(&Monomial::new(frozen_pos))?
            .checked_add(&neg.mul_monomial(&Monomial::new(frozen_neg))?)?;
        num.exact_divide(&self.cluster[k])?.ok_or(ExchangeError::NonLaurent { k: k + 1 })
    }

    /// Applies a sequence of mutations.
    pub fn mutate_sequence(&self, ks: &[usize]) -> Result<Seed, ExchangeError> {
        ks.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }
}

/// Equality ignores history and the order of cluster variables.
impl PartialEq for Seed {
    fn eq(&self, other: &Self) -> bool {
        if self.matrix != other.matrix {
            return false;
        }
        let mut a = self.cluster.clone();
        let mut b = other.cluster.clone();
        a.sort();
        b.sort();
        a == b
    }
}

impl Eq for Seed {}

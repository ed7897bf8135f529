//! Maximal Dyck paths and compatible edge collections.
//!
//! The maximal Dyck path of type `a1 × a2` runs from `(0,0)` to `(a1,a2)`
//! staying as close to the diagonal as possible without crossing above it.
//! It is built here as: for `x = 1..a1`, one horizontal step followed by
//! vertical steps up to height `floor(x·a2/a1)`.
//!
//! Edges carry corner-first labels: the `r`-th corner (counted from the
//! bottom left) consists of `u_r` and `v_r`; the remaining horizontal edges
//! continue the `u` numbering left to right and the remaining vertical edges
//! continue the `v` numbering bottom to top.
//!
//! Edge sets are bitmasks over labels: bit `r-1` stands for `u_r` (or `v_r`).

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

use crate::elements::{pos, BitSeq, ElementsError, GccTuple, DEFAULT_CAP};
use crate::exchange::{exp, ExtendedMatrix};
use crate::laurent::{Laurent, Monomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Horizontal,
    Vertical,
}

/// One unit edge, starting at lattice point `start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PathEdge {
    pub direction: Direction,
    /// Corner-first label, 1-based.
    pub label: u32,
    pub start: (u32, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyckPath {
    a1: u32,
    a2: u32,
    steps: Vec<PathEdge>,
    corners: u32,
}

impl DyckPath {
    pub fn new(a1: u32, a2: u32) -> Self {
        assert!(a1 <= 64 && a2 <= 64, "Dyck path sides are limited to 64");
        let mut raw: Vec<(Direction, (u32, u32))> = Vec::with_capacity((a1 + a2) as usize);
        if a1 == 0 {
            raw.extend((0..a2).map(|y| (Direction::Vertical, (0, y))));
        }
        let mut y = 0u32;
        for x in 1..=a1 {
            raw.push((Direction::Horizontal, (x - 1, y)));
            let h = (u64::from(x) * u64::from(a2) / u64::from(a1)) as u32;
            while y < h {
                raw.push((Direction::Vertical, (x, y)));
                y += 1;
            }
        }

        let is_corner_h: Vec<bool> = (0..raw.len())
            .map(|p| {
                raw[p].0 == Direction::Horizontal
                    && raw.get(p + 1).is_some_and(|e| e.0 == Direction::Vertical)
            })
            .collect();
        let corners = is_corner_h.iter().filter(|&&c| c).count() as u32;
        let mut labels = vec![0u32; raw.len()];
        let (mut next_corner, mut next_u, mut next_v) = (1u32, corners + 1, corners + 1);
        for p in 0..raw.len() {
            if is_corner_h[p] {
                labels[p] = next_corner;
                labels[p + 1] = next_corner;
                next_corner += 1;
            } else if labels[p] == 0 {
                let next = match raw[p].0 {
                    Direction::Horizontal => &mut next_u,
                    Direction::Vertical => &mut next_v,
                };
                labels[p] = *next;
                *next += 1;
            }
        }
        let steps = raw
            .into_iter()
            .zip(labels)
            .map(|((direction, start), label)| PathEdge { direction, label, start })
            .collect();
        DyckPath { a1, a2, steps, corners }
    }

    pub fn a1(&self) -> u32 {
        self.a1
    }

    pub fn a2(&self) -> u32 {
        self.a2
    }

    /// Edges in path order.
    pub fn steps(&self) -> &[PathEdge] {
        &self.steps
    }

    pub fn corner_count(&self) -> u32 {
        self.corners
    }

    /// `(label of u, label of v)` for each pair of consecutive edges forming
    /// a corner, in path order.
    pub fn corners(&self) -> Vec<(u32, u32)> {
        self.steps
            .windows(2)
            .filter(|w| w[0].direction == Direction::Horizontal && w[1].direction == Direction::Vertical)
            .map(|w| (w[0].label, w[1].label))
            .collect()
    }

    /// No edge of `s1` is immediately followed on the path by an edge of `s2`.
    pub fn is_locally_compatible(&self, s1: u64, s2: u64) -> bool {
        self.corners()
            .iter()
            .all(|&(u, v)| s1 >> (u - 1) & 1 == 0 || s2 >> (v - 1) & 1 == 0)
    }

    /// ASCII picture. Lattice points are `+`, horizontal edges `--` (or `==`
    /// when in `s1`), vertical edges `|` (or `#` when in `s2`). The top row
    /// is height `a2`. A final line lists the labels in path order, with a
    /// trailing `*` on selected edges, e.g. `path: u1* v1 v2*`.
    pub fn render_ascii(&self, s1: u64, s2: u64) -> String {
        let width = 3 * self.a1 as usize + 1;
        let height = 2 * self.a2 as usize + 1;
        let mut canvas = vec![vec![' '; width]; height];
        let row = |y: u32| 2 * (self.a2 - y) as usize;
        let mut words = Vec::with_capacity(self.steps.len());
        canvas[row(0)][0] = '+';
        for e in &self.steps {
            let (x, y) = e.start;
            let selected = match e.direction {
                Direction::Horizontal => s1 >> (e.label - 1) & 1 == 1,
                Direction::Vertical => s2 >> (e.label - 1) & 1 == 1,
            };
            let col = 3 * x as usize;
            match e.direction {
                Direction::Horizontal => {
                    let c = if selected { '=' } else { '-' };
                    canvas[row(y)][col + 1] = c;
                    canvas[row(y)][col + 2] = c;
                    canvas[row(y)][col + 3] = '+';
                    words.push(format!("u{}{}", e.label, if selected { "*" } else { "" }));
                }
                Direction::Vertical => {
                    canvas[row(y) - 1][col] = if selected { '#' } else { '|' };
                    canvas[row(y + 1)][col] = '+';
                    words.push(format!("v{}{}", e.label, if selected { "*" } else { "" }));
                }
            }
        }
        let mut out: String = canvas
            .into_iter()
            .map(|r| r.into_iter().collect::<String>().trim_end().to_string() + "\n")
            .collect();
        out.push_str("path:");
        for w in words {
            out.push(' ');
            out.push_str(&w);
        }
        out.push('\n');
        out
    }
}

/// `D^{a1×a2}` with corner-first labels.
pub fn build_dyck(a1: u32, a2: u32) -> DyckPath {
    DyckPath::new(a1, a2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Conditions (i)–(iv): globally compatible.
    Gcc,
    /// Conditions (ii)–(iv) only.
    Quasi,
}

/// Subsets `S_1^{(i,j)}` and `S_2^{(i,j)}` for every arrow of `Q_B~`, as
/// label bitmasks. Arrows are listed in ascending order, 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeCollection {
    pub arrows: Vec<(usize, usize)>,
    pub s1: Vec<u64>,
    pub s2: Vec<u64>,
}

impl fmt::Display for EdgeCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &(i, j)) in self.arrows.iter().enumerate() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let us: Vec<String> = (0..64).filter(|r| self.s1[k] >> r & 1 == 1).map(|r| format!("u{}", r + 1)).collect();
            let vs: Vec<String> = (0..64).filter(|r| self.s2[k] >> r & 1 == 1).map(|r| format!("v{}", r + 1)).collect();
            write!(f, "({},{}):{{{}}}{{{}}}", i + 1, j + 1, us.join(","), vs.join(","))?;
        }
        Ok(())
    }
}

/// A Dyck-path sum together with the isolated-vertex diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyckSum {
    pub value: Laurent,
    /// Isolated vertices of `Q_B~`, 0-based.
    pub isolated: Vec<usize>,
    /// True when no isolated mutable vertex has `a_i > 0`. Only then is the
    /// sum guaranteed to equal the sequence formulation.
    pub exact: bool,
}

/// One boolean unknown: membership of `u_r` (side 1) or `v_r` (side 2) of
/// the Dyck path on arrow `arrow`.
#[derive(Debug, Clone, Copy)]
struct Var {
    arrow: usize,
    side: u8,
    r: u32,
}

#[derive(Debug, Clone, Copy)]
enum Constraint {
    Equal(usize, usize),
    Differ(usize, usize),
    NotBoth(usize, usize),
}

struct Problem {
    arrows: Vec<(usize, usize)>,
    vars: Vec<Var>,
    /// Constraints indexed by their later variable.
    checks: Vec<Vec<Constraint>>,
}

impl Problem {
    fn new(matrix: &ExtendedMatrix, a: &[i64], mode: Mode) -> Self {
        let n = matrix.n();
        let len = |v: usize| if v < n { pos(a[v]) } else { 0 };
        let arrows: Vec<(usize, usize)> = matrix.qb_tilde().edges().collect();
        let paths: Vec<DyckPath> = arrows.iter().map(|&(i, j)| DyckPath::new(len(i), len(j))).collect();
        let mut vars = Vec::new();
        let mut index = std::collections::HashMap::new();
        for (k, &(i, j)) in arrows.iter().enumerate() {
            for r in 1..=len(i) {
                index.insert((k, 1u8, r), vars.len());
                vars.push(Var { arrow: k, side: 1, r });
            }
            for r in 1..=len(j) {
                index.insert((k, 2u8, r), vars.len());
                vars.push(Var { arrow: k, side: 2, r });
            }
        }
        let mut cons = Vec::new();
        if mode == Mode::Gcc {
            for (k, p) in paths.iter().enumerate() {
                for (u, v) in p.corners() {
                    cons.push(Constraint::NotBoth(index[&(k, 1, u)], index[&(k, 2, v)]));
                }
            }
        }
        for (k1, &(i1, j1)) in arrows.iter().enumerate() {
            for (k2, &(i2, j2)) in arrows.iter().enumerate() {
                if k1 == k2 {
                    continue;
                }
                // (ii): (i,j) and (j,k) share j.
                if j1 == i2 {
                    for r in 1..=len(j1) {
                        cons.push(Constraint::Differ(index[&(k1, 2, r)], index[&(k2, 1, r)]));
                    }
                }
                // (iii): (j,k) and (j,i) share their tail.
                if k1 < k2 && i1 == i2 {
                    for r in 1..=len(i1) {
                        cons.push(Constraint::Equal(index[&(k1, 1, r)], index[&(k2, 1, r)]));
                    }
                }
                // (iv): (i,j) and (k,j) share their head.
                if k1 < k2 && j1 == j2 {
                    for r in 1..=len(j1) {
                        cons.push(Constraint::Equal(index[&(k1, 2, r)], index[&(k2, 2, r)]));
                    }
                }
            }
        }
        let mut checks = vec![Vec::new(); vars.len()];
        for c in cons {
            let (x, y) = match c {
                Constraint::Equal(x, y) | Constraint::Differ(x, y) | Constraint::NotBoth(x, y) => (x, y),
            };
            checks[x.max(y)].push(c);
        }
        Problem { arrows, vars, checks }
    }

    fn consistent(&self, at: usize, vals: &[bool]) -> bool {
        self.checks[at].iter().all(|c| match *c {
            Constraint::Equal(x, y) => vals[x] == vals[y],
            Constraint::Differ(x, y) => vals[x] != vals[y],
            Constraint::NotBoth(x, y) => !(vals[x] && vals[y]),
        })
    }

    /// Depth-first search, `false` before `true`, so solutions come out in
    /// lex order over the variable sequence.
    fn solve(&self) -> Vec<EdgeCollection> {
        let mut out = Vec::new();
        let mut vals = vec![false; self.vars.len()];
        self.descend(0, &mut vals, &mut out);
        out
    }

    fn descend(&self, at: usize, vals: &mut Vec<bool>, out: &mut Vec<EdgeCollection>) {
        if at == self.vars.len() {
            out.push(self.collection(vals));
            return;
        }
        for v in [false, true] {
            vals[at] = v;
            if self.consistent(at, vals) {
                self.descend(at + 1, vals, out);
            }
        }
        vals[at] = false;
    }

    fn collection(&self, vals: &[bool]) -> EdgeCollection {
        let mut s1 = vec![0u64; self.arrows.len()];
        let mut s2 = vec![0u64; self.arrows.len()];
        for (var, &on) in self.vars.iter().zip(vals) {
            if on {
                let target = if var.side == 1 { &mut s1 } else { &mut s2 };
                target[var.arrow] |= 1 << (var.r - 1);
            }
        }
        EdgeCollection { arrows: self.arrows.clone(), s1, s2 }
    }
}

fn check_a(matrix: &ExtendedMatrix, a: &[i64], cap: u32) -> Result<(), ElementsError> {
    if a.len() != matrix.n() {
        return Err(ElementsError::LengthMismatch { expected: matrix.n(), got: a.len() });
    }
    let total: u64 = a.iter().map(|&x| x.max(0) as u64).sum();
    if total > u64::from(cap) || a.iter().any(|&x| x > 64) {
        return Err(ElementsError::TooLarge { total, cap });
    }
    Ok(())
}

/// All collections satisfying the conditions selected by `mode`.
pub fn enumerate_collections(a: &[i64], matrix: &ExtendedMatrix, mode: Mode) -> Result<Vec<EdgeCollection>, ElementsError> {
    check_a(matrix, a, DEFAULT_CAP)?;
    Ok(Problem::new(matrix, a, mode).solve())
}

/// The conditions checked directly on a given collection.
pub fn is_compatible(c: &EdgeCollection, a: &[i64], matrix: &ExtendedMatrix, mode: Mode) -> bool {
    let p = Problem::new(matrix, a, mode);
    if p.arrows != c.arrows {
        return false;
    }
    let vals: Vec<bool> = p
        .vars
        .iter()
        .map(|v| {
            let m = if v.side == 1 { c.s1[v.arrow] } else { c.s2[v.arrow] };
            m >> (v.r - 1) & 1 == 1
        })
        .collect();
    (0..vals.len()).all(|at| p.consistent(at, &vals))
}

fn isolated_vertices(matrix: &ExtendedMatrix) -> Vec<usize> {
    let q = matrix.qb_tilde();
    let touched: BTreeSet<usize> = q.edges().flat_map(|(i, j)| [i, j]).collect();
    (0..matrix.m()).filter(|v| !touched.contains(v)).collect()
}

fn dyck_sum(a: &[i64], matrix: &ExtendedMatrix, mode: Mode) -> Result<DyckSum, ElementsError> {
    let collections = enumerate_collections(a, matrix, mode)?;
    let (m, n) = (matrix.m(), matrix.n());
    let mut value = Laurent::zero(m);
    for c in &collections {
        let mut e: Vec<i64> = (0..m).map(|l| if l < n { -a[l] } else { 0 }).collect();
        for (k, &(i, j)) in c.arrows.iter().enumerate() {
            e[i] += matrix.b(i, j) * i64::from(c.s2[k].count_ones());
            e[j] += -matrix.b(j, i) * i64::from(c.s1[k].count_ones());
        }
        value.add_term(Monomial::new(e.into_iter().map(exp).collect()), BigInt::from(1));
    }
    let isolated = isolated_vertices(matrix);
    let exact = isolated.iter().all(|&v| v >= n || a[v] <= 0);
    Ok(DyckSum { value, isolated, exact })
}

/// `x~[a]` as a sum over globally compatible collections.
pub fn xtilde_via_dyck(a: &[i64], matrix: &ExtendedMatrix) -> Result<DyckSum, ElementsError> {
    dyck_sum(a, matrix, Mode::Gcc)
}

/// `z[a]` as a sum over quasi-compatible collections.
pub fn z_via_dyck(a: &[i64], matrix: &ExtendedMatrix) -> Result<DyckSum, ElementsError> {
    dyck_sum(a, matrix, Mode::Quasi)
}

/// The map from collections to sequence tuples:
/// `v_r^{(i,j)} ∈ S_2 ⇔ s_{j,r} = 0` and `u_r^{(j,k)} ∈ S_1 ⇔ s_{j,r} = 1`.
/// Returns `None` when some `s_{j,r}` is undetermined or determined
/// inconsistently.
pub fn collection_to_tuple(c: &EdgeCollection, a: &[i64], matrix: &ExtendedMatrix) -> Option<GccTuple> {
    let n = matrix.n();
    let mut seqs = Vec::with_capacity(n);
    for (j, &aj) in a.iter().enumerate() {
        let len = pos(aj);
        let mut bits = 0u64;
        for r in 0..len {
            let mut value: Option<bool> = None;
            for (k, &(tail, head)) in c.arrows.iter().enumerate() {
                let forced = if head == j {
                    Some(c.s2[k] >> r & 1 == 0)
                } else if tail == j {
                    Some(c.s1[k] >> r & 1 == 1)
                } else {
                    None
                };
                if let Some(f) = forced {
                    if value.is_some_and(|v| v != f) {
                        return None;
                    }
                    value = Some(f);
                }
            }
            if value? {
                bits |= 1 << r;
            }
        }
        seqs.push(BitSeq::new(len, bits));
    }
    Some(GccTuple(seqs))
}

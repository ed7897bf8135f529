//! Generators shared by the integration suites.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use upcluster::ExtendedMatrix;

/// Every skew-symmetric `n × n` matrix with entries in `-bound..=bound`.
pub fn all_skew(n: usize, bound: i64) -> Vec<ExtendedMatrix> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let width = (2 * bound + 1) as usize;
    let total = width.pow(pairs.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut rows = vec![vec![0i64; n]; n];
            for &(i, j) in &pairs {
                let v = (code % width) as i64 - bound;
                code /= width;
                rows[i][j] = v;
                rows[j][i] = -v;
            }
            ExtendedMatrix::from_rows(rows).unwrap()
        })
        .collect()
}

/// Every vector in `lo..=hi` of length `n`.
pub fn all_vectors(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Skew-symmetric principal part plus `frozen` random rows.
pub fn random_skew(rng: &mut ChaCha8Rng, n: usize, frozen: usize, bound: i64) -> ExtendedMatrix {
    let mut rows = vec![vec![0i64; n]; n + frozen];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(-bound..=bound);
            rows[i][j] = v;
            rows[j][i] = -v;
        }
    }
    for row in rows.iter_mut().skip(n) {
        for x in row.iter_mut() {
            *x = rng.gen_range(-bound..=bound);
        }
    }
    ExtendedMatrix::from_rows(rows).unwrap()
}

/// Skew-symmetrizable principal part `b_ij = s_ij d_j` with `d_j ∈ {1, 2}`
/// and entries clipped to `bound`, plus `frozen` random rows.
pub fn random_skew_symmetrizable(rng: &mut ChaCha8Rng, n: usize, frozen: usize, bound: i64) -> ExtendedMatrix {
    loop {
        let d: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=2)).collect();
        let base = random_skew(rng, n, frozen, bound);
        let mut rows = base.rows();
        for row in rows.iter_mut().take(n) {
            for (j, x) in row.iter_mut().enumerate() {
                *x *= d[j];
            }
        }
        if rows.iter().take(n).flatten().all(|x| x.abs() <= bound) {
            return ExtendedMatrix::from_rows(rows).unwrap();
        }
    }
}

/// Acyclic skew-symmetric principal part: arrows only from a random
/// permutation's earlier to later vertices.
pub fn random_acyclic(rng: &mut ChaCha8Rng, n: usize, frozen: usize, bound: i64) -> ExtendedMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut rows = vec![vec![0i64; n]; n + frozen];
    for p in 0..n {
        for q in p + 1..n {
            let v = rng.gen_range(0..=bound);
            let (i, j) = (perm[p], perm[q]);
            rows[i][j] = v;
            rows[j][i] = -v;
        }
    }
    for row in rows.iter_mut().skip(n) {
        for x in row.iter_mut() {
            *x = rng.gen_range(-bound..=bound);
        }
    }
    ExtendedMatrix::from_rows(rows).unwrap()
}

/// Random `a` of length `n` with entries in `lo..=hi` and `Σ [a_i]_+ <= max_pos`.
pub fn random_a(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64, max_pos: i64) -> Vec<i64> {
    loop {
        let a: Vec<i64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
        if a.iter().map(|&x| x.max(0)).sum::<i64>() <= max_pos {
            return a;
        }
    }
}

/// Skew-symmetric principal part from its strict upper triangle (row-major),
/// followed by the given frozen rows.
pub fn skew_from(n: usize, upper: &[i64], frozen: &[Vec<i64>]) -> ExtendedMatrix {
    let mut rows = vec![vec![0i64; n]; n];
    let mut it = upper.iter();
    for i in 0..n {
        for j in i + 1..n {
            let v = *it.next().unwrap();
            rows[i][j] = v;
            rows[j][i] = -v;
        }
    }
    rows.extend(frozen.iter().cloned());
    ExtendedMatrix::from_rows(rows).unwrap()
}

pub mod strategies {
    use proptest::collection::vec;
    use proptest::prelude::*;
    use upcluster::{ExtendedMatrix, Laurent, Monomial};

    /// Skew-symmetric `n × n` part with entries in `-bound..=bound`, plus up
    /// to `max_frozen` frozen rows, for `1 <= n <= max_n`.
    pub fn skew(max_n: usize, bound: i64, max_frozen: usize) -> impl Strategy<Value = ExtendedMatrix> {
        (1..=max_n, 0..=max_frozen).prop_flat_map(move |(n, f)| {
            (vec(-bound..=bound, n * (n - 1) / 2), vec(vec(-bound..=bound, n), f))
                .prop_map(move |(upper, frozen)| super::skew_from(n, &upper, &frozen))
        })
    }

    /// A matrix together with a vector `a` of matching length.
    pub fn with_a(
        m: impl Strategy<Value = ExtendedMatrix>,
        lo: i64,
        hi: i64,
    ) -> impl Strategy<Value = (ExtendedMatrix, Vec<i64>)> {
        m.prop_flat_map(move |b| {
            let n = b.n();
            (Just(b), vec(lo..=hi, n))
        })
    }

    pub fn laurent(nvars: usize, max_terms: usize) -> impl Strategy<Value = Laurent> {
        vec((vec(-3i32..=3, nvars), -6i64..=6), 0..=max_terms).prop_map(move |terms| {
            let mut p = Laurent::zero(nvars);
            for (e, c) in terms {
                p.add_term(Monomial::new(e), c.into());
            }
            p
        })
    }
}

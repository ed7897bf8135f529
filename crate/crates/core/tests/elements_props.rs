mod common;

use common::strategies::{skew, with_a};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use upcluster::elements::factor_positive;
use upcluster::{Elements, Laurent, Monomial};

proptest! {
    #[test]
    fn xtilde_coefficients_are_positive((b, a) in with_a(skew(3, 3, 2), -3, 3)) {
        let x = Elements::new(&b).xtilde(&a).unwrap();
        prop_assert!(!x.is_zero());
        prop_assert!(x.has_positive_coefficients());
    }

    #[test]
    fn layer_factorization((b, a) in with_a(skew(3, 3, 1), -3, 3)) {
        let e = Elements::new(&b);
        let (mono, layers) = factor_positive(&a);
        let mut prod = Laurent::monomial(
            (0..b.m()).map(|i| if i < b.n() { mono[i] as i32 } else { 0 }).collect(),
        );
        for layer in &layers {
            prop_assert!(layer.iter().all(|&x| x == 0 || x == 1));
            prod = prod * e.xtilde(layer).unwrap();
        }
        prop_assert_eq!(prod, e.xtilde(&a).unwrap());
    }

    #[test]
    fn component_factorization((b, a) in with_a(skew(4, 2, 1), -2, 2)) {
        let e = Elements::new(&b);
        let mut prod = Laurent::one(b.m());
        for part in e.factor_components(&a).unwrap() {
            prod = prod * e.xtilde(&part).unwrap();
        }
        prop_assert_eq!(prod, e.xtilde(&a).unwrap());
    }

    #[test]
    fn zero_one_formula_agrees(b in skew(3, 3, 1), mask in 0u32..8) {
        let a: Vec<i64> = (0..b.n()).map(|i| i64::from((mask >> i) & 1)).collect();
        let e = Elements::new(&b);
        prop_assert_eq!(e.xtilde_01(&a).unwrap(), e.xtilde(&a).unwrap());
    }

    #[test]
    fn gcc_count_bounds((b, a) in with_a(skew(3, 3, 0), -1, 3)) {
        let e = Elements::new(&b);
        let all = e.s_all(&a).unwrap().len() as u64;
        let gcc = e.count_gcc(&a).unwrap();
        prop_assert_eq!(all, 1u64 << a.iter().map(|&x| x.max(0)).sum::<i64>());
        prop_assert!(gcc <= all);
        let restricted_edges = b.qb().edges().any(|(i, j)| a[i] > 0 && a[j] > 0);
        prop_assert_eq!(gcc == all, !restricted_edges);
        prop_assert_eq!(e.s_gcc(&a).unwrap().len() as u64, gcc);
    }

    #[test]
    fn nonpositive_a_gives_monomial((b, a) in with_a(skew(3, 3, 1), -3, 0)) {
        let e = Elements::new(&b);
        let mono = Laurent::monomial(
            (0..b.m()).map(|i| if i < b.n() { -a[i] as i32 } else { 0 }).collect(),
        );
        prop_assert_eq!(e.xtilde(&a).unwrap(), mono.clone());
        prop_assert_eq!(e.z(&a).unwrap(), mono);
    }
}

/// For acyclic seeds, `(Π x_i^{a_i}) x~[a]` has, for each mutable `k`, a
/// monomial free of `x_k`.
#[test]
fn not_divisible_by_mutable_variables() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let n = rand::Rng::gen_range(&mut rng, 1..=3);
        let frozen = rand::Rng::gen_range(&mut rng, 0..=1);
        let b = common::random_acyclic(&mut rng, n, frozen, 3);
        let a = common::random_a(&mut rng, n, -2, 3, 6);
        let shift = Monomial::new((0..b.m()).map(|i| if i < n { a[i] as i32 } else { 0 }).collect());
        let p = Elements::new(&b).xtilde(&a).unwrap().mul_monomial(&shift).unwrap();
        for k in 0..n {
            assert!(p.terms().any(|(m, _)| m.get(k) == 0), "B = {:?}, a = {a:?}, k = {k}", b.rows());
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    let b = common::skew_from(3, &[2, -1, 3], &[vec![1, 0, -2]]);
    let e = Elements::new(&b);
    let first: Vec<String> = e.s_gcc(&[2, 1, 2]).unwrap().iter().map(ToString::to_string).collect();
    let second: Vec<String> = e.s_gcc(&[2, 1, 2]).unwrap().iter().map(ToString::to_string).collect();
    assert_eq!(first, second);
    assert_eq!(e.xtilde(&[2, 1, 2]).unwrap().to_string(), e.xtilde(&[2, 1, 2]).unwrap().to_string());
}

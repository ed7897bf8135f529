mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use upcluster::basis::{
    check_expansion_support, express_z_in_xtilde, invert_lowest, lowest_map, lowest_map_images, precedes, BasisError,
};
use upcluster::{expand_standard, Elements, ExtendedMatrix};

fn acyclic() -> impl Strategy<Value = ExtendedMatrix> {
    (1usize..=3, 0usize..=1, any::<u64>()).prop_map(|(n, frozen, seed)| {
        common::random_acyclic(&mut ChaCha8Rng::seed_from_u64(seed), n, frozen, 3)
    })
}

fn acyclic_with_a() -> impl Strategy<Value = (ExtendedMatrix, Vec<i64>)> {
    acyclic().prop_flat_map(|b| {
        let n = b.n();
        (Just(b), prop::collection::vec(-3i64..=3, n))
    })
}

fn low(p: &upcluster::Laurent, order: &[usize]) -> Vec<i64> {
    p.lowest_monomial(order).unwrap().0.into_iter().map(i64::from).collect()
}

/// The lowest monomials of `z[a]` and `x~[a]` coincide and equal `f(a)`.
#[test]
fn lowest_monomials_agree_exhaustively() {
    let mut checked = 0;
    for n in 1..=3 {
        for b in common::all_skew(n, 2) {
            let Ok(order) = b.topological_order() else { continue };
            let e = Elements::new(&b);
            for a in common::all_vectors(n, -3, 3) {
                let z = low(&e.z(&a).unwrap(), &order);
                let x = low(&e.xtilde(&a).unwrap(), &order);
                assert_eq!(z, x, "B = {:?}, a = {a:?}", b.rows());
                assert_eq!(z, lowest_map(&b, &a).unwrap());
                checked += 1;
            }
        }
    }
    assert!(checked > 10_000);
}

proptest! {
    #[test]
    fn inversion_round_trips((b, a) in acyclic_with_a()) {
        let c = lowest_map(&b, &a).unwrap();
        prop_assert_eq!(invert_lowest(&b, &c).unwrap(), a.clone());
        prop_assert_eq!(lowest_map(&b, &invert_lowest(&b, &a).unwrap()).unwrap(), a);
    }

    #[test]
    fn images_are_coordinatewise(b in acyclic()) {
        let images = lowest_map_images(&b).unwrap();
        for (k, (plus, minus)) in images.iter().enumerate() {
            let mut e = vec![0; b.n()];
            e[k] = 1;
            prop_assert_eq!(&lowest_map(&b, &e).unwrap(), plus);
            e[k] = -1;
            prop_assert_eq!(&lowest_map(&b, &e).unwrap(), minus);
        }
    }

    #[test]
    fn xtilde_expansion_is_unitriangular((b, a) in acyclic_with_a()) {
        prop_assume!(a.iter().map(|x| x.abs()).sum::<i64>() <= 4);
        let x = Elements::new(&b).xtilde(&a).unwrap();
        let ex = expand_standard(&x, &b).unwrap();
        prop_assert!(check_expansion_support(&ex, &a));
        prop_assert_eq!(ex.reassemble(&b).unwrap(), x);
    }

    #[test]
    fn standard_elements_expand_to_themselves((b, a) in acyclic_with_a()) {
        prop_assume!(a.iter().map(|x| x.abs()).sum::<i64>() <= 4);
        let ex = expand_standard(&Elements::new(&b).z(&a).unwrap(), &b).unwrap();
        prop_assert_eq!(ex.terms.len(), 1);
        prop_assert!(ex.terms[&a].is_one());
    }

    #[test]
    fn spanning((b, a) in acyclic_with_a()) {
        prop_assume!(a.iter().map(|x| x.abs()).sum::<i64>() <= 3);
        let ex = express_z_in_xtilde(&a, &b).unwrap();
        prop_assert!(ex.terms[&a].is_one());
        prop_assert!(ex.terms.keys().all(|k| k == &a || precedes(k, &a)));
        prop_assert_eq!(ex.reassemble(&b).unwrap(), Elements::new(&b).z(&a).unwrap());
    }
}

#[test]
fn cyclic_seeds_are_rejected() {
    let markov = ExtendedMatrix::markov(2);
    let x = Elements::new(&markov).xtilde(&[1, 1, 1]).unwrap();
    assert_eq!(expand_standard(&x, &markov), Err(BasisError::NotAcyclic));
}

/// On the Markov seed the family is dependent: `x~[(1,1,1)] = 2 x~[(-1,-1,-1)]`.
#[test]
fn markov_family_is_dependent() {
    let markov = ExtendedMatrix::markov(2);
    let e = Elements::new(&markov);
    let lhs = e.xtilde(&[1, 1, 1]).unwrap();
    let rhs = e.xtilde(&[-1, -1, -1]).unwrap();
    assert_eq!(lhs, &rhs + &rhs);
    assert_eq!(lhs.to_string(), "2*x1*x2*x3");
}

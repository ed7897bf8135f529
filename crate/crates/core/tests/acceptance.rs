//! Acceptance gate: one line per criterion, nonzero exit on any failure.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use upcluster::basis::{check_expansion_support, express_z_in_xtilde};
use upcluster::dyck::{collection_to_tuple, enumerate_collections, xtilde_via_dyck, z_via_dyck};
use upcluster::rank3::{construct_y, degree_audit, degree_of, gamma_mu, grading_vector};
use upcluster::{
    check_ux_membership, expand_standard, Elements, ExtendedMatrix, GccTuple, Laurent, Mode, Rank3Triple, Seed,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mat(rows: &[&[i64]]) -> ExtendedMatrix {
    ExtendedMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn poly(s: &str, m: usize) -> Laurent {
    Laurent::parse(s, m).unwrap()
}

/// `num · den`, with `den` a single Laurent monomial.
fn frac(num: &str, den: &str, m: usize) -> Laurent {
    poly(num, m) * poly(den, m)
}

fn example_a() -> Outcome {
    let b = mat(&[&[0, 2], &[-2, 0], &[1, -1]]);
    let x = Elements::new(&b).xtilde(&[1, 1]).map_err(|e| e.to_string())?;
    let expected = frac("x1^2*x3 + x3^2 + x2^2*x3", "x1^-1*x2^-1", 3);
    ensure(x == expected, || format!("got {x}"))?;
    ensure(x.to_string() == expected.to_string(), || "canonical text differs".into())?;
    Ok(x.to_fraction_string())
}

fn example_b() -> Outcome {
    let markov = ExtendedMatrix::markov(2);
    let e = Elements::new(&markov);
    let x = e.xtilde(&[1, 1, 1]).map_err(|e| e.to_string())?;
    ensure(x == poly("2*x1*x2*x3", 3), || format!("got {x}"))?;
    let gcc = e.s_gcc(&[1, 1, 1]).map_err(|e| e.to_string())?;
    let shown: Vec<String> = gcc.iter().map(GccTuple::to_string).collect();
    ensure(shown == ["((0),(0),(0))", "((1),(1),(1))"], || format!("S_gcc = {shown:?}"))?;
    // With all parameters 2, both shifted vectors are (-1,-1,-1).
    let rhs = e.xtilde(&[-1, -1, -1]).map_err(|e| e.to_string())?;
    ensure(x == &rhs + &rhs, || "dependence relation fails".into())?;
    Ok(format!("x~[(1,1,1)] = {x} = 2 x~[(-1,-1,-1)]"))
}

fn rank_two_forms() -> Outcome {
    let b = mat(&[&[0, 2], &[-2, 0]]);
    let e = Elements::new(&b);
    let x = e.xtilde(&[1, 2]).map_err(|e| e.to_string())?;
    let z = e.z(&[1, 2]).map_err(|e| e.to_string())?;
    let x_expected = frac("1 + 2*x1^2 + x1^4 + x2^2 + x1^2*x2^2", "x1^-1*x2^-2", 2);
    let z_expected = frac("1 + 2*x1^2 + x1^4 + x2^2 + 2*x1^2*x2^2 + x1^4*x2^2", "x1^-1*x2^-2", 2);
    let greedy = frac("1 + 2*x1^2 + x1^4 + x2^2", "x1^-1*x2^-2", 2);
    ensure(x == x_expected, || format!("x~[(1,2)] = {x}"))?;
    ensure(z == z_expected, || format!("z[(1,2)] = {z}"))?;
    ensure(x != greedy, || "x~[(1,2)] equals the greedy element".into())?;
    let factored = e.xtilde(&[1, 1]).and_then(|p| Ok(p * e.xtilde(&[0, 1])?)).map_err(|e| e.to_string())?;
    ensure(factored == x, || "x~[(1,1)] x~[(0,1)] differs".into())?;
    Ok(format!("numerators {} | {}", x.to_fraction_string(), z.to_fraction_string()))
}

fn fig_two() -> Outcome {
    let b = mat(&[&[0, 2], &[-2, 0]]);
    let a = [1, 2];
    let e = Elements::new(&b);
    let mut counts = Vec::new();
    for (mode, target) in [(Mode::Quasi, e.s_all(&a)), (Mode::Gcc, e.s_gcc(&a))] {
        let target = target.map_err(|e| e.to_string())?;
        let collections = enumerate_collections(&a, &b, mode).map_err(|e| e.to_string())?;
        let images: Vec<String> = collections
            .iter()
            .map(|c| collection_to_tuple(c, &a, &b).map(|t| t.to_string()).unwrap_or_default())
            .collect();
        let distinct: BTreeSet<&String> = images.iter().collect();
        let expected: BTreeSet<String> = target.iter().map(GccTuple::to_string).collect();
        ensure(distinct.len() == images.len(), || format!("{mode:?}: map not injective"))?;
        ensure(distinct.into_iter().cloned().collect::<BTreeSet<_>>() == expected, || format!("{mode:?}: images differ"))?;
        counts.push(collections.len());
    }
    ensure(counts == [8, 6], || format!("counts {counts:?}"))?;
    Ok("8 quasi-compatible, 6 globally compatible, bijective".into())
}

fn upper_bound_membership() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut tested = 0;
    let mut symmetrizable = 0;
    while tested < 200 {
        let n = rng.gen_range(1..=3);
        let frozen = rng.gen_range(0..=2);
        let b = if rng.gen_bool(0.25) {
            common::random_skew_symmetrizable(&mut rng, n, frozen, 3)
        } else {
            common::random_skew(&mut rng, n, frozen, 3)
        };
        if !b.is_full_rank() {
            continue;
        }
        if !b.is_skew_symmetric() {
            symmetrizable += 1;
        }
        let a = common::random_a(&mut rng, n, -3, 3, 4);
        let x = Elements::new(&b).xtilde(&a).map_err(|e| e.to_string())?;
        let report = check_ux_membership(&x, &b).map_err(|e| e.to_string())?;
        ensure(report.verdict, || format!("B = {:?}, a = {a:?}: {}", b.rows(), report.to_json()))?;
        tested += 1;
    }
    Ok(format!("{tested} seeds ({symmetrizable} skew-symmetrizable), 0 failures"))
}

fn z_oracle() -> Outcome {
    let mut pairs = 0;
    for n in 1..=3 {
        let vectors = common::all_vectors(n, -3, 3);
        for b in common::all_skew(n, 3) {
            let e = Elements::new(&b);
            for a in &vectors {
                let sum = e.z_by_enumeration(a).map_err(|e| e.to_string())?;
                let product = e.z(a).map_err(|e| e.to_string())?;
                ensure(sum == product, || format!("B = {:?}, a = {a:?}", b.rows()))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} (B, a) pairs"))
}

fn basis_triangularity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut expansions = 0;
    for _ in 0..20 {
        let n = rng.gen_range(1..=3);
        let b = common::random_acyclic(&mut rng, n, 0, 2);
        let e = Elements::new(&b);
        for a in common::all_vectors(n, -3, 3) {
            if a.iter().map(|x| x.abs()).sum::<i64>() > 3 {
                continue;
            }
            let x = e.xtilde(&a).map_err(|e| e.to_string())?;
            let ex = expand_standard(&x, &b).map_err(|e| e.to_string())?;
            ensure(check_expansion_support(&ex, &a), || format!("B = {:?}, a = {a:?}: support {:?}", b.rows(), ex.to_json()))?;
            let back = express_z_in_xtilde(&a, &b).map_err(|e| e.to_string())?;
            ensure(check_expansion_support(&back, &a), || format!("B = {:?}, a = {a:?}: inverse support", b.rows()))?;
            ensure(back.reassemble(&b).map_err(|e| e.to_string())? == e.z(&a).map_err(|e| e.to_string())?, || {
                format!("B = {:?}, a = {a:?}: z not recovered", b.rows())
            })?;
            expansions += 2;
        }
    }
    Ok(format!("{expansions} expansions over 20 acyclic seeds"))
}

/// Valid canonical `(a, b, c)`: `2 <= c <= b <= a <= 4`, non-acyclic and at
/// the root of its orbit.
const ROOT_TRIPLES: [(i64, i64, i64); 7] = [(2, 2, 2), (3, 3, 2), (3, 3, 3), (4, 3, 3), (4, 4, 2), (4, 4, 3), (4, 4, 4)];

fn scrambled(rng: &mut ChaCha8Rng, (a, b, c): (i64, i64, i64)) -> ExtendedMatrix {
    let base = [[0, a, -c], [-a, 0, b], [c, -b, 0]];
    let mut perm = [0usize, 1, 2];
    perm.shuffle(rng);
    let sign = if rng.gen_bool(0.5) { -1 } else { 1 };
    let mut rows: Vec<Vec<i64>> = (0..3).map(|i| (0..3).map(|j| sign * base[perm[i]][perm[j]]).collect()).collect();
    for _ in 0..rng.gen_range(0..=2) {
        rows.push((0..3).map(|_| rng.gen_range(-2..=2)).collect());
    }
    ExtendedMatrix::from_rows(rows).unwrap()
}

fn witness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut seeds = vec![ExtendedMatrix::markov(2)];
    for _ in 0..5 {
        let t = *ROOT_TRIPLES.choose(&mut rng).unwrap();
        seeds.push(scrambled(&mut rng, t));
    }
    let mut lines = Vec::new();
    for b in &seeds {
        let report = construct_y(b).map_err(|e| format!("{:?}: {e}", b.rows()))?;
        let (a, bb, c) = report.canonical.params;
        ensure(report.membership.verdict && report.membership.per_direction.len() == 3, || {
            format!("({a},{bb},{c}): Y fails U_x membership")
        })?;
        ensure(report.degree == a * c - bb - a, || format!("({a},{bb},{c}): degree {}", report.degree))?;
        ensure(report.rewritten_forms.iter().all(|&x| x), || format!("({a},{bb},{c}): rewritten forms"))?;
        let audit = degree_audit(b, 4, 2).map_err(|e| format!("({a},{bb},{c}): {e}"))?;
        ensure(audit.rows.len() == 3 + 6 + 12 + 24, || format!("({a},{bb},{c}): {} rows", audit.rows.len()))?;
        ensure(audit.exceptions.iter().all(|(name, _)| name == "z3"), || format!("({a},{bb},{c}): exceptions"))?;
        ensure(audit.min_other_degree.is_some_and(|d| d > audit.bound), || format!("({a},{bb},{c}): low degree"))?;
        lines.push(format!("({a},{bb},{c}) deg {}", report.degree));
    }
    Ok(lines.join(", "))
}

fn named<T: std::fmt::Debug>(name: &str, r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| format!("{name}: {e}"))
}

fn property_suites() -> Outcome {
    let runner = || TestRunner::new(Config { cases: 128, failure_persistence: None, ..Config::default() });
    let cases = std::cell::Cell::new(0u32);
    let skew = || common::strategies::skew(3, 3, 2);

    let r = runner().run(&(skew(), 0usize..3), |(b, k)| {
        prop_assume!(k < b.n());
        prop_assert_eq!(b.mutate(k).unwrap().mutate(k).unwrap(), b);
        Ok(())
    });
    named("matrix mutation involution", r)?;

    let r = runner().run(&(skew(), 0usize..3), |(b, k)| {
        prop_assume!(k < b.n());
        let s = Seed::initial(b);
        prop_assert!(s.mutate(k).unwrap().mutate(k).unwrap() == s);
        Ok(())
    });
    named("seed mutation involution", r)?;

    let r = runner().run(&((0i64..=50, 0i64..=50, 0i64..=50), 0usize..3), |((x, y, z), i)| {
        let t = Rank3Triple::new(x, y, z);
        prop_assert_eq!(gamma_mu(gamma_mu(t, i), i), t);
        Ok(())
    });
    named("Γ involutions", r)?;

    let laurent = || common::strategies::laurent(3, 5);
    let r = runner().run(&(laurent(), laurent()), |(p, d)| {
        prop_assume!(!d.is_zero());
        let prod = &p * &d;
        prop_assert_eq!(prod.exact_divide(&d).unwrap(), Some(p));
        Ok(())
    });
    named("exact_divide round trip", r)?;

    let r = runner().run(&common::strategies::with_a(common::strategies::skew(3, 2, 1), -2, 2), |(b, a)| {
        let q = b.qb_tilde();
        prop_assume!((0..b.m()).all(|v| !q.is_isolated(v)));
        let e = Elements::new(&b);
        prop_assert_eq!(xtilde_via_dyck(&a, &b).unwrap().value, e.xtilde(&a).unwrap());
        prop_assert_eq!(z_via_dyck(&a, &b).unwrap().value, e.z(&a).unwrap());
        Ok(())
    });
    named("Dyck differential", r)?;

    let r = runner().run(&common::strategies::with_a(skew(), -3, 3), |(b, a)| {
        cases.set(cases.get() + 1);
        prop_assert!(Elements::new(&b).xtilde(&a).unwrap().has_positive_coefficients());
        Ok(())
    });
    named("positivity", r)?;

    let r = runner().run(
        &(0usize..ROOT_TRIPLES.len(), prop::collection::vec(-2i64..=2, 3), prop::collection::vec(-2i64..=2, 3)),
        |(i, frozen, a)| {
            let (x, y, z) = ROOT_TRIPLES[i];
            let b = ExtendedMatrix::from_rows(vec![vec![0, x, -z], vec![-x, 0, y], vec![z, -y, 0], frozen]).unwrap();
            let g = grading_vector(&b).unwrap();
            let e = Elements::new(&b);
            prop_assert!(degree_of(&e.xtilde(&a).unwrap(), &g).is_ok());
            prop_assert!(degree_of(&e.z(&a).unwrap(), &g).is_ok());
            Ok(())
        },
    );
    named("rank-3 homogeneity", r)?;

    Ok(format!("7 suites green ({} positivity cases)", cases.get()))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Duration, fn() -> Outcome); 9] = [
        (1, "x~ of the three-vertex example", Duration::from_secs(1), example_a),
        (2, "Markov dependence", Duration::from_secs(1), example_b),
        (3, "rank-2 closed forms", Duration::from_secs(1), rank_two_forms),
        (4, "Dyck collection counts", Duration::from_secs(1), fig_two),
        (5, "U_x membership of x~", Duration::from_secs(60), upper_bound_membership),
        (6, "z sum equals product", Duration::from_secs(60), z_oracle),
        (7, "standard basis triangularity", Duration::from_secs(120), basis_triangularity),
        (8, "rank-3 witness and audit", Duration::from_secs(120), witness),
        (9, "property suites", Duration::from_secs(120), property_suites),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took {elapsed:?}, limit {limit:?}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {id}: {status} [{elapsed:.2?} / {limit:?}] {name}: {detail}");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

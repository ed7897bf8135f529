//! Pinned reference values, checked bit-exactly by `verify-paper`.
//!
//! Fixtures in the `markov` group read the Markov matrix from the context so
//! that `--perturb-markov` can swap it for a nearby matrix.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde_json::json;
use upcluster::basis::lowest_map;
use upcluster::dyck::{enumerate_collections, xtilde_via_dyck, z_via_dyck, Direction};
use upcluster::elements::factor_positive;
use upcluster::rank3::{
    alphas, canonicalize, classify_nonacyclic, classify_sides, construct_y, degree_of, find_root, grading_vector, tau,
};
use upcluster::upper::in_adjacent_ring;
use upcluster::{build_dyck, BitSeq, Elements, ExtendedMatrix, Laurent, Mode, Monomial, Rank3Triple, Seed};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureResult {
    pub name: &'static str,
    pub group: &'static str,
    pub passed: bool,
    /// Empty on success, otherwise an expected/actual diff or an error.
    pub detail: String,
}

struct Ctx {
    markov: ExtendedMatrix,
}

type Check = fn(&Ctx) -> Result<(), String>;

fn mat(rows: &[&[i64]]) -> ExtendedMatrix {
    ExtendedMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).expect("fixture matrix is valid")
}

fn poly(s: &str, m: usize) -> Laurent {
    Laurent::parse(s, m).expect("fixture polynomial parses")
}

/// `num · den` with `den` written as a monomial with negative exponents.
fn frac(num: &str, den: &str, m: usize) -> Laurent {
    poly(num, m) * poly(den, m)
}

fn expect_eq<T: PartialEq + std::fmt::Display>(expected: T, actual: T) -> Result<(), String> {
    if expected == actual {
        Ok(())
    } else {
        Err(format!("expected {expected}\n  actual   {actual}"))
    }
}

fn expect(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn example_a() -> ExtendedMatrix {
    mat(&[&[0, 2], &[-2, 0], &[1, -1]])
}

fn rank2() -> ExtendedMatrix {
    mat(&[&[0, 2], &[-2, 0]])
}

/// Canonical rank-3 seed `(a,b,c) = (3,3,2)` with one frozen row.
fn rank3_seed() -> ExtendedMatrix {
    mat(&[&[0, 3, -2], &[-3, 0, 3], &[2, -3, 0], &[1, -2, 1]])
}

fn set(items: impl IntoIterator<Item = String>) -> String {
    let s: BTreeSet<String> = items.into_iter().collect();
    format!("{{{}}}", s.into_iter().collect::<Vec<_>>().join(", "))
}

const FIXTURES: &[(&str, &str, Check)] = &[
    ("laurent-sum", "laurent", |_| expect_eq(poly("1 + x1^2 + x2^2", 2), poly("1 + x1^2", 2) + poly("x2^2", 2))),
    ("laurent-product", "laurent", |_| {
        let p = frac("1 + x1^2 + x2^2", "x1^-1*x2^-1", 2) * frac("1 + x1^2", "x2^-1", 2);
        expect_eq(frac("1 + 2*x1^2 + x1^4 + x2^2 + x1^2*x2^2", "x1^-1*x2^-2", 2), p)
    }),
    ("lowest-monomials", "basis", |_| {
        let b = rank2();
        let order = b.topological_order().map_err(err)?;
        let e = Elements::new(&b);
        for p in [e.xtilde(&[1, 2]).map_err(err)?, e.z(&[1, 2]).map_err(err)?] {
            let (low, coeff) = p.lowest_monomial(&order).map_err(err)?;
            expect_eq("[-1, -2]".to_string(), format!("{low:?}"))?;
            expect(coeff.is_one(), "lowest coefficient is not 1")?;
        }
        expect_eq("[-1, -2]".to_string(), format!("{:?}", lowest_map(&b, &[1, 2]).map_err(err)?))
    }),
    ("rank2-exchange", "exchange", |_| {
        expect_eq(frac("1 + x2^2", "x1^-1", 2), Seed::initial(rank2()).exchange(0).map_err(err)?)
    }),
    ("rank3-exchange-z2", "rank3", |_| {
        let b = rank3_seed();
        let [_, (p, q), _] = alphas(&b);
        let lift = |m: Monomial, e: [i32; 3]| {
            let mut v = m.exponents().to_vec();
            v[..3].copy_from_slice(&e);
            Laurent::monomial(v)
        };
        let expected = lift(p, [3, -1, 0]) + lift(q, [0, -1, 3]);
        expect_eq(expected, b.adjacent_variable(1))
    }),
    ("example-a-quiver", "example-a", |_| {
        let q = example_a().qb_tilde();
        let edges: Vec<String> = q.edges().map(|(i, j)| format!("({},{})", i + 1, j + 1)).collect();
        expect_eq("(1,2) (2,3) (3,1)".to_string(), edges.join(" "))
    }),
    ("markov-not-acyclic", "markov", |c| expect(!c.markov.is_acyclic(), "Markov quiver reported acyclic")),
    ("example-b-not-acyclic", "example-b", |_| {
        let b = mat(&[&[0, 1, -3], &[-2, 0, 1], &[2, -1, 0]]);
        expect(!b.is_acyclic(), "cyclic principal part reported acyclic")
    }),
    ("bit-dot", "elements", |_| {
        let one = BitSeq::from_bits(&[1]);
        let zero = BitSeq::from_bits(&[0]);
        expect_eq(0, one.dot(&zero))?;
        expect_eq(1, one.dot(&zero.complement()))
    }),
    ("fig2-quasi-sequences", "fig2", |_| {
        expect_eq(8, Elements::new(&rank2()).s_all(&[1, 2]).map_err(err)?.len())
    }),
    ("fig2-gcc-sequences", "fig2", |_| {
        expect_eq(6, Elements::new(&rank2()).s_gcc(&[1, 2]).map_err(err)?.len())
    }),
    ("example-a-gcc", "example-a", |_| {
        let b = example_a();
        let got = set(Elements::new(&b).s_gcc(&[1, 1]).map_err(err)?.iter().map(ToString::to_string));
        expect_eq("{((0),(0)), ((0),(1)), ((1),(1))}".to_string(), got)
    }),
    ("markov-gcc", "markov", |c| {
        let got = set(Elements::new(&c.markov).s_gcc(&[1, 1, 1]).map_err(err)?.iter().map(ToString::to_string));
        expect_eq("{((0),(0),(0)), ((1),(1),(1))}".to_string(), got)
    }),
    ("example-a-xtilde", "example-a", |_| {
        let x = Elements::new(&example_a()).xtilde(&[1, 1]).map_err(err)?;
        expect_eq(frac("x1^2*x3 + x3^2 + x2^2*x3", "x1^-1*x2^-1", 3), x)
    }),
    ("markov-xtilde", "markov", |c| {
        let e = Elements::new(&c.markov);
        let x = e.xtilde(&[1, 1, 1]).map_err(err)?;
        expect_eq(poly("2*x1*x2*x3", 3), x.clone())?;
        let y = e.xtilde(&[-1, -1, -1]).map_err(err)?;
        expect_eq(x, &y + &y)
    }),
    ("rank2-xtilde", "rank2", |_| {
        let x = Elements::new(&rank2()).xtilde(&[1, 2]).map_err(err)?;
        expect_eq(frac("1 + 2*x1^2 + x1^4 + x2^2 + x1^2*x2^2", "x1^-1*x2^-2", 2), x.clone())?;
        expect(x != frac("1 + 2*x1^2 + x1^4 + x2^2", "x1^-1*x2^-2", 2), "equals the greedy element")
    }),
    ("rank2-z", "rank2", |_| {
        let z = Elements::new(&rank2()).z(&[1, 2]).map_err(err)?;
        expect_eq(frac("1 + 2*x1^2 + x1^4 + x2^2 + 2*x1^2*x2^2 + x1^4*x2^2", "x1^-1*x2^-2", 2), z)
    }),
    ("z-unit-vector", "elements", |_| {
        let b = rank2();
        let e = Elements::new(&b);
        expect_eq(b.adjacent_variable(0).pow(3), e.z(&[3, 0]).map_err(err)?)?;
        expect_eq(b.adjacent_variable(1).pow(2), e.z(&[0, 2]).map_err(err)?)
    }),
    ("factor-layers-3", "elements", |_| {
        let (mono, layers) = factor_positive(&[2, 1, 3]);
        expect_eq("[0, 0, 0]".to_string(), format!("{mono:?}"))?;
        expect_eq("[[1, 1, 1], [1, 0, 1], [0, 0, 1]]".to_string(), format!("{layers:?}"))
    }),
    ("factor-layers-2", "rank2", |_| {
        let (_, layers) = factor_positive(&[1, 2]);
        expect_eq("[[1, 1], [0, 1]]".to_string(), format!("{layers:?}"))?;
        let b = rank2();
        let e = Elements::new(&b);
        expect_eq(e.xtilde(&[1, 2]).map_err(err)?, e.xtilde(&[1, 1]).map_err(err)? * e.xtilde(&[0, 1]).map_err(err)?)
    }),
    ("example-a-01-formula", "example-a", |_| {
        let b = example_a();
        let e = Elements::new(&b);
        expect_eq(e.xtilde(&[1, 1]).map_err(err)?, e.xtilde_01(&[1, 1]).map_err(err)?)
    }),
    ("fig2-dyck-geometry", "fig2", |_| {
        let d = build_dyck(1, 2);
        let words: Vec<String> = d
            .steps()
            .iter()
            .map(|s| format!("{}{}", if s.direction == Direction::Horizontal { "u" } else { "v" }, s.label))
            .collect();
        expect_eq(1, d.corner_count())?;
        expect_eq("u1 v1 v2".to_string(), words.join(" "))
    }),
    ("dyck-empty-side", "dyck", |_| {
        let d = build_dyck(3, 2);
        for s in 0..8u64 {
            expect(d.is_locally_compatible(s, 0), "S2 empty must be compatible")?;
        }
        for s in 0..4u64 {
            expect(d.is_locally_compatible(0, s), "S1 empty must be compatible")?;
        }
        Ok(())
    }),
    ("fig2-local-pairs", "fig2", |_| {
        let d = build_dyck(1, 2);
        let n = (0..2u64).flat_map(|s1| (0..4u64).map(move |s2| (s1, s2))).filter(|&(s1, s2)| d.is_locally_compatible(s1, s2)).count();
        expect_eq(6, n)
    }),
    ("fig2-collections", "fig2", |_| {
        let b = rank2();
        expect_eq(8, enumerate_collections(&[1, 2], &b, Mode::Quasi).map_err(err)?.len())?;
        expect_eq(6, enumerate_collections(&[1, 2], &b, Mode::Gcc).map_err(err)?.len())
    }),
    ("example-a-gcc-count", "example-a", |_| expect_eq(3, Elements::new(&example_a()).count_gcc(&[1, 1]).map_err(err)?)),
    ("rank2-dyck-sums", "rank2", |_| {
        let b = rank2();
        let e = Elements::new(&b);
        expect_eq(e.xtilde(&[1, 2]).map_err(err)?, xtilde_via_dyck(&[1, 2], &b).map_err(err)?.value)?;
        expect_eq(e.z(&[1, 2]).map_err(err)?, z_via_dyck(&[1, 2], &b).map_err(err)?.value)
    }),
    ("example-a-upper", "example-a", |_| {
        let b = example_a();
        let x = Elements::new(&b).xtilde(&[1, 1]).map_err(err)?;
        for k in 0..2 {
            expect(in_adjacent_ring(&x, &b, k).map_err(err)?.passes, "direction fails")?;
        }
        Ok(())
    }),
    ("markov-classify", "markov", |c| {
        let t = tau(&c.markov).map_err(err)?;
        expect(classify_nonacyclic(t), "classified acyclic")?;
        expect_eq("(12, 12)".to_string(), format!("{:?}", classify_sides(t)))
    }),
    ("markov-root", "markov", |c| expect_eq(Rank3Triple::new(2, 2, 2), find_root(tau(&c.markov).map_err(err)?).map_err(err)?)),
    ("rank3-grading", "rank3", |_| {
        let g = grading_vector(&rank3_seed()).map_err(err)?;
        expect_eq("[3, 2, 3, 0]".to_string(), format!("{g:?}"))
    }),
    ("rank3-mutated-grading", "rank3", |_| {
        let b = rank3_seed();
        for k in 0..3 {
            let next = b.mutate(k).map_err(err)?;
            let g = grading_vector(&next).map_err(err)?;
            expect_eq(format!("{:?}", tau(&next).map_err(err)?.0), format!("{:?}", &g[..3]))?;
        }
        Ok(())
    }),
    ("rank3-adjacent-degrees", "rank3", |_| {
        let b = rank3_seed();
        let canon = canonicalize(&b).map_err(err)?;
        let (a, bb, c) = canon.params;
        let g = grading_vector(&b).map_err(err)?;
        let d = |k: usize| degree_of(&b.adjacent_variable(k), &g).map_err(err);
        expect_eq(a * c - bb, d(0)?)?;
        expect_eq(a * bb - c, d(1)?)?;
        expect_eq(bb * c - a, d(2)?)
    }),
    ("rank3-witness", "rank3", |_| {
        let r = construct_y(&rank3_seed()).map_err(err)?;
        expect(r.rewritten_forms.iter().all(|&x| x), "a rewritten form fails")?;
        expect(r.membership.per_direction.iter().all(|d| d.passes), "Y fails U_x membership")?;
        expect_eq(0, r.degree)
    }),
    ("markov-witness", "markov", |c| {
        let r = construct_y(&c.markov).map_err(err)?;
        expect(r.membership.verdict, "Y fails U_x membership")?;
        expect_eq(0, r.degree)
    }),
    ("markov-mutation-negates", "markov", |c| {
        let neg = ExtendedMatrix::from_rows(c.markov.rows().into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect())
            .map_err(err)?;
        for k in 0..3 {
            expect_eq(neg.to_string(), c.markov.mutate(k).map_err(err)?.to_string())?;
        }
        Ok(())
    }),
    ("cli-example-a", "example-a", |_| {
        let out = crate::run(["upcluster", "xtilde", "--matrix", r#"[[0,2],[-2,0],[1,-1]]"#, "--a", "[1,1]"]);
        expect_eq(frac("x1^2*x3 + x3^2 + x2^2*x3", "x1^-1*x2^-1", 3).to_string(), out.stdout.trim_end().to_string())
    }),
    ("cli-markov-classify", "markov", |c| {
        let m = serde_json::to_string(&c.markov.rows()).map_err(err)?;
        let out = crate::run(["upcluster", "rank3", "classify", "--matrix", &m]);
        expect_eq("non-acyclic (12 >= 12)", out.stdout.trim_end())
    }),
];

/// A small perturbation of `M(2)`; its triple `(3,2,2)` is acyclic.
fn perturbed_markov() -> ExtendedMatrix {
    mat(&[&[0, 2, -2], &[-2, 0, 3], &[2, -3, 0]])
}

/// Runs the fixtures whose name or group contains `filter`.
pub fn verify_paper(filter: Option<&str>, perturb_markov: bool) -> Vec<FixtureResult> {
    let ctx = Ctx { markov: if perturb_markov { perturbed_markov() } else { ExtendedMatrix::markov(2) } };
    FIXTURES
        .iter()
        .filter(|(name, group, _)| filter.map_or(true, |f| name.contains(f) || group.contains(f)))
        .map(|&(name, group, check)| {
            let outcome = check(&ctx);
            FixtureResult { name, group, passed: outcome.is_ok(), detail: outcome.err().unwrap_or_default() }
        })
        .collect()
}

pub(crate) fn table(results: &[FixtureResult]) -> String {
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in results {
        let _ = writeln!(out, "{:<width$}  {:<9}  {}", r.name, r.group, if r.passed { "pass" } else { "FAIL" });
        for l in r.detail.lines() {
            let _ = writeln!(out, "    {l}");
        }
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    let _ = writeln!(out, "{} fixtures, {} passed, {} failed", results.len(), results.len() - failed, failed);
    out
}

pub(crate) fn to_json(results: &[FixtureResult]) -> serde_json::Value {
    json!({
        "fixtures": results
            .iter()
            .map(|r| json!({"name": r.name, "group": r.group, "passed": r.passed, "detail": r.detail}))
            .collect::<Vec<_>>(),
        "passed": results.iter().all(|r| r.passed),
    })
}

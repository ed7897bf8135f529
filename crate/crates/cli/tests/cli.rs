use std::path::PathBuf;
use std::process::Command;

use upcluster::{ExtendedMatrix, Laurent};
use upcluster_cli::{run, verify_paper, Output};

fn cli(args: &[&str]) -> Output {
    run(std::iter::once("upcluster").chain(args.iter().copied()))
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).to_string_lossy().into_owned()
}

const RANK2: &str = "[[0,2],[-2,0]]";

#[test]
fn xtilde_from_file() {
    let out = cli(&["xtilde", "--matrix", &data("example_a.json"), "--a", "[1,1]"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let p = Laurent::parse(out.stdout.trim(), 3).unwrap();
    let expected = Laurent::parse("x1^-1*x2^-1*x3^2 + x1^-1*x2*x3 + x1*x2^-1*x3", 3).unwrap();
    assert_eq!(p, expected);
    assert_eq!(out.stdout.trim(), expected.to_string());

    let frac = cli(&["xtilde", "--matrix", &data("example_a.json"), "--a", "[1,1]", "--fraction"]);
    assert_eq!(frac.stdout, "(x3^2 + x2^2*x3 + x1^2*x3)/(x1*x2)\n");
}

#[test]
fn classify_text() {
    assert_eq!(cli(&["rank3", "classify", "--triple", "[2,2,2]"]).stdout, "non-acyclic (12 >= 12)\n");
    assert_eq!(cli(&["rank3", "classify", "--triple", "[3,2,2]"]).stdout, "acyclic (16 < 17)\n");
    assert_eq!(cli(&["rank3", "classify", "--triple", "[5,1,7]"]).stdout, "acyclic (an entry of (5,1,7) is below 2)\n");
    assert_eq!(cli(&["rank3", "root", "--triple", "[15,6,3]"]).stdout, "(3,3,3)\n");
    assert_eq!(cli(&["rank3", "grading", "--matrix", &data("markov.json")]).stdout, "deg = (2,2,2)\n");
}

#[test]
fn output_is_deterministic() {
    let invocations: &[&[&str]] = &[
        &["xtilde", "--matrix", "[[0,3,-1],[-3,0,2],[1,-2,0],[1,0,-1]]", "--a", "[2,1,-1]", "--json"],
        &["gcc", "--matrix", RANK2, "--a", "[2,3]", "--mode", "dyck"],
        &["mutate", "--matrix", RANK2, "--seq", "1,2,1", "--cluster", "--json"],
        &["rank3", "audit", "--matrix", "[[0,3,-3],[-3,0,3],[3,-3,0]]", "--depth", "3", "--json"],
        &["verify-paper", "--json"],
    ];
    for args in invocations {
        let first = cli(args);
        assert_eq!(first.code, 0, "{args:?}: {}", first.stderr);
        assert_eq!(first, cli(args), "{args:?}");
    }
}

#[test]
fn json_round_trips() {
    let text = cli(&["z", "--matrix", RANK2, "--a", "[1,2]"]);
    let js = cli(&["z", "--matrix", RANK2, "--a", "[1,2]", "--json"]);
    let from_json: Laurent = serde_json::from_str(&js.stdout).unwrap();
    assert_eq!(from_json, Laurent::parse(text.stdout.trim(), 2).unwrap());
    assert_eq!(serde_json::to_value(&from_json).unwrap(), serde_json::from_str::<serde_json::Value>(&js.stdout).unwrap());

    let m = cli(&["mutate", "--matrix", &data("example_a.json"), "--at", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&m.stdout).unwrap();
    let b: ExtendedMatrix = serde_json::from_value(v["matrix"].clone()).unwrap();
    assert_eq!(b.rows(), vec![vec![0, -2], vec![2, 0], vec![-1, 1]]);
    assert_eq!(serde_json::to_value(&b).unwrap(), v["matrix"]);

    // A mutated matrix fed back in undoes the mutation.
    let again = cli(&["mutate", "--matrix", &v["matrix"].to_string(), "--at", "1"]);
    assert_eq!(again.stdout, "[[0,2],[-2,0],[1,-1]]\n");
}

#[test]
fn gcc_modes() {
    let count = |mode: &str| cli(&["gcc", "--matrix", RANK2, "--a", "[1,2]", "--count", "--mode", mode]).stdout;
    assert_eq!(count("gcc"), "6\n");
    assert_eq!(count("quasi"), "8\n");
    assert_eq!(count("dyck"), "6\n");
    let listed = cli(&["gcc", "--matrix", RANK2, "--a", "[1,2]"]);
    assert_eq!(listed.stdout.lines().count(), 6);
    assert!(listed.stdout.lines().all(|l| l.starts_with("((")));
}

#[test]
fn upper_and_expand() {
    let ok = cli(&["check-upper", "--matrix", RANK2, "--element", "xtilde:[1,2]"]);
    assert_eq!(ok.code, 0);
    assert!(ok.stdout.starts_with("in U_x\n"));
    let bad = cli(&["check-upper", "--matrix", RANK2, "--poly", "x1^-1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&bad.stdout).unwrap();
    assert_eq!(v["verdict"], false);
    assert_eq!(v["directions"][0]["failing_degree"], -1);

    let ex = cli(&["expand", "--matrix", RANK2, "--element", "xtilde:[1,2]"]);
    assert_eq!(ex.stdout, "-1\tz[(-3,0)]\n-1\tz[(-1,0)]\n1\tz[(1,2)]\n");
    let not_member = cli(&["expand", "--matrix", RANK2, "--poly", "x1^-1"]);
    assert_eq!(not_member.code, 1);
}

#[test]
fn rank3_witness() {
    let out = cli(&["rank3", "witness", "--matrix", &data("markov.json"), "--depth", "3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("degree = 0 (ac - b - a = 0)"));
    assert!(out.stdout.contains("U_x membership: true [1:pass 2:pass 3:pass]"));
    let acyclic = cli(&["rank3", "witness", "--matrix", "[[0,1,-1],[-1,0,1],[1,-1,0]]"]);
    assert_eq!(acyclic.code, 1);
    assert!(acyclic.stderr.contains("acyclic"));
}

#[test]
fn exit_codes() {
    let malformed = cli(&["xtilde", "--matrix", "[[0,2],[-2,0]", "--a", "[1,1]"]);
    assert_eq!(malformed.code, 2);
    assert!(malformed.stderr.contains("line 1, column"), "{}", malformed.stderr);
    assert_eq!(cli(&["frobnicate"]).code, 2);
    assert_eq!(cli(&["xtilde", "--matrix", RANK2]).code, 2);
    assert_eq!(cli(&["xtilde", "--matrix", RANK2, "--a", "[1,x]"]).code, 2);

    let not_skew = cli(&["xtilde", "--matrix", "[[0,2],[2,0]]", "--a", "[1,1]"]);
    assert_eq!(not_skew.code, 1);
    assert!(not_skew.stderr.contains("sign-skew-symmetric"));
    assert_eq!(cli(&["xtilde", "--matrix", RANK2, "--a", "[1,1,1]"]).code, 1);
    assert_eq!(cli(&["mutate", "--matrix", RANK2, "--at", "3"]).code, 1);
    assert_eq!(cli(&["gcc", "--matrix", RANK2, "--a", "[3,3]", "--cap", "5"]).code, 1);

    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn verify_paper_runs() {
    let all = cli(&["verify-paper"]);
    assert_eq!(all.code, 0, "{}", all.stdout);
    assert!(all.stdout.lines().last().unwrap().ends_with("0 failed"));

    let perturbed = verify_paper(None, true);
    assert!(perturbed.iter().filter(|r| !r.passed).all(|r| r.group == "markov"));
    assert!(perturbed.iter().filter(|r| r.group == "markov").any(|r| !r.passed));
    assert!(perturbed.iter().filter(|r| r.group != "markov").all(|r| r.passed));
    assert_eq!(cli(&["verify-paper", "--perturb-markov"]).code, 1);

    let fig = verify_paper(Some("fig2"), false);
    assert!(!fig.is_empty());
    assert!(fig.iter().all(|r| r.group == "fig2" && r.passed));
    assert_eq!(cli(&["verify-paper", "--filter", "no-such-fixture"]).code, 2);
}

#[test]
fn binary_honours_cap_variable() {
    let bin = env!("CARGO_BIN_EXE_upcluster");
    let out = Command::new(bin)
        .args(["gcc", "--matrix", RANK2, "--a", "[1,2]", "--count"])
        .env("UPCLUSTER_GCC_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
    let out = Command::new(bin).args(["gcc", "--matrix", RANK2, "--a", "[1,2]", "--count"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "6\n");
}

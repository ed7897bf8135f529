//! The `upcluster` command line.
//!
//! [`run`] parses arguments and returns everything the process would print
//! together with its exit code: 0 on success, 1 on domain errors, 2 on usage
//! errors. Output is buffered and deterministic.

mod fixtures;
mod input;

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use upcluster::basis::{expand, Family};
use upcluster::dyck::enumerate_collections;
use upcluster::elements::DEFAULT_CAP;
use upcluster::rank3::{
    classify_nonacyclic, classify_sides, construct_y, degree_audit, find_root, grading_vector, tau, Audit,
};
use upcluster::{check_ux_membership, Elements, ExtendedMatrix, Mode, Rank3Triple, Seed};

pub use fixtures::{verify_paper, FixtureResult};

/// Environment variable overriding the default GCC enumeration cap.
pub const CAP_ENV: &str = "UPCLUSTER_GCC_CAP";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub(crate) enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    pub(crate) fn domain(e: impl std::fmt::Display) -> Self {
        CliError::Domain(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "upcluster", version, about = "Elements of upper cluster algebras, exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Extended exchange matrix: a JSON file path, or inline JSON
    /// (`{"m":..,"n":..,"entries":[[..]]}` or a list of rows).
    #[arg(long)]
    matrix: String,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Cap on Σ[a_i]_+ for sequence enumeration [default: $UPCLUSTER_GCC_CAP or 24].
    #[arg(long)]
    cap: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// x~[a] as a Laurent polynomial in the initial cluster.
    Xtilde {
        #[command(flatten)]
        common: Common,
        /// Integer vector, e.g. "[1,2]".
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Print as (numerator)/(denominator).
        #[arg(long)]
        fraction: bool,
    },
    /// z[a], the standard monomial.
    Z {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        fraction: bool,
    },
    /// List or count compatible sequences or Dyck edge collections.
    Gcc {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Print only the count.
        #[arg(long)]
        count: bool,
        #[arg(long, value_enum, default_value_t = GccMode::Gcc)]
        mode: GccMode,
    },
    /// Mutate the matrix (and optionally the cluster).
    Mutate {
        #[command(flatten)]
        common: Common,
        /// Single 1-based direction.
        #[arg(long, conflicts_with = "seq")]
        at: Option<usize>,
        /// Comma-separated 1-based directions, applied left to right.
        #[arg(long)]
        seq: Option<String>,
        /// Also print the cluster variables in the initial cluster.
        #[arg(long)]
        cluster: bool,
    },
    /// Test membership in the upper bound U_x.
    CheckUpper {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        target: Target,
    },
    /// Rank-3 non-acyclic tools.
    Rank3 {
        #[command(subcommand)]
        op: Rank3Op,
    },
    /// Expand an element of the cluster algebra of an acyclic seed.
    Expand {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = FamilyArg::Standard)]
        family: FamilyArg,
        /// Greedy step limit [default: 10 x number of terms].
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Run the pinned reference fixtures and print a pass/fail table.
    VerifyPaper {
        /// Only fixtures whose name or group contains this string.
        #[arg(long)]
        filter: Option<String>,
        /// Replace the Markov matrix by a perturbed one (fault injection).
        #[arg(long)]
        perturb_markov: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Target {
    /// Laurent polynomial in canonical text, or Laurent JSON.
    #[arg(long, allow_hyphen_values = true)]
    poly: Option<String>,
    /// `xtilde:[..]` or `z:[..]`.
    #[arg(long, allow_hyphen_values = true)]
    element: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Rank3Op {
    /// Root of the Γ-orbit of a triple.
    Root(TripleArgs),
    /// Whether a triple lies in a non-acyclic mutation class.
    Classify(TripleArgs),
    /// The grading G = τ(B)^T.
    Grading {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        json: bool,
    },
    /// Build Y and check it.
    Witness {
        #[arg(long)]
        matrix: String,
        /// Also run the degree audit to this depth.
        #[arg(long)]
        depth: Option<usize>,
        /// Expand cluster variables up to this word length.
        #[arg(long, default_value_t = 2)]
        expand_depth: usize,
        #[arg(long)]
        json: bool,
    },
    /// Bounded-depth degree audit of cluster variables.
    Audit {
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        expand_depth: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct TripleSource {
    /// Triple as a JSON list, e.g. "[2,2,2]".
    #[arg(long)]
    triple: Option<String>,
    /// Take τ(B) from this matrix.
    #[arg(long)]
    matrix: Option<String>,
}

#[derive(Args, Debug)]
struct TripleArgs {
    #[command(flatten)]
    source: TripleSource,
    #[arg(long)]
    json: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GccMode {
    /// Sequence tuples satisfying the compatibility condition.
    Gcc,
    /// All sequence tuples.
    Quasi,
    /// Globally compatible Dyck edge collections.
    Dyck,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilyArg {
    Standard,
    Xtilde,
}

/// Runs one invocation. The first item of `argv` is the program name.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: 2, stdout: String::new(), stderr: text }
            } else {
                Output { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((code, stdout)) => Output { code, stdout, stderr: String::new() },
        Err(CliError::Usage(msg)) => Output { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(CliError::Domain(msg)) => Output { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

fn cap(flag: Option<u32>) -> Result<u32, CliError> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("{CAP_ENV}={v:?} is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

fn dispatch(command: Command) -> Result<(u8, String), CliError> {
    let ok = |s: String| Ok((0, s));
    match command {
        Command::Xtilde { common, a, fraction } => ok(element_cmd(&common, &a, fraction, true)?),
        Command::Z { common, a, fraction } => ok(element_cmd(&common, &a, fraction, false)?),
        Command::Gcc { common, a, count, mode } => ok(gcc_cmd(&common, &a, count, mode)?),
        Command::Mutate { common, at, seq, cluster } => ok(mutate_cmd(&common, at, seq.as_deref(), cluster)?),
        Command::CheckUpper { common, target } => ok(check_upper_cmd(&common, &target)?),
        Command::Rank3 { op } => ok(rank3_cmd(op)?),
        Command::Expand { common, target, family, max_steps } => ok(expand_cmd(&common, &target, family, max_steps)?),
        Command::VerifyPaper { filter, perturb_markov, json } => {
            let results = verify_paper(filter.as_deref(), perturb_markov);
            if results.is_empty() {
                return Err(CliError::Usage(format!("no fixture matches {:?}", filter.unwrap_or_default())));
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            let text = if json { pretty(&fixtures::to_json(&results)) } else { fixtures::table(&results) };
            Ok((u8::from(failed > 0), text))
        }
    }
}

fn target_poly(common: &Common, target: &Target, matrix: &ExtendedMatrix) -> Result<upcluster::Laurent, CliError> {
    match (&target.poly, &target.element) {
        (Some(p), None) => input::poly(p, matrix.m()),
        (None, Some(e)) => input::element(e, matrix, cap(common.cap)?),
        _ => Err(CliError::Usage("give exactly one of --poly or --element".into())),
    }
}

fn element_cmd(common: &Common, a: &str, fraction: bool, tilde: bool) -> Result<String, CliError> {
    let matrix = input::matrix(&common.matrix)?;
    let a = input::int_vec(a, "--a")?;
    let e = Elements::new(&matrix).with_cap(cap(common.cap)?);
    let p = if tilde { e.xtilde(&a) } else { e.z(&a) }.map_err(CliError::domain)?;
    Ok(if common.json {
        pretty(&serde_json::to_value(&p).expect("Laurent serializes"))
    } else if fraction {
        line(p.to_fraction_string())
    } else {
        line(&p)
    })
}

fn gcc_cmd(common: &Common, a: &str, count: bool, mode: GccMode) -> Result<String, CliError> {
    let matrix = input::matrix(&common.matrix)?;
    let a = input::int_vec(a, "--a")?;
    let cap = cap(common.cap)?;
    let e = Elements::new(&matrix).with_cap(cap);
    let items: Vec<String> = match mode {
        GccMode::Gcc if count => return render_count(common.json, "gcc", e.count_gcc(&a).map_err(CliError::domain)?),
        GccMode::Gcc => e.s_gcc(&a).map_err(CliError::domain)?.iter().map(ToString::to_string).collect(),
        GccMode::Quasi => e.s_all(&a).map_err(CliError::domain)?.iter().map(ToString::to_string).collect(),
        GccMode::Dyck => {
            let total: i64 = a.iter().map(|&x| x.max(0)).sum();
            if total > i64::from(cap) {
                return Err(CliError::Domain(format!("Σ[a_i]_+ = {total} exceeds the enumeration cap {cap}")));
            }
            enumerate_collections(&a, &matrix, Mode::Gcc).map_err(CliError::domain)?.iter().map(ToString::to_string).collect()
        }
    };
    let name = match mode {
        GccMode::Gcc => "gcc",
        GccMode::Quasi => "quasi",
        GccMode::Dyck => "dyck",
    };
    if count {
        return render_count(common.json, name, items.len() as u64);
    }
    Ok(if common.json {
        pretty(&json!({"mode": name, "count": items.len(), "items": items}))
    } else {
        items.iter().map(line).collect()
    })
}

fn render_count(as_json: bool, mode: &str, count: u64) -> Result<String, CliError> {
    Ok(if as_json { pretty(&json!({"mode": mode, "count": count})) } else { line(count) })
}

fn mutate_cmd(common: &Common, at: Option<usize>, seq: Option<&str>, with_cluster: bool) -> Result<String, CliError> {
    let matrix = input::matrix(&common.matrix)?;
    let ks = match (at, seq) {
        (Some(k), None) => input::directions(&k.to_string(), matrix.n())?,
        (None, Some(s)) => input::directions(s, matrix.n())?,
        _ => return Err(CliError::Usage("give exactly one of --at or --seq".into())),
    };
    let history: Vec<usize> = ks.iter().map(|k| k + 1).collect();
    if !with_cluster {
        let mut b = matrix;
        for &k in &ks {
            b = b.mutate(k).map_err(CliError::domain)?;
        }
        return Ok(if common.json {
            pretty(&json!({"history": history, "matrix": b}))
        } else {
            line(&b)
        });
    }
    let seed = Seed::initial(matrix).mutate_sequence(&ks).map_err(CliError::domain)?;
    if common.json {
        return Ok(pretty(&json!({"history": history, "matrix": seed.matrix(), "cluster": seed.cluster()})));
    }
    let mut out = line(seed.matrix());
    for (i, x) in seed.cluster().iter().enumerate() {
        let _ = writeln!(out, "x{}: {}", i + 1, x);
    }
    Ok(out)
}

fn check_upper_cmd(common: &Common, target: &Target) -> Result<String, CliError> {
    let matrix = input::matrix(&common.matrix)?;
    let p = target_poly(common, target, &matrix)?;
    let report = check_ux_membership(&p, &matrix).map_err(CliError::domain)?;
    if common.json {
        return Ok(pretty(&report.to_json()));
    }
    let mut out = line(if report.verdict { "in U_x" } else { "not in U_x" });
    for d in &report.per_direction {
        match (&d.failing_degree, &d.witness) {
            (Some(deg), Some((_, r))) => {
                let _ = writeln!(out, "direction {}: fail at x{}^{deg}, remainder {r} mod {}", d.k, d.k, d.adjacency_divisor);
            }
            _ => {
                let _ = writeln!(out, "direction {}: pass", d.k);
            }
        }
    }
    let _ = writeln!(out, "coprime: {}", report.coprime);
    let _ = writeln!(out, "full rank (U = U_x): {}", report.full_rank);
    Ok(out)
}

fn triple_of(source: &TripleSource) -> Result<Rank3Triple, CliError> {
    match (&source.triple, &source.matrix) {
        (Some(t), None) => {
            let t = input::triple(t)?;
            if t.iter().any(|&x| x < 0) {
                return Err(CliError::Domain(format!("triple entries must be nonnegative, got {t:?}")));
            }
            Ok(Rank3Triple(t))
        }
        (None, Some(m)) => tau(&input::matrix(m)?).map_err(CliError::domain),
        _ => Err(CliError::Usage("give exactly one of --triple or --matrix".into())),
    }
}

fn rank3_cmd(op: Rank3Op) -> Result<String, CliError> {
    match op {
        Rank3Op::Root(args) => {
            let t = triple_of(&args.source)?;
            let root = find_root(t).map_err(CliError::domain)?;
            Ok(if args.json { pretty(&json!({"triple": t, "root": root})) } else { line(root) })
        }
        Rank3Op::Classify(args) => {
            let t = triple_of(&args.source)?;
            let non_acyclic = classify_nonacyclic(t);
            let (lhs, rhs) = classify_sides(t);
            if args.json {
                return Ok(pretty(&json!({
                    "triple": t,
                    "non_acyclic": non_acyclic,
                    "abc_plus_4": lhs.to_string(),
                    "sum_of_squares": rhs.to_string(),
                })));
            }
            Ok(line(if non_acyclic {
                format!("non-acyclic ({lhs} >= {rhs})")
            } else if t.0.iter().any(|&x| x < 2) {
                format!("acyclic (an entry of {t} is below 2)")
            } else {
                format!("acyclic ({lhs} < {rhs})")
            }))
        }
        Rank3Op::Grading { matrix, json } => {
            let b = input::matrix(&matrix)?;
            let t = tau(&b).map_err(CliError::domain)?;
            let g = grading_vector(&b).map_err(CliError::domain)?;
            Ok(if json {
                pretty(&json!({"tau": t, "grading": g}))
            } else {
                let parts: Vec<String> = g.iter().map(i64::to_string).collect();
                line(format!("deg = ({})", parts.join(",")))
            })
        }
        Rank3Op::Witness { matrix, depth, expand_depth, json } => {
            let b = input::matrix(&matrix)?;
            let mut report = construct_y(&b).map_err(CliError::domain)?;
            if let Some(d) = depth {
                report.depth_audit = Some(degree_audit(&b, d, expand_depth).map_err(CliError::domain)?);
            }
            if json {
                return Ok(pretty(&report.to_json()));
            }
            let (a, bb, c) = report.canonical.params;
            let perm: Vec<String> = report.canonical.permutation.iter().map(|p| (p + 1).to_string()).collect();
            let mut out = String::new();
            let _ = writeln!(out, "canonical (a,b,c) = ({a},{bb},{c}), relabeling [{}], negated: {}", perm.join(","), report.canonical.negated);
            let _ = writeln!(out, "Y = {}", report.y.to_fraction_string());
            let _ = writeln!(out, "degree = {} (ac - b - a = {})", report.degree, a * c - bb - a);
            let dirs: Vec<String> =
                report.membership.per_direction.iter().map(|d| format!("{}:{}", d.k, if d.passes { "pass" } else { "fail" })).collect();
            let _ = writeln!(out, "U_x membership: {} [{}]", report.membership.verdict, dirs.join(" "));
            let _ = writeln!(out, "rewritten forms: {:?}", report.rewritten_forms);
            if let Some(audit) = &report.depth_audit {
                out.push_str(&audit_summary(audit));
            }
            Ok(out)
        }
        Rank3Op::Audit { matrix, depth, expand_depth, json } => {
            let b = input::matrix(&matrix)?;
            let audit = degree_audit(&b, depth, expand_depth).map_err(CliError::domain)?;
            if json {
                return Ok(pretty(&serde_json::to_value(&audit).expect("audit serializes")));
            }
            let mut out = String::new();
            for row in &audit.rows {
                let w: Vec<String> = row.mutation_word.iter().map(usize::to_string).collect();
                let _ = writeln!(
                    out,
                    "[{}]\ttau {}\tdegree {}{}",
                    w.join(","),
                    row.tau_triple,
                    row.new_variable_degree,
                    if row.expanded { "\texpanded" } else { "" }
                );
            }
            out.push_str(&audit_summary(&audit));
            Ok(out)
        }
    }
}

fn audit_summary(audit: &Audit) -> String {
    let exceptions: Vec<String> = audit.exceptions.iter().map(|(n, d)| format!("{n} (degree {d})")).collect();
    format!(
        "audit depth {}: {} variables, bound {}, minimum other degree {}, exceptions [{}]\n",
        audit.depth,
        audit.rows.len(),
        audit.bound,
        audit.min_other_degree.map_or("none".to_string(), |d| d.to_string()),
        exceptions.join(", ")
    )
}

fn expand_cmd(common: &Common, target: &Target, family: FamilyArg, max_steps: Option<usize>) -> Result<String, CliError> {
    let matrix = input::matrix(&common.matrix)?;
    let p = target_poly(common, target, &matrix)?;
    let family = match family {
        FamilyArg::Standard => Family::Standard,
        FamilyArg::Xtilde => Family::Xtilde,
    };
    let ex = expand(&p, &matrix, family, max_steps).map_err(CliError::domain)?;
    if common.json {
        let order: Vec<usize> = ex.order.iter().map(|k| k + 1).collect();
        return Ok(pretty(&json!({"order": order, "terms": ex.to_json()})));
    }
    let name = match family {
        Family::Standard => "z",
        Family::Xtilde => "x~",
    };
    Ok(ex
        .terms
        .iter()
        .map(|(b, u)| {
            let parts: Vec<String> = b.iter().map(i64::to_string).collect();
            line(format!("{u}\t{name}[({})]", parts.join(",")))
        })
        .collect())
}

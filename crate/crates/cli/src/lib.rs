//! Command-line front end. [`run`] parses an argument vector, dispatches to
//! the library and returns the exit code with everything that would have
//! been printed, so the binary and the tests share one code path.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use trace_invariants::eval::{
    conjecture_scan, diagram_check, free_scan, independence_certificate, invariance_check,
    is_relation, isolation_check, multilinear_certificate, psi_n, CertificateOptions, Verdict,
};
use trace_invariants::io::{format_expr, parse_quiver, parse_sigma, report_json};
use trace_invariants::quiver::{
    bilinear_forms_quiver, quiver_generators, quiver_independence, quiver_invariance_check,
    restricted_group_sample, upsilon_factor, MixedSetup,
};
use trace_invariants::sigma::ReductionPipeline;
use trace_invariants::{Error, Field, GroupKind, GroupSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "invariants",
    version,
    about = "Trace identities and free relations for matrix invariants of GL(n), O(n) and Sp(n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression at generic matrices: sigma(t, a) becomes
    /// sigma_t of the product of generic n x n matrices along a.
    Eval(GroupExpr),
    /// Apply the derivation d_q, which replaces one letter x_k by y_k_q in
    /// every possible way.
    Derive(DeriveArgs),
    /// Decide whether an expression vanishes at generic n x n matrices.
    IsRelation(GroupExpr),
    /// Test an expression for being a relation at every n up to --n-max.
    ScanFree(ScanArgs),
    /// Linear-independence certificate: rank of the images of all monomials
    /// of degree at most --deg in the generators on d letters.
    Certify(CertifyArgs),
    /// Elementary-matrix certificate for multilinear expressions, or with
    /// no expression the isolation check over all multilinear monomials on
    /// d letters.
    MultilinearCert(MultilinearArgs),
    /// Check that derivation commutes with evaluation at generic matrices.
    DiagramCheck(DiagramArgs),
    /// Characteristic-2 symplectic scan: which sigma_t(a) with a cyclically
    /// equivalent to its transpose vanish on Sp(n).
    Char2Scan(Char2Args),
    /// Mixed quiver representations.
    #[command(subcommand)]
    Quiver(QuiverCommand),
    /// Reduce an element to a multilinear one: iterated derivations, renaming
    /// y-letters to x-letters, and stripping p-th powers. Echoes each stage.
    Pipeline(PipelineArgs),
    /// Check invariance of the evaluated expression under sampled group
    /// elements acting by simultaneous conjugation.
    Invariance(InvarianceArgs),
}

#[derive(Subcommand, Debug)]
enum QuiverCommand {
    /// Generators sigma_t(a) over primitive closed paths a of the double
    /// quiver, one per class under rotation and path involution.
    Gens(QuiverArgs),
    /// Invariance of every generator under the group GL(n, i), and with
    /// --deg the linear independence of the generator monomials.
    Check(QuiverArgs),
}

#[derive(Args, Debug, Clone)]
struct FieldArg {
    /// Base field: f<p> for the prime field of order p, or q for the rationals.
    #[arg(long, default_value = "q")]
    field: String,
}

#[derive(Args, Debug, Clone)]
struct Output {
    /// Also write a JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct GroupArgs {
    /// Group: GL, O or Sp.
    #[arg(long, default_value = "GL")]
    group: String,
    /// Matrix size (even for Sp).
    #[arg(long)]
    n: usize,
    /// Allow O(n) in characteristic 2.
    #[arg(long)]
    exploratory: bool,
}

#[derive(Args, Debug)]
struct GroupExpr {
    /// Sigma-expression, e.g. "tr(x1)*tr(x2) - tr(x1*T(x2))".
    expr: String,
    #[command(flatten)]
    group: GroupArgs,
    #[command(flatten)]
    field: FieldArg,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct DeriveArgs {
    expr: String,
    /// Index of the derivation.
    #[arg(long, default_value_t = 1)]
    q: u32,
    #[command(flatten)]
    field: FieldArg,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct ScanArgs {
    expr: String,
    /// Group: GL, O or Sp.
    #[arg(long, default_value = "GL")]
    group: String,
    /// Smallest n to test.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Largest n to test.
    #[arg(long)]
    n_max: usize,
    /// Allow O(n) in characteristic 2.
    #[arg(long)]
    exploratory: bool,
    #[command(flatten)]
    field: FieldArg,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Number of letters x_1..x_d.
    #[arg(long)]
    d: u32,
    /// Largest total degree.
    #[arg(long)]
    deg: usize,
    /// Largest number of basis monomials.
    #[arg(long, default_value_t = 20_000)]
    basis_cap: usize,
    #[command(flatten)]
    field: FieldArg,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct MultilinearArgs {
    /// Multilinear expression to certify; omit to run the isolation check.
    expr: Option<String>,
    /// Group: GL, O or Sp.
    #[arg(long, default_value = "GL")]
    group: String,
    /// Number of letters for the isolation check.
    #[arg(long, default_value_t = 2)]
    d: u32,
    #[command(flatten)]
    field: FieldArg,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct DiagramArgs {
    expr: String,
    /// Index of the derivation.
    #[arg(long, default_value_t = 1)]
    q: u32,
    #[command(flatten)]
    group: GroupArgs,
    #[command(flatten)]
    field: FieldArg,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct Char2Args {
    /// Number of letters x_1..x_d.
    #[arg(long, default_value_t = 1)]
    d: u32,
    /// Longest word.
    #[arg(long, default_value_t = 2)]
    max_len: usize,
    /// Largest n; every even n from 2 is tested.
    #[arg(long, default_value_t = 4)]
    n_max: usize,
    /// Largest t (defaults to --n-max).
    #[arg(long)]
    deg: Option<u32>,
    /// Must be a field of characteristic 2.
    #[arg(long, default_value = "f2")]
    field: String,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct QuiverArgs {
    /// Quiver file with lines `vertex NAME dim N`, `arrow NAME HEAD TAIL`,
    /// `invol A B`.
    file: Option<PathBuf>,
    /// Use the bilinear-forms quiver with R arrows v -> u and S arrows u -> v.
    #[arg(long, value_name = "R,S", conflicts_with = "file")]
    bilinear: Option<String>,
    /// Uniform dimension (required with --bilinear, overrides the file).
    #[arg(long)]
    n: Option<usize>,
    /// Longest closed path.
    #[arg(long, default_value_t = 2)]
    max_len: usize,
    /// Largest degree for the independence check (quiver check only).
    #[arg(long)]
    deg: Option<usize>,
    /// Number of sampled group elements.
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// Seed of the sampled group elements.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    field: FieldArg,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct PipelineArgs {
    expr: String,
    /// Slots available for renaming y-letters; defaults to the fewest needed.
    #[arg(long)]
    d: Option<u32>,
    /// Allow characteristic 2.
    #[arg(long, alias = "unsafe-char2")]
    exploratory: bool,
    #[command(flatten)]
    field: FieldArg,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct InvarianceArgs {
    expr: String,
    #[command(flatten)]
    group: GroupArgs,
    /// Number of sampled group elements.
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// Seed of the sampled group elements.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    field: FieldArg,
    #[command(flatten)]
    out: Output,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    verdict: bool,
    text: String,
    json: Value,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invariant(_) | Error::Shape(_) | Error::NotDivisible { .. } => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

/// Runs the command line `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let out_path = out_path(&cli.command);
    match dispatch(cli.command) {
        Ok(report) => {
            if let Some(path) = out_path {
                if let Err(e) = std::fs::write(&path, report_json(&report.json)) {
                    return Outcome {
                        code: EXIT_USAGE,
                        stdout: report.text,
                        stderr: format!("cannot write {}: {e}\n", path.display()),
                    };
                }
            }
            Outcome {
                code: if report.verdict { EXIT_OK } else { EXIT_FALSE },
                stdout: report.text,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn out_path(c: &Command) -> Option<PathBuf> {
    match c {
        Command::Eval(a) | Command::IsRelation(a) => a.out.out.clone(),
        Command::Derive(a) => a.out.out.clone(),
        Command::ScanFree(a) => a.out.out.clone(),
        Command::Certify(a) => a.out.out.clone(),
        Command::MultilinearCert(a) => a.out.out.clone(),
        Command::DiagramCheck(a) => a.out.out.clone(),
        Command::Char2Scan(a) => a.out.out.clone(),
        Command::Quiver(QuiverCommand::Gens(a) | QuiverCommand::Check(a)) => a.out.out.clone(),
        Command::Pipeline(a) => a.out.out.clone(),
        Command::Invariance(a) => a.out.out.clone(),
    }
}

fn field(f: &FieldArg) -> Result<Field, Error> {
    Field::parse(&f.field)
}

fn group(g: &GroupArgs, field: Field) -> Result<GroupSpec, Error> {
    let kind: GroupKind = g.group.parse()?;
    let spec = GroupSpec::new(kind, g.n)?.with_exploratory(g.exploratory);
    spec.check_field(field)?;
    Ok(spec)
}

fn kind(s: &str) -> Result<GroupKind, Error> {
    s.parse()
}

fn dispatch(c: Command) -> Result<Report, Error> {
    match c {
        Command::Eval(a) => {
            let field = field(&a.field)?;
            let g = group(&a.group, field)?;
            let f = parse_sigma(&a.expr, field)?;
            let value = psi_n(&f, g)?;
            Ok(Report {
                verdict: true,
                text: format!("{value}\n"),
                json: json!({
                    "element": format_expr(&f),
                    "group": g.to_string(),
                    "field": field.to_string(),
                    "value": value.to_string(),
                }),
            })
        }
        Command::Derive(a) => {
            let field = field(&a.field)?;
            let f = parse_sigma(&a.expr, field)?;
            let df = f.derive(a.q)?;
            Ok(Report {
                verdict: true,
                text: format!("{}\n", format_expr(&df)),
                json: json!({
                    "element": format_expr(&f),
                    "q": a.q,
                    "field": field.to_string(),
                    "derivative": format_expr(&df),
                }),
            })
        }
        Command::IsRelation(a) => {
            let field = field(&a.field)?;
            let g = group(&a.group, field)?;
            let f = parse_sigma(&a.expr, field)?;
            let r = is_relation(&f, g)?;
            Ok(Report {
                verdict: r,
                text: format!("{r}\n"),
                json: json!({
                    "element": format_expr(&f),
                    "group": g.to_string(),
                    "field": field.to_string(),
                    "is_relation": r,
                }),
            })
        }
        Command::ScanFree(a) => {
            let field = field(&a.field)?;
            let kind = kind(&a.group)?;
            if a.n == 0 || a.n > a.n_max {
                return Err(Error::InvalidArgument("need 1 <= --n <= --n-max".into()));
            }
            GroupSpec::new(kind, 2)?
                .with_exploratory(a.exploratory)
                .check_field(field)?;
            let f = parse_sigma(&a.expr, field)?;
            let ns: Vec<usize> = (a.n..=a.n_max).collect();
            let report = free_scan(&f, kind, &ns, a.exploratory)?;
            let mut text = String::new();
            for (n, r) in &report.per_n {
                writeln!(text, "n = {n}: {r}").unwrap();
            }
            let verdict = match report.verdict {
                Verdict::RelationAtAllTestedN => {
                    writeln!(text, "verdict: relation at all tested n").unwrap();
                    true
                }
                Verdict::FailsAt(n) => {
                    writeln!(text, "verdict: fails at n = {n}").unwrap();
                    false
                }
            };
            Ok(Report {
                verdict,
                text,
                json: serde_json::to_value(&report).expect("serializable"),
            })
        }
        Command::Certify(a) => {
            let field = field(&a.field)?;
            let g = group(&a.group, field)?;
            let opts = CertificateOptions {
                basis_cap: a.basis_cap,
                ..CertificateOptions::default()
            };
            let report = independence_certificate(field, a.d, a.deg, g, opts)?;
            let mut text = String::new();
            writeln!(text, "group: {}", report.group).unwrap();
            writeln!(text, "field: {}", report.field).unwrap();
            writeln!(text, "basis: {}", report.basis_size).unwrap();
            writeln!(text, "rank: {}", report.rank).unwrap();
            writeln!(text, "independent: {}", report.independent).unwrap();
            Ok(Report {
                verdict: report.independent,
                text,
                json: serde_json::to_value(&report).expect("serializable"),
            })
        }
        Command::MultilinearCert(a) => {
            let kind = kind(&a.group)?;
            match a.expr {
                Some(expr) => {
                    let field = field(&a.field)?;
                    let f = parse_sigma(&expr, field)?;
                    let cert = multilinear_certificate(&f, kind)?;
                    let mut text = format!("vanishes: {}\n", cert.vanishes);
                    if let (Some(m), Some(v)) = (&cert.witness_monomial, &cert.witness_value) {
                        writeln!(text, "witness: {m} -> {v}").unwrap();
                    }
                    Ok(Report {
                        verdict: true,
                        text,
                        json: serde_json::to_value(&cert).expect("serializable"),
                    })
                }
                None => {
                    let report = isolation_check(a.d, kind)?;
                    let mut text = String::new();
                    writeln!(text, "monomials: {}", report.monomials).unwrap();
                    writeln!(text, "matrix size: {}", report.n).unwrap();
                    for (u, v, value) in &report.failures {
                        writeln!(text, "failure: assignment of {u} gives {v} = {value}").unwrap();
                    }
                    writeln!(text, "isolated: {}", report.ok()).unwrap();
                    Ok(Report {
                        verdict: report.ok(),
                        text,
                        json: serde_json::to_value(&report).expect("serializable"),
                    })
                }
            }
        }
        Command::DiagramCheck(a) => {
            let field = field(&a.field)?;
            let g = group(&a.group, field)?;
            let f = parse_sigma(&a.expr, field)?;
            let ok = diagram_check(&f, a.q, g)?;
            Ok(Report {
                verdict: ok,
                text: format!("commutes: {ok}\n"),
                json: json!({
                    "element": format_expr(&f),
                    "q": a.q,
                    "group": g.to_string(),
                    "field": field.to_string(),
                    "commutes": ok,
                }),
            })
        }
        Command::Char2Scan(a) => {
            let field = Field::parse(&a.field)?;
            let ns: Vec<usize> = (2..=a.n_max).step_by(2).collect();
            let report = conjecture_scan(field, a.d, a.max_len, &ns, a.deg)?;
            let mut text = String::new();
            for e in &report.entries {
                let cells: Vec<String> = e
                    .per_n
                    .iter()
                    .map(|(n, r)| format!("n={n}:{}", if *r { "relation" } else { "nonzero" }))
                    .collect();
                let symbol = if e.t == 1 {
                    format!("tr({})", e.word)
                } else {
                    format!("sigma({}, {})", e.t, e.word)
                };
                writeln!(text, "{symbol} {}", cells.join(" ")).unwrap();
            }
            Ok(Report {
                verdict: true,
                text,
                json: serde_json::to_value(&report).expect("serializable"),
            })
        }
        Command::Quiver(QuiverCommand::Gens(a)) => {
            let (s, field) = quiver_setup(&a)?;
            let gens = quiver_generators(&s, a.max_len, None)?;
            let mut text = legend(&s);
            for g in &gens {
                writeln!(text, "{g}").unwrap();
            }
            Ok(Report {
                verdict: true,
                text,
                json: json!({
                    "setup": serde_json::to_value(&s).expect("serializable"),
                    "field": field.to_string(),
                    "generators": gens.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                }),
            })
        }
        Command::Quiver(QuiverCommand::Check(a)) => {
            let (s, field) = quiver_setup(&a)?;
            let gens = quiver_generators(&s, a.max_len, None)?;
            let samples = restricted_group_sample(&s, field, a.samples, a.seed)?;
            let mut text = legend(&s);
            let mut all = true;
            let mut rows = Vec::new();
            for g in &gens {
                let h = upsilon_factor(g, &s, field)?;
                let ok = quiver_invariance_check(&h, &s, &samples)?;
                all &= ok;
                writeln!(text, "{g}: invariant {ok}").unwrap();
                rows.push(json!({"generator": g.to_string(), "invariant": ok}));
            }
            let mut json = json!({
                "setup": serde_json::to_value(&s).expect("serializable"),
                "field": field.to_string(),
                "samples": a.samples,
                "seed": a.seed,
                "generators": rows,
            });
            if let Some(deg) = a.deg {
                let report = quiver_independence(&s, field, deg)?;
                writeln!(text, "basis: {}", report.basis_size).unwrap();
                writeln!(text, "rank: {}", report.rank).unwrap();
                writeln!(text, "independent: {}", report.independent).unwrap();
                all &= report.independent;
                json["independence"] = serde_json::to_value(&report).expect("serializable");
            }
            Ok(Report {
                verdict: all,
                text,
                json,
            })
        }
        Command::Pipeline(a) => {
            let field = field(&a.field)?;
            let f = parse_sigma(&a.expr, field)?;
            let run = ReductionPipeline::run(&f, a.d, a.exploratory)?;
            let mut text = String::new();
            let mut stages = Vec::new();
            for st in &run.stages {
                write!(
                    text,
                    "{}: deg+ = {}, deg- = {}",
                    st.label, st.deg_plus, st.deg_minus
                )
                .unwrap();
                let witness = st.witness.as_ref().map(|w| {
                    w.iter()
                        .map(|b| b.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                });
                if let Some(w) = &witness {
                    write!(text, ", I = {{{w}}}").unwrap();
                }
                writeln!(text, "\n  {}", format_expr(&st.poly)).unwrap();
                stages.push(json!({
                    "label": st.label,
                    "element": format_expr(&st.poly),
                    "deg_plus": st.deg_plus,
                    "deg_minus": st.deg_minus,
                    "witness": witness,
                }));
            }
            Ok(Report {
                verdict: true,
                text,
                json: json!({ "field": field.to_string(), "stages": stages }),
            })
        }
        Command::Invariance(a) => {
            let field = field(&a.field)?;
            let g = group(&a.group, field)?;
            let f = parse_sigma(&a.expr, field)?;
            let report = invariance_check(&f, g, a.samples, a.seed)?;
            Ok(Report {
                verdict: report.invariant,
                text: format!(
                    "invariant: {} ({} samples)\n",
                    report.invariant, report.samples
                ),
                json: serde_json::to_value(&report).expect("serializable"),
            })
        }
    }
}

fn quiver_setup(a: &QuiverArgs) -> Result<(MixedSetup, Field), Error> {
    let field = field(&a.field)?;
    let s = match (&a.file, &a.bilinear) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::InvalidArgument(format!("cannot read {}: {e}", path.display()))
            })?;
            let s = parse_quiver(&text)?;
            match a.n {
                Some(n) => s.with_uniform_dim(n)?,
                None => s,
            }
        }
        (None, Some(rs)) => {
            let parts: Vec<&str> = rs.split(',').collect();
            let parsed: Option<Vec<usize>> = parts.iter().map(|p| p.trim().parse().ok()).collect();
            let (r, s) = match parsed.as_deref() {
                Some([r, s]) => (*r, *s),
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "--bilinear expects R,S, got `{rs}`"
                    )))
                }
            };
            let n =
                a.n.ok_or_else(|| Error::InvalidArgument("--bilinear needs --n".into()))?;
            bilinear_forms_quiver(r, s, n)?
        }
        _ => {
            return Err(Error::InvalidArgument(
                "give a quiver file or --bilinear R,S".into(),
            ))
        }
    };
    Ok((s, field))
}

/// One line per arrow naming the letter that stands for it.
fn legend(s: &MixedSetup) -> String {
    let mut text = String::new();
    for (k, a) in s.quiver.arrows.iter().enumerate() {
        writeln!(
            text,
            "# x{} = {}: {} -> {}",
            k + 1,
            a.name,
            s.quiver.vertices[a.tail],
            s.quiver.vertices[a.head]
        )
        .unwrap();
    }
    text
}

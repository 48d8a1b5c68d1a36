//! The `tropsd` command line.
//!
//! Exit codes: 0 member/success, 1 non-member (or a failed check), 2 usage,
//! parse or capacity error.

mod document;
mod svg;

pub use document::MatrixDocument;
pub use svg::render_svg;

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::exec::Exec;
use crate::factor::{decompose_rank_one, gram_factor, minimum_decomposition, rank_upper_bound};
use crate::psd_cone::{is_trop_psd_det, is_trop_psd_inequalities};
use crate::puiseux::{
    construct_witness, convergence_threshold, principal_minors, specialize_and_check, SignPattern,
};
use crate::random::{random_member, random_symmetric, rng};
use crate::subdiv::lower_subdivision;
use crate::sweep::classify;
use crate::tropical::{trop_det_assignment, Rat, SymMatrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NON_MEMBER: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "tropsd",
    version,
    about = "Exact tools for the tropical positive-semidefinite cone"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for `random`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test membership in the tropical PSD cone.
    Check {
        /// Matrix document; stdin when absent or `-`.
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Method::Inequalities)]
        method: Method,
    },
    /// Print a Puiseux PSD witness and verify its principal minors.
    Witness {
        input: Option<PathBuf>,
        /// Off-diagonal signs as `+`/`-`, one per pair i<j in lexicographic order.
        #[arg(long, allow_hyphen_values = true)]
        signs: Option<String>,
        /// Also check the rational specialization t = u^L at this u in (0, 1).
        #[arg(long)]
        specialize: Option<String>,
    },
    /// Greedy rank-one decomposition from upper facets.
    Decompose { input: Option<PathBuf> },
    /// Exact symmetric Barvinok rank.
    Rank { input: Option<PathBuf> },
    /// Tropical Gram factor B with A = B ⊙ Bᵀ.
    Factor { input: Option<PathBuf> },
    /// Emit random matrix documents, one JSON object per line.
    Random {
        #[arg(long)]
        n: usize,
        /// Sample cone members (default).
        #[arg(long, conflicts_with = "any")]
        member: bool,
        /// Sample unconstrained symmetric matrices.
        #[arg(long)]
        any: bool,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Instead of printing, check that the three membership tests agree.
        #[arg(long)]
        verify: bool,
    },
    /// Render the subdivision of 2Δ_2 for a 3×3 matrix.
    Svg {
        input: Option<PathBuf>,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Inequalities,
    Det,
    Subdivision,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Inequalities => "inequalities",
            Method::Det => "det",
            Method::Subdivision => "subdivision",
        }
    }
}

/// Failure carrying its exit code.
struct Exit {
    code: i32,
    message: String,
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::RejectedInput(_) => EXIT_NON_MEMBER,
            _ => EXIT_USAGE,
        };
        Exit {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Exit {
    Exit {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let mut report = String::new();
    let result = dispatch(&cli, stdin, &mut report);
    let _ = out.write_all(report.as_bytes());
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn read_document(input: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<SymMatrix, Exit> {
    let text = match input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?,
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| usage(format!("cannot read stdin: {e}")))?;
            s
        }
    };
    Ok(MatrixDocument::parse(&text)
        .map_err(|e| usage(e.to_string()))?
        .into_matrix())
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read, out: &mut String) -> Result<i32, Exit> {
    match &cli.command {
        Command::Check { input, method } => {
            let a = read_document(input, stdin)?;
            cmd_check(&a, *method, cli.json, out)
        }
        Command::Witness {
            input,
            signs,
            specialize,
        } => {
            let a = read_document(input, stdin)?;
            cmd_witness(&a, signs.as_deref(), specialize.as_deref(), cli.json, out)
        }
        Command::Decompose { input } => {
            let a = read_document(input, stdin)?;
            cmd_decompose(&a, cli.json, out)
        }
        Command::Rank { input } => {
            let a = read_document(input, stdin)?;
            cmd_rank(&a, cli.json, out)
        }
        Command::Factor { input } => {
            let a = read_document(input, stdin)?;
            cmd_factor(&a, cli.json, out)
        }
        Command::Random {
            n,
            any,
            count,
            verify,
            ..
        } => cmd_random(*n, !*any, *count, *verify, cli.seed, cli.json, out),
        Command::Svg { input, out: path } => {
            let a = read_document(input, stdin)?;
            if a.n() != 3 {
                return Err(usage(format!("svg needs a 3x3 matrix, got n = {}", a.n())));
            }
            let svg = render_svg(&a)?;
            match path {
                Some(p) => std::fs::write(p, svg)
                    .map_err(|e| usage(format!("cannot write {}: {e}", p.display())))?,
                None => out.push_str(&svg),
            }
            Ok(EXIT_OK)
        }
    }
}

fn emit_json(out: &mut String, v: &Value) {
    out.push_str(&serde_json::to_string_pretty(v).expect("values serialize"));
    out.push('\n');
}

fn rat_list(v: &[Rat]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn tuple(v: &[Rat]) -> String {
    format!("({})", rat_list(v).join(", "))
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn member_code(is_member: bool) -> i32 {
    if is_member {
        EXIT_OK
    } else {
        EXIT_NON_MEMBER
    }
}

fn cmd_check(a: &SymMatrix, method: Method, json: bool, out: &mut String) -> Result<i32, Exit> {
    let mut fields = serde_json::Map::new();
    fields.insert("method".into(), json!(method.name()));
    let mut text = format!("method: {}\n", method.name());
    let is_member = match method {
        Method::Inequalities => {
            let v = is_trop_psd_inequalities(a);
            if let Some((i, j)) = v.violated_pair {
                fields.insert("violated_pair".into(), json!([i + 1, j + 1]));
                writeln!(
                    text,
                    "violated: a[{0},{0}] + a[{1},{1}] > 2*a[{0},{1}]  ({2} + {3} > {4})",
                    i + 1,
                    j + 1,
                    a.get(i, i),
                    a.get(j, j),
                    a.get(i, j).double()
                )
                .unwrap();
            }
            v.is_member
        }
        Method::Det => {
            let member = is_trop_psd_det(a);
            let det = trop_det_assignment(&a.to_matrix())?;
            let trace = a.trace();
            writeln!(text, "diagonal sum: {trace}\ntropical determinant: {det}").unwrap();
            fields.insert("diagonal_sum".into(), json!(trace.to_string()));
            fields.insert("trop_det".into(), json!(det.to_string()));
            member
        }
        Method::Subdivision => {
            let sub = lower_subdivision(a)?;
            writeln!(text, "cells: {}", sub.cells.len()).unwrap();
            for c in &sub.cells {
                let pts: Vec<String> = c.iter().map(ToString::to_string).collect();
                writeln!(text, "  {{{}}}", pts.join(",")).unwrap();
            }
            let cells: Vec<Value> = sub
                .cells
                .iter()
                .map(|c| json!(c.iter().map(|p| [p.i + 1, p.j + 1]).collect::<Vec<_>>()))
                .collect();
            fields.insert("cells".into(), Value::Array(cells));
            sub.cells.len() == 1
        }
    };
    fields.insert("member".into(), json!(is_member));
    if json {
        emit_json(out, &Value::Object(fields));
    } else {
        let verdict = if is_member { "member" } else { "non-member" };
        out.push_str(&text.replacen('\n', &format!("\nverdict: {verdict}\n"), 1));
    }
    Ok(member_code(is_member))
}

fn cmd_witness(
    a: &SymMatrix,
    signs: Option<&str>,
    specialize: Option<&str>,
    json: bool,
    out: &mut String,
) -> Result<i32, Exit> {
    let n = a.n();
    let pattern = match signs {
        Some(s) => SignPattern::parse(n, s).map_err(|e| usage(e.to_string()))?,
        None => SignPattern::uniform(n, crate::puiseux::Sign::Plus),
    };
    let u = specialize
        .map(|s| {
            let u: Rat = s.parse().map_err(|e: Error| usage(e.to_string()))?;
            if !u.is_positive() || u >= Rat::one() {
                return Err(usage(format!("--specialize {u} is outside (0, 1)")));
            }
            Ok(u)
        })
        .transpose()?;
    let w = construct_witness(a, &pattern)?;
    let minors = principal_minors(&w)?;
    let valuation_ok = w.valuation() == *a;
    let minors_ok = minors.values().all(|p| p.is_positive());
    let verified = valuation_ok && minors_ok;
    let special = match &u {
        Some(u) => Some((convergence_threshold(&w)?, specialize_and_check(&w, u)?)),
        None => None,
    };
    let ok = verified && special.as_ref().is_none_or(|(_, s)| *s);

    if json {
        let rows: Vec<Vec<String>> = w
            .rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        let minor_list: Vec<Value> = minors
            .iter()
            .map(|(s, p)| {
                json!({
                    "subset": s.0.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "minor": p.to_string(),
                    "leading": p.leading_term().to_string(),
                    "positive": p.is_positive(),
                })
            })
            .collect();
        let mut v = json!({
            "signs": pattern.to_string(),
            "witness": rows,
            "minors": minor_list,
            "valuation_ok": valuation_ok,
            "verified": verified,
        });
        if let (Some(u), Some((threshold, s))) = (&u, &special) {
            v["specialization"] = json!({
                "u": u.to_string(),
                "threshold": threshold.to_string(),
                "ok": s,
            });
        }
        emit_json(out, &v);
    } else {
        writeln!(out, "signs: {pattern}").unwrap();
        writeln!(out, "witness:").unwrap();
        for line in w.to_string().lines() {
            writeln!(out, "  {line}").unwrap();
        }
        writeln!(out, "principal minors:").unwrap();
        for (s, p) in &minors {
            let sign = if p.is_positive() {
                "positive"
            } else {
                "not positive"
            };
            writeln!(out, "  {s}: {p}  [leading {}, {sign}]", p.leading_term()).unwrap();
        }
        writeln!(out, "valuation: {}", pass(valuation_ok)).unwrap();
        if let (Some(u), Some((threshold, s))) = (&u, &special) {
            writeln!(out, "threshold: {threshold}").unwrap();
            writeln!(out, "specialization at u = {u}: {}", pass(*s)).unwrap();
        }
        writeln!(out, "verdict: {}", pass(ok)).unwrap();
    }
    Ok(if ok { EXIT_OK } else { EXIT_NON_MEMBER })
}

fn vector_lines(out: &mut String, vectors: &[Vec<Rat>]) {
    for (k, u) in vectors.iter().enumerate() {
        writeln!(out, "  u{} = {}", k + 1, tuple(u)).unwrap();
    }
}

fn json_vectors(vectors: &[Vec<Rat>]) -> Value {
    json!(vectors.iter().map(|u| rat_list(u)).collect::<Vec<_>>())
}

fn cmd_decompose(a: &SymMatrix, json: bool, out: &mut String) -> Result<i32, Exit> {
    let d = decompose_rank_one(a)?;
    let ok = d.reconstruct() == *a;
    if json {
        emit_json(
            out,
            &json!({"vectors": json_vectors(&d.vectors), "reconstruction_ok": ok}),
        );
    } else {
        writeln!(out, "vectors: {}", d.len()).unwrap();
        vector_lines(out, &d.vectors);
        writeln!(out, "reconstruction: {}", pass(ok)).unwrap();
    }
    Ok(if ok { EXIT_OK } else { EXIT_NON_MEMBER })
}

fn cmd_rank(a: &SymMatrix, json: bool, out: &mut String) -> Result<i32, Exit> {
    let d = minimum_decomposition(a)?;
    let bound = rank_upper_bound(a.n());
    let ok = d.reconstruct() == *a;
    if json {
        emit_json(
            out,
            &json!({
                "rank": d.len(),
                "bound": bound,
                "cover": json_vectors(&d.vectors),
                "reconstruction_ok": ok,
            }),
        );
    } else {
        writeln!(out, "symmetric Barvinok rank: {}", d.len()).unwrap();
        writeln!(out, "upper bound max(n, floor(n^2/4)): {bound}").unwrap();
        writeln!(out, "minimum cover:").unwrap();
        vector_lines(out, &d.vectors);
        writeln!(out, "reconstruction: {}", pass(ok)).unwrap();
    }
    Ok(if ok { EXIT_OK } else { EXIT_NON_MEMBER })
}

fn cmd_factor(a: &SymMatrix, json: bool, out: &mut String) -> Result<i32, Exit> {
    let g = gram_factor(a)?;
    let ok = g.product() == a.to_matrix();
    let rows: Vec<Vec<String>> = (0..g.b.rows()).map(|i| rat_list(g.b.row_vec(i))).collect();
    if json {
        emit_json(out, &json!({"b": rows, "product_ok": ok}));
    } else {
        writeln!(out, "B ({}x{}):", g.b.rows(), g.b.cols()).unwrap();
        for r in &rows {
            writeln!(out, "  [{}]", r.join(", ")).unwrap();
        }
        writeln!(out, "B (.) B^T = A: {}", pass(ok)).unwrap();
    }
    Ok(if ok { EXIT_OK } else { EXIT_NON_MEMBER })
}

fn cmd_random(
    n: usize,
    member: bool,
    count: usize,
    verify: bool,
    seed: u64,
    json: bool,
    out: &mut String,
) -> Result<i32, Exit> {
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let mut r = rng(seed);
    let mats: Vec<SymMatrix> = (0..count)
        .map(|_| {
            if member {
                random_member(n, &mut r)
            } else {
                random_symmetric(n, &mut r)
            }
        })
        .collect();
    if !verify {
        for m in mats {
            writeln!(out, "{}", MatrixDocument::new(m).render()).unwrap();
        }
        return Ok(EXIT_OK);
    }
    let verdicts = classify(&mats, Exec::default())?;
    let members = verdicts.iter().filter(|v| v.inequalities).count();
    let agree = verdicts.iter().filter(|v| v.agree()).count();
    if json {
        emit_json(
            out,
            &json!({"count": count, "members": members, "agree": agree}),
        );
    } else {
        writeln!(out, "checked: {count}").unwrap();
        writeln!(out, "members: {members}").unwrap();
        writeln!(out, "methods agree: {agree}/{count}").unwrap();
    }
    Ok(if agree == count {
        EXIT_OK
    } else {
        EXIT_NON_MEMBER
    })
}

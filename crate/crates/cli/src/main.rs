//! Command-line surface for the norm toolkit: norm queries, subword
//! tables, distortion profiles, cube/tree embeddings, quasimorphism
//! evaluations, identity witnesses, and a scaling benchmark.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse/usage errors,
//! 3 search budget exceeded, 4 non-stabilized homogenization.

use binorm::balanced::{BalancedError, GraphPresentation, GroupKind};
use binorm::cube::{parse_tree_file, CubeEmbedding, IsometryReport, TreeEmbedding};
use binorm::freenorm::{cancelation_norm, distortion_profile, trivializing_sequence, NormTable};
use binorm::quasi::{dual_family_check, qi_sandwich_check, BrooksQuasimorphism, QuasiError};
use binorm::witnesses::{bs_affine_check, heisenberg_identity_check, lamplighter_identity_check};
use binorm::words::{Alphabet, Word};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde_json::json;
use std::path::PathBuf;
use std::time::{Duration, Instant};

#[derive(Parser)]
#[command(name = "binorm", version, about = "Biinvariant word norms on free and graph groups")]
struct Cli {
    /// Generator names (distinct lowercase letters)
    #[arg(long, global = true, default_value = "ab")]
    alphabet: String,

    /// Emit a single JSON object instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Seed for randomized commands
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for embedding verification
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cancelation norm of a word, in the free group or a graph group
    Norm(NormArgs),
    /// Norms of the powers g¹..gᴺ
    Profile { word: String, n: usize },
    /// Build and verify cube or tree embeddings into the free group
    Embed(EmbedArgs),
    /// Evaluate Brooks counting quasimorphisms
    Qm(QmArgs),
    /// Time the norm computation across word sizes
    Bench(BenchArgs),
    /// Check bounded-subgroup identities in concrete models
    Witness(WitnessArgs),
}

#[derive(Args)]
struct NormArgs {
    word: String,
    /// Also print a minimal trivializing sequence (free group only)
    #[arg(long)]
    witness: bool,
    /// Graph presentation file (text or JSON)
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Presentation kind for text graph files
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    /// Node budget override for the graph-group search
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args)]
struct EmbedArgs {
    /// Tree file: one "u v" edge per line
    tree: Option<PathBuf>,
    /// Embed the cube of this dimension instead of a tree
    #[arg(long, conflicts_with = "tree")]
    cube: Option<usize>,
    /// Root vertex for tree embeddings
    #[arg(long, default_value_t = 0)]
    root: usize,
    /// Check all pairwise distances exactly
    #[arg(long)]
    verify: bool,
    /// Allow the dimension-4 cube check
    #[arg(long)]
    slow: bool,
}

#[derive(Args)]
struct QmArgs {
    /// Pattern word defining the quasimorphism
    pattern: Option<String>,
    /// Word to evaluate the raw counting value on
    word: Option<String>,
    /// Evaluate the homogenized value on this word
    #[arg(long)]
    homogenize: Option<String>,
    /// Comma-separated pattern list and element list: --dual qs gs
    #[arg(long, num_args = 2)]
    dual: Option<Vec<String>>,
    /// Exponent vector k1,k2,... for the sandwich check (needs --dual, --c, --d)
    #[arg(long)]
    sandwich: Option<String>,
    /// Multiplicative constant C of the sandwich
    #[arg(long)]
    c: Option<String>,
    /// Additive constant D of the sandwich
    #[arg(long)]
    d: Option<String>,
}

#[derive(Args)]
struct BenchArgs {
    /// Word sizes to time
    #[arg(long, value_delimiter = ',', default_value = "500,1000,2000")]
    sizes: Vec<usize>,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(value_enum)]
    which: WitnessKind,
    /// Power to check the identity at
    #[arg(long, default_value_t = 100)]
    n: u64,
    /// Baumslag-Solitar parameter p
    #[arg(long)]
    p: Option<u64>,
    /// Baumslag-Solitar parameter q
    #[arg(long)]
    q: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Artin,
    Coxeter,
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessKind {
    Lamplighter,
    Heisenberg,
    Bs,
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

impl From<binorm::words::WordError> for Failure {
    fn from(e: binorm::words::WordError) -> Failure {
        fail(2, e.to_string())
    }
}

impl From<BalancedError> for Failure {
    fn from(e: BalancedError) -> Failure {
        let code = match e {
            BalancedError::BudgetExceeded { .. } => 3,
            _ => 2,
        };
        fail(code, e.to_string())
    }
}

impl From<binorm::cube::CubeError> for Failure {
    fn from(e: binorm::cube::CubeError) -> Failure {
        fail(2, e.to_string())
    }
}

impl From<QuasiError> for Failure {
    fn from(e: QuasiError) -> Failure {
        let code = match e {
            QuasiError::NonStabilized { .. } => 4,
            _ => 2,
        };
        fail(code, e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(f) = run(&cli) {
        eprintln!("error: {}", f.message);
        std::process::exit(f.code);
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let alphabet = Alphabet::new(&cli.alphabet)?;
    match &cli.command {
        Command::Norm(args) => cmd_norm(cli, &alphabet, args),
        Command::Profile { word, n } => cmd_profile(cli, &alphabet, word, *n),
        Command::Embed(args) => cmd_embed(cli, args),
        Command::Qm(args) => cmd_qm(cli, &alphabet, args),
        Command::Bench(args) => cmd_bench(cli, &alphabet, args),
        Command::Witness(args) => cmd_witness(cli, args),
    }
}

/// Expand the CLI-only exponent shorthand: a letter followed by a decimal
/// count repeats it, so "b4aB4" means bbbb a BBBB.
fn expand_shorthand(text: &str) -> Result<String, Failure> {
    let mut out = String::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if c.is_ascii_digit() {
            let last = out
                .pop()
                .ok_or_else(|| fail(2, format!("exponent with no preceding letter in {text:?}")))?;
            let mut digits = String::from(c);
            while chars.peek().is_some_and(|d| d.is_ascii_digit()) {
                digits.push(chars.next().unwrap());
            }
            let count: usize = digits
                .parse()
                .map_err(|_| fail(2, format!("bad exponent {digits:?} in {text:?}")))?;
            for _ in 0..count {
                out.push(last);
            }
        } else {
            out.push(c);
        }
    }
    Ok(out)
}

fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word, Failure> {
    Ok(Word::parse(&expand_shorthand(text)?, alphabet)?)
}

fn parse_rational(text: &str) -> Result<Rational64, Failure> {
    let parse_int = |s: &str| {
        s.trim()
            .parse::<i64>()
            .map_err(|_| fail(2, format!("bad rational {text:?}")))
    };
    match text.split_once('/') {
        Some((num, den)) => Ok(Rational64::new(parse_int(num)?, parse_int(den)?)),
        None => Ok(Rational64::from_integer(parse_int(text)?)),
    }
}

fn load_presentation(args: &NormArgs) -> Result<GraphPresentation, Failure> {
    let path = args.graph.as_ref().expect("caller checked");
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(2, format!("cannot read {}: {e}", path.display())))?;
    if text.trim_start().starts_with('{') {
        Ok(GraphPresentation::parse_json(&text)?)
    } else {
        let kind = match args.kind {
            Some(KindArg::Artin) => GroupKind::Artin,
            Some(KindArg::Coxeter) => GroupKind::Coxeter,
            None => return Err(fail(2, "--kind is required with a text graph file")),
        };
        Ok(GraphPresentation::parse_text(&text, kind)?)
    }
}

fn cmd_norm(cli: &Cli, alphabet: &Alphabet, args: &NormArgs) -> Result<(), Failure> {
    if args.graph.is_some() {
        let presentation = load_presentation(args)?;
        if args.witness {
            return Err(fail(2, "--witness is only available for the free group"));
        }
        let word = parse_word(&args.word, presentation.alphabet())?;
        let norm = match args.budget {
            Some(budget) => presentation.cancelation_length_with_budget(&word, budget)?,
            None => presentation.cancelation_length(&word)?,
        };
        if cli.json {
            println!(
                "{}",
                json!({"word": word.to_string(), "norm": norm, "group": "graph"})
            );
        } else {
            println!("{norm}");
        }
        return Ok(());
    }

    let word = parse_word(&args.word, alphabet)?;
    let norm = cancelation_norm(&word);
    let witness = args.witness.then(|| trivializing_sequence(&word));
    if cli.json {
        println!(
            "{}",
            json!({
                "word": word.to_string(),
                "norm": norm,
                "trivializing": witness.as_ref().map(|s| s.indices().to_vec()),
            })
        );
    } else {
        println!("{norm}");
        if let Some(seq) = witness {
            let positions: Vec<String> = seq.indices().iter().map(|i| i.to_string()).collect();
            println!("delete positions: {}", positions.join(" "));
        }
    }
    Ok(())
}

fn cmd_profile(cli: &Cli, alphabet: &Alphabet, word: &str, n: usize) -> Result<(), Failure> {
    let word = parse_word(word, alphabet)?;
    let profile = distortion_profile(&word, n);
    if cli.json {
        println!("{}", json!({"word": word.to_string(), "profile": profile}));
    } else {
        let parts: Vec<String> = profile.iter().map(|v| v.to_string()).collect();
        println!("{}", parts.join(" "));
    }
    Ok(())
}

fn report_json(report: &IsometryReport) -> serde_json::Value {
    json!({
        "pairs_checked": report.pairs_checked,
        "exact": report.is_exact(),
        "violations": report.violations.iter().map(|v| json!({
            "lhs": v.lhs, "rhs": v.rhs, "expected": v.expected, "actual": v.actual,
        })).collect::<Vec<_>>(),
    })
}

fn finish_verification(
    cli: &Cli,
    entries: Vec<(String, String)>,
    report: Option<IsometryReport>,
) -> Result<(), Failure> {
    if cli.json {
        println!(
            "{}",
            json!({
                "images": entries.iter().map(|(v, w)| json!({"vertex": v, "image": w})).collect::<Vec<_>>(),
                "report": report.as_ref().map(report_json),
            })
        );
    } else {
        for (vertex, word) in &entries {
            println!("{vertex} -> {word}");
        }
        if let Some(report) = &report {
            if report.is_exact() {
                println!("verified: {} pairs exact", report.pairs_checked);
            } else {
                for v in &report.violations {
                    println!(
                        "violation: d({}, {}) = {} expected {}",
                        v.lhs, v.rhs, v.actual, v.expected
                    );
                }
            }
        }
    }
    if report.is_some_and(|r| !r.is_exact()) {
        return Err(fail(1, "distance verification failed"));
    }
    Ok(())
}

fn cmd_embed(cli: &Cli, args: &EmbedArgs) -> Result<(), Failure> {
    match (args.cube, &args.tree) {
        (Some(dim), None) => {
            let embedding = CubeEmbedding::build(dim)?;
            let entries: Vec<(String, String)> = embedding
                .vertices()
                .map(|v| {
                    let word = embedding.embed(&v).expect("own vertices in range");
                    (v.to_string(), word.to_string())
                })
                .collect();
            let report = args
                .verify
                .then(|| embedding.verify_isometry(cli.jobs, args.slow))
                .transpose()?;
            finish_verification(cli, entries, report)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| fail(2, format!("cannot read {}: {e}", path.display())))?;
            let edges = parse_tree_file(&text)?;
            let embedding = TreeEmbedding::build(&edges, args.root)?;
            let entries: Vec<(String, String)> = embedding
                .vertices()
                .iter()
                .map(|&v| {
                    (
                        v.to_string(),
                        embedding.cube_vertex(v).expect("mapped").to_string(),
                    )
                })
                .collect();
            let report = args
                .verify
                .then(|| embedding.verify_isometry(cli.jobs))
                .transpose()?;
            finish_verification(cli, entries, report)
        }
        _ => Err(fail(2, "pass either a tree file or --cube DIM")),
    }
}

fn parse_word_list(text: &str, alphabet: &Alphabet) -> Result<Vec<Word>, Failure> {
    text.split(',')
        .map(|part| parse_word(part, alphabet))
        .collect()
}

fn cmd_qm(cli: &Cli, alphabet: &Alphabet, args: &QmArgs) -> Result<(), Failure> {
    if let Some(dual) = &args.dual {
        let qs = parse_word_list(&dual[0], alphabet)?
            .into_iter()
            .map(BrooksQuasimorphism::new)
            .collect::<Result<Vec<_>, _>>()?;
        let gs = parse_word_list(&dual[1], alphabet)?;
        if let Some(kvec_text) = &args.sandwich {
            let kvec: Vec<i64> = kvec_text
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| fail(2, format!("bad exponent {t:?}")))
                })
                .collect::<Result<_, _>>()?;
            if kvec.len() != gs.len() {
                return Err(fail(2, "need one exponent per element"));
            }
            let c =
                parse_rational(args.c.as_deref().ok_or_else(|| fail(2, "--sandwich needs --c"))?)?;
            let d =
                parse_rational(args.d.as_deref().ok_or_else(|| fail(2, "--sandwich needs --d"))?)?;
            let matrix = dual_family_check(&qs, &gs)?;
            let identity = matrix.iter().enumerate().all(|(i, row)| {
                row.iter()
                    .enumerate()
                    .all(|(j, v)| *v == Rational64::from_integer(i64::from(i == j)))
            });
            if !identity {
                return Err(fail(2, "the family is not dual: matrix is not the identity"));
            }
            let holds = qi_sandwich_check(&gs, &kvec, c, d)?;
            if cli.json {
                println!(
                    "{}",
                    json!({"kvec": kvec, "c": c.to_string(), "d": d.to_string(), "holds": holds})
                );
            } else {
                println!("{}", if holds { "holds" } else { "violated" });
            }
            if !holds {
                return Err(fail(1, "sandwich inequality violated"));
            }
            return Ok(());
        }
        let matrix = dual_family_check(&qs, &gs)?;
        if cli.json {
            let rows: Vec<Vec<String>> = matrix
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect())
                .collect();
            println!("{}", json!({"matrix": rows}));
        } else {
            for row in &matrix {
                let parts: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                println!("{}", parts.join(" "));
            }
        }
        return Ok(());
    }

    let pattern = args
        .pattern
        .as_deref()
        .ok_or_else(|| fail(2, "a pattern word is required"))?;
    let q = BrooksQuasimorphism::new(parse_word(pattern, alphabet)?)?;
    if let Some(target) = &args.homogenize {
        let g = parse_word(target, alphabet)?;
        let value = q.homogenized_value(&g)?;
        if cli.json {
            println!(
                "{}",
                json!({"pattern": pattern, "word": g.to_string(), "homogenized": value.to_string()})
            );
        } else {
            println!("{value}");
        }
        return Ok(());
    }
    let word = args
        .word
        .as_deref()
        .ok_or_else(|| fail(2, "pass a word to evaluate or --homogenize/--dual"))?;
    let w = parse_word(word, alphabet)?;
    let value = q.value(&w);
    if cli.json {
        println!(
            "{}",
            json!({"pattern": pattern, "word": w.to_string(), "value": value})
        );
    } else {
        println!("{value}");
    }
    Ok(())
}

fn cmd_bench(cli: &Cli, alphabet: &Alphabet, args: &BenchArgs) -> Result<(), Failure> {
    let mut rows = Vec::new();
    for &n in &args.sizes {
        let word = Word::random(alphabet, n, cli.seed ^ n as u64, true);
        let mut runs: Vec<Duration> = (0..3)
            .map(|_| {
                let t = Instant::now();
                let table = NormTable::build(&word);
                let elapsed = t.elapsed();
                std::hint::black_box(table.norm());
                elapsed
            })
            .collect();
        runs.sort();
        let table = NormTable::build(&word);
        rows.push((n, runs[1], table.norm(), table.cell_count(), table.memory_bytes()));
    }
    if cli.json {
        let entries: Vec<serde_json::Value> = rows
            .iter()
            .enumerate()
            .map(|(i, &(n, median, norm, cells, bytes))| {
                json!({
                    "n": n,
                    "median_seconds": median.as_secs_f64(),
                    "norm": norm,
                    "table_cells": cells,
                    "table_bytes": bytes,
                    "ratio": (i > 0).then(|| median.as_secs_f64() / rows[i - 1].1.as_secs_f64()),
                })
            })
            .collect();
        println!("{}", json!({"rows": entries}));
    } else {
        println!(
            "{:>8} {:>14} {:>10} {:>12} {:>12} {:>8}",
            "n", "median", "norm", "cells", "bytes", "ratio"
        );
        for (i, &(n, median, norm, cells, bytes)) in rows.iter().enumerate() {
            let ratio = if i > 0 {
                format!("{:.2}", median.as_secs_f64() / rows[i - 1].1.as_secs_f64())
            } else {
                "-".to_string()
            };
            println!(
                "{n:>8} {:>14} {norm:>10} {cells:>12} {bytes:>12} {ratio:>8}",
                format!("{median:.3?}")
            );
        }
    }
    Ok(())
}

fn cmd_witness(cli: &Cli, args: &WitnessArgs) -> Result<(), Failure> {
    match args.which {
        WitnessKind::Lamplighter => {
            let ok = lamplighter_identity_check(args.n);
            if cli.json {
                println!("{}", json!({"witness": "lamplighter", "n": args.n, "ok": ok}));
            } else {
                println!("{}", if ok { "OK" } else { "FAILED" });
            }
            if !ok {
                return Err(fail(1, "lamplighter identity failed"));
            }
        }
        WitnessKind::Heisenberg => {
            let ok = heisenberg_identity_check(args.n);
            if cli.json {
                println!(
                    "{}",
                    json!({"witness": "heisenberg", "n": args.n, "ok": ok, "z_exponent": args.n})
                );
            } else if ok {
                println!("OK, z-exponent {}", args.n);
            } else {
                println!("FAILED");
            }
            if !ok {
                return Err(fail(1, "Heisenberg identity failed"));
            }
        }
        WitnessKind::Bs => {
            let p = args.p.ok_or_else(|| fail(2, "witness bs needs --p"))?;
            let q = args.q.ok_or_else(|| fail(2, "witness bs needs --q"))?;
            let report = bs_affine_check(p, q);
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "witness": "bs", "p": p, "q": q,
                        "relation_ok": report.relation_holds,
                        "commutator_exponent": report.commutator_exponent,
                    })
                );
            } else if report.relation_holds {
                println!("relation OK, commutator exponent {}", report.commutator_exponent);
            } else {
                println!("FAILED");
            }
            if !report.relation_holds {
                return Err(fail(1, "Baumslag-Solitar relation failed"));
            }
        }
    }
    Ok(())
}

//! `powersum`: batch front end.
//!
//! Exit codes: 0 success, 1 a check or verification failed, 2 usage or
//! input error.

use std::fs;
use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use powersum_core::algebra::{Polynomial, RationalFunction};
use powersum_core::bounds::{
    build_phi_system, default_place_set, gcd_bound, growth_check, instance_constants, subspace_verify,
    ConstantLedger,
};
use powersum_core::degenerate::{canonical_counterexample, planted_triples};
use powersum_core::expansion::{certify_square, Expansion};
use powersum_core::function_field::{lemma1_property_suite, sum_formula_suite};
use powersum_core::io::{parse_polynomial, poly_to_json, parse_spec, spec_to_json, SequenceSpec};
use powersum_core::power_sum::PowerSum;
use powersum_core::sampling;
use powersum_core::search::{search, verify_triple};
use powersum_core::{Error, Result};

#[derive(Parser)]
#[command(name = "powersum", version, about = "Diophantine triples in polynomial power sums")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(clap::Args)]
struct SeqArgs {
    /// Sequence spec file (JSON).
    #[arg(long)]
    seq: PathBuf,
    /// Shift polynomial; overrides the file's `p`. Defaults to 0.
    #[arg(long)]
    p: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the dominant-root and non-square hypotheses.
    Check(SeqArgs),
    /// Exhaustive triple search up to an index bound.
    Search {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        max_index: u64,
        #[arg(long, default_value_t = 0)]
        min_index: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Build the degenerate counterexample and report its constraints.
    Degenerate {
        /// Write the resulting sequence (with p = 1) to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Also list the planted triples up to this index.
        #[arg(long, default_value_t = 8)]
        max_index: u64,
    },
    /// Terms of the square-root expansion with certified bounds.
    Expand {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        n: u64,
        #[arg(long = "J", default_value_t = 2)]
        j: u32,
    },
    /// Constant ledger, gcd and growth checks, optional subspace checks.
    Bounds {
        #[command(flatten)]
        seq: SeqArgs,
        /// Search bound for the triples to check.
        #[arg(long, default_value_t = 8)]
        max_index: u64,
        /// Also build phi-systems of this truncation order and verify
        /// the subspace inequality on them.
        #[arg(long = "phi-J")]
        phi_j: Option<u32>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Seeded height and sum-formula suites.
    Heights {
        /// Number of random pairs.
        #[arg(long, default_value_t = 200)]
        suite: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print every assertion record as JSON lines.
        #[arg(long)]
        records: bool,
    },
}

fn load(args: &SeqArgs) -> Result<(PowerSum, Polynomial)> {
    let text = fs::read_to_string(&args.seq)
        .map_err(|e| Error::parse(args.seq.display().to_string(), e.to_string()))?;
    let SequenceSpec { seq, p, .. } = parse_spec(&text)?;
    let p = match &args.p {
        Some(text) => parse_polynomial(text)?,
        None => p.unwrap_or_else(Polynomial::zero),
    };
    Ok((seq, p))
}

/// Writes to stdout; a closed pipe (e.g. `| head`) ends the process quietly.
fn out(text: &str) {
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
        if e.kind() == ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}

fn print_json(v: &Value) {
    out(&format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")));
}

fn table(header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        out(&format!("{}\n", parts.join("\t").trim_end()));
    };
    line(header.to_vec());
    for r in rows {
        line(r.iter().map(String::as_str).collect());
    }
}

fn cmd_check(fmt: Format, args: &SeqArgs) -> Result<bool> {
    let (seq, p) = load(args)?;
    let hyp = seq.check_hypotheses();
    let constants = seq.constants(&p).ok();
    match fmt {
        Format::Json => print_json(&json!({
            "pass": hyp.pass,
            "hypotheses": hyp,
            "failures": hyp.failures(),
            "constants": constants,
        })),
        Format::Table => table(
            &["hypothesis", "holds", "detail"],
            &[
                vec!["dominant_root".into(), hyp.dominant_root.to_string(), hyp.dominant_root_detail.clone()],
                vec!["f1_not_square".into(), (!hyp.f1_is_square).to_string(), String::new()],
                vec!["f1_alpha1_not_square".into(), (!hyp.f1_alpha1_is_square).to_string(), String::new()],
            ],
        ),
    }
    Ok(hyp.pass)
}

fn cmd_search(fmt: Format, args: &SeqArgs, max: u64, min: u64, jobs: usize) -> Result<bool> {
    let (seq, p) = load(args)?;
    let out = search(&seq, &p, max, min, jobs);
    let ok = out.solutions.iter().all(|s| verify_triple(s, &seq, &p));
    match fmt {
        Format::Json => print_json(&json!({
            "solutions": out.solutions.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
            "skipped": out.skipped,
        })),
        Format::Table => table(
            &["x", "y", "z", "a", "b", "c"],
            &out.solutions
                .iter()
                .map(|s| {
                    vec![
                        s.x.to_string(),
                        s.y.to_string(),
                        s.z.to_string(),
                        s.a.to_string(),
                        s.b.to_string(),
                        s.c.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    }
    Ok(ok)
}

fn cmd_degenerate(fmt: Format, emit: Option<&PathBuf>, max: u64) -> Result<bool> {
    let spec = canonical_counterexample();
    let one = Polynomial::one();
    if let Some(path) = emit {
        let text = serde_json::to_string_pretty(&spec_to_json(&spec.g, Some(&one))).expect("serializable");
        fs::write(path, text + "\n").map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?;
    }
    let planted = planted_triples(&spec, max)?;
    match fmt {
        Format::Json => print_json(&json!({
            "constraints": spec.constraints,
            "hypotheses": spec.hypotheses,
            "order": spec.g.order(),
            "planted": planted
                .iter()
                .map(|t| json!({"x": t.x, "y": t.y, "z": t.z,
                    "a": poly_to_json(&t.a), "b": poly_to_json(&t.b), "c": poly_to_json(&t.c)}))
                .collect::<Vec<_>>(),
        })),
        Format::Table => table(
            &["constraint", "pass", "detail"],
            &spec
                .constraints
                .iter()
                .map(|c| vec![c.name.to_string(), c.pass.to_string(), c.detail.clone()])
                .collect::<Vec<_>>(),
        ),
    }
    Ok(spec.valid())
}

fn cmd_expand(fmt: Format, args: &SeqArgs, n: u64, j: u32) -> Result<bool> {
    let (seq, p) = load(args)?;
    let exp = Expansion::new(&seq, &p, n)?;
    let terms = exp.head(j)?;
    let cert = certify_square(&seq, &p, n, j)?;
    match fmt {
        Format::Json => print_json(&json!({
            "n": n,
            "J": j,
            "constants": exp.constants(),
            "terms": terms
                .iter()
                .map(|t| json!({
                    "h": t.index.0,
                    "value": t.value.to_string(),
                    "valuation": t.valuation.to_string(),
                    "certified_bound": t.certified_bound,
                }))
                .collect::<Vec<_>>(),
            "square_certificate": cert,
        })),
        Format::Table => table(
            &["h", "valuation", "bound", "term"],
            &terms
                .iter()
                .map(|t| {
                    vec![
                        t.index.to_string(),
                        t.valuation.to_string(),
                        t.certified_bound.to_string(),
                        t.value.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    }
    Ok(cert.pass)
}

fn cmd_bounds(fmt: Format, args: &SeqArgs, max: u64, phi_j: Option<u32>, jobs: usize) -> Result<bool> {
    let (seq, p) = load(args)?;
    let hyp = seq.check_hypotheses();
    if !hyp.pass {
        print_json(&json!({ "hypotheses": hyp, "refused": hyp.failures() }));
        return Ok(false);
    }
    let ledger = ConstantLedger::new(&seq, &p)?;
    let found = search(&seq, &p, max, ledger.sequence.n0, jobs);
    let mut ok = true;
    let mut reports = Vec::new();
    let mut rows = Vec::new();
    for sol in &found.solutions {
        let (_, gcd) = gcd_bound(&seq, &p, sol.y, sol.z)?;
        let growth = growth_check(&ledger, sol.x, sol.z);
        let identity = sol.certificate.fixed_x_identity;
        let mut entry = json!({
            "indices": [sol.x, sol.y, sol.z],
            "fixed_x_identity": identity,
            "gcd": gcd,
            "growth": growth,
        });
        ok &= identity && gcd.pass && growth;
        let mut subspace_pass = String::from("-");
        if let Some(j) = phi_j {
            let sys = build_phi_system(&seq, &p, sol.indices(), j, Some(sol))?.grouped()?;
            let elems = sys.elements();
            let places = default_place_set(&elems)?;
            let rep = subspace_verify(&elems, &places, 0)?;
            ok &= rep.pass;
            subspace_pass = rep.pass.to_string();
            entry["instance_constants"] = json!(instance_constants(&seq, &p, sol, Some(&rep)));
            entry["subspace"] = json!(rep);
            entry["phi_count"] = json!(sys.len());
            entry["unit_dropped"] = json!(sys.unit_dropped);
        } else {
            entry["instance_constants"] = json!(instance_constants(&seq, &p, sol, None));
        }
        rows.push(vec![
            format!("({},{},{})", sol.x, sol.y, sol.z),
            format!("{} <= {}", gcd.deg_g, powersum_core::io::rational_to_string(&gcd.bound)),
            growth.to_string(),
            identity.to_string(),
            subspace_pass,
        ]);
        reports.push(entry);
    }
    match fmt {
        Format::Json => print_json(&json!({ "pass": ok, "ledger": ledger.to_json(), "triples": reports })),
        Format::Table => {
            let entries: Vec<Vec<String>> = ledger
                .entries()
                .into_iter()
                .map(|e| vec![e.name.to_string(), e.value, e.derivation])
                .collect();
            table(&["constant", "value", "derivation"], &entries);
            out("\n");
            table(&["indices", "gcd degree", "growth", "identity", "subspace"], &rows);
        }
    }
    Ok(ok)
}

fn cmd_heights(fmt: Format, count: usize, seed: u64, records: bool) -> Result<bool> {
    let pairs = sampling::random_pairs(seed, count);
    let outer = Polynomial::from_ints(&[1, -2, 0, 1]);
    let lemma = lemma1_property_suite(&pairs, &outer)?;
    let singles: Vec<RationalFunction> = pairs.iter().map(|(f, _)| f.clone()).collect();
    let sums = sum_formula_suite(&singles)?;
    if records {
        out(&format!("{}{}", lemma.to_json_lines(), sums.to_json_lines()));
    }
    let pass = lemma.all_pass() && sums.all_pass();
    match fmt {
        Format::Json => print_json(&json!({
            "seed": seed,
            "pairs": count,
            "lemma1": {"passed": lemma.passed(), "failed": lemma.failed(), "first_failure": lemma.first_failure()},
            "sum_formula": {"passed": sums.passed(), "failed": sums.failed(), "first_failure": sums.first_failure()},
            "pass": pass,
        })),
        Format::Table => table(
            &["suite", "passed", "failed"],
            &[
                vec!["lemma1".into(), lemma.passed().to_string(), lemma.failed().to_string()],
                vec!["sum_formula".into(), sums.passed().to_string(), sums.failed().to_string()],
            ],
        ),
    }
    Ok(pass)
}

fn run(cli: &Cli) -> Result<bool> {
    let fmt = cli.format;
    match &cli.command {
        Command::Check(args) => cmd_check(fmt, args),
        Command::Search {
            seq,
            max_index,
            min_index,
            jobs,
        } => cmd_search(fmt, seq, *max_index, *min_index, *jobs),
        Command::Degenerate { emit, max_index } => cmd_degenerate(fmt, emit.as_ref(), *max_index),
        Command::Expand { seq, n, j } => cmd_expand(fmt, seq, *n, *j),
        Command::Bounds {
            seq,
            max_index,
            phi_j,
            jobs,
        } => cmd_bounds(fmt, seq, *max_index, *phi_j, *jobs),
        Command::Heights { suite, seed, records } => cmd_heights(fmt, *suite, *seed, *records),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

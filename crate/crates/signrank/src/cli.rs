//! Subcommands. Every command renders the same data as text or JSON.
//!
//! Exit status: 0 when the command succeeded or the decision is positive,
//! 1 for a negative decision, 2 for unusable input.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use signrank_core::chain::{
    minrank_le2_strict, minrank_le_r_small, verify_rank2_witness, ChainFailure, Rank2Decision,
    Rank2Witness, RowSet,
};
use signrank_core::genreduce::{
    minrank_le2, reduce_generalized, Minrank2Answer, ReductionFailure, ReductionOutcome,
    TraceStep,
};
use signrank_core::geometry::enumerate_covectors;
use signrank_core::matroid::{
    cell_matrix, region_matrix, reconstruct_from_c2, verify_rank3_witness,
    ArrangementMatrix, PointLineRealization,
};
use signrank_core::maxrank::{maxrank, NonzeroBipartiteGraph};
use signrank_core::oracle::{Minrank2Oracle, DEFAULT_ROW_LIMIT};
use signrank_core::random::random_threshold_matrix;
use signrank_core::{Sign, SignMatrix, SignVector};
use thiserror::Error;

use crate::formats::{self, format_rational, FormatError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NO: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "signrank", version, about = "Minimum rank of sign pattern matrices")]
pub struct Cli {
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest row count the brute-force oracle accepts.
    #[arg(long, global = true, default_value_t = DEFAULT_ROW_LIMIT,
          value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub limit: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Main,
    Main2,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide minrank <= 2 and print a witness or the reason it fails.
    Minrank2 { matrix: PathBuf },
    /// Decide minrank <= r for r = 0 or 1.
    MinrankSmall {
        #[arg(short, value_parser = clap::value_parser!(u8).range(0..=1))]
        r: u8,
        matrix: PathBuf,
    },
    /// Maximum rank over all realizations.
    Maxrank { matrix: PathBuf },
    /// Reduce a pattern with zeros to a strict one.
    Reduce { matrix: PathBuf },
    /// Vertex, edge and region covectors of an arrangement.
    Covectors { arrangement: PathBuf },
    /// Vertex and edge covectors from region covectors.
    Reconstruct { covectors: PathBuf },
    /// Sign matrix of an arrangement.
    ReduceArrangement {
        #[arg(value_enum)]
        construction: Construction,
        arrangement: PathBuf,
    },
    /// Check sign(P L) = S and rank(P L) <= 3.
    VerifyWitness {
        matrix: PathBuf,
        p: PathBuf,
        l: PathBuf,
    },
    /// Brute-force minrank <= 2.
    Oracle { matrix: PathBuf },
    /// Compare the fast deciders with the oracle on exhaustive small cases.
    Selftest {
        /// Also run every strict 4x4 matrix.
        #[arg(long)]
        full: bool,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error(transparent)]
    Core(#[from] signrank_core::Error),
}

/// Result of a command: status plus both renderings.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub status: u8,
    pub text: String,
    pub json: Value,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load<T>(path: &Path, parse: impl Fn(&str) -> Result<T, FormatError>) -> Result<T, CliError> {
    parse(&read(path)?).map_err(|source| CliError::Format {
        path: path.to_path_buf(),
        source,
    })
}

fn status(yes: bool) -> u8 {
    if yes {
        EXIT_OK
    } else {
        EXIT_NO
    }
}

fn rationals(v: &[signrank_core::Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn set_text(s: &RowSet) -> String {
    let items: Vec<String> = s.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn witness_output(w: &Rank2Witness) -> (String, Value) {
    let mut text = format!(
        "x: {}\ny: {}\n",
        rationals(&w.x).join(" "),
        rationals(&w.y).join(" ")
    );
    let mut columns = Vec::new();
    for (j, (a, b)) in w.column_combos.iter().enumerate() {
        text.push_str(&format!("column {j}: {} {}\n", format_rational(a), format_rational(b)));
        columns.push(json!([format_rational(a), format_rational(b)]));
    }
    let value = json!({ "x": rationals(&w.x), "y": rationals(&w.y), "columns": columns });
    (text, value)
}

pub fn describe_chain_failure(f: &ChainFailure) -> String {
    match f {
        ChainFailure::MissingEmptySet => "the family lacks the empty set".into(),
        ChainFailure::MissingGroundSet => "the family lacks the full row set".into(),
        ChainFailure::OddSize(k) => format!("the family has odd size {k}"),
        ChainFailure::NotComplementClosed(s) => {
            format!("the complement of {} is missing", set_text(s))
        }
        ChainFailure::AmbiguousMinimum { step, candidates } => {
            let c: Vec<String> = candidates.iter().map(set_text).collect();
            format!("step {step}: incomparable minimal extensions {}", c.join(" "))
        }
        ChainFailure::EarlyGroundSet { length, expected } => {
            format!("the chain reached the full row set after {length} sets, {expected} needed")
        }
    }
}

fn list(v: &[usize]) -> String {
    let items: Vec<String> = v.iter().map(usize::to_string).collect();
    items.join(",")
}

pub fn describe_step(step: &TraceStep) -> String {
    match step {
        TraceStep::DroppedZeroRows(r) => format!("dropped zero rows {}", list(r)),
        TraceStep::DroppedZeroColumns(c) => format!("dropped zero columns {}", list(c)),
        TraceStep::Normalized {
            column,
            zeros,
            flipped_rows,
        } => format!(
            "moved column {column} to the front with {zeros} leading zeros, flipped rows [{}]",
            list(flipped_rows)
        ),
        TraceStep::PrefixFlipped {
            column,
            flipped_rows,
        } => format!("made column {column} positive on the zero prefix, flipped rows [{}]", list(flipped_rows)),
        TraceStep::MergedRows {
            column,
            kept,
            removed,
        } => format!("zeros of column {column}: kept row {kept}, removed rows [{}]", list(removed)),
        TraceStep::SplitColumn { column, zero_row } => {
            format!("split column {column} at its zero in row {zero_row}")
        }
    }
}

pub fn describe_failure(f: &ReductionFailure) -> String {
    match f {
        ReductionFailure::PrefixHasZero {
            normalized_column,
            column,
            rows,
        } => format!(
            "column {column} has zeros in rows [{}] inside the zero prefix of column {normalized_column}",
            list(rows)
        ),
        ReductionFailure::ZerosStraddlePrefix { column, rows } => format!(
            "zeros of column {column} in rows [{}] straddle the zero prefix",
            list(rows)
        ),
        ReductionFailure::ZeroRowsDiffer { column, rows } => {
            format!("rows [{}] vanish in column {column} but differ", list(rows))
        }
    }
}

fn trace_lines(outcome: &ReductionOutcome) -> Vec<String> {
    outcome.trace().steps.iter().map(describe_step).collect()
}

fn cmd_minrank2(s: &SignMatrix) -> Result<Output, CliError> {
    let answer = minrank_le2(s)?;
    let trace = trace_lines(answer.reduction());
    let mut text = String::new();
    let json = match &answer {
        Minrank2Answer::Yes { witness, .. } => {
            let (wt, wj) = witness_output(witness);
            text.push_str("YES\n");
            text.push_str(&wt);
            json!({ "decision": "yes", "witness": wj, "trace": trace })
        }
        Minrank2Answer::No {
            reduction,
            chain_failure,
        } => {
            text.push_str("NO\n");
            let reason = match (reduction, chain_failure) {
                (ReductionOutcome::GreaterThanTwo { failure, .. }, _) => {
                    format!("step {}: {}", failure.step(), describe_failure(failure))
                }
                (_, Some(f)) => format!("no 2-chain: {}", describe_chain_failure(f)),
                _ => "no 2-chain".into(),
            };
            text.push_str(&format!("reason: {reason}\n"));
            for line in &trace {
                text.push_str(&format!("trace: {line}\n"));
            }
            json!({ "decision": "no", "reason": reason, "trace": trace })
        }
    };
    Ok(Output {
        status: status(answer.is_yes()),
        text,
        json,
    })
}

fn cmd_reduce(s: &SignMatrix) -> Output {
    let outcome = reduce_generalized(s);
    let trace = trace_lines(&outcome);
    let mut text = String::new();
    for line in &trace {
        text.push_str(&format!("# {line}\n"));
    }
    let (status, json) = match &outcome {
        ReductionOutcome::Strict { matrix, .. } => {
            text.push_str(&matrix.to_text());
            (EXIT_OK, json!({ "outcome": "strict", "matrix": matrix.to_text(), "trace": trace }))
        }
        ReductionOutcome::AllZero { .. } => {
            text.push_str("ALL-ZERO\n");
            (EXIT_OK, json!({ "outcome": "all-zero", "trace": trace }))
        }
        ReductionOutcome::GreaterThanTwo { failure, .. } => {
            let reason = format!("step {}: {}", failure.step(), describe_failure(failure));
            text.push_str(&format!("GT2 {reason}\n"));
            (EXIT_NO, json!({ "outcome": "gt2", "reason": reason, "trace": trace }))
        }
    };
    Output { status, text, json }
}

fn covector_strings<'a>(it: impl IntoIterator<Item = &'a SignVector>) -> Vec<String> {
    it.into_iter().map(SignVector::to_string).collect()
}

fn section(text: &mut String, name: &str, items: &[String]) {
    text.push_str(&format!("{name} {}\n", items.len()));
    for v in items {
        text.push_str(v);
        text.push('\n');
    }
}

fn arrangement_matrix_output(m: &ArrangementMatrix) -> Output {
    let r = &m.realization;
    let p = formats::write_rational_matrix(r.p());
    let l = formats::write_rational_matrix(r.l());
    Output {
        status: EXIT_OK,
        text: m.matrix.to_text(),
        json: json!({ "matrix": m.matrix.to_text(), "points": p, "lines": l }),
    }
}

fn selftest(full: bool, seed: u64, limit: usize) -> Result<Output, CliError> {
    let mut oracle = Minrank2Oracle::new(limit.max(4));
    let mut text = String::new();
    let mut suites = Vec::new();
    let mut ok = true;
    let mut record = |name: &str, checked: usize, mismatches: usize| {
        text.push_str(&format!(
            "{} {name}: {checked} checked, {mismatches} mismatches\n",
            if mismatches == 0 { "PASS" } else { "FAIL" }
        ));
        suites.push(json!({ "suite": name, "checked": checked, "mismatches": mismatches }));
        ok &= mismatches == 0;
    };

    let mut strict = |m: usize, n: usize| -> Result<(usize, usize), CliError> {
        let mut bad = 0;
        for mask in 0u64..1 << (m * n) {
            let s = SignMatrix::from_fn(m, n, |i, j| {
                if mask >> (n * i + j) & 1 == 1 {
                    Sign::Minus
                } else {
                    Sign::Plus
                }
            })?;
            let fast = match minrank_le2_strict(&s)? {
                Rank2Decision::Realizable(w) => verify_rank2_witness(&s, &w)?,
                Rank2Decision::NotRealizable(_) => false,
            };
            bad += (fast != oracle.decide(&s, false)?) as usize;
        }
        Ok((1 << (m * n), bad))
    };
    let (c, b) = strict(3, 3)?;
    record("strict 3x3", c, b);
    if full {
        let (c, b) = strict(4, 4)?;
        record("strict 4x4", c, b);
    }

    let mut bad = 0;
    let mut checked = 0;
    for code in 0u32..3u32.pow(6) {
        let s = SignMatrix::from_fn(2, 3, |i, j| Sign::ALL[(code / 3u32.pow((3 * i + j) as u32) % 3) as usize])?;
        bad += (minrank_le2(&s)?.is_yes() != oracle.decide(&s, true)?) as usize;
        checked += 1;
    }
    if full {
        for code in 0u32..3u32.pow(9) {
            let s = SignMatrix::from_fn(3, 3, |i, j| Sign::ALL[(code / 3u32.pow((3 * i + j) as u32) % 3) as usize])?;
            bad += (minrank_le2(&s)?.is_yes() != oracle.decide(&s, true)?) as usize;
            checked += 1;
        }
    }
    record(if full { "generalized 2x3 and 3x3" } else { "generalized 2x3" }, checked, bad);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for _ in 0..200 {
        let s = random_threshold_matrix(&mut rng, 8, 12);
        bad += (!minrank_le2_strict(&s)?.is_realizable()) as usize;
    }
    record("threshold positives", 200, bad);

    Ok(Output {
        status: status(ok),
        text,
        json: json!({ "passed": ok, "suites": suites }),
    })
}

fn execute(cli: &Cli) -> Result<Output, CliError> {
    let matrix = |p: &Path| load(p, formats::parse_sign_matrix);
    Ok(match &cli.command {
        Command::Minrank2 { matrix: p } => cmd_minrank2(&matrix(p)?)?,
        Command::MinrankSmall { r, matrix: p } => {
            let yes = minrank_le_r_small(&matrix(p)?, *r as usize)?;
            Output {
                status: status(yes),
                text: format!("{}\n", if yes { "YES" } else { "NO" }),
                json: json!({ "r": r, "decision": if yes { "yes" } else { "no" } }),
            }
        }
        Command::Maxrank { matrix: p } => {
            let s = matrix(p)?;
            let matching = NonzeroBipartiteGraph::new(&s).maximum_matching();
            let mut text = format!("{}\n", maxrank(&s));
            for (i, j) in &matching {
                text.push_str(&format!("match {i} {j}\n"));
            }
            Output {
                status: EXIT_OK,
                text,
                json: json!({ "maxrank": matching.len(), "matching": matching }),
            }
        }
        Command::Reduce { matrix: p } => cmd_reduce(&matrix(p)?),
        Command::Covectors { arrangement } => {
            let arr = load(arrangement, formats::parse_arrangement)?;
            let cov = enumerate_covectors(&arr);
            let (c0, c1, c2) = (
                covector_strings(&cov.c0),
                covector_strings(&cov.c1),
                covector_strings(&cov.c2),
            );
            let mut text = format!("counts {} {} {}\n", c0.len(), c1.len(), c2.len());
            section(&mut text, "C0", &c0);
            section(&mut text, "C1", &c1);
            section(&mut text, "C2", &c2);
            Output {
                status: EXIT_OK,
                text,
                json: json!({ "n": cov.n, "counts": [c0.len(), c1.len(), c2.len()],
                              "c0": c0, "c1": c1, "c2": c2 }),
            }
        }
        Command::Reconstruct { covectors } => {
            let (n, c2) = load(covectors, formats::parse_covectors)?;
            let r = reconstruct_from_c2(&c2, n)?;
            let (c0, c1) = (covector_strings(&r.c0), covector_strings(&r.c1));
            let mut text = String::new();
            section(&mut text, "C0", &c0);
            section(&mut text, "C1", &c1);
            Output {
                status: EXIT_OK,
                text,
                json: json!({ "n": n, "c0": c0, "c1": c1 }),
            }
        }
        Command::ReduceArrangement {
            construction,
            arrangement,
        } => {
            let arr = load(arrangement, formats::parse_arrangement)?;
            let m = match construction {
                Construction::Main => cell_matrix(&arr)?,
                Construction::Main2 => region_matrix(&arr)?,
            };
            arrangement_matrix_output(&m)
        }
        Command::VerifyWitness { matrix: mp, p, l } => {
            let s = matrix(mp)?;
            let p = load(p, formats::parse_rational_matrix)?;
            let l = load(l, formats::parse_rational_matrix)?;
            let ok = verify_rank3_witness(&s, &PointLineRealization::new(p, l)?)?;
            Output {
                status: status(ok),
                text: format!("{}\n", if ok { "VALID" } else { "INVALID" }),
                json: json!({ "valid": ok }),
            }
        }
        Command::Oracle { matrix: p } => {
            let yes = Minrank2Oracle::new(cli.limit).decide(&matrix(p)?, true)?;
            Output {
                status: status(yes),
                text: format!("{}\n", if yes { "YES" } else { "NO" }),
                json: json!({ "decision": if yes { "yes" } else { "no" } }),
            }
        }
        Command::Selftest { full } => selftest(*full, cli.seed, cli.limit)?,
    })
}

/// Runs `cli`, writing the result to `out` and diagnostics to `err`.
pub fn run(cli: &Cli, out: &mut impl Write, err: &mut impl Write) -> u8 {
    match execute(cli) {
        Ok(o) => {
            let written = match cli.format {
                Format::Text => out.write_all(o.text.as_bytes()),
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("json")),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: cannot write output: {e}");
                return EXIT_INPUT;
            }
            o.status
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

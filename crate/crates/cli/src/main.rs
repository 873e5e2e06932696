//! Command-line front end: validation, enumeration, localization, gluing,
//! compatibility checking, membership tests and oracle sweeps over the JSON
//! formats of the core library.
//!
//! Exit codes: 0 for ok, 1 for violations or false verdicts, 2 for input and
//! configuration errors. Output is deterministic for fixed inputs.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use cotilt::charseq::Verdict;
use cotilt::error::Error;
use cotilt::family::FamilyVerdict;
use cotilt::json as wire;
use cotilt::membership::{cotilting_membership, tilting_membership, ZModuleArg};
use cotilt::oracle::SweepReport;
use cotilt::ring::PrimeIdeal;

#[derive(Parser)]
#[command(name = "cotilt", version, about = "Characteristic sequences over prime spectra: validate, localize, glue, enumerate, and verify")]
struct Cli {
    /// Emit machine-readable JSON instead of human-readable lines
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArg {
    /// Path to a JSON document
    file: Option<PathBuf>,
    /// Inline JSON instead of a file
    #[arg(long, conflicts_with = "file")]
    inline: Option<String>,
}

impl InputArg {
    fn read(&self) -> Result<String, Error> {
        match (&self.file, &self.inline) {
            (Some(path), None) => std::fs::read_to_string(path)
                .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display()))),
            (None, Some(text)) => Ok(text.clone()),
            _ => Err(Error::Input("provide a file path or --inline JSON".into())),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the three characteristic-sequence clauses on a sequence document
    Validate(InputArg),
    /// List every characteristic sequence of a given length over a synthetic ring
    Enumerate {
        #[command(flatten)]
        input: InputArg,
        /// Sequence length
        #[arg(short)]
        n: usize,
        /// Print only the number of sequences
        #[arg(long)]
        count: bool,
    },
    /// Count characteristic sequences (shorthand for enumerate --count)
    Count {
        #[command(flatten)]
        input: InputArg,
        #[arg(short)]
        n: usize,
    },
    /// Localize a sequence at a maximal ideal
    Localize {
        #[command(flatten)]
        input: InputArg,
        /// The maximal ideal, e.g. "(2)" over Z or a node label
        #[arg(long)]
        at: String,
    },
    /// Glue a compatible family back into a characteristic sequence
    Glue(InputArg),
    /// Validate every local sequence of a family and their pairwise agreement
    CheckFamily(InputArg),
    /// Test membership of a module in the class of a sequence
    Member {
        /// Module JSON document
        #[arg(long)]
        module: PathBuf,
        /// Sequence JSON document
        #[arg(long)]
        seq: PathBuf,
        /// Which side of the correspondence to test
        #[arg(long, value_parser = ["cotilting", "tilting"])]
        side: String,
    },
    /// Exhaustive and randomized verification sweeps
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Base-change isomorphisms on p-group pairs, both computation routes
    Cartanei {
        #[arg(long, value_parser = ["a", "b"])]
        part: String,
        #[arg(long, default_value_t = 32)]
        max_order: u64,
        #[arg(long, value_delimiter = ',', default_values_t = vec![2u64, 3])]
        primes: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_values_t = vec![1u32, 2])]
        degrees: Vec<u32>,
    },
    /// Colocalization of duals against duals of localizations
    DualColoc {
        #[arg(long, default_value_t = 64)]
        max_order: u64,
        #[arg(long, value_delimiter = ',', default_values_t = vec![2u64, 3, 5])]
        primes: Vec<u64>,
    },
    /// Closed-form colocalization against the stabilized inverse-limit model
    ColocLimit {
        #[arg(long, default_value_t = 256)]
        max_order: u64,
        #[arg(long, value_delimiter = ',', default_values_t = vec![2u64, 3, 5])]
        primes: Vec<u64>,
    },
    /// Bass numbers of Z recomputed through Ext over the localizations
    Bass {
        #[arg(long, value_delimiter = ',', default_values_t = vec![2u64, 3, 5, 7])]
        primes: Vec<u64>,
    },
    /// Smith normal form on random matrices: transforms, divisibility, minors
    Snf {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Maximum dimension of the random matrices
        #[arg(long, default_value_t = 6)]
        size: usize,
        /// Seed for the randomized sweep
        #[arg(long, default_value_t = 0xC07117)]
        seed: u64,
    },
}

struct Report {
    exit: u8,
    lines: Vec<String>,
    payload: Value,
}

impl Report {
    fn ok(lines: Vec<String>, payload: Value) -> Report {
        Report { exit: 0, lines, payload }
    }

    fn violation(lines: Vec<String>, payload: Value) -> Report {
        Report { exit: 1, lines, payload }
    }
}

fn verdict_json(v: &Verdict) -> Value {
    json!({
        "violations": v.violations.iter().map(|viol| json!({
            "clause": viol.clause.label(),
            "index": viol.index,
            "witness": viol.witness.as_ref().map(|p| p.to_string()),
            "detail": viol.detail,
        })).collect::<Vec<_>>(),
        "notes": v.notes,
    })
}

fn family_verdict_json(v: &FamilyVerdict) -> Value {
    json!({
        "local": v.local_failures.iter().map(|(m, is_default, verdict)| json!({
            "maximal": m.to_string(),
            "default_class": is_default,
            "verdict": verdict_json(verdict),
        })).collect::<Vec<_>>(),
        "pairs": v.pair_violations.iter().map(|p| json!({
            "index": p.index,
            "first": p.first.to_string(),
            "second": p.second.to_string(),
            "witness": p.witness.to_string(),
        })).collect::<Vec<_>>(),
    })
}

fn sweep_report(name: &str, report: &SweepReport) -> Report {
    let payload = json!({
        "status": if report.all_passed() { "ok" } else { "violation" },
        "oracle": name,
        "checked": report.checked,
        "failures": report.failures,
    });
    let mut lines = vec![format!("{name}: checked {} instances", report.checked)];
    if report.all_passed() {
        lines.push("all passed".into());
        Report::ok(lines, payload)
    } else {
        lines.extend(report.failures.iter().map(|f| format!("FAIL {f}")));
        Report::violation(lines, payload)
    }
}

fn run(cli: &Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::Validate(input) => {
            let seq = wire::parse_sequence(&input.read()?)?;
            let verdict = seq.validate()?;
            let payload = json!({
                "status": if verdict.is_ok() { "ok" } else { "violation" },
                "verdict": verdict_json(&verdict),
            });
            if verdict.is_ok() {
                let mut lines = vec!["ok".to_string()];
                lines.extend(verdict.notes.iter().map(|n| format!("note: {n}")));
                Ok(Report::ok(lines, payload))
            } else {
                let lines = verdict.violations.iter().map(|v| v.to_string()).collect();
                Ok(Report::violation(lines, payload))
            }
        }
        Command::Enumerate { input, n, count } => {
            let ring = wire::parse_ring(&input.read()?)?;
            enumerate_report(&ring, *n, *count)
        }
        Command::Count { input, n } => {
            let ring = wire::parse_ring(&input.read()?)?;
            enumerate_report(&ring, *n, true)
        }
        Command::Localize { input, at } => {
            let seq = wire::parse_sequence(&input.read()?)?;
            let m = seq.ring().parse_prime(at)?;
            let local = cotilt::family::localize_sequence(&seq, &m)?;
            let doc = wire::local_sequence_to_json(&local);
            let lines = local
                .levels()
                .iter()
                .enumerate()
                .map(|(i, l)| format!("P_{i} at {m}: {l}"))
                .collect();
            Ok(Report::ok(lines, json!({"status": "ok", "local": doc})))
        }
        Command::Glue(input) => {
            let family = wire::parse_family(&input.read()?)?;
            let verdict = cotilt::family::check_compatibility(&family)?;
            if !verdict.is_ok() {
                let lines = vec![format!("family is not compatible: {verdict}")];
                let payload = json!({
                    "status": "violation",
                    "verdict": family_verdict_json(&verdict),
                });
                return Ok(Report::violation(lines, payload));
            }
            let glued = cotilt::family::glue_family(&family)?;
            let doc = wire::sequence_to_json(&glued);
            let lines = glued
                .levels()
                .iter()
                .enumerate()
                .map(|(i, l)| format!("P_{i}: {l}"))
                .collect();
            Ok(Report::ok(lines, json!({"status": "ok", "sequence": doc})))
        }
        Command::CheckFamily(input) => {
            let family = wire::parse_family(&input.read()?)?;
            let verdict = cotilt::family::check_compatibility(&family)?;
            let payload = json!({
                "status": if verdict.is_ok() { "ok" } else { "violation" },
                "verdict": family_verdict_json(&verdict),
            });
            if verdict.is_ok() {
                Ok(Report::ok(vec!["ok".into()], payload))
            } else {
                Ok(Report::violation(vec![verdict.to_string()], payload))
            }
        }
        Command::Member { module, seq, side } => {
            let module_text = std::fs::read_to_string(module)
                .map_err(|e| Error::Input(format!("cannot read {}: {e}", module.display())))?;
            let seq_text = std::fs::read_to_string(seq)
                .map_err(|e| Error::Input(format!("cannot read {}: {e}", seq.display())))?;
            let module = wire::parse_module(&module_text)?;
            let sequence = wire::parse_sequence(&seq_text)?;
            let member = match side.as_str() {
                "cotilting" => cotilting_membership(&module, &sequence)?,
                _ => match &module {
                    ZModuleArg::Fg(m) => tilting_membership(m, &sequence)?,
                    ZModuleArg::Matlis(_) => {
                        return Err(Error::Input(
                            "the tilting-side test takes a finitely generated module".into(),
                        ))
                    }
                },
            };
            let payload = json!({
                "status": if member { "ok" } else { "violation" },
                "side": side,
                "module": format!("{module}"),
                "member": member,
            });
            let line = format!("{module} is{} in the {side} class", if member { "" } else { " not" });
            if member {
                Ok(Report::ok(vec![line], payload))
            } else {
                Ok(Report::violation(vec![line], payload))
            }
        }
        Command::Oracle(oracle) => run_oracle(oracle),
    }
}

fn enumerate_report(ring: &cotilt::ring::Ring, n: usize, count_only: bool) -> Result<Report, Error> {
    if count_only {
        let count = cotilt::charseq::count_sequences(ring, n)?;
        return Ok(Report::ok(
            vec![count.to_string()],
            json!({"status": "ok", "count": count}),
        ));
    }
    let sequences: Vec<_> = cotilt::charseq::enumerate_sequences(ring, n)?.collect();
    let docs: Vec<_> = sequences.iter().map(wire::sequence_to_json).collect();
    let mut lines = Vec::new();
    for (idx, seq) in sequences.iter().enumerate() {
        let levels: Vec<String> = seq.levels().iter().map(|l| l.to_string()).collect();
        lines.push(format!("#{idx}: [{}]", levels.join(", ")));
    }
    lines.push(format!("total: {}", sequences.len()));
    let payload = json!({
        "status": "ok",
        "count": sequences.len(),
        "sequences": serde_json::to_value(docs).expect("sequence documents serialize"),
    });
    Ok(Report::ok(lines, payload))
}

fn run_oracle(cmd: &OracleCommand) -> Result<Report, Error> {
    match cmd {
        OracleCommand::Cartanei { part, max_order, primes, degrees } => {
            let part = cotilt::oracle::CartaneiPart::parse(part)?;
            let report = cotilt::oracle::cartanei_sweep(part, *max_order, primes, degrees)?;
            Ok(sweep_report("cartanei", &report))
        }
        OracleCommand::DualColoc { max_order, primes } => {
            let report = cotilt::oracle::dual_coloc_sweep(*max_order, primes)?;
            Ok(sweep_report("dual-coloc", &report))
        }
        OracleCommand::ColocLimit { max_order, primes } => {
            let report = cotilt::oracle::coloc_limit_sweep(*max_order, primes)?;
            Ok(sweep_report("coloc-limit", &report))
        }
        OracleCommand::Bass { primes } => {
            let mut report = SweepReport::default();
            for &p in primes {
                let prime = PrimeIdeal::IntegerPrime(p);
                for (i, expected) in [(0u32, 0usize), (1, 1)] {
                    report.checked += 1;
                    let got = cotilt::zmodule::bass_number_oracle(&prime, i)?;
                    if got != expected {
                        report.failures.push(format!("mu_{i}(({p}), Z) = {got}, expected {expected}"));
                    }
                }
            }
            report.checked += 1;
            let zero = cotilt::zmodule::bass_number_oracle(&PrimeIdeal::Zero, 0)?;
            if zero != 1 {
                report.failures.push(format!("mu_0((0), Z) = {zero}, expected 1"));
            }
            Ok(sweep_report("bass", &report))
        }
        OracleCommand::Snf { trials, size, seed } => Ok(snf_sweep(*trials, *size, *seed)),
    }
}

fn snf_sweep(trials: usize, size: usize, seed: u64) -> Report {
    use num_bigint::BigInt;
    use num_traits::{One, Signed, Zero};
    use rand::{Rng, SeedableRng};

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut report = SweepReport::default();
    for trial in 0..trials {
        let rows = rng.gen_range(1..=size.max(1));
        let cols = rng.gen_range(1..=size.max(1));
        let a = cotilt::matrix::IntMatrix::from_fn(rows, cols, |_, _| {
            BigInt::from(rng.gen_range(-50i64..=50))
        });
        let snf = cotilt::matrix::smith_normal_form(&a);
        report.checked += 1;
        let mut problems = Vec::new();
        if snf.u.mul(&a).mul(&snf.v) != snf.d {
            problems.push("U*A*V != D");
        }
        if snf.u.determinant().abs() != BigInt::one() || snf.v.determinant().abs() != BigInt::one() {
            problems.push("transforms are not unimodular");
        }
        let diag = snf.diagonal();
        for i in 0..diag.len() {
            if diag[i].is_negative() {
                problems.push("negative invariant factor");
            }
            if i + 1 < diag.len() && !diag[i].is_zero() && !(&diag[i + 1] % &diag[i]).is_zero() {
                problems.push("divisibility chain broken");
            }
        }
        if !problems.is_empty() {
            report.failures.push(format!("trial {trial}: {}", problems.join(", ")));
        }
    }
    sweep_report("snf", &report)
}

/// Prints without panicking when the reader closed the pipe early.
fn emit(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                emit(&serde_json::to_string_pretty(&report.payload).expect("payload serializes"));
            } else {
                for line in &report.lines {
                    emit(line);
                }
            }
            ExitCode::from(report.exit)
        }
        Err(Error::Precondition(msg)) => {
            if cli.json {
                let payload = json!({"status": "violation", "error": msg});
                emit(&serde_json::to_string_pretty(&payload).expect("payload serializes"));
            } else {
                eprintln!("{msg}");
            }
            ExitCode::from(1)
        }
        Err(err) => {
            if cli.json {
                let payload = json!({"status": "error", "error": err.to_string()});
                emit(&serde_json::to_string_pretty(&payload).expect("payload serializes"));
            } else {
                eprintln!("{err}");
            }
            ExitCode::from(2)
        }
    }
}

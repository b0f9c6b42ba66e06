//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when a counterexample or a
//! violated inequality is found, 2 for usage and input errors.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::approx::FourierSmoother;
use crate::arith::Modulus;
use crate::audit::{
    audit_kstar, audit_relation, audit_s0_s1, audit_star_sum, constants_ledger,
    theorem_lower_bound, AuditReport, Claim, LedgerEntry, RelationCombo,
};
use crate::error::Error;
use crate::zerosum::{
    enumerate_minimal_quadruples, enumerate_normalized_quadruples, verify_range, RangeOptions,
    VerifyMode, VerifyReport, ZSequence,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Jsonl,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "zsindex", version)]
#[command(about = "Index of zero-sum sequences over Z/n, conjecture verification and bound audits")]
pub struct RunConfig {
    /// Record format on stdout.
    #[arg(long = "output", value_enum, default_value_t, global = true)]
    pub output_format: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Index of one length-4 sequence.
    Index {
        #[arg(long)]
        n: u64,
        /// Four comma-separated entries in [1, n-1].
        #[arg(long, value_delimiter = ',', num_args = 1)]
        seq: Vec<u64>,
    },
    /// List the minimal zero-sum quadruples over Z/n.
    Enumerate {
        #[arg(long)]
        n: u64,
        /// Only sequences whose entries are units.
        #[arg(long)]
        coprime_only: bool,
        /// Only unit-normalized sequences containing 1 (implies coprime).
        #[arg(long)]
        normalized: bool,
    },
    /// Check that every relevant minimal quadruple has index 1.
    Verify(VerifyArgs),
    /// Audit an inequality on concrete instances.
    #[command(subcommand)]
    Audit(AuditCommand),
    /// Recompute the constants chain.
    Constants,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n_min: u64,
    #[arg(long)]
    pub n_max: u64,
    /// Worker threads (defaults to the available parallelism).
    #[arg(long, env = "ZSINDEX_WORKERS")]
    pub workers: Option<usize>,
    /// Append-only progress log; completed moduli are skipped on rerun.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Allow gcd(n, 6) != 1 and non-coprime entries.
    #[arg(long)]
    pub exploratory: bool,
}

#[derive(Debug, Subcommand)]
pub enum AuditCommand {
    /// |S0 - S1| against its envelope (H > 1000).
    S0s1 {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
        #[arg(long = "H")]
        h: u64,
    },
    /// Starred coefficient sum against its envelope.
    Starsum {
        #[arg(long)]
        n: u64,
        #[arg(long = "A", allow_negative_numbers = true)]
        big_a: i64,
        #[arg(long = "H")]
        h: u64,
    },
    /// Large-gcd partner k* of one k, by divisor search and full scan.
    Kstar {
        #[arg(long)]
        n: u64,
        #[arg(long = "A", allow_negative_numbers = true)]
        big_a: i64,
        #[arg(long = "H")]
        h: u64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// Eliminate a, b from the three-pair relation systems.
    Relations {
        /// Include the combinations excluded a priori.
        #[arg(long)]
        all: bool,
    },
    /// Exact S0 against the explicit lower bound.
    Theorem {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
        #[arg(long = "H")]
        h: u64,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

type Outcome = Result<i32, Failure>;

/// Emits records in the chosen format, one per line.
enum Sink<'w> {
    Json(&'w mut dyn Write),
    Csv(Box<csv::Writer<&'w mut dyn Write>>),
}

impl<'w> Sink<'w> {
    fn new(format: OutputFormat, out: &'w mut dyn Write, header: &[&str]) -> Result<Self, Failure> {
        Ok(match format {
            OutputFormat::Jsonl => Sink::Json(out),
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(header)?;
                Sink::Csv(Box::new(w))
            }
        })
    }

    fn emit<T: Serialize>(
        &mut self,
        record: &T,
        row: impl FnOnce() -> Vec<String>,
    ) -> Result<(), Failure> {
        match self {
            Sink::Json(out) => {
                serde_json::to_writer(&mut **out, record).map_err(io::Error::other)?;
                out.write_all(b"\n")?;
            }
            Sink::Csv(w) => w.write_record(row())?,
        }
        Ok(())
    }

    fn finish(self) -> Result<(), Failure> {
        match self {
            Sink::Json(out) => out.flush()?,
            Sink::Csv(mut w) => w.flush()?,
        }
        Ok(())
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&config, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: output: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let format = config.output_format;
    match &config.command {
        Command::Index { n, seq } => cmd_index(format, *n, seq, out),
        Command::Enumerate {
            n,
            coprime_only,
            normalized,
        } => cmd_enumerate(format, *n, *coprime_only, *normalized, out),
        Command::Verify(args) => cmd_verify(format, args, out, err),
        Command::Audit(cmd) => cmd_audit(format, cmd, out),
        Command::Constants => cmd_constants(format, out),
    }
}

fn seq_cell(seq: &[u64]) -> String {
    seq.iter().map(u64::to_string).collect::<Vec<_>>().join("-")
}

fn cmd_index(format: OutputFormat, n: u64, seq: &[u64], out: &mut dyn Write) -> Outcome {
    if seq.len() != 4 {
        return Err(Error::WrongLength {
            expected: 4,
            got: seq.len(),
        }
        .into());
    }
    let m = Modulus::new(n)?;
    let s = ZSequence::new(&m, seq.to_vec())?;
    let zero_sum = s.is_zero_sum();
    let (minimal, index, witness) = if zero_sum {
        let (index, g) = s.index_with_witness()?;
        (Some(s.is_minimal()?), Some(index), Some(g.value()))
    } else {
        (None, None, None)
    };
    let record = json!({
        "n": n,
        "seq": seq,
        "zero_sum": zero_sum,
        "minimal": minimal,
        "index": index,
        "witness_g": witness,
    });
    let mut sink = Sink::new(
        format,
        out,
        &["n", "seq", "zero_sum", "minimal", "index", "witness_g"],
    )?;
    let opt = |v: Option<String>| v.unwrap_or_default();
    sink.emit(&record, || {
        vec![
            n.to_string(),
            seq_cell(seq),
            zero_sum.to_string(),
            opt(minimal.map(|v| v.to_string())),
            opt(index.map(|v| v.to_string())),
            opt(witness.map(|v| v.to_string())),
        ]
    })?;
    sink.finish()?;
    Ok(if zero_sum { EXIT_OK } else { EXIT_USAGE })
}

fn cmd_enumerate(
    format: OutputFormat,
    n: u64,
    coprime_only: bool,
    normalized: bool,
    out: &mut dyn Write,
) -> Outcome {
    let m = Modulus::new(n)?;
    let mut sink = Sink::new(format, out, &["n", "seq"])?;
    let seqs: Box<dyn Iterator<Item = ZSequence<'_>>> = if normalized {
        Box::new(enumerate_normalized_quadruples(&m))
    } else {
        Box::new(enumerate_minimal_quadruples(&m, coprime_only))
    };
    for s in seqs {
        let e = s.entries();
        sink.emit(&json!({ "n": n, "seq": e }), || {
            vec![n.to_string(), seq_cell(e)]
        })?;
    }
    sink.finish()?;
    Ok(EXIT_OK)
}

fn verify_record(r: &VerifyReport) -> Value {
    json!({
        "n": r.n,
        "checked": r.sequences_checked,
        "ok": r.all_index_one,
        "witness": r.witness.as_ref().map(|w| json!({ "seq": w.seq, "index": w.index })),
    })
}

fn cmd_verify(
    format: OutputFormat,
    args: &VerifyArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let workers = match args.workers {
        Some(0) => return Err(Failure::Usage("--workers must be positive".into())),
        Some(w) => w,
        None => std::thread::available_parallelism().map_or(1, |p| p.get()),
    };
    let opts = RangeOptions {
        n_min: args.n_min,
        n_max: args.n_max,
        workers,
        checkpoint: args.checkpoint.clone(),
        mode: if args.exploratory {
            VerifyMode::Exploratory
        } else {
            VerifyMode::Conjecture
        },
    };
    let start = Instant::now();
    let mut sink = Sink::new(
        format,
        out,
        &["n", "checked", "ok", "witness_seq", "witness_index"],
    )?;
    let mut write_error = None;
    let reports = verify_range(&opts, |r| {
        if write_error.is_some() {
            return;
        }
        let row = || {
            vec![
                r.n.to_string(),
                r.sequences_checked.to_string(),
                r.all_index_one.to_string(),
                r.witness
                    .as_ref()
                    .map_or(String::new(), |w| seq_cell(&w.seq)),
                r.witness
                    .as_ref()
                    .map_or(String::new(), |w| w.index.to_string()),
            ]
        };
        if let Err(e) = sink.emit(&verify_record(r), row) {
            write_error = Some(e);
        }
    })?;
    if let Some(e) = write_error {
        return Err(e);
    }
    sink.finish()?;
    let checked: u64 = reports.iter().map(|r| r.sequences_checked).sum();
    let resumed = reports.iter().filter(|r| r.resumed).count();
    let failures = reports.iter().filter(|r| !r.all_index_one).count();
    let _ = writeln!(
        err,
        "verified {} moduli ({resumed} from checkpoint), {checked} sequences, {failures} with a witness, {:.2?}",
        reports.len(),
        start.elapsed()
    );
    Ok(if failures == 0 {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}

fn inputs_cell(r: &AuditReport) -> String {
    r.inputs
        .iter()
        .map(|(k, v)| match v {
            Value::String(s) => format!("{k}={s}"),
            v => format!("{k}={v}"),
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn emit_audits(format: OutputFormat, reports: &[AuditReport], out: &mut dyn Write) -> Outcome {
    let mut sink = Sink::new(
        format,
        out,
        &["name", "inputs", "lhs", "rhs", "margin", "pass", "notes"],
    )?;
    for r in reports {
        sink.emit(r, || {
            vec![
                r.name.clone(),
                inputs_cell(r),
                r.lhs.to_string(),
                r.rhs.to_string(),
                r.margin.to_string(),
                r.pass.to_string(),
                r.notes.clone(),
            ]
        })?;
    }
    sink.finish()?;
    Ok(if reports.iter().all(|r| r.pass) {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}

fn cmd_audit(format: OutputFormat, cmd: &AuditCommand, out: &mut dyn Write) -> Outcome {
    let report = match *cmd {
        AuditCommand::S0s1 { n, a, b, h } => {
            audit_s0_s1(&Modulus::new(n)?, a, b, &FourierSmoother::new(h)?)?
        }
        AuditCommand::Starsum { n, big_a, h } => {
            audit_star_sum(big_a, &Modulus::new(n)?, &FourierSmoother::new(h)?)?
        }
        AuditCommand::Kstar { n, big_a, h, k } => {
            audit_kstar(big_a, &Modulus::new(n)?, &FourierSmoother::new(h)?, k)?
        }
        AuditCommand::Theorem { n, a, b, h } => {
            theorem_lower_bound(&Modulus::new(n)?, a, b, &FourierSmoother::new(h)?)?
        }
        AuditCommand::Relations { all } => {
            let combos = if all {
                RelationCombo::all()
            } else {
                RelationCombo::plus_family()
            };
            let reports: Vec<AuditReport> = combos.into_iter().map(audit_relation).collect();
            return emit_audits(format, &reports, out);
        }
    };
    emit_audits(format, &[report], out)
}

fn claim_cells(c: &Claim) -> (&'static str, String) {
    match *c {
        Claim::Below { bound } => ("below", bound.to_string()),
        Claim::Above { bound } => ("above", bound.to_string()),
        Claim::Exact { value } => ("exact", value.to_string()),
        Claim::Within { lo, hi } => ("within", format!("{lo}..{hi}")),
    }
}

fn cmd_constants(format: OutputFormat, out: &mut dyn Write) -> Outcome {
    let ledger = constants_ledger();
    let mut sink = Sink::new(
        format,
        out,
        &[
            "symbol",
            "value",
            "claim",
            "bound",
            "margin",
            "satisfied",
            "description",
        ],
    )?;
    for e in &ledger.entries {
        let row = |e: &LedgerEntry| {
            let (kind, bound) = claim_cells(&e.claim);
            vec![
                e.symbol.to_string(),
                format!("{:.17e}", e.value),
                kind.to_string(),
                bound,
                format!("{:.6e}", e.margin),
                e.satisfied.to_string(),
                e.description.to_string(),
            ]
        };
        sink.emit(e, || row(e))?;
    }
    sink.finish()?;
    Ok(if ledger.all_satisfied() {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}

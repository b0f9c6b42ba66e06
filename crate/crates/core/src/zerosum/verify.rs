//! Conjecture verification for single moduli and for ranges, with a
//! resumable checkpoint log.
//!
//! Checkpoint records are ASCII lines `n,status,sequences_checked` where
//! `status` is `ok` or `fail:<a>-<b>-<c>-<d>:<index>`. Each line is written
//! with a single append once its modulus is complete; an unterminated final
//! line (a run killed mid-write) is ignored on load.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::enumerate::{normalized_quadruples, raw_quadruples};
use super::sequence::{quad_index_one, ZSequence};
use crate::arith::Modulus;
use crate::error::{Error, Result};

/// Which family of sequences a run checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VerifyMode {
    /// `gcd(n, 6) = 1`, coprime entries, normalized to contain 1.
    #[default]
    Conjecture,
    /// Any `n`; every minimal quadruple, coprime or not.
    Exploratory,
}

/// A sequence whose index is not 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Witness {
    pub seq: Vec<u64>,
    pub index: u64,
}

/// Early-exit depth statistics: how many units were tried before a unit
/// with unit-sum `n` turned up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AttemptStats {
    pub sequences: u64,
    pub total_attempts: u64,
    pub max_attempts: u64,
    /// `buckets[i]` counts sequences needing `[2^i, 2^(i+1))` attempts.
    pub buckets: [u64; 16],
}

impl AttemptStats {
    pub fn record(&mut self, attempts: u64) {
        self.sequences += 1;
        self.total_attempts += attempts;
        self.max_attempts = self.max_attempts.max(attempts);
        let bucket = (63 - attempts.max(1).leading_zeros()) as usize;
        self.buckets[bucket.min(15)] += 1;
    }

    pub fn mean(&self) -> f64 {
        if self.sequences == 0 {
            0.0
        } else {
            self.total_attempts as f64 / self.sequences as f64
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub n: u64,
    pub sequences_checked: u64,
    pub all_index_one: bool,
    pub witness: Option<Witness>,
    pub elapsed: Duration,
    pub attempts: AttemptStats,
    /// Loaded from a checkpoint rather than computed in this run.
    pub resumed: bool,
}

impl VerifyReport {
    /// The fields that are a function of `n` alone.
    pub fn record(&self) -> (u64, u64, bool, Option<Witness>) {
        (
            self.n,
            self.sequences_checked,
            self.all_index_one,
            self.witness.clone(),
        )
    }

    fn checkpoint_line(&self) -> String {
        let status = match &self.witness {
            None => "ok".to_string(),
            Some(w) => {
                let seq: Vec<String> = w.seq.iter().map(u64::to_string).collect();
                format!("fail:{}:{}", seq.join("-"), w.index)
            }
        };
        format!("{},{},{}\n", self.n, status, self.sequences_checked)
    }

    fn from_checkpoint_line(line: &str) -> Option<Self> {
        let mut parts = line.split(',');
        let n = parts.next()?.trim().parse().ok()?;
        let status = parts.next()?.trim();
        let checked = parts.next()?.trim().parse().ok()?;
        if parts.next().is_some() {
            return None;
        }
        let witness = if status == "ok" {
            None
        } else {
            let rest = status.strip_prefix("fail:")?;
            let (seq, index) = rest.split_once(':')?;
            let seq = seq
                .split('-')
                .map(|x| x.parse().ok())
                .collect::<Option<Vec<u64>>>()?;
            Some(Witness {
                seq,
                index: index.parse().ok()?,
            })
        };
        Some(Self {
            n,
            sequences_checked: checked,
            all_index_one: witness.is_none(),
            witness,
            elapsed: Duration::ZERO,
            attempts: AttemptStats::default(),
            resumed: true,
        })
    }
}

/// Check every relevant minimal quadruple over `Z/n` for index 1, stopping
/// at the first counterexample.
pub fn verify_conjecture(m: &Modulus, mode: VerifyMode) -> Result<VerifyReport> {
    let n = m.n();
    if n < 5 {
        return Err(Error::InvalidRange { min: n, max: n });
    }
    if mode == VerifyMode::Conjecture && !m.is_coprime_six() {
        return Err(Error::NotCoprimeToSix(n));
    }
    let start = Instant::now();
    let units = m.unit_values();
    let mut attempts = AttemptStats::default();
    let mut checked = 0u64;
    let mut witness = None;

    let mut check = |q: [u64; 4]| -> bool {
        checked += 1;
        match quad_index_one(&q, n, &units) {
            Some(k) => {
                attempts.record(k);
                true
            }
            None => {
                let s = ZSequence::from_sorted_unchecked(m, q.to_vec());
                let index = s.index().expect("enumerated sequences are zero-sum");
                witness = Some(Witness {
                    seq: q.to_vec(),
                    index,
                });
                false
            }
        }
    };
    match mode {
        VerifyMode::Conjecture => {
            for q in normalized_quadruples(n) {
                if !check(q) {
                    break;
                }
            }
        }
        VerifyMode::Exploratory => {
            for q in raw_quadruples(n, false) {
                if !check(q) {
                    break;
                }
            }
        }
    }
    Ok(VerifyReport {
        n,
        sequences_checked: checked,
        all_index_one: witness.is_none(),
        witness,
        elapsed: start.elapsed(),
        attempts,
        resumed: false,
    })
}

#[derive(Debug, Clone)]
pub struct RangeOptions {
    pub n_min: u64,
    pub n_max: u64,
    pub workers: usize,
    pub checkpoint: Option<PathBuf>,
    pub mode: VerifyMode,
}

impl RangeOptions {
    pub fn new(n_min: u64, n_max: u64) -> Self {
        Self {
            n_min,
            n_max,
            workers: 1,
            checkpoint: None,
            mode: VerifyMode::Conjecture,
        }
    }

    /// The moduli this run covers, ascending.
    pub fn targets(&self) -> Vec<u64> {
        (self.n_min..=self.n_max)
            .filter(|&n| self.mode == VerifyMode::Exploratory || (n % 2 != 0 && n % 3 != 0))
            .collect()
    }
}

fn load_checkpoint(path: &Path) -> Result<BTreeMap<u64, VerifyReport>> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
        Err(source) => {
            return Err(Error::Checkpoint {
                path: path.to_path_buf(),
                source,
            })
        }
    };
    let mut reader = BufReader::new(file);
    let mut done = BTreeMap::new();
    let mut line = String::new();
    let mut line_no = 0;
    loop {
        line.clear();
        let read = reader
            .read_line(&mut line)
            .map_err(|source| Error::Checkpoint {
                path: path.to_path_buf(),
                source,
            })?;
        if read == 0 || !line.ends_with('\n') {
            break;
        }
        line_no += 1;
        let record = line.trim_end();
        if record.is_empty() {
            continue;
        }
        let report = VerifyReport::from_checkpoint_line(record).ok_or_else(|| {
            Error::MalformedCheckpoint {
                path: path.to_path_buf(),
                line: line_no,
                record: record.to_string(),
            }
        })?;
        done.insert(report.n, report);
    }
    Ok(done)
}

/// Truncate an unterminated trailing record so appends start on a fresh line.
fn open_for_append(path: &Path) -> Result<File> {
    let err = |source| Error::Checkpoint {
        path: path.to_path_buf(),
        source,
    };
    if let Ok(bytes) = std::fs::read(path) {
        if !bytes.is_empty() && !bytes.ends_with(b"\n") {
            let keep = bytes.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
            let f = OpenOptions::new().write(true).open(path).map_err(err)?;
            f.set_len(keep as u64).map_err(err)?;
        }
    }
    OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(err)
}

/// Verify every target modulus in `[n_min, n_max]`.
///
/// Workers take moduli from a shared queue; the calling thread is the only
/// writer, appending checkpoint records in completion order and handing
/// reports to `on_report` in ascending `n`. Moduli already present in the
/// checkpoint are not recomputed.
pub fn verify_range<F>(opts: &RangeOptions, mut on_report: F) -> Result<Vec<VerifyReport>>
where
    F: FnMut(&VerifyReport),
{
    if opts.n_min < 5 || opts.n_min > opts.n_max {
        return Err(Error::InvalidRange {
            min: opts.n_min,
            max: opts.n_max,
        });
    }
    let targets = opts.targets();
    let wanted: BTreeSet<u64> = targets.iter().copied().collect();

    let (mut done, mut log) = match &opts.checkpoint {
        Some(path) => {
            let mut done = load_checkpoint(path)?;
            done.retain(|n, _| wanted.contains(n));
            (done, Some((path.clone(), open_for_append(path)?)))
        }
        None => (BTreeMap::new(), None),
    };

    // Largest moduli first so the long jobs do not trail at the end.
    let pending: Vec<u64> = targets
        .iter()
        .rev()
        .copied()
        .filter(|n| !done.contains_key(n))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| Error::WorkerPool(e.to_string()))?;

    let mode = opts.mode;
    let (tx, rx) = mpsc::channel::<Result<VerifyReport>>();
    let mut out = Vec::with_capacity(targets.len());
    let mut cursor = 0usize;
    let mut first_error = None;

    std::thread::scope(|scope| {
        scope.spawn(move || {
            pool.install(|| {
                pending
                    .par_iter()
                    .with_max_len(1)
                    .for_each_with(tx, |tx, &n| {
                        let report = Modulus::new(n).and_then(|m| verify_conjecture(&m, mode));
                        let _ = tx.send(report);
                    });
            });
        });

        let mut emit_ready = |done: &mut BTreeMap<u64, VerifyReport>,
                              out: &mut Vec<VerifyReport>| {
            while cursor < targets.len() {
                match done.remove(&targets[cursor]) {
                    Some(r) => {
                        on_report(&r);
                        out.push(r);
                        cursor += 1;
                    }
                    None => break,
                }
            }
        };
        emit_ready(&mut done, &mut out);

        for report in rx {
            let report = match report {
                Ok(r) => r,
                Err(e) => {
                    first_error.get_or_insert(e);
                    continue;
                }
            };
            if first_error.is_some() {
                continue;
            }
            if let Some((path, file)) = log.as_mut() {
                let written = file
                    .write_all(report.checkpoint_line().as_bytes())
                    .and_then(|_| file.flush());
                if let Err(source) = written {
                    first_error = Some(Error::Checkpoint {
                        path: path.clone(),
                        source,
                    });
                    continue;
                }
            }
            done.insert(report.n, report);
            emit_ready(&mut done, &mut out);
        }
    });

    match first_error {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

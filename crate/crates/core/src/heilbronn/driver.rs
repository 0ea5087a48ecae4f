//! Range driver: enumerate conductors in `[A, B]`, sieve them in parallel
//! chunks, merge in range order.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{avg_eval_estimate, sieve_conductor, Checkpoint, SearchState, SieveOutcome, SurvivorReason, Verdict, Witness};
use crate::character::{make_spec, table_limit, Engine, EngineKind};
use crate::primes::{is_prime, isqrt, primes_in_range, sieve_eratosthenes, PrimeList};
use crate::{Error, Result};

/// Conductors up to this size get the lookup-table engine under
/// [`EngineChoice::Auto`]. Building a table costs `O(f)`, so beyond this the
/// per-conductor scan (a dozen evaluations) is cheaper by direct methods.
pub const AUTO_TABLE_MAX: u64 = 100_000;

/// Default minimum for the scanning prime list.
pub const DEFAULT_PRIME_LIMIT: u64 = 100_000;

/// Smallest prime list a caller may request.
pub const MIN_PRIME_LIMIT: u64 = 1000;

pub const DEFAULT_CHUNK_WIDTH: u64 = 1 << 18;

/// Conductors must stay below `2^63`.
pub const MAX_CONDUCTOR: u64 = (1 << 63) - 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineChoice {
    /// Table for small `f`, cubic reciprocity for `l = 3`, powmod otherwise.
    #[default]
    Auto,
    Table,
    PowMod,
    Cubic,
}

impl EngineChoice {
    /// The engine used for conductor `f`.
    pub fn resolve(self, f: u64, ell: u32) -> EngineKind {
        match self {
            Self::Auto if f <= AUTO_TABLE_MAX && ell <= u8::MAX as u32 => EngineKind::Table,
            Self::Auto if ell == 3 => EngineKind::Cubic,
            Self::Auto => EngineKind::PowMod,
            Self::Table => EngineKind::Table,
            Self::PowMod => EngineKind::PowMod,
            Self::Cubic => EngineKind::Cubic,
        }
    }
}

impl fmt::Display for EngineChoice {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(match self {
            Self::Auto => "auto",
            Self::Table => "table",
            Self::PowMod => "powmod",
            Self::Cubic => "cubic",
        })
    }
}

impl FromStr for EngineChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Self::Auto),
            "table" => Ok(Self::Table),
            "powmod" => Ok(Self::PowMod),
            "cubic" => Ok(Self::Cubic),
            _ => Err(Error::Usage(format!(
                "unknown engine `{s}`; expected auto, table, powmod or cubic"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SieveOptions {
    pub engine: EngineChoice,
    /// Worker threads, at least 1.
    pub workers: usize,
    /// Width of the integer window handled as one unit of work.
    pub chunk_width: u64,
    /// Override for the scanning prime list; must reach `max(1000, sqrt(B))`.
    pub prime_limit: Option<u64>,
    /// Collect every witness into the report.
    pub keep_witnesses: bool,
    /// Resume from and persist progress to this file.
    pub checkpoint: Option<PathBuf>,
}

impl Default for SieveOptions {
    fn default() -> Self {
        Self {
            engine: EngineChoice::Auto,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            chunk_width: DEFAULT_CHUNK_WIDTH,
            prime_limit: None,
            keep_witnesses: false,
            checkpoint: None,
        }
    }
}

/// Outcomes for the conductors in `[lo, hi]`, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChunkReport {
    pub lo: u64,
    pub hi: u64,
    pub outcomes: Vec<SieveOutcome>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SieveStats {
    /// Conductors sieved in this run (excludes a resumed prefix).
    pub conductors: u64,
    pub eliminated: u64,
    pub evals: u64,
    pub avg_evals: f64,
    pub heuristic_avg_evals: f64,
    pub prime_limit: u64,
    pub elapsed_secs: f64,
    /// `done` value of the checkpoint this run resumed from.
    pub resumed_from: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SieveReport {
    pub ell: u32,
    pub a: u64,
    pub b: u64,
    pub engine: EngineChoice,
    pub survivors: Vec<u64>,
    /// Present when requested; covers only the conductors sieved in this run.
    pub witnesses: Option<Vec<Witness>>,
    pub stats: SieveStats,
}

pub fn sieve_range(ell: u32, a: u64, b: u64, opts: &SieveOptions) -> Result<SieveReport> {
    sieve_range_with(ell, a, b, opts, |_| Ok(()))
}

/// Like [`sieve_range`], calling `on_chunk` for every finished chunk in range
/// order. The checkpoint, if any, is written after the callback returns.
pub fn sieve_range_with<F>(ell: u32, a: u64, b: u64, opts: &SieveOptions, mut on_chunk: F) -> Result<SieveReport>
where
    F: FnMut(&ChunkReport) -> Result<()>,
{
    let started = Instant::now();
    validate(ell, a, b, opts)?;
    let primes = sieve_eratosthenes(prime_limit(b, opts.prime_limit)?)?;

    let mut state = match &opts.checkpoint {
        Some(path) => match Checkpoint::load(path)? {
            Some(cp) if cp.matches(ell, a, b) => cp,
            Some(cp) => {
                return Err(Error::Usage(format!(
                    "checkpoint {} is for ell={} A={} B={}, not ell={ell} A={a} B={b}",
                    path.display(),
                    cp.ell,
                    cp.a,
                    cp.b
                )))
            }
            None => Checkpoint::new(ell, a, b),
        },
        None => Checkpoint::new(ell, a, b),
    };
    let resumed_from = (state.done >= a).then_some(state.done);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| Error::Unsupported(format!("cannot start worker pool: {e}")))?;

    let mut stats = SieveStats {
        heuristic_avg_evals: avg_eval_estimate(ell),
        prime_limit: primes.limit(),
        resumed_from,
        ..SieveStats::default()
    };
    let mut witnesses = opts.keep_witnesses.then(Vec::new);

    let windows = chunk_windows(a, b, state.done + 1, opts.chunk_width);
    let batch = opts.workers.max(1) * 2;
    for group in windows.chunks(batch) {
        let reports: Vec<ChunkReport> = pool.install(|| {
            group
                .par_iter()
                .map(|&(lo, hi)| sieve_window(ell, lo, hi, opts.engine, &primes))
                .collect::<Result<_>>()
        })?;
        for report in reports {
            on_chunk(&report)?;
            for out in &report.outcomes {
                stats.conductors += 1;
                stats.evals += out.evals as u64;
                match &out.verdict {
                    Verdict::Eliminated(w) => {
                        stats.eliminated += 1;
                        if let Some(ws) = witnesses.as_mut() {
                            ws.push(*w);
                        }
                    }
                    Verdict::Survivor(_) => state.survivors.push(out.f),
                }
            }
            state.done = report.hi;
            if let Some(path) = &opts.checkpoint {
                state.save(path)?;
            }
        }
    }
    if let Some(path) = &opts.checkpoint {
        // an empty remainder still leaves a completed checkpoint behind
        state.save(path)?;
    }

    if stats.conductors > 0 {
        stats.avg_evals = stats.evals as f64 / stats.conductors as f64;
    }
    stats.elapsed_secs = started.elapsed().as_secs_f64();
    Ok(SieveReport {
        ell,
        a,
        b,
        engine: opts.engine,
        survivors: state.survivors,
        witnesses,
        stats,
    })
}

fn validate(ell: u32, a: u64, b: u64, opts: &SieveOptions) -> Result<()> {
    if ell < 3 || !is_prime(ell as u64) {
        return Err(Error::Usage(format!("l = {ell} is not an odd prime")));
    }
    if b > MAX_CONDUCTOR {
        return Err(Error::Range(format!("B = {b} is not below 2^63")));
    }
    if a < 2 || a > b {
        return Err(Error::Usage(format!("need 2 <= A <= B, got A = {a}, B = {b}")));
    }
    if opts.workers == 0 {
        return Err(Error::Usage("worker count must be at least 1".into()));
    }
    if opts.chunk_width == 0 {
        return Err(Error::Usage("chunk width must be at least 1".into()));
    }
    match opts.engine {
        EngineChoice::Cubic if ell != 3 => Err(Error::Usage(format!(
            "the cubic engine needs l = 3, got l = {ell}"
        ))),
        EngineChoice::Table if b > table_limit() => Err(Error::Resource {
            what: "lookup table size",
            requested: b,
            limit: table_limit(),
        }),
        EngineChoice::Table if ell > u8::MAX as u32 => Err(Error::Unsupported(format!(
            "the table engine supports l <= 255, got l = {ell}"
        ))),
        _ => Ok(()),
    }
}

fn prime_limit(b: u64, requested: Option<u64>) -> Result<u64> {
    let root = isqrt(b);
    match requested {
        None => Ok(DEFAULT_PRIME_LIMIT.max(root + 1)),
        Some(n) if n >= MIN_PRIME_LIMIT.max(root) => Ok(n),
        Some(n) => Err(Error::Usage(format!(
            "prime list limit {n} is below max({MIN_PRIME_LIMIT}, sqrt(B) = {root})"
        ))),
    }
}

/// Windows of width `w` aligned at `a`, clipped to `[start, b]`.
fn chunk_windows(a: u64, b: u64, start: u64, w: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    if start > b {
        return out;
    }
    let mut lo = start;
    while lo <= b {
        let next = a + ((lo - a) / w + 1).saturating_mul(w);
        let hi = next.saturating_sub(1).min(b);
        out.push((lo, hi));
        if hi == b {
            break;
        }
        lo = hi + 1;
    }
    out
}

fn sieve_window(ell: u32, lo: u64, hi: u64, choice: EngineChoice, primes: &PrimeList) -> Result<ChunkReport> {
    let mut conductors: Vec<u64> = primes_in_range(lo, hi, primes)?
        .into_iter()
        .filter(|f| f % ell as u64 == 1)
        .collect();
    let square = ell as u64 * ell as u64;
    let special = (lo..=hi).contains(&square);
    if special {
        let at = conductors.partition_point(|&f| f < square);
        conductors.insert(at, square);
    }
    let outcomes = conductors
        .par_iter()
        .map(|&f| {
            if f == square {
                return Ok(SieveOutcome {
                    f,
                    verdict: Verdict::Survivor(SurvivorReason::SpecialConductor),
                    search: SearchState::default(),
                    evals: 0,
                });
            }
            let spec = make_spec(f, ell)?;
            let engine = Engine::build(choice.resolve(f, ell), &spec, primes)?;
            sieve_conductor(f, ell, primes, &engine)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChunkReport { lo, hi, outcomes })
}

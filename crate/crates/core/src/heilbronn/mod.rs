//! Witness conditions for the failure of the norm-Euclidean property and the
//! conductor sieve built on them.
//!
//! For a cyclic field of odd prime degree `l` and prime conductor `f`, let
//! `q1 < q2` be the two smallest primes with `chi(q) != 1`. An integer `r`
//! coprime to `q1 q2` with `chi(r) = chi(q2)^-1` certifies that the field is
//! not norm-Euclidean when
//!
//! 1. `r q2 k != f (mod q1^2)` for `k = 1..q1-1` and `(q1 - 1)(q2 r - 1) <= f`, or
//! 2. `q1 != 2, 3` and `3 q1 q2 r log q1 < f`, or
//! 3. `q1 != 2, 3, 7` and `2.1 q1 q2 r log q1 < f`, or
//! 4. `q1 = 2`, `q2 != 3` and `3 q2 r < f`, or
//! 5. `q1 = 3`, `q2 != 5` and `5 q2 r < f`.
//!
//! The sieve uses condition 1 only, which needs nothing but integer
//! arithmetic and character evaluations.

mod checkpoint;
mod driver;
mod sieve;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::character::{CharValue, CharacterEngine};
use crate::primes::{gcd, inv_mod, is_prime};
use crate::{Error, Result};

pub use checkpoint::Checkpoint;
pub use driver::{sieve_range, sieve_range_with, ChunkReport, EngineChoice, SieveOptions, SieveReport, SieveStats};
pub use sieve::{sieve_conductor, SearchState};

/// Data certifying condition 1 for the conductor `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub f: u64,
    pub ell: u32,
    pub q1: u64,
    pub q2: u64,
    pub r: u64,
}

impl fmt::Display for Witness {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "f={}, q1={}, q2={}, r={}", self.f, self.q1, self.q2, self.r)
    }
}

/// `(f, q1, q2, r)` from a line `f=<f>, q1=<q1>, q2=<q2>, r=<r>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessLine {
    pub f: u64,
    pub q1: u64,
    pub q2: u64,
    pub r: u64,
}

impl WitnessLine {
    pub fn with_ell(self, ell: u32) -> Witness {
        Witness {
            f: self.f,
            ell,
            q1: self.q1,
            q2: self.q2,
            r: self.r,
        }
    }
}

impl FromStr for WitnessLine {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let mut vals = [0u64; 4];
        let keys = ["f", "q1", "q2", "r"];
        let fields: Vec<&str> = s.trim().split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(format!("expected 4 comma-separated fields, found {}", fields.len()));
        }
        for ((field, key), slot) in fields.iter().zip(keys).zip(vals.iter_mut()) {
            let (k, v) = field
                .split_once('=')
                .ok_or_else(|| format!("field `{field}` has no `=`"))?;
            if k != key {
                return Err(format!("expected key `{key}`, found `{k}`"));
            }
            *slot = v.parse().map_err(|e| format!("bad value for {key}: {e}"))?;
        }
        let [f, q1, q2, r] = vals;
        Ok(Self { f, q1, q2, r })
    }
}

/// Parse a witness file. Blank lines and lines starting with `#` are
/// skipped; line numbers are 1-based.
pub fn parse_witness_lines(text: &str) -> Result<Vec<(usize, WitnessLine)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let l = l.trim();
            !l.is_empty() && !l.starts_with('#')
        })
        .map(|(i, l)| {
            l.parse()
                .map(|w| (i + 1, w))
                .map_err(|msg| Error::Parse { line: i + 1, msg })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurvivorReason {
    /// The prime list ran out before `r` was found.
    RanOutOfPrimes,
    /// `r` was found but `(q1 - 1)(q2 r - 1) > f`.
    SizeClauseFailed,
    /// `f = l^2`, which the witness conditions do not cover.
    SpecialConductor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Eliminated(Witness),
    Survivor(SurvivorReason),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SieveOutcome {
    pub f: u64,
    pub verdict: Verdict,
    pub search: SearchState,
    /// Character evaluations spent in the scan.
    pub evals: u32,
}

impl SieveOutcome {
    pub fn is_survivor(&self) -> bool {
        matches!(self.verdict, Verdict::Survivor(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.verdict {
            Verdict::Eliminated(w) => Some(w),
            Verdict::Survivor(_) => None,
        }
    }

    pub fn record(&self) -> OutcomeRecord {
        OutcomeRecord {
            f: self.f,
            verdict: match self.verdict {
                Verdict::Eliminated(_) => "eliminated",
                Verdict::Survivor(SurvivorReason::RanOutOfPrimes) => "survivor:ran-out-of-primes",
                Verdict::Survivor(SurvivorReason::SizeClauseFailed) => "survivor:size-clause-failed",
                Verdict::Survivor(SurvivorReason::SpecialConductor) => "survivor:special-conductor",
            }
            .to_string(),
            q1: self.search.q1,
            q2: self.search.q2,
            r: self.search.r,
            evals: self.evals,
        }
    }
}

/// Flat CSV/JSON form of a [`SieveOutcome`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeRecord {
    pub f: u64,
    pub verdict: String,
    pub q1: Option<u64>,
    pub q2: Option<u64>,
    pub r: Option<u64>,
    pub evals: u32,
}

/// `{f q2^-1 k^-1 mod q1^2 : k = 1..q1-1}`, sorted. A prime `r` satisfies
/// the congruence clause of condition 1 iff `r mod q1^2` is not in this set.
pub fn forbidden_residues(f: u64, q1: u64, q2: u64) -> Result<Vec<u64>> {
    let m = q1
        .checked_mul(q1)
        .ok_or_else(|| Error::Range(format!("q1 = {q1} squared overflows")))?;
    let fq2 = (f % m) as u128 * inv_mod(q2, m)? as u128 % m as u128;
    let mut set = (1..q1)
        .map(|k| Ok((fq2 * inv_mod(k, m)? as u128 % m as u128) as u64))
        .collect::<Result<Vec<u64>>>()?;
    set.sort_unstable();
    set.dedup();
    Ok(set)
}

/// Condition 1 in full, including the minimality of `q1` and `q2`.
pub fn check_condition1<E: CharacterEngine + ?Sized>(
    f: u64,
    ell: u32,
    q1: u64,
    q2: u64,
    r: u64,
    engine: &E,
) -> bool {
    let spec = engine.spec();
    if spec.f() != f || spec.ell() != ell {
        return false;
    }
    if !(q1 < q2 && q2 < r && r < f) || !is_prime(q1) || !is_prime(q2) || !is_prime(r) {
        return false;
    }
    // q1 and q2 are the two smallest primes with chi != 1
    for p in (2..q2).filter(|&p| is_prime(p)) {
        if engine.eval(p).is_one() != (p != q1) {
            return false;
        }
    }
    let chi_q2 = engine.eval(q2);
    if chi_q2.is_one() || chi_q2 == CharValue::Zero {
        return false;
    }
    if engine.eval(r) != chi_q2.inverse(ell) {
        return false;
    }
    if gcd(r, q1 * q2) != 1 {
        return false;
    }
    let m = q1 * q1;
    let congruence_ok = (1..q1).all(|k| {
        (r as u128 * q2 as u128 * k as u128 % m as u128) as u64 != f % m
    });
    congruence_ok && size_clause(f, q1, q2, r)
}

/// `(q1 - 1)(q2 r - 1) <= f`, exactly.
pub fn size_clause(f: u64, q1: u64, q2: u64, r: u64) -> bool {
    (q1 as u128 - 1) * (q2 as u128 * r as u128 - 1) <= f as u128
}

/// Conditions 2 through 5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AltCondition {
    Two,
    Three,
    Four,
    Five,
}

impl TryFrom<u8> for AltCondition {
    type Error = Error;

    fn try_from(n: u8) -> Result<Self> {
        match n {
            2 => Ok(Self::Two),
            3 => Ok(Self::Three),
            4 => Ok(Self::Four),
            5 => Ok(Self::Five),
            _ => Err(Error::Usage(format!("no alternative condition {n}; expected 2..=5"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionVerdict {
    Holds,
    Fails,
    /// Side conditions on `q1`, `q2` do not apply, or a floating-point
    /// comparison is too close to call.
    Inapplicable,
}

/// Relative margin for the log-bearing comparisons.
pub const LOG_GUARD: f64 = 1e-12;

/// The inequality and side conditions of conditions 2-5. The character
/// conditions on `r` are the caller's responsibility.
pub fn check_condition_n(cond: AltCondition, f: u64, q1: u64, q2: u64, r: u64) -> ConditionVerdict {
    use ConditionVerdict::*;
    let strict_int = |lhs: u128| if lhs < f as u128 { Holds } else { Fails };
    let strict_log = |coef: f64| {
        let lhs = coef * q1 as f64 * q2 as f64 * r as f64 * (q1 as f64).ln();
        let rhs = f as f64;
        if lhs < rhs * (1.0 - LOG_GUARD) {
            Holds
        } else if lhs > rhs * (1.0 + LOG_GUARD) {
            Fails
        } else {
            Inapplicable
        }
    };
    match cond {
        AltCondition::Two if q1 != 2 && q1 != 3 => strict_log(3.0),
        AltCondition::Three if q1 != 2 && q1 != 3 && q1 != 7 => strict_log(2.1),
        AltCondition::Four if q1 == 2 && q2 != 3 => strict_int(3 * q2 as u128 * r as u128),
        AltCondition::Five if q1 == 3 && q2 != 5 => strict_int(5 * q2 as u128 * r as u128),
        _ => Inapplicable,
    }
}

/// Heuristic mean number of character evaluations per conductor,
/// `l (2 + 2 / (l - 1))`.
pub fn avg_eval_estimate(ell: u32) -> f64 {
    let l = ell as f64;
    l * (2.0 + 2.0 / (l - 1.0))
}

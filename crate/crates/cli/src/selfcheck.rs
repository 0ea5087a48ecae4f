use std::io::{self, Write};
use std::time::Instant;

use anyhow::Result;
use nesieve::bounds::{c_burgess_table, d_table, e_table, DSet};
use nesieve::character::{make_spec, CharacterEngine, PowModEngine, TableEngine};
use nesieve::eisenstein::CubicEngine;
use nesieve::heilbronn::{sieve_range, SieveOptions};
use nesieve::primes::{sieve_eratosthenes, PrimeList};

use crate::{exit, reference, SelfcheckArgs};

/// One named invariant and what went wrong with it, if anything.
pub struct Check {
    pub name: String,
    pub failure: Option<String>,
}

impl Check {
    fn pass(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            failure: None,
        }
    }

    fn fail(name: impl Into<String>, why: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            failure: Some(why.into()),
        }
    }
}

/// Compare a computed table to the reference row by row. `key` names the
/// index column, `fault` (a row key) forces a mismatch on that row.
pub fn compare_table(
    table: &str,
    key: &str,
    computed: &[(u32, String)],
    reference: &[(u32, &str)],
    fault: Option<u32>,
) -> Vec<Check> {
    if computed.len() != reference.len() {
        return vec![Check::fail(
            format!("table {table}"),
            format!("{} rows, expected {}", computed.len(), reference.len()),
        )];
    }
    computed
        .iter()
        .zip(reference)
        .map(|((k, got), (rk, want))| {
            let name = format!("table {table} row {key}={rk}");
            let got = if fault == Some(*k) { format!("{got}+") } else { got.clone() };
            if k == rk && got == *want {
                Check::pass(name)
            } else {
                Check::fail(name, format!("got {key}={k} {got}, expected {want}"))
            }
        })
        .collect()
}

fn parse_fault(spec: Option<&str>) -> Result<Option<(String, u32)>> {
    let Some(s) = spec else { return Ok(None) };
    let (table, row) = s
        .split_once(':')
        .ok_or_else(|| nesieve::Error::Usage(format!("fault `{s}` is not <table>:<row>")))?;
    let row = row
        .parse()
        .map_err(|_| nesieve::Error::Usage(format!("fault row `{row}` is not an integer")))?;
    Ok(Some((table.to_string(), row)))
}

fn engine_agreement(primes: &PrimeList, fmax: u64) -> Check {
    let name = format!("engine agreement table = powmod, l = 3, 5, 7, f <= {fmax}");
    for ell in [3u32, 5, 7] {
        for &f in primes.iter().filter(|&&f| f <= fmax && f % ell as u64 == 1) {
            let spec = match make_spec(f, ell) {
                Ok(s) => s,
                Err(e) => return Check::fail(name, e.to_string()),
            };
            let table = match TableEngine::build(&spec, primes) {
                Ok(t) => t,
                Err(e) => return Check::fail(name, e.to_string()),
            };
            let pow = PowModEngine::new(&spec);
            if let Some(n) = (1..f).find(|&n| table.eval(n) != pow.eval(n)) {
                return Check::fail(name, format!("l={ell} f={f} n={n}"));
            }
        }
    }
    Check::pass(name)
}

fn cubic_oracle(primes: &PrimeList, fmax: u64) -> Check {
    let name = format!("cubic reciprocity = power residue, f <= {fmax}");
    for &f in primes.iter().filter(|&&f| f <= fmax && f % 3 == 1) {
        let spec = match make_spec(f, 3) {
            Ok(s) => s,
            Err(e) => return Check::fail(name, e.to_string()),
        };
        let cubic = match CubicEngine::new(&spec) {
            Ok(c) => c,
            Err(e) => return Check::fail(name, e.to_string()),
        };
        let pow = PowModEngine::new(&spec);
        if let Some(n) = (1..f).find(|&n| cubic.eval(n) != pow.eval(n)) {
            return Check::fail(name, format!("f={f} n={n}"));
        }
    }
    Check::pass(name)
}

fn survivors(ell: u32, b: u64, want: &[u64]) -> Check {
    let name = format!("survivors l={ell} f <= {b}");
    match sieve_range(ell, 2, b, &SieveOptions::default()) {
        Ok(rep) if rep.survivors == want => Check::pass(name),
        Ok(rep) => Check::fail(name, format!("got {:?}", rep.survivors)),
        Err(e) => Check::fail(name, e.to_string()),
    }
}

fn constant_tables(fault: Option<&(String, u32)>) -> Vec<Check> {
    let fault_for = |t: &str| fault.filter(|(name, _)| name == t).map(|(_, r)| *r);
    let mut checks = Vec::new();
    match c_burgess_table() {
        Ok(t) => {
            let rows: Vec<(u32, String)> = t.into_iter().map(|(r, c)| (r, c.to_string())).collect();
            checks.extend(compare_table("c-burgess", "r", &rows, &reference::C_BURGESS, fault_for("c-burgess")));
        }
        Err(e) => checks.push(Check::fail("table c-burgess", e.to_string())),
    }
    for (set, name, want) in [(DSet::One, "d1", &reference::D1), (DSet::Two, "d2", &reference::D2)] {
        match d_table(set) {
            Ok(t) => {
                let rows: Vec<(u32, String)> = t.into_iter().map(|(k, d)| (k, d.to_string())).collect();
                checks.extend(compare_table(name, "k", &rows, want, fault_for(name)));
            }
            Err(e) => checks.push(Check::fail(format!("table {name}"), e.to_string())),
        }
    }
    match e_table() {
        Ok(t) => {
            let rows: Vec<(u32, String)> = t.into_iter().map(|(k, e, _)| (k, e.to_string())).collect();
            checks.extend(compare_table("e", "k", &rows, &reference::E, fault_for("e")));
        }
        Err(e) => checks.push(Check::fail("table e", e.to_string())),
    }
    checks
}

pub fn run(args: &SelfcheckArgs) -> Result<u8> {
    let fault = parse_fault(args.inject_fault.as_deref())?;
    let started = Instant::now();
    let fmax = if args.quick { 2000 } else { 10_000 };
    let primes = sieve_eratosthenes(100_000)?;

    let mut checks = vec![engine_agreement(&primes, fmax), cubic_oracle(&primes, fmax)];
    checks.push(survivors(3, 10_000, &reference::SURVIVORS_3));
    checks.push(survivors(5, 10_000, &reference::SURVIVORS_5));
    checks.extend(constant_tables(fault.as_ref()));

    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut failed = 0;
    for c in &checks {
        match &c.failure {
            None => writeln!(out, "ok   {}", c.name)?,
            Some(why) => {
                failed += 1;
                writeln!(out, "FAIL {}: {why}", c.name)?;
            }
        }
    }
    writeln!(
        out,
        "# {} checks, {} failed, {:.2}s",
        checks.len(),
        failed,
        started.elapsed().as_secs_f64()
    )?;
    Ok(if failed == 0 { exit::OK } else { exit::VERIFY_FAILED })
}

use std::io::{self, Write};

use anyhow::{Context, Result};
use nesieve::character::{make_spec, Engine, EngineKind};
use nesieve::heilbronn::{check_condition1, parse_witness_lines, EngineChoice};
use nesieve::primes::sieve_eratosthenes;

use crate::{exit, VerifyArgs};

pub fn run(args: &VerifyArgs) -> Result<u8> {
    let text = std::fs::read_to_string(&args.file).with_context(|| format!("reading {}", args.file.display()))?;
    let lines = parse_witness_lines(&text)?;
    let choice: EngineChoice = args.engine.into();
    // only needed to factor f - 1 for the table engine's primitive root
    let primes = sieve_eratosthenes(100_000)?;

    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut failed = 0usize;
    for (_, w) in &lines {
        let w = w.with_ell(args.ell);
        let verdict = make_spec(w.f, w.ell)
            .and_then(|spec| Engine::build(resolve(choice, w.f, w.ell), &spec, &primes))
            .map(|engine| check_condition1(w.f, w.ell, w.q1, w.q2, w.r, &engine));
        match verdict {
            Ok(true) => writeln!(out, "PASS {w}")?,
            Ok(false) => {
                failed += 1;
                writeln!(out, "FAIL {w}")?;
            }
            Err(e) => {
                failed += 1;
                writeln!(out, "FAIL {w} ({e})")?;
            }
        }
    }
    out.flush()?;
    eprintln!("# {} checked, {} failed", lines.len(), failed);
    Ok(if failed == 0 { exit::OK } else { exit::VERIFY_FAILED })
}

/// Auto picks a direct method here: a verification touches few residues.
fn resolve(choice: EngineChoice, f: u64, ell: u32) -> EngineKind {
    match choice {
        EngineChoice::Auto if ell == 3 => EngineKind::Cubic,
        EngineChoice::Auto => EngineKind::PowMod,
        c => c.resolve(f, ell),
    }
}

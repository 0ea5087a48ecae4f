use std::io::{self, Write};

use anyhow::Result;
use nesieve::heilbronn::{sieve_range_with, ChunkReport, SieveOptions, SieveOutcome, SieveReport, Verdict};
use serde_json::json;

use crate::{exit, Format, SieveArgs};

/// Outcomes printed while streaming: survivors always, eliminated conductors
/// with `--emit-witnesses`.
fn shown(out: &SieveOutcome, emit_witnesses: bool) -> bool {
    emit_witnesses || out.is_survivor()
}

pub fn run(args: &SieveArgs) -> Result<u8> {
    let mut opts = SieveOptions {
        engine: args.engine.into(),
        checkpoint: args.checkpoint.clone(),
        prime_limit: args.prime_limit,
        ..SieveOptions::default()
    };
    if let Some(w) = args.workers {
        opts.workers = w;
    }
    if let Some(w) = args.chunk_width {
        opts.chunk_width = w;
    }

    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut csv_out = (args.format == Format::Csv).then(|| csv::Writer::from_writer(io::stdout()));

    let report = sieve_range_with(args.ell, args.from, args.to, &opts, |chunk: &ChunkReport| {
        let rows = chunk.outcomes.iter().filter(|o| shown(o, args.emit_witnesses));
        match args.format {
            Format::Text => {
                for o in rows {
                    writeln!(out, "{}", text_line(o))?;
                }
                out.flush()?;
            }
            Format::Csv => {
                let w = csv_out.as_mut().expect("csv writer");
                for o in rows {
                    w.serialize(o.record()).map_err(io::Error::from)?;
                }
                w.flush()?;
            }
            Format::Json => {
                for o in rows {
                    writeln!(out, "{}", serde_json::to_string(&o.record()).map_err(io::Error::from)?)?;
                }
                out.flush()?;
            }
        }
        Ok(())
    })?;

    match args.format {
        Format::Text => write_text_summary(&mut out, &report)?,
        // the summary goes to stderr so stdout stays a pure record stream
        Format::Csv => eprintln!("{}", summary_line(&report)),
        Format::Json => {
            let summary = json!({
                "summary": {
                    "ell": report.ell,
                    "from": report.a,
                    "to": report.b,
                    "engine": report.engine,
                    "survivors": report.survivors,
                    "stats": report.stats,
                }
            });
            writeln!(out, "{summary}")?;
        }
    }
    Ok(exit::OK)
}

fn text_line(o: &SieveOutcome) -> String {
    match &o.verdict {
        Verdict::Eliminated(w) => w.to_string(),
        Verdict::Survivor(_) => {
            let rec = o.record();
            format!("# f={} {}", o.f, rec.verdict)
        }
    }
}

fn summary_line(r: &SieveReport) -> String {
    let s = &r.stats;
    format!(
        "# l={} range=[{}, {}] engine={} conductors={} eliminated={} evals={} avg={:.4} heuristic={:.4} elapsed={:.3}s",
        r.ell, r.a, r.b, r.engine, s.conductors, s.eliminated, s.evals, s.avg_evals, s.heuristic_avg_evals, s.elapsed_secs
    )
}

fn write_text_summary(out: &mut impl Write, r: &SieveReport) -> io::Result<()> {
    let list: Vec<String> = r.survivors.iter().map(u64::to_string).collect();
    if list.is_empty() {
        writeln!(out, "# survivors (0):")?;
    } else {
        writeln!(out, "# survivors ({}): {}", r.survivors.len(), list.join(", "))?;
    }
    writeln!(out, "{}", summary_line(r))
}

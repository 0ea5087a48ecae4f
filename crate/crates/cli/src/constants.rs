use std::io::{self, Write};

use anyhow::Result;
use nesieve::bounds::{c_burgess_table, c_ell_table, d_table, e_table, special_table, DSet};
use serde_json::{json, Value};

use crate::{exit, ConstantsArgs, Format, TableArg};

/// A rendered table: column names and stringly cells.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub fn build(which: TableArg) -> nesieve::Result<Table> {
    Ok(match which {
        TableArg::CBurgess => Table {
            columns: vec!["r", "C(r)"],
            rows: c_burgess_table()?
                .into_iter()
                .map(|(r, c)| vec![r.to_string(), c.to_string()])
                .collect(),
        },
        TableArg::D1 | TableArg::D2 => {
            let (set, name) = if which == TableArg::D1 {
                (DSet::One, "D1(k)")
            } else {
                (DSet::Two, "D2(k)")
            };
            Table {
                columns: vec!["k", name],
                rows: d_table(set)?
                    .into_iter()
                    .map(|(k, d)| vec![k.to_string(), d.to_string()])
                    .collect(),
            }
        }
        TableArg::E => Table {
            columns: vec!["k", "E(k)", "E'(k)"],
            rows: e_table()?
                .into_iter()
                .map(|(k, e, ep)| vec![k.to_string(), e.to_string(), ep.to_string()])
                .collect(),
        },
        TableArg::CEll => Table {
            columns: vec!["l", "k", "log10 f*", "tight", "C_l"],
            rows: c_ell_table()?
                .into_iter()
                .map(|c| {
                    vec![
                        c.ell.to_string(),
                        c.k.to_string(),
                        format!("{:.3}", c.log10_crossing),
                        format!("10^{}", c.tight_exponent),
                        format!("10^{}", c.exponent),
                    ]
                })
                .collect(),
        },
        TableArg::Special => Table {
            columns: vec!["l", "case 1", "case 2"],
            rows: special_table()?
                .into_iter()
                .map(|(l, a, b)| vec![l.to_string(), a.to_string(), b.to_string()])
                .collect(),
        },
    })
}

pub fn run(args: &ConstantsArgs) -> Result<u8> {
    let table = build(args.table)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match args.format {
        Format::Text => write_aligned(&mut out, &table)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&table.columns)?;
            for row in &table.rows {
                w.write_record(row)?;
            }
            w.flush()?;
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|row| {
                    let obj = table
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| (c.to_string(), json!(v)))
                        .collect::<serde_json::Map<_, _>>();
                    Value::Object(obj)
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
        }
    }
    Ok(exit::OK)
}

fn write_aligned(out: &mut impl Write, t: &Table) -> io::Result<()> {
    let mut widths: Vec<usize> = t.columns.iter().map(|c| c.len()).collect();
    for row in &t.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(out, "{}", line(t.columns.clone()))?;
    writeln!(out, "{}", widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "))?;
    for row in &t.rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

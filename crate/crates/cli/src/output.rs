//! CSV and JSON writers. Column order is part of the interface.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;

use anyhow::{Context, Result};
use serde::Serialize;

use crate::config::{Format, OutputSpec};
use crate::emit::{BoundRow, RegionRow};
use crate::sim::FerPoint;

pub const SIMULATE_HEADER: &str = "param,frames,frame_errors,fer,ci_low,ci_high";
pub const REGION_HEADER: &str = "f,e_max,strategy,M";
pub const BOUND_HEADER: &str = "param,fer_bound,kind,strategy,M";

/// Crate version with the `git describe` of the build tree, when available.
pub const VERSION: &str = env!("BITASD_VERSION");

/// Shortest round-trip decimal, switching to exponent form for tiny or huge
/// magnitudes.
pub fn fmt_f64(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-4..1e7).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn fmt_opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn simulate_csv(rows: &[FerPoint]) -> String {
    let mut s = format!("{SIMULATE_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            fmt_f64(r.param),
            r.frames,
            r.frame_errors,
            fmt_f64(r.fer),
            fmt_f64(r.ci_low),
            fmt_f64(r.ci_high)
        );
    }
    s
}

pub fn region_csv(rows: &[RegionRow]) -> String {
    let mut s = format!("{REGION_HEADER}\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{},{}", r.f, r.e_max, r.strategy, fmt_opt(r.mult));
    }
    s
}

pub fn bound_csv(rows: &[BoundRow]) -> String {
    let mut s = format!("{BOUND_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            fmt_f64(r.param),
            r.fer_bound.map(fmt_f64).unwrap_or_default(),
            r.kind,
            r.strategy,
            fmt_opt(r.mult)
        );
    }
    s
}

#[derive(Serialize)]
struct JsonReport<'a, C: Serialize, R: Serialize> {
    version: &'a str,
    command: &'a str,
    config: &'a C,
    rows: &'a [R],
}

/// `{version, command, config, rows}` with the configuration echoed verbatim.
pub fn json_report<C: Serialize, R: Serialize>(command: &str, config: &C, rows: &[R]) -> Result<String> {
    let report = JsonReport {
        version: VERSION,
        command,
        config,
        rows,
    };
    Ok(serde_json::to_string_pretty(&report)? + "\n")
}

/// Renders in the requested format and writes to the file or stdout.
pub fn write_table<C: Serialize, R: Serialize>(
    out: &OutputSpec,
    command: &str,
    config: &C,
    rows: &[R],
    csv: impl FnOnce(&[R]) -> String,
) -> Result<()> {
    let text = match out.resolved_format() {
        Format::Csv => csv(rows),
        Format::Json => json_report(command, config, rows)?,
    };
    match &out.path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

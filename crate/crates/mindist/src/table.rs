//! Batch runs from an experiment file, written as CSV.
//!
//! One run per line: `<code> <method> [key=value ...]`. Blank lines and
//! lines starting with `#` are skipped. Keys are `seed`, `budget`, `pless`
//! and any estimator configuration field.

use std::io::Write;

use crate::codespec::CodeSpec;
use crate::config::Overrides;
use crate::error::{Error, Result};
use crate::runner::{check_bounds, estimate, parse_method, RunOptions};

pub const HEADER: [&str; 6] = ["code", "method", "d", "runtime", "seed", "error"];

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub code: String,
    pub method: String,
    pub d: Option<usize>,
    pub runtime: Option<f64>,
    pub seed: Option<u64>,
    pub error: Option<String>,
}

/// Parses the `key=value` tail of a line into run options.
fn options(method: &str, pairs: &[&str]) -> Result<RunOptions> {
    let mut opts = RunOptions::new(parse_method(method)?);
    for pair in pairs {
        let (key, value) =
            pair.split_once('=').ok_or_else(|| Error::Config(format!("expected key=value, got {pair:?}")))?;
        let num = || value.parse::<u64>().map_err(|_| Error::Config(format!("{key} must be a number, got {value:?}")));
        match key {
            "seed" => opts.seed = Some(num()?),
            "budget" => opts.budget = Some(num()? as usize),
            "pless" => opts.pless = value == "true" || value == "1",
            _ => opts.overrides.set_pair(pair)?,
        }
    }
    Ok(opts)
}

/// One line to one row; failures land in the `error` column.
pub fn run_line(line: &str, extra: &Overrides) -> Row {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    let mut row = Row {
        code: tokens.first().unwrap_or(&"").to_string(),
        method: tokens.get(1).unwrap_or(&"").to_string(),
        d: None,
        runtime: None,
        seed: None,
        error: None,
    };
    let result = (|| -> Result<(usize, f64, u64)> {
        if tokens.len() < 2 {
            return Err(Error::Config("expected `<code> <method> [key=value ...]`".into()));
        }
        let mut opts = options(tokens[1], &tokens[2..])?;
        let mut ov = extra.clone();
        ov.extend(&opts.overrides);
        opts.overrides = ov;
        row.seed = opts.seed;
        let code = tokens[0].parse::<CodeSpec>()?.build()?;
        let est = estimate(&code, tokens[0], &opts)?;
        check_bounds(&est)?;
        Ok((est.d, est.wall_time_seconds, est.rng_seed))
    })();
    match result {
        Ok((d, t, seed)) => {
            row.d = Some(d);
            row.runtime = Some(t);
            row.seed = Some(seed);
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

/// Runs every line of `spec`, streaming rows to `out` as they finish.
pub fn run_table<W: Write>(spec: &str, extra: &Overrides, out: W, mut progress: impl FnMut(&Row)) -> Result<Vec<Row>> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Internal(format!("writing CSV: {e}"));
    w.write_record(HEADER).map_err(csv_err)?;
    w.flush().map_err(|e| Error::Internal(e.to_string()))?;
    let mut rows = Vec::new();
    for line in spec.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let row = run_line(line, extra);
        let fmt_opt = |x: Option<String>| x.unwrap_or_default();
        w.write_record([
            row.code.clone(),
            row.method.clone(),
            fmt_opt(row.d.map(|d| d.to_string())),
            fmt_opt(row.runtime.map(|t| format!("{t:.3}"))),
            fmt_opt(row.seed.map(|s| s.to_string())),
            fmt_opt(row.error.clone()),
        ])
        .map_err(csv_err)?;
        w.flush().map_err(|e| Error::Internal(e.to_string()))?;
        progress(&row);
        rows.push(row);
    }
    Ok(rows)
}

//! Code selection strings and generator-matrix files.
//!
//! A code is named either by a construction (`bch:m:t[:d]`, `qr:p`,
//! `dcc:<header bits>`, `qdc:p[:corner]`) or by the path of a matrix file.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use mindist_core::codebook::{build_bch_with_design, build_dcc, build_qdc_with_corner, build_qr};
use mindist_core::{BitWord, LinearCode};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeSpec {
    Bch { m: u32, t: usize, design: Option<usize> },
    Qr { p: u64 },
    Dcc { header: BitWord },
    Qdc { p: u64, corner: bool },
    File(PathBuf),
}

impl CodeSpec {
    pub fn build(&self) -> Result<LinearCode> {
        Ok(match self {
            CodeSpec::Bch { m, t, design } => build_bch_with_design(*m, *t, *design)?,
            CodeSpec::Qr { p } => build_qr(*p)?,
            CodeSpec::Dcc { header } => build_dcc(header)?,
            CodeSpec::Qdc { p, corner } => build_qdc_with_corner(*p, *corner)?,
            CodeSpec::File(path) => read_code(path)?,
        })
    }
}

impl FromStr for CodeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |what: &str| Error::Config(format!("bad code spec {s:?}: {what}"));
        let num = |x: &str| x.parse::<u64>().map_err(|_| bad(&format!("{x:?} is not a number")));
        let parts: Vec<&str> = s.split(':').collect();
        let spec = match parts.as_slice() {
            ["bch", m, t] => CodeSpec::Bch { m: num(m)? as u32, t: num(t)? as usize, design: None },
            ["bch", m, t, d] => {
                CodeSpec::Bch { m: num(m)? as u32, t: num(t)? as usize, design: Some(num(d)? as usize) }
            }
            ["qr", p] => CodeSpec::Qr { p: num(p)? },
            ["dcc", bits] => CodeSpec::Dcc { header: bits.parse().map_err(|_| bad("header must be a 0/1 string"))? },
            ["qdc", p] => CodeSpec::Qdc { p: num(p)?, corner: false },
            ["qdc", p, c] => CodeSpec::Qdc { p: num(p)?, corner: num(c)? != 0 },
            [family @ ("bch" | "qr" | "dcc" | "qdc"), ..] => {
                return Err(bad(&format!("wrong field count for {family}")))
            }
            _ => CodeSpec::File(PathBuf::from(s)),
        };
        Ok(spec)
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeSpec::Bch { m, t, design: None } => write!(f, "bch:{m}:{t}"),
            CodeSpec::Bch { m, t, design: Some(d) } => write!(f, "bch:{m}:{t}:{d}"),
            CodeSpec::Qr { p } => write!(f, "qr:{p}"),
            CodeSpec::Dcc { header } => write!(f, "dcc:{header}"),
            CodeSpec::Qdc { p, corner } => write!(f, "qdc:{p}:{}", *corner as u8),
            CodeSpec::File(p) => write!(f, "{}", p.display()),
        }
    }
}

pub fn read_code(path: &Path) -> Result<LinearCode> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    LinearCode::from_text(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

pub fn write_code(path: &Path, code: &LinearCode) -> Result<()> {
    fs::write(path, code.to_text()).map_err(|e| Error::io(path, e))
}

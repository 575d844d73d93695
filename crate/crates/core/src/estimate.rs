use core::fmt;

use crate::codebook::LinearCode;
use crate::gf2::BitWord;

/// Which estimator produced a distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Method {
    Exact,
    GaA,
    GaB,
    Mim,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::GaA => "ga_a",
            Method::GaB => "ga_b",
            Method::Mim => "mim",
        })
    }
}

/// A distance value together with the codeword that certifies it.
///
/// `d` is an upper bound on the true minimum distance whenever `witness` is
/// present. A missing witness means the estimator never saw a nonzero
/// codeword light enough to report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Estimate {
    pub method: Method,
    pub d: usize,
    pub witness: Option<BitWord>,
}

impl Estimate {
    /// Witness is a nonzero codeword of `code` with weight exactly `d`.
    pub fn is_certified_by(&self, code: &LinearCode) -> bool {
        match &self.witness {
            Some(w) => !w.is_zero() && w.weight() == self.d && code.contains(w),
            None => false,
        }
    }
}

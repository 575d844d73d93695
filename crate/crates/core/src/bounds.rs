//! Classical bounds used to sanity-check distance estimates.
//!
//! Two-decimal values are computed in integer hundredths and truncated, so
//! they print the same on every platform.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::codebook::{Family, LinearCode};
use crate::error::{Error, Result};

/// Coefficient of the linear upper bound, in millionths.
const KRASIKOV_MICRO: u64 = 166_315;

/// Nonnegative fixed-point value in hundredths. Serializes as a decimal
/// number such as `39.74`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fixed2(pub u64);

#[cfg(feature = "serde")]
impl serde::Serialize for Fixed2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.to_f64())
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Fixed2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        let x = <f64 as serde::Deserialize>::deserialize(d)?;
        if !(0.0..1e15).contains(&x) {
            return Err(serde::de::Error::custom("expected a nonnegative decimal"));
        }
        Ok(Fixed2((x * 100.0 + 0.5) as u64))
    }
}

impl Fixed2 {
    pub fn hundredths(self) -> u64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 100.0
    }
}

impl fmt::Display for Fixed2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:02}", self.0 / 100, self.0 % 100)
    }
}

/// `n - k + 1`.
pub fn singleton(n: usize, k: usize) -> usize {
    debug_assert!(n > k && k >= 1);
    n - k + 1
}

/// Square-root bound for quadratic-residue lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SqrtBound {
    /// Smallest d with d² ≥ n.
    pub lower: usize,
    /// √n truncated to two decimals.
    pub sqrt_n: Fixed2,
}

pub fn qr_sqrt_lower(n: usize) -> SqrtBound {
    let n = n as u64;
    let r = n.isqrt();
    let lower = if r * r == n { r } else { r + 1 };
    SqrtBound { lower: lower as usize, sqrt_n: Fixed2((n * 10_000).isqrt()) }
}

/// `0.166315 · n`, truncated to two decimals.
pub fn krasikov_upper(n: usize) -> Fixed2 {
    Fixed2(KRASIKOV_MICRO * n as u64 / 10_000)
}

/// An odd distance implied by an even-weight find on a QR code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ParityAdjusted {
    pub d: usize,
    /// True when `d` was lowered; no witness exists for the implied value.
    pub parity_implied: bool,
}

/// Odd `d_found` is kept; even `d_found` becomes `d_found - 1`.
pub fn pless_parity_adjust(family: Family, d_found: usize) -> Result<ParityAdjusted> {
    if family != Family::Qr {
        return Err(Error::Domain(format!("parity adjustment applies to QR codes only, not {family}")));
    }
    if d_found % 2 == 1 || d_found == 0 {
        Ok(ParityAdjusted { d: d_found, parity_implied: false })
    } else {
        Ok(ParityAdjusted { d: d_found - 1, parity_implied: true })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum BoundName {
    Singleton,
    SqrtLower,
    Krasikov,
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundName::Singleton => "singleton",
            BoundName::SqrtLower => "sqrt_lower",
            BoundName::Krasikov => "krasikov",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Violation {
    pub bound: BoundName,
    pub severity: Severity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundReport {
    pub singleton_upper: usize,
    pub sqrt_lower: Option<SqrtBound>,
    pub krasikov_upper: Option<Fixed2>,
    pub parity_adjusted_d: Option<ParityAdjusted>,
    pub violations: Vec<Violation>,
}

impl BoundReport {
    /// Bounds for `code` checked against an estimate `d`.
    ///
    /// The square-root bound applies to QR codes and the linear bound to QR
    /// codes of length 8m − 1. Exceeding the Singleton bound or falling below
    /// the square-root bound is an error; exceeding the linear bound is only
    /// a warning. The parity adjustment is filled in when `parity` is set and
    /// the code is QR.
    pub fn check(code: &LinearCode, d: usize, parity: bool) -> Self {
        let (n, k) = (code.n(), code.k());
        let qr = code.family() == Family::Qr;
        let singleton_upper = singleton(n, k);
        let sqrt_lower = qr.then(|| qr_sqrt_lower(n));
        let krasikov = (qr && n % 8 == 7).then(|| krasikov_upper(n));
        let mut violations = Vec::new();
        if d > singleton_upper {
            violations.push(Violation { bound: BoundName::Singleton, severity: Severity::Error });
        }
        if sqrt_lower.is_some_and(|s| d < s.lower) {
            violations.push(Violation { bound: BoundName::SqrtLower, severity: Severity::Error });
        }
        if krasikov.is_some_and(|kr| d as u64 * 100 > kr.0) {
            violations.push(Violation { bound: BoundName::Krasikov, severity: Severity::Warning });
        }
        let parity_adjusted_d = if parity && qr { pless_parity_adjust(Family::Qr, d).ok() } else { None };
        BoundReport { singleton_upper, sqrt_lower, krasikov_upper: krasikov, parity_adjusted_d, violations }
    }

    pub fn has_errors(&self) -> bool {
        self.violations.iter().any(|v| v.severity == Severity::Error)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codebook::{build_bch, build_dcc, build_qr};
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn singleton_examples() {
        assert_eq!(singleton(7, 4), 4);
        assert_eq!(singleton(10, 9), 2);
        assert_eq!(singleton(255, 99), 157);
    }

    #[test]
    fn sqrt_examples() {
        let b = qr_sqrt_lower(233);
        assert_eq!((b.lower, b.sqrt_n.to_string()), (16, "15.26".into()));
        assert_eq!(qr_sqrt_lower(337).sqrt_n.to_string(), "18.35");
        assert_eq!(qr_sqrt_lower(1).lower, 1);
        assert_eq!(qr_sqrt_lower(49).lower, 7);
        assert_eq!(qr_sqrt_lower(49).sqrt_n.to_string(), "7.00");
    }

    #[test]
    fn krasikov_examples() {
        assert_eq!(krasikov_upper(239).to_string(), "39.74");
        assert_eq!(krasikov_upper(439).to_string(), "73.01");
        assert_eq!(krasikov_upper(0), Fixed2(0));
    }

    #[test]
    fn parity_examples() {
        assert_eq!(pless_parity_adjust(Family::Qr, 32).unwrap(), ParityAdjusted { d: 31, parity_implied: true });
        assert_eq!(pless_parity_adjust(Family::Qr, 27).unwrap(), ParityAdjusted { d: 27, parity_implied: false });
        assert!(matches!(pless_parity_adjust(Family::Dcc, 8), Err(Error::Domain(_))));
    }

    #[test]
    fn report_flags() {
        let qr = build_qr(47).unwrap();
        let ok = BoundReport::check(&qr, 11, true);
        // 0.166315 * 47 = 7.81, so 11 only warns
        assert_eq!(ok.violations, vec![Violation { bound: BoundName::Krasikov, severity: Severity::Warning }]);
        assert!(!ok.has_errors());
        assert_eq!(ok.sqrt_lower.unwrap().lower, 7);
        assert_eq!(ok.krasikov_upper, Some(krasikov_upper(47)));
        assert_eq!(ok.parity_adjusted_d.unwrap().d, 11);
        let low = BoundReport::check(&qr, 5, false);
        assert!(low.has_errors());
        assert_eq!(low.parity_adjusted_d, None);
        assert_eq!(ok.krasikov_upper.unwrap().to_string(), "7.81");

        let bch = build_bch(4, 1).unwrap();
        let r = BoundReport::check(&bch, 3, true);
        assert_eq!((r.singleton_upper, r.sqrt_lower, r.krasikov_upper, r.parity_adjusted_d), (5, None, None, None));
        assert!(BoundReport::check(&bch, 6, false).has_errors());
        let dcc = build_dcc(&"1001111110".parse().unwrap()).unwrap();
        assert!(BoundReport::check(&dcc, 6, false).violations.is_empty());
    }

    proptest! {
        #[test]
        fn sqrt_lower_brackets(n in 1usize..1_000_000) {
            let d = qr_sqrt_lower(n).lower;
            prop_assert!(d * d >= n && (d - 1) * (d - 1) < n);
            let s = qr_sqrt_lower(n).sqrt_n.to_f64();
            prop_assert!(s <= (n as f64).sqrt() + 1e-9 && (n as f64).sqrt() - s < 0.01 + 1e-9);
        }
    }
}

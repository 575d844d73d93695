//! Exact minimum distance by visiting all `2^k` codewords.
//!
//! Info words are visited in reflected Gray order, so each step XORs a single
//! generator row into the running codeword. The index range can be cut into
//! contiguous pieces ([`sweep_range`]) and merged back ([`merge_parts`]) with a
//! result identical to the single sequential sweep.

use alloc::vec;
use alloc::vec::Vec;

use crate::codebook::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::BitWord;

/// Largest `k` swept without an explicit override.
pub const DEFAULT_BUDGET: usize = 32;
/// Gray indices are `u64`.
pub const MAX_BUDGET: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub d_exact: usize,
    /// First codeword of weight `d_exact` in sweep order.
    pub witness: BitWord,
    /// Info word encoding to `witness`.
    pub info: BitWord,
    /// `enumerator[w]` = number of codewords of weight `w`, zero word included.
    pub enumerator: Option<Vec<u64>>,
    pub enumerated: u64,
}

/// Partial result over a slice of the Gray sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepPart {
    /// `(weight, gray index)` of the lightest nonzero codeword seen.
    pub best: Option<(usize, u64)>,
    pub enumerator: Option<Vec<u64>>,
    pub visited: u64,
}

#[inline]
pub fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// Checks `k` against the budget (capped at [`MAX_BUDGET`]).
pub fn check_budget(code: &LinearCode, budget: Option<usize>) -> Result<()> {
    let budget = budget.unwrap_or(DEFAULT_BUDGET).min(MAX_BUDGET);
    if code.k() > budget {
        return Err(Error::OverBudget { k: code.k(), budget });
    }
    Ok(())
}

pub fn exact_min_distance(code: &LinearCode, budget: Option<usize>) -> Result<ExactResult> {
    run(code, budget, false)
}

/// Same sweep, with the weight enumerator collected.
pub fn exact_enumerator(code: &LinearCode, budget: Option<usize>) -> Result<ExactResult> {
    run(code, budget, true)
}

fn run(code: &LinearCode, budget: Option<usize>, enumerator: bool) -> Result<ExactResult> {
    check_budget(code, budget)?;
    let part = sweep_range(code, 0, 1u64 << code.k(), enumerator);
    merge_parts(code, [part])
}

/// Sweeps Gray indices `start..end`.
pub fn sweep_range(code: &LinearCode, start: u64, end: u64, enumerator: bool) -> SweepPart {
    assert!(code.k() <= MAX_BUDGET && end <= 1u64 << code.k() && start <= end);
    let limbs = code.generator().row(0).limbs().len();
    match limbs {
        1 => sweep_fixed::<1>(code, start, end, enumerator),
        2 => sweep_fixed::<2>(code, start, end, enumerator),
        3 | 4 => sweep_fixed::<4>(code, start, end, enumerator),
        5..=8 => sweep_fixed::<8>(code, start, end, enumerator),
        _ => sweep_dynamic(code, start, end, enumerator),
    }
}

fn initial_codeword(code: &LinearCode, index: u64) -> BitWord {
    let info = BitWord::from_bits((0..code.k()).map(|i| (gray(index) >> i) & 1 == 1));
    code.encode(&info).expect("info length matches k")
}

fn sweep_fixed<const W: usize>(code: &LinearCode, start: u64, end: u64, enumerator: bool) -> SweepPart {
    let rows: Vec<[u64; W]> = code
        .generator()
        .rows()
        .iter()
        .map(|r| {
            let mut a = [0u64; W];
            a[..r.limbs().len()].copy_from_slice(r.limbs());
            a
        })
        .collect();
    let mut counts = enumerator.then(|| vec![0u64; code.n() + 1]);
    let mut best: Option<(usize, u64)> = None;
    if start == end {
        return SweepPart { best, enumerator: counts, visited: 0 };
    }
    let mut cw = [0u64; W];
    let init = initial_codeword(code, start);
    cw[..init.limbs().len()].copy_from_slice(init.limbs());

    let weight = |cw: &[u64; W]| cw.iter().map(|l| l.count_ones() as usize).sum::<usize>();
    let mut best_w = usize::MAX;
    let w0 = weight(&cw);
    if let Some(c) = counts.as_mut() {
        c[w0] += 1;
    }
    if start != 0 {
        best_w = w0;
        best = Some((w0, start));
    }
    for i in start + 1..end {
        let row = &rows[i.trailing_zeros() as usize];
        for j in 0..W {
            cw[j] ^= row[j];
        }
        let w = weight(&cw);
        if let Some(c) = counts.as_mut() {
            c[w] += 1;
        }
        if w < best_w {
            best_w = w;
            best = Some((w, i));
        }
    }
    SweepPart { best, enumerator: counts, visited: end - start }
}

fn sweep_dynamic(code: &LinearCode, start: u64, end: u64, enumerator: bool) -> SweepPart {
    let rows = code.generator().rows();
    let mut counts = enumerator.then(|| vec![0u64; code.n() + 1]);
    let mut best: Option<(usize, u64)> = None;
    if start == end {
        return SweepPart { best, enumerator: counts, visited: 0 };
    }
    let mut cw = initial_codeword(code, start);
    let mut best_w = usize::MAX;
    let w0 = cw.weight();
    if let Some(c) = counts.as_mut() {
        c[w0] += 1;
    }
    if start != 0 {
        best_w = w0;
        best = Some((w0, start));
    }
    for i in start + 1..end {
        cw.xor_assign(&rows[i.trailing_zeros() as usize]);
        let w = cw.weight();
        if let Some(c) = counts.as_mut() {
            c[w] += 1;
        }
        if w < best_w {
            best_w = w;
            best = Some((w, i));
        }
    }
    SweepPart { best, enumerator: counts, visited: end - start }
}

/// Combines partial sweeps: minimum weight (earliest index on ties) and
/// summed enumerators.
pub fn merge_parts<I: IntoIterator<Item = SweepPart>>(code: &LinearCode, parts: I) -> Result<ExactResult> {
    let mut best: Option<(usize, u64)> = None;
    let mut enumerator: Option<Vec<u64>> = None;
    let mut visited = 0;
    for part in parts {
        visited += part.visited;
        if let Some(b) = part.best {
            if best.is_none_or(|cur| b < cur) {
                best = Some(b);
            }
        }
        if let Some(counts) = part.enumerator {
            match enumerator.as_mut() {
                None => enumerator = Some(counts),
                Some(acc) => acc.iter_mut().zip(&counts).for_each(|(a, c)| *a += c),
            }
        }
    }
    let (d_exact, index) = best.ok_or_else(|| Error::Internal("sweep visited no nonzero codeword".into()))?;
    let info = BitWord::from_bits((0..code.k()).map(|i| (gray(index) >> i) & 1 == 1));
    let witness = code.encode(&info)?;
    debug_assert_eq!(witness.weight(), d_exact);
    Ok(ExactResult { d_exact, witness, info, enumerator, enumerated: visited })
}

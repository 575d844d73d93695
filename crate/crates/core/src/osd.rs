//! Soft-input ordered statistics decoding.
//!
//! BPSK convention: bit 0 is sent as −1, bit 1 as +1. A received sample's
//! sign is its hard decision and its magnitude its reliability.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::codebook::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::BitWord;

/// Real-valued received word.
#[derive(Debug, Clone, PartialEq)]
pub struct SoftWord(Vec<f64>);

impl SoftWord {
    pub fn new(values: Vec<f64>) -> Self {
        SoftWord(values)
    }

    /// Noiseless BPSK image of `word`.
    pub fn bpsk(word: &BitWord) -> Self {
        SoftWord(word.iter().map(|b| if b { 1.0 } else { -1.0 }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        SoftWord(self.0.iter().map(|v| v * alpha).collect())
    }

    /// Bit i is 1 iff `y_i > 0`; an exact zero demaps to 0.
    pub fn hard_decision(&self) -> BitWord {
        BitWord::from_bits(self.0.iter().map(|&v| v > 0.0))
    }

    /// Correlation with the BPSK image of `word`, up to the constant
    /// `-Σ y_i`: the sum of `y_i` over the ones of `word`. Larger is closer.
    pub fn correlation(&self, word: &BitWord) -> f64 {
        word.ones_iter().map(|i| self.0[i]).sum()
    }

    /// Squared Euclidean distance to the BPSK image of `word`.
    pub fn squared_distance(&self, word: &BitWord) -> f64 {
        self.0
            .iter()
            .zip(word.iter())
            .map(|(&y, b)| {
                let s = if b { 1.0 } else { -1.0 };
                (y - s) * (y - s)
            })
            .sum()
    }
}

pub fn hard_decision(y: &SoftWord) -> BitWord {
    y.hard_decision()
}

/// Generator rows reduced on the most reliable basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReliableBasis {
    /// MRB positions, most reliable first.
    pub positions: Vec<usize>,
    /// Row j has a one at `positions[j]` and zeros at the other MRB positions.
    pub rows: Vec<BitWord>,
}

impl ReliableBasis {
    /// Codeword whose MRB coordinates equal `info` (in MRB order).
    pub fn encode(&self, info: &BitWord) -> BitWord {
        let mut cw = BitWord::zeros(self.rows.first().map_or(0, BitWord::len));
        for j in info.ones_iter() {
            cw.xor_assign(&self.rows[j]);
        }
        cw
    }
}

/// Positions by decreasing |y|, lower index first on ties.
pub fn reliability_order(y: &SoftWord) -> Vec<usize> {
    let v = y.values();
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[b].abs().total_cmp(&v[a].abs()));
    order
}

/// Greedily takes the first k independent columns in reliability order and
/// reduces the generator so that they carry an identity.
pub fn most_reliable_basis(code: &LinearCode, y: &SoftWord) -> Result<ReliableBasis> {
    let n = code.n();
    if y.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: y.len() });
    }
    let k = code.k();
    let mut rows: Vec<BitWord> = code.generator().rows().to_vec();
    let mut positions = Vec::with_capacity(k);
    for p in reliability_order(y) {
        let r = positions.len();
        if r == k {
            break;
        }
        let Some(pivot) = (r..k).find(|&i| rows[i].get(p)) else { continue };
        rows.swap(r, pivot);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.get(p) {
                row.xor_assign(&pivot_row);
            }
        }
        positions.push(p);
    }
    if positions.len() != k {
        return Err(Error::RankDeficient { rank: positions.len(), expected: k });
    }
    Ok(ReliableBasis { positions, rows })
}

/// Order-l OSD over a fixed code. Immutable once built; decodes may run
/// concurrently on a shared instance.
#[derive(Debug, Clone)]
pub struct OsdDecoder<'a> {
    code: &'a LinearCode,
    order: usize,
}

/// Decoded codeword and its correlation metric.
#[derive(Debug, Clone, PartialEq)]
pub struct Decoded {
    pub codeword: BitWord,
    pub metric: f64,
}

pub const DEFAULT_ORDER: usize = 3;

impl<'a> OsdDecoder<'a> {
    pub fn new(code: &'a LinearCode, order: usize) -> Result<Self> {
        if order > code.k() {
            return Err(Error::Config(alloc::format!("OSD order {order} exceeds code dimension {}", code.k())));
        }
        Ok(OsdDecoder { code, order })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn code(&self) -> &LinearCode {
        self.code
    }

    pub fn decode(&self, y: &SoftWord) -> Result<BitWord> {
        Ok(self.decode_full(y)?.codeword)
    }

    /// Best candidate over the hard-decision base and every MRB error
    /// pattern of weight 1..=order. Ties go to the lexicographically smaller
    /// codeword.
    pub fn decode_full(&self, y: &SoftWord) -> Result<Decoded> {
        let basis = most_reliable_basis(self.code, y)?;
        let info = BitWord::from_bits(basis.positions.iter().map(|&p| y.values()[p] > 0.0));
        let base = basis.encode(&info);
        let scorer = Scorer::new(y);
        let mut search = Search {
            scorer: &scorer,
            rows: &basis.rows,
            best: base.limbs().to_vec(),
            best_metric: scorer.score(base.limbs()),
            scratch: vec![0u64; base.limbs().len()],
        };
        let k = basis.rows.len();
        let mut acc = base.limbs().to_vec();
        search.patterns(&mut acc, 0, k, self.order);
        Ok(Decoded { codeword: BitWord::from_limbs(base.len(), search.best), metric: search.best_metric })
    }
}

/// Correlation scorer. The most frequent sample value is handled with one
/// masked popcount; the remaining positions are summed individually.
struct Scorer {
    mode: f64,
    mode_mask: Vec<u64>,
    others: Vec<(usize, f64)>,
}

impl Scorer {
    fn new(y: &SoftWord) -> Self {
        let v = y.values();
        let mut sorted: Vec<f64> = v.to_vec();
        sorted.sort_by(f64::total_cmp);
        let (mut mode, mut best_run, mut i) = (0.0, 0, 0);
        while i < sorted.len() {
            let j = (i..sorted.len()).find(|&j| sorted[j].to_bits() != sorted[i].to_bits()).unwrap_or(sorted.len());
            if j - i > best_run {
                best_run = j - i;
                mode = sorted[i];
            }
            i = j;
        }
        let mut mode_mask = vec![0u64; v.len().div_ceil(64)];
        let mut others = Vec::new();
        for (i, &x) in v.iter().enumerate() {
            if x.to_bits() == mode.to_bits() {
                mode_mask[i / 64] |= 1 << (i % 64);
            } else {
                others.push((i, x));
            }
        }
        Scorer { mode, mode_mask, others }
    }

    fn score(&self, word: &[u64]) -> f64 {
        let count: u32 = word.iter().zip(&self.mode_mask).map(|(w, m)| (w & m).count_ones()).sum();
        let mut s = self.mode * count as f64;
        for &(i, x) in &self.others {
            if word[i / 64] >> (i % 64) & 1 == 1 {
                s += x;
            }
        }
        s
    }
}

struct Search<'s> {
    scorer: &'s Scorer,
    rows: &'s [BitWord],
    best: Vec<u64>,
    best_metric: f64,
    scratch: Vec<u64>,
}

impl Search<'_> {
    /// Extends `acc` by every pattern of up to `depth` more rows drawn from
    /// `from..k` in increasing index order.
    fn patterns(&mut self, acc: &mut [u64], from: usize, k: usize, depth: usize) {
        if depth == 0 {
            return;
        }
        for j in from..k {
            for (a, r) in acc.iter_mut().zip(self.rows[j].limbs()) {
                *a ^= r;
            }
            self.consider(acc);
            self.patterns(acc, j + 1, k, depth - 1);
            for (a, r) in acc.iter_mut().zip(self.rows[j].limbs()) {
                *a ^= r;
            }
        }
    }

    fn consider(&mut self, cand: &[u64]) {
        let m = self.scorer.score(cand);
        // partial_cmp so that -0.0 and 0.0 tie
        let better = match m.partial_cmp(&self.best_metric) {
            Some(Ordering::Greater) => true,
            Some(Ordering::Equal) => lex_less(cand, &self.best, &mut self.scratch),
            _ => false,
        };
        if better {
            self.best.copy_from_slice(cand);
            self.best_metric = m;
        }
    }
}

/// Lexicographic order with index 0 most significant: the smaller word has
/// a 0 at the first differing position.
fn lex_less(a: &[u64], b: &[u64], scratch: &mut [u64]) -> bool {
    for ((s, x), y) in scratch.iter_mut().zip(a).zip(b) {
        *s = x ^ y;
        if *s != 0 {
            let bit = s.trailing_zeros();
            return (x >> bit) & 1 == 0;
        }
    }
    false
}

/// Maximum-likelihood reference: scans all 2^k codewords. Intended for
/// small codes in tests and debugging.
pub fn decode_exhaustive(code: &LinearCode, y: &SoftWord) -> Result<Decoded> {
    let k = code.k();
    if k > crate::oracle::MAX_BUDGET {
        return Err(Error::OverBudget { k, budget: crate::oracle::MAX_BUDGET });
    }
    let rows = code.generator().rows();
    let scorer = Scorer::new(y);
    let mut cw = vec![0u64; code.n().div_ceil(64)];
    let mut search =
        Search { scorer: &scorer, rows, best: cw.clone(), best_metric: scorer.score(&cw), scratch: cw.clone() };
    for i in 1u64..(1u64 << k) {
        let bit = i.trailing_zeros() as usize;
        for (a, r) in cw.iter_mut().zip(rows[bit].limbs()) {
            *a ^= r;
        }
        search.consider(&cw);
    }
    Ok(Decoded { codeword: BitWord::from_limbs(code.n(), search.best), metric: search.best_metric })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codebook::{build_bch, build_qdc, build_qr};
    use crate::gf2::BitMatrix;
    use proptest::prelude::*;
    use rand::seq::index;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_codeword(code: &LinearCode, rng: &mut ChaCha8Rng) -> BitWord {
        let info = BitWord::from_bits((0..code.k()).map(|_| rng.random::<bool>()));
        code.encode(&info).unwrap()
    }

    fn noisy(n: usize, rng: &mut ChaCha8Rng) -> SoftWord {
        SoftWord::new((0..n).map(|_| rng.random_range(-2.0..1.0)).collect())
    }

    #[test]
    fn hard_decision_examples() {
        assert!(SoftWord::new(vec![-1.0; 5]).hard_decision().is_zero());
        assert_eq!(hard_decision(&SoftWord::new(vec![0.3, -0.1, 2.0])), "101".parse().unwrap());
        assert_eq!(SoftWord::new(vec![0.0, 1.0]).hard_decision(), "01".parse().unwrap());
    }

    #[test]
    fn mrb_identity_prefix_and_tie_rule() {
        let code = build_qdc(11).unwrap();
        let y = SoftWord::new((0..24).map(|i| 30.0 - i as f64).collect());
        let b = most_reliable_basis(&code, &y).unwrap();
        // the generator is systematic, so the first 12 columns are independent
        assert_eq!(b.positions, (0..12).collect::<Vec<_>>());

        let flat = SoftWord::new(vec![1.0; 24]);
        assert_eq!(reliability_order(&flat), (0..24).collect::<Vec<_>>());
        let y = SoftWord::new(vec![0.5, 2.0, -2.0, 1.0]);
        assert_eq!(reliability_order(&y), vec![1, 2, 3, 0]);
    }

    #[test]
    fn mrb_rows_reencode_hard_decisions() {
        let code = build_qdc(11).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let y = noisy(24, &mut rng);
            let b = most_reliable_basis(&code, &y).unwrap();
            let hard = y.hard_decision();
            let info = BitWord::from_bits(b.positions.iter().map(|&p| hard.get(p)));
            let cw = b.encode(&info);
            assert!(code.contains(&cw));
            assert!(b.positions.iter().all(|&p| cw.get(p) == hard.get(p)));
        }
    }

    #[test]
    fn mrb_skips_dependent_columns() {
        // columns 0 and 1 are equal, so the second is dependent
        let g = BitMatrix::from_rows(vec!["1101".parse().unwrap(), "0011".parse().unwrap()]).unwrap();
        let code = LinearCode::generic(g).unwrap();
        let y = SoftWord::new(vec![4.0, 3.0, 2.0, 1.0]);
        assert_eq!(most_reliable_basis(&code, &y).unwrap().positions, vec![0, 2]);
    }

    #[test]
    fn noiseless_fixed_point_all_orders() {
        let code = build_qdc(11).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for order in 0..=3 {
            let dec = OsdDecoder::new(&code, order).unwrap();
            for _ in 0..100 {
                let c = random_codeword(&code, &mut rng);
                assert_eq!(dec.decode(&SoftWord::bpsk(&c)).unwrap(), c);
            }
        }
        let dec = OsdDecoder::new(&code, 3).unwrap();
        assert!(dec.decode(&SoftWord::new(vec![-1.0; 24])).unwrap().is_zero());
    }

    #[test]
    fn order_above_dimension_rejected() {
        let code = build_qr(7).unwrap();
        assert!(OsdDecoder::new(&code, 4).is_ok());
        assert!(matches!(OsdDecoder::new(&code, 5), Err(Error::Config(_))));
    }

    #[test]
    fn length_mismatch_rejected() {
        let code = build_qr(7).unwrap();
        let dec = OsdDecoder::new(&code, 1).unwrap();
        assert!(matches!(dec.decode(&SoftWord::new(vec![-1.0; 6])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn full_order_matches_exhaustive() {
        let code = build_qr(23).unwrap();
        let dec = OsdDecoder::new(&code, code.k()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let y = noisy(23, &mut rng);
            let a = dec.decode_full(&y).unwrap();
            let b = decode_exhaustive(&code, &y).unwrap();
            assert_eq!(a.codeword, b.codeword);
        }
    }

    #[test]
    fn ties_prefer_lexicographically_smaller() {
        let g = BitMatrix::from_rows(vec!["1100".parse().unwrap(), "0011".parse().unwrap()]).unwrap();
        let code = LinearCode::generic(g).unwrap();
        // 0000, 1100, 0011 and 1111 all score 0
        let y = SoftWord::new(vec![1.0, -1.0, 1.0, -1.0]);
        assert!(OsdDecoder::new(&code, 2).unwrap().decode(&y).unwrap().is_zero());

        let g = BitMatrix::from_rows(vec!["110".parse().unwrap(), "011".parse().unwrap()]).unwrap();
        let code = LinearCode::generic(g).unwrap();
        // 110 and 011 both score 2, 101 scores -2
        let y = SoftWord::new(vec![-1.0, 3.0, -1.0]);
        for order in 0..=2 {
            assert_eq!(OsdDecoder::new(&code, order).unwrap().decode(&y).unwrap(), "011".parse().unwrap());
        }
        assert_eq!(decode_exhaustive(&code, &y).unwrap().codeword, "011".parse().unwrap());
    }

    /// BPSK zero word with `flips` samples set to +1.
    fn flipped(n: usize, flips: &[usize]) -> SoftWord {
        let mut v = vec![-1.0; n];
        for &i in flips {
            v[i] = 1.0;
        }
        SoftWord::new(v)
    }

    #[test]
    fn three_flips_order_three_matches_reference() {
        let code = build_qdc(11).unwrap();
        let dec = OsdDecoder::new(&code, 3).unwrap();
        let zero = BitWord::zeros(24);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut agree = 0;
        for _ in 0..1000 {
            let flips = index::sample(&mut rng, 24, 3).into_vec();
            let y = flipped(24, &flips);
            let out = dec.decode(&y).unwrap();
            assert!(code.contains(&out));
            assert!(y.squared_distance(&out) <= y.squared_distance(&zero));
            if out == decode_exhaustive(&code, &y).unwrap().codeword {
                agree += 1;
            }
        }
        assert!(agree >= 950, "{agree}");
    }

    #[test]
    fn three_flips_order_two_fails_only_inside_basis() {
        // all |y| are equal, so the basis is the first 12 positions; with all
        // three flips there the zero word needs a weight-3 pattern
        let code = build_qdc(11).unwrap();
        let dec = OsdDecoder::new(&code, 2).unwrap();
        let zero = BitWord::zeros(24);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut inside = 0;
        for _ in 0..1000 {
            let flips = index::sample(&mut rng, 24, 3).into_vec();
            let y = flipped(24, &flips);
            let out = dec.decode(&y).unwrap();
            let all_in_basis = flips.iter().all(|&i| i < 12);
            inside += all_in_basis as usize;
            let reference = decode_exhaustive(&code, &y).unwrap().codeword;
            assert_eq!(out == reference, !all_in_basis, "{flips:?}");
            assert_eq!(y.squared_distance(&out) <= y.squared_distance(&zero), !all_in_basis);
        }
        // C(12,3)/C(24,3) is about 0.109
        assert!((70..150).contains(&inside), "{inside}");
    }

    #[test]
    fn order_monotone_and_outputs_codewords() {
        let code = build_bch(5, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let decs: Vec<_> = (0..=3).map(|l| OsdDecoder::new(&code, l).unwrap()).collect();
        for _ in 0..100 {
            let y = noisy(code.n(), &mut rng);
            let outs: Vec<Decoded> = decs.iter().map(|d| d.decode_full(&y).unwrap()).collect();
            for o in &outs {
                assert!(code.contains(&o.codeword));
                assert!((o.metric - y.correlation(&o.codeword)).abs() < 1e-9);
            }
            assert!(outs.windows(2).all(|w| w[1].metric >= w[0].metric - 1e-9));
        }
    }

    #[test]
    fn scaling_invariance_on_random_codewords() {
        let code = build_qdc(11).unwrap();
        let dec = OsdDecoder::new(&code, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..1000 {
            let c = random_codeword(&code, &mut rng);
            let mut y = SoftWord::bpsk(&c);
            for v in y.values_mut() {
                *v += rng.random_range(-0.9..0.9);
            }
            let alpha = rng.random_range(0.01..100.0);
            assert_eq!(dec.decode(&y).unwrap(), dec.decode(&y.scaled(alpha)).unwrap());
            assert_eq!(dec.decode(&SoftWord::bpsk(&c)).unwrap(), c);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn no_tested_pattern_beats_output(seed in any::<u64>()) {
            let code = build_qr(17).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let y = noisy(17, &mut rng);
            let out = OsdDecoder::new(&code, 1).unwrap().decode_full(&y).unwrap();
            let b = most_reliable_basis(&code, &y).unwrap();
            let info = BitWord::from_bits(b.positions.iter().map(|&p| y.values()[p] > 0.0));
            let base = b.encode(&info);
            prop_assert!(y.correlation(&base) <= out.metric + 1e-9);
            for r in &b.rows {
                prop_assert!(y.correlation(&base.xor(r)) <= out.metric + 1e-9);
            }
        }
    }
}

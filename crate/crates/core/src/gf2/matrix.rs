use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::word::BitWord;
use crate::error::{Error, Result};

/// Dense binary matrix stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitWord>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix { cols, rows: (0..rows).map(|_| BitWord::zeros(cols)).collect() }
    }

    pub fn identity(k: usize) -> Self {
        BitMatrix { cols: k, rows: (0..k).map(|i| BitWord::unit(k, i)).collect() }
    }

    pub fn from_rows(rows: Vec<BitWord>) -> Result<Self> {
        let cols = rows.first().map_or(0, BitWord::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, found: bad.len() });
        }
        Ok(BitMatrix { cols, rows })
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitWord {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitWord] {
        &self.rows
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.rows[i].set(j, v)
    }

    /// `info · self` over GF(2).
    pub fn encode(&self, info: &BitWord) -> Result<BitWord> {
        if info.len() != self.n_rows() {
            return Err(Error::DimensionMismatch { expected: self.n_rows(), found: info.len() });
        }
        let mut out = BitWord::zeros(self.cols);
        for i in info.ones_iter() {
            out.xor_assign(&self.rows[i]);
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<BitWord> = self.rows.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&i| rows[i].get(c)) else { continue };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (i, r) in rows.iter_mut().enumerate() {
                if i != rank && r.get(c) {
                    r.xor_assign(&pivot);
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    /// Coefficients `x` with `x · self == target`, if `target` lies in the row space.
    pub fn solve_left(&self, target: &BitWord) -> Option<BitWord> {
        assert_eq!(target.len(), self.cols);
        let k = self.n_rows();
        // Track the combination that produced each reduced row.
        let mut rows: Vec<(BitWord, BitWord)> =
            self.rows.iter().enumerate().map(|(i, r)| (r.clone(), BitWord::unit(k, i))).collect();
        let mut residual = target.clone();
        let mut combo = BitWord::zeros(k);
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&i| rows[i].0.get(c)) else { continue };
            rows.swap(rank, p);
            let (pr, pc) = rows[rank].clone();
            for (i, (r, rc)) in rows.iter_mut().enumerate() {
                if i != rank && r.get(c) {
                    r.xor_assign(&pr);
                    rc.xor_assign(&pc);
                }
            }
            if residual.get(c) {
                residual.xor_assign(&pr);
                combo.xor_assign(&pc);
            }
            rank += 1;
        }
        residual.is_zero().then_some(combo)
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in &mut self.rows {
            let (x, y) = (r.get(a), r.get(b));
            if x != y {
                r.flip(a);
                r.flip(b);
            }
        }
    }

    /// Matrix whose column `j` is column `perm[j]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> BitMatrix {
        BitMatrix { cols: self.cols, rows: self.rows.iter().map(|r| r.permuted(perm)).collect() }
    }

    /// Reduces to `[I_k | P]`, swapping columns only where a pivot column is
    /// dependent on the previous ones.
    ///
    /// Returns the systematic matrix and the permutation: column `j` of the
    /// result came from column `perm[j]` of the input.
    pub fn systematize(&self) -> Result<(BitMatrix, Vec<usize>)> {
        let k = self.n_rows();
        let n = self.cols;
        let mut m = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for r in 0..k {
            let pivot = (r..n).find_map(|c| (r..k).find(|&i| m.rows[i].get(c)).map(|i| (i, c)));
            let Some((pi, pc)) = pivot else {
                return Err(Error::RankDeficient { rank: r, expected: k });
            };
            if pc != r {
                m.swap_columns(r, pc);
                perm.swap(r, pc);
            }
            m.rows.swap(r, pi);
            let prow = m.rows[r].clone();
            for (i, row) in m.rows.iter_mut().enumerate() {
                if i != r && row.get(r) {
                    row.xor_assign(&prow);
                }
            }
        }
        Ok((m, perm))
    }

    /// True when the leading `k × k` block is the identity.
    pub fn is_systematic(&self) -> bool {
        let k = self.n_rows();
        k <= self.cols && (0..k).all(|i| (0..k).all(|j| self.get(i, j) == (i == j)))
    }

    /// Text form: `"n k"` header then one row of `n` characters per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.cols, self.n_rows());
        for r in &self.rows {
            s.push_str(&format!("{r}\n"));
        }
        s
    }

    /// Parses the text form written by [`BitMatrix::to_text`].
    pub fn parse_text(text: &str) -> Result<BitMatrix> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse { line: 1, reason: "empty input".into() })?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        let parse_dim =
            |s: &str| s.parse::<usize>().map_err(|_| Error::Parse { line: 1, reason: format!("bad dimension {s:?}") });
        if dims.len() != 2 {
            return Err(Error::Parse { line: 1, reason: "header must be \"n k\"".into() });
        }
        let (n, k) = (parse_dim(dims[0])?, parse_dim(dims[1])?);
        let mut rows = Vec::with_capacity(k);
        for (row_idx, (line_no, line)) in lines.by_ref().take(k).enumerate() {
            let line = line.trim();
            if line.len() != n {
                return Err(Error::Parse {
                    line: line_no + 1,
                    reason: format!("row {row_idx} has {} characters, expected {n}", line.len()),
                });
            }
            let word: BitWord = line.parse().map_err(|e| match e {
                Error::Parse { reason, .. } => {
                    Error::Parse { line: line_no + 1, reason: format!("row {row_idx}: {reason}") }
                }
                other => other,
            })?;
            rows.push(word);
        }
        if rows.len() != k {
            return Err(Error::Parse { line: 0, reason: format!("expected {k} rows, found {}", rows.len()) });
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(Error::Parse { line: line_no + 1, reason: "unexpected extra row".into() });
        }
        Ok(BitMatrix { cols: n, rows })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.n_rows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[&str]) -> BitMatrix {
        BitMatrix::from_rows(rows.iter().map(|r| r.parse().unwrap()).collect()).unwrap()
    }

    #[test]
    fn encode_identity_and_zero() {
        let id = BitMatrix::identity(5);
        let w: BitWord = "10110".parse().unwrap();
        assert_eq!(id.encode(&w).unwrap(), w);
        let g = m(&["1101", "0111"]);
        assert!(g.encode(&BitWord::zeros(2)).unwrap().is_zero());
        assert!(matches!(g.encode(&BitWord::zeros(3)), Err(Error::DimensionMismatch { expected: 2, found: 3 })));
    }

    #[test]
    fn systematize_fixed_point() {
        let g = m(&["1001", "0111"]);
        let (s, perm) = g.systematize().unwrap();
        assert_eq!(s, g);
        assert_eq!(perm, vec![0, 1, 2, 3]);
    }

    #[test]
    fn systematize_rank_error() {
        let g = m(&["1011", "1011"]);
        assert_eq!(g.systematize().unwrap_err(), Error::RankDeficient { rank: 1, expected: 2 });
    }

    #[test]
    fn systematize_swaps_dependent_column() {
        // column 1 is dependent on column 0 after elimination
        let g = m(&["1101", "1110"]);
        let (s, perm) = g.systematize().unwrap();
        assert!(s.is_systematic());
        assert_eq!(perm, vec![0, 2, 1, 3]);
    }

    #[test]
    fn text_format() {
        let g = m(&["111"]);
        assert_eq!(g.to_text(), "3 1\n111\n");
        assert_eq!(BitMatrix::parse_text("3 1\n111").unwrap(), g);
        let err = BitMatrix::parse_text("10 2\n1010101010\n101010101\n").unwrap_err();
        match err {
            Error::Parse { line, reason } => {
                assert_eq!(line, 3);
                assert!(reason.contains("row 1"), "{reason}");
            }
            e => panic!("{e:?}"),
        }
        assert!(BitMatrix::parse_text("3 1\n1x1\n").is_err());
        assert!(BitMatrix::parse_text("3 2\n111\n").is_err());
    }

    fn random_full_rank(rng: &mut ChaCha8Rng, k: usize, n: usize) -> BitMatrix {
        loop {
            let rows = (0..k).map(|_| BitWord::from_bits((0..n).map(|_| rng.random_bool(0.5)))).collect();
            let g = BitMatrix::from_rows(rows).unwrap();
            if g.rank() == k {
                return g;
            }
        }
    }

    #[test]
    fn systematize_random_5x10() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let g = random_full_rank(&mut rng, 5, 10);
            let (s, perm) = g.systematize().unwrap();
            assert!(s.is_systematic());
            // every row of the result lies in the row space of the permuted input
            let gp = g.permute_columns(&perm);
            for r in s.rows() {
                assert!(gp.solve_left(r).is_some());
            }
            // info bits reappear as the codeword prefix
            for v in 0..32u64 {
                let info = BitWord::from_u64(5, v);
                let c = s.encode(&info).unwrap();
                assert!((0..5).all(|i| c.get(i) == info.get(i)));
            }
        }
    }

    proptest! {
        #[test]
        fn rank_invariant_under_row_permutation(seed in any::<u64>(), k in 1usize..8, n in 1usize..16) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rows: Vec<BitWord> =
                (0..k).map(|_| BitWord::from_bits((0..n).map(|_| rng.random_bool(0.5)))).collect();
            let g = BitMatrix::from_rows(rows.clone()).unwrap();
            let mut rev = rows;
            rev.reverse();
            let r = g.rank();
            prop_assert!(r <= k.min(n));
            prop_assert_eq!(r, BitMatrix::from_rows(rev).unwrap().rank());
        }

        #[test]
        fn solve_left_recovers_combination(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_full_rank(&mut rng, 6, 14);
            let x = BitWord::from_bits((0..6).map(|_| rng.random_bool(0.5)));
            let c = g.encode(&x).unwrap();
            prop_assert_eq!(g.solve_left(&c), Some(x));
        }
    }
}

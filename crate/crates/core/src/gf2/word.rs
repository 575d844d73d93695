use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// Fixed-length binary vector, bit-packed into `u64` limbs.
///
/// Bit `i` lives in limb `i / 64` at position `i % 64`. Index 0 is the
/// leftmost symbol in the textual form. Bits past `len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitWord {
    len: usize,
    limbs: Vec<u64>,
}

impl BitWord {
    pub fn zeros(len: usize) -> Self {
        BitWord { len, limbs: vec![0; words_for(len)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut w = BitWord { len, limbs: vec![!0; words_for(len)] };
        w.clear_tail();
        w
    }

    /// Unit vector `e_i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut w = Self::zeros(len);
        w.set(i, true);
        w
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut limbs = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % WORD_BITS == 0 {
                limbs.push(0);
            }
            if b {
                limbs[len / WORD_BITS] |= 1 << (len % WORD_BITS);
            }
            len += 1;
        }
        BitWord { len, limbs }
    }

    /// Builds a word from raw limbs. Bits beyond `len` are cleared.
    pub fn from_limbs(len: usize, mut limbs: Vec<u64>) -> Self {
        limbs.resize(words_for(len), 0);
        let mut w = BitWord { len, limbs };
        w.clear_tail();
        w
    }

    /// Low `len` bits of `value`, bit 0 first.
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= WORD_BITS);
        Self::from_limbs(len, vec![value])
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    #[inline]
    pub(crate) fn limbs_mut(&mut self) -> &mut [u64] {
        &mut self.limbs
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.limbs[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.limbs[i / WORD_BITS] |= mask;
        } else {
            self.limbs[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.limbs[i / WORD_BITS] ^= 1 << (i % WORD_BITS);
    }

    /// Hamming weight.
    #[inline]
    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    pub fn xor_assign(&mut self, other: &BitWord) {
        assert_eq!(self.len, other.len, "xor of words with different lengths");
        for (a, b) in self.limbs.iter_mut().zip(&other.limbs) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitWord) -> BitWord {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn complement(&self) -> BitWord {
        let mut out = BitWord { len: self.len, limbs: self.limbs.iter().map(|l| !l).collect() };
        out.clear_tail();
        out
    }

    /// Parity of `self & other`.
    pub fn dot(&self, other: &BitWord) -> bool {
        assert_eq!(self.len, other.len);
        self.limbs.iter().zip(&other.limbs).map(|(a, b)| (a & b).count_ones()).sum::<u32>() & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Indices of the set bits, ascending.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.limbs.iter().enumerate().flat_map(|(wi, &limb)| {
            let mut rest = limb;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD_BITS + b)
            })
        })
    }

    /// Word with bits `i` taken from `self[perm[i]]`.
    pub fn permuted(&self, perm: &[usize]) -> BitWord {
        assert_eq!(perm.len(), self.len);
        BitWord::from_bits(perm.iter().map(|&p| self.get(p)))
    }

    /// Cyclic shift towards higher indices: bit `i` moves to `(i + by) % len`.
    pub fn rotate_right(&self, by: usize) -> BitWord {
        let n = self.len;
        if n == 0 {
            return self.clone();
        }
        let mut out = BitWord::zeros(n);
        for i in self.ones_iter() {
            out.set((i + by) % n, true);
        }
        out
    }

    /// Lexicographic order with index 0 most significant.
    pub fn lex_cmp(&self, other: &BitWord) -> core::cmp::Ordering {
        for (a, b) in self.limbs.iter().zip(&other.limbs) {
            if a != b {
                // lowest differing bit decides; a 0 there sorts first
                let low = (a ^ b).trailing_zeros();
                return if (a >> low) & 1 == 0 { core::cmp::Ordering::Less } else { core::cmp::Ordering::Greater };
            }
        }
        self.len.cmp(&other.len)
    }

    fn clear_tail(&mut self) {
        let r = self.len % WORD_BITS;
        if r != 0 {
            if let Some(last) = self.limbs.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitWord({self})")
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (i, c) in s.trim().chars().enumerate() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(Error::Parse {
                        line: 0,
                        reason: alloc::format!("character {other:?} at column {i} is not 0 or 1"),
                    })
                }
            }
        }
        Ok(BitWord::from_bits(bits))
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for BitWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for BitWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn weight_examples() {
        assert_eq!(BitWord::zeros(7).weight(), 0);
        let w: BitWord = "1001111110".parse().unwrap();
        assert_eq!(w.weight(), 7);
        for n in [1, 63, 64, 65, 200] {
            assert_eq!(BitWord::ones(n).weight(), n);
        }
    }

    #[test]
    fn text_round_trip_and_index_order() {
        let w: BitWord = "1100".parse().unwrap();
        assert!(w.get(0) && w.get(1) && !w.get(2));
        assert_eq!(alloc::format!("{w}"), "1100");
        assert!("10a1".parse::<BitWord>().is_err());
    }

    #[test]
    fn rotate_right_moves_to_higher_index() {
        let w: BitWord = "1100".parse().unwrap();
        assert_eq!(alloc::format!("{}", w.rotate_right(1)), "0110");
        assert_eq!(alloc::format!("{}", w.rotate_right(3)), "1001");
    }

    #[test]
    fn lex_order_index_zero_first() {
        let a: BitWord = "0111".parse().unwrap();
        let b: BitWord = "1000".parse().unwrap();
        assert_eq!(a.lex_cmp(&b), core::cmp::Ordering::Less);
        assert_eq!(b.lex_cmp(&a), core::cmp::Ordering::Greater);
        assert_eq!(a.lex_cmp(&a), core::cmp::Ordering::Equal);
    }

    fn word(len: usize) -> impl Strategy<Value = BitWord> {
        proptest::collection::vec(any::<bool>(), len).prop_map(BitWord::from_bits)
    }

    proptest! {
        #[test]
        fn triangle_inequality((u, v) in (1usize..300).prop_flat_map(|n| (word(n), word(n)))) {
            prop_assert!(u.xor(&v).weight() <= u.weight() + v.weight());
            prop_assert_eq!(u.xor(&v).len(), u.len());
        }

        #[test]
        fn ones_iter_matches_get(u in (1usize..200).prop_flat_map(word)) {
            let ones: Vec<usize> = u.ones_iter().collect();
            let expect: Vec<usize> = (0..u.len()).filter(|&i| u.get(i)).collect();
            prop_assert_eq!(ones, expect);
        }
    }
}

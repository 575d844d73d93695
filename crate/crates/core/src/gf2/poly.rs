use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul};

use super::word::{words_for, BitWord, WORD_BITS};
use crate::error::{Error, Result};

/// Polynomial over GF(2), coefficient of `x^i` in bit `i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinPoly {
    limbs: Vec<u64>,
}

impl BinPoly {
    pub fn zero() -> Self {
        BinPoly { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(deg: usize) -> Self {
        let mut p = BinPoly { limbs: vec![0; words_for(deg + 1)] };
        p.limbs[deg / WORD_BITS] = 1 << (deg % WORD_BITS);
        p
    }

    /// From the integer whose bit `i` is the coefficient of `x^i`.
    pub fn from_u64(bits: u64) -> Self {
        let mut p = BinPoly { limbs: vec![bits] };
        p.normalize();
        p
    }

    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut p = BinPoly::zero();
        for e in exps {
            p.toggle(e);
        }
        p
    }

    /// Coefficients, lowest degree first.
    pub fn from_coeffs(word: &BitWord) -> Self {
        let mut p = BinPoly { limbs: word.limbs().to_vec() };
        p.normalize();
        p
    }

    /// Coefficients `c_0 .. c_{len-1}` as a word; `len` must exceed the degree.
    pub fn to_word(&self, len: usize) -> BitWord {
        assert!(self.degree() < len as isize, "polynomial does not fit in {len} bits");
        BitWord::from_limbs(len, self.limbs.clone())
    }

    /// Degree, with the zero polynomial at -1.
    pub fn degree(&self) -> isize {
        match self.limbs.last() {
            None => -1,
            Some(&top) => ((self.limbs.len() - 1) * WORD_BITS + 63 - top.leading_zeros() as usize) as isize,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.limbs.get(i / WORD_BITS).is_some_and(|l| (l >> (i % WORD_BITS)) & 1 == 1)
    }

    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
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

    fn toggle(&mut self, i: usize) {
        let w = i / WORD_BITS;
        if self.limbs.len() <= w {
            self.limbs.resize(w + 1, 0);
        }
        self.limbs[w] ^= 1 << (i % WORD_BITS);
        self.normalize();
    }

    fn normalize(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    /// `self ^= other << shift`.
    fn xor_shifted(&mut self, other: &BinPoly, shift: usize) {
        if other.is_zero() {
            return;
        }
        let need = words_for(other.degree() as usize + shift + 1);
        if self.limbs.len() < need {
            self.limbs.resize(need, 0);
        }
        let (ws, bs) = (shift / WORD_BITS, shift % WORD_BITS);
        for (i, &l) in other.limbs.iter().enumerate() {
            self.limbs[i + ws] ^= l << bs;
            if bs != 0 && i + ws + 1 < self.limbs.len() {
                self.limbs[i + ws + 1] ^= l >> (WORD_BITS - bs);
            }
        }
        self.normalize();
    }

    pub fn mul(&self, other: &BinPoly) -> BinPoly {
        let mut out = BinPoly::zero();
        for (wi, &limb) in self.limbs.iter().enumerate() {
            let mut rest = limb;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                out.xor_shifted(other, wi * WORD_BITS + b);
            }
        }
        out
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, divisor: &BinPoly) -> Result<(BinPoly, BinPoly)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = divisor.degree();
        let mut rem = self.clone();
        let mut quot = BinPoly::zero();
        while rem.degree() >= dd {
            let shift = (rem.degree() - dd) as usize;
            rem.xor_shifted(divisor, shift);
            quot.toggle(shift);
        }
        Ok((quot, rem))
    }

    pub fn rem(&self, divisor: &BinPoly) -> Result<BinPoly> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn gcd(&self, other: &BinPoly) -> BinPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a
    }

    /// `x^e mod modulus` by repeated squaring.
    pub fn pow_x_mod(e: u64, modulus: &BinPoly) -> Result<BinPoly> {
        let mut result = BinPoly::one().rem(modulus)?;
        let mut base = BinPoly::monomial(1).rem(modulus)?;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).rem(modulus)?;
            }
            base = base.mul(&base).rem(modulus)?;
            e >>= 1;
        }
        Ok(result)
    }
}

impl Add for &BinPoly {
    type Output = BinPoly;
    fn add(self, rhs: &BinPoly) -> BinPoly {
        let mut out = self.clone();
        out.xor_shifted(rhs, 0);
        out
    }
}

impl Mul for &BinPoly {
    type Output = BinPoly;
    fn mul(self, rhs: &BinPoly) -> BinPoly {
        BinPoly::mul(self, rhs)
    }
}

impl fmt::Display for BinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<String> = Vec::new();
        for e in (0..=self.degree() as usize).rev().filter(|&e| self.coeff(e)) {
            terms.push(match e {
                0 => "1".into(),
                1 => "x".into(),
                _ => alloc::format!("x^{e}"),
            });
        }
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for BinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinPoly({self})")
    }
}

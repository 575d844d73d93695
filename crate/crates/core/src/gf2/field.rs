use alloc::vec;
use alloc::vec::Vec;

use super::poly::BinPoly;
use crate::error::{Error, Result};

/// Primitive polynomials, the numerically smallest one for each degree
/// `m = 2..=16` (bit `i` is the coefficient of `x^i`).
pub const PRIMITIVE_POLYS: [u32; 15] = [
    0x7,     // x^2 + x + 1
    0xb,     // x^3 + x + 1
    0x13,    // x^4 + x + 1
    0x25,    // x^5 + x^2 + 1
    0x43,    // x^6 + x + 1
    0x83,    // x^7 + x + 1
    0x11d,   // x^8 + x^4 + x^3 + x^2 + 1
    0x211,   // x^9 + x^4 + 1
    0x409,   // x^10 + x^3 + 1
    0x805,   // x^11 + x^2 + 1
    0x1053,  // x^12 + x^6 + x^4 + x + 1
    0x201b,  // x^13 + x^4 + x^3 + x + 1
    0x402b,  // x^14 + x^5 + x^3 + x + 1
    0x8003,  // x^15 + x + 1
    0x1002d, // x^16 + x^5 + x^3 + x^2 + 1
];

/// Element of GF(2^m) in polynomial-basis representation.
pub type Gf = u32;

/// GF(2^m) with log/antilog tables over the fixed primitive polynomial.
#[derive(Clone, Debug)]
pub struct GF2mField {
    m: u32,
    primitive_poly: u32,
    exp: Vec<Gf>,
    log: Vec<u32>,
}

impl GF2mField {
    pub fn new(m: u32) -> Result<Self> {
        if !(2..=16).contains(&m) {
            return Err(Error::UnsupportedDegree(m));
        }
        let poly = PRIMITIVE_POLYS[(m - 2) as usize];
        let order = (1usize << m) - 1;
        // exp is doubled so products of logs never need a reduction
        let mut exp = vec![0; 2 * order];
        let mut log = vec![0; order + 1];
        let mut x: Gf = 1;
        for (i, e) in exp.iter_mut().take(order).enumerate() {
            *e = x;
            log[x as usize] = i as u32;
            x <<= 1;
            if x >> m != 0 {
                x ^= poly;
            }
        }
        if x != 1 {
            return Err(Error::Internal("primitive polynomial table entry is not primitive".into()));
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        Ok(GF2mField { m, primitive_poly: poly, exp, log })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Multiplicative group order `2^m - 1`.
    pub fn order(&self) -> usize {
        (1 << self.m) - 1
    }

    pub fn size(&self) -> usize {
        1 << self.m
    }

    pub fn primitive_poly(&self) -> BinPoly {
        BinPoly::from_u64(self.primitive_poly as u64)
    }

    /// `α^e`.
    #[inline]
    pub fn alpha_pow(&self, e: usize) -> Gf {
        self.exp[e % self.order()]
    }

    /// Discrete log base α; `None` for zero.
    #[inline]
    pub fn log(&self, x: Gf) -> Option<u32> {
        (x != 0).then(|| self.log[x as usize])
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    pub fn inv(&self, a: Gf) -> Option<Gf> {
        self.log(a).map(|l| self.exp[(self.order() - l as usize) % self.order()])
    }

    pub fn pow(&self, a: Gf, e: usize) -> Gf {
        match self.log(a) {
            None if e == 0 => 1,
            None => 0,
            Some(l) => self.exp[(l as usize * e) % self.order()],
        }
    }

    /// Evaluates a binary polynomial at `x`.
    pub fn eval(&self, p: &BinPoly, x: Gf) -> Gf {
        let mut acc = 0;
        for e in p.exponents() {
            acc ^= self.pow(x, e);
        }
        acc
    }

    /// Expands `∏ (X - r)` over the given roots; coefficients lowest degree first.
    pub fn poly_from_roots(&self, roots: &[Gf]) -> Vec<Gf> {
        let mut coeffs = vec![1];
        for &r in roots {
            let mut next = vec![0; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] ^= c;
                next[i] ^= self.mul(c, r);
            }
            coeffs = next;
        }
        coeffs
    }

    /// Minimal polynomial of `α^s`: product over the cyclotomic coset of `s`.
    pub fn minimal_polynomial(&self, s: usize) -> Result<BinPoly> {
        let roots: Vec<Gf> =
            cyclotomic_coset(s % self.order(), self.order()).into_iter().map(|j| self.alpha_pow(j)).collect();
        binary_poly(&self.poly_from_roots(&roots))
    }
}

/// Converts GF(2^m) coefficients known to lie in GF(2) into a [`BinPoly`].
pub fn binary_poly(coeffs: &[Gf]) -> Result<BinPoly> {
    if let Some(c) = coeffs.iter().find(|&&c| c > 1) {
        return Err(Error::Internal(alloc::format!("coefficient {c:#x} lies outside GF(2)")));
    }
    Ok(BinPoly::from_exponents(coeffs.iter().enumerate().filter(|(_, &c)| c == 1).map(|(i, _)| i)))
}

/// `{s, 2s, 4s, ...} mod n`, sorted ascending.
pub fn cyclotomic_coset(s: usize, n: usize) -> Vec<usize> {
    let mut coset = vec![s % n];
    let mut x = (2 * s) % n;
    while x != s % n {
        coset.push(x);
        x = (2 * x) % n;
    }
    coset.sort_unstable();
    coset
}

//! Constructors for the code families: narrow-sense primitive BCH, binary
//! quadratic residue, rate-1/2 double circulant and bordered quadratic
//! double circulant codes.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::gf2::{binary_poly, cyclotomic_coset, BinPoly, BitMatrix, BitWord, GF2mField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "UPPERCASE"))]
pub enum Family {
    Bch,
    Qr,
    Dcc,
    Qdc,
    Generic,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Bch => "BCH",
            Family::Qr => "QR",
            Family::Dcc => "DCC",
            Family::Qdc => "QDC",
            Family::Generic => "GENERIC",
        })
    }
}

/// Parameters a code was constructed from.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "lowercase"))]
pub enum CodeParams {
    Bch { m: u32, t: usize },
    Qr { p: u64 },
    Dcc { header: BitWord },
    Qdc { p: u64, corner: bool },
    Generic,
}

/// A binary linear `(n, k)` code given by a full-rank generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    generator: BitMatrix,
    family: Family,
    design_distance: Option<usize>,
    params: CodeParams,
    generator_poly: Option<BinPoly>,
}

impl LinearCode {
    /// Wraps a generator matrix, checking `rank == k` and `n > k >= 1`.
    pub fn new(
        generator: BitMatrix,
        family: Family,
        design_distance: Option<usize>,
        params: CodeParams,
    ) -> Result<Self> {
        let (k, n) = (generator.n_rows(), generator.n_cols());
        if k == 0 || n <= k {
            return Err(Error::Domain(format!("need n > k >= 1, got n = {n}, k = {k}")));
        }
        let rank = generator.rank();
        if rank != k {
            return Err(Error::RankDeficient { rank, expected: k });
        }
        Ok(LinearCode { generator, family, design_distance, params, generator_poly: None })
    }

    pub fn generic(generator: BitMatrix) -> Result<Self> {
        Self::new(generator, Family::Generic, None, CodeParams::Generic)
    }

    /// Parses the `"n k"` + rows text format and checks full rank.
    pub fn from_text(text: &str) -> Result<Self> {
        Self::generic(BitMatrix::parse_text(text)?)
    }

    pub fn to_text(&self) -> String {
        self.generator.to_text()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.generator.n_cols()
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.generator.n_rows()
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn design_distance(&self) -> Option<usize> {
        self.design_distance
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    /// Generator polynomial, for the cyclic families.
    pub fn generator_poly(&self) -> Option<&BinPoly> {
        self.generator_poly.as_ref()
    }

    pub fn with_design_distance(mut self, d: Option<usize>) -> Self {
        self.design_distance = d;
        self
    }

    pub fn encode(&self, info: &BitWord) -> Result<BitWord> {
        self.generator.encode(info)
    }

    /// Membership test by solving `x · G = word`.
    pub fn contains(&self, word: &BitWord) -> bool {
        word.len() == self.n() && self.generator.solve_left(word).is_some()
    }

    /// Short label such as `BCH(15,11,3)` or `DCC(20,10)`.
    pub fn label(&self) -> String {
        match self.design_distance {
            Some(d) => format!("{}({},{},{})", self.family, self.n(), self.k(), d),
            None => format!("{}({},{})", self.family, self.n(), self.k()),
        }
    }
}

/// Deterministic trial-division primality test.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Nonzero squares modulo an odd prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSet {
    p: u64,
    residues: Vec<u64>,
}

impl ResidueSet {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Sorted ascending.
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn contains(&self, r: u64) -> bool {
        self.residues.binary_search(&(r % self.p)).is_ok()
    }

    /// Nonzero non-residues, sorted ascending.
    pub fn non_residues(&self) -> Vec<u64> {
        (1..self.p).filter(|&r| !self.contains(r)).collect()
    }
}

pub fn quadratic_residues(p: u64) -> Result<ResidueSet> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let mut residues: Vec<u64> = (1..p).map(|x| x * x % p).collect();
    residues.sort_unstable();
    residues.dedup();
    Ok(ResidueSet { p, residues })
}

/// Rows `x^i · g(x)` for `i = 0..n-deg(g)`.
pub fn cyclic_generator_matrix(g: &BinPoly, n: usize) -> Result<BitMatrix> {
    let deg = g.degree();
    if deg < 0 || deg as usize >= n {
        return Err(Error::Domain(format!(
            "generator polynomial of degree {deg} leaves no information bits at n = {n}"
        )));
    }
    let k = n - deg as usize;
    let rows = (0..k).map(|i| g.to_word(n).rotate_right(i)).collect();
    BitMatrix::from_rows(rows)
}

fn cyclic_code(g: BinPoly, n: usize, family: Family, design: Option<usize>, params: CodeParams) -> Result<LinearCode> {
    let (systematic, perm) = cyclic_generator_matrix(&g, n)?.systematize()?;
    debug_assert!(perm.iter().enumerate().all(|(i, &p)| i == p));
    let mut code = LinearCode::new(systematic, family, design, params)?;
    code.generator_poly = Some(g);
    Ok(code)
}

/// Product of the distinct minimal polynomials of `α^1 .. α^{2t}`.
pub fn bch_generator_poly(field: &GF2mField, t: usize) -> Result<BinPoly> {
    let n = field.order();
    let mut seen: Vec<usize> = Vec::new();
    let mut g = BinPoly::one();
    for i in 1..=2 * t {
        let rep = cyclotomic_coset(i % n, n)[0];
        if !seen.contains(&rep) {
            seen.push(rep);
            g = g.mul(&field.minimal_polynomial(rep)?);
        }
    }
    Ok(g)
}

/// Narrow-sense primitive BCH code of length `2^m - 1`, designed distance `2t + 1`.
pub fn build_bch(m: u32, t: usize) -> Result<LinearCode> {
    build_bch_with_design(m, t, None)
}

/// As [`build_bch`], with the reported design distance overridden (for
/// labels that quote the Bose distance).
pub fn build_bch_with_design(m: u32, t: usize, design: Option<usize>) -> Result<LinearCode> {
    if !(3..=9).contains(&m) {
        return Err(Error::Domain(format!("BCH field degree m = {m} outside 3..=9")));
    }
    if t == 0 {
        return Err(Error::Domain("BCH error capacity t must be at least 1".into()));
    }
    let field = GF2mField::new(m)?;
    let n = field.order();
    let g = bch_generator_poly(&field, t)?;
    if g.degree() as usize >= n {
        return Err(Error::Domain(format!("BCH(m = {m}, t = {t}) has no information bits")));
    }
    cyclic_code(g, n, Family::Bch, Some(design.unwrap_or(2 * t + 1)), CodeParams::Bch { m, t })
}

/// Multiplicative order of 2 modulo an odd `p`.
pub fn order_of_two(p: u64) -> u32 {
    let mut x = 2 % p;
    let mut ord = 1;
    while x != 1 {
        x = x * 2 % p;
        ord += 1;
    }
    ord
}

/// Generator polynomial of the quadratic-residue code of prime length `p`,
/// degree `(p - 1) / 2`.
///
/// Computed in GF(2)[x] as `gcd(e(x), x^p - 1)` for the residue-indexed
/// idempotent candidates `e`, so no extension field is needed. When the
/// splitting field is small enough for the log tables, the result is
/// cross-checked against `∏ (x - β^r)` over the residues `r`.
pub fn qr_generator_poly(p: u64) -> Result<BinPoly> {
    let q = quadratic_residues(p)?;
    if p % 8 != 1 && p % 8 != 7 {
        return Err(Error::Domain(format!("2 is not a quadratic residue modulo {p} (need p = ±1 mod 8)")));
    }
    let n = p as usize;
    let half = (n - 1) / 2;
    let x_n_1 = &BinPoly::monomial(n) + &BinPoly::one();
    let e_q = BinPoly::from_exponents(q.residues().iter().map(|&r| r as usize));
    let e_n = BinPoly::from_exponents(q.non_residues().into_iter().map(|r| r as usize));
    let g = [e_q.clone(), &e_q + &BinPoly::one(), e_n.clone(), &e_n + &BinPoly::one()]
        .iter()
        .map(|e| e.gcd(&x_n_1))
        .find(|g| g.degree() == half as isize)
        .ok_or_else(|| {
            Error::Internal(format!("no residue idempotent yields a degree-{half} generator for p = {p}"))
        })?;

    let m = order_of_two(p);
    if m <= 16 {
        let g_field = qr_generator_poly_in_field(&q, &GF2mField::new(m)?)?;
        let partner = x_n_1.div_rem(&(&g * &BinPoly::from_u64(0b11)))?;
        if !partner.1.is_zero() || (g_field != g && g_field != partner.0) {
            return Err(Error::Internal(format!("QR generator routes disagree for p = {p}")));
        }
    }
    Ok(g)
}

/// `∏_{r ∈ Q} (x - β^r)` with `β = α^((2^m - 1) / p)` a primitive `p`-th root
/// of unity; fails if a coefficient falls outside GF(2).
pub fn qr_generator_poly_in_field(q: &ResidueSet, field: &GF2mField) -> Result<BinPoly> {
    let p = q.p() as usize;
    if field.order() % p != 0 {
        return Err(Error::Domain(format!("GF(2^{}) has no primitive {p}-th root of unity", field.m())));
    }
    let beta = field.order() / p;
    let roots: Vec<_> = q.residues().iter().map(|&r| field.alpha_pow(beta * r as usize)).collect();
    binary_poly(&field.poly_from_roots(&roots))
}

/// Binary quadratic-residue code of prime length `p`, dimension `(p + 1) / 2`.
pub fn build_qr(p: u64) -> Result<LinearCode> {
    let g = qr_generator_poly(p)?;
    cyclic_code(g, p as usize, Family::Qr, None, CodeParams::Qr { p })
}

/// Circulant whose row 0 is `first` and row `i` is `first` shifted right by `i`.
pub fn circulant(first: &BitWord) -> Vec<BitWord> {
    (0..first.len()).map(|i| first.rotate_right(i)).collect()
}

/// Rate-1/2 double-circulant code `[I_k | A]`, `A` circulant with row 0 = header.
pub fn build_dcc(header: &BitWord) -> Result<LinearCode> {
    let k = header.len();
    if k < 2 {
        return Err(Error::Domain(format!("double-circulant header needs at least 2 bits, got {k}")));
    }
    let rows = circulant(header)
        .into_iter()
        .enumerate()
        .map(|(i, a)| BitWord::from_bits(BitWord::unit(k, i).iter().chain(a.iter())))
        .collect();
    LinearCode::new(BitMatrix::from_rows(rows)?, Family::Dcc, None, CodeParams::Dcc { header: header.clone() })
}

/// Defining polynomial of the bordered double-circulant code:
/// `1 + Σ_{r∈Q} x^r` for `p ≡ 3 (mod 8)`, `Σ_{r∈Q} x^r` for `p ≡ -3 (mod 8)`.
pub fn qdc_defining_poly(p: u64) -> Result<BinPoly> {
    let q = quadratic_residues(p)?;
    let sum = BinPoly::from_exponents(q.residues().iter().map(|&r| r as usize));
    match p % 8 {
        3 => Ok(&sum + &BinPoly::one()),
        5 => Ok(sum),
        _ => Err(Error::Domain(format!("quadratic double circulant codes need p = ±3 mod 8, got p = {p}"))),
    }
}

/// Bordered quadratic double-circulant `[2(p+1), p+1]` code with a zero corner.
pub fn build_qdc(p: u64) -> Result<LinearCode> {
    build_qdc_with_corner(p, false)
}

/// `G = [I_{p+1} | B]` where `B` has `corner` at (0, 0), ones along the rest of
/// row 0 and column 0, and the circulant of `b(x)` in the lower-right block.
pub fn build_qdc_with_corner(p: u64, corner: bool) -> Result<LinearCode> {
    let b = qdc_defining_poly(p)?;
    let p_us = p as usize;
    let k = p_us + 1;
    let body = circulant(&b.to_word(p_us));
    let mut rows = Vec::with_capacity(k);
    let border = BitWord::from_bits(core::iter::once(corner).chain(core::iter::repeat_n(true, p_us)));
    rows.push(BitWord::from_bits(BitWord::unit(k, 0).iter().chain(border.iter())));
    for (i, c) in body.iter().enumerate() {
        let right = core::iter::once(true).chain(c.iter());
        rows.push(BitWord::from_bits(BitWord::unit(k, i + 1).iter().chain(right)));
    }
    LinearCode::new(BitMatrix::from_rows(rows)?, Family::Qdc, None, CodeParams::Qdc { p, corner })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_examples() {
        assert_eq!(quadratic_residues(7).unwrap().residues(), &[1, 2, 4]);
        assert_eq!(quadratic_residues(11).unwrap().residues(), &[1, 3, 4, 5, 9]);
        assert_eq!(quadratic_residues(3).unwrap().residues(), &[1]);
        assert_eq!(quadratic_residues(9).unwrap_err(), Error::NotOddPrime(9));
        assert_eq!(quadratic_residues(2).unwrap_err(), Error::NotOddPrime(2));
    }

    #[test]
    fn residue_set_matches_euler_criterion() {
        fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
            let mut r = 1;
            b %= m;
            while e > 0 {
                if e & 1 == 1 {
                    r = r * b % m;
                }
                b = b * b % m;
                e >>= 1;
            }
            r
        }
        for p in (3..400).filter(|&p| is_prime(p)) {
            let q = quadratic_residues(p).unwrap();
            assert_eq!(q.residues().len() as u64, (p - 1) / 2);
            for r in 1..p {
                assert_eq!(q.contains(r), pow_mod(r, (p - 1) / 2, p) == 1);
            }
        }
    }

    #[test]
    fn bch_parameters() {
        let c = build_bch(4, 1).unwrap();
        assert_eq!((c.n(), c.k(), c.design_distance()), (15, 11, Some(3)));
        assert_eq!(c.generator_poly(), Some(&BinPoly::from_u64(0b10011)));
        let c = build_bch(5, 1).unwrap();
        assert_eq!((c.n(), c.k()), (31, 26));
        assert_eq!((build_bch(6, 7).unwrap().k(), build_bch(6, 5).unwrap().k()), (24, 36));
        assert_eq!(build_bch(7, 10).unwrap().k(), 64);
        assert_eq!(build_bch_with_design(7, 11, Some(23)).unwrap().label(), "BCH(127,57,23)");
        assert!(build_bch(2, 1).is_err());
        assert!(build_bch(10, 1).is_err());
        assert!(build_bch(4, 0).is_err());
        // 2t+1 beyond n: every coset absorbed
        assert!(matches!(build_bch(3, 4), Err(Error::Domain(_))));
    }

    #[test]
    fn bch_roots() {
        for (m, t) in [(4, 1), (4, 2), (5, 3), (6, 7), (7, 10), (8, 5)] {
            let f = GF2mField::new(m).unwrap();
            let c = build_bch(m, t).unwrap();
            let g = c.generator_poly().unwrap();
            for i in 1..=2 * t {
                assert_eq!(f.eval(g, f.alpha_pow(i)), 0, "m={m} t={t} i={i}");
            }
            assert_eq!(c.generator().rank(), c.k());
        }
    }

    #[test]
    fn qr_parameters() {
        for (p, k) in [(7, 4), (17, 9), (23, 12), (41, 21), (47, 24), (73, 37), (199, 100)] {
            let c = build_qr(p).unwrap();
            assert_eq!((c.n(), c.k()), (p as usize, k));
            let g = c.generator_poly().unwrap();
            assert_eq!(g.degree() as u64, (p - 1) / 2);
            let x_n_1 = &BinPoly::monomial(p as usize) + &BinPoly::one();
            assert!(x_n_1.rem(g).unwrap().is_zero());
        }
        assert!(matches!(build_qr(11), Err(Error::Domain(_))));
        assert_eq!(build_qr(8).unwrap_err(), Error::NotOddPrime(8));
    }

    #[test]
    fn qr_field_route_binary_for_small_splitting_fields() {
        for p in [7u64, 17, 23, 31, 73, 89, 127] {
            let q = quadratic_residues(p).unwrap();
            let f = GF2mField::new(order_of_two(p)).unwrap();
            let g = qr_generator_poly_in_field(&q, &f).unwrap();
            assert_eq!(g.degree() as u64, (p - 1) / 2);
        }
    }

    #[test]
    fn dcc_structure() {
        let header: BitWord = "1001111110".parse().unwrap();
        let c = build_dcc(&header).unwrap();
        assert_eq!((c.n(), c.k()), (20, 10));
        for (i, row) in c.generator().rows().iter().enumerate() {
            assert_eq!(row.weight(), 1 + header.weight());
            let a = BitWord::from_bits(row.iter().skip(10));
            assert_eq!(a, header.rotate_right(i));
        }
        // e_0 encodes to e_0 followed by the header
        let cw = c.encode(&BitWord::unit(10, 0)).unwrap();
        assert_eq!(alloc::format!("{cw}"), "10000000001001111110");
        assert!(build_dcc(&"1".parse().unwrap()).is_err());
    }

    #[test]
    fn qdc_structure() {
        for p in [11u64, 13, 19, 29, 37] {
            let b = qdc_defining_poly(p).unwrap();
            let expect = if p % 8 == 3 { 1 + (p - 1) / 2 } else { (p - 1) / 2 };
            assert_eq!(b.weight() as u64, expect);
            let c = build_qdc(p).unwrap();
            assert_eq!((c.n() as u64, c.k() as u64), (2 * (p + 1), p + 1));
            let g = c.generator();
            let k = c.k();
            assert!(!g.get(0, k));
            assert!((1..k).all(|j| g.get(0, k + j) && g.get(j, k)));
        }
        assert!(matches!(build_qdc(7), Err(Error::Domain(_))));
        assert!(matches!(build_qdc(17), Err(Error::Domain(_))));
    }

    #[test]
    fn text_round_trip() {
        let c = LinearCode::from_text("3 1\n111\n").unwrap();
        assert_eq!((c.n(), c.k(), c.family()), (3, 1, Family::Generic));
        let dcc = build_dcc(&"1001111110".parse().unwrap()).unwrap();
        let back = LinearCode::from_text(&dcc.to_text()).unwrap();
        assert_eq!(back.generator(), dcc.generator());
        assert!(matches!(LinearCode::from_text("4 2\n1010\n1010\n"), Err(Error::RankDeficient { rank: 1, .. })));
        assert!(LinearCode::from_text("3 3\n100\n010\n001\n").is_err());
    }

    #[test]
    fn every_row_is_a_codeword() {
        let c = build_qr(23).unwrap();
        for r in c.generator().rows() {
            assert!(c.contains(r));
        }
        assert!(!c.contains(&BitWord::unit(23, 0)));
    }
}

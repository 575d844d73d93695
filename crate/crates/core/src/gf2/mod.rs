//! GF(2) vectors, matrices and polynomials, plus the GF(2^m) tables used to
//! build BCH and quadratic-residue generator polynomials.

mod field;
mod matrix;
mod poly;
mod word;

pub use field::{binary_poly, cyclotomic_coset, GF2mField, Gf, PRIMITIVE_POLYS};
pub use matrix::BitMatrix;
pub use poly::BinPoly;
pub use word::BitWord;

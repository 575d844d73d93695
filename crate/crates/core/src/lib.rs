//! Binary linear block codes and minimum-distance estimation.
//!
//! The crate is `no_std` (with `alloc`) and holds every algorithm: GF(2)
//! linear algebra, the code constructors, the exhaustive oracle, the two
//! genetic-algorithm estimators, the ordered statistics decoder and the
//! multiple impulse method built on it. File IO, the CLI and worker
//! fan-out live in the `mindist` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod codebook;
mod error;
pub mod estimate;
pub mod evolve;
pub mod gf2;
pub mod mim;
pub mod oracle;
pub mod osd;

pub use codebook::{Family, LinearCode};
pub use error::{Error, Result};
pub use estimate::{Estimate, Method};
pub use gf2::{BinPoly, BitMatrix, BitWord};

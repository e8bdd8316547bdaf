//! Deterministic compressed-sensing matrices built from binary BCH codes.
//!
//! The crate covers the whole pipeline: GF(2^m) arithmetic ([`gf2m`]), the
//! zero-spacing combinatorics that fix the code dimension ([`counting`]),
//! symmetric BCH code construction ([`codes`]), ±1 / binary / ternary
//! sensing matrices with exact coherence analysis ([`matrices`], [`bsm`]),
//! and matching-pursuit recovery with a cyclic-orbit DFT correlator
//! ([`recovery`], [`fft`]).

pub mod bsm;
pub mod codes;
pub mod counting;
pub mod error;
pub mod fft;
pub mod gf2m;
pub mod matrices;
pub mod recovery;

pub use error::{Error, Result};

//! Pairing-based vector commitments with linear-time generation of all
//! opening proofs.
//!
//! The crate is layered:
//!
//! * [`algebra`], [`encoding`], [`transcript`]: BN254 arithmetic, canonical
//!   encodings and Fiat–Shamir hashing.
//! * [`fc`]: a functional commitment for multi-exponentiations over G1 with
//!   batch opening.
//! * [`pc`]: a multilinear polynomial commitment with all-hypercube-points
//!   proof generation.
//! * [`vc`]: the two-layer vector commitment and its all-proofs generator.
//! * [`mle_opening`]: evaluation proofs for the committed vector's
//!   multilinear extension at arbitrary points.
//! * [`bench`]: measurement helpers behind the `flexproofs` binary.

pub mod algebra;
pub mod bench;
pub mod counters;
pub mod encoding;
pub mod error;
pub mod fc;
pub mod mle_opening;
pub mod pc;
pub mod transcript;
pub mod vc;

pub use error::{Error, Result};

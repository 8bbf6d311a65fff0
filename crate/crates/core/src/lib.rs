//! Induced-`2C_2`-saturated families in the Boolean lattice `B_n`.
//!
//! A family of subsets of `[n]` is induced-`2C_2`-free when no four of its
//! members `A ⊊ A'`, `B ⊊ B'` have those two relations as their only
//! comparabilities, and saturated when it is free but adding any outside set
//! creates such a copy. This crate provides:
//!
//! - [`lattice`]: bitmask sets, sorted families, the prefix chain, shackles,
//!   duality, relabeling and the compact text shorthand (`235` for `{2,3,5}`).
//! - [`freeness`]: detection of induced copies, freeness and saturation checks
//!   with certificates.
//! - [`chain`]: downset preorder and extraction of a maximal chain from a
//!   saturated family.
//! - [`witness`]: shackle witness analysis and the lower-bound audit.
//! - [`constructions`]: the singleton family and the `F*_i` families.
//! - [`search`]: exhaustive fixed-chain enumeration, duality classes and
//!   golden-catalog comparison.

mod bits;
pub mod chain;
pub mod constructions;
mod error;
pub mod freeness;
pub mod lattice;
pub mod search;
pub mod witness;

pub use error::{Error, Result};
pub use lattice::{Family, Permutation, SetWord, MAX_GROUND_SIZE};

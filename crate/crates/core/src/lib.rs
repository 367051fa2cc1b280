//! Exact Hankel and t-Hankel determinants of the period-doubling,
//! paperfolding, Thue–Morse and Coons sequences, together with the
//! constrained-involution counts and binomial parity facts that govern
//! their residues modulo 2.
//!
//! Every statement the library knows about is exposed as a bounded
//! verifier in [`verify`], and each verifier compares two independently
//! computed sides.

pub mod cli;
pub mod congruence;
pub mod error;
pub mod hankel;
pub mod involutions;
pub mod number_sets;
pub mod polynomial;
pub mod sequences;
pub mod verify;

pub use error::{Error, Result};
pub use number_sets::{FinitePrefix, SetId};
pub use polynomial::{Gf2Polynomial, IntPolynomial};
pub use sequences::SequenceId;

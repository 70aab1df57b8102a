//! Exact verification and extremal search for families of subspaces of
//! F_q^n whose pairwise intersection dimensions are constrained — fixed
//! (Fisher-type), or parity-constrained (oddtown-type) — together with
//! the q-analogue counting and incidence machinery the checks rest on.
//!
//! Everything is exact: field arithmetic by polynomial reduction,
//! counting in arbitrary precision, ranks over the rationals by
//! fraction-free elimination, parity ranks over bit-packed F_2 rows.

pub mod bitset;
pub mod cli;
pub mod error;
pub mod family;
pub mod field;
pub mod incidence;
pub mod matfq;
pub mod qcount;
pub mod search;
pub mod subspace;

pub use error::Error;

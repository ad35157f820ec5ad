//! Exact-arithmetic verification of terminating basic hypergeometric
//! summation and transformation formulas.
//!
//! - [`qcore`]: exact rationals, sample points, q-shifted factorials, q-binomials
//! - [`hyper`]: terminating `_{r+1}phi_r` sums, the well-poised term, contiguous relations
//! - [`identities`]: registry of terminating identities and the random-point verifier
//! - [`certs`]: replay of term recurrences, telescoping certificates and inductions
//! - [`psers`]: truncated power series for the infinite product identities
//! - [`cli`]: run configuration and report assembly behind the `qcert` binary

pub mod certs;
pub mod cli;
pub mod error;
pub mod hyper;
pub mod identities;
pub mod psers;
pub mod qcore;

pub use error::{Error, Result};

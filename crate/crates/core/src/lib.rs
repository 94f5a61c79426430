//! Exact verification of identities over integer partitions weighted by
//! `1/z_μ` and the generalized binomial coefficient `⟨μ, r⟩`.
//!
//! - [`arith`]: rationals, polynomials in `X`, factorials and binomials
//! - [`partitions`]: enumeration and per-partition statistics
//! - [`genbinom`]: `⟨λ, r⟩` via a generating product, plus a brute-force oracle
//! - [`identities`]: both sides of each identity as exact values
//! - [`verifier`]: parameter sweeps and reports
//! - [`cli`]: the `pident` command line

pub mod arith;
pub mod cli;
pub mod genbinom;
pub mod identities;
pub mod partitions;
pub mod verifier;

pub use arith::{Polynomial, Rational};
pub use identities::{Evaluator, Form, IdentityCase, IdentityId, SideValue};
pub use partitions::Partition;
pub use verifier::{run_sweep, Report, SweepConfig};

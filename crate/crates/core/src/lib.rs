//! Arbitrary-precision laboratory for the classical series for e and π,
//! Stirling-series approximants, and a registry of near-coincidences between
//! e and π verified to certified digit counts.
//!
//! Everything is computed on exact rationals or base-10 fixed point with
//! explicit error bounds; no binary floating point enters a result.

pub mod acceleration;
pub mod bignum;
pub mod coincidence;
pub mod error;
pub mod oracle;
pub mod render;
pub mod series;
pub mod stirling;

pub use bignum::{BigFixed, Rational, Surd};
pub use error::{Error, Result};
pub use oracle::{e_oracle, exp_oracle, pi_oracle, Constant, OracleValue};

//! Exact toolkit for the irrationality measure function `psi(t) = min_{1<=x<=t} ||x xi||`.
//!
//! Numbers are described by [`cf::NumberSpec`] and expanded into continued
//! fractions. [`psi`] evaluates the step function exactly and carries an
//! independent brute-force oracle. [`lab`] checks the convergent identities
//! and inequalities on concrete numbers and scans the difference
//! `psi_alpha - psi_beta` for sign changes.

pub mod arith;
pub mod cf;
pub mod cli;
pub mod error;
pub mod exec;
pub mod lab;
pub mod psi;
pub mod report;

pub use error::{Error, Result};

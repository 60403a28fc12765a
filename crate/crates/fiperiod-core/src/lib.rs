//! Exact computational algebra for coherent sequences of symmetric-group
//! representations over a prime field: construction and per-level evaluation
//! of finitely presented modules, cohomology dimensions in degrees 0 and 1,
//! eventual-period detection, and the recursive period/stability-range
//! calculators with their closed-form bounds.
//!
//! The crate is `no_std` + `alloc`; all IO, file formats and the CLI live in
//! the companion `fiperiod` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bounds;
pub mod cohomology;
pub mod fimod;
pub mod linalg;
pub mod oracle;
pub mod period;
pub mod perm;

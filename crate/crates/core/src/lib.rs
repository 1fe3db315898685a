//! Exact symbolic computation and machine verification for the Hopf algebras
//! E(n), parametric Clifford algebras, their canonical comodule-algebra
//! structure, and (h-)separability of the associated cowreaths.

// parity signs are written as `% 2` matches throughout
#![allow(clippy::manual_is_multiple_of)]

pub mod casimir;
pub mod clifford;
pub mod cowreath;
pub mod enhopf;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod setcombin;
pub mod suites;

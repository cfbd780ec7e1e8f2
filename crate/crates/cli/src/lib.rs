//! Command-line front end: harmonic coordinates on polygon files, CDT
//! quality audits, family experiments as CSV and randomized lemma checks.

pub mod commands;
pub mod domain;
pub mod error;
pub mod verify;

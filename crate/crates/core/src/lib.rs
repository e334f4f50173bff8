//! Minimal, constructive, Wijesekera-style and classical modal logics.
//!
//! The crate provides the formula language, a registry of axiomatic systems,
//! the translation into the bimodal companion language, G1 sequent calculi
//! with an exact derivation checker, backward proof search with mix
//! elimination, and finite-model semantics.

pub mod calculi;
pub mod formula;
pub mod logics;
pub mod prover;
pub mod semantics;
pub mod translation;

pub use formula::{parse, parse_bi, print, BiFormula, Formula};

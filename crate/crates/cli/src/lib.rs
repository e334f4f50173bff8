//! Workflows behind the `minmodal` command: companion cross-checks, the
//! relation-chain report and batch files.

pub mod batch;
pub mod companion;
pub mod relate;

use thiserror::Error;

use minmodal::calculi::{parse_derivation_text, CalculusError, Derivation, Sequent};
use minmodal::formula::ParseError;
use minmodal::logics::LogicError;
use minmodal::prover::ProverError;
use minmodal::semantics::SemanticsError;

pub use batch::{run_batch, BatchOptions, BatchReport, JobRecord};
pub use companion::{
    companion_check, Companion, CompanionBounds, CompanionReport, CompanionVerdict, CorpusSummary, FusionEvidence,
};
pub use relate::{chain, monotone, relate, RelateReport, RelateRow};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error(transparent)]
    Prover(#[from] ProverError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Unsupported(String),
    #[error("{0}")]
    Input(String),
}

/// A goal given either as a sequent (containing `=>`) or as a formula `A`,
/// read as `⇒ A`.
pub fn parse_goal(text: &str) -> Result<Sequent, CliError> {
    if text.contains("=>") {
        Ok(Sequent::parse(text)?)
    } else {
        Ok(Sequent::goal(minmodal::parse(text)?))
    }
}

/// Reads a derivation in JSON (first non-blank character `{`) or in the
/// indented text format.
pub fn load_derivation(text: &str) -> Result<Derivation, CliError> {
    if text.trim_start().starts_with('{') {
        Ok(Derivation::from_json(text)?)
    } else {
        parse_derivation_text(text).map_err(CliError::Input)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn goals() {
        assert_eq!(parse_goal("p -> p").unwrap().to_string(), "=> p -> p");
        assert_eq!(parse_goal("p, q => p").unwrap().to_string(), "p, q => p");
        assert!(parse_goal("p ->").is_err());
    }

    #[test]
    fn derivations_in_both_formats() {
        let text = "=> p -> p  [rimp R0]\n  p => p  [init L0 R0]\n";
        let d = load_derivation(text).unwrap();
        assert_eq!(load_derivation(&d.to_json()).unwrap(), d);
        assert!(load_derivation("{ nope").is_err());
        assert!(load_derivation("p => p").is_err());
    }
}

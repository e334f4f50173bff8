//! Provability of one formula along the chain ML → CL → (WL) → L.

use serde::Serialize;

use minmodal::calculi::{CalculusId, Sequent};
use minmodal::formula::Formula;
use minmodal::logics::{LogicId, Sigma};
use minmodal::prover::{decide, SearchBudget, Verdict};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelateRow {
    pub logic: String,
    pub calculus: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelateReport {
    pub formula: String,
    pub rows: Vec<RelateRow>,
    /// No logic is refuted after an earlier one in the chain proved the formula.
    pub monotone: bool,
}

impl RelateReport {
    pub fn verdicts(&self) -> Vec<Verdict> {
        self.rows.iter().map(|r| r.verdict).collect()
    }
}

/// The chain for Σ: minimal, constructive, Wijesekera (only for K), classical.
pub fn chain(sigma: Sigma) -> Vec<LogicId> {
    let mut v = vec![LogicId::minimal(sigma), LogicId::constructive(sigma)];
    if sigma == Sigma::K {
        v.push(LogicId::wk());
    }
    v.push(LogicId::classical(sigma));
    v
}

pub fn monotone(vs: &[Verdict]) -> bool {
    match vs.iter().position(|v| *v == Verdict::Proved) {
        Some(i) => vs[i..].iter().all(|v| *v != Verdict::Refuted),
        None => true,
    }
}

pub fn relate(f: &Formula, sigma: Sigma, budget: SearchBudget) -> Result<RelateReport, CliError> {
    if !sigma.is_admissible() {
        return Err(CliError::Unsupported(format!("Σ = {sigma:?} is not one of the fourteen modal signatures")));
    }
    let goal = Sequent::goal(f.clone());
    let mut rows = Vec::new();
    for l in chain(sigma) {
        let c = CalculusId::for_logic(l)?;
        let (verdict, _) = decide(c, &goal, budget)?;
        rows.push(RelateRow { logic: l.name(), calculus: c.name(), verdict });
    }
    let monotone = monotone(&rows.iter().map(|r| r.verdict).collect::<Vec<_>>());
    Ok(RelateReport { formula: f.to_string(), rows, monotone })
}

#[cfg(test)]
mod tests {
    use super::*;
    use minmodal::formula::parse;
    use Verdict::*;

    fn run(f: &str, s: Sigma) -> Vec<Verdict> {
        let r = relate(&parse(f).unwrap(), s, SearchBudget::default()).unwrap();
        assert!(r.monotone);
        r.verdicts()
    }

    #[test]
    fn documented_rows() {
        assert_eq!(run("~(box p & dia ~p)", Sigma::K), vec![Refuted, Refuted, Proved, Proved]);
        assert_eq!(run("p | ~p", Sigma::K), vec![Refuted, Refuted, Refuted, Proved]);
        assert_eq!(run("p -> p", Sigma::K), vec![Proved; 4]);
        assert_eq!(run("p | ~p", Sigma::T), vec![Refuted, Refuted, Proved]);
        assert_eq!(run("bot -> p", Sigma::EMPTY), vec![Refuted, Proved, Proved]);
    }

    #[test]
    fn monotonicity() {
        assert!(monotone(&[Refuted, Exhausted, Proved]));
        assert!(monotone(&[Proved, Exhausted, Proved]));
        assert!(!monotone(&[Proved, Refuted]));
        assert!(relate(&parse("p").unwrap(), Sigma::C.with(Sigma::P), SearchBudget::default()).is_err());
    }
}

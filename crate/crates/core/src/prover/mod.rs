//! Terminating backward proof search for every calculus, elaboration of
//! search proofs into literal G1 derivations, and mix (multicut) elimination.

mod elaborate;
mod mix;
mod pairs;
mod search;

use serde::Serialize;
use thiserror::Error;

use crate::calculi::{CalculusId, Derivation, Rule, Sequent};
use crate::formula::Formula;

pub use elaborate::{elaborate, fit};
pub use mix::{cut, cut_logged, eliminate_mix, MixError, MixLog, MixStep, DEFAULT_FUEL};
pub use pairs::{cut_pairs, random_cut_pair, template, TEMPLATES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    /// Maximal number of search nodes on a branch.
    pub max_depth: usize,
    /// Maximal number of search nodes overall.
    pub max_nodes: usize,
    pub loop_check: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_depth: 200, max_nodes: 2_000_000, loop_check: true }
    }
}

impl SearchBudget {
    pub fn with_depth(max_depth: usize) -> SearchBudget {
        SearchBudget { max_depth, ..SearchBudget::default() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: usize,
    pub max_depth: usize,
    pub loop_closures: usize,
    pub hit_depth: bool,
    pub out_of_nodes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEvent {
    pub depth: usize,
    pub sequent: String,
    pub event: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum ProofOutcome {
    Proved { derivation: Derivation, stats: SearchStats },
    /// Every branch of the fully backtracked search closed by saturation or
    /// by the loop check.
    Refuted { stats: SearchStats },
    /// Some branch hit the depth or node bound.
    Exhausted { budget: SearchBudget, stats: SearchStats },
}

impl ProofOutcome {
    pub fn is_proved(&self) -> bool {
        matches!(self, ProofOutcome::Proved { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, ProofOutcome::Refuted { .. })
    }

    pub fn derivation(&self) -> Option<&Derivation> {
        match self {
            ProofOutcome::Proved { derivation, .. } => Some(derivation),
            _ => None,
        }
    }

    pub fn stats(&self) -> &SearchStats {
        match self {
            ProofOutcome::Proved { stats, .. }
            | ProofOutcome::Refuted { stats }
            | ProofOutcome::Exhausted { stats, .. } => stats,
        }
    }

    pub fn verdict(&self) -> Verdict {
        match self {
            ProofOutcome::Proved { .. } => Verdict::Proved,
            ProofOutcome::Refuted { .. } => Verdict::Refuted,
            ProofOutcome::Exhausted { .. } => Verdict::Exhausted,
        }
    }
}

/// Outcome without the derivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Proved,
    Refuted,
    Exhausted,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Proved => "proved",
            Verdict::Refuted => "refuted",
            Verdict::Exhausted => "exhausted",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProverError {
    #[error("sequent {0} violates the succedent restriction of {1}")]
    Regime(String, CalculusId),
    #[error("search budget bounds must be positive")]
    Budget,
}

/// A proof found by the search calculus: set-normalised sequents, absorbed
/// contraction and weakening.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchProof {
    pub seq: Sequent,
    pub step: SearchStep,
    pub kids: Vec<SearchProof>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SearchStep {
    Init(Formula),
    Bot,
    LAnd(Formula),
    LOr(Formula),
    /// L→; single-succedent search keeps the principal formula in the left premise.
    LImp(Formula),
    RAnd(Formula),
    /// Classical R∨ with both disjuncts.
    ROr(Formula),
    ROrPick(Formula, usize),
    RImp(Formula),
    RWk,
    /// T□ keeping the principal formula.
    TBox(Rule, Formula),
    /// T◇; classically the principal formula is kept.
    TDia(Rule, Formula),
    /// A modal transition rule with its (principal-only) conclusion.
    Modal(Rule, Sequent),
}

fn validate(c: CalculusId, s: &Sequent, b: &SearchBudget) -> Result<(), ProverError> {
    if b.max_depth == 0 || b.max_nodes == 0 {
        return Err(ProverError::Budget);
    }
    if !c.regime().admits(s) {
        return Err(ProverError::Regime(s.to_string(), c));
    }
    Ok(())
}

/// Decides `s` in `c` without building a G1 derivation.
pub fn decide(c: CalculusId, s: &Sequent, b: SearchBudget) -> Result<(Verdict, SearchStats), ProverError> {
    validate(c, s, &b)?;
    let t = search::Table::new(s);
    let mut srch = search::Search::new(&t, c, b, false);
    let v = match srch.run(s) {
        search::Verdict::Proved(_) => Verdict::Proved,
        search::Verdict::Refuted => Verdict::Refuted,
        search::Verdict::Exhausted => Verdict::Exhausted,
    };
    Ok((v, srch.stats))
}

pub fn prove(c: CalculusId, s: &Sequent, b: SearchBudget) -> Result<ProofOutcome, ProverError> {
    prove_traced(c, s, b, false).map(|(o, _)| o)
}

/// `prove`, optionally recording search events.
pub fn prove_traced(
    c: CalculusId,
    s: &Sequent,
    b: SearchBudget,
    trace: bool,
) -> Result<(ProofOutcome, Vec<TraceEvent>), ProverError> {
    validate(c, s, &b)?;
    let t = search::Table::new(s);
    let mut srch = search::Search::new(&t, c, b, trace);
    let v = srch.run(s);
    let stats = srch.stats.clone();
    let out = match v {
        search::Verdict::Proved(p) => {
            let d = fit(c.regime(), elaborate(c.regime(), &p), s).expect("search proofs fit their goal");
            ProofOutcome::Proved { derivation: d, stats }
        }
        search::Verdict::Refuted => ProofOutcome::Refuted { stats },
        search::Verdict::Exhausted => ProofOutcome::Exhausted { budget: b, stats },
    };
    Ok((out, srch.into_trace()))
}

/// Convenience: search for `⇒ f`.
pub fn prove_formula(c: CalculusId, f: &Formula, b: SearchBudget) -> Result<ProofOutcome, ProverError> {
    prove(c, &Sequent::goal(f.clone()), b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculi::check_derivation;
    use crate::formula::parse;
    use crate::logics::Sigma;

    fn run(c: &str, f: &str) -> ProofOutcome {
        let c: CalculusId = c.parse().unwrap();
        let out = prove_formula(c, &parse(f).unwrap(), SearchBudget::default()).unwrap();
        if let Some(d) = out.derivation() {
            let r = check_derivation(c, d);
            assert!(r.valid, "{c} {f}: {r:?}");
            assert!(d.seq.same_as(&Sequent::goal(parse(f).unwrap())));
        }
        out
    }

    #[test]
    fn documented_verdicts() {
        assert!(run("G1MK", "box (p -> q) -> (box p -> box q)").is_proved());
        assert!(run("G1CK", "~dia bot").is_refuted());
        assert!(run("G1WK", "~dia bot").is_proved());
        assert!(run("G1MK", "bot -> p").is_refuted());
        assert!(run("G1CK", "bot -> p").is_proved());
        assert!(run("G1KD", "dia p | dia ~p").is_proved());
        assert!(run("G1CKD", "dia p | dia ~p").is_refuted());
    }

    #[test]
    fn propositional_bases() {
        assert!(run("G1MPL", "p -> p").is_proved());
        assert!(run("G1MPL", "(p -> q) -> (q -> r) -> p -> r").is_proved());
        assert!(run("G1MPL", "~~p -> p").is_refuted());
        assert!(run("G1IPL", "~~p -> p").is_refuted());
        assert!(run("G1CPL", "~~p -> p").is_proved());
        assert!(run("G1CPL", "p | ~p").is_proved());
        assert!(run("G1IPL", "p | ~p").is_refuted());
        assert!(run("G1IPL", "~~(p | ~p)").is_proved());
        assert!(run("G1MPL", "~~(p | ~p)").is_proved());
        assert!(run("G1CPL", "((p -> q) -> p) -> p").is_proved());
        assert!(run("G1IPL", "((p -> q) -> p) -> p").is_refuted());
    }

    #[test]
    fn modal_axioms() {
        assert!(run("G1MMT", "box p -> p").is_proved());
        assert!(run("G1MMT", "p -> dia p").is_proved());
        assert!(run("G1MK", "box p -> p").is_refuted());
        assert!(run("G1MM", "box p & box q -> box (p & q)").is_refuted());
        assert!(run("G1MMC", "box p & box q -> box (p & q)").is_proved());
        assert!(run("G1MMN", "box (p -> p)").is_proved());
        assert!(run("G1MMP", "~dia bot").is_refuted());
        assert!(run("G1CMP", "~dia bot").is_refuted());
        assert!(run("G1MK", "box p & dia q -> dia (p & q)").is_proved());
        assert!(run("G1K", "box p <-> ~dia ~p").is_proved());
        assert!(run("G1MK", "box p <-> ~dia ~p").is_refuted());
        assert!(run("G1KT", "box p -> p").is_proved());
        assert!(run("G1M", "box p & box q -> box (p & q)").is_refuted());
        assert!(run("G1MC", "box p & box q -> box (p & q)").is_proved());
        assert!(run("G1MD", "~(box p & box ~p)").is_proved());
    }

    #[test]
    fn reflexivity_does_not_loop_on_decomposed_bodies() {
        for c in ["G1MMT", "G1MKT", "G1CMT", "G1KT", "G1MT"] {
            assert!(run(c, "box (p & p) -> box p").is_proved(), "{c}");
            assert!(run(c, "box (p | p) -> box p").is_proved(), "{c}");
            assert!(run(c, "box ((p -> q) & p) -> box q").is_proved(), "{c}");
            assert!(run(c, "dia (p & p) -> dia p").is_proved(), "{c}");
        }
        assert!(run("G1KT", "~dia ~(p -> q) -> box (p -> q)").is_proved());
        assert!(run("G1MMT", "box (p & p) -> box q").is_refuted());
    }

    #[test]
    fn multiset_goals_and_empty_succedents() {
        let c = CalculusId::Constructive(Sigma::K);
        let s = Sequent::parse("p, p, p -> bot =>").unwrap();
        let out = prove(c, &s, SearchBudget::default()).unwrap();
        let d = out.derivation().unwrap();
        assert!(check_derivation(c, d).valid);
        assert_eq!(d.seq, s);
        let bad = Sequent::parse("=> p, q").unwrap();
        assert!(matches!(prove(c, &bad, SearchBudget::default()), Err(ProverError::Regime(..))));
        let zero = SearchBudget { max_depth: 0, ..SearchBudget::default() };
        assert_eq!(prove(c, &s, zero), Err(ProverError::Budget));
    }

    #[test]
    fn budget_exhaustion_is_not_refutation() {
        let c = CalculusId::Minimal(Sigma::K);
        let f = parse("(p -> q) -> (q -> r) -> p -> r").unwrap();
        let tiny = SearchBudget { max_depth: 2, max_nodes: 1000, loop_check: true };
        assert!(matches!(prove_formula(c, &f, tiny).unwrap(), ProofOutcome::Exhausted { .. }));
        let f = parse("~~p -> p -> bot").unwrap();
        assert!(prove_formula(c, &f, SearchBudget::default()).unwrap().is_refuted());
        let no_loop = SearchBudget { max_depth: 40, max_nodes: 100_000, loop_check: false };
        let out = prove_formula(c, &f, no_loop).unwrap();
        assert!(matches!(out, ProofOutcome::Exhausted { .. }), "{out:?}");
    }
}

//! Batch files: one `<command> <logic> <formula>` job per line. Blank lines
//! and lines starting with `#` are skipped. Jobs run in parallel; records
//! keep input order.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use minmodal::calculi::{CalculusId, Sequent};
use minmodal::formula::parse;
use minmodal::logics::LogicId;
use minmodal::prover::{decide, SearchBudget};
use minmodal::semantics::{countermodel_search, CountermodelBounds};

use crate::companion::{companion_check, CompanionBounds};
use crate::relate::relate;
use crate::CliError;

pub const COMMANDS: &[&str] = &["prove", "refute", "countermodel", "companion-check", "relate"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BatchOptions {
    pub budget: SearchBudget,
    pub seed: u64,
}

impl Default for BatchOptions {
    fn default() -> Self {
        BatchOptions { budget: SearchBudget::default(), seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JobRecord {
    /// 1-based line number in the batch file.
    pub line: usize,
    pub command: String,
    pub logic: String,
    pub formula: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct BatchReport {
    pub jobs: Vec<JobRecord>,
    pub errors: usize,
}

impl BatchReport {
    pub fn ok(&self) -> bool {
        self.errors == 0
    }
}

struct Job<'a> {
    line: usize,
    command: &'a str,
    logic: &'a str,
    formula: &'a str,
}

fn split(no: usize, line: &str) -> Job<'_> {
    let t = line.trim();
    let (command, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
    let rest = rest.trim_start();
    let (logic, formula) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
    Job { line: no, command, logic, formula: formula.trim() }
}

fn run(j: &Job, opts: &BatchOptions) -> Result<Value, CliError> {
    if !COMMANDS.contains(&j.command) {
        return Err(CliError::Input(format!("unknown command {:?} (expected one of {})", j.command, COMMANDS.join(", "))));
    }
    if j.formula.is_empty() {
        return Err(CliError::Input("expected <command> <logic> <formula>".into()));
    }
    let f = parse(j.formula)?;
    let value = match j.command {
        "prove" | "refute" => {
            let c: CalculusId = j.logic.parse()?;
            let (v, stats) = decide(c, &Sequent::goal(f), opts.budget)?;
            json!({ "calculus": c.name(), "verdict": v, "stats": stats })
        }
        "countermodel" => {
            let l: LogicId = j.logic.parse()?;
            let b = CountermodelBounds { seed: opts.seed, ..CountermodelBounds::default() };
            match countermodel_search(l, &f, &b)? {
                Some(c) => json!({ "found": true, "world": c.world, "model": c.model }),
                None => json!({ "found": false, "bounds": b }),
            }
        }
        "companion-check" => {
            let l: LogicId = j.logic.parse()?;
            let b = CompanionBounds { seed: opts.seed, budget: opts.budget, ..CompanionBounds::default() };
            serde_json::to_value(companion_check(l, &f, &b)?)?
        }
        "relate" => {
            let l: LogicId = j.logic.parse()?;
            serde_json::to_value(relate(&f, l.sigma, opts.budget)?)?
        }
        _ => unreachable!("command list checked above"),
    };
    Ok(value)
}

pub fn run_batch(text: &str, opts: &BatchOptions) -> BatchReport {
    let jobs: Vec<Job> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| split(i + 1, l))
        .collect();
    let records: Vec<JobRecord> = jobs
        .par_iter()
        .map(|j| {
            let out = run(j, opts);
            JobRecord {
                line: j.line,
                command: j.command.to_string(),
                logic: j.logic.to_string(),
                formula: j.formula.to_string(),
                status: if out.is_ok() { "ok" } else { "error" },
                error: out.as_ref().err().map(|e| e.to_string()),
                result: out.ok(),
            }
        })
        .collect();
    let errors = records.iter().filter(|r| r.status == "error").count();
    BatchReport { jobs: records, errors }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file() {
        let r = run_batch("", &BatchOptions::default());
        assert!(r.jobs.is_empty() && r.ok());
        assert!(run_batch("# nothing\n\n", &BatchOptions::default()).jobs.is_empty());
    }

    #[test]
    fn one_prove_job() {
        let r = run_batch("prove MK box (p -> q) -> box p -> box q\n", &BatchOptions::default());
        assert_eq!(r.jobs.len(), 1);
        assert!(r.ok());
        assert_eq!(r.jobs[0].result.as_ref().unwrap()["verdict"], "proved");
    }

    #[test]
    fn errors_are_per_job() {
        let text = "prove MK p -> \nrefute CK bot -> p\nfrobnicate MK p\nprove NOPE p\nrelate MK p | ~p\n";
        let r = run_batch(text, &BatchOptions::default());
        assert_eq!(r.jobs.len(), 5);
        assert_eq!(r.errors, 3);
        let status: Vec<_> = r.jobs.iter().map(|j| j.status).collect();
        assert_eq!(status, ["error", "ok", "error", "error", "ok"]);
        assert_eq!(r.jobs.iter().map(|j| j.line).collect::<Vec<_>>(), [1, 2, 3, 4, 5]);
        assert_eq!(r.jobs[1].result.as_ref().unwrap()["verdict"], "proved");
    }
}

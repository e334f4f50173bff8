use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use minmodal::calculi::{check_derivation, print_derivation_text, CalculusId};
use minmodal::formula::{parse, parse_bi, print_bi};
use minmodal::logics::{axioms_of, rules_of, LogicId};
use minmodal::prover::{prove_traced, ProofOutcome, SearchBudget};
use minmodal::semantics::{
    check_wellformed, find_countermodel, ClassSpec, CountermodelBounds, Evaluable, Model, SemanticsKind,
};
use minmodal::translation::{translate_with, Scheme};
use minmodal_cli::{companion_check, load_derivation, parse_goal, relate, run_batch, BatchOptions, CompanionBounds, CompanionVerdict};

/// Exit code for usage, input and I/O errors.
const EXIT_ERROR: u8 = 3;

/// Proof search, derivation checking, finite models and companion
/// cross-checks for minimal, constructive and classical modal logics.
///
/// Formula arguments may be omitted (or given as `-`) to read stdin.
#[derive(Parser)]
#[command(name = "minmodal", version)]
struct Cli {
    /// Seed for every randomized workflow.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Proof search depth bound.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Search for a derivation of a formula or sequent.
    /// Exit: 0 proved, 1 refuted, 2 budget exhausted.
    #[command(visible_alias = "refute")]
    Prove {
        /// Calculus (G1MK) or logic (MK).
        calculus: String,
        formula: Option<String>,
        /// Write the derivation (indented text; JSON if the name ends in .json).
        #[arg(long, value_name = "FILE")]
        emit_derivation: Option<PathBuf>,
        /// Print the search trace.
        #[arg(long)]
        emit_trace: bool,
    },
    /// Check a derivation file (text or JSON). Exit: 0 valid, 1 invalid.
    CheckDerivation { calculus: String, file: PathBuf },
    /// Check a model file against a model class. Exit: 0 wellformed, 1 not.
    CheckModel {
        file: PathBuf,
        #[arg(long)]
        logic: String,
        /// relational, birelational, neighbourhood, classical-neighbourhood or fusion.
        #[arg(long)]
        semantics: Option<String>,
    },
    /// Evaluate a formula in a model file (bimodal syntax for fusion models).
    /// Exit: 0 forced at the world (or everywhere), 1 otherwise.
    EvalModel {
        file: PathBuf,
        formula: Option<String>,
        /// World label; without it the truth set is printed.
        #[arg(long)]
        world: Option<String>,
    },
    /// Search finite models for a countermodel. Exit: 0 found, 1 none within bounds.
    Countermodel {
        logic: String,
        formula: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_worlds: usize,
        /// Random models per size too large to enumerate.
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
        #[arg(long)]
        semantics: Option<String>,
        /// Write the countermodel as JSON.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Translate into the bimodal language. Exit: 0.
    Translate {
        #[arg(long, default_value = "tr")]
        scheme: String,
        formula: Option<String>,
    },
    /// List the axioms and rules of a logic. Exit: 0.
    Axioms { logic: String },
    /// Prove a formula along minimal → constructive → (Wijesekera) → classical
    /// for the modal signature of a logic. Exit: 0 monotone, 1 not.
    Relate { logic: String, formula: Option<String> },
    /// Compare a minimal logic with its bimodal companion on one formula.
    /// Exit: 0 consistent, 1 inconsistent, 2 inconclusive.
    CompanionCheck {
        logic: String,
        formula: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_worlds: usize,
        #[arg(long, default_value_t = 2_000)]
        samples: usize,
    },
    /// Run `<command> <logic> <formula>` lines; prints a JSON report.
    /// Exit: 0 if every job succeeded, 1 otherwise.
    Batch { file: PathBuf },
}

fn text_arg(a: Option<String>) -> Result<String> {
    match a.as_deref() {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s.trim().to_string())
        }
        Some(s) => Ok(s.to_string()),
    }
}

fn read(p: &Path) -> Result<String> {
    std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(value)?);
    } else {
        print!("{}", text());
    }
    Ok(())
}

fn budget(cli_budget: Option<usize>) -> SearchBudget {
    cli_budget.map_or_else(SearchBudget::default, SearchBudget::with_depth)
}

fn class(logic: LogicId, semantics: Option<&str>) -> Result<ClassSpec> {
    Ok(match semantics {
        Some(s) => ClassSpec::new(s.parse::<SemanticsKind>().map_err(anyhow::Error::msg)?, logic)?,
        None => ClassSpec::default_for(logic)?,
    })
}

fn run(cli: Cli) -> Result<u8> {
    let json = cli.json;
    match cli.cmd {
        Cmd::Prove { calculus, formula, emit_derivation, emit_trace } => {
            let c: CalculusId = calculus.parse()?;
            let goal = parse_goal(&text_arg(formula)?)?;
            let (out, trace) = prove_traced(c, &goal, budget(cli.budget), emit_trace)?;
            if let (Some(path), Some(d)) = (&emit_derivation, out.derivation()) {
                let body = if path.extension().is_some_and(|e| e == "json") { d.to_json() } else { print_derivation_text(d) };
                std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
            }
            #[derive(Serialize)]
            struct Out<'a> {
                calculus: String,
                goal: String,
                #[serde(flatten)]
                outcome: &'a ProofOutcome,
                #[serde(skip_serializing_if = "<[_]>::is_empty")]
                trace: &'a [minmodal::prover::TraceEvent],
            }
            let o = Out { calculus: c.name(), goal: goal.to_string(), outcome: &out, trace: &trace };
            emit(json, &o, || {
                let mut s = String::new();
                for e in &trace {
                    s += &format!("{}{}  {}\n", "  ".repeat(e.depth), e.sequent, e.event);
                }
                let st = out.stats();
                s += &format!("{} in {}: {} ({} nodes)\n", goal, c, out.verdict(), st.nodes);
                if let (None, Some(d)) = (&emit_derivation, out.derivation()) {
                    s += &print_derivation_text(d);
                }
                s
            })?;
            Ok(match out {
                ProofOutcome::Proved { .. } => 0,
                ProofOutcome::Refuted { .. } => 1,
                ProofOutcome::Exhausted { .. } => 2,
            })
        }
        Cmd::CheckDerivation { calculus, file } => {
            let c: CalculusId = calculus.parse()?;
            let d = load_derivation(&read(&file)?)?;
            let r = check_derivation(c, &d);
            emit(json, &r, || match (&r.failed_sequent, &r.message) {
                (Some(seq), Some(msg)) => format!("invalid at {:?} ({seq}): {msg}\n", r.failed_at.clone().unwrap_or_default()),
                _ => format!("valid {c} derivation of {} ({} nodes)\n", d.seq, r.nodes),
            })?;
            Ok(if r.valid { 0 } else { 1 })
        }
        Cmd::CheckModel { file, logic, semantics } => {
            let m = Model::from_json(&read(&file)?)?;
            let spec = class(logic.parse()?, semantics.as_deref())?;
            let r = check_wellformed(&m, &spec);
            emit(json, &r, || {
                if r.ok {
                    format!("wellformed: {spec}\n")
                } else {
                    r.violations.iter().map(|v| format!("violates {}: {}\n", v.condition, v.witness)).collect()
                }
            })?;
            Ok(if r.ok { 0 } else { 1 })
        }
        Cmd::EvalModel { file, formula, world } => {
            let m = Model::from_json(&read(&file)?)?;
            let text = text_arg(formula)?;
            let ext = if m.kind.is_fusion() { parse_bi(&text)?.extension(&m)? } else { parse(&text)?.extension(&m)? };
            let set: Vec<String> = (0..m.size()).filter(|w| ext >> w & 1 == 1).map(|w| m.label(w).to_string()).collect();
            let ok = match &world {
                Some(l) => {
                    let w = m.world_by_label(l).with_context(|| format!("no world labelled {l:?}"))?;
                    ext >> w & 1 == 1
                }
                None => ext == m.all(),
            };
            #[derive(Serialize)]
            struct Out {
                truth_set: Vec<String>,
                forced: bool,
            }
            emit(json, &Out { truth_set: set.clone(), forced: ok }, || match &world {
                Some(l) => format!("{}\n", if ok { format!("{l} forces it") } else { format!("{l} does not force it") }),
                None => format!("{{{}}}\n", set.join(", ")),
            })?;
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::Countermodel { logic, formula, max_worlds, samples, semantics, out } => {
            let l: LogicId = logic.parse()?;
            let f = parse(&text_arg(formula)?)?;
            let spec = class(l, semantics.as_deref())?;
            let b = CountermodelBounds { max_worlds, samples, seed: cli.seed, ..CountermodelBounds::default() };
            let atoms = f.atoms();
            let atoms: Vec<&str> = atoms.iter().map(|a| &**a).collect();
            let c = find_countermodel(&spec, &f, &atoms, &b)?;
            if let (Some(path), Some(c)) = (&out, &c) {
                std::fs::write(path, c.model.to_json()).with_context(|| format!("writing {}", path.display()))?;
            }
            emit(json, &c, || match &c {
                Some(c) => format!(
                    "countermodel of size {}: {} does not force {f}:\n{}\n",
                    c.model.size(),
                    c.model.label(c.world),
                    c.model.to_json()
                ),
                None => format!("no countermodel in {spec} with at most {max_worlds} worlds\n"),
            })?;
            Ok(if c.is_some() { 0 } else { 1 })
        }
        Cmd::Translate { scheme, formula } => {
            let s: Scheme = scheme.parse().map_err(anyhow::Error::msg)?;
            let t = translate_with(s, &parse(&text_arg(formula)?)?);
            let printed = print_bi(&t);
            emit(json, &serde_json::json!({ "scheme": s, "translation": printed }), || format!("{printed}\n"))?;
            Ok(0)
        }
        Cmd::Axioms { logic } => {
            let l: LogicId = logic.parse()?;
            let axioms = axioms_of(l)?;
            let rules = rules_of(l)?;
            let listed: Vec<(String, String)> = axioms.iter().map(|a| (a.name.to_string(), a.template.to_string())).collect();
            let rule_names: Vec<&str> = rules.iter().map(|r| r.name.name()).collect();
            emit(json, &serde_json::json!({ "logic": l.name(), "axioms": listed, "rules": rule_names }), || {
                let mut s: String = listed.iter().map(|(n, t)| format!("{n}: {t}\n")).collect();
                s += &format!("rules: {}\n", rule_names.join(", "));
                s
            })?;
            Ok(0)
        }
        Cmd::Relate { logic, formula } => {
            let l: LogicId = logic.parse()?;
            let f = parse(&text_arg(formula)?)?;
            let r = relate(&f, l.sigma, budget(cli.budget))?;
            emit(json, &r, || {
                let mut s: String = r.rows.iter().map(|row| format!("{:<6} {}\n", row.logic, row.verdict)).collect();
                if !r.monotone {
                    s += "NOT MONOTONE\n";
                }
                s
            })?;
            Ok(if r.monotone { 0 } else { 1 })
        }
        Cmd::CompanionCheck { logic, formula, max_worlds, samples } => {
            let l: LogicId = logic.parse()?;
            let f = parse(&text_arg(formula)?)?;
            let b = CompanionBounds {
                fusion_max_worlds: max_worlds,
                samples,
                seed: cli.seed,
                budget: budget(cli.budget),
                ..CompanionBounds::default()
            };
            let r = companion_check(l, &f, &b)?;
            emit(json, &r, || {
                format!("{} ({}: {}; tr = {}): {}\n", r.verdict, r.logic, r.minimal, r.translation, r.note)
            })?;
            Ok(match r.verdict {
                CompanionVerdict::Consistent => 0,
                CompanionVerdict::Inconsistent => 1,
                CompanionVerdict::Inconclusive => 2,
            })
        }
        Cmd::Batch { file } => {
            let opts = BatchOptions { budget: budget(cli.budget), seed: cli.seed };
            let r = run_batch(&read(&file)?, &opts);
            println!("{}", serde_json::to_string_pretty(&r)?);
            Ok(if r.ok() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.budget == Some(0) {
        eprintln!("error: --budget must be positive");
        return ExitCode::from(EXIT_ERROR);
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

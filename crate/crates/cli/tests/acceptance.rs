//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`). Pass criterion numbers as
//! arguments to run a subset, e.g. `cargo test --test acceptance -- 2 7`.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use minmodal::calculi::{check_derivation, CalculusId, Sequent};
use minmodal::formula::{enumerate_formulas, random_formula, Formula, FormulaGen};
use minmodal::logics::{axioms_of, representative, schema, Family, LogicId, Sigma};
use minmodal::prover::{cut_logged, cut_pairs, decide, SearchBudget, Verdict, DEFAULT_FUEL};
use minmodal::semantics::{
    check_wellformed, countermodel_search, forces, from_fusion, random_model, to_fusion, ClassSpec,
    CountermodelBounds, Evaluable, ModelKind, SemanticsKind,
};
use minmodal::translation::goedel_johansson;
use minmodal::{parse, BiFormula};
use minmodal_cli::{relate, Companion, CompanionBounds};

/// Proof-search depth bound for the axiom matrix.
const AXIOM_DEPTH: usize = 30;
/// Largest countermodel accepted for a non-member axiom or a separation.
const COUNTERMODEL_WORLDS: usize = 3;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], summary: String) -> Outcome {
    let mut detail = summary;
    if let Some(f) = failures.first() {
        detail.push_str(&format!("; first failure: {f}"));
    }
    Outcome { pass: failures.is_empty(), detail }
}

fn goal(f: &Formula) -> Sequent {
    Sequent::goal(f.clone())
}

fn countermodel_bounds() -> CountermodelBounds {
    CountermodelBounds { max_worlds: COUNTERMODEL_WORLDS, ..CountermodelBounds::default() }
}

/// A refutation backed by a countermodel of at most three worlds that really
/// falsifies the formula and belongs to the logic's class.
fn refuted_with_countermodel(l: LogicId, f: &Formula, budget: SearchBudget) -> Result<(), String> {
    let c = CalculusId::for_logic(l).map_err(|e| e.to_string())?;
    let (v, _) = decide(c, &goal(f), budget).map_err(|e| e.to_string())?;
    if v != Verdict::Refuted {
        return Err(format!("{c} gives {v} for {f}"));
    }
    let cm = countermodel_search(l, f, &countermodel_bounds()).map_err(|e| e.to_string())?;
    let cm = cm.ok_or_else(|| format!("{l}: no countermodel to {f} within {COUNTERMODEL_WORLDS} worlds"))?;
    let wf = check_wellformed(&cm.model, &cm.spec);
    if !wf.ok || forces(&cm.model, cm.world, f).map_err(|e| e.to_string())? {
        return Err(format!("{l}: stored countermodel to {f} does not check"));
    }
    Ok(())
}

/// The schema characterising each modal condition, used for non-membership.
const CHARACTERISTIC: [(Sigma, &str); 5] =
    [(Sigma::C, "Cbox"), (Sigma::N, "Nbox"), (Sigma::P, "Pdiam"), (Sigma::D, "D"), (Sigma::T, "Tbox")];

fn axiom_matrix() -> Outcome {
    let budget = SearchBudget::with_depth(AXIOM_DEPTH);
    let mut failures = Vec::new();
    let (mut proved, mut refuted) = (0, 0);
    for sigma in Sigma::admissible() {
        for l in [LogicId::minimal(sigma), LogicId::constructive(sigma)] {
            let c = CalculusId::for_logic(l).unwrap();
            for a in axioms_of(l).unwrap() {
                let f = representative(a);
                match decide(c, &goal(&f), budget) {
                    Ok((Verdict::Proved, _)) => proved += 1,
                    Ok((v, _)) => failures.push(format!("{c} gives {v} for member {} ({f})", a.name)),
                    Err(e) => failures.push(format!("{c}: {e}")),
                }
            }
            let mut outside: Vec<&str> =
                CHARACTERISTIC.iter().filter(|(x, _)| !sigma.closure().has(*x)).map(|(_, n)| *n).collect();
            if l.family == Family::Minimal {
                outside.push("efq");
            }
            for n in outside {
                let f = representative(schema(n).unwrap());
                match refuted_with_countermodel(l, &f, budget) {
                    Ok(()) => refuted += 1,
                    Err(e) => failures.push(format!("non-member {n}: {e}")),
                }
            }
        }
    }
    outcome(&failures, format!("{proved} members proved, {refuted} non-members refuted with countermodels"))
}

fn separation_table() -> Outcome {
    let rows: [(&str, &str, bool); 9] = [
        ("CK", "dia (p | q) -> dia p | dia q", false),
        ("CK", "~dia bot", false),
        ("CKD", "~(box p & box ~p)", false),
        ("CKD", "dia p | dia ~p", false),
        ("MK", "bot -> p", false),
        ("CK", "bot -> p", true),
        ("WK", "~dia bot", true),
        ("MK", "box p <-> ~dia ~p", false),
        ("K", "box p <-> ~dia ~p", true),
    ];
    let mut failures = Vec::new();
    let budget = SearchBudget::default();
    for (l, f, theorem) in rows {
        let l: LogicId = l.parse().unwrap();
        let f = parse(f).unwrap();
        let r = if theorem {
            let c = CalculusId::for_logic(l).unwrap();
            match decide(c, &goal(&f), budget) {
                Ok((Verdict::Proved, _)) => Ok(()),
                Ok((v, _)) => Err(format!("{c} gives {v} for {f}")),
                Err(e) => Err(e.to_string()),
            }
        } else {
            refuted_with_countermodel(l, &f, budget)
        };
        if let Err(e) = r {
            failures.push(e);
        }
    }
    outcome(&failures, format!("{} rows", rows.len()))
}

fn companion_fidelity() -> Outcome {
    let corpus = enumerate_formulas(&["p"], 6, 2);
    let mut failures = Vec::new();
    let mut parts = Vec::new();
    for (name, worlds) in [("MK", 3), ("MM", 2), ("MMT", 2)] {
        let t = Instant::now();
        let bounds = CompanionBounds { fusion_max_worlds: worlds, ..CompanionBounds::default() };
        let c = Companion::new(name.parse().unwrap(), bounds)
            .and_then(|c| c.with_minimal_pool(3, 2_000))
            .map(|c| c.with_minimal_stage(3, 5_000_000, 50_000).with_minimal_stage(4, 0, 50_000));
        let c = match c {
            Ok(c) => c,
            Err(e) => {
                failures.push(format!("{name}: {e}"));
                continue;
            }
        };
        match c.check_corpus(&corpus) {
            Ok(s) => {
                if s.inconsistent > 0 {
                    failures.push(format!("{name}: {} inconsistent, e.g. {}", s.inconsistent, s.exceptions[0].formula));
                }
                if s.transferred != s.refuted {
                    let e = s.exceptions.iter().find(|r| r.minimal == Verdict::Refuted);
                    failures.push(format!(
                        "{name}: {} of {} refuted formulas transferred{}",
                        s.transferred,
                        s.refuted,
                        e.map(|r| format!(", e.g. {}", r.formula)).unwrap_or_default()
                    ));
                }
                parts.push(format!(
                    "{name}: {} proved, {} refuted, {} exhausted, {} fusion models, {:.0?}",
                    s.proved,
                    s.refuted,
                    s.exhausted,
                    s.fusion_models,
                    t.elapsed()
                ));
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    outcome(&failures, format!("{} formulas; {}", corpus.len(), parts.join("; ")))
}

fn corpus_50() -> Vec<Formula> {
    let g = FormulaGen { atoms: vec!["p".into(), "q".into()], max_height: 4, max_modal_depth: 3, allow_bottom: true };
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    (0..50).map(|_| random_formula(&mut rng, &g)).collect()
}

fn transformation_equivalence() -> Outcome {
    let corpus = corpus_50();
    let subs: Vec<Formula> = corpus.iter().flat_map(|f| f.subformulas()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let trs: Vec<BiFormula> = subs.iter().map(goedel_johansson).collect();
    let mk = LogicId::mk();
    let mut classes = vec![ClassSpec::new(SemanticsKind::Birelational, mk).unwrap()];
    for s in ["MM", "MMC", "MMD", "MMT", "MK"] {
        classes.push(ClassSpec::new(SemanticsKind::Neighbourhood, s.parse().unwrap()).unwrap());
    }
    let mut failures = Vec::new();
    let (mut models, mut checks) = (0usize, 0usize);
    let mut compare = |m: &minmodal::semantics::Model, fm: &minmodal::semantics::Model, what: &str| {
        for (g, t) in subs.iter().zip(&trs) {
            match (g.extension(m), t.extension(fm)) {
                (Ok(a), Ok(b)) if a == b => checks += m.size(),
                (a, b) => failures.push(format!("{what}: {g} gives {a:?} vs {b:?} on {}", m.to_json())),
            }
        }
    };
    for spec in &classes {
        for k in 0..500u64 {
            let m = random_model(spec, 1 + (k % 3) as usize, &["p", "q"], k).unwrap();
            let fm = to_fusion(&m).unwrap();
            compare(&m, &fm, &format!("to_fusion {spec}"));
            models += 1;
        }
    }
    for k in 0..500u64 {
        let sigma = [Sigma::EMPTY, Sigma::C, Sigma::D, Sigma::T, Sigma::K][(k % 5) as usize];
        let spec = ClassSpec::fusion(LogicId::minimal(sigma)).unwrap();
        let fm = random_model(&spec, 1 + (k % 3) as usize, &["p", "q"], k).unwrap();
        let m = from_fusion(&fm).unwrap();
        compare(&m, &fm, &format!("from_fusion {spec}"));
        models += 1;
    }
    outcome(&failures, format!("{models} models, {checks} pointwise agreements over {} subformulas", subs.len()))
}

fn cut_admissibility() -> Outcome {
    let mut failures = Vec::new();
    let mut done = 0;
    for name in ["G1MK", "G1MMD", "G1MKT", "G1CK", "G1CKT"] {
        let c: CalculusId = name.parse().unwrap();
        let pairs = cut_pairs(c, 200, 5);
        if pairs.len() < 200 {
            failures.push(format!("{c}: only {} pairs generated", pairs.len()));
        }
        for (d1, d2) in &pairs {
            match cut_logged(c, d1, d2, DEFAULT_FUEL) {
                Ok((out, log)) => {
                    let mut ant = d1.seq.ant.clone();
                    ant.extend(d2.seq.ant.iter().skip(1).cloned());
                    let end = Sequent::new(ant, d2.seq.succ.clone());
                    if !check_derivation(c, &out).valid {
                        failures.push(format!("{c}: invalid output for {}", out.seq));
                    } else if !out.is_mix_free() {
                        failures.push(format!("{c}: mix left in {}", out.seq));
                    } else if !log.measure_decreases() {
                        failures.push(format!("{c}: measure does not decrease for {}", out.seq));
                    } else if !out.seq.same_as(&end) {
                        failures.push(format!("{c}: end sequent {} instead of {end}", out.seq));
                    } else {
                        done += 1;
                    }
                }
                Err(e) => failures.push(format!("{c}: {e}")),
            }
        }
    }
    outcome(&failures, format!("{done} cuts eliminated within fuel {DEFAULT_FUEL}"))
}

fn class_specs() -> Vec<ClassSpec> {
    let mut v = Vec::new();
    for l in LogicId::all() {
        if let Ok(s) = ClassSpec::default_for(l) {
            v.push(s);
        }
        if matches!(l.family, Family::Minimal | Family::Constructive) && l.sigma == Sigma::K {
            v.push(ClassSpec::new(SemanticsKind::Neighbourhood, l).unwrap());
        }
        if matches!(l.family, Family::Minimal | Family::Classical) {
            v.push(ClassSpec::fusion(l).unwrap());
        }
    }
    v
}

fn heredity_and_wellformedness() -> Outcome {
    let specs = class_specs();
    let corpus = corpus_50();
    let subs: Vec<Formula> = corpus.iter().flat_map(|f| f.subformulas()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let bis: Vec<BiFormula> = subs.iter().map(goedel_johansson).collect();
    let mut failures = Vec::new();
    let mut triples = 0usize;
    for k in 0..1000u64 {
        let spec = specs[(k as usize) % specs.len()];
        let m = match random_model(&spec, 1 + (k % 4) as usize, &["p", "q"], k) {
            Ok(m) => m,
            Err(e) => {
                failures.push(format!("{spec}: {e}"));
                continue;
            }
        };
        let wf = check_wellformed(&m, &spec);
        if !wf.ok {
            failures.push(format!("{spec}: {:?}", wf.first()));
            continue;
        }
        // Propositional (relational) models only interpret modal-free formulas.
        let exts: Vec<Option<u64>> = if m.kind.is_fusion() {
            bis.iter().map(|f| f.extension(&m).ok()).collect()
        } else if m.kind == ModelKind::Relational {
            subs.iter().map(|f| if f.modal_depth() == 0 { f.extension(&m).ok() } else { None }).collect()
        } else {
            subs.iter().map(|f| f.extension(&m).ok()).collect()
        };
        if m.kind != ModelKind::Relational && exts.iter().any(|e| e.is_none()) {
            failures.push(format!("{spec}: evaluation failed"));
        }
        // In fusion models `leq` is R₁ and translated formulas are the persistent
        // ones; classical neighbourhood models carry no order to check.
        if m.kind == ModelKind::ClassicalNeighbourhood {
            continue;
        }
        let up = |w: usize| m.leq[w];
        for (i, e) in exts.iter().enumerate() {
            let Some(e) = e else { continue };
            for w in 0..m.size() {
                if e >> w & 1 == 1 {
                    triples += up(w).count_ones() as usize;
                    if up(w) & !e != 0 {
                        failures.push(format!("{spec}: {} loses heredity at world {w}", subs[i]));
                    }
                }
            }
        }
    }
    outcome(&failures, format!("1000 models over {} classes, {triples} (w, v, A) triples", specs.len()))
}

fn chain_monotonicity() -> Outcome {
    let g = FormulaGen { atoms: vec!["p".into(), "q".into()], max_height: 4, max_modal_depth: 2, allow_bottom: true };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let sigmas = Sigma::admissible();
    let mut failures = Vec::new();
    for k in 0..300 {
        let f = random_formula(&mut rng, &g);
        let sigma = if k % 2 == 0 { Sigma::K } else { sigmas[(k / 2) % sigmas.len()] };
        match relate(&f, sigma, SearchBudget::default()) {
            Ok(r) if r.monotone => {}
            Ok(r) => failures.push(format!("{f} over {sigma:?}: {:?}", r.verdicts())),
            Err(e) => failures.push(format!("{f}: {e}")),
        }
    }
    outcome(&failures, "300 formulas".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("axiom matrix", axiom_matrix),
        ("separation table", separation_table),
        ("companion fidelity", companion_fidelity),
        ("transformation equivalence", transformation_equivalence),
        ("cut admissibility", cut_admissibility),
        ("heredity and wellformedness", heredity_and_wellformedness),
        ("chain monotonicity", chain_monotonicity),
    ];
    let wanted: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let n = i + 1;
        if !wanted.is_empty() && !wanted.contains(&n) {
            continue;
        }
        let t = Instant::now();
        let o = run();
        println!("{} {n}. {name} [{:.1?}]: {}", if o.pass { "PASS" } else { "FAIL" }, t.elapsed(), o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Hilbert-style derivations: a checker, a line-oriented text format, and a
//! builder with a deduction-theorem compiler used to write stored witnesses.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{
    axiomatization, match_schema, schema, substitute, Axiomatization, LogicId, RuleName, Subst,
};
use crate::formula::{parse, Formula};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Justification {
    /// Instance of a named axiom schema, optionally with an explicit substitution.
    Axiom { name: String, subst: Option<BTreeMap<String, Formula>> },
    /// Local hypothesis. Lines depending on it may only be used by MP.
    Hyp,
    /// Premise of a derived rule. Unlike a hypothesis it may feed any rule.
    Premise,
    /// Rule application; indices are 0-based and must point backwards.
    Rule { rule: RuleName, from: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub formula: Formula,
    pub just: Justification,
}

pub type Line = Step;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertReport {
    pub accepted: bool,
    /// 0-based index of the first illegal step.
    pub failed_step: Option<usize>,
    pub message: Option<String>,
    pub conclusion: Option<Formula>,
    /// Hypotheses the conclusion depends on.
    pub hypotheses: Vec<Formula>,
    pub premises: Vec<Formula>,
}

impl HilbertReport {
    /// Accepted with no hypotheses and no rule premises: a theorem.
    pub fn is_theorem(&self) -> bool {
        self.accepted && self.hypotheses.is_empty() && self.premises.is_empty()
    }

    fn fail(i: usize, msg: String) -> HilbertReport {
        HilbertReport {
            accepted: false,
            failed_step: Some(i),
            message: Some(msg),
            conclusion: None,
            hypotheses: vec![],
            premises: vec![],
        }
    }
}

pub fn check_hilbert_derivation(l: LogicId, steps: &[Step]) -> HilbertReport {
    match axiomatization(l) {
        Ok(ax) => check_hilbert_with(&ax, steps),
        Err(e) => HilbertReport::fail(0, e.to_string()),
    }
}

/// Checks against an explicit axiomatization (used for systems outside the
/// registry, such as MC + Pbox).
pub fn check_hilbert_with(ax: &Axiomatization, steps: &[Step]) -> HilbertReport {
    if steps.is_empty() {
        return HilbertReport::fail(0, "empty derivation".into());
    }
    let mut deps: Vec<BTreeSet<usize>> = Vec::with_capacity(steps.len());
    for (i, st) in steps.iter().enumerate() {
        match check_step(ax, steps, &deps, i, st) {
            Ok(d) => deps.push(d),
            Err(msg) => return HilbertReport::fail(i, msg),
        }
    }
    let last = steps.len() - 1;
    HilbertReport {
        accepted: true,
        failed_step: None,
        message: None,
        conclusion: Some(steps[last].formula.clone()),
        hypotheses: deps[last].iter().map(|&h| steps[h].formula.clone()).collect(),
        premises: steps
            .iter()
            .filter(|s| s.just == Justification::Premise)
            .map(|s| s.formula.clone())
            .collect(),
    }
}

fn check_step(
    ax: &Axiomatization,
    steps: &[Step],
    deps: &[BTreeSet<usize>],
    i: usize,
    st: &Step,
) -> Result<BTreeSet<usize>, String> {
    match &st.just {
        Justification::Hyp => Ok([i].into_iter().collect()),
        Justification::Premise => Ok(BTreeSet::new()),
        Justification::Axiom { name, subst } => {
            let sch = schema(name).map_err(|e| e.to_string())?;
            if !ax.has_axiom(name) {
                return Err(format!("{name} is not an axiom of this system"));
            }
            match subst {
                Some(s) => {
                    let inst = substitute(&sch.template, s).map_err(|e| e.to_string())?;
                    if inst != st.formula {
                        return Err(format!("formula is not the stated instance of {name}"));
                    }
                }
                None => {
                    if match_schema(sch, &st.formula).is_none() {
                        return Err(format!("formula is not an instance of {name}"));
                    }
                }
            }
            Ok(BTreeSet::new())
        }
        Justification::Rule { rule, from } => {
            if !ax.has_rule(*rule) {
                return Err(format!("rule {} is not available", rule.name()));
            }
            if let Some(&j) = from.iter().find(|&&j| j >= i) {
                return Err(format!("premise index {} does not point backwards", j + 1));
            }
            let prem: Vec<&Formula> = from.iter().map(|&j| &steps[j].formula).collect();
            let mut d = BTreeSet::new();
            for &j in from {
                d.extend(deps[j].iter().copied());
            }
            if *rule != RuleName::Mp && !d.is_empty() {
                return Err(format!("{} applied to a line depending on hypotheses", rule.name()));
            }
            let ok = match (rule, prem.as_slice()) {
                (RuleName::Mp, [a, b]) => {
                    matches!(b, Formula::Imp(x, y) if **x == **a && **y == st.formula)
                        || matches!(a, Formula::Imp(x, y) if **x == **b && **y == st.formula)
                }
                (RuleName::Nec, [a]) => st.formula == Formula::boxed((*a).clone()),
                (RuleName::MonBox, [Formula::Imp(a, b)]) => {
                    st.formula == Formula::imp(Formula::boxed((**a).clone()), Formula::boxed((**b).clone()))
                }
                (RuleName::MonDia, [Formula::Imp(a, b)]) => {
                    st.formula == Formula::imp(Formula::dia((**a).clone()), Formula::dia((**b).clone()))
                }
                _ => false,
            };
            if ok {
                Ok(d)
            } else {
                Err(format!("not a correct application of {}", rule.name()))
            }
        }
    }
}

/// Checks a local derivation Φ ⊢ A: returns the report of the derivation
/// itself and of its compiled form ⊢ B1 ∧ … ∧ Bn → A.
pub fn check_local_derivation(l: LogicId, steps: &[Step]) -> (HilbertReport, Option<HilbertReport>) {
    let local = check_hilbert_derivation(l, steps);
    if !local.accepted {
        return (local, None);
    }
    let global = local_to_global(steps).map(|g| check_hilbert_derivation(l, &g));
    (local, global.ok())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("step {0} is not a legal step of the derivation")]
    Illegal(usize),
}

/// Rewrites a derivation with hypotheses B1, …, Bn (in order of first
/// appearance) into a hypothesis-free derivation of B1 ∧ … ∧ Bn → A.
/// The result is built from axiom instances and MP only, so the checker
/// validates it independently.
pub fn local_to_global(steps: &[Step]) -> Result<Vec<Step>, HilbertError> {
    let everything = Axiomatization {
        axioms: super::all_schemas(),
        rules: vec![RuleName::Mp, RuleName::Nec, RuleName::MonBox, RuleName::MonDia],
    };
    let r = check_hilbert_with(&everything, steps);
    if !r.accepted {
        return Err(HilbertError::Illegal(r.failed_step.unwrap_or(0)));
    }
    let mut b = HilbertBuilder::new();
    let hyps: Vec<Formula> = {
        let mut seen = Vec::new();
        for s in steps {
            if s.just == Justification::Hyp && !seen.contains(&s.formula) {
                seen.push(s.formula.clone());
            }
        }
        seen
    };
    let Some(conj) = Formula::conj_all(&hyps) else {
        return Ok(steps.to_vec());
    };
    b.deduce(conj, |b, h| {
        // Unpack the conjunction into each hypothesis.
        let mut parts = Vec::new();
        let mut cur = h;
        for k in 0..hyps.len() {
            if k + 1 == hyps.len() {
                parts.push(cur);
            } else {
                parts.push(b.and_l(cur));
                cur = b.and_r(cur);
            }
        }
        let mut map: Vec<L> = Vec::with_capacity(steps.len());
        for (i, s) in steps.iter().enumerate() {
            let l = match &s.just {
                Justification::Hyp => {
                    let k = hyps.iter().position(|x| *x == s.formula).expect("collected");
                    parts[k]
                }
                Justification::Premise => b.premise(s.formula.clone()),
                Justification::Axiom { name, .. } => b.axiom_as(name, s.formula.clone()),
                Justification::Rule { rule, from } => {
                    let p: Vec<L> = from.iter().map(|&j| map[j]).collect();
                    match rule {
                        RuleName::Mp => {
                            let (x, y) = (p[0], p[1]);
                            if matches!(b.formula(y), Formula::Imp(..)) && b.formula(y) == &Formula::imp(b.formula(x).clone(), s.formula.clone()) {
                                b.mp(x, y)
                            } else {
                                b.mp(y, x)
                            }
                        }
                        RuleName::Nec => b.nec(p[0]),
                        RuleName::MonBox => b.monbox(p[0]),
                        RuleName::MonDia => b.mondia(p[0]),
                    }
                }
            };
            debug_assert_eq!(b.formula(l), &s.formula, "step {i}");
            map.push(l);
        }
        *map.last().expect("nonempty")
    });
    Ok(b.finish())
}

// ---------------------------------------------------------------- text format

fn print_subst(s: &BTreeMap<String, Formula>) -> String {
    let parts: Vec<String> = s.iter().map(|(k, v)| format!("{k} := {v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn print_derivation(steps: &[Step]) -> String {
    let mut out = String::new();
    for (i, s) in steps.iter().enumerate() {
        let j = match &s.just {
            Justification::Hyp => "hyp".to_string(),
            Justification::Premise => "premise".to_string(),
            Justification::Axiom { name, subst: None } => format!("axiom {name}"),
            Justification::Axiom { name, subst: Some(m) } => format!("axiom {name} {}", print_subst(m)),
            Justification::Rule { rule, from } => {
                let idx: Vec<String> = from.iter().map(|j| (j + 1).to_string()).collect();
                format!("{} {}", rule.name(), idx.join(" "))
            }
        };
        let _ = writeln!(out, "{}. {} ; {}", i + 1, s.formula, j);
    }
    out
}

/// Parses `index. formula ; justification` lines. Blank lines and lines
/// starting with `#` are skipped.
pub fn parse_derivation(text: &str) -> Result<Vec<Step>, HilbertError> {
    let mut steps = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| HilbertError::Syntax { line: ln + 1, msg };
        let (num, rest) = line.split_once('.').ok_or_else(|| err("expected `index.`".into()))?;
        let num: usize = num.trim().parse().map_err(|_| err(format!("bad index {num:?}")))?;
        if num != steps.len() + 1 {
            return Err(err(format!("expected index {}, found {num}", steps.len() + 1)));
        }
        let (ftext, jtext) = rest.rsplit_once(';').ok_or_else(|| err("expected `; justification`".into()))?;
        let formula = parse(ftext.trim()).map_err(|e| err(e.to_string()))?;
        let just = parse_just(jtext.trim()).map_err(err)?;
        steps.push(Step { formula, just });
    }
    Ok(steps)
}

fn parse_just(j: &str) -> Result<Justification, String> {
    let (head, tail) = j.split_once(char::is_whitespace).unwrap_or((j, ""));
    let tail = tail.trim();
    match head {
        "hyp" => Ok(Justification::Hyp),
        "premise" => Ok(Justification::Premise),
        "axiom" => {
            let (name, sub) = match tail.find('{') {
                Some(k) => (tail[..k].trim(), Some(&tail[k..])),
                None => (tail, None),
            };
            schema(name).map_err(|e| e.to_string())?;
            let subst = match sub {
                None => None,
                Some(s) => {
                    let inner = s
                        .strip_prefix('{')
                        .and_then(|s| s.strip_suffix('}'))
                        .ok_or("unbalanced substitution braces")?;
                    let mut m = BTreeMap::new();
                    for part in inner.split(',').filter(|p| !p.trim().is_empty()) {
                        let (k, v) = part.split_once(":=").ok_or("expected `X := formula`")?;
                        let f = parse(v.trim()).map_err(|e| e.to_string())?;
                        m.insert(k.trim().to_string(), f);
                    }
                    Some(m)
                }
            };
            Ok(Justification::Axiom { name: name.to_string(), subst })
        }
        other => {
            let rule = RuleName::from_name(other).ok_or_else(|| format!("unknown justification {other:?}"))?;
            let from = tail
                .split_whitespace()
                .map(|t| match t.parse::<usize>() {
                    Ok(k) if k >= 1 => Ok(k - 1),
                    _ => Err(format!("bad step reference {t:?}")),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let arity = if rule == RuleName::Mp { 2 } else { 1 };
            if from.len() != arity {
                return Err(format!("{} takes {arity} premise(s)", rule.name()));
            }
            Ok(Justification::Rule { rule, from })
        }
    }
}

// ---------------------------------------------------------------- builder

/// Handle to a line of a [`HilbertBuilder`]. Handles created inside a
/// `deduce` body are invalid once the body returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct L {
    idx: usize,
    epoch: usize,
}

#[derive(Debug, Default)]
struct Frame {
    start: usize,
    epoch: usize,
}

/// Builds Hilbert derivations programmatically. `deduce` compiles a
/// subderivation from a hypothesis into a derivation of an implication
/// using only the `k` and `s` axioms and MP.
#[derive(Debug, Default)]
pub struct HilbertBuilder {
    steps: Vec<Step>,
    deps: Vec<BTreeSet<usize>>,
    frames: Vec<Frame>,
    epochs: usize,
    // Epoch of the frame each line was created in.
    line_epoch: Vec<usize>,
}

fn sub(pairs: &[(&str, &Formula)]) -> Subst {
    pairs.iter().map(|(k, v)| (k.to_string(), (*v).clone())).collect()
}

impl HilbertBuilder {
    pub fn new() -> HilbertBuilder {
        HilbertBuilder::default()
    }

    pub fn finish(self) -> Vec<Step> {
        assert!(self.frames.is_empty(), "unclosed deduce frame");
        self.steps
    }

    fn cur_epoch(&self) -> usize {
        self.frames.last().map_or(0, |f| f.epoch)
    }

    fn check(&self, l: L) -> usize {
        assert!(l.idx < self.steps.len(), "stale line handle");
        assert_eq!(self.line_epoch[l.idx], l.epoch, "stale line handle");
        assert!(
            l.epoch == 0 || self.frames.iter().any(|f| f.epoch == l.epoch),
            "line handle from a closed frame"
        );
        l.idx
    }

    fn push(&mut self, formula: Formula, just: Justification, deps: BTreeSet<usize>) -> L {
        let epoch = self.cur_epoch();
        self.steps.push(Step { formula, just });
        self.deps.push(deps);
        self.line_epoch.push(epoch);
        L { idx: self.steps.len() - 1, epoch }
    }

    pub fn formula(&self, l: L) -> &Formula {
        &self.steps[self.check(l)].formula
    }

    pub fn axiom(&mut self, name: &str, pairs: &[(&str, &Formula)]) -> L {
        let s = sub(pairs);
        let f = substitute(&schema(name).expect("known schema").template, &s).expect("complete substitution");
        self.push(f, Justification::Axiom { name: name.into(), subst: Some(s) }, BTreeSet::new())
    }

    /// Axiom instance given by its formula; the substitution is inferred.
    pub fn axiom_as(&mut self, name: &str, f: Formula) -> L {
        let s = match_schema(schema(name).expect("known schema"), &f).expect("formula is an instance");
        self.push(f, Justification::Axiom { name: name.into(), subst: Some(s) }, BTreeSet::new())
    }

    pub fn hyp(&mut self, f: Formula) -> L {
        let i = self.steps.len();
        self.push(f, Justification::Hyp, [i].into_iter().collect())
    }

    pub fn premise(&mut self, f: Formula) -> L {
        self.push(f, Justification::Premise, BTreeSet::new())
    }

    /// From A and A → B infer B.
    pub fn mp(&mut self, a: L, ab: L) -> L {
        let (ia, iab) = (self.check(a), self.check(ab));
        let b = match &self.steps[iab].formula {
            Formula::Imp(x, y) if **x == self.steps[ia].formula => (**y).clone(),
            other => panic!("mp: {other} does not match antecedent {}", self.steps[ia].formula),
        };
        let d = &self.deps[ia] | &self.deps[iab];
        self.push(b, Justification::Rule { rule: RuleName::Mp, from: vec![ia, iab] }, d)
    }

    fn closed_rule(&mut self, rule: RuleName, l: L, f: Formula) -> L {
        let i = self.check(l);
        assert!(self.deps[i].is_empty(), "{} on a line depending on hypotheses", rule.name());
        self.push(f, Justification::Rule { rule, from: vec![i] }, BTreeSet::new())
    }

    pub fn nec(&mut self, l: L) -> L {
        let f = Formula::boxed(self.formula(l).clone());
        self.closed_rule(RuleName::Nec, l, f)
    }

    pub fn monbox(&mut self, l: L) -> L {
        let Formula::Imp(a, b) = self.formula(l).clone() else { panic!("monbox needs an implication") };
        let f = Formula::imp(Formula::boxed((*a).clone()), Formula::boxed((*b).clone()));
        self.closed_rule(RuleName::MonBox, l, f)
    }

    pub fn mondia(&mut self, l: L) -> L {
        let Formula::Imp(a, b) = self.formula(l).clone() else { panic!("mondia needs an implication") };
        let f = Formula::imp(Formula::dia((*a).clone()), Formula::dia((*b).clone()));
        self.closed_rule(RuleName::MonDia, l, f)
    }

    /// Derives `h -> X` where `X` is what `body` derives from hypothesis `h`.
    pub fn deduce(&mut self, h: Formula, body: impl FnOnce(&mut HilbertBuilder, L) -> L) -> L {
        self.epochs += 1;
        let start = self.steps.len();
        self.frames.push(Frame { start, epoch: self.epochs });
        let hl = self.hyp(h.clone());
        let res = body(self, hl);
        let res_idx = self.check(res);
        let frame = self.frames.pop().expect("frame");

        let inner_steps = self.steps.split_off(frame.start);
        let inner_deps = self.deps.split_off(frame.start);
        self.line_epoch.truncate(frame.start);
        let hyp_idx = frame.start;

        // plain[k]: line holding φ_k (only for lines independent of h);
        // lifted[k]: line holding h → φ_k.
        let n = inner_steps.len();
        let mut plain: Vec<Option<L>> = vec![None; n];
        let mut lifted: Vec<Option<L>> = vec![None; n];
        let mut outer_lifted: BTreeMap<usize, L> = BTreeMap::new();

        for k in 0..n {
            let st = &inner_steps[k];
            let dep_h = inner_deps[k].contains(&hyp_idx);
            let other_deps: BTreeSet<usize> = inner_deps[k].iter().copied().filter(|&d| d != hyp_idx).collect();
            debug_assert!(other_deps.iter().all(|&d| d < frame.start));
            if k == 0 {
                lifted[0] = Some(self.imp_refl(&h));
                continue;
            }
            if !dep_h {
                let just = match &st.just {
                    Justification::Rule { rule, from } => Justification::Rule {
                        rule: *rule,
                        from: from.iter().map(|&j| self.plain_index(j, frame.start, &plain)).collect(),
                    },
                    j => j.clone(),
                };
                assert!(st.just != Justification::Hyp, "deduce: stray hypothesis inside the body");
                let l = self.push(st.formula.clone(), just, other_deps);
                plain[k] = Some(l);
                continue;
            }
            match &st.just {
                Justification::Rule { rule: RuleName::Mp, from } => {
                    let (a, ab) = (from[0], from[1]);
                    let la = self.lifted_line(a, frame.start, &h, &plain, &mut lifted, &mut outer_lifted);
                    let lab = self.lifted_line(ab, frame.start, &h, &plain, &mut lifted, &mut outer_lifted);
                    let fa = self.formula(la).clone();
                    let fab = self.formula(lab).clone();
                    let (Formula::Imp(_, a_body), Formula::Imp(_, ab_body)) = (&fa, &fab) else { unreachable!() };
                    let (a_body, b_body) = match &**ab_body {
                        Formula::Imp(x, y) if **x == **a_body => ((**x).clone(), (**y).clone()),
                        _ => unreachable!("mp premises out of shape"),
                    };
                    let s = self.axiom("s", &[("A", &h), ("B", &a_body), ("C", &b_body)]);
                    let m1 = self.mp(lab, s);
                    lifted[k] = Some(self.mp(la, m1));
                }
                _ => panic!("deduce: only MP may use the discharged hypothesis"),
            }
        }
        self.lifted_line(res_idx, frame.start, &h, &plain, &mut lifted, &mut outer_lifted)
    }

    fn plain_index(&self, j: usize, start: usize, plain: &[Option<L>]) -> usize {
        if j < start {
            j
        } else {
            plain[j - start].expect("independent premise").idx
        }
    }

    fn lifted_line(
        &mut self,
        j: usize,
        start: usize,
        h: &Formula,
        plain: &[Option<L>],
        lifted: &mut [Option<L>],
        outer: &mut BTreeMap<usize, L>,
    ) -> L {
        if j >= start {
            if let Some(l) = lifted[j - start] {
                return l;
            }
            let p = plain[j - start].expect("line is independent");
            let l = self.weaken_with(p, h);
            lifted[j - start] = Some(l);
            l
        } else {
            if let Some(l) = outer.get(&j) {
                return *l;
            }
            let p = L { idx: j, epoch: self.line_epoch[j] };
            let l = self.weaken_with(p, h);
            outer.insert(j, l);
            l
        }
    }

    /// From X derive h → X.
    fn weaken_with(&mut self, x: L, h: &Formula) -> L {
        let fx = self.formula(x).clone();
        let k = self.axiom("k", &[("A", &fx), ("B", h)]);
        self.mp(x, k)
    }

    // ------------------------------------------------ derived steps

    pub fn imp_refl(&mut self, a: &Formula) -> L {
        let aa = Formula::imp(a.clone(), a.clone());
        let s = self.axiom("s", &[("A", a), ("B", &aa), ("C", a)]);
        let k1 = self.axiom("k", &[("A", a), ("B", &aa)]);
        let m = self.mp(k1, s);
        let k2 = self.axiom("k", &[("A", a), ("B", a)]);
        self.mp(k2, m)
    }

    pub fn top(&mut self) -> L {
        self.imp_refl(&Formula::Bottom)
    }

    /// From A and B derive A ∧ B.
    pub fn conj(&mut self, a: L, b: L) -> L {
        let (fa, fb) = (self.formula(a).clone(), self.formula(b).clone());
        let t = Formula::top();
        let ta = self.weaken_with(a, &t);
        let tb = self.weaken_with(b, &t);
        let ai = self.axiom("and-i", &[("A", &t), ("B", &fa), ("C", &fb)]);
        let m1 = self.mp(ta, ai);
        let m2 = self.mp(tb, m1);
        let top = self.top();
        self.mp(top, m2)
    }

    pub fn and_l(&mut self, ab: L) -> L {
        let Formula::And(a, b) = self.formula(ab).clone() else { panic!("and_l needs a conjunction") };
        let ax = self.axiom("and-el", &[("A", &a), ("B", &b)]);
        self.mp(ab, ax)
    }

    pub fn and_r(&mut self, ab: L) -> L {
        let Formula::And(a, b) = self.formula(ab).clone() else { panic!("and_r needs a conjunction") };
        let ax = self.axiom("and-er", &[("A", &a), ("B", &b)]);
        self.mp(ab, ax)
    }

    pub fn or_il(&mut self, a: L, b: &Formula) -> L {
        let fa = self.formula(a).clone();
        let ax = self.axiom("or-il", &[("A", &fa), ("B", b)]);
        self.mp(a, ax)
    }

    pub fn or_ir(&mut self, a: &Formula, b: L) -> L {
        let fb = self.formula(b).clone();
        let ax = self.axiom("or-ir", &[("A", a), ("B", &fb)]);
        self.mp(b, ax)
    }

    /// From A ∨ B, A → C and B → C derive C.
    pub fn or_elim(&mut self, ab: L, ac: L, bc: L) -> L {
        let Formula::Or(a, b) = self.formula(ab).clone() else { panic!("or_elim needs a disjunction") };
        let Formula::Imp(_, c) = self.formula(ac).clone() else { panic!("or_elim needs an implication") };
        let ax = self.axiom("or-e", &[("A", &a), ("B", &b), ("C", &c)]);
        let m1 = self.mp(ac, ax);
        let m2 = self.mp(bc, m1);
        self.mp(ab, m2)
    }

    /// From A → B and B → C derive A → C.
    pub fn hs(&mut self, ab: L, bc: L) -> L {
        let Formula::Imp(a, _) = self.formula(ab).clone() else { panic!("hs needs an implication") };
        self.deduce((*a).clone(), |b, h| {
            let x = b.mp(h, ab);
            b.mp(x, bc)
        })
    }

    /// From ⊥ derive C (needs efq).
    pub fn efq(&mut self, bot: L, c: &Formula) -> L {
        let ax = self.axiom("efq", &[("A", c)]);
        self.mp(bot, ax)
    }

    /// From ¬¬A derive A (needs em and efq).
    pub fn dne(&mut self, nna: L) -> L {
        let f = self.formula(nna).clone();
        let a = match &f {
            Formula::Imp(x, y) if **y == Formula::Bottom => match &**x {
                Formula::Imp(a, z) if **z == Formula::Bottom => (**a).clone(),
                _ => panic!("dne needs a double negation"),
            },
            _ => panic!("dne needs a double negation"),
        };
        let em = self.axiom("em", &[("A", &a)]);
        let left = self.imp_refl(&a);
        let right = self.deduce(Formula::not(a.clone()), |b, na| {
            let bot = b.mp(na, nna);
            b.efq(bot, &a)
        });
        self.or_elim(em, left, right)
    }

    /// From A → B derive ¬B → ¬A.
    pub fn contrapose(&mut self, ab: L) -> L {
        let Formula::Imp(a, bb) = self.formula(ab).clone() else { panic!("contrapose needs an implication") };
        let nb = Formula::not((*bb).clone());
        self.deduce(nb, |b, nbl| {
            b.deduce((*a).clone(), |b, al| {
                let x = b.mp(al, ab);
                b.mp(x, nbl)
            })
        })
    }

    /// From ¬A → B derive ¬B → A (classical).
    pub fn contrapose_classical(&mut self, nab: L) -> L {
        let Formula::Imp(na, bb) = self.formula(nab).clone() else { panic!("needs an implication") };
        let nb = Formula::not((*bb).clone());
        let na = (*na).clone();
        self.deduce(nb, |b, nbl| {
            let nna = b.deduce(na.clone(), |b, nal| {
                let x = b.mp(nal, nab);
                b.mp(x, nbl)
            });
            b.dne(nna)
        })
    }

    /// Left-to-right half of the dual axiom: □A → ¬◇¬A.
    pub fn dual_l(&mut self, a: &Formula) -> L {
        let d = self.axiom("dual", &[("A", a)]);
        self.and_l(d)
    }

    /// Right-to-left half of the dual axiom: ¬◇¬A → □A.
    pub fn dual_r(&mut self, a: &Formula) -> L {
        let d = self.axiom("dual", &[("A", a)]);
        self.and_r(d)
    }

    /// MPL theorem A → ¬¬A.
    pub fn dn_intro(&mut self, a: &Formula) -> L {
        let na = Formula::not(a.clone());
        self.deduce(a.clone(), |b, al| b.deduce(na, |b, nal| b.mp(al, nal)))
    }

    /// CPL theorem ¬¬A → A.
    pub fn dn_elim(&mut self, a: &Formula) -> L {
        let nna = Formula::not(Formula::not(a.clone()));
        self.deduce(nna, |b, l| b.dne(l))
    }

    /// Classical: ◇A → ¬□¬A.
    pub fn dia_to_nbn(&mut self, a: &Formula) -> L {
        let na = Formula::not(a.clone());
        // □¬A → ¬◇¬¬A, and ◇A → ◇¬¬A.
        let d = self.dual_l(&na);
        let dn = self.dn_intro(a);
        let md = self.mondia(dn);
        let c = self.contrapose(md); // ¬◇¬¬A → ¬◇A
        let bn_nd = self.hs(d, c); // □¬A → ¬◇A
        let cc = self.contrapose(bn_nd); // ¬¬◇A → ¬□¬A
        let da = Formula::dia(a.clone());
        let di = self.dn_intro(&da);
        self.hs(di, cc)
    }

    /// Classical: ¬□¬A → ◇A.
    pub fn nbn_to_dia(&mut self, a: &Formula) -> L {
        let na = Formula::not(a.clone());
        // ¬◇A → ¬◇¬¬A → □¬A
        let de = self.dn_elim(a);
        let md = self.mondia(de); // ◇¬¬A → ◇A
        let c = self.contrapose(md); // ¬◇A → ¬◇¬¬A
        let d = self.dual_r(&na); // ¬◇¬¬A → □¬A
        let nd_bn = self.hs(c, d); // ¬◇A → □¬A
        self.contrapose_classical(nd_bn) // ¬□¬A → ◇A
    }
}

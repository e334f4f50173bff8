//! Backward proof search over set-normalised sequents.
//!
//! Formulas are interned (ids follow the structural order, so smaller ids
//! are tried first) and sequents are pairs of bitsets. Invertible rules are
//! applied eagerly without backtracking; the remaining rules are tried in
//! turn. Contraction is absorbed: the left premise of single-succedent L→
//! keeps its principal formula and T□/T◇ keep theirs. Modal transition rules
//! take every boxed antecedent formula (and every ◇-succedent formula, in
//! the classical rules that allow a context), which is complete because the
//! premises only grow.

use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use crate::calculi::{rules_for, CalculusId, Regime, Rule, Sequent};
use crate::formula::Formula;

use super::{SearchBudget, SearchProof, SearchStep, SearchStats, TraceEvent};

pub(crate) type Bits = Vec<u64>;

fn has(b: &Bits, i: u32) -> bool {
    b[(i / 64) as usize] >> (i % 64) & 1 == 1
}

fn set(b: &mut Bits, i: u32) {
    b[(i / 64) as usize] |= 1 << (i % 64);
}

fn unset(b: &mut Bits, i: u32) {
    b[(i / 64) as usize] &= !(1 << (i % 64));
}

fn ones(b: &Bits) -> impl Iterator<Item = u32> + '_ {
    b.iter().enumerate().flat_map(|(w, &word)| {
        (0..64u32).filter(move |k| word >> k & 1 == 1).map(move |k| w as u32 * 64 + k)
    })
}

fn first_common(a: &Bits, b: &Bits) -> Option<u32> {
    a.iter().zip(b).enumerate().find_map(|(w, (x, y))| {
        let m = x & y;
        (m != 0).then(|| w as u32 * 64 + m.trailing_zeros())
    })
}

#[derive(Debug, Clone, Copy)]
enum Kind {
    Atom,
    Bot,
    And(u32, u32),
    Or(u32, u32),
    Imp(u32, u32),
    Box(u32),
    Dia(u32),
}

/// Subformula table of a search problem.
pub(crate) struct Table {
    forms: Vec<Formula>,
    kinds: Vec<Kind>,
    index: HashMap<Formula, u32>,
    words: usize,
    bot: Option<u32>,
}

impl Table {
    pub(crate) fn new(s: &Sequent) -> Table {
        let mut all = std::collections::BTreeSet::new();
        for f in s.ant.iter().chain(&s.succ) {
            all.extend(f.subformulas());
        }
        let forms: Vec<Formula> = all.into_iter().collect();
        let index: HashMap<Formula, u32> = forms.iter().enumerate().map(|(i, f)| (f.clone(), i as u32)).collect();
        let id = |f: &Formula| index[f];
        let kinds = forms
            .iter()
            .map(|f| match f {
                Formula::Atom(_) => Kind::Atom,
                Formula::Bottom => Kind::Bot,
                Formula::And(a, b) => Kind::And(id(a), id(b)),
                Formula::Or(a, b) => Kind::Or(id(a), id(b)),
                Formula::Imp(a, b) => Kind::Imp(id(a), id(b)),
                Formula::Box(a) => Kind::Box(id(a)),
                Formula::Dia(a) => Kind::Dia(id(a)),
            })
            .collect();
        let bot = index.get(&Formula::Bottom).copied();
        let words = forms.len().div_ceil(64).max(1);
        Table { forms, kinds, index, words, bot }
    }

    fn empty(&self) -> Bits {
        vec![0; self.words]
    }

    pub(crate) fn bits(&self, fs: &[Formula]) -> Bits {
        let mut b = self.empty();
        for f in fs {
            set(&mut b, self.index[f]);
        }
        b
    }

    fn formulas(&self, b: &Bits) -> Vec<Formula> {
        ones(b).map(|i| self.forms[i as usize].clone()).collect()
    }

    fn sequent(&self, k: &Key) -> Sequent {
        Sequent::new(self.formulas(&k.0), self.formulas(&k.1))
    }
}

type Key = (Bits, Bits);

/// Search-internal proof step, in formula ids.
#[derive(Debug, Clone)]
enum Step {
    Init(u32),
    Bot,
    LAnd(u32),
    LOr(u32),
    LImp(u32),
    RAnd(u32),
    ROr(u32),
    ROrPick(u32, usize),
    RImp(u32),
    RWk,
    TBox(Rule, u32),
    TDia(Rule, u32),
    Modal(Rule, Vec<u32>, Vec<u32>),
}

#[derive(Debug)]
struct PNode {
    key: Key,
    step: Step,
    kids: Vec<Rc<PNode>>,
}

enum Res {
    Proved(Rc<PNode>),
    /// Failed; the payload is the smallest ancestor depth a loop check
    /// referred to (`usize::MAX` if the failure is history independent).
    Failed(usize),
    Unknown,
}

pub(crate) enum Verdict {
    Proved(SearchProof),
    Refuted,
    Exhausted,
}

pub(crate) struct Search<'a> {
    t: &'a Table,
    regime: Regime,
    rules: Vec<Rule>,
    available: [bool; 64],
    budget: SearchBudget,
    pub(crate) stats: SearchStats,
    proved: HashMap<Key, Rc<PNode>>,
    failed: HashSet<Key>,
    stack: HashMap<Key, usize>,
    trace: Option<Vec<TraceEvent>>,
}

const TRACE_LIMIT: usize = 100_000;

impl<'a> Search<'a> {
    pub(crate) fn new(t: &'a Table, c: CalculusId, budget: SearchBudget, trace: bool) -> Search<'a> {
        let rules = rules_for(c);
        let mut available = [false; 64];
        for r in &rules {
            available[*r as usize] = true;
        }
        Search {
            t,
            regime: c.regime(),
            rules,
            available,
            budget,
            stats: SearchStats::default(),
            proved: HashMap::new(),
            failed: HashSet::new(),
            stack: HashMap::new(),
            trace: trace.then(Vec::new),
        }
    }

    pub(crate) fn into_trace(self) -> Vec<TraceEvent> {
        self.trace.unwrap_or_default()
    }

    fn has(&self, r: Rule) -> bool {
        self.available[r as usize]
    }

    fn note(&mut self, depth: usize, key: &Key, what: impl FnOnce() -> String) {
        if let Some(tr) = &mut self.trace {
            if tr.len() < TRACE_LIMIT {
                tr.push(TraceEvent { depth, sequent: self.t.sequent(key).to_string(), event: what() });
            }
        }
    }

    pub(crate) fn run(&mut self, s: &Sequent) -> Verdict {
        let key = (self.t.bits(&s.ant), self.t.bits(&s.succ));
        match self.search(key, 0) {
            Res::Proved(p) => Verdict::Proved(self.export(&p)),
            Res::Failed(_) => Verdict::Refuted,
            Res::Unknown => Verdict::Exhausted,
        }
    }

    fn export(&self, p: &PNode) -> SearchProof {
        let f = |i: &u32| self.t.forms[*i as usize].clone();
        let step = match &p.step {
            Step::Init(i) => SearchStep::Init(f(i)),
            Step::Bot => SearchStep::Bot,
            Step::LAnd(i) => SearchStep::LAnd(f(i)),
            Step::LOr(i) => SearchStep::LOr(f(i)),
            Step::LImp(i) => SearchStep::LImp(f(i)),
            Step::RAnd(i) => SearchStep::RAnd(f(i)),
            Step::ROr(i) => SearchStep::ROr(f(i)),
            Step::ROrPick(i, k) => SearchStep::ROrPick(f(i), *k),
            Step::RImp(i) => SearchStep::RImp(f(i)),
            Step::RWk => SearchStep::RWk,
            Step::TBox(r, i) => SearchStep::TBox(*r, f(i)),
            Step::TDia(r, i) => SearchStep::TDia(*r, f(i)),
            Step::Modal(r, a, s) => {
                SearchStep::Modal(*r, Sequent::new(a.iter().map(f).collect(), s.iter().map(f).collect()))
            }
        };
        SearchProof { seq: self.t.sequent(&p.key), step, kids: p.kids.iter().map(|k| self.export(k)).collect() }
    }

    fn search(&mut self, key: Key, depth: usize) -> Res {
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        if self.stats.nodes > self.budget.max_nodes {
            self.stats.out_of_nodes = true;
            return Res::Unknown;
        }
        if let Some(p) = self.proved.get(&key) {
            return Res::Proved(p.clone());
        }
        if self.failed.contains(&key) {
            return Res::Failed(usize::MAX);
        }
        if self.budget.loop_check {
            if let Some(&d) = self.stack.get(&key) {
                self.stats.loop_closures += 1;
                self.note(depth, &key, || "loop".into());
                return Res::Failed(d);
            }
        }
        if let Some(step) = self.closure(&key) {
            self.note(depth, &key, || "closed".into());
            let p = Rc::new(PNode { key: key.clone(), step, kids: vec![] });
            self.proved.insert(key, p.clone());
            return Res::Proved(p);
        }
        if depth >= self.budget.max_depth {
            self.stats.hit_depth = true;
            return Res::Unknown;
        }
        self.stack.insert(key.clone(), depth);
        let r = match self.invertible(&key) {
            Some((step, prems)) => {
                self.note(depth, &key, || format!("invertible {step:?}"));
                self.all(&key, step, prems, depth)
            }
            None => {
                let choices = self.choices(&key);
                let mut low = usize::MAX;
                let mut unknown = false;
                let mut found = None;
                for (step, prems) in choices {
                    self.note(depth, &key, || format!("try {step:?}"));
                    match self.all(&key, step, prems, depth) {
                        Res::Proved(p) => {
                            found = Some(p);
                            break;
                        }
                        Res::Failed(l) => low = low.min(l),
                        Res::Unknown => unknown = true,
                    }
                    if self.stats.out_of_nodes {
                        unknown = true;
                        break;
                    }
                }
                match found {
                    Some(p) => Res::Proved(p),
                    None if unknown => Res::Unknown,
                    None => Res::Failed(low),
                }
            }
        };
        self.stack.remove(&key);
        match r {
            Res::Proved(p) => {
                self.proved.insert(key, p.clone());
                Res::Proved(p)
            }
            Res::Failed(l) if l >= depth => {
                self.failed.insert(key);
                Res::Failed(usize::MAX)
            }
            other => other,
        }
    }

    /// All premises of one rule application.
    fn all(&mut self, key: &Key, step: Step, prems: Vec<Key>, depth: usize) -> Res {
        let mut kids = Vec::with_capacity(prems.len());
        let mut unknown = false;
        for k in prems {
            match self.search(k, depth + 1) {
                Res::Proved(p) => kids.push(p),
                Res::Failed(l) => return Res::Failed(l),
                Res::Unknown => unknown = true,
            }
        }
        if unknown {
            return Res::Unknown;
        }
        Res::Proved(Rc::new(PNode { key: key.clone(), step, kids }))
    }

    fn closure(&self, (ant, succ): &Key) -> Option<Step> {
        if let Some(i) = first_common(ant, succ) {
            return Some(Step::Init(i));
        }
        if self.has(Rule::LBot) {
            if let Some(b) = self.t.bot {
                if has(ant, b) {
                    return Some(Step::Bot);
                }
            }
        }
        None
    }

    fn invertible(&self, key: &Key) -> Option<(Step, Vec<Key>)> {
        let (ant, succ) = key;
        let classical = self.regime == Regime::Classical;
        let t_box = self.has(Rule::TBox) || self.has(Rule::MTBox) || self.has(Rule::ITBox);
        for i in ones(ant) {
            match self.t.kinds[i as usize] {
                Kind::And(a, b) => {
                    let mut g = ant.clone();
                    unset(&mut g, i);
                    set(&mut g, a);
                    set(&mut g, b);
                    return Some((Step::LAnd(i), vec![(g, succ.clone())]));
                }
                Kind::Or(a, b) => {
                    let mut g = ant.clone();
                    unset(&mut g, i);
                    let (mut ga, mut gb) = (g.clone(), g);
                    set(&mut ga, a);
                    set(&mut gb, b);
                    return Some((Step::LOr(i), vec![(ga, succ.clone()), (gb, succ.clone())]));
                }
                Kind::Imp(a, b) if classical => {
                    let mut g = ant.clone();
                    unset(&mut g, i);
                    let mut d = succ.clone();
                    set(&mut d, a);
                    let mut gb = g.clone();
                    set(&mut gb, b);
                    return Some((Step::LImp(i), vec![(g, d), (gb, succ.clone())]));
                }
                Kind::Box(a) if t_box && !self.held_left(key, a) => {
                    let mut g = ant.clone();
                    set(&mut g, a);
                    return Some((Step::TBox(self.t_box_rule(), i), vec![(g, succ.clone())]));
                }
                _ => {}
            }
        }
        for j in ones(succ) {
            let mut rest = succ.clone();
            unset(&mut rest, j);
            match self.t.kinds[j as usize] {
                Kind::And(a, b) => {
                    let (mut da, mut db) = (rest.clone(), rest);
                    set(&mut da, a);
                    set(&mut db, b);
                    return Some((Step::RAnd(j), vec![(ant.clone(), da), (ant.clone(), db)]));
                }
                Kind::Imp(a, b) => {
                    let mut g = ant.clone();
                    set(&mut g, a);
                    set(&mut rest, b);
                    return Some((Step::RImp(j), vec![(g, rest)]));
                }
                Kind::Or(a, b) if classical => {
                    set(&mut rest, a);
                    set(&mut rest, b);
                    return Some((Step::ROr(j), vec![(ant.clone(), rest)]));
                }
                Kind::Dia(a) if classical && self.has(Rule::TDia) && !self.held_right(key, a) => {
                    let mut d = succ.clone();
                    set(&mut d, a);
                    return Some((Step::TDia(Rule::TDia, j), vec![(ant.clone(), d)]));
                }
                _ => {}
            }
        }
        None
    }

    /// `a` adds nothing to the antecedent: it is present, or saturation would
    /// decompose it into formulas already present. Without this test T□
    /// re-adds a body that L∧ has already taken apart, and the loop check
    /// closes the branch.
    fn held_left(&self, key: &Key, a: u32) -> bool {
        has(&key.0, a)
            || match self.t.kinds[a as usize] {
                Kind::And(x, y) => self.held_left(key, x) && self.held_left(key, y),
                Kind::Or(x, y) => self.held_left(key, x) || self.held_left(key, y),
                Kind::Imp(x, y) => {
                    self.held_left(key, y) || (self.regime == Regime::Classical && self.held_right(key, x))
                }
                _ => false,
            }
    }

    /// Dual of `held_left` for classical T◇ on the succedent.
    fn held_right(&self, key: &Key, a: u32) -> bool {
        has(&key.1, a)
            || match self.t.kinds[a as usize] {
                Kind::Or(x, y) => self.held_right(key, x) && self.held_right(key, y),
                Kind::And(x, y) => self.held_right(key, x) || self.held_right(key, y),
                Kind::Imp(x, y) => self.held_left(key, x) && self.held_right(key, y),
                _ => false,
            }
    }

    fn t_box_rule(&self) -> Rule {
        [Rule::TBox, Rule::MTBox, Rule::ITBox].into_iter().find(|r| self.has(*r)).expect("a T□ rule")
    }

    /// Non-invertible alternatives, in the order they are tried.
    fn choices(&self, key: &Key) -> Vec<(Step, Vec<Key>)> {
        let (ant, succ) = key;
        let mut out = Vec::new();
        if self.regime != Regime::Classical {
            let goal = ones(succ).next();
            for i in ones(ant) {
                if let Kind::Imp(a, b) = self.t.kinds[i as usize] {
                    let mut d = self.t.empty();
                    set(&mut d, a);
                    let mut g = ant.clone();
                    unset(&mut g, i);
                    set(&mut g, b);
                    out.push((Step::LImp(i), vec![(ant.clone(), d), (g, succ.clone())]));
                }
            }
            if let Some(j) = goal {
                if let Kind::Or(a, b) = self.t.kinds[j as usize] {
                    for (k, x) in [a, b].into_iter().enumerate() {
                        let mut d = self.t.empty();
                        set(&mut d, x);
                        out.push((Step::ROrPick(j, k), vec![(ant.clone(), d)]));
                    }
                }
                if let Kind::Dia(a) = self.t.kinds[j as usize] {
                    if self.has(Rule::MTDia) {
                        let mut d = self.t.empty();
                        set(&mut d, a);
                        out.push((Step::TDia(Rule::MTDia, j), vec![(ant.clone(), d)]));
                    }
                }
                if self.has(Rule::WKDia) {
                    out.push((Step::RWk, vec![(ant.clone(), self.t.empty())]));
                }
            }
        }
        self.modal_choices(key, &mut out);
        out
    }

    fn modal_choices(&self, (ant, succ): &Key, out: &mut Vec<(Step, Vec<Key>)>) {
        let kinds = &self.t.kinds;
        let boxes_l: Vec<(u32, u32)> = ones(ant).filter_map(|i| match kinds[i as usize] {
            Kind::Box(a) => Some((i, a)),
            _ => None,
        }).collect();
        let dias_l: Vec<(u32, u32)> = ones(ant).filter_map(|i| match kinds[i as usize] {
            Kind::Dia(a) => Some((i, a)),
            _ => None,
        }).collect();
        let boxes_r: Vec<(u32, u32)> = ones(succ).filter_map(|i| match kinds[i as usize] {
            Kind::Box(a) => Some((i, a)),
            _ => None,
        }).collect();
        let dias_r: Vec<(u32, u32)> = ones(succ).filter_map(|i| match kinds[i as usize] {
            Kind::Dia(a) => Some((i, a)),
            _ => None,
        }).collect();
        let bits = |xs: &[u32]| {
            let mut b = self.t.empty();
            for x in xs {
                set(&mut b, *x);
            }
            b
        };
        let firsts = |v: &[(u32, u32)]| v.iter().map(|p| p.0).collect::<Vec<_>>();
        let seconds = |v: &[(u32, u32)]| v.iter().map(|p| p.1).collect::<Vec<_>>();
        let (bl, bb) = (firsts(&boxes_l), seconds(&boxes_l));
        let (dr, db) = (firsts(&dias_r), seconds(&dias_r));
        let mut push = |rule: Rule, ca: Vec<u32>, cs: Vec<u32>, pa: Vec<u32>, ps: Vec<u32>| {
            out.push((Step::Modal(rule, ca, cs), vec![(bits(&pa), bits(&ps))]));
        };
        let cat = |x: &[u32], y: &[u32]| [x, y].concat();
        for &rule in &self.rules {
            use Rule::*;
            match rule {
                MBox | MMBox => {
                    for &(i, a) in &boxes_l {
                        for &(j, b) in &boxes_r {
                            push(rule, vec![i], vec![j], vec![a], vec![b]);
                        }
                    }
                }
                MDia | MMDia => {
                    for &(i, a) in &dias_l {
                        for &(j, b) in &dias_r {
                            push(rule, vec![i], vec![j], vec![a], vec![b]);
                        }
                    }
                }
                D | MD => {
                    for &(i, a) in &boxes_l {
                        for &(j, b) in &dias_r {
                            push(rule, vec![i], vec![j], vec![a], vec![b]);
                        }
                    }
                }
                MncM => {
                    for &(i, a) in &boxes_l {
                        for &(j, b) in &dias_l {
                            push(rule, vec![i, j], vec![], vec![a, b], vec![]);
                        }
                    }
                }
                MemM => {
                    for &(i, a) in &boxes_r {
                        for &(j, b) in &dias_r {
                            push(rule, vec![], vec![i, j], vec![], vec![a, b]);
                        }
                    }
                }
                CBox if !bl.is_empty() => {
                    for &(j, b) in &boxes_r {
                        push(rule, bl.clone(), cat(&[j], &dr), bb.clone(), cat(&[b], &db));
                    }
                }
                CDia if !dr.is_empty() => {
                    for &(i, a) in &dias_l {
                        push(rule, cat(&bl, &[i]), dr.clone(), cat(&bb, &[a]), db.clone());
                    }
                }
                MncC if !bl.is_empty() => {
                    for &(i, a) in &dias_l {
                        push(rule, cat(&bl, &[i]), vec![], cat(&bb, &[a]), vec![]);
                    }
                }
                MemC if !dr.is_empty() => {
                    for &(j, b) in &boxes_r {
                        push(rule, vec![], cat(&[j], &dr), vec![], cat(&[b], &db));
                    }
                }
                NBox | MNBox => {
                    for &(j, b) in &boxes_r {
                        push(rule, vec![], vec![j], vec![], vec![b]);
                    }
                }
                NDia => {
                    for &(i, a) in &dias_l {
                        push(rule, vec![i], vec![], vec![a], vec![]);
                    }
                }
                PBox => {
                    for &(i, a) in &boxes_l {
                        push(rule, vec![i], vec![], vec![a], vec![]);
                    }
                }
                PDia | MPDia => {
                    for &(j, b) in &dias_r {
                        push(rule, vec![], vec![j], vec![], vec![b]);
                    }
                }
                KBox => {
                    for &(j, b) in &boxes_r {
                        push(rule, bl.clone(), cat(&[j], &dr), bb.clone(), cat(&[b], &db));
                    }
                }
                KDia => {
                    for &(i, a) in &dias_l {
                        push(rule, cat(&bl, &[i]), dr.clone(), cat(&bb, &[a]), db.clone());
                    }
                }
                DBox => {
                    for (k, &(i, a)) in boxes_l.iter().enumerate() {
                        for &(j, b) in &boxes_l[k..] {
                            push(rule, vec![i, j], vec![], vec![a, b], vec![]);
                        }
                    }
                }
                DDia => {
                    for (k, &(i, a)) in dias_r.iter().enumerate() {
                        for &(j, b) in &dias_r[k..] {
                            push(rule, vec![], vec![i, j], vec![], vec![a, b]);
                        }
                    }
                }
                CD => push(rule, bl.clone(), dr.clone(), bb.clone(), db.clone()),
                MCBox if !bl.is_empty() => {
                    for &(j, b) in &boxes_r {
                        push(rule, bl.clone(), vec![j], bb.clone(), vec![b]);
                    }
                }
                MKBox => {
                    for &(j, b) in &boxes_r {
                        push(rule, bl.clone(), vec![j], bb.clone(), vec![b]);
                    }
                }
                MKDia => {
                    for &(i, a) in &dias_l {
                        for &(j, b) in &dias_r {
                            push(rule, cat(&bl, &[i]), vec![j], cat(&bb, &[a]), vec![b]);
                        }
                    }
                }
                MCD => {
                    for &(j, b) in &dias_r {
                        push(rule, bl.clone(), vec![j], bb.clone(), vec![b]);
                    }
                }
                WKDia if succ.iter().all(|w| *w == 0) => {
                    for &(i, a) in &dias_l {
                        push(rule, cat(&bl, &[i]), vec![], cat(&bb, &[a]), vec![]);
                    }
                }
                _ => {}
            }
        }
    }
}

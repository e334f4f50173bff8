use serde::Serialize;

use super::{all_positions, ms_eq, ms_plus, CalculusId, Derivation, Pos, Regime, Rule, Sequent, Side};
use crate::formula::Formula;

#[derive(Debug, Clone, Copy, Default)]
pub struct CheckOptions {
    /// Accept mix nodes (for intermediate trees of mix elimination).
    pub allow_mix: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivationReport {
    pub valid: bool,
    /// Path of child indices from the root to the first failing node.
    pub failed_at: Option<Vec<usize>>,
    pub failed_sequent: Option<String>,
    pub message: Option<String>,
    pub nodes: usize,
}

pub fn check_derivation(c: CalculusId, d: &Derivation) -> DerivationReport {
    check_derivation_with(c, d, CheckOptions::default())
}

pub fn check_derivation_with(c: CalculusId, d: &Derivation, opts: CheckOptions) -> DerivationReport {
    let rules = super::rules_for(c);
    let mut path = Vec::new();
    let mut nodes = 0;
    match walk(c.regime(), &rules, opts, d, &mut path, &mut nodes) {
        Ok(()) => DerivationReport { valid: true, failed_at: None, failed_sequent: None, message: None, nodes },
        Err((seq, msg)) => DerivationReport {
            valid: false,
            failed_at: Some(path),
            failed_sequent: Some(seq),
            message: Some(msg),
            nodes,
        },
    }
}

fn walk(
    regime: Regime,
    rules: &[Rule],
    opts: CheckOptions,
    d: &Derivation,
    path: &mut Vec<usize>,
    nodes: &mut usize,
) -> Result<(), (String, String)> {
    *nodes += 1;
    let fail = |m: String| (d.seq.to_string(), m);
    if !regime.admits(&d.seq) {
        return Err(fail(format!("sequent violates the {regime:?} succedent restriction")));
    }
    let available = if d.rule == Rule::Mix { opts.allow_mix } else { rules.contains(&d.rule) };
    if !available {
        return Err(fail(format!("rule {} is not a rule of this calculus", d.rule)));
    }
    let kids: Vec<&Sequent> = d.kids.iter().map(|k| &k.seq).collect();
    check_node(regime, d.rule, &d.seq, &d.principal, &kids).map_err(fail)?;
    for (i, k) in d.kids.iter().enumerate() {
        path.push(i);
        walk(regime, rules, opts, k, path, nodes)?;
        path.pop();
    }
    Ok(())
}

fn one(principal: &[Pos], side: Side, s: &Sequent) -> Result<(usize, Formula), String> {
    match principal {
        [p] if p.side == side => s
            .get(*p)
            .map(|f| (p.idx, f.clone()))
            .ok_or_else(|| format!("principal position {p} out of range")),
        _ => Err(format!("expected one principal position on the {side:?} side")),
    }
}

fn expect_kids(kids: &[&Sequent], n: usize) -> Result<(), String> {
    if kids.len() == n {
        Ok(())
    } else {
        Err(format!("expected {n} premise(s), found {}", kids.len()))
    }
}

fn same(k: &Sequent, ant: &[Formula], succ: &[Formula]) -> Result<(), String> {
    if ms_eq(&k.ant, ant) && ms_eq(&k.succ, succ) {
        Ok(())
    } else {
        let want = Sequent::new(ant.to_vec(), succ.to_vec());
        Err(format!("premise {k} should be {want}"))
    }
}

fn without(v: &[Formula], i: usize) -> Vec<Formula> {
    let mut w = v.to_vec();
    w.remove(i);
    w
}

fn with(v: &[Formula], f: &Formula) -> Vec<Formula> {
    ms_plus(v, std::slice::from_ref(f))
}

fn bodies_box(v: &[Formula]) -> Option<Vec<Formula>> {
    v.iter().map(|f| f.box_body().cloned()).collect()
}

fn bodies_dia(v: &[Formula]) -> Option<Vec<Formula>> {
    v.iter().map(|f| f.dia_body().cloned()).collect()
}

/// Splits off the only ◇-formula of `v`; every other formula must be boxed.
fn boxes_and_one_dia(v: &[Formula]) -> Option<(Vec<Formula>, Formula)> {
    let dias: Vec<usize> = (0..v.len()).filter(|&i| v[i].dia_body().is_some()).collect();
    let [k] = dias.as_slice() else { return None };
    let rest = bodies_box(&without(v, *k))?;
    Some((rest, v[*k].dia_body().cloned()?))
}

/// Splits off the only □-formula of `v`; every other formula must be a ◇.
fn one_box_and_dias(v: &[Formula]) -> Option<(Formula, Vec<Formula>)> {
    let boxes: Vec<usize> = (0..v.len()).filter(|&i| v[i].box_body().is_some()).collect();
    let [k] = boxes.as_slice() else { return None };
    let rest = bodies_dia(&without(v, *k))?;
    Some((v[*k].box_body().cloned()?, rest))
}

/// Checks that a single node is an instance of `rule` under `regime`.
pub fn check_node(
    regime: Regime,
    rule: Rule,
    seq: &Sequent,
    principal: &[Pos],
    kids: &[&Sequent],
) -> Result<(), String> {
    use Rule::*;
    let (ant, succ) = (&seq.ant, &seq.succ);
    let shape = |ok: bool| if ok { Ok(()) } else { Err(format!("conclusion does not have the shape of {rule}")) };
    let modal_principal = || {
        if principal == all_positions(seq).as_slice() {
            Ok(())
        } else {
            Err("modal transition rules list every conclusion position as principal".to_string())
        }
    };
    match rule {
        Init => {
            expect_kids(kids, 0)?;
            shape(ant.len() == 1 && succ.len() == 1 && ant[0] == succ[0])?;
            if principal != [Pos::l(0), Pos::r(0)] {
                return Err("initial sequent principal positions are L0 R0".into());
            }
            Ok(())
        }
        LBot => {
            expect_kids(kids, 0)?;
            shape(ant.as_slice() == [Formula::Bottom] && succ.is_empty())?;
            if principal != [Pos::l(0)] {
                return Err("lbot principal position is L0".into());
            }
            Ok(())
        }
        LAnd1 | LAnd2 => {
            expect_kids(kids, 1)?;
            let (i, f) = one(principal, Side::L, seq)?;
            let Formula::And(a, b) = &f else { return shape(false) };
            let act = if rule == LAnd1 { a } else { b };
            same(kids[0], &with(&without(ant, i), act), succ)
        }
        RAnd => {
            expect_kids(kids, 2)?;
            let (i, f) = one(principal, Side::R, seq)?;
            let Formula::And(a, b) = &f else { return shape(false) };
            let rest = without(succ, i);
            same(kids[0], ant, &with(&rest, a))?;
            same(kids[1], ant, &with(&rest, b))
        }
        LOr => {
            expect_kids(kids, 2)?;
            let (i, f) = one(principal, Side::L, seq)?;
            let Formula::Or(a, b) = &f else { return shape(false) };
            let rest = without(ant, i);
            same(kids[0], &with(&rest, a), succ)?;
            same(kids[1], &with(&rest, b), succ)
        }
        ROr1 | ROr2 => {
            expect_kids(kids, 1)?;
            let (i, f) = one(principal, Side::R, seq)?;
            let Formula::Or(a, b) = &f else { return shape(false) };
            let act = if rule == ROr1 { a } else { b };
            same(kids[0], ant, &with(&without(succ, i), act))
        }
        LImp => {
            expect_kids(kids, 2)?;
            let (i, f) = one(principal, Side::L, seq)?;
            let Formula::Imp(a, b) = &f else { return shape(false) };
            let rest = without(ant, i);
            // Single-succedent calculi drop the right context from the left premise.
            let left_succ = match regime {
                Regime::Classical => with(succ, a),
                _ => vec![(**a).clone()],
            };
            same(kids[0], &rest, &left_succ)?;
            same(kids[1], &with(&rest, b), succ)
        }
        RImp => {
            expect_kids(kids, 1)?;
            let (i, f) = one(principal, Side::R, seq)?;
            let Formula::Imp(a, b) = &f else { return shape(false) };
            same(kids[0], &with(ant, a), &with(&without(succ, i), b))
        }
        LWk => {
            expect_kids(kids, 1)?;
            let (i, _) = one(principal, Side::L, seq)?;
            same(kids[0], &without(ant, i), succ)
        }
        RWk => {
            expect_kids(kids, 1)?;
            let (i, _) = one(principal, Side::R, seq)?;
            same(kids[0], ant, &without(succ, i))
        }
        LCtr => {
            expect_kids(kids, 1)?;
            let (_, f) = one(principal, Side::L, seq)?;
            same(kids[0], &with(ant, &f), succ)
        }
        RCtr => {
            expect_kids(kids, 1)?;
            let (_, f) = one(principal, Side::R, seq)?;
            same(kids[0], ant, &with(succ, &f))
        }
        TBox | MTBox | ITBox => {
            expect_kids(kids, 1)?;
            let (i, f) = one(principal, Side::L, seq)?;
            let Some(a) = f.box_body() else { return shape(false) };
            if rule == MTBox && succ.len() != 1 {
                return shape(false);
            }
            same(kids[0], &with(&without(ant, i), a), succ)
        }
        TDia | MTDia => {
            expect_kids(kids, 1)?;
            let (i, f) = one(principal, Side::R, seq)?;
            let Some(a) = f.dia_body() else { return shape(false) };
            same(kids[0], ant, &with(&without(succ, i), a))
        }
        Mix => {
            expect_kids(kids, 2)?;
            if !principal.is_empty() {
                return Err("mix has no principal positions".into());
            }
            let (l, r) = (kids[0], kids[1]);
            let [a] = l.succ.as_slice() else { return Err("left premise of mix needs one succedent formula".into()) };
            if !r.ant.contains(a) {
                return Err("mix formula does not occur in the right premise".into());
            }
            let rest: Vec<Formula> = r.ant.iter().filter(|x| *x != a).cloned().collect();
            if ms_eq(ant, &ms_plus(&l.ant, &rest)) && ms_eq(succ, &r.succ) {
                Ok(())
            } else {
                Err("conclusion of mix does not match its premises".into())
            }
        }
        _ => {
            expect_kids(kids, 1)?;
            modal_principal()?;
            let (pa, ps) = modal_premise(rule, ant, succ).ok_or_else(|| format!("conclusion does not have the shape of {rule}"))?;
            same(kids[0], &pa, &ps)
        }
    }
}

/// The unique premise of a modal transition rule with the given conclusion.
fn modal_premise(rule: Rule, ant: &[Formula], succ: &[Formula]) -> Option<(Vec<Formula>, Vec<Formula>)> {
    use Rule::*;
    let one_each = |ab: fn(&Formula) -> Option<&Formula>, sb: fn(&Formula) -> Option<&Formula>| match (ant, succ) {
        ([a], [b]) => Some((vec![ab(a)?.clone()], vec![sb(b)?.clone()])),
        _ => None,
    };
    fn bx(f: &Formula) -> Option<&Formula> {
        f.box_body()
    }
    fn dm(f: &Formula) -> Option<&Formula> {
        f.dia_body()
    }
    match rule {
        MBox | MMBox => one_each(|f| f.box_body(), |f| f.box_body()),
        MDia | MMDia => one_each(|f| f.dia_body(), |f| f.dia_body()),
        D | MD => one_each(|f| f.box_body(), |f| f.dia_body()),
        MncM => {
            if !succ.is_empty() {
                return None;
            }
            let (s, a) = boxes_and_one_dia(ant)?;
            (s.len() == 1).then(|| (vec![s[0].clone(), a], vec![]))
        }
        MemM => {
            if !ant.is_empty() {
                return None;
            }
            let (b, d) = one_box_and_dias(succ)?;
            (d.len() == 1).then(|| (vec![], vec![b, d[0].clone()]))
        }
        CBox => {
            let s = bodies_box(ant)?;
            let (b, p) = one_box_and_dias(succ)?;
            (!s.is_empty()).then(|| (s, ms_plus(&[b], &p)))
        }
        CDia => {
            let (s, a) = boxes_and_one_dia(ant)?;
            let p = bodies_dia(succ)?;
            (!p.is_empty()).then(|| (with(&s, &a), p))
        }
        MncC => {
            if !succ.is_empty() {
                return None;
            }
            let (s, a) = boxes_and_one_dia(ant)?;
            (!s.is_empty()).then(|| (with(&s, &a), vec![]))
        }
        MemC => {
            if !ant.is_empty() {
                return None;
            }
            let (b, d) = one_box_and_dias(succ)?;
            (!d.is_empty()).then(|| (vec![], ms_plus(&[b], &d)))
        }
        NBox | MNBox => match (ant, succ) {
            ([], [b]) => Some((vec![], vec![bx(b)?.clone()])),
            _ => None,
        },
        NDia => match (ant, succ) {
            ([a], []) => Some((vec![dm(a)?.clone()], vec![])),
            _ => None,
        },
        PBox => match (ant, succ) {
            ([a], []) => Some((vec![bx(a)?.clone()], vec![])),
            _ => None,
        },
        PDia | MPDia => match (ant, succ) {
            ([], [b]) => Some((vec![], vec![dm(b)?.clone()])),
            _ => None,
        },
        KBox => {
            let s = bodies_box(ant)?;
            let (a, p) = one_box_and_dias(succ)?;
            Some((s, ms_plus(&[a], &p)))
        }
        KDia => {
            let (s, a) = boxes_and_one_dia(ant)?;
            let p = bodies_dia(succ)?;
            Some((with(&s, &a), p))
        }
        DBox => match (ant, succ) {
            ([a, b], []) => Some((vec![bx(a)?.clone(), bx(b)?.clone()], vec![])),
            _ => None,
        },
        DDia => match (ant, succ) {
            ([], [a, b]) => Some((vec![], vec![dm(a)?.clone(), dm(b)?.clone()])),
            _ => None,
        },
        CD => Some((bodies_box(ant)?, bodies_dia(succ)?)),
        MCBox => {
            let s = bodies_box(ant)?;
            let [b] = succ else { return None };
            let b = bx(b)?.clone();
            (!s.is_empty()).then(|| (s, vec![b]))
        }
        MKBox => {
            let [b] = succ else { return None };
            Some((bodies_box(ant)?, vec![bx(b)?.clone()]))
        }
        MKDia => {
            let [b] = succ else { return None };
            let (s, a) = boxes_and_one_dia(ant)?;
            Some((with(&s, &a), vec![dm(b)?.clone()]))
        }
        MCD => {
            let [b] = succ else { return None };
            Some((bodies_box(ant)?, vec![dm(b)?.clone()]))
        }
        WKDia => {
            if !succ.is_empty() {
                return None;
            }
            let (s, a) = boxes_and_one_dia(ant)?;
            Some((with(&s, &a), vec![]))
        }
        _ => None,
    }
}

/// Premise of a modal transition rule for a given conclusion, if the
/// conclusion has the rule's shape.
pub(crate) fn modal_premise_of(rule: Rule, s: &Sequent) -> Option<Sequent> {
    modal_premise(rule, &s.ant, &s.succ).map(|(a, b)| Sequent::new(a, b))
}

/// Premises of a local (non-transition) rule, determined by the conclusion
/// and the principal position.
pub(crate) fn local_premises(regime: Regime, rule: Rule, seq: &Sequent, principal: &[Pos]) -> Option<Vec<Sequent>> {
    use Rule::*;
    let (ant, succ) = (&seq.ant, &seq.succ);
    let p = *principal.first()?;
    let f = seq.get(p)?.clone();
    let s = |a: Vec<Formula>, b: Vec<Formula>| Sequent::new(a, b);
    let la = if p.side == Side::L { without(ant, p.idx) } else { ant.clone() };
    let ls = succ.clone();
    let rs = || without(succ, p.idx);
    let parts = |f: &Formula| match f {
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => Some(((**a).clone(), (**b).clone())),
        _ => None,
    };
    Some(match (rule, p.side) {
        (LAnd1, Side::L) => vec![s(with(&la, &parts(&f)?.0), ls)],
        (LAnd2, Side::L) => vec![s(with(&la, &parts(&f)?.1), ls)],
        (LOr, Side::L) => {
            let (a, b) = parts(&f)?;
            vec![s(with(&la, &a), ls.clone()), s(with(&la, &b), ls)]
        }
        (LImp, Side::L) => {
            let (a, b) = parts(&f)?;
            let left = if regime == Regime::Classical { with(&ls, &a) } else { vec![a] };
            vec![s(la.clone(), left), s(with(&la, &b), ls)]
        }
        (RAnd, Side::R) => {
            let (a, b) = parts(&f)?;
            vec![s(ant.clone(), with(&rs(), &a)), s(ant.clone(), with(&rs(), &b))]
        }
        (ROr1, Side::R) => vec![s(ant.clone(), with(&rs(), &parts(&f)?.0))],
        (ROr2, Side::R) => vec![s(ant.clone(), with(&rs(), &parts(&f)?.1))],
        (RImp, Side::R) => {
            let (a, b) = parts(&f)?;
            vec![s(with(ant, &a), with(&rs(), &b))]
        }
        (LWk, Side::L) => vec![s(la, ls)],
        (RWk, Side::R) => vec![s(ant.clone(), rs())],
        (LCtr, Side::L) => vec![s(with(ant, &f), ls)],
        (RCtr, Side::R) => vec![s(ant.clone(), with(succ, &f))],
        (TBox | MTBox | ITBox, Side::L) => vec![s(with(&la, f.box_body()?), ls)],
        (TDia | MTDia, Side::R) => vec![s(ant.clone(), with(&rs(), f.dia_body()?))],
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculi::{restriction_table, rules_for};
    use crate::formula::parse;
    use crate::logics::Sigma;

    fn s(t: &str) -> Sequent {
        Sequent::parse(t).unwrap()
    }

    fn node(rule: Rule, concl: &str, principal: Vec<Pos>, kids: Vec<Derivation>) -> Derivation {
        Derivation::new(rule, s(concl), principal, kids)
    }

    fn init(f: &str) -> Derivation {
        Derivation::init(parse(f).unwrap())
    }

    /// ⇒ □(p→q)→(□p→□q) in G1MK, with the (∗) derivation of p→q, p ⇒ q.
    pub(crate) fn kbox_g1mk() -> Derivation {
        let star = node(
            Rule::LImp,
            "p -> q, p => q",
            vec![Pos::l(0)],
            vec![init("p"), node(Rule::LWk, "q, p => q", vec![Pos::l(1)], vec![init("q")])],
        );
        let mk = Derivation::modal(Rule::MKBox, s("box (p -> q), box p => box q"), star);
        let r1 = node(Rule::RImp, "box (p -> q) => box p -> box q", vec![Pos::r(0)], vec![mk]);
        node(Rule::RImp, "=> box (p -> q) -> (box p -> box q)", vec![Pos::r(0)], vec![r1])
    }

    #[test]
    fn kbox_derivation_checks_in_mk_only() {
        let d = kbox_g1mk();
        let r = check_derivation(CalculusId::Minimal(Sigma::K), &d);
        assert!(r.valid, "{r:?}");
        assert_eq!(r.nodes, 7);
        let r = check_derivation(CalculusId::Minimal(Sigma::EMPTY), &d);
        assert!(!r.valid);
        assert_eq!(r.failed_at, Some(vec![0, 0]));
        assert!(check_derivation(CalculusId::Constructive(Sigma::K), &d).valid);
    }

    #[test]
    fn regime_violation_rejected() {
        // mK◇ with two succedent formulas.
        let kid = node(Rule::Init, "p => p", vec![Pos::l(0), Pos::r(0)], vec![]);
        let bad = Derivation::modal(Rule::MKDia, s("dia p => dia p, dia p"), kid);
        let r = check_derivation(CalculusId::Minimal(Sigma::K), &bad);
        assert!(!r.valid);
        assert!(r.message.unwrap().contains("restriction"));
    }

    #[test]
    fn contexts_are_exact() {
        // L∧ that silently drops a context formula.
        let d = node(Rule::LAnd1, "p & q, r => p", vec![Pos::l(0)], vec![init("p")]);
        assert!(!check_derivation(CalculusId::G1Mpl, &d).valid);
        let d = node(
            Rule::LAnd1,
            "p & q, r => p",
            vec![Pos::l(0)],
            vec![node(Rule::LWk, "p, r => p", vec![Pos::l(1)], vec![init("p")])],
        );
        assert!(check_derivation(CalculusId::G1Mpl, &d).valid);
        // Wrong principal position.
        let d = node(
            Rule::LAnd1,
            "r, p & q => p",
            vec![Pos::l(0)],
            vec![node(Rule::LWk, "p, r => p", vec![Pos::l(1)], vec![init("p")])],
        );
        assert!(!check_derivation(CalculusId::G1Mpl, &d).valid);
    }

    #[test]
    fn bottom_rules_by_regime() {
        let lbot = Derivation::leaf(Rule::LBot, s("bot =>"));
        assert!(!check_derivation(CalculusId::G1Mpl, &lbot).valid);
        let d = node(Rule::RWk, "bot => p", vec![Pos::r(0)], vec![lbot.clone()]);
        assert!(check_derivation(CalculusId::G1Ipl, &d).valid);
        assert!(check_derivation(CalculusId::G1Cpl, &d).valid);
        assert!(!check_derivation(CalculusId::G1Mpl, &d).valid);
    }

    #[test]
    fn mix_needs_permission() {
        let left = init("p");
        let right = node(Rule::LCtr, "p => p", vec![Pos::l(0)], vec![node(Rule::LWk, "p, p => p", vec![Pos::l(1)], vec![init("p")])]);
        let m = Derivation::new(Rule::Mix, s("p => p"), vec![], vec![left, right]);
        assert!(!check_derivation(CalculusId::G1Mpl, &m).valid);
        assert!(check_derivation_with(CalculusId::G1Mpl, &m, CheckOptions { allow_mix: true }).valid);
    }

    fn pool() -> Vec<Formula> {
        ["p", "box p", "dia p", "box q", "dia q", "q"].iter().map(|t| parse(t).unwrap()).collect()
    }

    fn multisets(pool: &[Formula], max: usize) -> Vec<Vec<Formula>> {
        let mut out = vec![vec![]];
        let mut frontier = vec![(vec![], 0usize)];
        for _ in 0..max {
            let mut next = Vec::new();
            for (m, start) in &frontier {
                for (i, f) in pool.iter().enumerate().skip(*start) {
                    let mut m2: Vec<Formula> = m.clone();
                    m2.push(f.clone());
                    out.push(m2.clone());
                    next.push((m2, i));
                }
            }
            frontier = next;
        }
        out
    }

    // Oracle for the restriction map: enumerate concrete single-succedent
    // nodes and compare acceptance by the minimal rule and by its classical
    // sources under the classical checker.
    #[test]
    fn restriction_map_agrees_on_instances() {
        let pool = pool();
        let ants = multisets(&pool, 2);
        let bodies: Vec<Formula> = ["p", "q"].iter().map(|t| parse(t).unwrap()).collect();
        let body_ants = multisets(&bodies, 2);
        let seqs: Vec<Sequent> = ants
            .iter()
            .flat_map(|a| pool.iter().map(move |c| Sequent::new(a.clone(), vec![c.clone()])))
            .collect();
        let prems: Vec<Sequent> = body_ants
            .iter()
            .chain(ants.iter())
            .flat_map(|a| bodies.iter().chain(pool.iter()).map(move |c| Sequent::new(a.clone(), vec![c.clone()])))
            .collect();
        for (m, sources) in restriction_table() {
            for concl in &seqs {
                let principals: Vec<Vec<Pos>> = if m.is_local_modal() {
                    let side = if m == Rule::MTBox { Side::L } else { Side::R };
                    let n = if side == Side::L { concl.ant.len() } else { concl.succ.len() };
                    (0..n).map(|i| vec![Pos { side, idx: i }]).collect()
                } else {
                    vec![all_positions(concl)]
                };
                for pr in &principals {
                    for prem in &prems {
                        let mine = check_node(Regime::Minimal, m, concl, pr, &[prem]).is_ok();
                        for c in &sources {
                            let theirs = check_node(Regime::Classical, *c, concl, pr, &[prem]).is_ok();
                            assert_eq!(mine, theirs, "{m} vs {c} on {prem} / {concl}");
                        }
                    }
                }
            }
        }
        // Every minimal modal rule is covered.
        for s in Sigma::admissible() {
            for r in rules_for(CalculusId::Minimal(s)) {
                if r.is_modal_transition() || r.is_local_modal() {
                    assert!(restriction_table().iter().any(|(m, _)| *m == r), "{r}");
                }
            }
        }
    }
}

//! From search proofs to literal G1 derivations.

use crate::calculi::{modal_premise_of, ms_minus, Derivation, Pos, Regime, Rule, Sequent};
use crate::formula::Formula;

use super::{SearchProof, SearchStep};

fn node(rule: Rule, ant: Vec<Formula>, succ: Vec<Formula>, principal: Vec<Pos>, kids: Vec<Derivation>) -> Derivation {
    Derivation::new(rule, Sequent::new(ant, succ), principal, kids)
}

fn count(v: &[Formula], f: &Formula) -> usize {
    v.iter().filter(|x| *x == f).count()
}

fn plus(v: &[Formula], extra: &[Formula]) -> Vec<Formula> {
    let mut w = v.to_vec();
    w.extend(extra.iter().cloned());
    w
}

fn minus(v: &[Formula], f: &Formula) -> Vec<Formula> {
    ms_minus(v, std::slice::from_ref(f)).expect("formula present")
}

/// Extends `d` below by weakenings and contractions so that it ends in
/// `target` (exactly, including order). Fails if that needs a structural
/// rule the regime lacks, or would have to drop a formula.
pub fn fit(regime: Regime, d: Derivation, target: &Sequent) -> Result<Derivation, String> {
    let mut d = d;
    // Contract surplus copies, then weaken in missing ones.
    while let Some(f) = d.seq.ant.iter().find(|f| count(&d.seq.ant, f) > count(&target.ant, f)).cloned() {
        if count(&target.ant, &f) == 0 {
            return Err(format!("cannot drop {f} from the antecedent of {}", d.seq));
        }
        let ant = minus(&d.seq.ant, &f);
        let j = ant.iter().position(|x| *x == f).expect("a copy remains");
        let succ = d.seq.succ.clone();
        d = node(Rule::LCtr, ant, succ, vec![Pos::l(j)], vec![d]);
    }
    while let Some(f) = target.ant.iter().find(|f| count(&d.seq.ant, f) < count(&target.ant, f)).cloned() {
        let ant = plus(&d.seq.ant, &[f]);
        let j = ant.len() - 1;
        let succ = d.seq.succ.clone();
        d = node(Rule::LWk, ant, succ, vec![Pos::l(j)], vec![d]);
    }
    match regime {
        Regime::Classical => {
            while let Some(f) = d.seq.succ.iter().find(|f| count(&d.seq.succ, f) > count(&target.succ, f)).cloned() {
                if count(&target.succ, &f) == 0 {
                    return Err(format!("cannot drop {f} from the succedent of {}", d.seq));
                }
                let succ = minus(&d.seq.succ, &f);
                let j = succ.iter().position(|x| *x == f).expect("a copy remains");
                let ant = d.seq.ant.clone();
                d = node(Rule::RCtr, ant, succ, vec![Pos::r(j)], vec![d]);
            }
            while let Some(f) = target.succ.iter().find(|f| count(&d.seq.succ, f) < count(&target.succ, f)).cloned() {
                let succ = plus(&d.seq.succ, &[f]);
                let j = succ.len() - 1;
                let ant = d.seq.ant.clone();
                d = node(Rule::RWk, ant, succ, vec![Pos::r(j)], vec![d]);
            }
        }
        Regime::Intuitionistic if d.seq.succ.is_empty() && target.succ.len() == 1 => {
            let ant = d.seq.ant.clone();
            d = node(Rule::RWk, ant, target.succ.clone(), vec![Pos::r(0)], vec![d]);
        }
        _ => {
            if d.seq.succ != target.succ {
                return Err(format!("succedent of {} cannot become that of {target}", d.seq));
            }
        }
    }
    Ok(reorder(d, target))
}

/// Replaces the end sequent by a permutation of it, remapping principal
/// positions.
fn reorder(mut d: Derivation, target: &Sequent) -> Derivation {
    if d.seq == *target {
        return d;
    }
    let map = |old: &[Formula], new: &[Formula]| -> Vec<usize> {
        let mut used = vec![false; new.len()];
        old.iter()
            .map(|f| {
                let j = (0..new.len()).find(|&j| !used[j] && new[j] == *f).expect("a permutation");
                used[j] = true;
                j
            })
            .collect()
    };
    if d.rule.is_modal_transition() {
        d.principal = crate::calculi::all_positions(target);
        d.seq = target.clone();
        return d;
    }
    let ml = map(&d.seq.ant, &target.ant);
    let mr = map(&d.seq.succ, &target.succ);
    for p in &mut d.principal {
        p.idx = match p.side {
            crate::calculi::Side::L => ml[p.idx],
            crate::calculi::Side::R => mr[p.idx],
        };
    }
    d.seq = target.clone();
    d
}

fn sub(f: &Formula) -> (Formula, Formula) {
    match f {
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => ((**a).clone(), (**b).clone()),
        _ => panic!("{f} is not binary"),
    }
}

fn body(f: &Formula) -> Formula {
    f.box_body().or(f.dia_body()).cloned().unwrap_or_else(|| panic!("{f} is not modal"))
}

/// Turns a search proof into a G1 derivation of its (set) end sequent.
pub fn elaborate(regime: Regime, p: &SearchProof) -> Derivation {
    let bad = |e: String| -> Derivation { panic!("elaboration failed at {}: {e}", p.seq) };
    let kid = |i: usize, target: Sequent| fit(regime, elaborate(regime, &p.kids[i]), &target).unwrap_or_else(bad);
    let (g, d) = (&p.seq.ant, &p.seq.succ);
    let s = |a: Vec<Formula>, b: Vec<Formula>| Sequent::new(a, b);
    let out = match &p.step {
        SearchStep::Init(f) => Derivation::init(f.clone()),
        SearchStep::Bot => Derivation::leaf(Rule::LBot, s(vec![Formula::Bottom], vec![])),
        SearchStep::LAnd(f) => {
            let (a, b) = sub(f);
            let g1 = minus(g, f);
            let n = g1.len();
            let k = kid(0, s(plus(&g1, &[a, b.clone()]), d.clone()));
            let c1 = node(Rule::LAnd1, plus(&g1, &[f.clone(), b]), d.clone(), vec![Pos::l(n)], vec![k]);
            let c2 = node(Rule::LAnd2, plus(&g1, &[f.clone(), f.clone()]), d.clone(), vec![Pos::l(n + 1)], vec![c1]);
            node(Rule::LCtr, plus(&g1, &[f.clone()]), d.clone(), vec![Pos::l(n)], vec![c2])
        }
        SearchStep::LOr(f) => {
            let (a, b) = sub(f);
            let g1 = minus(g, f);
            let k1 = kid(0, s(plus(&g1, &[a]), d.clone()));
            let k2 = kid(1, s(plus(&g1, &[b]), d.clone()));
            node(Rule::LOr, plus(&g1, &[f.clone()]), d.clone(), vec![Pos::l(g1.len())], vec![k1, k2])
        }
        SearchStep::LImp(f) if regime == Regime::Classical => {
            let (a, b) = sub(f);
            let g1 = minus(g, f);
            let k1 = kid(0, s(g1.clone(), plus(d, &[a])));
            let k2 = kid(1, s(plus(&g1, &[b]), d.clone()));
            node(Rule::LImp, plus(&g1, &[f.clone()]), d.clone(), vec![Pos::l(g1.len())], vec![k1, k2])
        }
        SearchStep::LImp(f) => {
            // The left premise kept the principal formula: apply L→ to a
            // second copy and contract.
            let (a, b) = sub(f);
            let k1 = kid(0, s(g.clone(), vec![a]));
            let k2 = kid(1, s(plus(g, &[b]), d.clone()));
            node(Rule::LImp, plus(g, &[f.clone()]), d.clone(), vec![Pos::l(g.len())], vec![k1, k2])
        }
        SearchStep::RAnd(f) => {
            let (a, b) = sub(f);
            let d1 = minus(d, f);
            let k1 = kid(0, s(g.clone(), plus(&d1, &[a])));
            let k2 = kid(1, s(g.clone(), plus(&d1, &[b])));
            node(Rule::RAnd, g.clone(), plus(&d1, &[f.clone()]), vec![Pos::r(d1.len())], vec![k1, k2])
        }
        SearchStep::ROr(f) => {
            let (a, b) = sub(f);
            let d1 = minus(d, f);
            let n = d1.len();
            let k = kid(0, s(g.clone(), plus(&d1, &[a, b.clone()])));
            let c1 = node(Rule::ROr1, g.clone(), plus(&d1, &[f.clone(), b]), vec![Pos::r(n)], vec![k]);
            let c2 = node(Rule::ROr2, g.clone(), plus(&d1, &[f.clone(), f.clone()]), vec![Pos::r(n + 1)], vec![c1]);
            node(Rule::RCtr, g.clone(), plus(&d1, &[f.clone()]), vec![Pos::r(n)], vec![c2])
        }
        SearchStep::ROrPick(f, i) => {
            let (a, b) = sub(f);
            let (x, rule) = if *i == 0 { (a, Rule::ROr1) } else { (b, Rule::ROr2) };
            let k = kid(0, s(g.clone(), vec![x]));
            node(rule, g.clone(), vec![f.clone()], vec![Pos::r(0)], vec![k])
        }
        SearchStep::RImp(f) => {
            let (a, b) = sub(f);
            let d1 = minus(d, f);
            let k = kid(0, s(plus(g, &[a]), plus(&d1, &[b])));
            node(Rule::RImp, g.clone(), plus(&d1, &[f.clone()]), vec![Pos::r(d1.len())], vec![k])
        }
        SearchStep::RWk => {
            let k = kid(0, s(g.clone(), vec![]));
            node(Rule::RWk, g.clone(), d.clone(), vec![Pos::r(0)], vec![k])
        }
        SearchStep::TBox(rule, f) => {
            let k = kid(0, s(plus(g, &[body(f)]), d.clone()));
            node(*rule, plus(g, &[f.clone()]), d.clone(), vec![Pos::l(g.len())], vec![k])
        }
        SearchStep::TDia(rule, f) if regime == Regime::Classical => {
            let k = kid(0, s(g.clone(), plus(d, &[body(f)])));
            node(*rule, g.clone(), plus(d, &[f.clone()]), vec![Pos::r(d.len())], vec![k])
        }
        SearchStep::TDia(rule, f) => {
            let k = kid(0, s(g.clone(), vec![body(f)]));
            node(*rule, g.clone(), vec![f.clone()], vec![Pos::r(0)], vec![k])
        }
        SearchStep::Modal(rule, concl) => {
            let prem = modal_premise_of(*rule, concl).unwrap_or_else(|| panic!("{rule} does not apply to {concl}"));
            Derivation::modal(*rule, concl.clone(), kid(0, prem))
        }
    };
    fit(regime, out, &p.seq).unwrap_or_else(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculi::{check_derivation, CalculusId};
    use crate::formula::parse;

    fn seq(t: &str) -> Sequent {
        Sequent::parse(t).unwrap()
    }

    #[test]
    fn fit_inserts_structural_rules() {
        let d = Derivation::init(parse("p").unwrap());
        let t = seq("q, p, p => p");
        let e = fit(Regime::Minimal, d.clone(), &t).unwrap();
        assert_eq!(e.seq, t);
        assert!(check_derivation(CalculusId::G1Mpl, &e).valid);
        assert!(fit(Regime::Minimal, d.clone(), &seq("q => p")).is_err());
        assert!(fit(Regime::Minimal, d.clone(), &seq("p => q")).is_err());
        let e = fit(Regime::Classical, d, &seq("p => q, p, p")).unwrap();
        assert!(check_derivation(CalculusId::G1Cpl, &e).valid);
        let lbot = Derivation::leaf(Rule::LBot, seq("bot =>"));
        let e = fit(Regime::Intuitionistic, lbot, &seq("bot, q => p")).unwrap();
        assert!(check_derivation(CalculusId::G1Ipl, &e).valid);
    }

    #[test]
    fn absorbed_implication_gets_a_contraction() {
        let f = parse("p -> q").unwrap();
        let p = SearchProof {
            seq: seq("p -> q, p => q"),
            step: SearchStep::LImp(f),
            kids: vec![
                SearchProof { seq: seq("p -> q, p => p"), step: SearchStep::Init(parse("p").unwrap()), kids: vec![] },
                SearchProof { seq: seq("p, q => q"), step: SearchStep::Init(parse("q").unwrap()), kids: vec![] },
            ],
        };
        let d = elaborate(Regime::Minimal, &p);
        assert_eq!(d.rule, Rule::LCtr);
        assert_eq!(d.kids[0].rule, Rule::LImp);
        assert!(check_derivation(CalculusId::G1Mpl, &d).valid);
    }
}

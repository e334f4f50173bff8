//! Mix elimination for the single-succedent calculi, by induction on the
//! pair (complexity of the mix formula, cut height). Every recursive mix is
//! logged with its measure and the measure of the mix it came from.

use serde::Serialize;
use thiserror::Error;

use crate::calculi::{
    check_derivation, check_derivation_with, check_node, local_premises, modal_premise_of, rules_for, CalculusId,
    CheckOptions, Derivation, Pos, Regime, Rule, Sequent, Side,
};
use crate::formula::Formula;

use super::elaborate::fit;

pub const DEFAULT_FUEL: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixStep {
    pub case: String,
    pub formula: String,
    /// (complexity of the mix formula, cut height).
    pub measure: (usize, usize),
    pub parent: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MixLog {
    pub steps: Vec<MixStep>,
}

impl MixLog {
    /// Whether every logged mix has a smaller measure than its parent.
    pub fn measure_decreases(&self) -> bool {
        self.steps.iter().all(|s| s.parent.is_none_or(|p| s.measure < p))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MixError {
    #[error("mix elimination ran out of fuel")]
    FuelExhausted,
    #[error("mix elimination is not implemented for the classical calculus {0}")]
    Classical(CalculusId),
    #[error("malformed mix: {0}")]
    Malformed(String),
    #[error("input derivation is not valid in {0}: {1}")]
    Invalid(CalculusId, String),
    #[error("no reduction applies: {0}")]
    Stuck(String),
}

/// Length of the longest branch, counted in rule applications.
fn height(d: &Derivation) -> usize {
    d.height() - 1
}

fn without_all(v: &[Formula], a: &Formula) -> Vec<Formula> {
    v.iter().filter(|x| *x != a).cloned().collect()
}

fn plus(v: &[Formula], w: &[Formula]) -> Vec<Formula> {
    let mut out = v.to_vec();
    out.extend(w.iter().cloned());
    out
}

fn body(f: &Formula) -> Option<Formula> {
    f.box_body().or(f.dia_body()).cloned()
}

fn is_left_rule(r: Rule) -> bool {
    use Rule::*;
    matches!(r, LAnd1 | LAnd2 | LOr | LImp | LWk | LCtr | TBox | MTBox | ITBox)
}

struct Mixer {
    regime: Regime,
    rules: Vec<Rule>,
    fuel: usize,
    log: Vec<MixStep>,
}

type Case = (String, Derivation);

impl Mixer {
    fn fit(&self, d: Derivation, target: &Sequent) -> Result<Derivation, MixError> {
        fit(self.regime, d, target).map_err(MixError::Stuck)
    }

    /// Eliminates a single mix of mix-free `d1` (Γ ⇒ A) and `d2` (Σ, Aⁿ ⇒ C),
    /// returning a derivation of Γ, Σ ⇒ C with Σ free of A.
    fn mix(&mut self, d1: &Derivation, d2: &Derivation, a: &Formula, parent: Option<(usize, usize)>) -> Result<Derivation, MixError> {
        if self.fuel == 0 {
            return Err(MixError::FuelExhausted);
        }
        self.fuel -= 1;
        if d1.seq.succ.as_slice() != std::slice::from_ref(a) {
            return Err(MixError::Malformed(format!("left premise {} does not end in {a}", d1.seq)));
        }
        if !d2.seq.ant.contains(a) {
            return Err(MixError::Malformed(format!("{a} does not occur in the antecedent of {}", d2.seq)));
        }
        let m = (a.complexity(), height(d1) + height(d2));
        if let Some(p) = parent {
            assert!(m < p, "mix measure {m:?} does not decrease below {p:?}");
        }
        let at = self.log.len();
        self.log.push(MixStep { case: String::new(), formula: a.to_string(), measure: m, parent });
        let target = Sequent::new(plus(&d1.seq.ant, &without_all(&d2.seq.ant, a)), d2.seq.succ.clone());
        let (case, r) = self.reduce(d1, d2, a, m, &target)?;
        self.log[at].case = case;
        self.fit(r, &target)
    }

    fn mix_if(&mut self, d1: &Derivation, k: &Derivation, a: &Formula, m: (usize, usize)) -> Result<Derivation, MixError> {
        if k.seq.ant.contains(a) {
            self.mix(d1, k, a, Some(m))
        } else {
            Ok(k.clone())
        }
    }

    fn tbox_rule(&self) -> Option<Rule> {
        [Rule::MTBox, Rule::ITBox].into_iter().find(|r| self.rules.contains(r))
    }

    /// Applies T□ once per formula of `boxes` whose body occurs in `d`.
    fn box_up(&self, mut d: Derivation, boxes: &[Formula], rule: Rule) -> Derivation {
        for f in boxes {
            let Some(b) = f.box_body() else { continue };
            if let Some(i) = d.seq.ant.iter().position(|x| x == b) {
                let mut ant = d.seq.ant.clone();
                ant[i] = f.clone();
                let succ = d.seq.succ.clone();
                d = Derivation::new(rule, Sequent::new(ant, succ), vec![Pos::l(i)], vec![d]);
            }
        }
        d
    }

    fn reduce(&mut self, d1: &Derivation, d2: &Derivation, a: &Formula, m: (usize, usize), target: &Sequent) -> Result<Case, MixError> {
        use Rule::*;
        let stuck = || MixError::Stuck(format!("{} / {} on {a}", d1.rule, d2.rule));
        let rest2 = without_all(&d2.seq.ant, a);
        if d1.rule == Init {
            return Ok(("1.1".into(), d2.clone()));
        }
        if d2.rule == Init {
            return Ok(("1.2".into(), d1.clone()));
        }
        // 2.1: the mix formula is not principal on the left.
        if is_left_rule(d1.rule) {
            let n = Sequent::new(plus(&d1.seq.ant, &rest2), d2.seq.succ.clone());
            let prem = local_premises(self.regime, d1.rule, &n, &d1.principal).ok_or_else(stuck)?;
            let mut kids = Vec::new();
            for (i, k) in d1.kids.iter().enumerate() {
                let carries = !(d1.rule == LImp && i == 0);
                let raw = if carries { self.mix(k, d2, a, Some(m))? } else { k.clone() };
                kids.push(self.fit(raw, &prem[i])?);
            }
            let case = if d2.rule == LBot { "1.2 lbot" } else { "2.1" };
            return Ok((format!("{case} {}", d1.rule), Derivation::new(d1.rule, n, d1.principal.clone(), kids)));
        }
        if d1.rule == RWk {
            return Ok(("2.3 irwk-R".into(), d1.kids[0].clone()));
        }
        let principal_right = d2.rule.is_modal_transition()
            || d2.principal.iter().any(|p| p.side == Side::L && d2.seq.ant.get(p.idx) == Some(a));
        // 2.2: the mix formula is not principal on the right.
        if !principal_right {
            let k = d1.seq.ant.len();
            let rank = |i: usize| d2.seq.ant[..i].iter().filter(|x| *x != a).count();
            let principal: Vec<Pos> = d2
                .principal
                .iter()
                .map(|p| match p.side {
                    Side::L => Pos::l(k + rank(p.idx)),
                    Side::R => *p,
                })
                .collect();
            let n = Sequent::new(plus(&d1.seq.ant, &rest2), d2.seq.succ.clone());
            let prem = local_premises(self.regime, d2.rule, &n, &principal).ok_or_else(stuck)?;
            let mut kids = Vec::new();
            for (i, kd) in d2.kids.iter().enumerate() {
                let raw = self.mix_if(d1, kd, a, m)?;
                kids.push(self.fit(raw, &prem[i])?);
            }
            return Ok((format!("2.2 {}", d2.rule), Derivation::new(d2.rule, n, principal, kids)));
        }
        match d2.rule {
            LCtr => return Ok(("2.3 R-lctr".into(), self.mix(d1, &d2.kids[0], a, Some(m))?)),
            LWk => {
                let k = &d2.kids[0];
                return if k.seq.ant.contains(a) {
                    Ok(("2.3 R-lwk".into(), self.mix(d1, k, a, Some(m))?))
                } else {
                    Ok(("2.3 R-lwk n=1".into(), k.clone()))
                };
            }
            _ => {}
        }
        let case = format!("2.3 {}-{}", d1.rule, d2.rule);
        match (a, d1.rule, d2.rule) {
            (Formula::And(b, c), RAnd, LAnd1 | LAnd2) => {
                let (i, x) = if d2.rule == LAnd1 { (0, b) } else { (1, c) };
                let k2 = self.mix_if(d1, &d2.kids[0], a, m)?;
                let r = self.mix(&d1.kids[i], &k2, x, Some(m))?;
                Ok((case, r))
            }
            (Formula::Or(b, c), ROr1 | ROr2, LOr) => {
                let (i, x) = if d1.rule == ROr1 { (0, b) } else { (1, c) };
                let k2 = self.mix_if(d1, &d2.kids[i], a, m)?;
                let r = self.mix(&d1.kids[0], &k2, x, Some(m))?;
                Ok((case, r))
            }
            (Formula::Imp(b, c), RImp, LImp) => {
                let k2a = self.mix_if(d1, &d2.kids[0], a, m)?;
                let k2b = self.mix_if(d1, &d2.kids[1], a, m)?;
                let m1 = self.mix(&k2a, &d1.kids[0], b, Some(m))?;
                let m2 = self.mix(&m1, &k2b, c, Some(m))?;
                Ok((case, m2))
            }
            (Formula::Box(b), _, MTBox | ITBox) if d1.rule.is_modal_transition() => {
                let k2 = self.mix_if(d1, &d2.kids[0], a, m)?;
                let r = self.mix(&d1.kids[0], &k2, b, Some(m))?;
                Ok((case, self.box_up(r, &d1.seq.ant, d2.rule)))
            }
            (Formula::Dia(b), MTDia, _) if d2.rule.is_modal_transition() => {
                let r = self.mix(&d1.kids[0], &d2.kids[0], b, Some(m))?;
                let r = match self.tbox_rule() {
                    Some(t) => self.box_up(r, &rest2, t),
                    None => r,
                };
                let r = match (d2.seq.succ.as_slice(), r.seq.succ.as_slice()) {
                    ([g], [e]) if g.dia_body() == Some(e) => {
                        let ant = r.seq.ant.clone();
                        Derivation::new(MTDia, Sequent::new(ant, vec![g.clone()]), vec![Pos::r(0)], vec![r])
                    }
                    _ => r,
                };
                Ok((case, r))
            }
            _ if d1.rule.is_modal_transition() && d2.rule.is_modal_transition() => {
                let b = body(a).ok_or_else(stuck)?;
                let r = self.mix(&d1.kids[0], &d2.kids[0], &b, Some(m))?;
                let n = Sequent::new(plus(&d1.seq.ant, &rest2), d2.seq.succ.clone());
                let mut candidates = vec![d2.rule, d1.rule];
                candidates.extend(self.rules.iter().copied().filter(|x| x.is_modal_transition()));
                for rule in candidates {
                    let Some(p) = modal_premise_of(rule, &n) else { continue };
                    let Ok(k) = self.fit(r.clone(), &p) else { continue };
                    let nd = Derivation::modal(rule, n.clone(), k);
                    if check_node(self.regime, rule, &nd.seq, &nd.principal, &[&nd.kids[0].seq]).is_ok() {
                        return Ok((format!("{case} by {rule}"), nd));
                    }
                }
                Err(stuck())
            }
            _ => {
                let _ = target;
                Err(stuck())
            }
        }
    }

    fn elim(&mut self, d: &Derivation) -> Result<Derivation, MixError> {
        let kids = d.kids.iter().map(|k| self.elim(k)).collect::<Result<Vec<_>, _>>()?;
        if d.rule != Rule::Mix {
            return Ok(Derivation { kids, ..d.clone() });
        }
        let [l, r] = kids.as_slice() else { return Err(MixError::Malformed("mix needs two premises".into())) };
        let a = match l.seq.succ.as_slice() {
            [a] => a.clone(),
            _ => return Err(MixError::Malformed("left premise of mix needs one succedent formula".into())),
        };
        let out = self.mix(l, r, &a, None)?;
        self.fit(out, &d.seq)
    }
}

/// Removes every mix from `d`, innermost first.
pub fn eliminate_mix(c: CalculusId, d: &Derivation, fuel: usize) -> Result<(Derivation, MixLog), MixError> {
    if c.regime() == Regime::Classical {
        return Err(MixError::Classical(c));
    }
    let rep = check_derivation_with(c, d, CheckOptions { allow_mix: true });
    if !rep.valid {
        return Err(MixError::Invalid(c, rep.message.unwrap_or_default()));
    }
    let mut mx = Mixer { regime: c.regime(), rules: rules_for(c), fuel, log: Vec::new() };
    let out = mx.elim(d)?;
    Ok((out, MixLog { steps: mx.log }))
}

/// Cuts `d1` (Γ ⇒ A) against `d2` (Σ, A ⇒ C), giving a cut-free derivation of
/// Γ, Σ ⇒ C where one occurrence of A is removed from the antecedent of `d2`.
pub fn cut(c: CalculusId, d1: &Derivation, d2: &Derivation) -> Result<Derivation, MixError> {
    cut_logged(c, d1, d2, DEFAULT_FUEL).map(|(d, _)| d)
}

pub fn cut_logged(c: CalculusId, d1: &Derivation, d2: &Derivation, fuel: usize) -> Result<(Derivation, MixLog), MixError> {
    for d in [d1, d2] {
        let r = check_derivation(c, d);
        if !r.valid {
            return Err(MixError::Invalid(c, r.message.unwrap_or_default()));
        }
    }
    let a = match d1.seq.succ.as_slice() {
        [a] => a.clone(),
        _ => return Err(MixError::Malformed(format!("left premise {} needs one succedent formula", d1.seq))),
    };
    let Some(i) = d2.seq.ant.iter().position(|x| *x == a) else {
        return Err(MixError::Malformed(format!("cut formula {a} does not occur in {}", d2.seq)));
    };
    let mut rest = d2.seq.ant.clone();
    rest.remove(i);
    let goal = Sequent::new(plus(&d1.seq.ant, &rest), d2.seq.succ.clone());
    let mixed = Sequent::new(plus(&d1.seq.ant, &without_all(&d2.seq.ant, &a)), d2.seq.succ.clone());
    let d = Derivation::new(Rule::Mix, mixed, vec![], vec![d1.clone(), d2.clone()]);
    let (out, log) = eliminate_mix(c, &d, fuel)?;
    let out = fit(c.regime(), out, &goal).map_err(MixError::Stuck)?;
    Ok((out, log))
}

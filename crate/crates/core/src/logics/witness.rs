//! Stored Hilbert derivations witnessing that an axiom or rule of one system
//! is derivable in another. Each witness is instantiated at A := p, B := q
//! and is validated by the checker, never trusted.

use serde::Serialize;

use super::hilbert::{check_hilbert_with, HilbertBuilder, HilbertReport, Step, L};
use super::{
    axiomatization, representative, schema, Axiomatization, LogicId, RuleName, RuleSchema, Sigma,
    Subst,
};
use crate::formula::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Derivable {
    Axiom(&'static str),
    Rule(RuleName),
}

#[derive(Debug, Clone)]
pub struct Witness {
    pub derives: Derivable,
    /// Name of the system the derivation is written for.
    pub home: String,
    home_ax: Axiomatization,
    pub steps: Vec<Step>,
}

fn pq() -> Subst {
    [("A", "p"), ("B", "q"), ("C", "r")]
        .into_iter()
        .map(|(m, a)| (m.to_string(), Formula::atom(a)))
        .collect()
}

impl Witness {
    /// Checks the derivation in its home system.
    pub fn check(&self) -> HilbertReport {
        self.check_in(&self.home_ax)
    }

    /// Checks the derivation in `ax` and that it derives what it claims.
    pub fn check_in(&self, ax: &Axiomatization) -> HilbertReport {
        let mut r = check_hilbert_with(ax, &self.steps);
        if !r.accepted {
            return r;
        }
        let ok = match self.derives {
            Derivable::Axiom(name) => {
                r.is_theorem() && r.conclusion.as_ref() == Some(&representative(schema(name).expect("schema")))
            }
            Derivable::Rule(rule) => {
                let rs = RuleSchema::of(rule);
                let s = pq();
                let prem: Vec<Formula> =
                    rs.premises.iter().map(|t| super::substitute(t, &s).expect("rule template")).collect();
                let concl = super::substitute(&rs.conclusion, &s).expect("rule template");
                r.hypotheses.is_empty()
                    && r.premises.iter().all(|p| prem.contains(p))
                    && r.conclusion.as_ref() == Some(&concl)
            }
        };
        if !ok {
            r.accepted = false;
            r.message = Some("derivation does not end in the claimed formula".into());
            r.failed_step = Some(self.steps.len() - 1);
        }
        r
    }

    pub fn check_in_logic(&self, l: LogicId) -> HilbertReport {
        match axiomatization(l) {
            Ok(ax) => self.check_in(&ax),
            Err(e) => HilbertReport {
                accepted: false,
                failed_step: None,
                message: Some(e.to_string()),
                conclusion: None,
                hypotheses: vec![],
                premises: vec![],
            },
        }
    }
}

fn p() -> Formula {
    Formula::atom("p")
}
fn q() -> Formula {
    Formula::atom("q")
}

fn in_logic(derives: Derivable, l: LogicId, build: impl FnOnce(&mut HilbertBuilder)) -> Witness {
    let mut b = HilbertBuilder::new();
    build(&mut b);
    Witness { derives, home: l.name(), home_ax: axiomatization(l).expect("registered"), steps: b.finish() }
}

fn in_custom(derives: Derivable, name: &str, ax: Axiomatization, build: impl FnOnce(&mut HilbertBuilder)) -> Witness {
    let mut b = HilbertBuilder::new();
    build(&mut b);
    Witness { derives, home: name.to_string(), home_ax: ax, steps: b.finish() }
}

// ---------------------------------------------------------------- lemmas

/// A → (B → A ∧ B).
fn pair(b: &mut HilbertBuilder, x: &Formula, y: &Formula) -> L {
    b.deduce(x.clone(), |b, a| b.deduce(y.clone(), |b, c| b.conj(a, c)))
}

/// (X ∧ Y → Z) from X → (Y → Z).
fn uncurry(b: &mut HilbertBuilder, xyz: L) -> L {
    let Formula::Imp(x, yz) = b.formula(xyz).clone() else { panic!() };
    let Formula::Imp(y, _) = (*yz).clone() else { panic!() };
    b.deduce(Formula::and((*x).clone(), (*y).clone()), |b, h| {
        let (l, r) = (b.and_l(h), b.and_r(h));
        let m = b.mp(l, xyz);
        b.mp(r, m)
    })
}

/// ¬□⊥ from D (classical).
fn pbox_from_d(b: &mut HilbertBuilder) -> L {
    let bot = Formula::Bottom;
    let top = Formula::top();
    let d = b.axiom("D", &[("A", &bot)]); // □⊥ → ◇⊥
    let nbn = b.dia_to_nbn(&bot); // ◇⊥ → ¬□¬⊥, and ¬⊥ is ⊤
    let chain = b.hs(d, nbn); // □⊥ → ¬□⊤
    let bt = {
        let e = b.imp_refl_to_top();
        b.monbox(e) // □⊥ → □⊤
    };
    b.deduce(Formula::boxed(bot.clone()), |b, h| {
        let x = b.mp(h, chain);
        let y = b.mp(h, bt);
        let _ = &top;
        b.mp(y, x)
    })
}

/// ◇⊤ from ¬□⊥ (classical).
fn pdia_from_pbox(b: &mut HilbertBuilder, pbox: L) -> L {
    let top = Formula::top();
    // ¬□¬⊤ → ◇⊤; □¬⊤ → □⊥ from ¬⊤ → ⊥.
    let to_dia = b.nbn_to_dia(&top);
    let ntop_bot = b.deduce(Formula::not(top.clone()), |b, h| {
        let t = b.top();
        b.mp(t, h)
    });
    let mb = b.monbox(ntop_bot); // □¬⊤ → □⊥
    let c = b.contrapose(mb); // ¬□⊥ → ¬□¬⊤
    let x = b.mp(pbox, c);
    b.mp(x, to_dia)
}

/// □(X → Y) ∧ □X → □Y from Cbox and mon□.
fn kbox_core(b: &mut HilbertBuilder, x: &Formula, y: &Formula) -> L {
    let xy = Formula::imp(x.clone(), y.clone());
    let cb = b.axiom("Cbox", &[("A", &xy), ("B", x)]);
    let inner = b.deduce(Formula::and(xy.clone(), x.clone()), |b, h| {
        let (i, a) = (b.and_l(h), b.and_r(h));
        b.mp(a, i)
    });
    let mb = b.monbox(inner);
    b.hs(cb, mb)
}

fn kbox_from_cbox(b: &mut HilbertBuilder) {
    let core = kbox_core(b, &p(), &q());
    let bxy = Formula::boxed(Formula::imp(p(), q()));
    b.deduce(bxy, |b, h1| {
        b.deduce(Formula::boxed(p()), |b, h2| {
            let c = b.conj(h1, h2);
            b.mp(c, core)
        })
    });
}

/// From premise A derive □A using mon□ and Nbox.
fn nec_from_nbox(b: &mut HilbertBuilder) {
    let a = b.premise(p());
    let k = b.axiom("k", &[("A", &p()), ("B", &Formula::top())]);
    let ta = b.mp(a, k); // ⊤ → p
    let m = b.monbox(ta); // □⊤ → □p
    let n = b.axiom("Nbox", &[]);
    b.mp(n, m);
}

impl HilbertBuilder {
    /// ⊥ → ⊤, an MPL theorem.
    fn imp_refl_to_top(&mut self) -> L {
        let t = self.top();
        self.weaken_top(t)
    }

    fn weaken_top(&mut self, t: L) -> L {
        let ft = self.formula(t).clone();
        let k = self.axiom("k", &[("A", &ft), ("B", &Formula::Bottom)]);
        self.mp(t, k)
    }
}

/// Every stored witness.
pub fn witnesses() -> Vec<Witness> {
    use Derivable::{Axiom, Rule};
    let cl = LogicId::classical;
    let mi = LogicId::minimal;
    let (c, n, d, t, pp) = (Sigma::C, Sigma::N, Sigma::D, Sigma::T, Sigma::P);
    let mut v = Vec::new();

    // Classical systems.
    v.push(in_logic(Axiom("Pbox"), cl(d), |b| {
        pbox_from_d(b);
    }));
    v.push(in_logic(Axiom("Pdiam"), cl(pp), |b| {
        let pb = b.axiom("Pbox", &[]);
        pdia_from_pbox(b, pb);
    }));
    v.push(in_logic(Axiom("Pdiam"), cl(d), |b| {
        let pb = pbox_from_d(b);
        pdia_from_pbox(b, pb);
    }));
    v.push(in_logic(Axiom("D"), cl(t), |b| {
        // □A → A and A → ¬□¬A give □A → ¬□¬A; then ¬□¬A → ◇A.
        let tb = b.axiom("Tbox", &[("A", &p())]);
        let tn = b.axiom("Tbox", &[("A", &Formula::not(p()))]); // □¬p → ¬p
        let c1 = b.contrapose(tn); // ¬¬p → ¬□¬p
        let dn = b.dn_intro(&p());
        let a_nbn = b.hs(dn, c1);
        let to_dia = b.nbn_to_dia(&p());
        let x = b.hs(tb, a_nbn);
        b.hs(x, to_dia);
    }));
    v.push(in_logic(Axiom("Tdiam"), cl(t), |b| {
        let tn = b.axiom("Tbox", &[("A", &Formula::not(p()))]);
        let c1 = b.contrapose(tn);
        let dn = b.dn_intro(&p());
        let a_nbn = b.hs(dn, c1);
        let to_dia = b.nbn_to_dia(&p());
        b.hs(a_nbn, to_dia);
    }));
    // D from C and Pbox: □A ∧ □¬A → □⊥, so □A → ¬□¬A → ◇A.
    let mc_p = axiomatization(cl(c)).expect("registered").extend(&["Pbox"]);
    v.push(in_custom(Axiom("D"), "MC + Pbox", mc_p, |b| {
        let np = Formula::not(p());
        let cb = b.axiom("Cbox", &[("A", &p()), ("B", &np)]);
        let contra = b.deduce(Formula::and(p(), np.clone()), |b, h| {
            let (x, y) = (b.and_l(h), b.and_r(h));
            b.mp(x, y)
        });
        let mb = b.monbox(contra);
        let to_bot = b.hs(cb, mb); // □p ∧ □¬p → □⊥
        let pbox = b.axiom("Pbox", &[]);
        let bp_nbn = b.deduce(Formula::boxed(p()), |b, h1| {
            b.deduce(Formula::boxed(np.clone()), |b, h2| {
                let cj = b.conj(h1, h2);
                let bb = b.mp(cj, to_bot);
                b.mp(bb, pbox)
            })
        });
        let to_dia = b.nbn_to_dia(&p());
        b.hs(bp_nbn, to_dia);
    }));
    v.push(in_logic(Axiom("Pbox"), cl(c.with(d)), |b| {
        pbox_from_d(b);
    }));
    v.push(in_logic(Axiom("Kbox"), cl(Sigma::K), kbox_from_cbox));
    v.push(in_logic(Axiom("Kdiam"), cl(c), |b| {
        // □(p→q) ∧ □¬q → □¬p, then contrapose through the dual lemmas.
        let pq_ = Formula::imp(p(), q());
        let nq = Formula::not(q());
        let np = Formula::not(p());
        let cb = b.axiom("Cbox", &[("A", &pq_), ("B", &nq)]);
        let mt = b.deduce(Formula::and(pq_.clone(), nq.clone()), |b, h| {
            let (i, nql) = (b.and_l(h), b.and_r(h));
            b.deduce(p(), |b, pl| {
                let ql = b.mp(pl, i);
                b.mp(ql, nql)
            })
        });
        let mb = b.monbox(mt);
        let core = b.hs(cb, mb); // □(p→q) ∧ □¬q → □¬p
        let dp = b.dia_to_nbn(&p());
        let dq = b.nbn_to_dia(&q());
        b.deduce(Formula::boxed(pq_.clone()), |b, h| {
            let bnq_bnp = b.deduce(Formula::boxed(nq.clone()), |b, h2| {
                let cj = b.conj(h, h2);
                b.mp(cj, core)
            });
            let c2 = b.contrapose(bnq_bnp); // ¬□¬p → ¬□¬q
            let x = b.hs(dp, c2);
            let _ = &np;
            b.hs(x, dq)
        });
    }));
    v.push(in_logic(Rule(RuleName::Nec), cl(Sigma::K), nec_from_nbox));
    v.push(in_logic(Axiom("mnc-ax"), cl(Sigma::EMPTY), |b| {
        let dl = b.dual_l(&p()); // □p → ¬◇¬p
        b.deduce(Formula::and(Formula::boxed(p()), Formula::dia(Formula::not(p()))), |b, h| {
            let (x, y) = (b.and_l(h), b.and_r(h));
            let nd = b.mp(x, dl);
            b.mp(y, nd)
        });
    }));

    // Minimal systems.
    v.push(in_logic(Axiom("Pdiam"), mi(t), |b| {
        let td = b.axiom("Tdiam", &[("A", &Formula::top())]);
        let top = b.top();
        b.mp(top, td);
    }));
    v.push(in_logic(Axiom("D"), mi(t), |b| {
        let tb = b.axiom("Tbox", &[("A", &p())]);
        let td = b.axiom("Tdiam", &[("A", &p())]);
        b.hs(tb, td);
    }));
    v.push(in_logic(Axiom("Pdiam"), mi(n.with(d)), |b| {
        let nb = b.axiom("Nbox", &[]);
        let dd = b.axiom("D", &[("A", &Formula::top())]);
        b.mp(nb, dd);
    }));
    v.push(in_logic(Axiom("Cbox"), LogicId::mk(), |b| {
        // The five-line derivation, with its propositional steps expanded.
        let c1 = pair(b, &p(), &q()); // p → (q → p ∧ q)
        let c2 = b.nec(c1);
        let k1 = b.axiom("Kbox", &[("A", &p()), ("B", &Formula::imp(q(), Formula::and(p(), q())))]);
        let c3 = b.mp(c2, k1); // □p → □(q → p ∧ q)
        let k2 = b.axiom("Kbox", &[("A", &q()), ("B", &Formula::and(p(), q()))]);
        let c4 = b.hs(c3, k2); // □p → (□q → □(p ∧ q))
        uncurry(b, c4);
    }));
    v.push(in_logic(Axiom("Nbox"), LogicId::mk(), |b| {
        let t = b.top();
        b.nec(t);
    }));
    v.push(in_logic(Axiom("Pdiam"), mi(Sigma::K.with(d)), |b| {
        let t = b.top();
        let nt = b.nec(t);
        let dd = b.axiom("D", &[("A", &Formula::top())]);
        b.mp(nt, dd);
    }));
    for (rule, ax) in [(RuleName::MonBox, "Kbox"), (RuleName::MonDia, "Kdiam")] {
        v.push(in_logic(Rule(rule), LogicId::mk(), |b| {
            let pr = b.premise(Formula::imp(p(), q()));
            let np = b.nec(pr);
            let k = b.axiom(ax, &[("A", &p()), ("B", &q())]);
            b.mp(np, k);
        }));
    }
    // MK presented as MMC + Nbox derives Kbox and Nec.
    let mmcn = Axiomatization {
        axioms: super::MPL_AXIOMS
            .iter()
            .chain(["Cbox", "Kdiam", "Nbox"].iter())
            .map(|n| schema(n).expect("schema"))
            .collect(),
        rules: vec![RuleName::Mp, RuleName::MonBox, RuleName::MonDia],
    };
    v.push(in_custom(Axiom("Kbox"), "MMC + Nbox", mmcn.clone(), kbox_from_cbox));
    v.push(in_custom(Rule(RuleName::Nec), "MMC + Nbox", mmcn, nec_from_nbox));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logics::{registry_edges, rules_of, Family};

    #[test]
    fn every_witness_checks_at_home() {
        for w in witnesses() {
            let r = w.check();
            assert!(r.accepted, "{:?} in {}: {:?}", w.derives, w.home, r);
        }
    }

    #[test]
    fn mk_figure_derivation_accepted_and_tbox_refused() {
        let w = witnesses()
            .into_iter()
            .find(|w| w.derives == Derivable::Axiom("Cbox") && w.home == "MK")
            .unwrap();
        assert!(w.check_in_logic(LogicId::mk()).accepted);
        // Without Kbox the same lines are not a derivation.
        assert!(!w.check_in_logic(LogicId::minimal(Sigma::C)).accepted);
    }

    #[test]
    fn d_and_pbox_interderivable_given_cbox() {
        let all = witnesses();
        let d = all.iter().find(|w| w.derives == Derivable::Axiom("D") && w.home == "MC + Pbox").unwrap();
        assert!(d.check().accepted);
        let pb = all.iter().find(|w| w.derives == Derivable::Axiom("Pbox") && w.home == "MCD").unwrap();
        assert!(pb.check().accepted);
    }

    // Along every inclusion edge, each axiom and rule of the smaller system is
    // either primitive in the larger one or derivable there by a witness.
    #[test]
    fn edges_are_witnessed() {
        let all = witnesses();
        for (l1, l2) in registry_edges() {
            let a2 = axiomatization(l2).unwrap();
            for a in axiomatization(l1).unwrap().axioms {
                if a2.has_axiom(a.name) {
                    continue;
                }
                let ok = all
                    .iter()
                    .filter(|w| w.derives == Derivable::Axiom(a.name))
                    .any(|w| w.check_in(&a2).accepted);
                assert!(ok, "{} of {l1} not derivable in {l2}", a.name);
            }
            for r in rules_of(l1).unwrap() {
                if a2.has_rule(r.name) {
                    continue;
                }
                let ok = all
                    .iter()
                    .filter(|w| w.derives == Derivable::Rule(r.name))
                    .any(|w| w.check_in(&a2).accepted);
                assert!(ok, "rule {} of {l1} not derivable in {l2}", r.name.name());
            }
        }
        assert!(registry_edges().iter().any(|(a, _)| a.family == Family::Wijesekera));
    }
}

//! Shared-subformula evaluation: a corpus of formulas is hash-consed into one
//! node table, and a model is evaluated by computing each node's extension
//! once, children first.

use std::collections::HashMap;

use super::{bit, Model, ModelKind, SemanticsError};
use crate::formula::{BiFormula, Formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Op {
    Atom(usize),
    Bot,
    And(usize, usize),
    Or(usize, usize),
    Imp(usize, usize),
    Box(usize),
    Dia(usize),
    Box1(usize),
    Dia1(usize),
    Box2(usize),
    Dia2(usize),
}

/// Node table over formulas of one language (`Formula` or `BiFormula`).
#[derive(Debug, Clone)]
pub struct FormulaTable<F> {
    ops: Vec<Op>,
    ids: HashMap<Op, usize>,
    memo: HashMap<F, usize>,
    atoms: Vec<String>,
}

impl<F> Default for FormulaTable<F> {
    fn default() -> Self {
        FormulaTable { ops: Vec::new(), ids: HashMap::new(), memo: HashMap::new(), atoms: Vec::new() }
    }
}

impl<F> FormulaTable<F> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of distinct subformulas inserted so far.
    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    fn node(&mut self, op: Op) -> usize {
        if let Some(&i) = self.ids.get(&op) {
            return i;
        }
        self.ops.push(op);
        self.ids.insert(op, self.ops.len() - 1);
        self.ops.len() - 1
    }

    fn atom(&mut self, p: &str) -> usize {
        let i = match self.atoms.iter().position(|a| a == p) {
            Some(i) => i,
            None => {
                self.atoms.push(p.to_string());
                self.atoms.len() - 1
            }
        };
        self.node(Op::Atom(i))
    }

    fn check(&self, m: &Model, fusion: bool) -> Result<Vec<u64>, SemanticsError> {
        if m.kind.is_fusion() != fusion {
            return Err(SemanticsError::Language(if fusion { "bimodal" } else { "monomodal" }, m.kind));
        }
        if m.kind == ModelKind::Relational && self.ops.iter().any(|o| matches!(o, Op::Box(_) | Op::Dia(_))) {
            return Err(SemanticsError::Language("modal", m.kind));
        }
        self.atoms.iter().map(|p| m.atom(p)).collect()
    }

    /// Extensions of every node in `m`, indexed by node id.
    fn run(&self, m: &Model, fusion: bool) -> Result<Vec<u64>, SemanticsError> {
        let atoms = self.check(m, fusion)?;
        let all = m.all();
        let mut ext: Vec<u64> = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let e = match *op {
                Op::Atom(i) => atoms[i],
                Op::Bot => {
                    if fusion {
                        0
                    } else {
                        m.fallible
                    }
                }
                Op::And(a, b) => ext[a] & ext[b],
                Op::Or(a, b) => ext[a] | ext[b],
                Op::Imp(a, b) => {
                    let s = (!ext[a] | ext[b]) & all;
                    if fusion {
                        s
                    } else {
                        m.up_closed_part(s)
                    }
                }
                Op::Box(a) => m.up_closed_part(m.pre_box(ext[a])),
                Op::Dia(a) => m.up_closed_part(m.pre_dia(ext[a])),
                Op::Box1(a) => m.up_closed_part(ext[a]),
                Op::Dia1(a) => {
                    let s = ext[a];
                    m.leq.iter().enumerate().filter(|(_, r)| **r & s != 0).fold(0, |x, (w, _)| x | bit(w))
                }
                Op::Box2(a) => m.pre_box(ext[a]),
                Op::Dia2(a) => m.pre_dia(ext[a]),
            };
            ext.push(e);
        }
        Ok(ext)
    }
}

impl FormulaTable<Formula> {
    /// Inserts `f` and all its subformulas; returns the node id of `f`.
    pub fn insert(&mut self, f: &Formula) -> usize {
        if let Some(&i) = self.memo.get(f) {
            return i;
        }
        let op = match f {
            Formula::Atom(p) => {
                let i = self.atom(p);
                self.memo.insert(f.clone(), i);
                return i;
            }
            Formula::Bottom => Op::Bot,
            Formula::And(a, b) => Op::And(self.insert(a), self.insert(b)),
            Formula::Or(a, b) => Op::Or(self.insert(a), self.insert(b)),
            Formula::Imp(a, b) => Op::Imp(self.insert(a), self.insert(b)),
            Formula::Box(a) => Op::Box(self.insert(a)),
            Formula::Dia(a) => Op::Dia(self.insert(a)),
        };
        let i = self.node(op);
        self.memo.insert(f.clone(), i);
        i
    }

    pub fn extensions(&self, m: &Model) -> Result<Vec<u64>, SemanticsError> {
        self.run(m, false)
    }
}

impl FormulaTable<BiFormula> {
    pub fn insert(&mut self, f: &BiFormula) -> usize {
        if let Some(&i) = self.memo.get(f) {
            return i;
        }
        let op = match f {
            BiFormula::Atom(p) => {
                let i = self.atom(p);
                self.memo.insert(f.clone(), i);
                return i;
            }
            BiFormula::Bottom => Op::Bot,
            BiFormula::And(a, b) => Op::And(self.insert(a), self.insert(b)),
            BiFormula::Or(a, b) => Op::Or(self.insert(a), self.insert(b)),
            BiFormula::Imp(a, b) => Op::Imp(self.insert(a), self.insert(b)),
            BiFormula::Box1(a) => Op::Box1(self.insert(a)),
            BiFormula::Dia1(a) => Op::Dia1(self.insert(a)),
            BiFormula::Box2(a) => Op::Box2(self.insert(a)),
            BiFormula::Dia2(a) => Op::Dia2(self.insert(a)),
        };
        let i = self.node(op);
        self.memo.insert(f.clone(), i);
        i
    }

    pub fn extensions(&self, m: &Model) -> Result<Vec<u64>, SemanticsError> {
        self.run(m, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{enumerate_formulas, parse};
    use crate::semantics::{enumerate_models, random_model, ClassSpec, Evaluable};
    use crate::translation::goedel_johansson;
    use crate::logics::LogicId;

    #[test]
    fn agrees_with_direct_evaluation() {
        let fs = enumerate_formulas(&["p"], 3, 2);
        let mut t = FormulaTable::<Formula>::new();
        let ids: Vec<usize> = fs.iter().map(|f| t.insert(f)).collect();
        let mut bt = FormulaTable::<BiFormula>::new();
        let trs: Vec<BiFormula> = fs.iter().map(goedel_johansson).collect();
        let bids: Vec<usize> = trs.iter().map(|f| bt.insert(f)).collect();
        assert!(t.len() <= fs.len() + 1);
        let spec = ClassSpec::default_for(LogicId::mk()).unwrap();
        let fusion = ClassSpec::fusion(LogicId::mk()).unwrap();
        for (k, m) in enumerate_models(&spec, 2, &["p"]).unwrap().take(300).enumerate() {
            let e = t.extensions(&m).unwrap();
            for (f, &i) in fs.iter().zip(&ids) {
                assert_eq!(e[i], f.extension(&m).unwrap(), "{f}");
            }
            let fm = random_model(&fusion, 3, &["p", "f"], k as u64).unwrap();
            let e = bt.extensions(&fm).unwrap();
            for (f, &i) in trs.iter().zip(&bids) {
                assert_eq!(e[i], f.extension(&fm).unwrap());
            }
        }
    }

    #[test]
    fn language_mismatch() {
        let mut t = FormulaTable::<Formula>::new();
        t.insert(&parse("box p").unwrap());
        let fusion = ClassSpec::fusion(LogicId::mk()).unwrap();
        let fm = random_model(&fusion, 2, &["p", "f"], 1).unwrap();
        assert!(t.extensions(&fm).is_err());
        let mut u = FormulaTable::<Formula>::new();
        u.insert(&parse("q").unwrap());
        let m = random_model(&ClassSpec::default_for(LogicId::mk()).unwrap(), 2, &["p"], 1).unwrap();
        assert!(matches!(u.extensions(&m), Err(SemanticsError::UnknownAtom(_))));
    }
}

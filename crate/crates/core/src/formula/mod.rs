//! Formulas of the monomodal language and of the bimodal companion language.
//!
//! Derived connectives are expanded when a formula is built, so the stored
//! tree only ever contains the primitive constructors.

mod gen;
mod parse;
mod print;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

pub use gen::{count_formulas, enumerate_formulas, random_formula, FormulaGen};
pub use parse::{parse, parse_bi, ParseError, ParseErrorKind};

/// Name of the constant the translation adds to the bimodal language.
pub const RESERVED_ATOM: &str = "f";

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Formula {
    Atom(Arc<str>),
    Bottom,
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
    Box(Arc<Formula>),
    Dia(Arc<Formula>),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum BiFormula {
    Atom(Arc<str>),
    Bottom,
    And(Arc<BiFormula>, Arc<BiFormula>),
    Or(Arc<BiFormula>, Arc<BiFormula>),
    Imp(Arc<BiFormula>, Arc<BiFormula>),
    Box1(Arc<BiFormula>),
    Dia1(Arc<BiFormula>),
    Box2(Arc<BiFormula>),
    Dia2(Arc<BiFormula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Arc::from(name))
    }

    pub fn bot() -> Formula {
        Formula::Bottom
    }

    /// `top` is `bot -> bot`.
    pub fn top() -> Formula {
        Formula::imp(Formula::Bottom, Formula::Bottom)
    }

    /// `~a` is `a -> bot`.
    pub fn not(a: Formula) -> Formula {
        Formula::imp(a, Formula::Bottom)
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    /// `a <-> b` is `(a -> b) & (b -> a)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    pub fn boxed(a: Formula) -> Formula {
        Formula::Box(Arc::new(a))
    }

    pub fn dia(a: Formula) -> Formula {
        Formula::Dia(Arc::new(a))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    /// c(p) = c(bot) = 1, binary connectives add one to the sum, modalities add one.
    pub fn complexity(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bottom => 1,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.complexity() + b.complexity() + 1
            }
            Formula::Box(a) | Formula::Dia(a) => a.complexity() + 1,
        }
    }

    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bottom => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.modal_depth().max(b.modal_depth())
            }
            Formula::Box(a) | Formula::Dia(a) => a.modal_depth() + 1,
        }
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bottom => 1,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => a.size() + b.size() + 1,
            Formula::Box(a) | Formula::Dia(a) => a.size() + 1,
        }
    }

    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        if !out.insert(self.clone()) {
            return;
        }
        match self {
            Formula::Atom(_) | Formula::Bottom => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_subformulas(out);
                b.collect_subformulas(out);
            }
            Formula::Box(a) | Formula::Dia(a) => a.collect_subformulas(out),
        }
    }

    pub fn atoms(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Atom(p) => {
                out.insert(p.clone());
            }
            Formula::Bottom => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::Box(a) | Formula::Dia(a) => a.collect_atoms(out),
        }
    }

    pub fn contains_bottom(&self) -> bool {
        match self {
            Formula::Atom(_) => false,
            Formula::Bottom => true,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.contains_bottom() || b.contains_bottom()
            }
            Formula::Box(a) | Formula::Dia(a) => a.contains_bottom(),
        }
    }

    /// Body of a boxed formula.
    pub fn box_body(&self) -> Option<&Formula> {
        match self {
            Formula::Box(a) => Some(a),
            _ => None,
        }
    }

    /// Body of a diamond formula.
    pub fn dia_body(&self) -> Option<&Formula> {
        match self {
            Formula::Dia(a) => Some(a),
            _ => None,
        }
    }

    /// Conjunction folded to the right; `None` for an empty slice.
    pub fn conj_all(fs: &[Formula]) -> Option<Formula> {
        let (last, init) = fs.split_last()?;
        Some(
            init.iter()
                .rev()
                .fold(last.clone(), |acc, f| Formula::and(f.clone(), acc)),
        )
    }

    /// Disjunction folded to the right; `None` for an empty slice.
    pub fn disj_all(fs: &[Formula]) -> Option<Formula> {
        let (last, init) = fs.split_last()?;
        Some(
            init.iter()
                .rev()
                .fold(last.clone(), |acc, f| Formula::or(f.clone(), acc)),
        )
    }
}

impl BiFormula {
    pub fn atom(name: &str) -> BiFormula {
        BiFormula::Atom(Arc::from(name))
    }

    /// The reserved constant of the companion language.
    pub fn f() -> BiFormula {
        BiFormula::atom(RESERVED_ATOM)
    }

    pub fn top() -> BiFormula {
        BiFormula::imp(BiFormula::Bottom, BiFormula::Bottom)
    }

    pub fn not(a: BiFormula) -> BiFormula {
        BiFormula::imp(a, BiFormula::Bottom)
    }

    pub fn and(a: BiFormula, b: BiFormula) -> BiFormula {
        BiFormula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: BiFormula, b: BiFormula) -> BiFormula {
        BiFormula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn imp(a: BiFormula, b: BiFormula) -> BiFormula {
        BiFormula::Imp(Arc::new(a), Arc::new(b))
    }

    pub fn iff(a: BiFormula, b: BiFormula) -> BiFormula {
        BiFormula::and(BiFormula::imp(a.clone(), b.clone()), BiFormula::imp(b, a))
    }

    pub fn box1(a: BiFormula) -> BiFormula {
        BiFormula::Box1(Arc::new(a))
    }

    pub fn dia1(a: BiFormula) -> BiFormula {
        BiFormula::Dia1(Arc::new(a))
    }

    pub fn box2(a: BiFormula) -> BiFormula {
        BiFormula::Box2(Arc::new(a))
    }

    pub fn dia2(a: BiFormula) -> BiFormula {
        BiFormula::Dia2(Arc::new(a))
    }

    pub fn size(&self) -> usize {
        match self {
            BiFormula::Atom(_) | BiFormula::Bottom => 1,
            BiFormula::And(a, b) | BiFormula::Or(a, b) | BiFormula::Imp(a, b) => {
                a.size() + b.size() + 1
            }
            BiFormula::Box1(a) | BiFormula::Dia1(a) | BiFormula::Box2(a) | BiFormula::Dia2(a) => {
                a.size() + 1
            }
        }
    }

    /// Nesting depth of the first pair of modalities.
    pub fn modal_depth1(&self) -> usize {
        match self {
            BiFormula::Atom(_) | BiFormula::Bottom => 0,
            BiFormula::And(a, b) | BiFormula::Or(a, b) | BiFormula::Imp(a, b) => {
                a.modal_depth1().max(b.modal_depth1())
            }
            BiFormula::Box1(a) | BiFormula::Dia1(a) => a.modal_depth1() + 1,
            BiFormula::Box2(a) | BiFormula::Dia2(a) => a.modal_depth1(),
        }
    }

    pub fn subformulas(&self) -> BTreeSet<BiFormula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas(&self, out: &mut BTreeSet<BiFormula>) {
        if !out.insert(self.clone()) {
            return;
        }
        match self {
            BiFormula::Atom(_) | BiFormula::Bottom => {}
            BiFormula::And(a, b) | BiFormula::Or(a, b) | BiFormula::Imp(a, b) => {
                a.collect_subformulas(out);
                b.collect_subformulas(out);
            }
            BiFormula::Box1(a) | BiFormula::Dia1(a) | BiFormula::Box2(a) | BiFormula::Dia2(a) => {
                a.collect_subformulas(out)
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<Arc<str>> {
        self.subformulas()
            .into_iter()
            .filter_map(|f| match f {
                BiFormula::Atom(p) => Some(p),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print(self))
    }
}

impl fmt::Display for BiFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print_bi(self))
    }
}

/// ASCII rendering with minimal parentheses.
pub fn print(f: &Formula) -> String {
    print::print(f)
}

pub fn print_bi(f: &BiFormula) -> String {
    print::print_bi(f)
}

// Formulas serialize as their printed text.
impl serde::Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&print::print(self))
    }
}

impl<'de> serde::Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Formula, D::Error> {
        let text = <String as serde::Deserialize>::deserialize(d)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

impl serde::Serialize for BiFormula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&print::print_bi(self))
    }
}

impl<'de> serde::Deserialize<'de> for BiFormula {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<BiFormula, D::Error> {
        let text = <String as serde::Deserialize>::deserialize(d)?;
        parse_bi(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }
    fn q() -> Formula {
        Formula::atom("q")
    }

    #[test]
    fn complexity_clauses() {
        assert_eq!(Formula::Bottom.complexity(), 1);
        assert_eq!(Formula::imp(p(), q()).complexity(), 3);
        assert_eq!(Formula::boxed(Formula::imp(p(), Formula::Bottom)).complexity(), 4);
        assert_eq!(Formula::boxed(Formula::dia(p())).complexity(), 3);
    }

    #[test]
    fn depth() {
        assert_eq!(p().modal_depth(), 0);
        assert_eq!(Formula::boxed(p()).modal_depth(), 1);
        assert_eq!(Formula::boxed(Formula::dia(p())).modal_depth(), 2);
        assert_eq!(
            Formula::and(Formula::boxed(p()), Formula::dia(Formula::dia(q()))).modal_depth(),
            2
        );
    }

    #[test]
    fn subformula_sets() {
        let s: Vec<_> = p().subformulas().into_iter().collect();
        assert_eq!(s, vec![p()]);
        let f = Formula::imp(p(), Formula::Bottom);
        let expect: BTreeSet<_> = [p(), Formula::Bottom, f.clone()].into_iter().collect();
        assert_eq!(f.subformulas(), expect);
        let g = Formula::and(Formula::boxed(p()), q());
        let expect: BTreeSet<_> = [p(), Formula::boxed(p()), q(), g.clone()].into_iter().collect();
        assert_eq!(g.subformulas(), expect);
    }

    #[test]
    fn sugar_is_expanded() {
        assert_eq!(Formula::top(), Formula::imp(Formula::Bottom, Formula::Bottom));
        assert_eq!(Formula::not(p()), Formula::imp(p(), Formula::Bottom));
        assert_eq!(
            Formula::iff(p(), q()),
            Formula::and(Formula::imp(p(), q()), Formula::imp(q(), p()))
        );
    }

    #[test]
    fn folds_are_right_associated() {
        let c = Formula::conj_all(&[p(), q(), Formula::Bottom]).unwrap();
        assert_eq!(c, Formula::and(p(), Formula::and(q(), Formula::Bottom)));
        assert!(Formula::disj_all(&[]).is_none());
    }
}

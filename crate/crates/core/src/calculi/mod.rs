//! G1 sequent calculi: rule tables for every calculus, derivation trees, an
//! exact node-by-node checker and the text/JSON derivation formats.

mod check;
mod sequent;
mod text;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::logics::{Family, LogicId, PropBase, Sigma};

pub use check::{check_derivation, check_derivation_with, check_node, CheckOptions, DerivationReport};
pub use sequent::{formula_interpretation, Pos, Sequent, Side};
pub use text::{parse_derivation_text, print_derivation_text};

pub(crate) use check::{local_premises, modal_premise_of};
pub(crate) use sequent::{ms_eq, ms_minus, ms_plus};

/// How many succedent formulas sequents may carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// Arbitrary succedents.
    Classical,
    /// At most one formula.
    Intuitionistic,
    /// Exactly one formula.
    Minimal,
}

impl Regime {
    pub fn admits(self, s: &Sequent) -> bool {
        match self {
            Regime::Classical => true,
            Regime::Intuitionistic => s.succ.len() <= 1,
            Regime::Minimal => s.succ.len() == 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CalculusId {
    G1Cpl,
    G1Mpl,
    G1Ipl,
    /// G1L for a classical logic L.
    Classical(Sigma),
    /// G1ML for a minimal logic ML.
    Minimal(Sigma),
    /// G1CL for a constructive logic CL.
    Constructive(Sigma),
    G1Wk,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error("unknown calculus {0:?}")]
    Unknown(String),
    #[error("no sequent calculus is implemented for {0}")]
    NoCalculus(String),
}

impl CalculusId {
    pub fn name(&self) -> String {
        match self {
            CalculusId::G1Cpl => "G1CPL".into(),
            CalculusId::G1Mpl => "G1MPL".into(),
            CalculusId::G1Ipl => "G1IPL".into(),
            CalculusId::Classical(s) => format!("G1{}", LogicId::classical(*s).name()),
            CalculusId::Minimal(s) => format!("G1{}", LogicId::minimal(*s).name()),
            CalculusId::Constructive(s) => format!("G1{}", LogicId::constructive(*s).name()),
            CalculusId::G1Wk => "G1WK".into(),
        }
    }

    pub fn all() -> Vec<CalculusId> {
        let mut v = vec![CalculusId::G1Cpl, CalculusId::G1Mpl, CalculusId::G1Ipl, CalculusId::G1Wk];
        for s in Sigma::admissible() {
            v.push(CalculusId::Classical(s));
            v.push(CalculusId::Minimal(s));
            v.push(CalculusId::Constructive(s));
        }
        v
    }

    pub fn regime(&self) -> Regime {
        match self {
            CalculusId::G1Cpl | CalculusId::Classical(_) => Regime::Classical,
            CalculusId::G1Mpl | CalculusId::Minimal(_) => Regime::Minimal,
            CalculusId::G1Ipl | CalculusId::Constructive(_) | CalculusId::G1Wk => Regime::Intuitionistic,
        }
    }

    pub fn sigma(&self) -> Option<Sigma> {
        match self {
            CalculusId::Classical(s) | CalculusId::Minimal(s) | CalculusId::Constructive(s) => Some(*s),
            CalculusId::G1Wk => Some(Sigma::K),
            _ => None,
        }
    }

    pub fn is_modal(&self) -> bool {
        self.sigma().is_some()
    }

    /// The calculus of a logic, if one is implemented.
    pub fn for_logic(l: LogicId) -> Result<CalculusId, CalculusError> {
        Ok(match l.family {
            Family::PropBase => match l.base {
                Some(PropBase::Mpl) | None => CalculusId::G1Mpl,
                Some(PropBase::Ipl) => CalculusId::G1Ipl,
                Some(PropBase::Cpl) => CalculusId::G1Cpl,
            },
            Family::Classical => CalculusId::Classical(l.sigma),
            Family::Minimal => CalculusId::Minimal(l.sigma),
            Family::Constructive => CalculusId::Constructive(l.sigma),
            Family::Wijesekera if l.sigma == Sigma::K => CalculusId::G1Wk,
            Family::Wijesekera => return Err(CalculusError::NoCalculus(l.name())),
        })
    }

    pub fn logic(&self) -> LogicId {
        match self {
            CalculusId::G1Cpl => LogicId::prop(PropBase::Cpl),
            CalculusId::G1Mpl => LogicId::prop(PropBase::Mpl),
            CalculusId::G1Ipl => LogicId::prop(PropBase::Ipl),
            CalculusId::Classical(s) => LogicId::classical(*s),
            CalculusId::Minimal(s) => LogicId::minimal(*s),
            CalculusId::Constructive(s) => LogicId::constructive(*s),
            CalculusId::G1Wk => LogicId::wk(),
        }
    }

    pub fn has_rule(&self, r: Rule) -> bool {
        rules_for(*self).contains(&r)
    }
}

impl fmt::Display for CalculusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for CalculusId {
    type Err = CalculusError;

    /// Accepts calculus names (`G1MK`) as well as logic names (`MK`).
    fn from_str(s: &str) -> Result<CalculusId, CalculusError> {
        let t = s.trim();
        if let Some(c) = CalculusId::all().into_iter().find(|c| c.name().eq_ignore_ascii_case(t)) {
            return Ok(c);
        }
        let l: LogicId = t.parse().map_err(|_| CalculusError::Unknown(s.to_string()))?;
        CalculusId::for_logic(l)
    }
}

macro_rules! rules {
    ($($v:ident => $s:literal),* $(,)?) => {
        /// Rule names of all calculi. Classical modal rules carry capitalised
        /// names, their single-succedent versions an `m` prefix.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Rule { $($v),* }

        impl Rule {
            pub const ALL: &'static [Rule] = &[$(Rule::$v),*];

            pub fn name(self) -> &'static str {
                match self { $(Rule::$v => $s),* }
            }

            pub fn from_name(s: &str) -> Option<Rule> {
                match s { $($s => Some(Rule::$v),)* _ => None }
            }
        }
    };
}

rules! {
    Init => "init", LBot => "lbot",
    LAnd1 => "land1", LAnd2 => "land2", RAnd => "rand",
    LOr => "lor", ROr1 => "ror1", ROr2 => "ror2",
    LImp => "limp", RImp => "rimp",
    LWk => "lwk", RWk => "rwk", LCtr => "lctr", RCtr => "rctr",
    MBox => "Mbox", MDia => "Mdia", MncM => "mncM", MemM => "memM",
    CBox => "Cbox", CDia => "Cdia", MncC => "mncC", MemC => "memC",
    NBox => "Nbox", NDia => "Ndia", KBox => "Kbox", KDia => "Kdia",
    PBox => "Pbox", PDia => "Pdia", D => "D", DBox => "Dbox", DDia => "Ddia",
    CD => "CD", TBox => "Tbox", TDia => "Tdia",
    MMBox => "mMbox", MMDia => "mMdia", MNBox => "mNbox", MCBox => "mCbox",
    MKBox => "mKbox", MKDia => "mKdia", MPDia => "mPdia", MD => "mD", MCD => "mCD",
    MTBox => "mTbox", MTDia => "mTdia", ITBox => "iTbox", WKDia => "wKdia",
    Mix => "mix",
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Rule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Rule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Rule, D::Error> {
        let t = String::deserialize(d)?;
        Rule::from_name(&t).ok_or_else(|| serde::de::Error::custom(format!("unknown rule {t:?}")))
    }
}

impl Rule {
    pub fn is_structural(self) -> bool {
        matches!(self, Rule::LWk | Rule::RWk | Rule::LCtr | Rule::RCtr)
    }

    /// Rules whose conclusion consists of principal formulas only.
    pub fn is_modal_transition(self) -> bool {
        use Rule::*;
        matches!(
            self,
            MBox | MDia | MncM | MemM | CBox | CDia | MncC | MemC | NBox | NDia | KBox | KDia | PBox
                | PDia | D | DBox | DDia | CD | MMBox | MMDia | MNBox | MCBox | MKBox | MKDia
                | MPDia | MD | MCD | WKDia
        )
    }

    pub fn is_local_modal(self) -> bool {
        matches!(self, Rule::TBox | Rule::TDia | Rule::MTBox | Rule::MTDia | Rule::ITBox)
    }
}

/// A sequent-rule schema in display form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleSchema {
    pub rule: Rule,
    pub premises: Vec<&'static str>,
    pub conclusion: &'static str,
}

impl fmt::Display for RuleSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.premises.is_empty() {
            write!(f, "{}: {}", self.rule, self.conclusion)
        } else {
            write!(f, "{}: {} / {}", self.rule, self.premises.join("  ;  "), self.conclusion)
        }
    }
}

impl RuleSchema {
    /// Range of succedent sizes of each sequent of the schema (premises first).
    pub fn succedent_ranges(&self) -> Vec<(usize, Option<usize>)> {
        self.premises.iter().chain(std::iter::once(&self.conclusion)).map(|t| succ_range(t)).collect()
    }
}

fn succ_range(template: &str) -> (usize, Option<usize>) {
    let succ = template.split('⇒').nth(1).unwrap_or("");
    let mut lo = 0;
    let mut hi = Some(0);
    for tok in succ.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (a, b) = match tok {
            "Γ" | "Δ" | "Σ" | "Π" | "◇Π" | "□Σ" => (0, None),
            "δ" => (0, Some(1)),
            _ => (1, Some(1)),
        };
        lo += a;
        hi = match (hi, b) {
            (Some(x), Some(y)) => Some(x + y),
            _ => None,
        };
    }
    (lo, hi)
}

/// Display schema of a rule under a regime.
pub fn schema_of(rule: Rule, regime: Regime) -> RuleSchema {
    use Regime::*;
    use Rule::*;
    let ctx = match regime {
        Classical => 0,
        Minimal => 1,
        Intuitionistic => 2,
    };
    let pick = |c: &'static str, m: &'static str, i: &'static str| [c, m, i][ctx];
    let (premises, conclusion): (Vec<&'static str>, &'static str) = match rule {
        Init => (vec![], "A ⇒ A"),
        LBot => (vec![], "⊥ ⇒"),
        LAnd1 => (vec![pick("Γ, A ⇒ Δ", "Γ, A ⇒ C", "Γ, A ⇒ δ")], pick("Γ, A∧B ⇒ Δ", "Γ, A∧B ⇒ C", "Γ, A∧B ⇒ δ")),
        LAnd2 => (vec![pick("Γ, B ⇒ Δ", "Γ, B ⇒ C", "Γ, B ⇒ δ")], pick("Γ, A∧B ⇒ Δ", "Γ, A∧B ⇒ C", "Γ, A∧B ⇒ δ")),
        RAnd => (vec![pick("Γ ⇒ A, Δ", "Γ ⇒ A", "Γ ⇒ A"), pick("Γ ⇒ B, Δ", "Γ ⇒ B", "Γ ⇒ B")], pick("Γ ⇒ A∧B, Δ", "Γ ⇒ A∧B", "Γ ⇒ A∧B")),
        LOr => (
            vec![pick("Γ, A ⇒ Δ", "Γ, A ⇒ C", "Γ, A ⇒ δ"), pick("Γ, B ⇒ Δ", "Γ, B ⇒ C", "Γ, B ⇒ δ")],
            pick("Γ, A∨B ⇒ Δ", "Γ, A∨B ⇒ C", "Γ, A∨B ⇒ δ"),
        ),
        ROr1 => (vec![pick("Γ ⇒ A, Δ", "Γ ⇒ A", "Γ ⇒ A")], pick("Γ ⇒ A∨B, Δ", "Γ ⇒ A∨B", "Γ ⇒ A∨B")),
        ROr2 => (vec![pick("Γ ⇒ B, Δ", "Γ ⇒ B", "Γ ⇒ B")], pick("Γ ⇒ A∨B, Δ", "Γ ⇒ A∨B", "Γ ⇒ A∨B")),
        LImp => (
            vec![pick("Γ ⇒ A, Δ", "Γ ⇒ A", "Γ ⇒ A"), pick("Γ, B ⇒ Δ", "Γ, B ⇒ C", "Γ, B ⇒ δ")],
            pick("Γ, A→B ⇒ Δ", "Γ, A→B ⇒ C", "Γ, A→B ⇒ δ"),
        ),
        RImp => (vec![pick("Γ, A ⇒ B, Δ", "Γ, A ⇒ B", "Γ, A ⇒ B")], pick("Γ ⇒ A→B, Δ", "Γ ⇒ A→B", "Γ ⇒ A→B")),
        LWk => (vec![pick("Γ ⇒ Δ", "Γ ⇒ C", "Γ ⇒ δ")], pick("Γ, A ⇒ Δ", "Γ, A ⇒ C", "Γ, A ⇒ δ")),
        RWk => (vec![pick("Γ ⇒ Δ", "Γ ⇒ Δ", "Γ ⇒")], pick("Γ ⇒ A, Δ", "Γ ⇒ A, Δ", "Γ ⇒ A")),
        LCtr => (vec![pick("Γ, A, A ⇒ Δ", "Γ, A, A ⇒ C", "Γ, A, A ⇒ δ")], pick("Γ, A ⇒ Δ", "Γ, A ⇒ C", "Γ, A ⇒ δ")),
        RCtr => (vec!["Γ ⇒ A, A, Δ"], "Γ ⇒ A, Δ"),
        MBox => (vec!["A ⇒ B"], "□A ⇒ □B"),
        MDia => (vec!["A ⇒ B"], "◇A ⇒ ◇B"),
        MncM => (vec!["A, B ⇒"], "□A, ◇B ⇒"),
        MemM => (vec!["⇒ A, B"], "⇒ □A, ◇B"),
        CBox => (vec!["Σ, A ⇒ B, Π"], "□Σ, □A ⇒ □B, ◇Π"),
        CDia => (vec!["Σ, A ⇒ B, Π"], "□Σ, ◇A ⇒ ◇B, ◇Π"),
        MncC => (vec!["Σ, A, B ⇒"], "□Σ, □A, ◇B ⇒"),
        MemC => (vec!["⇒ A, B, Π"], "⇒ □A, ◇B, ◇Π"),
        NBox => (vec!["⇒ A"], "⇒ □A"),
        NDia => (vec!["A ⇒"], "◇A ⇒"),
        KBox => (vec!["Σ ⇒ A, Π"], "□Σ ⇒ □A, ◇Π"),
        KDia => (vec!["Σ, A ⇒ Π"], "□Σ, ◇A ⇒ ◇Π"),
        PBox => (vec!["A ⇒"], "□A ⇒"),
        PDia => (vec!["⇒ A"], "⇒ ◇A"),
        D => (vec!["A ⇒ B"], "□A ⇒ ◇B"),
        DBox => (vec!["A, B ⇒"], "□A, □B ⇒"),
        DDia => (vec!["⇒ A, B"], "⇒ ◇A, ◇B"),
        CD => (vec!["Σ ⇒ Π"], "□Σ ⇒ ◇Π"),
        TBox => (vec!["Γ, A ⇒ Δ"], "Γ, □A ⇒ Δ"),
        TDia => (vec!["Γ ⇒ A, Δ"], "Γ ⇒ ◇A, Δ"),
        MMBox => (vec!["A ⇒ B"], "□A ⇒ □B"),
        MMDia => (vec!["A ⇒ B"], "◇A ⇒ ◇B"),
        MNBox => (vec!["⇒ A"], "⇒ □A"),
        MCBox => (vec!["Σ, A ⇒ B"], "□Σ, □A ⇒ □B"),
        MKBox => (vec!["Σ ⇒ A"], "□Σ ⇒ □A"),
        MKDia => (vec!["Σ, A ⇒ B"], "□Σ, ◇A ⇒ ◇B"),
        MPDia => (vec!["⇒ A"], "⇒ ◇A"),
        MD => (vec!["A ⇒ B"], "□A ⇒ ◇B"),
        MCD => (vec!["Σ ⇒ A"], "□Σ ⇒ ◇A"),
        MTBox => (vec!["Γ, A ⇒ C"], "Γ, □A ⇒ C"),
        MTDia => (vec!["Γ ⇒ A"], "Γ ⇒ ◇A"),
        ITBox => (vec!["Γ, A ⇒ δ"], "Γ, □A ⇒ δ"),
        WKDia => (vec!["Σ, A ⇒"], "□Σ, ◇A ⇒"),
        Mix => (vec![pick("Γ ⇒ A", "Γ ⇒ A", "Γ ⇒ A"), pick("Σ, Aⁿ ⇒ C", "Σ, Aⁿ ⇒ C", "Σ, Aⁿ ⇒ δ")], pick("Γ, Σ ⇒ C", "Γ, Σ ⇒ C", "Γ, Σ ⇒ δ")),
    };
    RuleSchema { rule, premises, conclusion }
}

fn propositional(regime: Regime) -> Vec<Rule> {
    use Rule::*;
    let mut v = vec![Init, LAnd1, LAnd2, RAnd, LOr, ROr1, ROr2, LImp, RImp, LWk, LCtr];
    match regime {
        Regime::Classical => v.extend([LBot, RWk, RCtr]),
        Regime::Intuitionistic => v.extend([LBot, RWk]),
        Regime::Minimal => {}
    }
    v
}

fn classical_modal(s: Sigma) -> Vec<Rule> {
    use Rule::*;
    let m = vec![MBox, MDia, MncM, MemM];
    let mc = vec![CBox, CDia, MncC, MemC];
    let k = vec![KBox, KDia];
    let (c, n, p, d, t) = (s.has(Sigma::C), s.has(Sigma::N), s.has(Sigma::P), s.has(Sigma::D), s.has(Sigma::T));
    let mut v = match (c, n) {
        (true, true) => k,
        (true, false) => mc,
        (false, _) => m,
    };
    if n && !c {
        v.extend([NBox, NDia]);
    }
    if p {
        v.extend([PBox, PDia]);
    }
    if d {
        if c {
            v.push(CD);
        } else {
            v.extend([D, DBox, DDia]);
        }
    }
    if t {
        v.extend([TBox, TDia]);
    }
    v
}

fn minimal_modal(s: Sigma) -> Vec<Rule> {
    use Rule::*;
    let (c, n, p, d, t) = (s.has(Sigma::C), s.has(Sigma::N), s.has(Sigma::P), s.has(Sigma::D), s.has(Sigma::T));
    let mut v = match (c, n) {
        (true, true) => vec![MKBox, MKDia],
        (true, false) => vec![MCBox, MKDia],
        (false, _) => vec![MMBox, MMDia],
    };
    if n && !c {
        v.push(MNBox);
    }
    if p {
        v.push(MPDia);
    }
    if d {
        if c {
            v.push(MCD);
        } else {
            v.extend([MD, MPDia]);
        }
    }
    if t {
        v.extend([MTBox, MTDia]);
    }
    v
}

/// The rules of a calculus, propositional rules first.
pub fn rules_for(c: CalculusId) -> Vec<Rule> {
    let mut v = propositional(c.regime());
    match c {
        CalculusId::G1Cpl | CalculusId::G1Mpl | CalculusId::G1Ipl => {}
        CalculusId::Classical(s) => v.extend(classical_modal(s)),
        CalculusId::Minimal(s) => v.extend(minimal_modal(s)),
        CalculusId::Constructive(s) => {
            v.extend(minimal_modal(s).into_iter().map(|r| if r == Rule::MTBox { Rule::ITBox } else { r }))
        }
        CalculusId::G1Wk => v.extend([Rule::MKBox, Rule::MKDia, Rule::WKDia]),
    }
    v
}

pub fn schemas_for(c: CalculusId) -> Vec<RuleSchema> {
    rules_for(c).into_iter().map(|r| schema_of(r, c.regime())).collect()
}

/// For each single-succedent modal rule, the classical rules whose
/// single-succedent instances are exactly its instances.
pub fn restriction_table() -> Vec<(Rule, Vec<Rule>)> {
    use Rule::*;
    vec![
        (MMBox, vec![MBox]),
        (MMDia, vec![MDia]),
        (MNBox, vec![NBox]),
        (MCBox, vec![CBox]),
        (MKBox, vec![KBox]),
        (MKDia, vec![CDia, KDia]),
        (MPDia, vec![PDia]),
        (MD, vec![D]),
        (MCD, vec![CD]),
        (MTBox, vec![TBox]),
        (MTDia, vec![TDia]),
    ]
}

/// A derivation tree. `principal` lists positions in `seq` of the rule's
/// principal formulas.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub seq: Sequent,
    pub rule: Rule,
    #[serde(default)]
    pub principal: Vec<Pos>,
    #[serde(default)]
    pub kids: Vec<Derivation>,
}

impl Derivation {
    pub fn new(rule: Rule, seq: Sequent, principal: Vec<Pos>, kids: Vec<Derivation>) -> Derivation {
        Derivation { seq, rule, principal, kids }
    }

    pub fn leaf(rule: Rule, seq: Sequent) -> Derivation {
        let principal = match rule {
            Rule::Init => vec![Pos::l(0), Pos::r(0)],
            Rule::LBot => vec![Pos::l(0)],
            _ => vec![],
        };
        Derivation { seq, rule, principal, kids: vec![] }
    }

    pub fn init(f: crate::formula::Formula) -> Derivation {
        Derivation::leaf(Rule::Init, Sequent::new(vec![f.clone()], vec![f]))
    }

    /// A modal transition node: every conclusion formula is principal.
    pub fn modal(rule: Rule, seq: Sequent, kid: Derivation) -> Derivation {
        let principal = all_positions(&seq);
        Derivation { seq, rule, principal, kids: vec![kid] }
    }

    /// Number of nodes on the longest branch.
    pub fn height(&self) -> usize {
        1 + self.kids.iter().map(Derivation::height).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.kids.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn contains_rule(&self, r: Rule) -> bool {
        self.rule == r || self.kids.iter().any(|k| k.contains_rule(r))
    }

    pub fn is_mix_free(&self) -> bool {
        !self.contains_rule(Rule::Mix)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("derivations serialize")
    }

    pub fn from_json(s: &str) -> Result<Derivation, serde_json::Error> {
        serde_json::from_str(s)
    }
}

pub(crate) fn all_positions(s: &Sequent) -> Vec<Pos> {
    (0..s.ant.len()).map(Pos::l).chain((0..s.succ.len()).map(Pos::r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_parse() {
        for c in CalculusId::all() {
            assert_eq!(c.name().parse::<CalculusId>().unwrap(), c);
        }
        assert_eq!("MK".parse::<CalculusId>().unwrap(), CalculusId::Minimal(Sigma::K));
        assert_eq!("G1KD".parse::<CalculusId>().unwrap(), CalculusId::Classical(Sigma::K.with(Sigma::D)));
        assert!("WKD".parse::<CalculusId>().is_err());
        for r in Rule::ALL {
            assert_eq!(Rule::from_name(r.name()), Some(*r));
        }
    }

    #[test]
    fn rule_tables() {
        let mk = rules_for(CalculusId::Minimal(Sigma::K));
        assert!(mk.contains(&Rule::MKBox) && mk.contains(&Rule::MKDia));
        assert!(!mk.contains(&Rule::LBot) && !mk.contains(&Rule::RWk));
        let mmd = rules_for(CalculusId::Minimal(Sigma::D));
        for r in [Rule::MMBox, Rule::MMDia, Rule::MD, Rule::MPDia] {
            assert!(mmd.contains(&r));
        }
        let ck = rules_for(CalculusId::Constructive(Sigma::K));
        assert!(ck.contains(&Rule::LBot) && ck.contains(&Rule::RWk) && !ck.contains(&Rule::WKDia));
        assert!(rules_for(CalculusId::G1Wk).contains(&Rule::WKDia));
        let ct = rules_for(CalculusId::Constructive(Sigma::T));
        assert!(ct.contains(&Rule::ITBox) && !ct.contains(&Rule::MTBox));
        let kd = rules_for(CalculusId::Classical(Sigma::K.with(Sigma::D)));
        assert!(kd.contains(&Rule::CD) && kd.contains(&Rule::KBox) && kd.contains(&Rule::RCtr));
        let mnd = rules_for(CalculusId::Classical(Sigma::N.with(Sigma::D)));
        for r in [Rule::MBox, Rule::NBox, Rule::NDia, Rule::D, Rule::DBox, Rule::DDia] {
            assert!(mnd.contains(&r));
        }
    }

    // Every schema of a single-succedent calculus has exactly one succedent
    // formula in each sequent; intuitionistic ones at most one.
    #[test]
    fn single_succedent_restriction_is_syntactic() {
        for c in CalculusId::all() {
            for s in schemas_for(c) {
                for (lo, hi) in s.succedent_ranges() {
                    match c.regime() {
                        Regime::Minimal => assert_eq!((lo, hi), (1, Some(1)), "{c}: {s}"),
                        Regime::Intuitionistic => assert!(hi.is_some_and(|h| h <= 1), "{c}: {s}"),
                        Regime::Classical => {}
                    }
                }
            }
        }
        // The classical K□ schema is genuinely multi-succedent.
        let kb = schema_of(Rule::KBox, Regime::Classical);
        assert_eq!(kb.succedent_ranges()[1], (1, None));
    }
}

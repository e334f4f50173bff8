//! Registry of axiomatic systems: propositional bases, the fourteen classical
//! logics MΣ, their minimal, constructive and Wijesekera-style counterparts,
//! axiom and rule schemata, and the inclusion diagram.

mod hilbert;
mod witness;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{parse, Formula};

pub use hilbert::{
    check_hilbert_derivation, check_hilbert_with, check_local_derivation, local_to_global,
    parse_derivation, print_derivation, HilbertBuilder, HilbertError, HilbertReport,
    Justification, Line, Step, L,
};
pub use witness::{witnesses, Derivable, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    PropBase,
    Minimal,
    Constructive,
    Wijesekera,
    Classical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PropBase {
    Mpl,
    Ipl,
    Cpl,
}

/// A subset of {C, N, P, D, T}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Sigma(u8);

impl Sigma {
    pub const C: Sigma = Sigma(1);
    pub const N: Sigma = Sigma(2);
    pub const P: Sigma = Sigma(4);
    pub const D: Sigma = Sigma(8);
    pub const T: Sigma = Sigma(16);
    pub const EMPTY: Sigma = Sigma(0);
    pub const K: Sigma = Sigma(1 | 2);

    pub fn has(self, x: Sigma) -> bool {
        self.0 & x.0 == x.0
    }

    pub fn with(self, x: Sigma) -> Sigma {
        Sigma(self.0 | x.0)
    }

    pub fn is_subset(self, other: Sigma) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    /// The fourteen admissible axiom sets.
    pub fn admissible() -> [Sigma; 14] {
        let (c, n, p, d, t) = (Sigma::C, Sigma::N, Sigma::P, Sigma::D, Sigma::T);
        [
            Sigma::EMPTY,
            p,
            n,
            n.with(p),
            c,
            c.with(n),
            d,
            t,
            n.with(d),
            n.with(t),
            c.with(d),
            c.with(t),
            c.with(n).with(d),
            c.with(n).with(t),
        ]
    }

    pub fn is_admissible(self) -> bool {
        Sigma::admissible().contains(&self)
    }

    /// Closure under derivability: T yields D, D yields P, and C with P yields D.
    pub fn closure(self) -> Sigma {
        let mut s = self;
        if s.has(Sigma::T) {
            s = s.with(Sigma::D);
        }
        if s.has(Sigma::C) && s.has(Sigma::P) {
            s = s.with(Sigma::D);
        }
        if s.has(Sigma::D) {
            s = s.with(Sigma::P);
        }
        s
    }

    /// Classical name: K, KD, KT for C+N, otherwise M followed by the letters.
    pub fn classical_name(self) -> String {
        if self.has(Sigma::K) {
            let mut s = String::from("K");
            if self.has(Sigma::D) {
                s.push('D');
            }
            if self.has(Sigma::T) {
                s.push('T');
            }
            return s;
        }
        let mut s = String::from("M");
        for (flag, ch) in [(Sigma::C, 'C'), (Sigma::N, 'N'), (Sigma::P, 'P'), (Sigma::D, 'D'), (Sigma::T, 'T')] {
            if self.has(flag) {
                s.push(ch);
            }
        }
        s
    }
}

impl fmt::Debug for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::from("{");
        for (flag, ch) in [(Sigma::C, 'C'), (Sigma::N, 'N'), (Sigma::P, 'P'), (Sigma::D, 'D'), (Sigma::T, 'T')] {
            if self.has(flag) {
                s.push(ch);
            }
        }
        s.push('}');
        f.write_str(&s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LogicId {
    pub family: Family,
    pub sigma: Sigma,
    pub base: Option<PropBase>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("unknown logic {0:?}")]
    UnknownLogic(String),
    #[error("axiom set {0:?} is not one of the fourteen admissible sets")]
    InadmissibleSigma(Sigma),
    #[error("unknown axiom schema {0:?}")]
    UnknownSchema(String),
    #[error("no binding for metavariable {0}")]
    MissingBinding(String),
}

impl LogicId {
    pub fn new(family: Family, sigma: Sigma) -> Result<LogicId, LogicError> {
        if family == Family::PropBase || !sigma.is_admissible() {
            return Err(LogicError::InadmissibleSigma(sigma));
        }
        Ok(LogicId { family, sigma, base: None })
    }

    pub fn prop(base: PropBase) -> LogicId {
        LogicId { family: Family::PropBase, sigma: Sigma::EMPTY, base: Some(base) }
    }

    pub fn classical(sigma: Sigma) -> LogicId {
        LogicId { family: Family::Classical, sigma, base: None }
    }

    pub fn minimal(sigma: Sigma) -> LogicId {
        LogicId { family: Family::Minimal, sigma, base: None }
    }

    pub fn constructive(sigma: Sigma) -> LogicId {
        LogicId { family: Family::Constructive, sigma, base: None }
    }

    pub fn wijesekera(sigma: Sigma) -> LogicId {
        LogicId { family: Family::Wijesekera, sigma, base: None }
    }

    pub fn mk() -> LogicId {
        LogicId::minimal(Sigma::K)
    }

    pub fn ck() -> LogicId {
        LogicId::constructive(Sigma::K)
    }

    pub fn wk() -> LogicId {
        LogicId::wijesekera(Sigma::K)
    }

    pub fn k() -> LogicId {
        LogicId::classical(Sigma::K)
    }

    pub fn name(&self) -> String {
        match self.family {
            Family::PropBase => match self.base {
                Some(PropBase::Mpl) | None => "MPL".into(),
                Some(PropBase::Ipl) => "IPL".into(),
                Some(PropBase::Cpl) => "CPL".into(),
            },
            Family::Classical => self.sigma.classical_name(),
            Family::Minimal => format!("M{}", self.sigma.classical_name()),
            Family::Constructive => format!("C{}", self.sigma.classical_name()),
            Family::Wijesekera => format!("W{}", self.sigma.classical_name()),
        }
    }

    /// Every registered logic: 3 propositional bases and 14 logics per family.
    pub fn all() -> Vec<LogicId> {
        let mut v = vec![
            LogicId::prop(PropBase::Mpl),
            LogicId::prop(PropBase::Ipl),
            LogicId::prop(PropBase::Cpl),
        ];
        for fam in [Family::Minimal, Family::Constructive, Family::Wijesekera, Family::Classical] {
            for s in Sigma::admissible() {
                v.push(LogicId { family: fam, sigma: s, base: None });
            }
        }
        v
    }

    /// Rank along MPL-based minimal → constructive → Wijesekera → classical.
    fn family_rank(&self) -> u8 {
        match (self.family, self.base) {
            (Family::PropBase, Some(PropBase::Ipl)) => 1,
            (Family::PropBase, Some(PropBase::Cpl)) => 3,
            (Family::PropBase, _) => 0,
            (Family::Minimal, _) => 0,
            (Family::Constructive, _) => 1,
            (Family::Wijesekera, _) => 2,
            (Family::Classical, _) => 3,
        }
    }
}

impl fmt::Display for LogicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for LogicId {
    type Err = LogicError;

    fn from_str(s: &str) -> Result<LogicId, LogicError> {
        let t = s.trim();
        LogicId::all()
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(t))
            .ok_or_else(|| LogicError::UnknownLogic(s.to_string()))
    }
}

/// An axiom schema: a template whose atoms are metavariables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSchema {
    pub name: &'static str,
    pub template: Formula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RuleName {
    Mp,
    Nec,
    MonBox,
    MonDia,
}

impl RuleName {
    pub fn name(self) -> &'static str {
        match self {
            RuleName::Mp => "mp",
            RuleName::Nec => "nec",
            RuleName::MonBox => "monbox",
            RuleName::MonDia => "mondia",
        }
    }

    pub fn from_name(s: &str) -> Option<RuleName> {
        match s {
            "mp" | "MP" => Some(RuleName::Mp),
            "nec" | "Nec" => Some(RuleName::Nec),
            "monbox" | "MonBox" | "mon-box" => Some(RuleName::MonBox),
            "mondia" | "MonDia" | "mon-dia" => Some(RuleName::MonDia),
            _ => None,
        }
    }
}

/// A rule schema: premise templates and a conclusion template.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSchema {
    pub name: RuleName,
    pub premises: Vec<Formula>,
    pub conclusion: Formula,
}

impl RuleSchema {
    pub fn of(name: RuleName) -> RuleSchema {
        let t = |s: &str| parse(s).expect("rule template");
        let (premises, conclusion) = match name {
            RuleName::Mp => (vec![t("A"), t("A -> B")], t("B")),
            RuleName::Nec => (vec![t("A")], t("box A")),
            RuleName::MonBox => (vec![t("A -> B")], t("box A -> box B")),
            RuleName::MonDia => (vec![t("A -> B")], t("dia A -> dia B")),
        };
        RuleSchema { name, premises, conclusion }
    }
}

const SCHEMA_TEXT: &[(&str, &str)] = &[
    ("and-el", "A & B -> A"),
    ("and-er", "A & B -> B"),
    ("or-il", "A -> A | B"),
    ("or-ir", "B -> A | B"),
    ("and-i", "(A -> B) -> ((A -> C) -> (A -> B & C))"),
    ("or-e", "(A -> C) -> ((B -> C) -> (A | B -> C))"),
    ("s", "(A -> (B -> C)) -> ((A -> B) -> (A -> C))"),
    ("k", "A -> (B -> A)"),
    ("efq", "bot -> A"),
    ("em", "A | ~A"),
    ("Kbox", "box (A -> B) -> (box A -> box B)"),
    ("Kdiam", "box (A -> B) -> (dia A -> dia B)"),
    ("Cbox", "box A & box B -> box (A & B)"),
    ("Cdiam", "dia (A | B) -> dia A | dia B"),
    ("Nbox", "box top"),
    ("Ndiam", "~dia bot"),
    ("Pbox", "~box bot"),
    ("Pdiam", "dia top"),
    ("D", "box A -> dia A"),
    ("Tbox", "box A -> A"),
    ("Tdiam", "A -> dia A"),
    ("dual", "box A <-> ~dia ~A"),
    ("mnc-ax", "~(box A & dia ~A)"),
    ("mem-ax", "box A | dia ~A"),
];

/// Schema names of the minimal propositional axioms, in registry order.
pub const MPL_AXIOMS: [&str; 8] = ["and-el", "and-er", "or-il", "or-ir", "and-i", "or-e", "s", "k"];

fn schema_table() -> &'static BTreeMap<&'static str, AxiomSchema> {
    static TABLE: OnceLock<BTreeMap<&'static str, AxiomSchema>> = OnceLock::new();
    TABLE.get_or_init(|| {
        SCHEMA_TEXT
            .iter()
            .map(|(n, t)| {
                (*n, AxiomSchema { name: n, template: parse(t).expect("schema template") })
            })
            .collect()
    })
}

pub fn schema(name: &str) -> Result<&'static AxiomSchema, LogicError> {
    schema_table().get(name).ok_or_else(|| LogicError::UnknownSchema(name.to_string()))
}

pub fn all_schemas() -> Vec<&'static AxiomSchema> {
    SCHEMA_TEXT.iter().map(|(n, _)| &schema_table()[n]).collect()
}

/// Axioms and rules of a system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axiomatization {
    pub axioms: Vec<&'static AxiomSchema>,
    pub rules: Vec<RuleName>,
}

impl Axiomatization {
    pub fn has_axiom(&self, name: &str) -> bool {
        self.axioms.iter().any(|a| a.name == name)
    }

    pub fn has_rule(&self, r: RuleName) -> bool {
        self.rules.contains(&r)
    }

    pub fn extend(mut self, names: &[&str]) -> Axiomatization {
        for n in names {
            if !self.has_axiom(n) {
                self.axioms.push(schema(n).expect("registered schema"));
            }
        }
        self
    }
}

/// Characteristic modal axioms of a minimal logic (beyond MPL).
fn minimal_modal(sigma: Sigma) -> (Vec<&'static str>, Vec<RuleName>) {
    if sigma.has(Sigma::K) {
        // MK is taken in its Kbox/Kdiam/nec presentation; MMC + Nbox is equivalent.
        let mut ax = vec!["Kbox", "Kdiam"];
        if sigma.has(Sigma::D) {
            ax.push("D");
        }
        if sigma.has(Sigma::T) {
            ax.extend(["Tbox", "Tdiam"]);
        }
        return (ax, vec![RuleName::Mp, RuleName::Nec]);
    }
    let mut ax = Vec::new();
    if sigma.has(Sigma::C) {
        ax.extend(["Cbox", "Kdiam"]);
    }
    if sigma.has(Sigma::N) {
        ax.push("Nbox");
    }
    if sigma.has(Sigma::P) {
        ax.push("Pdiam");
    }
    if sigma.has(Sigma::D) {
        ax.push("D");
        if !sigma.has(Sigma::N) {
            ax.push("Pdiam");
        }
    }
    if sigma.has(Sigma::T) {
        ax.extend(["Tbox", "Tdiam"]);
    }
    (ax, vec![RuleName::Mp, RuleName::MonBox, RuleName::MonDia])
}

fn classical_modal(sigma: Sigma) -> Vec<&'static str> {
    let mut ax = vec!["dual"];
    for (flag, name) in [
        (Sigma::C, "Cbox"),
        (Sigma::N, "Nbox"),
        (Sigma::P, "Pbox"),
        (Sigma::D, "D"),
        (Sigma::T, "Tbox"),
    ] {
        if sigma.has(flag) {
            ax.push(name);
        }
    }
    ax
}

pub fn axiomatization(l: LogicId) -> Result<Axiomatization, LogicError> {
    let base = |names: &[&str]| Axiomatization { axioms: vec![], rules: vec![RuleName::Mp] }.extend(names);
    if l.family != Family::PropBase && !l.sigma.is_admissible() {
        return Err(LogicError::InadmissibleSigma(l.sigma));
    }
    Ok(match l.family {
        Family::PropBase => match l.base {
            Some(PropBase::Mpl) => base(&MPL_AXIOMS),
            Some(PropBase::Ipl) => base(&MPL_AXIOMS).extend(&["efq"]),
            Some(PropBase::Cpl) => base(&MPL_AXIOMS).extend(&["efq", "em"]),
            None => return Err(LogicError::UnknownLogic("propositional base without name".into())),
        },
        Family::Minimal | Family::Constructive | Family::Wijesekera => {
            let (modal, rules) = minimal_modal(l.sigma);
            let mut a = base(&MPL_AXIOMS).extend(&modal);
            a.rules = rules;
            if l.family >= Family::Constructive {
                a = a.extend(&["efq"]);
            }
            if l.family == Family::Wijesekera {
                a = a.extend(&["mnc-ax"]);
            }
            a
        }
        Family::Classical => {
            let mut a = base(&MPL_AXIOMS).extend(&["efq", "em"]).extend(&classical_modal(l.sigma));
            a.rules = vec![RuleName::Mp, RuleName::MonBox, RuleName::MonDia];
            a
        }
    })
}

pub fn axioms_of(l: LogicId) -> Result<Vec<&'static AxiomSchema>, LogicError> {
    Ok(axiomatization(l)?.axioms)
}

pub fn rules_of(l: LogicId) -> Result<Vec<RuleSchema>, LogicError> {
    Ok(axiomatization(l)?.rules.into_iter().map(RuleSchema::of).collect())
}

pub type Subst = BTreeMap<String, Formula>;

/// Homomorphic substitution of metavariables.
pub fn instantiate(s: &AxiomSchema, subst: &Subst) -> Result<Formula, LogicError> {
    substitute(&s.template, subst)
}

pub fn substitute(template: &Formula, subst: &Subst) -> Result<Formula, LogicError> {
    Ok(match template {
        Formula::Atom(m) => subst
            .get(&**m)
            .cloned()
            .ok_or_else(|| LogicError::MissingBinding(m.to_string()))?,
        Formula::Bottom => Formula::Bottom,
        Formula::And(a, b) => Formula::and(substitute(a, subst)?, substitute(b, subst)?),
        Formula::Or(a, b) => Formula::or(substitute(a, subst)?, substitute(b, subst)?),
        Formula::Imp(a, b) => Formula::imp(substitute(a, subst)?, substitute(b, subst)?),
        Formula::Box(a) => Formula::boxed(substitute(a, subst)?),
        Formula::Dia(a) => Formula::dia(substitute(a, subst)?),
    })
}

/// Most general matching substitution, if `f` is an instance of the schema.
pub fn match_schema(s: &AxiomSchema, f: &Formula) -> Option<Subst> {
    let mut subst = Subst::new();
    match_into(&s.template, f, &mut subst).then_some(subst)
}

pub fn match_template(template: &Formula, f: &Formula) -> Option<Subst> {
    let mut subst = Subst::new();
    match_into(template, f, &mut subst).then_some(subst)
}

fn match_into(t: &Formula, f: &Formula, subst: &mut Subst) -> bool {
    match (t, f) {
        (Formula::Atom(m), _) => match subst.get(&**m) {
            Some(bound) => bound == f,
            None => {
                subst.insert(m.to_string(), f.clone());
                true
            }
        },
        (Formula::Bottom, Formula::Bottom) => true,
        (Formula::And(a, b), Formula::And(c, d))
        | (Formula::Or(a, b), Formula::Or(c, d))
        | (Formula::Imp(a, b), Formula::Imp(c, d)) => {
            match_into(a, c, subst) && match_into(b, d, subst)
        }
        (Formula::Box(a), Formula::Box(c)) | (Formula::Dia(a), Formula::Dia(c)) => {
            match_into(a, c, subst)
        }
        _ => false,
    }
}

/// True iff every theorem of `l1` is a theorem of `l2` according to the
/// inclusion diagram: a family step along minimal → constructive →
/// Wijesekera → classical, combined with inclusion of the derivability
/// closures of the axiom sets.
pub fn extends(l1: LogicId, l2: LogicId) -> bool {
    if l1.family_rank() > l2.family_rank() {
        return false;
    }
    // A propositional base is below everything of matching or higher rank.
    if l1.family == Family::PropBase {
        return true;
    }
    if l2.family == Family::PropBase {
        return false;
    }
    l1.sigma.closure().is_subset(l2.sigma.closure())
}

/// Edges of the classical inclusion diagram, by axiom set.
pub fn diagram_edges() -> Vec<(Sigma, Sigma)> {
    let named: &[(&str, &str)] = &[
        ("M", "MN"),
        ("M", "MC"),
        ("MN", "K"),
        ("MC", "K"),
        ("MP", "MNP"),
        ("MD", "MND"),
        ("MD", "MCD"),
        ("MND", "KD"),
        ("MCD", "KD"),
        ("MT", "MNT"),
        ("MT", "MCT"),
        ("MNT", "KT"),
        ("MCT", "KT"),
        ("MN", "MNP"),
        ("MNP", "MND"),
        ("MND", "MNT"),
        ("MC", "MCD"),
        ("MCD", "MCT"),
        ("MP", "MD"),
        ("M", "MP"),
        ("MD", "MT"),
        ("KD", "KT"),
        ("K", "KD"),
    ];
    let by_name = |n: &str| {
        Sigma::admissible()
            .into_iter()
            .find(|s| s.classical_name() == n)
            .expect("diagram node")
    };
    named.iter().map(|(a, b)| (by_name(a), by_name(b))).collect()
}

/// All direct inclusion edges between registered logics: the diagram inside
/// each family, the family chain at equal Σ, and the propositional bases.
pub fn registry_edges() -> Vec<(LogicId, LogicId)> {
    let mut out = Vec::new();
    for fam in [Family::Minimal, Family::Constructive, Family::Wijesekera, Family::Classical] {
        for (a, b) in diagram_edges() {
            out.push((LogicId { family: fam, sigma: a, base: None }, LogicId { family: fam, sigma: b, base: None }));
        }
    }
    for s in Sigma::admissible() {
        out.push((LogicId::minimal(s), LogicId::constructive(s)));
        out.push((LogicId::constructive(s), LogicId::wijesekera(s)));
        out.push((LogicId::wijesekera(s), LogicId::classical(s)));
    }
    out.push((LogicId::prop(PropBase::Mpl), LogicId::prop(PropBase::Ipl)));
    out.push((LogicId::prop(PropBase::Ipl), LogicId::prop(PropBase::Cpl)));
    out.push((LogicId::prop(PropBase::Mpl), LogicId::minimal(Sigma::EMPTY)));
    out.push((LogicId::prop(PropBase::Ipl), LogicId::constructive(Sigma::EMPTY)));
    out.push((LogicId::prop(PropBase::Cpl), LogicId::classical(Sigma::EMPTY)));
    out
}

/// The formula an axiom schema denotes at the representative instance
/// A := p, B := q, C := r.
pub fn representative(s: &AxiomSchema) -> Formula {
    let subst: Subst = [("A", "p"), ("B", "q"), ("C", "r")]
        .into_iter()
        .map(|(m, a)| (m.to_string(), Formula::atom(a)))
        .collect();
    instantiate(s, &subst).expect("templates use A, B, C only")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn names(l: LogicId) -> BTreeSet<&'static str> {
        axioms_of(l).unwrap().into_iter().map(|a| a.name).collect()
    }

    #[test]
    fn names_round_trip() {
        for l in LogicId::all() {
            assert_eq!(l.name().parse::<LogicId>().unwrap(), l);
        }
        assert_eq!("MK".parse::<LogicId>().unwrap(), LogicId::mk());
        assert_eq!("kd".parse::<LogicId>().unwrap(), LogicId::classical(Sigma::K.with(Sigma::D)));
        assert!("MCP".parse::<LogicId>().is_err());
        assert!("KP".parse::<LogicId>().is_err());
        assert_eq!(LogicId::all().len(), 3 + 4 * 14);
    }

    #[test]
    fn sigma_admissibility() {
        assert!(!Sigma::C.with(Sigma::P).is_admissible());
        assert!(!Sigma::K.with(Sigma::P).is_admissible());
        assert!(Sigma::K.with(Sigma::T).is_admissible());
        assert!(LogicId::new(Family::Minimal, Sigma::C.with(Sigma::P)).is_err());
    }

    #[test]
    fn axiom_lists() {
        let mk = names(LogicId::mk());
        assert!(mk.contains("Kbox") && mk.contains("Kdiam"));
        assert!(!mk.contains("efq"));
        assert!(axiomatization(LogicId::mk()).unwrap().has_rule(RuleName::Nec));
        let ck = names(LogicId::ck());
        assert_eq!(ck.difference(&mk).cloned().collect::<Vec<_>>(), vec!["efq"]);
        let wk = names(LogicId::wk());
        assert_eq!(wk.difference(&ck).cloned().collect::<Vec<_>>(), vec!["mnc-ax"]);
        let mmc = names(LogicId::minimal(Sigma::C));
        assert!(mmc.contains("Cbox") && mmc.contains("Kdiam") && !mmc.contains("Nbox"));
        let mmd = names(LogicId::minimal(Sigma::D));
        assert!(mmd.contains("D") && mmd.contains("Pdiam"));
        let mmnd = names(LogicId::minimal(Sigma::N.with(Sigma::D)));
        assert!(mmnd.contains("D") && !mmnd.contains("Pdiam"));
        let mmt = names(LogicId::minimal(Sigma::T));
        assert!(mmt.contains("Tbox") && mmt.contains("Tdiam"));
        let k = names(LogicId::k());
        assert!(k.contains("dual") && k.contains("Cbox") && k.contains("Nbox") && k.contains("em"));
        assert_eq!(names(LogicId::prop(PropBase::Mpl)).len(), 8);
    }

    #[test]
    fn instantiate_examples() {
        let sub = |pairs: &[(&str, &str)]| -> Subst {
            pairs.iter().map(|(m, f)| (m.to_string(), parse(f).unwrap())).collect()
        };
        let t = instantiate(schema("Tbox").unwrap(), &sub(&[("A", "p")])).unwrap();
        assert_eq!(t, parse("box p -> p").unwrap());
        let d = instantiate(schema("D").unwrap(), &sub(&[("A", "bot")])).unwrap();
        assert_eq!(d, parse("box bot -> dia bot").unwrap());
        let c = instantiate(schema("Cbox").unwrap(), &sub(&[("A", "p"), ("B", "p")])).unwrap();
        assert_eq!(c, parse("box p & box p -> box (p & p)").unwrap());
        assert_eq!(
            instantiate(schema("Kbox").unwrap(), &sub(&[("A", "p")])),
            Err(LogicError::MissingBinding("B".into()))
        );
    }

    #[test]
    fn match_examples() {
        let m = match_schema(schema("Tbox").unwrap(), &parse("box (p & q) -> p & q").unwrap()).unwrap();
        assert_eq!(m["A"], parse("p & q").unwrap());
        assert!(match_schema(schema("Tbox").unwrap(), &parse("box p -> q").unwrap()).is_none());
        let m = match_schema(schema("Kbox").unwrap(), &parse("box (p -> bot) -> (box p -> box bot)").unwrap()).unwrap();
        assert_eq!(m["A"], Formula::atom("p"));
        assert_eq!(m["B"], Formula::Bottom);
    }

    #[test]
    fn extends_examples() {
        let kd = LogicId::classical(Sigma::K.with(Sigma::D));
        assert!(extends(LogicId::mk(), kd));
        assert!(!extends(LogicId::minimal(Sigma::T), LogicId::mk()));
        assert!(extends(LogicId::ck(), LogicId::wk()));
        assert!(!extends(LogicId::wk(), LogicId::ck()));
        assert!(extends(LogicId::prop(PropBase::Mpl), LogicId::minimal(Sigma::EMPTY)));
        assert!(!extends(LogicId::prop(PropBase::Cpl), LogicId::ck()));
    }

    // Oracle: reflexive-transitive closure of the explicit diagram edges.
    #[test]
    fn extends_matches_diagram_closure() {
        let nodes = Sigma::admissible();
        let idx = |s: Sigma| nodes.iter().position(|x| *x == s).unwrap();
        let mut reach = [[false; 14]; 14];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in diagram_edges() {
            reach[idx(a)][idx(b)] = true;
        }
        for k in 0..14 {
            for i in 0..14 {
                for j in 0..14 {
                    if reach[i][k] && reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
        for fam in [Family::Minimal, Family::Classical, Family::Constructive] {
            for (i, a) in nodes.iter().enumerate() {
                for (j, b) in nodes.iter().enumerate() {
                    let la = LogicId { family: fam, sigma: *a, base: None };
                    let lb = LogicId { family: fam, sigma: *b, base: None };
                    assert_eq!(extends(la, lb), reach[i][j], "{la} ⊆ {lb}");
                }
            }
        }
    }

    #[test]
    fn instantiate_then_match_recovers_substitution() {
        let subst: Subst = [("A", "box p"), ("B", "q | bot"), ("C", "~r")]
            .iter()
            .map(|(m, f)| (m.to_string(), parse(f).unwrap()))
            .collect();
        for s in all_schemas() {
            let f = instantiate(s, &subst).unwrap();
            let m = match_schema(s, &f).unwrap();
            for (k, v) in &m {
                assert_eq!(&subst[k], v, "{}", s.name);
            }
        }
    }
}

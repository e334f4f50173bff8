//! Finite models: minimal relational, minimal and constructive birelational,
//! minimal and constructive neighbourhood, classical neighbourhood, and the
//! two fusion forms interpreting the bimodal companion language.
//!
//! Sets of worlds are `u64` bitsets, so a model has at most 64 worlds.
//! Forcing computes the extension of each subformula once for all worlds.

mod generate;
mod search;
mod table;
mod transform;
mod wellformed;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{BiFormula, Formula, RESERVED_ATOM};
use crate::logics::{Family, LogicId, PropBase, Sigma};

pub use generate::{candidates_of_size, enumerate_models, random_model, random_model_with_stats, ModelStream, SamplingStats};
pub use table::FormulaTable;
pub use search::{countermodel_search, find_countermodel, Countermodel, CountermodelBounds};
pub use transform::{from_fusion, to_fusion};
pub use wellformed::{check_wellformed, Violation, WellformedReport};

pub type World = usize;
pub const MAX_WORLDS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("world {0} is not in the model")]
    NoSuchWorld(World),
    #[error("{0} formulas cannot be evaluated in a {1} model")]
    Language(&'static str, ModelKind),
    #[error("atom {0:?} is not interpreted by the model")]
    UnknownAtom(String),
    #[error("{kind} models are not available for {logic}")]
    BadSpec { kind: SemanticsKind, logic: String },
    #[error("enumeration of {kind} models is capped at {cap} worlds")]
    Cap { kind: ModelKind, cap: usize },
    #[error("no wellformed model after {attempts} attempts; last violation: {last}")]
    Sampling { attempts: usize, last: String },
    #[error("ill-formed model: {0}")]
    IllFormed(String),
    #[error("model file: {0}")]
    File(String),
}

/// Shape of a model structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    /// ⟨W, ≤, F, V⟩.
    Relational,
    /// ⟨W, ≤, F, R, V⟩.
    Birelational,
    /// ⟨W, ≤, F, N, V⟩.
    Neighbourhood,
    /// ⟨W, N, V⟩, stored with ≤ the identity and F empty.
    ClassicalNeighbourhood,
    /// ⟨W, R₁, R₂, V⟩ with R₁ in `leq` and R₂ in `rel`.
    FusionRelational,
    /// ⟨W, R, N, V⟩ with R in `leq`.
    FusionNeighbourhood,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Relational => "relational",
            ModelKind::Birelational => "birelational",
            ModelKind::Neighbourhood => "neighbourhood",
            ModelKind::ClassicalNeighbourhood => "classical-neighbourhood",
            ModelKind::FusionRelational => "fusion-relational",
            ModelKind::FusionNeighbourhood => "fusion-neighbourhood",
        }
    }

    pub fn has_rel(self) -> bool {
        matches!(self, ModelKind::Birelational | ModelKind::FusionRelational)
    }

    pub fn has_nbhd(self) -> bool {
        matches!(self, ModelKind::Neighbourhood | ModelKind::ClassicalNeighbourhood | ModelKind::FusionNeighbourhood)
    }

    pub fn is_fusion(self) -> bool {
        matches!(self, ModelKind::FusionRelational | ModelKind::FusionNeighbourhood)
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Semantics family of a model class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SemanticsKind {
    Relational,
    Birelational,
    Neighbourhood,
    ClassicalNeighbourhood,
    Fusion,
}

impl fmt::Display for SemanticsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SemanticsKind::Relational => "relational",
            SemanticsKind::Birelational => "birelational",
            SemanticsKind::Neighbourhood => "neighbourhood",
            SemanticsKind::ClassicalNeighbourhood => "classical-neighbourhood",
            SemanticsKind::Fusion => "fusion",
        })
    }
}

impl FromStr for SemanticsKind {
    type Err = String;
    fn from_str(s: &str) -> Result<SemanticsKind, String> {
        Ok(match s {
            "relational" => SemanticsKind::Relational,
            "birelational" => SemanticsKind::Birelational,
            "neighbourhood" | "neighborhood" => SemanticsKind::Neighbourhood,
            "classical-neighbourhood" | "classical-neighborhood" => SemanticsKind::ClassicalNeighbourhood,
            "fusion" => SemanticsKind::Fusion,
            _ => return Err(format!("unknown semantics {s:?}")),
        })
    }
}

/// A model class: a semantics kind together with the logic whose models it
/// describes. For `Fusion`, the logic L (classical or minimal) stands for S4⊕L.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassSpec {
    pub kind: SemanticsKind,
    pub logic: LogicId,
}

impl ClassSpec {
    pub fn new(kind: SemanticsKind, logic: LogicId) -> Result<ClassSpec, SemanticsError> {
        let bad = || SemanticsError::BadSpec { kind, logic: logic.to_string() };
        let ok = match kind {
            SemanticsKind::Relational => logic.family == Family::PropBase,
            SemanticsKind::Birelational => {
                logic.sigma == Sigma::K && matches!(logic.family, Family::Minimal | Family::Constructive | Family::Wijesekera)
            }
            SemanticsKind::Neighbourhood => matches!(logic.family, Family::Minimal | Family::Constructive),
            SemanticsKind::ClassicalNeighbourhood => logic.family == Family::Classical,
            SemanticsKind::Fusion => matches!(logic.family, Family::Minimal | Family::Classical),
        };
        if ok {
            Ok(ClassSpec { kind, logic })
        } else {
            Err(bad())
        }
    }

    /// The class used for countermodels: birelational for MK, CK and WK,
    /// neighbourhood for the other minimal and constructive logics.
    pub fn default_for(logic: LogicId) -> Result<ClassSpec, SemanticsError> {
        let kind = match logic.family {
            Family::PropBase => SemanticsKind::Relational,
            Family::Minimal | Family::Constructive if logic.sigma == Sigma::K => SemanticsKind::Birelational,
            Family::Minimal | Family::Constructive => SemanticsKind::Neighbourhood,
            Family::Wijesekera => SemanticsKind::Birelational,
            Family::Classical => SemanticsKind::ClassicalNeighbourhood,
        };
        ClassSpec::new(kind, logic)
    }

    /// The companion class S4⊕L of a minimal or classical logic.
    pub fn fusion(logic: LogicId) -> Result<ClassSpec, SemanticsError> {
        ClassSpec::new(SemanticsKind::Fusion, logic)
    }

    pub fn model_kinds(&self) -> Vec<ModelKind> {
        match self.kind {
            SemanticsKind::Relational => vec![ModelKind::Relational],
            SemanticsKind::Birelational => vec![ModelKind::Birelational],
            SemanticsKind::Neighbourhood => vec![ModelKind::Neighbourhood],
            SemanticsKind::ClassicalNeighbourhood => vec![ModelKind::ClassicalNeighbourhood],
            SemanticsKind::Fusion if self.logic.sigma == Sigma::K => {
                vec![ModelKind::FusionRelational, ModelKind::FusionNeighbourhood]
            }
            SemanticsKind::Fusion => vec![ModelKind::FusionNeighbourhood],
        }
    }

    /// Conditions (i)–(iii) on fallible worlds.
    pub fn constructive(&self) -> bool {
        self.logic.family == Family::Constructive
    }

    /// Fallible worlds are excluded (Wijesekera models, classical models).
    pub fn infallible(&self) -> bool {
        matches!(self.logic.family, Family::Wijesekera | Family::Classical)
            || self.logic.base == Some(PropBase::Cpl)
            || self.kind == SemanticsKind::Fusion
    }

    /// ≤ is the identity.
    pub fn discrete(&self) -> bool {
        self.kind == SemanticsKind::ClassicalNeighbourhood || self.logic.base == Some(PropBase::Cpl)
    }

    /// The neighbourhood conditions (cX), X ∈ Σ, that apply.
    pub fn conditions(&self) -> Sigma {
        match self.kind {
            SemanticsKind::Neighbourhood | SemanticsKind::ClassicalNeighbourhood | SemanticsKind::Fusion => self.logic.sigma,
            _ => Sigma::EMPTY,
        }
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SemanticsKind::Fusion => write!(f, "fusion models of S4+{}", self.logic),
            k => write!(f, "{k} models for {}", self.logic),
        }
    }
}

/// A finite model. Relations are stored as successor bitsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ModelFile", into = "ModelFile")]
pub struct Model {
    pub kind: ModelKind,
    pub labels: Vec<String>,
    /// `leq[w]` = {v | w ≤ v}; R₁ (or R) in fusion models.
    pub leq: Vec<u64>,
    pub fallible: u64,
    /// `rel[w]` = R-successors of w (R₂ in relational fusion models).
    pub rel: Vec<u64>,
    /// `nbhd[w]` = N(w), sorted and without duplicates.
    pub nbhd: Vec<Vec<u64>>,
    pub val: BTreeMap<String, u64>,
}

pub(crate) fn members(s: u64) -> impl Iterator<Item = World> {
    (0..MAX_WORLDS).filter(move |i| s >> i & 1 == 1)
}

pub(crate) fn bit(w: World) -> u64 {
    1u64 << w
}

pub(crate) fn bits(ws: &[World]) -> u64 {
    ws.iter().fold(0, |s, w| s | bit(*w))
}

impl Model {
    /// `n` worlds, ≤ the identity, no fallible worlds, empty R and N, no atoms.
    pub fn new(kind: ModelKind, n: usize) -> Model {
        assert!((1..=MAX_WORLDS).contains(&n), "a model has between 1 and {MAX_WORLDS} worlds");
        Model {
            kind,
            labels: (0..n).map(|i| format!("w{i}")).collect(),
            leq: (0..n).map(bit).collect(),
            fallible: 0,
            rel: if kind.has_rel() { vec![0; n] } else { vec![] },
            nbhd: if kind.has_nbhd() { vec![vec![]; n] } else { vec![] },
            val: BTreeMap::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn all(&self) -> u64 {
        if self.size() == MAX_WORLDS {
            u64::MAX
        } else {
            (1u64 << self.size()) - 1
        }
    }

    /// Adds the pairs to ≤ and closes it reflexively and transitively.
    pub fn with_leq(mut self, pairs: &[(World, World)]) -> Model {
        for &(a, b) in pairs {
            self.leq[a] |= bit(b);
        }
        self.leq = preorder_closure(&self.leq);
        self
    }

    pub fn with_fallible(mut self, ws: &[World]) -> Model {
        self.fallible = bits(ws);
        self
    }

    pub fn with_rel(mut self, pairs: &[(World, World)]) -> Model {
        for &(a, b) in pairs {
            self.rel[a] |= bit(b);
        }
        self
    }

    pub fn with_nbhd(mut self, w: World, sets: &[&[World]]) -> Model {
        self.nbhd[w] = sets.iter().map(|s| bits(s)).collect();
        self.normalize();
        self
    }

    pub fn with_val(mut self, p: &str, ws: &[World]) -> Model {
        self.val.insert(p.to_string(), bits(ws));
        self
    }

    /// Sorts and deduplicates every N(w).
    pub fn normalize(&mut self) {
        for n in &mut self.nbhd {
            n.sort_unstable();
            n.dedup();
        }
    }

    pub fn atoms(&self) -> Vec<String> {
        self.val.keys().cloned().collect()
    }

    pub fn label(&self, w: World) -> &str {
        &self.labels[w]
    }

    pub fn world_by_label(&self, l: &str) -> Option<World> {
        self.labels.iter().position(|x| x == l)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("models serialize")
    }

    pub fn from_json(s: &str) -> Result<Model, SemanticsError> {
        serde_json::from_str(s).map_err(|e| SemanticsError::File(e.to_string()))
    }

    fn atom(&self, p: &str) -> Result<u64, SemanticsError> {
        self.val.get(p).copied().ok_or_else(|| SemanticsError::UnknownAtom(p.to_string()))
    }

    /// Worlds all of whose ≤-successors lie in `s`.
    fn up_closed_part(&self, s: u64) -> u64 {
        self.leq.iter().enumerate().filter(|(_, up)| **up & !s == 0).fold(0, |a, (w, _)| a | bit(w))
    }

    fn pre_box(&self, s: u64) -> u64 {
        if self.kind.has_rel() {
            self.rel.iter().enumerate().filter(|(_, r)| **r & !s == 0).fold(0, |a, (w, _)| a | bit(w))
        } else {
            self.nbhd.iter().enumerate().filter(|(_, n)| n.iter().any(|a| a & !s == 0)).fold(0, |a, (w, _)| a | bit(w))
        }
    }

    fn pre_dia(&self, s: u64) -> u64 {
        if self.kind.has_rel() {
            self.rel.iter().enumerate().filter(|(_, r)| **r & s != 0).fold(0, |a, (w, _)| a | bit(w))
        } else {
            self.nbhd.iter().enumerate().filter(|(_, n)| n.iter().all(|a| a & s != 0)).fold(0, |a, (w, _)| a | bit(w))
        }
    }
}

pub(crate) fn preorder_closure(rel: &[u64]) -> Vec<u64> {
    let n = rel.len();
    let mut r: Vec<u64> = rel.iter().enumerate().map(|(w, s)| s | bit(w)).collect();
    loop {
        let mut changed = false;
        for w in 0..n {
            let next = members(r[w]).fold(r[w], |a, v| a | r[v]);
            if next != r[w] {
                r[w] = next;
                changed = true;
            }
        }
        if !changed {
            return r;
        }
    }
}

/// Formulas that can be evaluated in some kinds of model.
pub trait Evaluable {
    /// The set of worlds forcing the formula.
    fn extension(&self, m: &Model) -> Result<u64, SemanticsError>;
    fn subformula_list(&self) -> Vec<Self>
    where
        Self: Sized;
}

impl Evaluable for Formula {
    fn extension(&self, m: &Model) -> Result<u64, SemanticsError> {
        if m.kind.is_fusion() {
            return Err(SemanticsError::Language("monomodal", m.kind));
        }
        ext_mono(m, self)
    }

    fn subformula_list(&self) -> Vec<Formula> {
        self.subformulas().into_iter().collect()
    }
}

fn ext_mono(m: &Model, f: &Formula) -> Result<u64, SemanticsError> {
    Ok(match f {
        Formula::Atom(p) => m.atom(p)?,
        Formula::Bottom => m.fallible,
        Formula::And(a, b) => ext_mono(m, a)? & ext_mono(m, b)?,
        Formula::Or(a, b) => ext_mono(m, a)? | ext_mono(m, b)?,
        Formula::Imp(a, b) => {
            let (x, y) = (ext_mono(m, a)?, ext_mono(m, b)?);
            m.up_closed_part(!x | y)
        }
        Formula::Box(a) | Formula::Dia(a) if m.kind == ModelKind::Relational => {
            let _ = a;
            return Err(SemanticsError::Language("modal", m.kind));
        }
        Formula::Box(a) => m.up_closed_part(m.pre_box(ext_mono(m, a)?)),
        Formula::Dia(a) => m.up_closed_part(m.pre_dia(ext_mono(m, a)?)),
    })
}

impl Evaluable for BiFormula {
    fn extension(&self, m: &Model) -> Result<u64, SemanticsError> {
        if !m.kind.is_fusion() {
            return Err(SemanticsError::Language("bimodal", m.kind));
        }
        ext_bi(m, self)
    }

    fn subformula_list(&self) -> Vec<BiFormula> {
        self.subformulas().into_iter().collect()
    }
}

fn ext_bi(m: &Model, f: &BiFormula) -> Result<u64, SemanticsError> {
    let all = m.all();
    Ok(match f {
        BiFormula::Atom(p) => m.atom(p)?,
        BiFormula::Bottom => 0,
        BiFormula::And(a, b) => ext_bi(m, a)? & ext_bi(m, b)?,
        BiFormula::Or(a, b) => ext_bi(m, a)? | ext_bi(m, b)?,
        BiFormula::Imp(a, b) => (!ext_bi(m, a)? | ext_bi(m, b)?) & all,
        BiFormula::Box1(a) => m.up_closed_part(ext_bi(m, a)?),
        BiFormula::Dia1(a) => {
            let s = ext_bi(m, a)?;
            m.leq.iter().enumerate().filter(|(_, r)| **r & s != 0).fold(0, |x, (w, _)| x | bit(w))
        }
        BiFormula::Box2(a) => m.pre_box(ext_bi(m, a)?),
        BiFormula::Dia2(a) => m.pre_dia(ext_bi(m, a)?),
    })
}

pub fn forces<E: Evaluable>(m: &Model, w: World, f: &E) -> Result<bool, SemanticsError> {
    if w >= m.size() {
        return Err(SemanticsError::NoSuchWorld(w));
    }
    Ok(f.extension(m)? >> w & 1 == 1)
}

pub fn valid_in_model<E: Evaluable>(m: &Model, f: &E) -> Result<bool, SemanticsError> {
    Ok(f.extension(m)? == m.all())
}

/// The worlds of `m` forcing `f`, in order.
pub fn truth_set<E: Evaluable>(m: &Model, f: &E) -> Result<Vec<World>, SemanticsError> {
    Ok(members(f.extension(m)?).collect())
}

/// On-disk form of a model.
#[derive(Serialize, Deserialize)]
struct ModelFile {
    kind: ModelKind,
    worlds: Vec<String>,
    leq: Vec<(World, World)>,
    #[serde(default)]
    fallible: Vec<World>,
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    r: Option<Vec<(World, World)>>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    n: Option<Vec<Vec<Vec<World>>>>,
    valuation: BTreeMap<String, Vec<World>>,
}

fn pairs(rel: &[u64]) -> Vec<(World, World)> {
    rel.iter().enumerate().flat_map(|(w, s)| members(*s).map(move |v| (w, v))).collect()
}

impl From<Model> for ModelFile {
    fn from(m: Model) -> ModelFile {
        ModelFile {
            kind: m.kind,
            leq: pairs(&m.leq),
            fallible: members(m.fallible).collect(),
            r: m.kind.has_rel().then(|| pairs(&m.rel)),
            n: m.kind.has_nbhd().then(|| m.nbhd.iter().map(|n| n.iter().map(|a| members(*a).collect()).collect()).collect()),
            valuation: m.val.iter().map(|(p, s)| (p.clone(), members(*s).collect())).collect(),
            worlds: m.labels,
        }
    }
}

impl TryFrom<ModelFile> for Model {
    type Error = String;

    fn try_from(f: ModelFile) -> Result<Model, String> {
        let n = f.worlds.len();
        if n == 0 || n > MAX_WORLDS {
            return Err(format!("a model has between 1 and {MAX_WORLDS} worlds, found {n}"));
        }
        let check = |w: World| if w < n { Ok(w) } else { Err(format!("world index {w} out of range (model has {n} worlds)")) };
        let rel_of = |ps: &[(World, World)]| -> Result<Vec<u64>, String> {
            let mut r = vec![0u64; n];
            for &(a, b) in ps {
                r[check(a)?] |= bit(check(b)?);
            }
            Ok(r)
        };
        let set_of = |ws: &[World]| -> Result<u64, String> { ws.iter().try_fold(0, |s, w| Ok(s | bit(check(*w)?))) };
        let rel = match (f.kind.has_rel(), &f.r) {
            (true, Some(r)) => rel_of(r)?,
            (true, None) => return Err(format!("{} models need the field R", f.kind)),
            (false, None) => vec![],
            (false, Some(_)) => return Err(format!("{} models have no field R", f.kind)),
        };
        let nbhd = match (f.kind.has_nbhd(), &f.n) {
            (true, Some(ns)) if ns.len() == n => ns.iter().map(|sets| sets.iter().map(|s| set_of(s)).collect()).collect::<Result<Vec<Vec<u64>>, String>>()?,
            (true, Some(ns)) => return Err(format!("N lists {} worlds, the model has {n}", ns.len())),
            (true, None) => return Err(format!("{} models need the field N", f.kind)),
            (false, None) => vec![],
            (false, Some(_)) => return Err(format!("{} models have no field N", f.kind)),
        };
        let mut val = BTreeMap::new();
        for (p, ws) in &f.valuation {
            val.insert(p.clone(), set_of(ws)?);
        }
        let mut m = Model { kind: f.kind, labels: f.worlds, leq: rel_of(&f.leq)?, fallible: set_of(&f.fallible)?, rel, nbhd, val };
        m.normalize();
        Ok(m)
    }
}

/// The one-world model with ≤ reflexive, F = W and R = ∅: it satisfies
/// constructive conditions (i) and (ii) but not (iii).
pub fn fallible_point() -> Model {
    Model::new(ModelKind::Birelational, 1).with_fallible(&[0]).with_val("p", &[0])
}

pub(crate) fn reserved_atom() -> &'static str {
    RESERVED_ATOM
}

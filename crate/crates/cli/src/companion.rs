//! Cross-checking a minimal logic ML against its bimodal companion S4⊕L:
//! prover verdicts on A are compared with fusion-model evidence on tr(A).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use minmodal::calculi::{CalculusId, Sequent};
use minmodal::formula::{BiFormula, Formula, RESERVED_ATOM};
use minmodal::logics::{Family, LogicId};
use minmodal::prover::{decide, SearchBudget, Verdict};
use minmodal::semantics::{
    candidates_of_size, check_wellformed, countermodel_search, enumerate_models, forces, random_model_with_stats,
    to_fusion, ClassSpec, CountermodelBounds, Evaluable, FormulaTable, Model, ModelKind, World,
};
use minmodal::translation::goedel_johansson;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CompanionBounds {
    /// Largest fusion model searched for countermodels of tr(A).
    pub fusion_max_worlds: usize,
    /// Fusion sizes with at most this many candidates are enumerated in full.
    pub exhaustive_limit: u128,
    /// Random fusion models drawn for each larger size.
    pub samples: usize,
    pub seed: u64,
    pub budget: SearchBudget,
    /// Bounds for minimal-side countermodels of refuted formulas.
    pub countermodel: CountermodelBounds,
}

impl Default for CompanionBounds {
    fn default() -> Self {
        CompanionBounds {
            fusion_max_worlds: 3,
            exhaustive_limit: 200_000,
            samples: 2_000,
            seed: 0,
            budget: SearchBudget::default(),
            // Some refutable formulas of modal depth 2 need four worlds.
            countermodel: CountermodelBounds { max_worlds: 4, ..CountermodelBounds::default() },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CompanionVerdict {
    Consistent,
    Inconsistent,
    Inconclusive,
}

impl std::fmt::Display for CompanionVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CompanionVerdict::Consistent => "consistent",
            CompanionVerdict::Inconsistent => "inconsistent",
            CompanionVerdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointedModel {
    pub model: Model,
    pub world: World,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FusionEvidence {
    /// A fusion model and world falsifying tr(A).
    Countermodel { model: Model, world: World, from_minimal: bool },
    /// No fusion model checked falsifies tr(A).
    NoCountermodel { models: usize, exhaustive_up_to: usize, max_worlds: usize },
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompanionReport {
    pub logic: String,
    pub formula: String,
    pub minimal: Verdict,
    pub minimal_countermodel: Option<PointedModel>,
    pub translation: String,
    pub evidence: FusionEvidence,
    pub verdict: CompanionVerdict,
    pub note: String,
}

/// Counts over a corpus; only reports that are not consistent are kept.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub formulas: usize,
    pub proved: usize,
    pub refuted: usize,
    pub exhausted: usize,
    pub consistent: usize,
    pub inconsistent: usize,
    pub inconclusive: usize,
    /// Refuted formulas whose minimal countermodel maps to a fusion countermodel.
    pub transferred: usize,
    /// Refuted formulas needing a fresh countermodel search beyond the pool
    /// and the streamed stages.
    pub searched: usize,
    pub fusion_models: usize,
    pub minimal_models: usize,
    pub exceptions: Vec<CompanionReport>,
}

/// Model pools for one logic, reusable across formulas.
pub struct Companion {
    logic: LogicId,
    calculus: CalculusId,
    bounds: CompanionBounds,
    minimal_spec: ClassSpec,
    fusion_spec: ClassSpec,
    fusion_pool: Vec<Model>,
    exhaustive_up_to: usize,
    minimal_pool: Vec<Model>,
    stages: Vec<Stage>,
    atoms: Vec<String>,
}

/// Minimal models of one size, streamed rather than stored.
#[derive(Debug, Clone, Copy)]
struct Stage {
    size: usize,
    limit: u128,
    samples: usize,
}

enum Hit {
    Pool(usize, World),
    Owned(PointedModel),
}

/// Fusion models are taken in the form the minimal class maps to.
fn fusion_kind(minimal: &ClassSpec) -> ModelKind {
    match minimal.model_kinds()[0] {
        ModelKind::Birelational => ModelKind::FusionRelational,
        _ => ModelKind::FusionNeighbourhood,
    }
}

fn seeded(seed: u64, n: usize, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Every model of exactly `n` worlds if that space is small, else `samples`
/// seeded random ones. Returns the models and whether the size was exhaustive.
fn pool_of_size(
    spec: &ClassSpec,
    kind: Option<ModelKind>,
    n: usize,
    atoms: &[&str],
    limit: u128,
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<Model>, bool), CliError> {
    let keep = |m: &Model| kind.map_or(true, |k| m.kind == k);
    match candidates_of_size(spec, n, atoms) {
        Some(c) if c <= limit => {
            let ms = enumerate_models(spec, n, atoms)?.filter(|m| m.size() == n && keep(m)).collect();
            Ok((ms, true))
        }
        _ => {
            let mut out = Vec::with_capacity(samples);
            while out.len() < samples {
                let (m, _) = random_model_with_stats(spec, n, atoms, rng)?;
                if keep(&m) {
                    out.push(m);
                }
            }
            Ok((out, false))
        }
    }
}

impl Companion {
    /// Pools over the single atom `p`.
    pub fn new(logic: LogicId, bounds: CompanionBounds) -> Result<Companion, CliError> {
        Companion::with_atoms(logic, &["p"], bounds)
    }

    pub fn with_atoms(logic: LogicId, atoms: &[&str], bounds: CompanionBounds) -> Result<Companion, CliError> {
        if logic.family != Family::Minimal {
            return Err(CliError::Unsupported(format!("companion checks need a minimal modal logic, got {logic}")));
        }
        let calculus = CalculusId::for_logic(logic)?;
        let minimal_spec = ClassSpec::default_for(logic)?;
        let fusion_spec = ClassSpec::fusion(logic)?;
        let kind = fusion_kind(&minimal_spec);
        let mut fusion_pool = Vec::new();
        let mut exhaustive_up_to = 0;
        let mut fusion_atoms = atoms.to_vec();
        fusion_atoms.push(RESERVED_ATOM);
        let mut rng = seeded(bounds.seed, 0, 0xf5);
        for n in 1..=bounds.fusion_max_worlds {
            let (ms, full) = pool_of_size(
                &fusion_spec,
                Some(kind),
                n,
                &fusion_atoms,
                bounds.exhaustive_limit,
                bounds.samples,
                &mut rng,
            )?;
            if full && exhaustive_up_to == n - 1 {
                exhaustive_up_to = n;
            }
            fusion_pool.extend(ms);
        }
        Ok(Companion {
            logic,
            calculus,
            bounds,
            minimal_spec,
            fusion_spec,
            fusion_pool,
            exhaustive_up_to,
            minimal_pool: Vec::new(),
            stages: Vec::new(),
            atoms: atoms.iter().map(|a| a.to_string()).collect(),
        })
    }

    /// Adds a pool of minimal models used to look up countermodels
    /// before falling back to a fresh search.
    pub fn with_minimal_pool(mut self, max_worlds: usize, samples: usize) -> Result<Companion, CliError> {
        let mut rng = seeded(self.bounds.seed, 0, 0x3a);
        let atoms: Vec<&str> = self.atoms.iter().map(|a| a.as_str()).collect();
        for n in 1..=max_worlds {
            let (ms, _) =
                pool_of_size(&self.minimal_spec, None, n, &atoms, self.bounds.exhaustive_limit, samples, &mut rng)?;
            self.minimal_pool.extend(ms);
        }
        Ok(self)
    }

    /// Adds a streamed stage of minimal models with `size` worlds, tried
    /// after the pool: all of them if there are at most `limit` candidates,
    /// else `samples` random ones.
    pub fn with_minimal_stage(mut self, size: usize, limit: u128, samples: usize) -> Companion {
        self.stages.push(Stage { size, limit, samples });
        self
    }

    fn stage_models(&self, k: usize) -> Result<Box<dyn Iterator<Item = Result<Model, CliError>> + '_>, CliError> {
        let st = self.stages[k];
        let atoms: Vec<&str> = self.atoms.iter().map(|a| a.as_str()).collect();
        let n = st.size;
        match candidates_of_size(&self.minimal_spec, n, &atoms) {
            Some(c) if c <= st.limit => {
                let it = enumerate_models(&self.minimal_spec, n, &atoms)?.filter(move |m| m.size() == n).map(Ok);
                Ok(Box::new(it))
            }
            _ => {
                let mut rng = seeded(self.bounds.seed, n, 0x3b ^ k as u64);
                let it = (0..st.samples).map(move |_| {
                    let atoms: Vec<&str> = self.atoms.iter().map(|a| a.as_str()).collect();
                    Ok(random_model_with_stats(&self.minimal_spec, n, &atoms, &mut rng)?.0)
                });
                Ok(Box::new(it))
            }
        }
    }

    /// Resolves open formulas against one stage, shrinking the shared
    /// evaluation table as formulas are resolved.
    fn run_stage(&self, k: usize, fs: &[&Formula], found: &mut [Option<Hit>]) -> Result<(), CliError> {
        let build = |found: &[Option<Hit>]| {
            let mut t = FormulaTable::<Formula>::new();
            let open: Vec<(usize, usize)> =
                (0..fs.len()).filter(|&j| found[j].is_none()).map(|j| (j, t.insert(fs[j]))).collect();
            (t, open)
        };
        let (mut table, mut open) = build(found);
        let mut resolved = 0;
        for m in self.stage_models(k)? {
            if open.is_empty() {
                break;
            }
            let m = m?;
            let ext = table.extensions(&m)?;
            for &(j, id) in &open {
                let missing = m.all() & !ext[id];
                if missing != 0 && found[j].is_none() {
                    found[j] = Some(Hit::Owned(PointedModel { model: m.clone(), world: missing.trailing_zeros() as World }));
                    resolved += 1;
                }
            }
            if resolved > 0 && 2 * resolved >= open.len() {
                (table, open) = build(found);
                resolved = 0;
            }
        }
        Ok(())
    }

    pub fn logic(&self) -> LogicId {
        self.logic
    }

    pub fn fusion_models(&self) -> usize {
        self.fusion_pool.len()
    }

    fn no_countermodel(&self) -> FusionEvidence {
        FusionEvidence::NoCountermodel {
            models: self.fusion_pool.len(),
            exhaustive_up_to: self.exhaustive_up_to,
            max_worlds: self.bounds.fusion_max_worlds,
        }
    }

    fn minimal_sequent(f: &Formula) -> Sequent {
        Sequent::goal(f.clone())
    }

    fn decide(&self, f: &Formula) -> Result<Verdict, CliError> {
        Ok(decide(self.calculus, &Self::minimal_sequent(f), self.bounds.budget)?.0)
    }

    fn report(&self, f: &Formula, tr: &BiFormula, minimal: Verdict) -> CompanionReport {
        CompanionReport {
            logic: self.logic.name(),
            formula: f.to_string(),
            minimal,
            minimal_countermodel: None,
            translation: tr.to_string(),
            evidence: FusionEvidence::None,
            verdict: CompanionVerdict::Inconclusive,
            note: String::new(),
        }
    }

    fn fusion_countermodel(&self, tr: &BiFormula) -> Result<Option<(Model, World)>, CliError> {
        for m in &self.fusion_pool {
            let missing = m.all() & !tr.extension(m)?;
            if missing != 0 {
                return Ok(Some((m.clone(), missing.trailing_zeros() as World)));
            }
        }
        Ok(None)
    }

    /// Finishes a refuted formula given its minimal countermodel (if any).
    fn transfer(&self, r: &mut CompanionReport, tr: &BiFormula, cm: Option<PointedModel>) -> Result<(), CliError> {
        let Some(cm) = cm else {
            // Weaker evidence: a fusion countermodel found directly.
            match self.fusion_countermodel(tr)? {
                Some((model, world)) => {
                    r.evidence = FusionEvidence::Countermodel { model, world, from_minimal: false };
                    r.verdict = CompanionVerdict::Consistent;
                    r.note = "no minimal countermodel within bounds; tr(A) fails in a fusion model".into();
                }
                None => {
                    r.evidence = self.no_countermodel();
                    r.note = "no countermodel on either side within bounds".into();
                }
            }
            return Ok(());
        };
        let image = to_fusion(&cm.model)?;
        let wf = check_wellformed(&image, &self.fusion_spec);
        let fails = !forces(&image, cm.world, tr)?;
        r.verdict = if wf.ok && fails { CompanionVerdict::Consistent } else { CompanionVerdict::Inconsistent };
        r.note = match (wf.ok, fails) {
            (true, true) => "the minimal countermodel maps to a fusion countermodel of tr(A)".into(),
            (false, _) => format!("image of the countermodel is not a fusion model: {:?}", wf.first()),
            (true, false) => "image of the countermodel forces tr(A) at the refuting world".into(),
        };
        r.evidence = FusionEvidence::Countermodel { model: image, world: cm.world, from_minimal: true };
        r.minimal_countermodel = Some(cm);
        Ok(())
    }

    fn search_minimal(&self, f: &Formula) -> Result<Option<PointedModel>, CliError> {
        for m in &self.minimal_pool {
            let missing = m.all() & !f.extension(m)?;
            if missing != 0 {
                return Ok(Some(PointedModel { model: m.clone(), world: missing.trailing_zeros() as World }));
            }
        }
        for k in 0..self.stages.len() {
            for m in self.stage_models(k)? {
                let m = m?;
                let missing = m.all() & !f.extension(&m)?;
                if missing != 0 {
                    return Ok(Some(PointedModel { model: m, world: missing.trailing_zeros() as World }));
                }
            }
        }
        let b = CountermodelBounds { seed: self.bounds.seed, ..self.bounds.countermodel };
        Ok(countermodel_search(self.logic, f, &b)?.map(|c| PointedModel { model: c.model, world: c.world }))
    }

    pub fn check(&self, f: &Formula) -> Result<CompanionReport, CliError> {
        let tr = goedel_johansson(f);
        let v = self.decide(f)?;
        let mut r = self.report(f, &tr, v);
        match v {
            Verdict::Proved => match self.fusion_countermodel(&tr)? {
                Some((model, world)) => {
                    r.evidence = FusionEvidence::Countermodel { model, world, from_minimal: false };
                    r.verdict = CompanionVerdict::Inconsistent;
                    r.note = "A is provable but tr(A) fails in a fusion model".into();
                }
                None => {
                    r.evidence = self.no_countermodel();
                    r.verdict = CompanionVerdict::Consistent;
                    r.note = "no fusion countermodel of tr(A) within bounds".into();
                }
            },
            Verdict::Refuted => {
                let cm = self.search_minimal(f)?;
                self.transfer(&mut r, &tr, cm)?;
            }
            Verdict::Exhausted => r.note = "proof search exhausted its budget".into(),
        }
        Ok(r)
    }

    /// Checks a whole corpus, evaluating each pool model once over the
    /// shared subformulas of all formulas concerned.
    pub fn check_corpus(&self, fs: &[Formula]) -> Result<CorpusSummary, CliError> {
        let mut s = CorpusSummary {
            formulas: fs.len(),
            fusion_models: self.fusion_pool.len(),
            minimal_models: self.minimal_pool.len(),
            ..CorpusSummary::default()
        };
        let verdicts = fs.iter().map(|f| self.decide(f)).collect::<Result<Vec<_>, _>>()?;
        let proved: Vec<usize> = (0..fs.len()).filter(|&i| verdicts[i] == Verdict::Proved).collect();
        let refuted: Vec<usize> = (0..fs.len()).filter(|&i| verdicts[i] == Verdict::Refuted).collect();
        s.proved = proved.len();
        s.refuted = refuted.len();
        s.exhausted = fs.len() - s.proved - s.refuted;

        // Proved: tr(A) must hold throughout every fusion model in the pool.
        let mut table = FormulaTable::<BiFormula>::new();
        let trs: Vec<BiFormula> = proved.iter().map(|&i| goedel_johansson(&fs[i])).collect();
        let ids: Vec<usize> = trs.iter().map(|t| table.insert(t)).collect();
        let mut refuted_tr: Vec<Option<(usize, World)>> = vec![None; proved.len()];
        for (k, m) in self.fusion_pool.iter().enumerate() {
            let ext = table.extensions(m)?;
            for (j, &id) in ids.iter().enumerate() {
                let missing = m.all() & !ext[id];
                if missing != 0 && refuted_tr[j].is_none() {
                    refuted_tr[j] = Some((k, missing.trailing_zeros() as World));
                }
            }
        }
        drop(table);
        for (j, &i) in proved.iter().enumerate() {
            match refuted_tr[j] {
                Some((k, world)) => {
                    let mut r = self.report(&fs[i], &trs[j], Verdict::Proved);
                    r.evidence = FusionEvidence::Countermodel { model: self.fusion_pool[k].clone(), world, from_minimal: false };
                    r.verdict = CompanionVerdict::Inconsistent;
                    r.note = "A is provable but tr(A) fails in a fusion model".into();
                    s.inconsistent += 1;
                    s.exceptions.push(r);
                }
                None => s.consistent += 1,
            }
        }

        // Refuted: find a minimal countermodel, then transfer it.
        let mut table = FormulaTable::<Formula>::new();
        let ids: Vec<usize> = refuted.iter().map(|&i| table.insert(&fs[i])).collect();
        let mut found: Vec<Option<Hit>> = (0..refuted.len()).map(|_| None).collect();
        let mut open = refuted.len();
        for (k, m) in self.minimal_pool.iter().enumerate() {
            if open == 0 {
                break;
            }
            let ext = table.extensions(m)?;
            for (j, &id) in ids.iter().enumerate() {
                let missing = m.all() & !ext[id];
                if missing != 0 && found[j].is_none() {
                    found[j] = Some(Hit::Pool(k, missing.trailing_zeros() as World));
                    open -= 1;
                }
            }
        }
        drop(table);
        let rfs: Vec<&Formula> = refuted.iter().map(|&i| &fs[i]).collect();
        for k in 0..self.stages.len() {
            if found.iter().all(|h| h.is_some()) {
                break;
            }
            self.run_stage(k, &rfs, &mut found)?;
        }
        let mut images: Vec<Option<(Model, bool)>> = vec![None; self.minimal_pool.len()];
        for (j, &i) in refuted.iter().enumerate() {
            let f = &fs[i];
            let tr = goedel_johansson(f);
            let ok = match &found[j] {
                Some(Hit::Pool(k, world)) => {
                    let k = *k;
                    if images[k].is_none() {
                        let image = to_fusion(&self.minimal_pool[k])?;
                        let wf = check_wellformed(&image, &self.fusion_spec).ok;
                        images[k] = Some((image, wf));
                    }
                    let (image, wf) = images[k].as_ref().expect("image computed");
                    *wf && !forces(image, *world, &tr)?
                }
                _ => false,
            };
            if ok {
                s.consistent += 1;
                s.transferred += 1;
                continue;
            }
            // Slow path: rebuild the full report.
            let cm = match found[j].take() {
                Some(Hit::Pool(k, world)) => Some(PointedModel { model: self.minimal_pool[k].clone(), world }),
                Some(Hit::Owned(pm)) => Some(pm),
                None => {
                    s.searched += 1;
                    let b = CountermodelBounds { seed: self.bounds.seed, ..self.bounds.countermodel };
                    countermodel_search(self.logic, f, &b)?.map(|c| PointedModel { model: c.model, world: c.world })
                }
            };
            let mut r = self.report(f, &tr, Verdict::Refuted);
            self.transfer(&mut r, &tr, cm)?;
            match r.verdict {
                CompanionVerdict::Consistent => {
                    s.consistent += 1;
                    if r.minimal_countermodel.is_some() {
                        s.transferred += 1;
                    } else {
                        s.exceptions.push(r);
                    }
                }
                CompanionVerdict::Inconsistent => {
                    s.inconsistent += 1;
                    s.exceptions.push(r);
                }
                CompanionVerdict::Inconclusive => {
                    s.inconclusive += 1;
                    s.exceptions.push(r);
                }
            }
        }
        for (i, v) in verdicts.iter().enumerate() {
            if *v == Verdict::Exhausted {
                let mut r = self.report(&fs[i], &goedel_johansson(&fs[i]), *v);
                r.note = "proof search exhausted its budget".into();
                s.inconclusive += 1;
                s.exceptions.push(r);
            }
        }
        Ok(s)
    }
}

/// One-off check of `f` against the companion of `l`.
pub fn companion_check(l: LogicId, f: &Formula, bounds: &CompanionBounds) -> Result<CompanionReport, CliError> {
    let atoms = f.atoms();
    let atoms: Vec<&str> = atoms.iter().map(|a| &**a).collect();
    Companion::with_atoms(l, &atoms, *bounds)?.check(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use minmodal::formula::parse;

    fn small() -> CompanionBounds {
        CompanionBounds { fusion_max_worlds: 2, ..CompanionBounds::default() }
    }

    #[test]
    fn k_axiom_is_consistent() {
        let f = parse("box (p -> q) -> (box p -> box q)").unwrap();
        let r = companion_check(LogicId::mk(), &f, &small()).unwrap();
        assert_eq!(r.minimal, Verdict::Proved);
        assert_eq!(r.verdict, CompanionVerdict::Consistent);
        assert!(matches!(r.evidence, FusionEvidence::NoCountermodel { exhaustive_up_to: 2, .. }));
    }

    #[test]
    fn efq_transfers_its_countermodel() {
        let f = parse("bot -> p").unwrap();
        let r = companion_check(LogicId::mk(), &f, &small()).unwrap();
        assert_eq!(r.minimal, Verdict::Refuted);
        assert_eq!(r.verdict, CompanionVerdict::Consistent);
        assert_eq!(r.translation, "box1 (box1 f -> box1 p)");
        let FusionEvidence::Countermodel { model, world, from_minimal: true } = &r.evidence else {
            panic!("{:?}", r.evidence)
        };
        assert!(!forces(model, *world, &goedel_johansson(&f)).unwrap());
    }

    #[test]
    fn identity_and_unsupported() {
        let r = companion_check(LogicId::mk(), &parse("p -> p").unwrap(), &small()).unwrap();
        assert_eq!(r.verdict, CompanionVerdict::Consistent);
        assert!(companion_check(LogicId::ck(), &parse("p").unwrap(), &small()).is_err());
    }

    #[test]
    fn corpus_matches_single_checks() {
        let fs = minmodal::formula::enumerate_formulas(&["p"], 3, 1);
        for l in ["MK", "MMT"] {
            let c = Companion::new(l.parse().unwrap(), small()).unwrap().with_minimal_pool(2, 50).unwrap();
            let s = c.check_corpus(&fs).unwrap();
            assert_eq!(s.inconsistent, 0, "{:?}", s.exceptions.first());
            let mut consistent = 0;
            for f in &fs {
                let r = c.check(f).unwrap();
                assert_ne!(r.verdict, CompanionVerdict::Inconsistent, "{r:?}");
                consistent += (r.verdict == CompanionVerdict::Consistent) as usize;
            }
            assert_eq!(consistent, s.consistent);
        }
    }
}

//! Exhaustive enumeration of labelled models and seeded random generation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::wellformed::{check_wellformed, local_ok};
use super::{bit, members, preorder_closure, reserved_atom, ClassSpec, Model, ModelKind, SemanticsError, World};
use crate::logics::{PropBase, Sigma};

/// Largest enumerable size for models with neighbourhoods.
pub const NEIGHBOURHOOD_CAP: usize = 3;
/// Largest enumerable size for relational and birelational models.
pub const RELATIONAL_CAP: usize = 4;
const MAX_ATTEMPTS: usize = 10_000;

fn cap(kind: ModelKind) -> usize {
    if kind.has_nbhd() {
        NEIGHBOURHOOD_CAP
    } else {
        RELATIONAL_CAP
    }
}

/// All preorders on `n` worlds, as successor sets.
pub(crate) fn preorders(n: usize) -> Vec<Vec<u64>> {
    let off: Vec<(World, World)> = (0..n).flat_map(|a| (0..n).filter(move |b| *b != a).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << off.len() {
        let mut r: Vec<u64> = (0..n).map(bit).collect();
        for (i, (a, b)) in off.iter().enumerate() {
            if mask >> i & 1 == 1 {
                r[*a] |= bit(*b);
            }
        }
        if preorder_closure(&r) == r {
            out.push(r);
        }
    }
    out
}

fn up_closure(leq: &[u64], s: u64) -> u64 {
    members(s).fold(s, |a, w| a | leq[w])
}

fn upsets(leq: &[u64]) -> Vec<u64> {
    (0u64..1 << leq.len()).filter(|s| up_closure(leq, *s) == *s).collect()
}

fn decode_family(n: usize, fam: u64) -> Vec<u64> {
    (0u64..1 << n).filter(|a| fam >> a & 1 == 1).collect()
}

/// One block of the enumeration: fixed size, kind and ≤.
struct Space {
    kind: ModelKind,
    leq: Vec<u64>,
    atoms: Vec<String>,
    /// Choices per component: F, then one per atom, then one per world (R or N).
    comps: Vec<Vec<u64>>,
    counter: Vec<usize>,
    done: bool,
}

impl Space {
    fn new(spec: &ClassSpec, kind: ModelKind, leq: Vec<u64>, atoms: &[String]) -> Space {
        let n = leq.len();
        let mut comps = Vec::new();
        let ups = upsets(&leq);
        comps.push(if spec.infallible() || kind.is_fusion() { vec![0] } else { ups.clone() });
        let mut names = atoms.to_vec();
        if kind.is_fusion() && !names.iter().any(|a| a == reserved_atom()) {
            names.push(reserved_atom().to_string());
        }
        for _ in &names {
            comps.push(if kind.is_fusion() { (0u64..1 << n).collect() } else { ups.clone() });
        }
        if kind.has_rel() {
            for _ in 0..n {
                comps.push((0u64..1 << n).collect());
            }
        }
        if kind.has_nbhd() {
            let sigma = spec.conditions();
            for w in 0..n {
                comps.push((0u64..1 << (1u64 << n)).filter(|f| local_ok(sigma, w, &decode_family(n, *f))).collect());
            }
        }
        let done = comps.iter().any(|c| c.is_empty());
        Space { kind, leq, atoms: names, counter: vec![0; comps.len()], comps, done }
    }

    fn size(&self) -> u128 {
        self.comps.iter().map(|c| c.len() as u128).product()
    }

    fn current(&self) -> Model {
        let n = self.leq.len();
        let pick = |i: usize| self.comps[i][self.counter[i]];
        let mut m = Model::new(self.kind, n);
        m.leq = self.leq.clone();
        m.fallible = pick(0);
        for (i, a) in self.atoms.iter().enumerate() {
            m.val.insert(a.clone(), pick(1 + i));
        }
        let base = 1 + self.atoms.len();
        for w in 0..n {
            if self.kind.has_rel() {
                m.rel[w] = pick(base + w);
            }
            if self.kind.has_nbhd() {
                m.nbhd[w] = decode_family(n, pick(base + w));
            }
        }
        m
    }

    fn advance(&mut self) {
        for i in (0..self.counter.len()).rev() {
            self.counter[i] += 1;
            if self.counter[i] < self.comps[i].len() {
                return;
            }
            self.counter[i] = 0;
        }
        self.done = true;
    }
}

/// Lazily enumerated wellformed models of a class, smallest first.
pub struct ModelStream {
    spec: ClassSpec,
    atoms: Vec<String>,
    plan: Vec<(ModelKind, Vec<u64>)>,
    next: usize,
    space: Option<Space>,
    /// Candidate structures examined so far.
    pub candidates: u64,
}

impl Iterator for ModelStream {
    type Item = Model;

    fn next(&mut self) -> Option<Model> {
        loop {
            if self.space.as_ref().is_none_or(|s| s.done) {
                let (kind, leq) = self.plan.get(self.next)?.clone();
                self.next += 1;
                self.space = Some(Space::new(&self.spec, kind, leq, &self.atoms));
                continue;
            }
            let s = self.space.as_mut().expect("space present");
            let m = s.current();
            s.advance();
            self.candidates += 1;
            if check_wellformed(&m, &self.spec).ok {
                return Some(m);
            }
        }
    }
}

fn plan(spec: &ClassSpec, sizes: impl Iterator<Item = usize>) -> Vec<(ModelKind, Vec<u64>)> {
    let mut out = Vec::new();
    for n in sizes {
        for kind in spec.model_kinds() {
            if spec.discrete() {
                out.push((kind, (0..n).map(bit).collect()));
            } else {
                out.extend(preorders(n).into_iter().map(|p| (kind, p)));
            }
        }
    }
    out
}

fn names(atoms: &[&str]) -> Vec<String> {
    atoms.iter().map(|a| a.to_string()).collect()
}

/// Every wellformed labelled model of `spec` with 1 to `max_worlds` worlds
/// over exactly the given atoms (fusion models also interpret f).
pub fn enumerate_models(spec: &ClassSpec, max_worlds: usize, atoms: &[&str]) -> Result<ModelStream, SemanticsError> {
    for kind in spec.model_kinds() {
        if max_worlds > cap(kind) {
            return Err(SemanticsError::Cap { kind, cap: cap(kind) });
        }
    }
    Ok(stream(spec, 1..=max_worlds, atoms))
}

pub(crate) fn stream(spec: &ClassSpec, sizes: impl Iterator<Item = usize>, atoms: &[&str]) -> ModelStream {
    ModelStream { spec: *spec, atoms: names(atoms), plan: plan(spec, sizes), next: 0, space: None, candidates: 0 }
}

/// Number of candidate structures of exactly `n` worlds (before the
/// wellformedness filter), or `None` past the caps.
pub fn candidates_of_size(spec: &ClassSpec, n: usize, atoms: &[&str]) -> Option<u128> {
    if spec.model_kinds().iter().any(|k| n > cap(*k)) {
        return None;
    }
    let atoms = names(atoms);
    Some(plan(spec, std::iter::once(n)).into_iter().map(|(k, p)| Space::new(spec, k, p, &atoms).size()).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SamplingStats {
    /// Candidates drawn, including the accepted one.
    pub attempts: usize,
}

/// A random wellformed model of `spec` with `size` worlds, reproducible from `seed`.
pub fn random_model(spec: &ClassSpec, size: usize, atoms: &[&str], seed: u64) -> Result<Model, SemanticsError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_model_with_stats(spec, size, atoms, &mut rng).map(|(m, _)| m)
}

/// Rejection sampling from a generator biased towards the class conditions.
pub fn random_model_with_stats<R: Rng + ?Sized>(
    spec: &ClassSpec,
    size: usize,
    atoms: &[&str],
    rng: &mut R,
) -> Result<(Model, SamplingStats), SemanticsError> {
    if size == 0 || size > super::MAX_WORLDS {
        return Err(SemanticsError::IllFormed(format!("cannot sample a model with {size} worlds")));
    }
    let kinds = spec.model_kinds();
    let mut last = String::new();
    for attempt in 1..=MAX_ATTEMPTS {
        let kind = kinds[rng.gen_range(0..kinds.len())];
        let m = candidate(spec, kind, size, atoms, rng);
        let r = check_wellformed(&m, spec);
        if r.ok {
            return Ok((m, SamplingStats { attempts: attempt }));
        }
        if let Some(v) = r.first() {
            last = format!("{}: {}", v.condition, v.witness);
        }
    }
    Err(SemanticsError::Sampling { attempts: MAX_ATTEMPTS, last })
}

fn random_set<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> u64 {
    (0..n).filter(|_| rng.gen_bool(p)).fold(0, |s, w| s | bit(w))
}

fn candidate<R: Rng + ?Sized>(spec: &ClassSpec, kind: ModelKind, n: usize, atoms: &[&str], rng: &mut R) -> Model {
    let mut m = Model::new(kind, n);
    let all = m.all();
    if !spec.discrete() {
        for a in 0..n {
            for b in 0..n {
                if a != b && rng.gen_bool(0.3) {
                    m.leq[a] |= bit(b);
                }
            }
        }
        m.leq = preorder_closure(&m.leq);
    }
    if !spec.infallible() && !kind.is_fusion() && rng.gen_bool(0.5) {
        m.fallible = up_closure(&m.leq, random_set(rng, n, 0.4));
    }
    let f = m.fallible;
    let ex_falso = spec.constructive() || spec.logic.base == Some(PropBase::Ipl);
    let mut names: Vec<String> = names(atoms);
    if kind.is_fusion() && !names.iter().any(|a| a == reserved_atom()) {
        names.push(reserved_atom().to_string());
    }
    for p in names {
        let s = random_set(rng, n, 0.5);
        let s = if kind.is_fusion() { s } else { up_closure(&m.leq, s) };
        m.val.insert(p, if ex_falso { s | f } else { s });
    }
    if kind.has_rel() {
        for w in 0..n {
            m.rel[w] = random_set(rng, n, 0.4);
            if spec.constructive() && f >> w & 1 == 1 {
                m.rel[w] &= f;
                if m.rel[w] == 0 {
                    let fs: Vec<World> = members(f).collect();
                    m.rel[w] = bit(fs[rng.gen_range(0..fs.len())]);
                }
            }
        }
    }
    if kind.has_nbhd() {
        let sigma = spec.conditions();
        for w in 0..n {
            m.nbhd[w] = random_family(rng, sigma, w, n, all, spec.constructive().then_some(f).filter(|f| f >> w & 1 == 1));
        }
        m.normalize();
    }
    m
}

fn random_family<R: Rng + ?Sized>(rng: &mut R, sigma: Sigma, w: World, n: usize, all: u64, fallible: Option<u64>) -> Vec<u64> {
    let anchor = (sigma.has(Sigma::D) && rng.gen_bool(0.5)).then(|| if sigma.has(Sigma::T) { w } else { rng.gen_range(0..n) });
    let fix = |mut a: u64, rng: &mut R| {
        if sigma.has(Sigma::T) {
            a |= bit(w);
        }
        if let Some(x) = anchor {
            a |= bit(x);
        }
        if a == 0 && (sigma.has(Sigma::P) || sigma.has(Sigma::D)) {
            a = bit(rng.gen_range(0..n));
        }
        a & all
    };
    let k = rng.gen_range(0..=3);
    let mut fam = Vec::new();
    for _ in 0..k {
        let a = random_set(rng, n, 0.5);
        fam.push(fix(a, rng));
    }
    if sigma.has(Sigma::N) && fam.is_empty() {
        let a = random_set(rng, n, 0.5);
        fam.push(fix(a, rng));
    }
    if let Some(f) = fallible {
        let fs: Vec<World> = members(f).collect();
        for a in &mut fam {
            if *a & f == 0 {
                *a |= bit(fs[rng.gen_range(0..fs.len())]);
            }
        }
        let inner = random_set(rng, n, 0.5) & f;
        fam.push(if inner == 0 { bit(w) } else { inner | if sigma.has(Sigma::T) { bit(w) } else { 0 } });
    }
    if sigma.has(Sigma::C) {
        loop {
            let mut grown = false;
            for i in 0..fam.len() {
                for j in 0..fam.len() {
                    let c = fam[i] & fam[j];
                    if !fam.contains(&c) {
                        fam.push(c);
                        grown = true;
                    }
                }
            }
            if !grown {
                break;
            }
        }
    }
    fam
}

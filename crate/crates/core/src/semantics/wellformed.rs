//! Frame and valuation conditions of each model class.

use serde::Serialize;

use super::{bit, members, reserved_atom, ClassSpec, Model, ModelKind, World};
use crate::logics::{PropBase, Sigma};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: String,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WellformedReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl WellformedReport {
    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

struct Collector<'m> {
    m: &'m Model,
    out: Vec<Violation>,
}

impl Collector<'_> {
    /// Records the first witness of a violated condition.
    fn fail(&mut self, condition: &str, witness: impl FnOnce() -> String) {
        if !self.out.iter().any(|v| v.condition == condition) {
            self.out.push(Violation { condition: condition.into(), witness: witness() });
        }
    }

}

fn lb(m: &Model, w: World) -> &str {
    m.label(w)
}

fn st(m: &Model, s: u64) -> String {
    let ls: Vec<&str> = members(s).map(|w| m.label(w)).collect();
    format!("{{{}}}", ls.join(", "))
}

/// Structural conditions every model must meet, independent of its class:
/// consistent sizes, ≤ a preorder, and (outside fusion models) F and every
/// V(p) upward closed.
pub(crate) fn structural(m: &Model) -> Vec<Violation> {
    let mut c = Collector { m, out: Vec::new() };
    base(&mut c);
    c.out
}

fn base(c: &mut Collector) {
    let m = c.m;
    let n = m.size();
    let all = m.all();
    if m.leq.len() != n
        || (m.kind.has_rel() && m.rel.len() != n)
        || (m.kind.has_nbhd() && m.nbhd.len() != n)
        || m.leq.iter().chain(&m.rel).chain(m.nbhd.iter().flatten()).chain(m.val.values()).any(|s| s & !all != 0)
        || m.fallible & !all != 0
    {
        c.fail("shape", || "relation or set mentions a world outside W".into());
        return;
    }
    for w in 0..n {
        if m.leq[w] & bit(w) == 0 {
            c.fail("reflexivity", || format!("not {0} ≤ {0}", lb(m, w)));
        }
        for v in members(m.leq[w]) {
            for u in members(m.leq[v] & !m.leq[w]) {
                c.fail("transitivity", || format!("{} ≤ {} ≤ {} but not {} ≤ {}", lb(m, w), lb(m, v), lb(m, u), lb(m, w), lb(m, u)));
            }
        }
    }
    if m.kind.is_fusion() {
        if m.fallible != 0 {
            c.fail("no fallible worlds", || format!("fusion model with F = {}", st(m, m.fallible)));
        }
        return;
    }
    let up_violation = |s: u64| -> Option<(World, World)> {
        (0..n).filter(|w| s & bit(*w) != 0).find_map(|w| members(m.leq[w] & !s).next().map(|v| (w, v)))
    };
    if let Some((w, v)) = up_violation(m.fallible) {
        c.fail("F upward closed", || format!("{} ∈ F, {} ≤ {}, {} ∉ F", lb(m, w), lb(m, w), lb(m, v), lb(m, v)));
    }
    for (p, s) in &m.val {
        if p == reserved_atom() {
            c.fail("reserved atom", || format!("valuation assigns the companion atom {p}"));
        }
        if let Some((w, v)) = up_violation(*s) {
            c.fail(&format!("heredity of {p}"), || format!("{} ∈ V({p}), {} ≤ {}, {} ∉ V({p})", lb(m, w), lb(m, w), lb(m, v), lb(m, v)));
        }
    }
}

/// Checks `m` against the class `spec`, listing each violated condition once
/// with its first witness.
pub fn check_wellformed(m: &Model, spec: &ClassSpec) -> WellformedReport {
    let mut c = Collector { m, out: Vec::new() };
    if !spec.model_kinds().contains(&m.kind) {
        c.fail("model kind", || format!("{} model, class admits {:?}", m.kind, spec.model_kinds().iter().map(|k| k.name()).collect::<Vec<_>>()));
    }
    base(&mut c);
    if c.out.iter().any(|v| v.condition == "shape") {
        return WellformedReport { ok: false, violations: c.out };
    }
    let n = m.size();
    let f = m.fallible;
    if spec.discrete() {
        if let Some(w) = (0..n).find(|w| m.leq[*w] != bit(*w)) {
            c.fail("≤ is the identity", || format!("{} has ≤-successors {}", lb(m, w), st(m, m.leq[w])));
        }
    }
    if spec.infallible() && f != 0 {
        c.fail("F = ∅", || format!("F = {}", st(m, f)));
    }
    let constructive = spec.constructive() || spec.logic.base == Some(PropBase::Ipl);
    if constructive {
        for w in members(f) {
            for (p, s) in &m.val {
                if s & bit(w) == 0 {
                    c.fail("(i)", || format!("{} ∈ F but {} ∉ V({p})", lb(m, w), lb(m, w)));
                }
            }
        }
    }
    if spec.constructive() && m.kind == ModelKind::Birelational {
        for w in members(f) {
            if let Some(v) = members(m.rel[w] & !f).next() {
                c.fail("(ii)", || format!("{} ∈ F, {} R {}, {} ∉ F", lb(m, w), lb(m, w), lb(m, v), lb(m, v)));
            }
            if m.rel[w] == 0 {
                c.fail("(iii)", || format!("{} ∈ F has no R-successor", lb(m, w)));
            }
        }
    }
    if spec.constructive() && m.kind == ModelKind::Neighbourhood {
        for w in members(f) {
            if !m.nbhd[w].iter().any(|a| a & !f == 0) {
                c.fail("(ii)", || format!("{} ∈ F but no α ∈ N({}) lies inside F", lb(m, w), lb(m, w)));
            }
            if let Some(a) = m.nbhd[w].iter().find(|a| *a & f == 0) {
                c.fail("(iii)", || format!("{} ∈ F but {} ∈ N({}) misses F", lb(m, w), st(m, *a), lb(m, w)));
            }
        }
    }
    if m.kind.has_nbhd() {
        let sigma = spec.conditions();
        for w in 0..n {
            neighbourhood_conditions(&mut c, sigma, w);
        }
    }
    WellformedReport { ok: c.out.is_empty(), violations: c.out }
}

/// The local conditions (cX) at one world.
pub(crate) fn local_ok(sigma: Sigma, w: World, nw: &[u64]) -> bool {
    local_first_violation(sigma, w, nw).is_none()
}

fn local_first_violation(sigma: Sigma, w: World, nw: &[u64]) -> Option<(&'static str, u64, u64)> {
    if sigma.has(Sigma::N) && nw.is_empty() {
        return Some(("(cN)", 0, 0));
    }
    for &a in nw {
        if sigma.has(Sigma::P) && a == 0 {
            return Some(("(cP)", a, a));
        }
        if sigma.has(Sigma::T) && a & bit(w) == 0 {
            return Some(("(cT)", a, a));
        }
        for &b in nw {
            if sigma.has(Sigma::C) && !nw.contains(&(a & b)) {
                return Some(("(cC)", a, b));
            }
            if sigma.has(Sigma::D) && a & b == 0 {
                return Some(("(cD)", a, b));
            }
        }
    }
    None
}

fn neighbourhood_conditions(c: &mut Collector, sigma: Sigma, w: World) {
    let m = c.m;
    let nw = &m.nbhd[w];
    for x in [Sigma::C, Sigma::N, Sigma::P, Sigma::D, Sigma::T] {
        if !sigma.has(x) {
            continue;
        }
        if let Some((name, a, b)) = local_first_violation(x, w, nw) {
            let lw = lb(m, w).to_string();
            let (sa, sb) = (st(m, a), st(m, b));
            c.fail(name, || match name {
                "(cN)" => format!("N({lw}) = ∅"),
                "(cP)" => format!("∅ ∈ N({lw})"),
                "(cT)" => format!("{sa} ∈ N({lw}) does not contain {lw}"),
                "(cC)" => format!("{sa}, {sb} ∈ N({lw}) but their intersection is not"),
                _ => format!("{sa}, {sb} ∈ N({lw}) are disjoint"),
            });
        }
    }
}

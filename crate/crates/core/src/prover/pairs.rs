//! Random cut workloads: pairs of prover derivations Γ ⇒ A and A, Σ ⇒ C drawn
//! from templates that put A under a right rule on the left and under a left
//! or modal rule on the right.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{prove, SearchBudget};
use crate::calculi::{CalculusId, Derivation, Sequent};
use crate::formula::{random_formula, FormulaGen};
use crate::formula::Formula as F;

pub const TEMPLATES: usize = 10;

/// The sequents of template `t` for the random formulas `x`, `y`, `z`.
pub fn template(t: usize, x: &F, y: &F, z: &F) -> (Sequent, Sequent) {
    let (x, y, z) = (x.clone(), y.clone(), z.clone());
    let and = F::and;
    let s = Sequent::new;
    match t % TEMPLATES {
        0 => (
            s(vec![and(y.clone(), x.clone())], vec![and(x.clone(), y.clone())]),
            s(vec![and(x.clone(), y.clone()), z.clone()], vec![and(and(y, z), x)]),
        ),
        1 => (
            s(vec![y.clone()], vec![F::imp(x.clone(), y.clone())]),
            s(vec![F::imp(x.clone(), y.clone()), x], vec![y]),
        ),
        2 => (
            s(vec![x.clone()], vec![F::or(x.clone(), y.clone())]),
            s(vec![F::or(x.clone(), y.clone()), F::imp(x, z.clone()), F::imp(y, z.clone())], vec![z]),
        ),
        3 => (
            s(vec![F::boxed(and(y.clone(), x.clone()))], vec![F::boxed(and(x.clone(), y.clone()))]),
            s(vec![F::boxed(and(x.clone(), y))], vec![F::boxed(x)]),
        ),
        4 => (
            s(vec![F::dia(and(y.clone(), x.clone()))], vec![F::dia(and(x.clone(), y.clone()))]),
            s(vec![F::dia(and(x.clone(), y))], vec![F::dia(x)]),
        ),
        5 => (
            s(vec![F::boxed(y.clone()), F::boxed(x.clone())], vec![F::boxed(and(x.clone(), y.clone()))]),
            s(vec![F::boxed(and(x.clone(), y)), F::dia(z.clone())], vec![F::dia(and(x, z))]),
        ),
        6 => (
            s(vec![F::boxed(and(y.clone(), x.clone()))], vec![F::boxed(and(x.clone(), y.clone()))]),
            s(vec![F::boxed(and(x.clone(), y))], vec![F::dia(x)]),
        ),
        7 => {
            let a = F::boxed(F::or(x.clone(), y));
            (s(vec![F::boxed(x)], vec![a.clone()]), s(vec![a.clone(), F::imp(a, z.clone())], vec![z]))
        }
        8 => (
            s(vec![x.clone(), F::imp(x, y.clone())], vec![y.clone()]),
            s(vec![y.clone(), F::imp(y, z.clone())], vec![z]),
        ),
        _ => {
            let o = F::or(x.clone(), y);
            let a = F::dia(o.clone());
            (s(vec![x], vec![a.clone()]), s(vec![a, F::boxed(z.clone())], vec![F::dia(and(o, z))]))
        }
    }
}

fn workload_gen() -> FormulaGen {
    FormulaGen { atoms: vec!["p".into(), "q".into(), "r".into()], max_height: 2, max_modal_depth: 1, allow_bottom: true }
}

fn derive(c: CalculusId, s: &Sequent) -> Option<Derivation> {
    let b = SearchBudget { max_nodes: 200_000, ..SearchBudget::default() };
    prove(c, s, b).ok()?.derivation().cloned()
}

/// One random pair whose sequents are both derivable in `c`, from at most
/// `tries` attempts.
pub fn random_cut_pair<R: Rng + ?Sized>(c: CalculusId, rng: &mut R, tries: usize) -> Option<(Derivation, Derivation)> {
    let g = workload_gen();
    for _ in 0..tries {
        let t = rng.gen_range(0..TEMPLATES);
        let (x, y, z) = (random_formula(rng, &g), random_formula(rng, &g), random_formula(rng, &g));
        let (s1, s2) = template(t, &x, &y, &z);
        if !c.regime().admits(&s1) || !c.regime().admits(&s2) {
            continue;
        }
        if let (Some(d1), Some(d2)) = (derive(c, &s1), derive(c, &s2)) {
            return Some((d1, d2));
        }
    }
    None
}

/// `n` pairs for `c`, reproducible from `seed`.
pub fn cut_pairs(c: CalculusId, n: usize, seed: u64) -> Vec<(Derivation, Derivation)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).filter_map(|_| random_cut_pair(c, &mut rng, 1000)).collect()
}

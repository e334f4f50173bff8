//! Countermodel search: exhaustive over labelled models while the candidate
//! space of a size is small, seeded random sampling beyond that.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::generate::{candidates_of_size, random_model_with_stats, stream};
use super::{members, ClassSpec, Evaluable, Model, SemanticsError, World};
use crate::formula::Formula;
use crate::logics::LogicId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountermodelBounds {
    pub max_worlds: usize,
    /// Sizes with at most this many candidate structures are enumerated in full.
    pub exhaustive_limit: u64,
    /// Random models drawn for each larger size.
    pub samples: usize,
    pub seed: u64,
}

impl Default for CountermodelBounds {
    fn default() -> Self {
        CountermodelBounds { max_worlds: 3, exhaustive_limit: 1_000_000, samples: 20_000, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Countermodel {
    pub spec: ClassSpec,
    pub model: Model,
    pub world: World,
}

/// A model of `spec` over `atoms` and a world falsifying `f`, smallest size first.
pub fn find_countermodel<E: Evaluable>(
    spec: &ClassSpec,
    f: &E,
    atoms: &[&str],
    b: &CountermodelBounds,
) -> Result<Option<Countermodel>, SemanticsError> {
    let hit = |m: Model| -> Result<Option<Countermodel>, SemanticsError> {
        let missing = m.all() & !f.extension(&m)?;
        Ok(members(missing).next().map(|world| Countermodel { spec: *spec, model: m, world }))
    };
    for n in 1..=b.max_worlds {
        match candidates_of_size(spec, n, atoms) {
            Some(c) if c <= b.exhaustive_limit as u128 => {
                for m in stream(spec, n..=n, atoms) {
                    if let Some(c) = hit(m)? {
                        return Ok(Some(c));
                    }
                }
            }
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(b.seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                for _ in 0..b.samples {
                    let (m, _) = random_model_with_stats(spec, n, atoms, &mut rng)?;
                    if let Some(c) = hit(m)? {
                        return Ok(Some(c));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Searches the default model class of `l` for a countermodel to `f`.
pub fn countermodel_search(l: LogicId, f: &Formula, b: &CountermodelBounds) -> Result<Option<Countermodel>, SemanticsError> {
    let spec = ClassSpec::default_for(l)?;
    let atoms = f.atoms();
    let atoms: Vec<&str> = atoms.iter().map(|a| &**a).collect();
    find_countermodel(&spec, f, &atoms, b)
}

use std::sync::Arc;

use rand::Rng;

use super::Formula;

/// Shape parameters for the random formula generator.
#[derive(Debug, Clone)]
pub struct FormulaGen {
    pub atoms: Vec<String>,
    /// Maximal height of the syntax tree.
    pub max_height: usize,
    pub max_modal_depth: usize,
    pub allow_bottom: bool,
}

impl Default for FormulaGen {
    fn default() -> Self {
        FormulaGen {
            atoms: vec!["p".into(), "q".into()],
            max_height: 4,
            max_modal_depth: 2,
            allow_bottom: true,
        }
    }
}

pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, g: &FormulaGen) -> Formula {
    gen_at(rng, g, g.max_height, g.max_modal_depth)
}

fn gen_at<R: Rng + ?Sized>(rng: &mut R, g: &FormulaGen, height: usize, md: usize) -> Formula {
    let leaf = |rng: &mut R| {
        if g.allow_bottom && (g.atoms.is_empty() || rng.gen_ratio(1, 5)) {
            Formula::Bottom
        } else {
            Formula::atom(&g.atoms[rng.gen_range(0..g.atoms.len())])
        }
    };
    if height == 0 || rng.gen_ratio(1, 4) {
        return leaf(rng);
    }
    let choices = if md > 0 { 5 } else { 3 };
    match rng.gen_range(0..choices) {
        0 => Formula::and(gen_at(rng, g, height - 1, md), gen_at(rng, g, height - 1, md)),
        1 => Formula::or(gen_at(rng, g, height - 1, md), gen_at(rng, g, height - 1, md)),
        2 => Formula::imp(gen_at(rng, g, height - 1, md), gen_at(rng, g, height - 1, md)),
        3 => Formula::boxed(gen_at(rng, g, height - 1, md - 1)),
        _ => Formula::dia(gen_at(rng, g, height - 1, md - 1)),
    }
}

/// All formulas over `atoms` with at most `max_connectives` connectives and
/// modal depth at most `max_modal_depth`, ordered by connective count.
///
/// `bot` counts as a nullary connective; atoms count as zero. Derived
/// connectives are not primitive, so `~p` is the two-connective `p -> bot`.
pub fn enumerate_formulas(
    atoms: &[&str],
    max_connectives: usize,
    max_modal_depth: usize,
) -> Vec<Formula> {
    // table[n][d]: formulas with exactly n connectives and modal depth <= d.
    let mut table: Vec<Vec<Vec<Arc<Formula>>>> = Vec::new();
    for n in 0..=max_connectives {
        let mut row = Vec::new();
        for d in 0..=max_modal_depth {
            let mut cell: Vec<Arc<Formula>> = Vec::new();
            if n == 0 {
                cell.extend(atoms.iter().map(|a| Arc::new(Formula::atom(a))));
            }
            if n == 1 {
                cell.push(Arc::new(Formula::Bottom));
            }
            if n >= 1 {
                for k in 0..n {
                    let (ls, rs) = (&table[k][d], &table[n - 1 - k][d]);
                    for l in ls.iter() {
                        for r in rs.iter() {
                            cell.push(Arc::new(Formula::And(l.clone(), r.clone())));
                            cell.push(Arc::new(Formula::Or(l.clone(), r.clone())));
                            cell.push(Arc::new(Formula::Imp(l.clone(), r.clone())));
                        }
                    }
                }
                if d > 0 {
                    for a in table[n - 1][d - 1].iter() {
                        cell.push(Arc::new(Formula::Box(a.clone())));
                        cell.push(Arc::new(Formula::Dia(a.clone())));
                    }
                }
            }
            row.push(cell);
        }
        table.push(row);
    }
    table
        .into_iter()
        .flat_map(|mut row| row.pop().unwrap_or_default())
        .map(|a| Arc::try_unwrap(a).unwrap_or_else(|a| (*a).clone()))
        .collect()
}

/// Number of formulas `enumerate_formulas` yields, without building them.
pub fn count_formulas(atoms: usize, max_connectives: usize, max_modal_depth: usize) -> u64 {
    let mut c = vec![vec![0u64; max_modal_depth + 1]; max_connectives + 1];
    for n in 0..=max_connectives {
        for d in 0..=max_modal_depth {
            let mut t = match n {
                0 => atoms as u64,
                1 => 1,
                _ => 0,
            };
            for k in 0..n {
                t += 3 * c[k][d] * c[n - 1 - k][d];
            }
            if n >= 1 && d > 0 {
                t += 2 * c[n - 1][d - 1];
            }
            c[n][d] = t;
        }
    }
    c.iter().map(|row| row[max_modal_depth]).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    // Brute-force oracle: close the leaf set under all constructors and
    // filter by the two bounds.
    fn brute(max_conn: usize, max_md: usize) -> BTreeSet<Formula> {
        fn conn(f: &Formula) -> usize {
            match f {
                Formula::Atom(_) => 0,
                Formula::Bottom => 1,
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                    conn(a) + conn(b) + 1
                }
                Formula::Box(a) | Formula::Dia(a) => conn(a) + 1,
            }
        }
        let mut all: BTreeSet<Formula> = [Formula::atom("p"), Formula::Bottom].into_iter().collect();
        loop {
            let cur: Vec<_> = all.iter().cloned().collect();
            let mut next = all.clone();
            for a in &cur {
                next.insert(Formula::boxed(a.clone()));
                next.insert(Formula::dia(a.clone()));
                for b in &cur {
                    next.insert(Formula::and(a.clone(), b.clone()));
                    next.insert(Formula::or(a.clone(), b.clone()));
                    next.insert(Formula::imp(a.clone(), b.clone()));
                }
            }
            next.retain(|f| conn(f) <= max_conn && f.modal_depth() <= max_md);
            if next.len() == all.len() {
                return all;
            }
            all = next;
        }
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for (n, d) in [(2, 1), (3, 2), (3, 0)] {
            let got: BTreeSet<_> = enumerate_formulas(&["p"], n, d).into_iter().collect();
            assert_eq!(got, brute(n, d), "n={n} d={d}");
            assert_eq!(count_formulas(1, n, d), got.len() as u64);
        }
    }

    #[test]
    fn enumeration_has_no_duplicates() {
        let v = enumerate_formulas(&["p", "q"], 3, 2);
        let s: BTreeSet<_> = v.iter().cloned().collect();
        assert_eq!(v.len(), s.len());
        assert_eq!(count_formulas(2, 3, 2), v.len() as u64);
    }

    #[test]
    fn random_respects_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = FormulaGen { max_height: 5, max_modal_depth: 1, ..Default::default() };
        for _ in 0..200 {
            let f = random_formula(&mut rng, &g);
            assert!(f.modal_depth() <= 1);
        }
    }
}

use minmodal::calculi::CalculusId;
use minmodal::formula::Formula;
use minmodal::logics::{axioms_of, representative, Family, LogicId, Sigma};
use minmodal::prover::{prove_formula, SearchBudget, Verdict};
use minmodal::semantics::{
    check_wellformed, countermodel_search, enumerate_models, fallible_point, forces, from_fusion, random_model,
    to_fusion, valid_in_model, ClassSpec, CountermodelBounds, Evaluable, ModelKind, SemanticsKind,
};
use minmodal::translation::goedel_johansson;
use proptest::prelude::*;

fn arb_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        1 => Just(Formula::Bottom),
        4 => prop::sample::select(vec!["p", "q"]).prop_map(Formula::atom),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            inner.clone().prop_map(Formula::boxed),
            inner.prop_map(Formula::dia),
        ]
    })
}

fn specs() -> Vec<ClassSpec> {
    let mut v = Vec::new();
    for l in LogicId::all() {
        if l.family != Family::PropBase {
            if let Ok(s) = ClassSpec::default_for(l) {
                v.push(s);
            }
        }
        if matches!(l.family, Family::Minimal | Family::Constructive) && l.sigma == Sigma::K {
            v.push(ClassSpec::new(SemanticsKind::Neighbourhood, l).unwrap());
        }
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn heredity(f in arb_formula(), which in 0usize..64, seed in 0u64..1000, size in 1usize..=4) {
        let all = specs();
        let spec = all[which % all.len()];
        let m = random_model(&spec, size, &["p", "q"], seed).unwrap();
        prop_assert!(check_wellformed(&m, &spec).ok);
        if spec.kind != SemanticsKind::ClassicalNeighbourhood {
            let e = f.extension(&m).unwrap();
            for w in 0..m.size() {
                if e >> w & 1 == 1 {
                    prop_assert_eq!(m.leq[w] & !e, 0, "{} at {}", f, w);
                }
            }
        }
    }

    #[test]
    fn transformations_preserve_forcing(f in arb_formula(), sigma in 0usize..14, seed in 0u64..1000, size in 1usize..=3) {
        let sigma = Sigma::admissible()[sigma];
        let spec = if sigma == Sigma::K { ClassSpec::new(SemanticsKind::Birelational, LogicId::mk()).unwrap() }
            else { ClassSpec::new(SemanticsKind::Neighbourhood, LogicId::minimal(sigma)).unwrap() };
        let m = random_model(&spec, size, &["p", "q"], seed).unwrap();
        let fm = to_fusion(&m).unwrap();
        prop_assert!(check_wellformed(&fm, &ClassSpec::fusion(LogicId::minimal(sigma)).unwrap()).ok);
        for g in f.subformulas() {
            prop_assert_eq!(g.extension(&m).unwrap(), goedel_johansson(&g).extension(&fm).unwrap(), "{}", g);
        }
        let fspec = ClassSpec::fusion(LogicId::classical(sigma)).unwrap();
        let n = random_model(&fspec, size, &["p", "q"], seed).unwrap();
        let back = from_fusion(&n).unwrap();
        let mspec = ClassSpec::new(if back.kind == ModelKind::Birelational { SemanticsKind::Birelational } else { SemanticsKind::Neighbourhood }, LogicId::minimal(sigma));
        if let Ok(ms) = mspec {
            prop_assert!(check_wellformed(&back, &ms).ok);
        }
        for g in f.subformulas() {
            prop_assert_eq!(g.extension(&back).unwrap(), goedel_johansson(&g).extension(&n).unwrap(), "{}", g);
        }
    }

    #[test]
    fn proved_formulas_are_valid(f in arb_formula(), seed in 0u64..1000) {
        for l in [LogicId::mk(), LogicId::ck(), LogicId::wk(), LogicId::minimal(Sigma::EMPTY), LogicId::constructive(Sigma::T.closure())] {
            let c = CalculusId::for_logic(l).unwrap();
            let out = prove_formula(c, &f, SearchBudget { max_nodes: 200_000, ..SearchBudget::default() }).unwrap();
            if out.verdict() == Verdict::Proved {
                let spec = ClassSpec::default_for(l).unwrap();
                for k in 0..8 {
                    let m = random_model(&spec, 1 + (k % 3) as usize, &["p", "q"], seed * 8 + k).unwrap();
                    prop_assert!(valid_in_model(&m, &f).unwrap(), "{} proves {} but {:?}", c, f, m);
                }
            }
        }
    }
}

#[test]
fn axioms_are_valid_on_their_classes() {
    for l in LogicId::all() {
        if !matches!(l.family, Family::Minimal | Family::Constructive) {
            continue;
        }
        let spec = ClassSpec::default_for(l).unwrap();
        let axioms: Vec<Formula> = axioms_of(l).unwrap().iter().map(|a| representative(a)).collect();
        for seed in 0..200 {
            let m = random_model(&spec, 1 + (seed % 3) as usize, &["p", "q", "r"], seed).unwrap();
            for a in &axioms {
                assert!(valid_in_model(&m, a).unwrap(), "{l}: {a} fails on {}", m.to_json());
            }
        }
    }
}

#[test]
fn condition_iii_is_needed() {
    let m = fallible_point();
    let bad = minmodal::parse("bot -> dia p").unwrap();
    let mk = ClassSpec::new(SemanticsKind::Birelational, LogicId::mk()).unwrap();
    let ck = ClassSpec::new(SemanticsKind::Birelational, LogicId::ck()).unwrap();
    assert!(check_wellformed(&m, &mk).ok);
    assert!(!check_wellformed(&m, &ck).ok);
    assert!(!valid_in_model(&m, &bad).unwrap());
    assert!(!forces(&m, 0, &bad).unwrap());
    // Every one-world CK model validates it.
    for m in enumerate_models(&ck, 2, &["p"]).unwrap() {
        assert!(valid_in_model(&m, &bad).unwrap());
    }
}

#[test]
fn refutations_have_small_countermodels() {
    // Desk-scale agreement between loop-checked refutation and countermodel existence.
    let g = minmodal::formula::FormulaGen { atoms: vec!["p".into()], max_height: 3, max_modal_depth: 2, allow_bottom: true };
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for l in [LogicId::mk(), LogicId::ck(), LogicId::wk()] {
        let c = CalculusId::for_logic(l).unwrap();
        for _ in 0..60 {
            let f = minmodal::formula::random_formula(&mut rng, &g);
            let v = prove_formula(c, &f, SearchBudget::default()).unwrap().verdict();
            let cm = countermodel_search(l, &f, &CountermodelBounds::default()).unwrap();
            match v {
                Verdict::Proved => assert!(cm.is_none(), "{c} proves {f} yet a countermodel exists"),
                Verdict::Refuted => assert!(cm.is_some(), "{c} refutes {f} but no countermodel within bounds"),
                Verdict::Exhausted => {}
            }
        }
    }
}

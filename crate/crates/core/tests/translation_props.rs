use minmodal::formula::{BiFormula, Formula};
use minmodal::translation::{goedel, goedel_johansson};
use proptest::prelude::*;

fn arb_formula(allow_bottom: bool) -> impl Strategy<Value = Formula> {
    let leaf = if allow_bottom {
        prop_oneof![Just(Formula::Bottom), prop::sample::select(vec!["p", "q"]).prop_map(Formula::atom)].boxed()
    } else {
        prop::sample::select(vec!["p", "q", "r"]).prop_map(Formula::atom).boxed()
    };
    leaf.prop_recursive(5, 48, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            inner.clone().prop_map(Formula::boxed),
            inner.prop_map(Formula::dia),
        ]
    })
}

// Every □₂/◇₂ occurs directly under a □₁.
fn guarded(f: &BiFormula, under_box1: bool) -> bool {
    match f {
        BiFormula::Atom(_) | BiFormula::Bottom => true,
        BiFormula::And(a, b) | BiFormula::Or(a, b) | BiFormula::Imp(a, b) => {
            guarded(a, false) && guarded(b, false)
        }
        BiFormula::Box1(a) | BiFormula::Dia1(a) => guarded(a, matches!(f, BiFormula::Box1(_))),
        BiFormula::Box2(a) | BiFormula::Dia2(a) => under_box1 && guarded(a, false),
    }
}

proptest! {
    #[test]
    fn tr_and_g_agree_without_bottom(f in arb_formula(false)) {
        prop_assert_eq!(goedel_johansson(&f), goedel(&f));
    }

    #[test]
    fn second_modality_is_box1_guarded(f in arb_formula(true)) {
        prop_assert!(guarded(&goedel_johansson(&f), false));
        prop_assert!(guarded(&goedel(&f), false));
    }

    #[test]
    fn translation_is_size_linear(f in arb_formula(true)) {
        let t = goedel_johansson(&f);
        prop_assert!(t.size() <= 3 * f.size());
        prop_assert!(t.modal_depth1() <= 2 * f.size());
    }
}

//! Translations of the monomodal language into the bimodal companion
//! language: `tr` guards every subformula with □₁ and sends ⊥ to □₁f;
//! `g` differs only in sending ⊥ to □₁⊥.

use crate::formula::{BiFormula, Formula};

fn translate(f: &Formula, bottom: &BiFormula) -> BiFormula {
    let go = |g: &Formula| translate(g, bottom);
    match f {
        Formula::Bottom => bottom.clone(),
        Formula::Atom(p) => BiFormula::box1(BiFormula::Atom(p.clone())),
        Formula::And(a, b) => BiFormula::and(go(a), go(b)),
        Formula::Or(a, b) => BiFormula::or(go(a), go(b)),
        Formula::Imp(a, b) => BiFormula::box1(BiFormula::imp(go(a), go(b))),
        Formula::Box(a) => BiFormula::box1(BiFormula::box2(go(a))),
        Formula::Dia(a) => BiFormula::box1(BiFormula::dia2(go(a))),
    }
}

/// The extended Gödel-Johansson translation `tr`.
pub fn goedel_johansson(f: &Formula) -> BiFormula {
    translate(f, &BiFormula::box1(BiFormula::f()))
}

/// The Gödel translation `g`.
pub fn goedel(f: &Formula) -> BiFormula {
    translate(f, &BiFormula::box1(BiFormula::Bottom))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Tr,
    G,
}

impl std::str::FromStr for Scheme {
    type Err = String;
    fn from_str(s: &str) -> Result<Scheme, String> {
        match s {
            "tr" => Ok(Scheme::Tr),
            "g" => Ok(Scheme::G),
            _ => Err(format!("unknown translation scheme {s:?} (expected tr or g)")),
        }
    }
}

pub fn translate_with(scheme: Scheme, f: &Formula) -> BiFormula {
    match scheme {
        Scheme::Tr => goedel_johansson(f),
        Scheme::G => goedel(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, parse_bi, print_bi};

    fn tr(s: &str) -> String {
        print_bi(&goedel_johansson(&parse(s).unwrap()))
    }

    #[test]
    fn clauses() {
        assert_eq!(tr("bot"), "box1 f");
        assert_eq!(tr("box p"), "box1 box2 box1 p");
        assert_eq!(tr("p -> q"), "box1 (box1 p -> box1 q)");
        assert_eq!(print_bi(&goedel(&parse("bot").unwrap())), "box1 bot");
        assert_eq!(print_bi(&goedel(&parse("p").unwrap())), "box1 p");
        assert_eq!(print_bi(&goedel(&parse("dia bot").unwrap())), "box1 dia2 box1 bot");
        assert_eq!(
            goedel_johansson(&parse("~dia bot").unwrap()),
            parse_bi("box1 (box1 dia2 box1 f -> box1 f)").unwrap()
        );
    }

    #[test]
    fn bimodal_output_parses_back() {
        for s in ["p & q | bot", "box (p -> dia q)", "~~p"] {
            let t = goedel_johansson(&parse(s).unwrap());
            assert_eq!(parse_bi(&print_bi(&t)).unwrap(), t);
        }
    }
}

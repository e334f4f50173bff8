//! The two model constructions behind the companion theorems: a minimal
//! model becomes a fusion model by reading ≤ as R₁ and F as the value of f;
//! a fusion model becomes a minimal model by closing every value under □₁.

use super::wellformed::structural;
use super::{reserved_atom, Model, ModelKind, SemanticsError};

fn require_structural(m: &Model) -> Result<(), SemanticsError> {
    match structural(m).first() {
        Some(v) => Err(SemanticsError::IllFormed(format!("{}: {}", v.condition, v.witness))),
        None => Ok(()),
    }
}

/// M ↦ M″ = ⟨W, ≤, R or N, V″⟩ with V″(p) = V(p) and V″(f) = F.
pub fn to_fusion(m: &Model) -> Result<Model, SemanticsError> {
    let kind = match m.kind {
        ModelKind::Birelational => ModelKind::FusionRelational,
        ModelKind::Neighbourhood => ModelKind::FusionNeighbourhood,
        k => return Err(SemanticsError::IllFormed(format!("{k} models have no fusion image"))),
    };
    require_structural(m)?;
    let mut out = m.clone();
    out.kind = kind;
    out.fallible = 0;
    out.val.insert(reserved_atom().to_string(), m.fallible);
    Ok(out)
}

/// M ↦ M′ = ⟨W, R₁, F′, R₂ or N, V′⟩ with V′(p) = {v | R₁(v) ⊆ V(p)} and
/// F′ = {v | R₁(v) ⊆ V(f)}.
pub fn from_fusion(m: &Model) -> Result<Model, SemanticsError> {
    let kind = match m.kind {
        ModelKind::FusionRelational => ModelKind::Birelational,
        ModelKind::FusionNeighbourhood => ModelKind::Neighbourhood,
        k => return Err(SemanticsError::IllFormed(format!("{k} models are not fusion models"))),
    };
    require_structural(m)?;
    let mut out = m.clone();
    out.kind = kind;
    out.val.clear();
    for (p, s) in &m.val {
        if p != reserved_atom() {
            out.val.insert(p.clone(), m.up_closed_part(*s));
        }
    }
    out.fallible = m.up_closed_part(m.val.get(reserved_atom()).copied().unwrap_or(0));
    let bad = structural(&out);
    assert!(bad.is_empty(), "□₁-closure produced a non-hereditary model: {bad:?}");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::semantics::{fallible_point, forces, valid_in_model};
    use crate::translation::goedel_johansson;

    #[test]
    fn fallible_point_image() {
        let m = to_fusion(&fallible_point()).unwrap();
        assert_eq!(m.kind, ModelKind::FusionRelational);
        assert_eq!(m.val["f"], 1);
        let t = goedel_johansson(&parse("bot -> dia p").unwrap());
        assert!(!valid_in_model(&m, &t).unwrap());
        assert!(forces(&m, 0, &crate::formula::parse_bi("box1 f").unwrap()).unwrap());
        assert!(!forces(&m, 0, &crate::formula::parse_bi("box1 dia2 box1 p").unwrap()).unwrap());
    }

    #[test]
    fn empty_fallible_set_maps_to_empty_f() {
        let m = Model::new(ModelKind::Birelational, 2).with_leq(&[(0, 1)]).with_val("p", &[1]);
        assert_eq!(to_fusion(&m).unwrap().val["f"], 0);
    }

    #[test]
    fn closure_of_values() {
        // v R₁ u with V(f) = {u}: F′ = {u}, since u's only R₁-successor is u.
        let m = Model::new(ModelKind::FusionRelational, 2).with_leq(&[(0, 1)]).with_val("f", &[1]).with_val("p", &[0, 1]);
        let back = from_fusion(&m).unwrap();
        assert_eq!(back.fallible, 0b10);
        assert_eq!(back.val["p"], 0b11);
        assert!(!back.val.contains_key("f"));
        // With an extra R₁-edge from u back to v, u leaves F′.
        let m2 = Model::new(ModelKind::FusionRelational, 2).with_leq(&[(0, 1), (1, 0)]).with_val("f", &[1]);
        assert_eq!(from_fusion(&m2).unwrap().fallible, 0);
    }

    #[test]
    fn wrong_kinds() {
        assert!(to_fusion(&Model::new(ModelKind::Relational, 1)).is_err());
        assert!(from_fusion(&fallible_point()).is_err());
    }
}

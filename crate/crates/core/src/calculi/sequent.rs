use std::fmt;

use serde::{Deserialize, Serialize};

use crate::formula::{parse, Formula, ParseError};

/// A pair of formula multisets. Stored order is kept (derivation positions
/// refer to it); equality as multisets is `same_as`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct Sequent {
    pub ant: Vec<Formula>,
    pub succ: Vec<Formula>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    L,
    R,
}

/// Position of a formula occurrence in a sequent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pos {
    pub side: Side,
    pub idx: usize,
}

impl Pos {
    pub fn l(idx: usize) -> Pos {
        Pos { side: Side::L, idx }
    }
    pub fn r(idx: usize) -> Pos {
        Pos { side: Side::R, idx }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::L => write!(f, "L{}", self.idx),
            Side::R => write!(f, "R{}", self.idx),
        }
    }
}

impl std::str::FromStr for Pos {
    type Err = String;
    fn from_str(s: &str) -> Result<Pos, String> {
        let (side, rest) = match s.as_bytes().first() {
            Some(b'L') => (Side::L, &s[1..]),
            Some(b'R') => (Side::R, &s[1..]),
            _ => return Err(format!("bad position {s:?}")),
        };
        let idx = rest.parse().map_err(|_| format!("bad position {s:?}"))?;
        Ok(Pos { side, idx })
    }
}

impl Serialize for Pos {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Pos {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Pos, D::Error> {
        let t = String::deserialize(d)?;
        t.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) fn sorted(v: &[Formula]) -> Vec<&Formula> {
    let mut s: Vec<&Formula> = v.iter().collect();
    s.sort();
    s
}

pub(crate) fn ms_eq(a: &[Formula], b: &[Formula]) -> bool {
    a.len() == b.len() && sorted(a) == sorted(b)
}

/// `a` with one occurrence of each element of `b` removed, if `b ⊆ a`.
pub(crate) fn ms_minus(a: &[Formula], b: &[Formula]) -> Option<Vec<Formula>> {
    let mut rest = a.to_vec();
    for x in b {
        let i = rest.iter().position(|y| y == x)?;
        rest.remove(i);
    }
    Some(rest)
}

pub(crate) fn ms_plus(a: &[Formula], b: &[Formula]) -> Vec<Formula> {
    let mut v = a.to_vec();
    v.extend(b.iter().cloned());
    v
}

impl Sequent {
    pub fn new(ant: Vec<Formula>, succ: Vec<Formula>) -> Sequent {
        Sequent { ant, succ }
    }

    /// The sequent `⇒ f`.
    pub fn goal(f: Formula) -> Sequent {
        Sequent { ant: vec![], succ: vec![f] }
    }

    pub fn same_as(&self, other: &Sequent) -> bool {
        ms_eq(&self.ant, &other.ant) && ms_eq(&self.succ, &other.succ)
    }

    /// Canonical form: both sides sorted by the structural order.
    pub fn canonical(&self) -> Sequent {
        let mut s = self.clone();
        s.ant.sort();
        s.succ.sort();
        s
    }

    pub fn get(&self, p: Pos) -> Option<&Formula> {
        match p.side {
            Side::L => self.ant.get(p.idx),
            Side::R => self.succ.get(p.idx),
        }
    }

    /// The sequent with the occurrence at `p` removed.
    pub fn without(&self, p: Pos) -> Sequent {
        let mut s = self.clone();
        match p.side {
            Side::L => {
                s.ant.remove(p.idx);
            }
            Side::R => {
                s.succ.remove(p.idx);
            }
        }
        s
    }

    /// ⋀Γ → ⋁Δ, or ⋁Δ when Γ is empty; ⋁∅ is ⊥. Both sides are folded to
    /// the right in the structural order.
    pub fn formula_interpretation(&self) -> Formula {
        let ant: Vec<Formula> = sorted(&self.ant).into_iter().cloned().collect();
        let succ: Vec<Formula> = sorted(&self.succ).into_iter().cloned().collect();
        let d = Formula::disj_all(&succ).unwrap_or(Formula::Bottom);
        match Formula::conj_all(&ant) {
            Some(c) => Formula::imp(c, d),
            None => d,
        }
    }

    pub fn parse(text: &str) -> Result<Sequent, ParseError> {
        let (l, r) = match text.find("=>") {
            Some(k) => (&text[..k], &text[k + 2..]),
            None => ("", text),
        };
        let side = |t: &str| -> Result<Vec<Formula>, ParseError> {
            t.split(',').map(str::trim).filter(|x| !x.is_empty()).map(parse).collect()
        };
        Ok(Sequent { ant: side(l)?, succ: side(r)? })
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |v: &[Formula]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        match (self.ant.is_empty(), self.succ.is_empty()) {
            (true, true) => f.write_str("=>"),
            (true, false) => write!(f, "=> {}", side(&self.succ)),
            (false, true) => write!(f, "{} =>", side(&self.ant)),
            (false, false) => write!(f, "{} => {}", side(&self.ant), side(&self.succ)),
        }
    }
}

/// Formula interpretation of a sequent.
pub fn formula_interpretation(s: &Sequent) -> Formula {
    s.formula_interpretation()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Sequent {
        Sequent::parse(t).unwrap()
    }

    #[test]
    fn interpretation_examples() {
        assert_eq!(s("p, q => r").formula_interpretation(), parse("p & q -> r").unwrap());
        assert_eq!(s("=>").formula_interpretation(), Formula::Bottom);
        assert_eq!(s("=> p").formula_interpretation(), parse("p").unwrap());
        assert_eq!(s("q, p => r").formula_interpretation(), parse("p & q -> r").unwrap());
        assert_eq!(s("p =>").formula_interpretation(), parse("p -> bot").unwrap());
    }

    #[test]
    fn multiset_semantics() {
        assert!(s("p, q => r").same_as(&s("q, p => r")));
        assert!(!s("p, p => r").same_as(&s("p => r")));
        assert_eq!(s("box (p -> q), p => q").to_string(), "box (p -> q), p => q");
        assert_eq!(s("bot =>").to_string(), "bot =>");
        assert_eq!(s("=>"), Sequent::default());
    }
}

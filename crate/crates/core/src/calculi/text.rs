//! Indented text format for derivations: one node per line, children below
//! their parent indented by two further spaces, premises in order.
//!
//! ```text
//! => p -> p  [rimp R0]
//!   p => p  [init L0 R0]
//! ```

use super::{Derivation, Pos, Rule, Sequent};

pub fn print_derivation_text(d: &Derivation) -> String {
    let mut out = String::new();
    print_at(d, 0, &mut out);
    out
}

fn print_at(d: &Derivation, depth: usize, out: &mut String) {
    out.push_str(&"  ".repeat(depth));
    out.push_str(&d.seq.to_string());
    out.push_str("  [");
    out.push_str(d.rule.name());
    for p in &d.principal {
        out.push(' ');
        out.push_str(&p.to_string());
    }
    out.push_str("]\n");
    for k in &d.kids {
        print_at(k, depth + 1, out);
    }
}

struct Line {
    no: usize,
    depth: usize,
    seq: Sequent,
    rule: Rule,
    principal: Vec<Pos>,
}

/// Parses the indented format. Blank lines and lines starting with `#` are
/// skipped. Errors carry 1-based line numbers.
pub fn parse_derivation_text(text: &str) -> Result<Derivation, String> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let t = raw.trim_end();
        if t.trim().is_empty() || t.trim_start().starts_with('#') {
            continue;
        }
        let indent = t.len() - t.trim_start_matches(' ').len();
        if indent % 2 != 0 {
            return Err(format!("line {no}: odd indentation"));
        }
        let body = t.trim_start();
        let (seq_text, ann) = body
            .rfind('[')
            .filter(|_| body.ends_with(']'))
            .map(|k| (&body[..k], &body[k + 1..body.len() - 1]))
            .ok_or_else(|| format!("line {no}: missing [rule ...] annotation"))?;
        let mut words = ann.split_whitespace();
        let rname = words.next().ok_or_else(|| format!("line {no}: empty annotation"))?;
        let rule = Rule::from_name(rname).ok_or_else(|| format!("line {no}: unknown rule {rname:?}"))?;
        let principal = words
            .map(|w| w.parse::<Pos>().map_err(|e| format!("line {no}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        let seq = Sequent::parse(seq_text.trim()).map_err(|e| format!("line {no}: {e}"))?;
        lines.push(Line { no, depth: indent / 2, seq, rule, principal });
    }
    if lines.is_empty() {
        return Err("empty derivation".into());
    }
    if lines[0].depth != 0 {
        return Err(format!("line {}: root must not be indented", lines[0].no));
    }
    let mut it = lines.into_iter().peekable();
    let root = build(&mut it, 0)?;
    if let Some(l) = it.next() {
        return Err(format!("line {}: second root", l.no));
    }
    Ok(root)
}

fn build(it: &mut std::iter::Peekable<std::vec::IntoIter<Line>>, depth: usize) -> Result<Derivation, String> {
    let l = it.next().expect("caller peeked");
    let mut kids = Vec::new();
    while let Some(next) = it.peek() {
        if next.depth <= depth {
            break;
        }
        if next.depth != depth + 1 {
            return Err(format!("line {}: indentation jumps more than one level", next.no));
        }
        kids.push(build(it, depth + 1)?);
    }
    Ok(Derivation::new(l.rule, l.seq, l.principal, kids))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculi::{check_derivation, CalculusId};
    use crate::logics::Sigma;

    const KBOX: &str = "\
=> box (p -> q) -> box p -> box q  [rimp R0]
  box (p -> q) => box p -> box q  [rimp R0]
    box (p -> q), box p => box q  [mKbox L0 L1 R0]
      p -> q, p => q  [limp L0]
        p => p  [init L0 R0]
        q, p => q  [lwk L1]
          q => q  [init L0 R0]
";

    #[test]
    fn text_round_trip() {
        let d = parse_derivation_text(KBOX).unwrap();
        assert_eq!(d.size(), 7);
        assert_eq!(d.height(), 6);
        assert!(check_derivation(CalculusId::Minimal(Sigma::K), &d).valid);
        assert_eq!(parse_derivation_text(&print_derivation_text(&d)).unwrap(), d);
        assert_eq!(print_derivation_text(&d), KBOX);
    }

    #[test]
    fn json_round_trip() {
        let d = parse_derivation_text(KBOX).unwrap();
        assert_eq!(Derivation::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn malformed_text() {
        assert!(parse_derivation_text("").is_err());
        assert!(parse_derivation_text("p => p").is_err());
        assert!(parse_derivation_text("p => p  [nope]").is_err());
        assert!(parse_derivation_text("=> p -> p  [rimp R0]\n      p => p  [init L0 R0]").is_err());
        assert!(parse_derivation_text("p => p  [init L0 R0]\np => p  [init L0 R0]").is_err());
    }
}

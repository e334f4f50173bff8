use thiserror::Error;

use super::{BiFormula, Formula, RESERVED_ATOM};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {pos}: {kind}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected {found}, expected {expected}")]
    UnexpectedToken { found: String, expected: &'static str },
    #[error("unexpected end of input, expected {0}")]
    UnexpectedEnd(&'static str),
    #[error("atom \"{RESERVED_ATOM}\" is reserved for the companion language")]
    ReservedAtom,
    #[error("operator {0} belongs to the other language")]
    WrongLanguage(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Modal {
    Box,
    Dia,
    Box1,
    Dia1,
    Box2,
    Dia2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Modal(Modal),
    Bot,
    Top,
    Not,
    And,
    Or,
    Imp,
    Iff,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Modal(m) => format!("{m:?}").to_lowercase(),
            Tok::Bot => "bot".into(),
            Tok::Top => "top".into(),
            Tok::Not => "'~'".into(),
            Tok::And => "'&'".into(),
            Tok::Or => "'|'".into(),
            Tok::Imp => "'->'".into(),
            Tok::Iff => "'<->'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        let err = |c| ParseError { pos, kind: ParseErrorKind::UnexpectedChar(c) };
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '&' | '∧' => Some(Tok::And),
            '|' | '∨' => Some(Tok::Or),
            '~' | '¬' => Some(Tok::Not),
            '→' => Some(Tok::Imp),
            '↔' => Some(Tok::Iff),
            '⊥' => Some(Tok::Bot),
            '⊤' => Some(Tok::Top),
            '□' => Some(Tok::Modal(Modal::Box)),
            '◇' => Some(Tok::Modal(Modal::Dia)),
            _ => None,
        };
        if let Some(t) = single {
            it.next();
            out.push((pos, t));
            continue;
        }
        if c == '-' {
            it.next();
            match it.next() {
                Some((_, '>')) => out.push((pos, Tok::Imp)),
                _ => return Err(err('-')),
            }
            continue;
        }
        if c == '<' {
            it.next();
            let a = it.next().map(|x| x.1);
            let b = it.next().map(|x| x.1);
            if a == Some('-') && b == Some('>') {
                out.push((pos, Tok::Iff));
                continue;
            }
            return Err(err('<'));
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut word = String::new();
            while let Some(&(_, d)) = it.peek() {
                if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                    word.push(d);
                    it.next();
                } else {
                    break;
                }
            }
            let tok = match word.as_str() {
                "box" => Tok::Modal(Modal::Box),
                "dia" => Tok::Modal(Modal::Dia),
                "box1" => Tok::Modal(Modal::Box1),
                "dia1" => Tok::Modal(Modal::Dia1),
                "box2" => Tok::Modal(Modal::Box2),
                "dia2" => Tok::Modal(Modal::Dia2),
                "bot" => Tok::Bot,
                "top" => Tok::Top,
                _ => Tok::Ident(word),
            };
            out.push((pos, tok));
            continue;
        }
        return Err(err(c));
    }
    Ok(out)
}

#[derive(Debug)]
enum Raw {
    Atom(usize, String),
    Bot,
    Top,
    Not(Box<Raw>),
    And(Box<Raw>, Box<Raw>),
    Or(Box<Raw>, Box<Raw>),
    Imp(Box<Raw>, Box<Raw>),
    Iff(Box<Raw>, Box<Raw>),
    Modal(usize, Modal, Box<Raw>),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.0).unwrap_or(self.end)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        match self.peek() {
            Some(t) => ParseError {
                pos: self.pos(),
                kind: ParseErrorKind::UnexpectedToken { found: t.describe(), expected },
            },
            None => ParseError { pos: self.end, kind: ParseErrorKind::UnexpectedEnd(expected) },
        }
    }

    fn iff(&mut self) -> Result<Raw, ParseError> {
        let mut lhs = self.imp()?;
        while self.eat(&Tok::Iff) {
            let rhs = self.imp()?;
            lhs = Raw::Iff(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Raw, ParseError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Imp) {
            let rhs = self.imp()?;
            return Ok(Raw::Imp(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Raw, ParseError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            let rhs = self.and()?;
            lhs = Raw::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Raw, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            let rhs = self.unary()?;
            lhs = Raw::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Raw, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Not) => {
                self.at += 1;
                Ok(Raw::Not(Box::new(self.unary()?)))
            }
            Some(Tok::Modal(m)) => {
                self.at += 1;
                Ok(Raw::Modal(pos, m, Box::new(self.unary()?)))
            }
            Some(Tok::Bot) => {
                self.at += 1;
                Ok(Raw::Bot)
            }
            Some(Tok::Top) => {
                self.at += 1;
                Ok(Raw::Top)
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                Ok(Raw::Atom(pos, name))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.unexpected("')'"));
                }
                Ok(inner)
            }
            _ => Err(self.unexpected("a formula")),
        }
    }
}

fn parse_raw(text: &str) -> Result<Raw, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, end: text.len() };
    let raw = p.iff()?;
    if p.peek().is_some() {
        return Err(p.unexpected("end of input"));
    }
    Ok(raw)
}

fn to_mono(r: Raw) -> Result<Formula, ParseError> {
    Ok(match r {
        Raw::Atom(pos, name) => {
            if name == RESERVED_ATOM {
                return Err(ParseError { pos, kind: ParseErrorKind::ReservedAtom });
            }
            Formula::atom(&name)
        }
        Raw::Bot => Formula::Bottom,
        Raw::Top => Formula::top(),
        Raw::Not(a) => Formula::not(to_mono(*a)?),
        Raw::And(a, b) => Formula::and(to_mono(*a)?, to_mono(*b)?),
        Raw::Or(a, b) => Formula::or(to_mono(*a)?, to_mono(*b)?),
        Raw::Imp(a, b) => Formula::imp(to_mono(*a)?, to_mono(*b)?),
        Raw::Iff(a, b) => Formula::iff(to_mono(*a)?, to_mono(*b)?),
        Raw::Modal(pos, m, a) => match m {
            Modal::Box => Formula::boxed(to_mono(*a)?),
            Modal::Dia => Formula::dia(to_mono(*a)?),
            other => {
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::WrongLanguage(format!("{other:?}").to_lowercase()),
                })
            }
        },
    })
}

fn to_bi(r: Raw) -> Result<BiFormula, ParseError> {
    Ok(match r {
        Raw::Atom(_, name) => BiFormula::atom(&name),
        Raw::Bot => BiFormula::Bottom,
        Raw::Top => BiFormula::top(),
        Raw::Not(a) => BiFormula::not(to_bi(*a)?),
        Raw::And(a, b) => BiFormula::and(to_bi(*a)?, to_bi(*b)?),
        Raw::Or(a, b) => BiFormula::or(to_bi(*a)?, to_bi(*b)?),
        Raw::Imp(a, b) => BiFormula::imp(to_bi(*a)?, to_bi(*b)?),
        Raw::Iff(a, b) => BiFormula::iff(to_bi(*a)?, to_bi(*b)?),
        Raw::Modal(pos, m, a) => match m {
            Modal::Box1 => BiFormula::box1(to_bi(*a)?),
            Modal::Dia1 => BiFormula::dia1(to_bi(*a)?),
            Modal::Box2 => BiFormula::box2(to_bi(*a)?),
            Modal::Dia2 => BiFormula::dia2(to_bi(*a)?),
            other => {
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::WrongLanguage(format!("{other:?}").to_lowercase()),
                })
            }
        },
    })
}

/// Parse a monomodal formula. The atom `f` is rejected.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    to_mono(parse_raw(text)?)
}

/// Parse a formula of the companion language (`box1`, `dia1`, `box2`, `dia2`, atom `f`).
pub fn parse_bi(text: &str) -> Result<BiFormula, ParseError> {
    to_bi(parse_raw(text)?)
}

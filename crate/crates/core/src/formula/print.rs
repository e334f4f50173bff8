use super::{BiFormula, Formula};

enum Shape<'a, T> {
    Atom(&'a str),
    Bot,
    Top,
    Not(&'a T),
    Bin(Bin, &'a T, &'a T),
    Un(&'static str, &'a T),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Bin {
    And,
    Or,
    Imp,
}

// Binding strength: larger binds tighter.
const P_IMP: u8 = 1;
const P_OR: u8 = 2;
const P_AND: u8 = 3;
const P_UNARY: u8 = 4;

trait View: Sized {
    fn shape(&self) -> Shape<'_, Self>;
}

impl View for Formula {
    fn shape(&self) -> Shape<'_, Self> {
        match self {
            Formula::Atom(p) => Shape::Atom(p),
            Formula::Bottom => Shape::Bot,
            Formula::Imp(a, b) if **b == Formula::Bottom => {
                if **a == Formula::Bottom {
                    Shape::Top
                } else {
                    Shape::Not(a)
                }
            }
            Formula::And(a, b) => Shape::Bin(Bin::And, a, b),
            Formula::Or(a, b) => Shape::Bin(Bin::Or, a, b),
            Formula::Imp(a, b) => Shape::Bin(Bin::Imp, a, b),
            Formula::Box(a) => Shape::Un("box", a),
            Formula::Dia(a) => Shape::Un("dia", a),
        }
    }
}

impl View for BiFormula {
    fn shape(&self) -> Shape<'_, Self> {
        match self {
            BiFormula::Atom(p) => Shape::Atom(p),
            BiFormula::Bottom => Shape::Bot,
            // Translation output is printed without re-sugaring.
            BiFormula::And(a, b) => Shape::Bin(Bin::And, a, b),
            BiFormula::Or(a, b) => Shape::Bin(Bin::Or, a, b),
            BiFormula::Imp(a, b) => Shape::Bin(Bin::Imp, a, b),
            BiFormula::Box1(a) => Shape::Un("box1", a),
            BiFormula::Dia1(a) => Shape::Un("dia1", a),
            BiFormula::Box2(a) => Shape::Un("box2", a),
            BiFormula::Dia2(a) => Shape::Un("dia2", a),
        }
    }
}

fn prec<T: View>(t: &T) -> u8 {
    match t.shape() {
        Shape::Bin(Bin::And, ..) => P_AND,
        Shape::Bin(Bin::Or, ..) => P_OR,
        Shape::Bin(Bin::Imp, ..) => P_IMP,
        _ => P_UNARY,
    }
}

fn write<T: View>(t: &T, out: &mut String) {
    match t.shape() {
        Shape::Atom(p) => out.push_str(p),
        Shape::Bot => out.push_str("bot"),
        Shape::Top => out.push_str("top"),
        Shape::Not(a) => {
            out.push('~');
            operand(a, P_UNARY, out);
        }
        Shape::Un(op, a) => {
            out.push_str(op);
            out.push(' ');
            operand(a, P_UNARY, out);
        }
        Shape::Bin(op, a, b) => {
            // `&` and `|` associate to the left, `->` to the right.
            let (lmin, rmin, sym) = match op {
                Bin::And => (P_AND, P_AND + 1, " & "),
                Bin::Or => (P_OR, P_OR + 1, " | "),
                Bin::Imp => (P_IMP + 1, P_IMP, " -> "),
            };
            operand(a, lmin, out);
            out.push_str(sym);
            operand(b, rmin, out);
        }
    }
}

fn operand<T: View>(t: &T, min: u8, out: &mut String) {
    if prec(t) < min {
        out.push('(');
        write(t, out);
        out.push(')');
    } else {
        write(t, out);
    }
}

pub(super) fn print(f: &Formula) -> String {
    let mut s = String::new();
    write(f, &mut s);
    s
}

pub(super) fn print_bi(f: &BiFormula) -> String {
    let mut s = String::new();
    write(f, &mut s);
    s
}

//! Canonical text with minimal parentheses; `parse` reads it back to the
//! same tree.

use std::fmt;

use super::{Atom, Formula, Program, StrategyTerm, VectorExpr};
use crate::coalition::ClFormula;
use crate::game::is_valid_name;
use crate::rational::format_rational;

// Binding strength, loosest first.
const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;

const CHOICE: u8 = 1;
const SEQ: u8 = 2;
const PROG_UNARY: u8 = 3;

pub fn render_formula(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(&mut out, f, 0);
    out
}

pub fn render_program(p: &Program) -> String {
    let mut out = String::new();
    write_program(&mut out, p, 0);
    out
}

pub fn render_cl(f: &ClFormula) -> String {
    let mut out = String::new();
    write_cl(&mut out, f, 0);
    out
}

fn formula_prec(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => IFF,
        Formula::Implies(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

fn write_formula(out: &mut String, f: &Formula, min: u8) {
    let wrap = formula_prec(f) < min;
    if wrap {
        out.push('(');
    }
    match f {
        Formula::Top => out.push('T'),
        Formula::Vector(v) => write_vector(out, v),
        Formula::Atom(a) => write_atom(out, a),
        Formula::Not(g) => {
            out.push('~');
            write_formula(out, g, UNARY);
        }
        Formula::And(a, b) => binary(out, a, " & ", b, AND, UNARY),
        Formula::Or(a, b) => binary(out, a, " | ", b, OR, AND),
        Formula::Implies(a, b) => binary(out, a, " -> ", b, OR, IMP),
        Formula::Iff(a, b) => binary(out, a, " <-> ", b, IFF, IMP),
        Formula::Box(p, g) => {
            out.push('[');
            write_program(out, p, 0);
            out.push_str("] ");
            write_formula(out, g, UNARY);
        }
        Formula::Diamond(p, g) => {
            out.push('<');
            write_program(out, p, 0);
            out.push_str("> ");
            write_formula(out, g, UNARY);
        }
    }
    if wrap {
        out.push(')');
    }
}

fn binary(out: &mut String, a: &Formula, op: &str, b: &Formula, left_min: u8, right_min: u8) {
    write_formula(out, a, left_min);
    out.push_str(op);
    write_formula(out, b, right_min);
}

fn program_prec(p: &Program) -> u8 {
    match p {
        Program::Choice(..) => CHOICE,
        Program::Seq(..) => SEQ,
        _ => PROG_UNARY,
    }
}

fn write_program(out: &mut String, p: &Program, min: u8) {
    let wrap = program_prec(p) < min;
    if wrap {
        out.push('(');
    }
    match p {
        Program::Vector(v) => write_vector(out, v),
        Program::Test(f) => {
            out.push('?');
            write_formula(out, f, UNARY);
        }
        Program::Seq(a, b) => {
            write_program(out, a, SEQ);
            out.push(';');
            write_program(out, b, PROG_UNARY);
        }
        Program::Choice(a, b) => {
            write_program(out, a, CHOICE);
            out.push('+');
            write_program(out, b, SEQ);
        }
        Program::Star(inner) => {
            let bare = matches!(
                **inner,
                Program::Vector(_) | Program::Agent(_) | Program::AgentConv(_) | Program::Star(_)
            );
            if bare {
                write_program(out, inner, PROG_UNARY);
            } else {
                out.push('(');
                write_program(out, inner, 0);
                out.push(')');
            }
            out.push('*');
        }
        Program::Agent(i) => out.push_str(&format!("ag{}", i + 1)),
        Program::AgentConv(i) => out.push_str(&format!("ag{}^", i + 1)),
    }
    if wrap {
        out.push(')');
    }
}

fn write_vector(out: &mut String, v: &VectorExpr) {
    out.push('(');
    for (k, t) in v.0.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        match t {
            StrategyTerm::Concrete(name) => out.push_str(name),
            StrategyTerm::Adversary => out.push_str("??"),
            StrategyTerm::Current => out.push_str("!!"),
        }
    }
    out.push(')');
}

fn write_name(out: &mut String, s: &str) {
    if is_valid_name(s) {
        out.push_str(s);
    } else {
        out.push('"');
        for ch in s.chars() {
            if ch == '"' || ch == '\\' {
                out.push('\\');
            }
            out.push(ch);
        }
        out.push('"');
    }
}

fn write_atom(out: &mut String, a: &Atom) {
    match a {
        Atom::Winner(x) => {
            out.push_str("win(");
            write_name(out, x);
            out.push(')');
        }
        Atom::Label(s) => {
            out.push_str("label(");
            write_name(out, s);
            out.push(')');
        }
        Atom::UtilEq { player, value } => {
            out.push_str(&format!("u{}={}", player + 1, format_rational(value)));
        }
    }
}

fn cl_prec(f: &ClFormula) -> u8 {
    match f {
        ClFormula::And(..) => AND,
        _ => UNARY,
    }
}

fn write_cl(out: &mut String, f: &ClFormula, min: u8) {
    let wrap = cl_prec(f) < min;
    if wrap {
        out.push('(');
    }
    match f {
        ClFormula::Top => out.push('T'),
        ClFormula::Atom(a) => write_atom(out, a),
        ClFormula::Not(g) => {
            out.push('~');
            write_cl(out, g, UNARY);
        }
        ClFormula::And(a, b) => {
            write_cl(out, a, AND);
            out.push_str(" & ");
            write_cl(out, b, UNARY);
        }
        ClFormula::CoalBox(c, g) => {
            let members: Vec<String> = c.members().map(|m| (m + 1).to_string()).collect();
            out.push_str(&format!("[C {{{}}}] ", members.join(",")));
            write_cl(out, g, UNARY);
        }
    }
    if wrap {
        out.push(')');
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_formula(self))
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_program(self))
    }
}

impl fmt::Display for VectorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_vector(&mut s, self);
        f.write_str(&s)
    }
}

impl fmt::Display for ClFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_cl(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn c(s: &str) -> StrategyTerm {
        StrategyTerm::Concrete(s.into())
    }

    #[test]
    fn vector_formula() {
        let f = Formula::Vector(VectorExpr(vec![c("c"), c("d")]));
        assert_eq!(render_formula(&f), "(c,d)");
    }

    #[test]
    fn choice_box() {
        let p = Program::Vector(VectorExpr(vec![c("c"), StrategyTerm::Adversary]))
            .or(Program::Vector(VectorExpr(vec![c("d"), StrategyTerm::Adversary])));
        let f = Formula::boxed(p, Formula::winner("a"));
        assert_eq!(render_formula(&f), "[(c,??)+(d,??)] win(a)");
    }

    #[test]
    fn negated_conjunction() {
        let f = Formula::Top.and(Formula::Top).negate();
        assert_eq!(render_formula(&f), "~(T & T)");
    }

    #[test]
    fn associativity_parentheses() {
        let t = || Formula::Top;
        assert_eq!(render_formula(&t().or(t().or(t()))), "T | (T | T)");
        assert_eq!(render_formula(&t().or(t()).or(t())), "T | T | T");
        assert_eq!(render_formula(&t().implies(t()).implies(t())), "(T -> T) -> T");
        assert_eq!(render_formula(&t().implies(t().implies(t()))), "T -> T -> T");
        assert_eq!(
            render_formula(&Formula::boxed(Program::Agent(0), t().and(t()))),
            "[ag1] (T & T)"
        );
    }

    #[test]
    fn programs() {
        let v = Program::Vector(VectorExpr(vec![c("c"), StrategyTerm::Current]));
        let test = Program::test(Formula::util_eq(0, Rational::new(-1, 2)));
        assert_eq!(render_program(&test.clone().then(v.clone()).star()), "(?u1=-1/2;(c,!!))*");
        assert_eq!(render_program(&test.clone().star()), "(?u1=-1/2)*");
        assert_eq!(render_program(&v.clone().or(v.clone()).then(v.clone())), "((c,!!)+(c,!!));(c,!!)");
        assert_eq!(render_program(&Program::AgentConv(1).star()), "ag2^*");
    }

    #[test]
    fn quoted_labels() {
        assert_eq!(render_formula(&Formula::label("a,b \"x\"")), "label(\"a,b \\\"x\\\"\")");
        assert_eq!(render_formula(&Formula::label("cd")), "label(cd)");
    }
}

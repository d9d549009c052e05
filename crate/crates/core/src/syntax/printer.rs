//! Pretty printing. The round-trip law is `parse(print(ast)) == ast`; the
//! printers insert parentheses from precedence and associativity, plus one
//! extra pair where a probability constant's closing bar would otherwise be
//! read as a disjunction.

use std::fmt;

use super::ast::*;

// precedence: quantifier 0, <-> 1, -> 2, | 3, & 4, ~ 5, atom 6

fn f0_level(f: &Formula0) -> u8 {
    match f {
        Formula0::Forall(..) | Formula0::Exists(..) => 0,
        Formula0::Iff(..) => 1,
        Formula0::Implies(..) => 2,
        Formula0::Or(..) => 3,
        Formula0::And(..) => 4,
        Formula0::Not(..) => 5,
        Formula0::Eq(..) | Formula0::Rel(..) => 6,
    }
}

fn p0(f: &Formula0, min: u8, out: &mut String) {
    let lvl = f0_level(f);
    let parens = lvl < min;
    if parens {
        out.push('(');
    }
    match f {
        Formula0::Eq(a, b) => {
            // equality sides are primary terms in the grammar, so any
            // infix boolean term gets explicit parentheses
            pt0(a, 4, out);
            out.push_str(" = ");
            pt0(b, 4, out);
        }
        Formula0::Rel(r, args) => {
            out.push_str(r);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                pt0(a, 1, out);
            }
            out.push(')');
        }
        Formula0::Not(g) => {
            out.push('~');
            p0(g, 5, out);
        }
        Formula0::And(a, b) => {
            p0(a, 4, out);
            out.push_str(" & ");
            p0(b, 5, out);
        }
        Formula0::Or(a, b) => {
            p0(a, 3, out);
            out.push_str(" | ");
            p0(b, 4, out);
        }
        Formula0::Implies(a, b) => {
            p0(a, 3, out);
            out.push_str(" -> ");
            p0(b, 2, out);
        }
        Formula0::Iff(a, b) => {
            p0(a, 1, out);
            out.push_str(" <-> ");
            p0(b, 2, out);
        }
        Formula0::Forall(v, g) => {
            out.push_str(&format!("forall v{v} "));
            p0(g, 0, out);
        }
        Formula0::Exists(v, g) => {
            out.push_str(&format!("exists v{v} "));
            p0(g, 0, out);
        }
    }
    if parens {
        out.push(')');
    }
}

// term precedence: | 1, & 2, ~ 3, prim 4
fn t0_level(t: &Term0) -> u8 {
    match t {
        Term0::App(f, args) if f == "or" && args.len() == 2 => 1,
        Term0::App(f, args) if f == "and" && args.len() == 2 => 2,
        Term0::App(f, args) if f == "not" && args.len() == 1 => 3,
        _ => 4,
    }
}

fn pt0(t: &Term0, min: u8, out: &mut String) {
    let lvl = t0_level(t);
    let parens = lvl < min;
    if parens {
        out.push('(');
    }
    match t {
        Term0::Var(i) => out.push_str(&format!("v{i}")),
        Term0::Const(c) => out.push_str(c),
        Term0::App(f, args) if f == "or" && args.len() == 2 => {
            pt0(&args[0], 1, out);
            out.push_str(" | ");
            pt0(&args[1], 2, out);
        }
        Term0::App(f, args) if f == "and" && args.len() == 2 => {
            pt0(&args[0], 2, out);
            out.push_str(" & ");
            pt0(&args[1], 3, out);
        }
        Term0::App(f, args) if f == "not" && args.len() == 1 => {
            out.push('~');
            pt0(&args[0], 3, out);
        }
        Term0::App(f, args) => {
            out.push_str(f);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                pt0(a, 1, out);
            }
            out.push(')');
        }
    }
    if parens {
        out.push(')');
    }
}

fn f1_level(f: &Formula1) -> u8 {
    match f {
        Formula1::Forall(..) | Formula1::Exists(..) => 0,
        Formula1::Iff(..) => 1,
        Formula1::Implies(..) => 2,
        Formula1::Or(..) => 3,
        Formula1::And(..) => 4,
        Formula1::Not(..) => 5,
        Formula1::Cmp(..) => 6,
    }
}

fn p1(f: &Formula1, min: u8, out: &mut String) {
    let lvl = f1_level(f);
    let parens = lvl < min;
    if parens {
        out.push('(');
    }
    match f {
        Formula1::Cmp(a, op, b) => {
            pt1(a, 1, out);
            out.push_str(&format!(" {op} "));
            pt1(b, 1, out);
        }
        Formula1::Not(g) => {
            out.push('~');
            p1(g, 5, out);
        }
        Formula1::And(a, b) => {
            p1(a, 4, out);
            out.push_str(" & ");
            p1(b, 5, out);
        }
        Formula1::Or(a, b) => {
            let mut left = String::new();
            p1(a, 3, &mut left);
            out.push_str(&left);
            out.push_str(" | ");
            // a trailing closing bar followed by the right disjunct would be
            // re-read as a disjunction inside the bars
            if left.ends_with('|') {
                out.push('(');
                p1(b, 0, out);
                out.push(')');
            } else {
                p1(b, 4, out);
            }
        }
        Formula1::Implies(a, b) => {
            p1(a, 3, out);
            out.push_str(" -> ");
            p1(b, 2, out);
        }
        Formula1::Iff(a, b) => {
            p1(a, 1, out);
            out.push_str(" <-> ");
            p1(b, 2, out);
        }
        Formula1::Forall(v, g) => {
            out.push_str(&format!("forall {v} "));
            p1(g, 0, out);
        }
        Formula1::Exists(v, g) => {
            out.push_str(&format!("exists {v} "));
            p1(g, 0, out);
        }
    }
    if parens {
        out.push(')');
    }
}

// term precedence: +/- 1, * 2, neg 3, prim 4
fn t1_level(t: &Term1) -> u8 {
    match t {
        Term1::Add(..) | Term1::Sub(..) => 1,
        Term1::Mul(..) => 2,
        Term1::Neg(..) => 3,
        Term1::Rat(..) | Term1::RealVar(..) | Term1::Prob(..) => 4,
    }
}

fn pt1(t: &Term1, min: u8, out: &mut String) {
    let lvl = t1_level(t);
    let parens = lvl < min;
    if parens {
        out.push('(');
    }
    match t {
        Term1::Rat(q) => out.push_str(&q.to_string()),
        Term1::RealVar(v) => out.push_str(v),
        Term1::Prob(pc) => {
            out.push('|');
            p0(&pc.formula, 0, out);
            out.push('|');
        }
        Term1::Add(a, b) => {
            pt1(a, 1, out);
            out.push_str(" + ");
            pt1(b, 2, out);
        }
        Term1::Sub(a, b) => {
            pt1(a, 1, out);
            out.push_str(" - ");
            pt1(b, 2, out);
        }
        Term1::Mul(a, b) => {
            pt1(a, 2, out);
            out.push_str(" * ");
            pt1(b, 3, out);
        }
        Term1::Neg(a) => {
            out.push_str("-(");
            pt1(a, 1, out);
            out.push(')');
        }
    }
    if parens {
        out.push(')');
    }
}

impl fmt::Display for Formula0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        p0(self, 0, &mut s);
        f.write_str(&s)
    }
}

impl fmt::Display for Term0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        pt0(self, 0, &mut s);
        f.write_str(&s)
    }
}

impl fmt::Display for Formula1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        p1(self, 0, &mut s);
        f.write_str(&s)
    }
}

impl fmt::Display for Term1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        pt1(self, 0, &mut s);
        f.write_str(&s)
    }
}

impl fmt::Display for ProbConst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}|", self.formula)
    }
}

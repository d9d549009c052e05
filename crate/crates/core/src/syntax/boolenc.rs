//! Propositional formulas over team variables and their encoding into the
//! object language of the two-element boolean algebra: `phi` becomes
//! `t_phi = 1` where `t_phi` is the corresponding boolean-algebra term.

use super::ast::{Formula0, Term0};
use super::lexer::{lex, SpannedTok, Tok};
use super::SyntaxError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Prop {
    Var(usize),
    Not(Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
}

impl Prop {
    pub fn var(i: usize) -> Prop {
        Prop::Var(i)
    }
    pub fn not(p: Prop) -> Prop {
        Prop::Not(Box::new(p))
    }
    pub fn and(a: Prop, b: Prop) -> Prop {
        Prop::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Prop, b: Prop) -> Prop {
        Prop::Or(Box::new(a), Box::new(b))
    }

    pub fn vars(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.vars_into(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn vars_into(&self, out: &mut Vec<usize>) {
        match self {
            Prop::Var(i) => out.push(*i),
            Prop::Not(p) => p.vars_into(out),
            Prop::And(a, b) | Prop::Or(a, b) => {
                a.vars_into(out);
                b.vars_into(out);
            }
        }
    }

    pub fn eval(&self, valuation: &dyn Fn(usize) -> bool) -> bool {
        match self {
            Prop::Var(i) => valuation(*i),
            Prop::Not(p) => !p.eval(valuation),
            Prop::And(a, b) => a.eval(valuation) && b.eval(valuation),
            Prop::Or(a, b) => a.eval(valuation) || b.eval(valuation),
        }
    }

    /// Truth-table check: no valuation of the variables satisfies the formula.
    pub fn is_contradictory(&self) -> bool {
        let vars = self.vars();
        assert!(vars.len() <= 24, "too many propositional variables");
        for bits in 0..(1u32 << vars.len()) {
            let val = |i: usize| {
                let k = vars.iter().position(|v| *v == i).expect("known var");
                bits >> k & 1 == 1
            };
            if self.eval(&val) {
                return false;
            }
        }
        true
    }

    fn term(&self) -> Term0 {
        match self {
            Prop::Var(i) => Term0::Var(*i),
            Prop::Not(p) => Term0::App("not".into(), vec![p.term()]),
            Prop::And(a, b) => Term0::App("and".into(), vec![a.term(), b.term()]),
            Prop::Or(a, b) => Term0::App("or".into(), vec![a.term(), b.term()]),
        }
    }
}

/// `phi  |->  t_phi = 1`.
pub fn bool_encode(p: &Prop) -> Formula0 {
    Formula0::Eq(p.term(), Term0::Const("1".into()))
}

/// Parse a propositional formula: variables `vI`, `~ & |`, parentheses.
pub fn parse_prop(text: &str) -> Result<Prop, SyntaxError> {
    let toks = lex(text)?;
    let mut p = PropParser { toks, pos: 0 };
    let f = p.or()?;
    if p.pos != p.toks.len() {
        return Err(SyntaxError::Parse {
            pos: p.here(),
            msg: "expected end of input".into(),
        });
    }
    Ok(f)
}

struct PropParser {
    toks: Vec<SpannedTok>,
    pos: usize,
}

impl PropParser {
    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.pos).unwrap_or(0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn or(&mut self) -> Result<Prop, SyntaxError> {
        let mut f = self.and()?;
        while self.peek() == Some(&Tok::Bar) {
            self.pos += 1;
            f = Prop::or(f, self.and()?);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<Prop, SyntaxError> {
        let mut f = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            f = Prop::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Prop, SyntaxError> {
        match self.peek().cloned() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Prop::not(self.unary()?))
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                Ok(Prop::Var(i))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.or()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(f)
                    }
                    _ => Err(SyntaxError::Parse {
                        pos: self.here(),
                        msg: "expected `)`".into(),
                    }),
                }
            }
            _ => Err(SyntaxError::Parse {
                pos: self.here(),
                msg: "expected a propositional formula".into(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_conjunction() {
        let p = parse_prop("v0 & v1").unwrap();
        assert_eq!(bool_encode(&p).to_string(), "(v0 & v1) = 1");
    }

    #[test]
    fn contradiction_check() {
        assert!(parse_prop("v0 & ~v0").unwrap().is_contradictory());
        assert!(!parse_prop("v0 | ~v0").unwrap().is_contradictory());
        assert!(!parse_prop("v0 & v1").unwrap().is_contradictory());
    }
}

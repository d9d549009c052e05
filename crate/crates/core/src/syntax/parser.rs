use super::ast::*;
use super::lexer::{lex, SpannedTok, Tok};
use super::SyntaxError;
use crate::arith::Rational;

/// Parse an object-language formula and sort-check it against `sig`.
pub fn parse_l0(text: &str, sig: &Signature) -> Result<Formula0, SyntaxError> {
    let toks = lex(text)?;
    let mut p = Parser::new(toks, sig, None);
    let f = p.formula0()?;
    p.expect_eof()?;
    f.well_sorted(sig)?;
    Ok(f)
}

/// Parse a real-arithmetic formula; probability constants `|phi|` carry the
/// variable tuple `dom`.
pub fn parse_l1(text: &str, sig: &Signature, dom: &[usize]) -> Result<Formula1, SyntaxError> {
    let toks = lex(text)?;
    let mut p = Parser::new(toks, sig, Some(dom.to_vec()));
    let f = p.formula1()?;
    p.expect_eof()?;
    Ok(f)
}

/// Parse a theory file: one sentence per line, `#` comments and blank lines
/// ignored.  When `dom` is empty the variable tuple of every probability
/// constant is inferred as the sorted set of team variables in the text.
pub fn parse_theory(
    text: &str,
    sig: &Signature,
    dom: &[usize],
) -> Result<Vec<Formula1>, SyntaxError> {
    let inferred;
    let dom = if dom.is_empty() {
        inferred = infer_dom(text)?;
        &inferred
    } else {
        dom
    };
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(parse_l1(line, sig, dom)?);
    }
    Ok(out)
}

/// The sorted distinct team variables appearing anywhere in the text.
pub fn infer_dom(text: &str) -> Result<Vec<usize>, SyntaxError> {
    let mut dom = std::collections::BTreeSet::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        for t in lex(line)? {
            if let Tok::Var(i) = t.tok {
                dom.insert(i);
            }
        }
    }
    Ok(dom.into_iter().collect())
}

struct Parser<'a> {
    toks: Vec<SpannedTok>,
    pos: usize,
    sig: &'a Signature,
    dom: Option<Vec<usize>>,
    /// Inside a `|...|` probability constant.
    in_bars: bool,
    /// Parenthesis depth relative to the innermost `|...|` opening.
    paren_depth: usize,
}

impl<'a> Parser<'a> {
    fn new(toks: Vec<SpannedTok>, sig: &'a Signature, dom: Option<Vec<usize>>) -> Self {
        Parser {
            toks,
            pos: 0,
            sig,
            dom,
            in_bars: false,
            paren_depth: 0,
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|t| &t.tok)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|t| t.pos)
            .unwrap_or_else(|| self.toks.last().map(|t| t.pos + 1).unwrap_or(0))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), SyntaxError> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn expect_eof(&mut self) -> Result<(), SyntaxError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.err("expected end of input".into()))
        }
    }

    fn err(&self, msg: String) -> SyntaxError {
        SyntaxError::Parse {
            pos: self.here(),
            msg,
        }
    }

    /// Is a `|` at the current position (the token has just been peeked, not
    /// consumed) a disjunction, as opposed to the closing bar of the
    /// enclosing probability constant? Only relevant inside bars at paren
    /// depth zero: a disjunction must be followed by something that can
    /// start a formula or term.
    fn bar_is_or(&self) -> bool {
        if !self.in_bars || self.paren_depth > 0 {
            return true;
        }
        matches!(
            self.peek2(),
            Some(
                Tok::Var(_)
                    | Tok::Ident(_)
                    | Tok::Number(_)
                    | Tok::Tilde
                    | Tok::LParen
                    | Tok::Forall
                    | Tok::Exists
            )
        )
    }

    // ---- object language ----

    fn formula0(&mut self) -> Result<Formula0, SyntaxError> {
        self.f0_iff()
    }

    fn f0_iff(&mut self) -> Result<Formula0, SyntaxError> {
        let mut f = self.f0_impl()?;
        while self.eat(&Tok::DArrow) {
            let rhs = self.f0_impl()?;
            f = Formula0::iff(f, rhs);
        }
        Ok(f)
    }

    fn f0_impl(&mut self) -> Result<Formula0, SyntaxError> {
        let lhs = self.f0_or()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.f0_impl()?;
            Ok(Formula0::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn f0_or(&mut self) -> Result<Formula0, SyntaxError> {
        let mut f = self.f0_and()?;
        while self.peek() == Some(&Tok::Bar) && self.bar_is_or() {
            // Inside bars a `|` continuation may turn out to be the closing
            // bar after all; backtrack to it on failure.
            let save = self.pos;
            let save_depth = self.paren_depth;
            self.pos += 1;
            match self.f0_and() {
                Ok(rhs) => f = Formula0::or(f, rhs),
                Err(e) => {
                    if self.in_bars && save_depth == 0 {
                        self.pos = save;
                        self.paren_depth = save_depth;
                        break;
                    }
                    return Err(e);
                }
            }
        }
        Ok(f)
    }

    fn f0_and(&mut self) -> Result<Formula0, SyntaxError> {
        let mut f = self.f0_unary()?;
        while self.eat(&Tok::Amp) {
            let rhs = self.f0_unary()?;
            f = Formula0::and(f, rhs);
        }
        Ok(f)
    }

    fn f0_unary(&mut self) -> Result<Formula0, SyntaxError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Formula0::not(self.f0_unary()?))
            }
            Some(Tok::Forall) | Some(Tok::Exists) => self.f0_quant(),
            _ => self.f0_atom(),
        }
    }

    // Quantifier scope extends maximally to the right.
    fn f0_quant(&mut self) -> Result<Formula0, SyntaxError> {
        let univ = match self.bump() {
            Some(Tok::Forall) => true,
            Some(Tok::Exists) => false,
            _ => unreachable!(),
        };
        let v = match self.bump() {
            Some(Tok::Var(i)) => i,
            _ => return Err(self.err("expected a variable vI after quantifier".into())),
        };
        let body = self.formula0()?;
        Ok(if univ {
            Formula0::forall(v, body)
        } else {
            Formula0::exists(v, body)
        })
    }

    fn f0_atom(&mut self) -> Result<Formula0, SyntaxError> {
        // Relational atom: leading ident declared as a relation.
        if let Some(Tok::Ident(name)) = self.peek() {
            if let Some(arity) = self.sig.relation_arity(name) {
                let name = name.clone();
                let at = self.here();
                self.pos += 1;
                self.expect(Tok::LParen, "`(` after relation symbol")?;
                self.paren_depth += 1;
                let mut args = vec![self.term0()?];
                while self.eat(&Tok::Comma) {
                    args.push(self.term0()?);
                }
                self.expect(Tok::RParen, "`)`")?;
                self.paren_depth -= 1;
                if args.len() != arity {
                    return Err(SyntaxError::Parse {
                        pos: at,
                        msg: format!(
                            "arity mismatch: relation `{name}` expects {arity} arguments, got {}",
                            args.len()
                        ),
                    });
                }
                return Ok(Formula0::Rel(name, args));
            }
        }
        // Equality atom, then parenthesized formula.
        let save = self.pos;
        let save_depth = self.paren_depth;
        match self.f0_eq_atom() {
            Ok(f) => Ok(f),
            Err(first) => {
                self.pos = save;
                self.paren_depth = save_depth;
                if self.eat(&Tok::LParen) {
                    self.paren_depth += 1;
                    let f = self.formula0()?;
                    self.expect(Tok::RParen, "`)`")?;
                    self.paren_depth -= 1;
                    Ok(f)
                } else {
                    Err(first)
                }
            }
        }
    }

    // Equality sides parse primary terms only: a bare `~ & |` next to an
    // equality stays a formula connective, so boolean term sugar needs
    // explicit parentheses, as in `(v0 & v1) = 1`.
    fn f0_eq_atom(&mut self) -> Result<Formula0, SyntaxError> {
        let lhs = self.t0_prim()?;
        self.expect(Tok::Eq, "`=` in atom")?;
        let rhs = self.t0_prim()?;
        Ok(Formula0::Eq(lhs, rhs))
    }

    // Terms admit infix `~ & |` sugar for signature functions not/and/or.
    fn term0(&mut self) -> Result<Term0, SyntaxError> {
        self.t0_or()
    }

    fn t0_or(&mut self) -> Result<Term0, SyntaxError> {
        let mut t = self.t0_and()?;
        while self.peek() == Some(&Tok::Bar) && self.bar_is_or() {
            let save = self.pos;
            let save_depth = self.paren_depth;
            self.pos += 1;
            match self.t0_and() {
                Ok(rhs) => t = Term0::App("or".into(), vec![t, rhs]),
                Err(e) => {
                    if self.in_bars && save_depth == 0 {
                        self.pos = save;
                        self.paren_depth = save_depth;
                        break;
                    }
                    return Err(e);
                }
            }
        }
        Ok(t)
    }

    fn t0_and(&mut self) -> Result<Term0, SyntaxError> {
        let mut t = self.t0_unary()?;
        while self.eat(&Tok::Amp) {
            let rhs = self.t0_unary()?;
            t = Term0::App("and".into(), vec![t, rhs]);
        }
        Ok(t)
    }

    fn t0_unary(&mut self) -> Result<Term0, SyntaxError> {
        if self.eat(&Tok::Tilde) {
            Ok(Term0::App("not".into(), vec![self.t0_unary()?]))
        } else {
            self.t0_prim()
        }
    }

    fn t0_prim(&mut self) -> Result<Term0, SyntaxError> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Var(i)) => {
                self.pos += 1;
                Ok(Term0::Var(i))
            }
            Some(Tok::Number(n)) => {
                self.pos += 1;
                Ok(Term0::Const(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::LParen) {
                    let arity = self.sig.function_arity(&name).ok_or_else(|| {
                        SyntaxError::Parse {
                            pos: at,
                            msg: format!("unknown function symbol `{name}`"),
                        }
                    })?;
                    self.pos += 1;
                    self.paren_depth += 1;
                    let mut args = vec![self.term0()?];
                    while self.eat(&Tok::Comma) {
                        args.push(self.term0()?);
                    }
                    self.expect(Tok::RParen, "`)`")?;
                    self.paren_depth -= 1;
                    if args.len() != arity {
                        return Err(SyntaxError::Parse {
                            pos: at,
                            msg: format!(
                                "arity mismatch: function `{name}` expects {arity} arguments, got {}",
                                args.len()
                            ),
                        });
                    }
                    Ok(Term0::App(name, args))
                } else {
                    Ok(Term0::Const(name))
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                self.paren_depth += 1;
                let t = self.term0()?;
                self.expect(Tok::RParen, "`)`")?;
                self.paren_depth -= 1;
                Ok(t)
            }
            _ => Err(self.err("expected a term".into())),
        }
    }

    // ---- real-arithmetic language ----

    fn formula1(&mut self) -> Result<Formula1, SyntaxError> {
        self.f1_iff()
    }

    fn f1_iff(&mut self) -> Result<Formula1, SyntaxError> {
        let mut f = self.f1_impl()?;
        while self.eat(&Tok::DArrow) {
            let rhs = self.f1_impl()?;
            f = Formula1::iff(f, rhs);
        }
        Ok(f)
    }

    fn f1_impl(&mut self) -> Result<Formula1, SyntaxError> {
        let lhs = self.f1_or()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.f1_impl()?;
            Ok(Formula1::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn f1_or(&mut self) -> Result<Formula1, SyntaxError> {
        let mut f = self.f1_and()?;
        while self.peek() == Some(&Tok::Bar) {
            self.pos += 1;
            let rhs = self.f1_and()?;
            f = Formula1::or(f, rhs);
        }
        Ok(f)
    }

    fn f1_and(&mut self) -> Result<Formula1, SyntaxError> {
        let mut f = self.f1_unary()?;
        while self.eat(&Tok::Amp) {
            let rhs = self.f1_unary()?;
            f = Formula1::and(f, rhs);
        }
        Ok(f)
    }

    fn f1_unary(&mut self) -> Result<Formula1, SyntaxError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Formula1::not(self.f1_unary()?))
            }
            Some(Tok::Forall) | Some(Tok::Exists) => self.f1_quant(),
            _ => self.f1_atom(),
        }
    }

    fn f1_quant(&mut self) -> Result<Formula1, SyntaxError> {
        let univ = match self.bump() {
            Some(Tok::Forall) => true,
            Some(Tok::Exists) => false,
            _ => unreachable!(),
        };
        let v = match self.bump() {
            Some(Tok::Ident(name)) => name,
            _ => return Err(self.err("expected a real variable name after quantifier".into())),
        };
        let body = self.formula1()?;
        Ok(if univ {
            Formula1::forall(v, body)
        } else {
            Formula1::exists(v, body)
        })
    }

    fn f1_atom(&mut self) -> Result<Formula1, SyntaxError> {
        let save = self.pos;
        let save_depth = self.paren_depth;
        let save_bars = self.in_bars;
        match self.f1_cmp_atom() {
            Ok(f) => Ok(f),
            Err(first) => {
                self.pos = save;
                self.paren_depth = save_depth;
                self.in_bars = save_bars;
                if self.eat(&Tok::LParen) {
                    self.paren_depth += 1;
                    let f = self.formula1()?;
                    self.expect(Tok::RParen, "`)`")?;
                    self.paren_depth -= 1;
                    Ok(f)
                } else {
                    Err(first)
                }
            }
        }
    }

    fn f1_cmp_atom(&mut self) -> Result<Formula1, SyntaxError> {
        let lhs = self.term1()?;
        let op = match self.bump() {
            Some(Tok::Eq) => return Ok(Formula1::Cmp(lhs, CmpOp::Eq, self.term1()?)),
            Some(Tok::Le) => CmpOp::Le,
            Some(Tok::Lt) => CmpOp::Lt,
            Some(Tok::Ge) => {
                let rhs = self.term1()?;
                return Ok(Formula1::Cmp(rhs, CmpOp::Le, lhs));
            }
            Some(Tok::Gt) => {
                let rhs = self.term1()?;
                return Ok(Formula1::Cmp(rhs, CmpOp::Lt, lhs));
            }
            _ => return Err(self.err("expected a comparison operator".into())),
        };
        let rhs = self.term1()?;
        Ok(Formula1::Cmp(lhs, op, rhs))
    }

    fn term1(&mut self) -> Result<Term1, SyntaxError> {
        let mut t = self.t1_mul()?;
        loop {
            if self.eat(&Tok::Plus) {
                t = Term1::add(t, self.t1_mul()?);
            } else if self.eat(&Tok::Minus) {
                t = Term1::sub(t, self.t1_mul()?);
            } else {
                break;
            }
        }
        Ok(t)
    }

    fn t1_mul(&mut self) -> Result<Term1, SyntaxError> {
        let mut t = self.t1_unary()?;
        while self.eat(&Tok::Star) {
            t = Term1::mul(t, self.t1_unary()?);
        }
        Ok(t)
    }

    fn t1_unary(&mut self) -> Result<Term1, SyntaxError> {
        if self.peek() == Some(&Tok::Minus) {
            // `-3/4` is a negative literal; `-(t)` is negation.
            if matches!(self.peek2(), Some(Tok::Number(_))) {
                self.pos += 1;
                let t = self.t1_number()?;
                if let Term1::Rat(q) = t {
                    return Ok(Term1::Rat(-q));
                }
                unreachable!()
            }
            self.pos += 1;
            return Ok(Term1::neg(self.t1_unary()?));
        }
        self.t1_prim()
    }

    fn t1_prim(&mut self) -> Result<Term1, SyntaxError> {
        match self.peek().cloned() {
            Some(Tok::Number(_)) => self.t1_number(),
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Term1::RealVar(name))
            }
            Some(Tok::Bar) => {
                self.pos += 1;
                let outer_depth = std::mem::replace(&mut self.paren_depth, 0);
                let was = std::mem::replace(&mut self.in_bars, true);
                let phi = self.formula0()?;
                self.in_bars = was;
                self.paren_depth = outer_depth;
                self.expect(Tok::Bar, "closing `|` of probability constant")?;
                let dom = self
                    .dom
                    .clone()
                    .ok_or_else(|| self.err("probability constant outside L1 context".into()))?;
                phi.well_sorted(self.sig)?;
                let pc = ProbConst::new(phi, dom)?;
                Ok(Term1::Prob(pc))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                self.paren_depth += 1;
                let t = self.term1()?;
                self.expect(Tok::RParen, "`)`")?;
                self.paren_depth -= 1;
                Ok(t)
            }
            _ => Err(self.err("expected a term".into())),
        }
    }

    fn t1_number(&mut self) -> Result<Term1, SyntaxError> {
        let text = match self.bump() {
            Some(Tok::Number(n)) => n,
            _ => unreachable!(),
        };
        // `p/q` rational literal
        if self.peek() == Some(&Tok::Slash) {
            if let Some(Tok::Number(d)) = self.peek2().cloned() {
                if !text.contains('.') && !d.contains('.') {
                    self.pos += 2;
                    let q: Rational = format!("{text}/{d}")
                        .parse()
                        .map_err(|e| self.err(format!("{e}")))?;
                    return Ok(Term1::Rat(q));
                }
            }
        }
        let q: Rational = text.parse().map_err(|e| self.err(format!("{e}")))?;
        Ok(Term1::Rat(q))
    }
}

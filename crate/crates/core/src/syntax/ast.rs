use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::SyntaxError;
use crate::arith::Rational;

/// A finite first-order signature for the object language.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub name: String,
    /// (symbol, arity) pairs, arity >= 1.
    pub relations: Vec<(String, usize)>,
    /// (symbol, arity) pairs, arity >= 1; nullary functions are constants.
    pub functions: Vec<(String, usize)>,
    pub constants: Vec<String>,
}

impl Signature {
    pub fn validate(&self) -> Result<(), SyntaxError> {
        let mut seen = BTreeSet::new();
        let all = self
            .relations
            .iter()
            .map(|(s, _)| s)
            .chain(self.functions.iter().map(|(s, _)| s))
            .chain(self.constants.iter());
        for sym in all {
            if !seen.insert(sym.clone()) {
                return Err(SyntaxError::DuplicateSymbol(sym.clone()));
            }
        }
        for (s, a) in self.relations.iter().chain(self.functions.iter()) {
            if *a == 0 {
                return Err(SyntaxError::ZeroArity(s.clone()));
            }
        }
        Ok(())
    }

    pub fn relation_arity(&self, sym: &str) -> Option<usize> {
        self.relations.iter().find(|(s, _)| s == sym).map(|(_, a)| *a)
    }

    pub fn function_arity(&self, sym: &str) -> Option<usize> {
        self.functions.iter().find(|(s, _)| s == sym).map(|(_, a)| *a)
    }

    pub fn is_constant(&self, sym: &str) -> bool {
        self.constants.iter().any(|c| c == sym)
    }
}

/// Terms of the object language: variables `vI`, constants, applications.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Term0 {
    Var(usize),
    Const(String),
    App(String, Vec<Term0>),
}

impl Term0 {
    pub fn free_vars_into(&self, out: &mut BTreeSet<usize>) {
        match self {
            Term0::Var(i) => {
                out.insert(*i);
            }
            Term0::Const(_) => {}
            Term0::App(_, args) => {
                for a in args {
                    a.free_vars_into(out);
                }
            }
        }
    }

    pub fn well_sorted(&self, sig: &Signature) -> Result<(), SyntaxError> {
        match self {
            Term0::Var(_) => Ok(()),
            Term0::Const(c) => {
                if sig.is_constant(c) {
                    Ok(())
                } else {
                    Err(SyntaxError::UnknownSymbol(c.clone()))
                }
            }
            Term0::App(f, args) => {
                let arity = sig
                    .function_arity(f)
                    .ok_or_else(|| SyntaxError::UnknownSymbol(f.clone()))?;
                if arity != args.len() {
                    return Err(SyntaxError::ArityMismatch {
                        symbol: f.clone(),
                        expected: arity,
                        got: args.len(),
                    });
                }
                for a in args {
                    a.well_sorted(sig)?;
                }
                Ok(())
            }
        }
    }
}

/// Formulas of the object language.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Formula0 {
    Eq(Term0, Term0),
    Rel(String, Vec<Term0>),
    Not(Box<Formula0>),
    And(Box<Formula0>, Box<Formula0>),
    Or(Box<Formula0>, Box<Formula0>),
    Implies(Box<Formula0>, Box<Formula0>),
    Iff(Box<Formula0>, Box<Formula0>),
    Forall(usize, Box<Formula0>),
    Exists(usize, Box<Formula0>),
}

impl Formula0 {
    pub fn not(f: Formula0) -> Formula0 {
        Formula0::Not(Box::new(f))
    }
    pub fn and(a: Formula0, b: Formula0) -> Formula0 {
        Formula0::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula0, b: Formula0) -> Formula0 {
        Formula0::Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: Formula0, b: Formula0) -> Formula0 {
        Formula0::Implies(Box::new(a), Box::new(b))
    }
    pub fn iff(a: Formula0, b: Formula0) -> Formula0 {
        Formula0::Iff(Box::new(a), Box::new(b))
    }
    pub fn forall(v: usize, f: Formula0) -> Formula0 {
        Formula0::Forall(v, Box::new(f))
    }
    pub fn exists(v: usize, f: Formula0) -> Formula0 {
        Formula0::Exists(v, Box::new(f))
    }

    pub fn free_vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut out);
        out
    }

    fn free_vars_into(&self, out: &mut BTreeSet<usize>) {
        match self {
            Formula0::Eq(a, b) => {
                a.free_vars_into(out);
                b.free_vars_into(out);
            }
            Formula0::Rel(_, args) => {
                for a in args {
                    a.free_vars_into(out);
                }
            }
            Formula0::Not(f) => f.free_vars_into(out),
            Formula0::And(a, b)
            | Formula0::Or(a, b)
            | Formula0::Implies(a, b)
            | Formula0::Iff(a, b) => {
                a.free_vars_into(out);
                b.free_vars_into(out);
            }
            Formula0::Forall(v, f) | Formula0::Exists(v, f) => {
                let mut inner = BTreeSet::new();
                f.free_vars_into(&mut inner);
                inner.remove(v);
                out.extend(inner);
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn well_sorted(&self, sig: &Signature) -> Result<(), SyntaxError> {
        match self {
            Formula0::Eq(a, b) => {
                a.well_sorted(sig)?;
                b.well_sorted(sig)
            }
            Formula0::Rel(r, args) => {
                let arity = sig
                    .relation_arity(r)
                    .ok_or_else(|| SyntaxError::UnknownSymbol(r.clone()))?;
                if arity != args.len() {
                    return Err(SyntaxError::ArityMismatch {
                        symbol: r.clone(),
                        expected: arity,
                        got: args.len(),
                    });
                }
                for a in args {
                    a.well_sorted(sig)?;
                }
                Ok(())
            }
            Formula0::Not(f) => f.well_sorted(sig),
            Formula0::And(a, b)
            | Formula0::Or(a, b)
            | Formula0::Implies(a, b)
            | Formula0::Iff(a, b) => {
                a.well_sorted(sig)?;
                b.well_sorted(sig)
            }
            Formula0::Forall(_, f) | Formula0::Exists(_, f) => f.well_sorted(sig),
        }
    }
}

/// A probability constant `|phi(x)|`: the formula together with the explicit
/// variable tuple it is read against. Two constants are the same grounding
/// key exactly when both components agree syntactically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProbConst {
    pub formula: Formula0,
    pub tuple: Vec<usize>,
}

impl ProbConst {
    pub fn new(formula: Formula0, tuple: Vec<usize>) -> Result<Self, SyntaxError> {
        let fv = formula.free_vars();
        for v in &fv {
            if !tuple.contains(v) {
                return Err(SyntaxError::VariableOutsideDomain(*v));
            }
        }
        Ok(ProbConst { formula, tuple })
    }
}

/// Terms of the real-arithmetic language: rational constants, real
/// variables, probability constants, and the ring operations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Term1 {
    Rat(Rational),
    RealVar(String),
    Prob(ProbConst),
    Add(Box<Term1>, Box<Term1>),
    Sub(Box<Term1>, Box<Term1>),
    Mul(Box<Term1>, Box<Term1>),
    Neg(Box<Term1>),
}

impl Term1 {
    pub fn add(a: Term1, b: Term1) -> Term1 {
        Term1::Add(Box::new(a), Box::new(b))
    }
    pub fn sub(a: Term1, b: Term1) -> Term1 {
        Term1::Sub(Box::new(a), Box::new(b))
    }
    pub fn mul(a: Term1, b: Term1) -> Term1 {
        Term1::Mul(Box::new(a), Box::new(b))
    }
    pub fn neg(a: Term1) -> Term1 {
        Term1::Neg(Box::new(a))
    }
    pub fn rat(n: i64, d: i64) -> Term1 {
        Term1::Rat(Rational::new(n, d))
    }
    pub fn prob(formula: Formula0, tuple: Vec<usize>) -> Term1 {
        Term1::Prob(ProbConst { formula, tuple })
    }

    pub fn prob_consts_into<'a>(&'a self, out: &mut Vec<&'a ProbConst>) {
        match self {
            Term1::Rat(_) | Term1::RealVar(_) => {}
            Term1::Prob(p) => out.push(p),
            Term1::Add(a, b) | Term1::Sub(a, b) | Term1::Mul(a, b) => {
                a.prob_consts_into(out);
                b.prob_consts_into(out);
            }
            Term1::Neg(a) => a.prob_consts_into(out),
        }
    }

    pub fn real_vars_into<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Term1::Rat(_) | Term1::Prob(_) => {}
            Term1::RealVar(v) => {
                out.insert(v);
            }
            Term1::Add(a, b) | Term1::Sub(a, b) | Term1::Mul(a, b) => {
                a.real_vars_into(out);
                b.real_vars_into(out);
            }
            Term1::Neg(a) => a.real_vars_into(out),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CmpOp {
    Eq,
    Le,
    Lt,
}

impl fmt::Display for CmpOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CmpOp::Eq => write!(f, "="),
            CmpOp::Le => write!(f, "<="),
            CmpOp::Lt => write!(f, "<"),
        }
    }
}

/// Formulas of the real-arithmetic language.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Formula1 {
    Cmp(Term1, CmpOp, Term1),
    Not(Box<Formula1>),
    And(Box<Formula1>, Box<Formula1>),
    Or(Box<Formula1>, Box<Formula1>),
    Implies(Box<Formula1>, Box<Formula1>),
    Iff(Box<Formula1>, Box<Formula1>),
    Forall(String, Box<Formula1>),
    Exists(String, Box<Formula1>),
}

impl Formula1 {
    pub fn cmp(a: Term1, op: CmpOp, b: Term1) -> Formula1 {
        Formula1::Cmp(a, op, b)
    }
    pub fn not(f: Formula1) -> Formula1 {
        Formula1::Not(Box::new(f))
    }
    pub fn and(a: Formula1, b: Formula1) -> Formula1 {
        Formula1::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula1, b: Formula1) -> Formula1 {
        Formula1::Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: Formula1, b: Formula1) -> Formula1 {
        Formula1::Implies(Box::new(a), Box::new(b))
    }
    pub fn iff(a: Formula1, b: Formula1) -> Formula1 {
        Formula1::Iff(Box::new(a), Box::new(b))
    }
    pub fn forall(v: impl Into<String>, f: Formula1) -> Formula1 {
        Formula1::Forall(v.into(), Box::new(f))
    }
    pub fn exists(v: impl Into<String>, f: Formula1) -> Formula1 {
        Formula1::Exists(v.into(), Box::new(f))
    }

    pub fn conjoin(mut parts: Vec<Formula1>) -> Option<Formula1> {
        let first = if parts.is_empty() {
            return None;
        } else {
            parts.remove(0)
        };
        Some(parts.into_iter().fold(first, Formula1::and))
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula1::Cmp(..) => true,
            Formula1::Not(f) => f.is_quantifier_free(),
            Formula1::And(a, b)
            | Formula1::Or(a, b)
            | Formula1::Implies(a, b)
            | Formula1::Iff(a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
            Formula1::Forall(..) | Formula1::Exists(..) => false,
        }
    }

    /// Positive bounded fragment: atoms combined with `&`, `|`, `forall`,
    /// and bounded existentials `exists r (lo <= r & r <= hi & body)`.
    pub fn is_positive_bounded(&self) -> bool {
        match self {
            Formula1::Cmp(..) => true,
            Formula1::And(a, b) | Formula1::Or(a, b) => {
                a.is_positive_bounded() && b.is_positive_bounded()
            }
            Formula1::Forall(_, f) => f.is_positive_bounded(),
            Formula1::Exists(v, f) => match bounded_body(v, f) {
                Some(body) => body.is_positive_bounded(),
                None => false,
            },
            Formula1::Not(_) | Formula1::Implies(..) | Formula1::Iff(..) => false,
        }
    }

    pub fn prob_consts(&self) -> Vec<&ProbConst> {
        let mut out = Vec::new();
        self.prob_consts_into(&mut out);
        out
    }

    pub fn prob_consts_into<'a>(&'a self, out: &mut Vec<&'a ProbConst>) {
        match self {
            Formula1::Cmp(a, _, b) => {
                a.prob_consts_into(out);
                b.prob_consts_into(out);
            }
            Formula1::Not(f) | Formula1::Forall(_, f) | Formula1::Exists(_, f) => {
                f.prob_consts_into(out)
            }
            Formula1::And(a, b)
            | Formula1::Or(a, b)
            | Formula1::Implies(a, b)
            | Formula1::Iff(a, b) => {
                a.prob_consts_into(out);
                b.prob_consts_into(out);
            }
        }
    }

    pub fn free_real_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.free_real_vars_into(&mut out);
        out
    }

    fn free_real_vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula1::Cmp(a, _, b) => {
                let mut s = BTreeSet::new();
                a.real_vars_into(&mut s);
                b.real_vars_into(&mut s);
                out.extend(s.into_iter().map(|v| v.to_string()));
            }
            Formula1::Not(f) => f.free_real_vars_into(out),
            Formula1::And(a, b)
            | Formula1::Or(a, b)
            | Formula1::Implies(a, b)
            | Formula1::Iff(a, b) => {
                a.free_real_vars_into(out);
                b.free_real_vars_into(out);
            }
            Formula1::Forall(v, f) | Formula1::Exists(v, f) => {
                let mut inner = BTreeSet::new();
                f.free_real_vars_into(&mut inner);
                inner.remove(v);
                out.extend(inner);
            }
        }
    }
}

/// Match `lo <= v & v <= hi & body` (left-associated) and return the body
/// with bounds; the bounds must be rational constants.
pub fn bounded_body<'a>(v: &str, f: &'a Formula1) -> Option<&'a Formula1> {
    // ((lo <= v) & (v <= hi)) & body
    if let Formula1::And(left, body) = f {
        if let Formula1::And(lo, hi) = &**left {
            if is_lower_bound(v, lo) && is_upper_bound(v, hi) {
                return Some(body);
            }
        }
    }
    None
}

pub fn bound_values(v: &str, f: &Formula1) -> Option<(Rational, Rational)> {
    if let Formula1::And(left, _) = f {
        if let Formula1::And(lo, hi) = &**left {
            if let (Formula1::Cmp(Term1::Rat(l), CmpOp::Le, _), Formula1::Cmp(_, CmpOp::Le, Term1::Rat(h))) =
                (&**lo, &**hi)
            {
                if is_lower_bound(v, lo) && is_upper_bound(v, hi) {
                    return Some((l.clone(), h.clone()));
                }
            }
        }
    }
    None
}

fn is_lower_bound(v: &str, f: &Formula1) -> bool {
    matches!(f, Formula1::Cmp(Term1::Rat(_), CmpOp::Le, Term1::RealVar(w)) if w == v)
}

fn is_upper_bound(v: &str, f: &Formula1) -> bool {
    matches!(f, Formula1::Cmp(Term1::RealVar(w), CmpOp::Le, Term1::Rat(_)) if w == v)
}

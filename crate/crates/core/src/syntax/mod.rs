//! Lexing, parsing, printing and normal forms for the object language and
//! the real-arithmetic language. The concrete grammar is documented in
//! `docs/grammar.md`.

mod ast;
mod boolenc;
mod enumerate;
mod lexer;
mod parser;
mod printer;
mod shape;

pub use ast::{
    bound_values, bounded_body, CmpOp, Formula0, Formula1, ProbConst, Signature, Term0, Term1,
};
pub use boolenc::{bool_encode, parse_prop, Prop};
pub use enumerate::{canonical_enumeration, enumeration_of};
pub use lexer::{lex, SpannedTok, Tok};
pub use parser::{infer_dom, parse_l0, parse_l1, parse_theory};
pub use shape::{to_disjunctive_shape, to_disjunctive_shape_l0};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SyntaxError {
    #[error("lex error at {pos}: unexpected `{found}`")]
    Lex { pos: usize, found: String },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("arity mismatch: `{symbol}` expects {expected} arguments, got {got}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        got: usize,
    },
    #[error("symbol `{0}` declared more than once")]
    DuplicateSymbol(String),
    #[error("`{0}` declared with arity 0; use a constant")]
    ZeroArity(String),
    #[error("variable v{0} used outside the declared team domain")]
    VariableOutsideDomain(usize),
    #[error("shape violation: {0}")]
    ShapeViolation(String),
}

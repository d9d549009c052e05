//! Exact rational arithmetic and evaluation of grounded real-arithmetic
//! formulas. Quantified sentences go through a pluggable backend: the
//! built-in branch-and-prune interval search, or an external solver
//! subprocess.

mod eval;
pub(crate) mod interval;
pub mod linear;
mod rational;

pub use eval::{eval_ground_qf, eval_ground_term, substitute_reals};
pub use interval::{eval_quantified, Interval, Policy};
pub use rational::Rational;

use std::collections::HashMap;
use std::fmt;

use crate::syntax::ProbConst;
use thiserror::Error;

/// Values for the probability constants mentioned by a sentence.
pub type Grounding = HashMap<ProbConst, Rational>;

/// Three-valued outcome of evaluating a sentence. `Unknown` is only
/// reachable from quantified evaluation paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Unknown { reason: String, delta: Option<Rational> },
}

impl Verdict {
    pub fn unknown(reason: impl Into<String>, delta: Option<Rational>) -> Verdict {
        Verdict::Unknown {
            reason: reason.into(),
            delta,
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "HOLDS"),
            Verdict::Fails => write!(f, "FAILS"),
            Verdict::Unknown { reason, delta } => {
                write!(f, "UNKNOWN ({reason}")?;
                if let Some(d) = delta {
                    write!(f, ", delta = {d}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum ArithError {
    #[error("bad rational literal `{0}`")]
    BadRationalLiteral(String),
    #[error("probability constant {0} missing from grounding")]
    MissingConstant(String),
    #[error("free real variable `{0}` in ground evaluation")]
    FreeRealVariable(String),
    #[error("formula outside the supported quantified fragment: {0}")]
    UnsupportedFragment(String),
    #[error("external backend failure: {0}")]
    Backend(String),
}

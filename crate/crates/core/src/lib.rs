//! Measure team logic over finite structures.
//!
//! A *team* is a weighted table of variable assignments into a finite
//! first-order structure. For a first-order formula `phi`, `|phi|` denotes the
//! probability that a row drawn according to the weights satisfies `phi`.
//! This crate parses the two-sorted language (object formulas and
//! real-arithmetic sentences over the `|phi|` constants), evaluates
//! probabilities with exact rational arithmetic, checks theories against
//! teams, verifies proof scripts in the A0/A1/A2/R0 system, and synthesizes
//! witness teams for finite consistent theories.

pub mod arith;
pub mod corpus;
pub mod proof;
pub mod semantics;
pub mod syntax;
pub mod teams;
pub mod witness;

pub use arith::{Grounding, Rational, Verdict};
pub use semantics::FiniteStructure;
pub use syntax::{Formula0, Formula1, Signature, Term0, Term1};
pub use teams::DiscreteMeasureTeam;

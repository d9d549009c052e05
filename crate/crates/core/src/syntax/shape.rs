//! Distribution of a conjunction of disjunctions of conjunctions into a
//! disjunction of conjunctions over the same atoms. Deduplication is
//! syntactic only; exponential blowup is accepted at this scale.

use super::ast::{Formula0, Formula1};
use super::SyntaxError;

/// Generic view of a two-connective shape tree.
trait ShapeNode: Clone + Eq {
    fn as_and(&self) -> Option<(&Self, &Self)>;
    fn as_or(&self) -> Option<(&Self, &Self)>;
    fn mk_and(a: Self, b: Self) -> Self;
    fn mk_or(a: Self, b: Self) -> Self;
}

impl ShapeNode for Formula1 {
    fn as_and(&self) -> Option<(&Self, &Self)> {
        match self {
            Formula1::And(a, b) => Some((a, b)),
            _ => None,
        }
    }
    fn as_or(&self) -> Option<(&Self, &Self)> {
        match self {
            Formula1::Or(a, b) => Some((a, b)),
            _ => None,
        }
    }
    fn mk_and(a: Self, b: Self) -> Self {
        Formula1::and(a, b)
    }
    fn mk_or(a: Self, b: Self) -> Self {
        Formula1::or(a, b)
    }
}

impl ShapeNode for Formula0 {
    fn as_and(&self) -> Option<(&Self, &Self)> {
        match self {
            Formula0::And(a, b) => Some((a, b)),
            _ => None,
        }
    }
    fn as_or(&self) -> Option<(&Self, &Self)> {
        match self {
            Formula0::Or(a, b) => Some((a, b)),
            _ => None,
        }
    }
    fn mk_and(a: Self, b: Self) -> Self {
        Formula0::and(a, b)
    }
    fn mk_or(a: Self, b: Self) -> Self {
        Formula0::or(a, b)
    }
}

fn conjuncts<N: ShapeNode>(f: &N, out: &mut Vec<N>) {
    match f.as_and() {
        Some((a, b)) => {
            conjuncts(a, out);
            conjuncts(b, out);
        }
        None => out.push(f.clone()),
    }
}

fn disjuncts<N: ShapeNode>(f: &N, out: &mut Vec<N>) {
    match f.as_or() {
        Some((a, b)) => {
            disjuncts(a, out);
            disjuncts(b, out);
        }
        None => out.push(f.clone()),
    }
}

/// Flatten `f` as a conjunction of disjunctions of conjunctions of atoms.
/// Each inner entry is a conjunct list of one disjunct. An atom is anything
/// that is neither `&` nor `|` at the level inspected.
fn cdc_view<N: ShapeNode>(f: &N) -> Result<Vec<Vec<Vec<N>>>, SyntaxError> {
    let mut top = Vec::new();
    conjuncts_or_self(f, &mut top);
    let mut out = Vec::new();
    for clause in top {
        let mut ds = Vec::new();
        disjuncts(&clause, &mut ds);
        let mut clause_out = Vec::new();
        for d in ds {
            let mut atoms = Vec::new();
            conjuncts(&d, &mut atoms);
            for a in &atoms {
                if a.as_or().is_some() {
                    return Err(SyntaxError::ShapeViolation(
                        "disjunction nested below the inner conjunction level".into(),
                    ));
                }
            }
            clause_out.push(atoms);
        }
        out.push(clause_out);
    }
    Ok(out)
}

fn conjuncts_or_self<N: ShapeNode>(f: &N, out: &mut Vec<N>) {
    // top-level conjunction must not be split below a disjunction
    match f.as_and() {
        Some((a, b)) => {
            conjuncts_or_self(a, out);
            conjuncts_or_self(b, out);
        }
        None => out.push(f.clone()),
    }
}

fn distribute<N: ShapeNode>(f: &N) -> Result<N, SyntaxError> {
    let cdc = cdc_view(f)?;
    // choice vectors over the disjunct lists
    let mut results: Vec<Vec<N>> = vec![Vec::new()];
    for clause in &cdc {
        let mut next = Vec::new();
        for partial in &results {
            for disjunct in clause {
                let mut combined = partial.clone();
                for atom in disjunct {
                    if !combined.contains(atom) {
                        combined.push(atom.clone());
                    }
                }
                next.push(combined);
            }
        }
        results = next;
    }
    // syntactic dedup of whole conjunctions
    let mut seen: Vec<Vec<N>> = Vec::new();
    for r in results {
        if !seen.contains(&r) {
            seen.push(r);
        }
    }
    let mut or_parts = Vec::new();
    for conj in seen {
        let mut iter = conj.into_iter();
        let first = iter.next().expect("nonempty conjunction");
        or_parts.push(iter.fold(first, N::mk_and));
    }
    let mut iter = or_parts.into_iter();
    let first = iter.next().expect("nonempty disjunction");
    Ok(iter.fold(first, N::mk_or))
}

/// Rewrite a `&`-of-`|`-of-`&` shaped formula into `|`-of-`&` form, the
/// normalization step used when combining rule premises.
pub fn to_disjunctive_shape(f: &Formula1) -> Result<Formula1, SyntaxError> {
    distribute(f)
}

/// The same normalization on object-language sentences.
pub fn to_disjunctive_shape_l0(f: &Formula0) -> Result<Formula0, SyntaxError> {
    distribute(f)
}

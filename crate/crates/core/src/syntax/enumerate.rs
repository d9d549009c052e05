//! Deterministic enumeration of object-language formulas, ordered by
//! serialized length and then lexicographically. The ordering is a frozen
//! artifact decision; golden tests pin it.

use std::collections::BTreeSet;

use super::ast::{Formula0, Signature, Term0};

/// First `bound` formulas over `sig` with free variables among `dom`,
/// in the published order. Two runs produce identical lists.
pub fn canonical_enumeration(sig: &Signature, dom: &[usize], bound: usize) -> Vec<Formula0> {
    let mut pool: BTreeSet<(usize, String, Formula0)> = BTreeSet::new();
    let mut size = 1usize;
    // grow by structural size until the ordered prefix is stable
    while pool.len() < bound.saturating_mul(4) && size <= 6 {
        for f in formulas_of_size(sig, dom, size) {
            let s = f.to_string();
            pool.insert((s.len(), s, f));
        }
        size += 1;
        if pool.len() >= bound && size > 3 {
            break;
        }
    }
    pool.into_iter().take(bound).map(|(_, _, f)| f).collect()
}

/// The formulas occurring in a finite theory, in the published order.
pub fn enumeration_of(formulas: impl IntoIterator<Item = Formula0>) -> Vec<Formula0> {
    let mut pool: BTreeSet<(usize, String, Formula0)> = BTreeSet::new();
    for f in formulas {
        let s = f.to_string();
        pool.insert((s.len(), s, f));
    }
    pool.into_iter().map(|(_, _, f)| f).collect()
}

fn terms_of_size(sig: &Signature, dom: &[usize], size: usize) -> Vec<Term0> {
    if size == 1 {
        let mut out: Vec<Term0> = dom.iter().map(|v| Term0::Var(*v)).collect();
        out.extend(sig.constants.iter().map(|c| Term0::Const(c.clone())));
        return out;
    }
    let mut out = Vec::new();
    for (f, arity) in &sig.functions {
        for args in arg_tuples(sig, dom, *arity, size - 1) {
            out.push(Term0::App(f.clone(), args));
        }
    }
    out
}

fn arg_tuples(sig: &Signature, dom: &[usize], arity: usize, budget: usize) -> Vec<Vec<Term0>> {
    if arity == 0 {
        return if budget == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first_size in 1..=budget.saturating_sub(arity - 1) {
        for first in terms_of_size(sig, dom, first_size) {
            for rest in arg_tuples(sig, dom, arity - 1, budget - first_size) {
                let mut t = vec![first.clone()];
                t.extend(rest);
                out.push(t);
            }
        }
    }
    out
}

fn formulas_of_size(sig: &Signature, dom: &[usize], size: usize) -> Vec<Formula0> {
    let mut out = Vec::new();
    // atoms: a relational atom or equality of total term size `size`
    for (r, arity) in &sig.relations {
        for args in arg_tuples(sig, dom, *arity, size) {
            out.push(Formula0::Rel(r.clone(), args));
        }
    }
    if size >= 2 {
        for ls in 1..size {
            for lt in terms_of_size(sig, dom, ls) {
                for rt in terms_of_size(sig, dom, size - ls) {
                    out.push(Formula0::Eq(lt.clone(), rt));
                }
            }
        }
    }
    if size >= 2 {
        for f in formulas_of_size(sig, dom, size - 1) {
            out.push(Formula0::not(f.clone()));
            for v in dom {
                out.push(Formula0::forall(*v, f.clone()));
                out.push(Formula0::exists(*v, f.clone()));
            }
        }
    }
    if size >= 3 {
        for ls in 1..size - 1 {
            for a in formulas_of_size(sig, dom, ls) {
                for b in formulas_of_size(sig, dom, size - 1 - ls) {
                    out.push(Formula0::and(a.clone(), b.clone()));
                    out.push(Formula0::or(a.clone(), b.clone()));
                    out.push(Formula0::implies(a.clone(), b.clone()));
                    out.push(Formula0::iff(a.clone(), b.clone()));
                }
            }
        }
    }
    out
}

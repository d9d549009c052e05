//! Witness synthesis for finite quantifier-free theories: enumerate the
//! sign-vector atoms realizable in the structure, expand each probability
//! constant into a sum of atom masses, solve for exact rational weights, and
//! assemble a team from atom representatives. The interval tree presents the
//! same weights as a nested partition of `[0, 1)`.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use rand::{Rng, SeedableRng};

use crate::arith::linear::{self, Constraint, Feasibility, Rel};
use crate::arith::{eval_ground_qf, interval, substitute_reals, Grounding, Rational};
use crate::semantics::{all_tuples, FiniteStructure, SemanticsError};
use crate::syntax::{enumeration_of, CmpOp, Formula0, Formula1, Term1};
use crate::teams::{DiscreteMeasureTeam, TeamError, TeamRow};

#[derive(Debug, Error)]
pub enum WitnessError {
    #[error("atom scan needs {needed} sign checks, over the cap {cap}")]
    CapExceeded { needed: u128, cap: u128 },
    #[error("theory member is quantified: `{0}` (use the arithmetic backend instead)")]
    Quantified(String),
    #[error("theory mentions real variable `{0}`, which has no place in synthesis")]
    FreeRealVariable(String),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Team(#[from] TeamError),
}

#[derive(Debug, Clone)]
pub struct AtomEntry {
    /// sign vector over the formula list; `sigma[i]` asserts `formulas[i]`
    pub sigma: Vec<bool>,
    /// lexicographically least realizing tuple, if any
    pub representative: Option<Vec<usize>>,
}

impl AtomEntry {
    pub fn realizable(&self) -> bool {
        self.representative.is_some()
    }
}

#[derive(Debug, Clone)]
pub struct AtomTable {
    pub formulas: Vec<Formula0>,
    /// the variable tuple x scanned over `A^|x|`
    pub tuple: Vec<usize>,
    /// indexed by sign-vector code: bit `i` of the index is `sigma[i]`
    pub atoms: Vec<AtomEntry>,
}

fn sigma_of_code(code: usize, m: usize) -> Vec<bool> {
    (0..m).map(|i| code >> i & 1 == 1).collect()
}

/// Exhaustive scan of `A^|x|`, recording each tuple's sign vector over the
/// formula list; the least tuple per sign vector is kept as representative.
pub fn enumerate_atoms(
    structure: &FiniteStructure,
    formulas: &[Formula0],
    tuple: &[usize],
    cap: u128,
) -> Result<AtomTable, WitnessError> {
    let m = formulas.len();
    let scan = (structure.domain_size as u128).pow(tuple.len() as u32);
    let needed = scan.saturating_mul(1u128 << m.min(127));
    if needed > cap {
        return Err(WitnessError::CapExceeded { needed, cap });
    }
    let points = all_tuples(structure.domain_size, tuple.len());
    let classify = |point: &Vec<usize>| -> Result<usize, SemanticsError> {
        let env: HashMap<usize, usize> =
            tuple.iter().copied().zip(point.iter().copied()).collect();
        let mut code = 0usize;
        for (i, f) in formulas.iter().enumerate() {
            if structure.sat_fo(f, &env)? {
                code |= 1 << i;
            }
        }
        Ok(code)
    };

    #[cfg(feature = "parallel")]
    let coded: Vec<(usize, &Vec<usize>)> = points
        .par_iter()
        .map(|p| classify(p).map(|c| (c, p)))
        .collect::<Result<_, _>>()?;
    #[cfg(not(feature = "parallel"))]
    let coded: Vec<(usize, &Vec<usize>)> = points
        .iter()
        .map(|p| classify(p).map(|c| (c, p)))
        .collect::<Result<_, _>>()?;

    let mut reps: Vec<Option<Vec<usize>>> = vec![None; 1 << m];
    // deterministic merge: the least tuple wins regardless of scan order
    for (code, point) in coded {
        match &reps[code] {
            Some(existing) if existing <= point => {}
            _ => reps[code] = Some(point.clone()),
        }
    }
    let atoms = reps
        .into_iter()
        .enumerate()
        .map(|(code, representative)| AtomEntry {
            sigma: sigma_of_code(code, m),
            representative,
        })
        .collect();
    Ok(AtomTable {
        formulas: formulas.to_vec(),
        tuple: tuple.to_vec(),
        atoms,
    })
}

/// Builds the table for a theory: formulas are the distinct object formulas
/// under the bars, in canonical enumeration order; the tuple is the union of
/// the constants' tuples.
pub fn table_for_theory(
    structure: &FiniteStructure,
    sigma: &[Formula1],
    cap: u128,
) -> Result<AtomTable, WitnessError> {
    let mut formulas = Vec::new();
    let mut tuple: Vec<usize> = Vec::new();
    for s in sigma {
        for pc in s.prob_consts() {
            if !formulas.contains(&pc.formula) {
                formulas.push(pc.formula.clone());
            }
            for v in &pc.tuple {
                if !tuple.contains(v) {
                    tuple.push(*v);
                }
            }
        }
    }
    tuple.sort_unstable();
    let formulas = enumeration_of(formulas);
    enumerate_atoms(structure, &formulas, &tuple, cap)
}

/// The constraint system: each sentence of the theory with `|phi_i|`
/// replaced by the sum of the masses of the atoms asserting `phi_i`, plus
/// the simplex conditions and zero-forcing of unrealizable atoms. Atom
/// masses appear as real variables `p0, p1, ...` by sign-vector code.
#[derive(Debug, Clone)]
pub struct SynthesisProblem {
    pub n_atoms: usize,
    /// simplex + zero-forcing, always linear
    pub base: Vec<Constraint>,
    /// rendering of `base` for reports
    pub base_text: Vec<String>,
    /// the substituted theory sentences
    pub sentences: Vec<Formula1>,
    /// indices of unrealizable atoms
    pub forced_zero: Vec<usize>,
}

fn atom_var(code: usize) -> String {
    format!("p{code}")
}

fn expansion_term(formula_index: usize, n_atoms: usize) -> Term1 {
    let mut sum: Option<Term1> = None;
    for code in 0..n_atoms {
        if code >> formula_index & 1 == 1 {
            let v = Term1::RealVar(atom_var(code));
            sum = Some(match sum {
                Some(s) => Term1::add(s, v),
                None => v,
            });
        }
    }
    sum.expect("every formula has asserting atoms")
}

fn substitute_probs(f: &Formula1, table: &AtomTable, n_atoms: usize) -> Formula1 {
    fn term(t: &Term1, table: &AtomTable, n: usize) -> Term1 {
        match t {
            Term1::Prob(pc) => {
                let i = table
                    .formulas
                    .iter()
                    .position(|f| *f == pc.formula)
                    .expect("table built from the same theory");
                expansion_term(i, n)
            }
            Term1::Rat(_) | Term1::RealVar(_) => t.clone(),
            Term1::Add(a, b) => Term1::add(term(a, table, n), term(b, table, n)),
            Term1::Sub(a, b) => Term1::sub(term(a, table, n), term(b, table, n)),
            Term1::Mul(a, b) => Term1::mul(term(a, table, n), term(b, table, n)),
            Term1::Neg(a) => Term1::neg(term(a, table, n)),
        }
    }
    match f {
        Formula1::Cmp(a, op, b) => {
            Formula1::Cmp(term(a, table, n_atoms), *op, term(b, table, n_atoms))
        }
        Formula1::Not(x) => Formula1::not(substitute_probs(x, table, n_atoms)),
        Formula1::And(a, b) => Formula1::and(
            substitute_probs(a, table, n_atoms),
            substitute_probs(b, table, n_atoms),
        ),
        Formula1::Or(a, b) => Formula1::or(
            substitute_probs(a, table, n_atoms),
            substitute_probs(b, table, n_atoms),
        ),
        Formula1::Implies(a, b) => Formula1::implies(
            substitute_probs(a, table, n_atoms),
            substitute_probs(b, table, n_atoms),
        ),
        Formula1::Iff(a, b) => Formula1::iff(
            substitute_probs(a, table, n_atoms),
            substitute_probs(b, table, n_atoms),
        ),
        Formula1::Forall(v, x) => {
            Formula1::Forall(v.clone(), Box::new(substitute_probs(x, table, n_atoms)))
        }
        Formula1::Exists(v, x) => {
            Formula1::Exists(v.clone(), Box::new(substitute_probs(x, table, n_atoms)))
        }
    }
}

pub fn build_problem(
    sigma: &[Formula1],
    table: &AtomTable,
) -> Result<SynthesisProblem, WitnessError> {
    for s in sigma {
        if !s.is_quantifier_free() {
            return Err(WitnessError::Quantified(s.to_string()));
        }
        if let Some(v) = s.free_real_vars().into_iter().next() {
            return Err(WitnessError::FreeRealVariable(v));
        }
    }
    let n = table.atoms.len();
    let mut base = Vec::new();
    let mut base_text = Vec::new();
    // sum to one
    base.push(Constraint::new(vec![Rational::one(); n], Rel::Eq, Rational::one()));
    base_text.push("p0 + ... = 1".to_string());
    // nonnegativity
    for code in 0..n {
        let mut row = vec![Rational::zero(); n];
        row[code] = -Rational::one();
        base.push(Constraint::new(row, Rel::Le, Rational::zero()));
        base_text.push(format!("{} >= 0", atom_var(code)));
    }
    // zero-forcing of unrealizable atoms
    let mut forced_zero = Vec::new();
    for (code, atom) in table.atoms.iter().enumerate() {
        if !atom.realizable() {
            let mut row = vec![Rational::zero(); n];
            row[code] = Rational::one();
            base.push(Constraint::new(row, Rel::Eq, Rational::zero()));
            base_text.push(format!("{} = 0 (unrealizable)", atom_var(code)));
            forced_zero.push(code);
        }
    }
    let sentences = sigma
        .iter()
        .map(|s| substitute_probs(s, table, n))
        .collect();
    Ok(SynthesisProblem {
        n_atoms: n,
        base,
        base_text,
        sentences,
        forced_zero,
    })
}

#[derive(Debug, Clone, Serialize)]
pub enum SolveOutcome {
    /// atom masses by sign-vector code, verified exactly
    Weights(Vec<Rational>),
    /// an infeasible branch with its Farkas combination, rendered textually
    Unsat { certificate: Vec<(String, Rational)> },
    Unknown { reason: String },
}

fn linearize_atoms(
    clause: &[Formula1],
    n: usize,
) -> Option<Vec<Constraint>> {
    fn lin(t: &Term1, n: usize) -> Option<(Vec<Rational>, Rational)> {
        match t {
            Term1::Rat(q) => Some((vec![Rational::zero(); n], q.clone())),
            Term1::RealVar(v) => {
                let code: usize = v.strip_prefix('p')?.parse().ok()?;
                let mut row = vec![Rational::zero(); n];
                row[code] = Rational::one();
                Some((row, Rational::zero()))
            }
            Term1::Prob(_) => None,
            Term1::Add(a, b) => {
                let (ra, ka) = lin(a, n)?;
                let (rb, kb) = lin(b, n)?;
                Some((
                    ra.iter().zip(rb.iter()).map(|(x, y)| x + y).collect(),
                    ka + kb,
                ))
            }
            Term1::Sub(a, b) => {
                let (ra, ka) = lin(a, n)?;
                let (rb, kb) = lin(b, n)?;
                Some((
                    ra.iter().zip(rb.iter()).map(|(x, y)| x - y).collect(),
                    ka - kb,
                ))
            }
            Term1::Neg(a) => {
                let (ra, ka) = lin(a, n)?;
                Some((ra.iter().map(|x| -x).collect(), -ka))
            }
            Term1::Mul(a, b) => {
                let (ra, ka) = lin(a, n)?;
                let (rb, kb) = lin(b, n)?;
                if ra.iter().all(|c| c.is_zero()) {
                    Some((rb.iter().map(|c| c * &ka).collect(), &ka * &kb))
                } else if rb.iter().all(|c| c.is_zero()) {
                    Some((ra.iter().map(|c| c * &kb).collect(), &ka * &kb))
                } else {
                    None
                }
            }
        }
    }
    let mut out = Vec::new();
    for atom in clause {
        let (a, op, b) = match atom {
            Formula1::Cmp(a, op, b) => (a, op, b),
            _ => return None,
        };
        let (ra, ka) = lin(&Term1::sub(a.clone(), b.clone()), n)?;
        let rel = match op {
            CmpOp::Eq => Rel::Eq,
            CmpOp::Le => Rel::Le,
            CmpOp::Lt => Rel::Lt,
        };
        out.push(Constraint::new(ra, rel, -ka));
    }
    Some(out)
}

fn dnf(f: &Formula1) -> Vec<Vec<Formula1>> {
    match f {
        Formula1::Or(a, b) => {
            let mut out = dnf(a);
            out.extend(dnf(b));
            out
        }
        Formula1::And(a, b) => {
            let la = dnf(a);
            let lb = dnf(b);
            let mut out = Vec::new();
            for x in &la {
                for y in &lb {
                    let mut z = x.clone();
                    z.extend(y.iter().cloned());
                    out.push(z);
                }
            }
            out
        }
        atom => vec![vec![atom.clone()]],
    }
}

/// Exact check of an atom-mass candidate against the whole problem.
fn verify_candidate(problem: &SynthesisProblem, weights: &[Rational]) -> bool {
    if weights.len() != problem.n_atoms {
        return false;
    }
    if !linear::check_point(weights, &problem.base) {
        return false;
    }
    let env: HashMap<String, Rational> = weights
        .iter()
        .enumerate()
        .map(|(code, w)| (atom_var(code), w.clone()))
        .collect();
    problem.sentences.iter().all(|s| {
        let grounded = substitute_reals(s, &env);
        matches!(eval_ground_qf(&grounded, &Grounding::new()), Ok(v) if v.holds())
    })
}

/// Three-valued solve: exact elimination on linear branches; nonlinear
/// branches go through bounded numeric search, rational reconstruction and
/// exact re-verification. Only verified weights are ever returned; UNSAT
/// carries a certificate and is only issued when every branch is linear.
pub fn solve_weights(problem: &SynthesisProblem, denominator_cap: u64) -> SolveOutcome {
    let n = problem.n_atoms;
    let conj = match problem
        .sentences
        .iter()
        .cloned()
        .reduce(Formula1::and)
    {
        Some(c) => c,
        None => {
            // only simplex constraints: any feasible point will do
            return match linear::solve(n, &problem.base) {
                Feasibility::Sat(p) => SolveOutcome::Weights(p),
                Feasibility::Unsat(cert) => SolveOutcome::Unsat {
                    certificate: render_certificate(&cert, problem, &[]),
                },
            };
        }
    };
    let nnf = match interval::nnf(&conj) {
        Ok(f) => f,
        Err(e) => {
            return SolveOutcome::Unknown {
                reason: e.to_string(),
            }
        }
    };
    let mut nonlinear_seen = false;
    let mut first_cert: Option<Vec<(String, Rational)>> = None;
    let clauses = dnf(&nnf);
    for clause in &clauses {
        match linearize_atoms(clause, n) {
            Some(mut constraints) => {
                let clause_len = constraints.len();
                constraints.extend(problem.base.iter().cloned());
                match linear::solve(n, &constraints) {
                    Feasibility::Sat(p) => {
                        debug_assert!(verify_candidate(problem, &p));
                        if verify_candidate(problem, &p) {
                            return SolveOutcome::Weights(p);
                        }
                        // a strict-inequality artifact would land here;
                        // treat as unknown rather than mislabel
                        nonlinear_seen = true;
                    }
                    Feasibility::Unsat(cert) => {
                        if first_cert.is_none() {
                            first_cert = Some(render_certificate(
                                &cert,
                                problem,
                                &clause[..clause_len.min(clause.len())],
                            ));
                        }
                    }
                }
            }
            None => {
                nonlinear_seen = true;
                if let Some(w) =
                    nonlinear_search(problem, clause, denominator_cap)
                {
                    return SolveOutcome::Weights(w);
                }
            }
        }
    }
    if nonlinear_seen {
        SolveOutcome::Unknown {
            reason: "nonlinear constraints; numeric search found no verifiable solution".into(),
        }
    } else {
        SolveOutcome::Unsat {
            certificate: first_cert.unwrap_or_default(),
        }
    }
}

fn render_certificate(
    cert: &[(usize, Rational)],
    problem: &SynthesisProblem,
    clause: &[Formula1],
) -> Vec<(String, Rational)> {
    cert.iter()
        .map(|(i, m)| {
            let text = if *i < clause.len() {
                clause[*i].to_string()
            } else {
                problem
                    .base_text
                    .get(*i - clause.len())
                    .cloned()
                    .unwrap_or_else(|| format!("constraint {i}"))
            };
            (text, m.clone())
        })
        .collect()
}

/// Seeded random search over the simplex minimizing constraint violation,
/// followed by continued-fraction reconstruction at escalating denominator
/// caps and exact re-verification.
fn nonlinear_search(
    problem: &SynthesisProblem,
    clause: &[Formula1],
    denominator_cap: u64,
) -> Option<Vec<Rational>> {
    let n = problem.n_atoms;
    let free: Vec<usize> = (0..n)
        .filter(|c| !problem.forced_zero.contains(c))
        .collect();
    if free.is_empty() {
        return None;
    }
    let violation = |w: &[f64]| -> f64 {
        clause
            .iter()
            .map(|atom| match atom {
                Formula1::Cmp(a, op, b) => {
                    let d = approx_term(a, w) - approx_term(b, w);
                    match op {
                        CmpOp::Eq => d.abs(),
                        CmpOp::Le => d.max(0.0),
                        CmpOp::Lt => (d + 1e-9).max(0.0),
                    }
                }
                _ => f64::INFINITY,
            })
            .sum()
    };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best = vec![0.0f64; n];
    for &c in &free {
        best[c] = 1.0 / free.len() as f64;
    }
    let mut best_v = violation(&best);
    let mut step = 0.5f64;
    for iter in 0..60_000 {
        let mut cand = best.clone();
        let &c = &free[rng.gen_range(0..free.len())];
        cand[c] = (cand[c] + rng.gen_range(-step..step)).max(0.0);
        let total: f64 = cand.iter().sum();
        if total <= 0.0 {
            continue;
        }
        for x in cand.iter_mut() {
            *x /= total;
        }
        let v = violation(&cand);
        if v < best_v {
            best_v = v;
            best = cand;
        }
        if iter % 2000 == 1999 {
            step *= 0.85;
            if step < 1e-12 {
                step = 0.25;
            }
        }
        if best_v == 0.0 && iter > 1000 {
            break;
        }
    }
    for cap in [1u64 << 4, 1 << 8, 1 << 12, denominator_cap] {
        let mut weights: Vec<Rational> = best
            .iter()
            .map(|x| Rational::reconstruct_f64(*x, cap).unwrap_or_else(Rational::zero))
            .collect();
        // repair the simplex sum on the largest coordinate
        let total: Rational = weights.iter().cloned().sum();
        if !total.is_zero() {
            if let Some(kmax) = (0..n).max_by(|a, b| weights[*a].cmp(&weights[*b])) {
                weights[kmax] = &weights[kmax] + &(Rational::one() - total);
            }
        }
        if verify_candidate(problem, &weights) {
            return Some(weights);
        }
    }
    None
}

fn approx_term(t: &Term1, w: &[f64]) -> f64 {
    match t {
        Term1::Rat(q) => q.to_f64_approx(),
        Term1::RealVar(v) => v
            .strip_prefix('p')
            .and_then(|s| s.parse::<usize>().ok())
            .map(|c| w[c])
            .unwrap_or(f64::NAN),
        Term1::Prob(_) => f64::NAN,
        Term1::Add(a, b) => approx_term(a, w) + approx_term(b, w),
        Term1::Sub(a, b) => approx_term(a, w) - approx_term(b, w),
        Term1::Mul(a, b) => approx_term(a, w) * approx_term(b, w),
        Term1::Neg(a) => -approx_term(a, w),
    }
}

/// One row per positive-mass atom, at its representative tuple.
pub fn assemble_team(
    weights: &[Rational],
    table: &AtomTable,
    structure: &FiniteStructure,
) -> Result<DiscreteMeasureTeam, WitnessError> {
    let mut rows = Vec::new();
    for (code, w) in weights.iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        let rep = table.atoms[code]
            .representative
            .clone()
            .ok_or(TeamError::Empty)?;
        rows.push(TeamRow {
            assignment: rep,
            weight: w.clone(),
        });
    }
    Ok(DiscreteMeasureTeam::new(
        table.tuple.clone(),
        rows,
        structure,
    )?)
}

#[derive(Debug, Clone, Serialize)]
pub struct IntervalLabel {
    /// sign prefix, most significant decision first
    pub sigma: Vec<bool>,
    pub lo: Rational,
    pub hi: Rational,
}

/// The nested partition of `[0, 1)`: depth 1 splits at the mass of the first
/// formula with the asserting branch first; each node splits by the masses
/// of the next formula conditioned on the prefix. The half-open labels at
/// each depth partition `[0, 1)` and depth-`m` lengths are the atom masses.
pub fn interval_tree(weights: &[Rational], table: &AtomTable) -> Vec<Vec<IntervalLabel>> {
    let m = table.formulas.len();
    let mass = |prefix: &[bool]| -> Rational {
        weights
            .iter()
            .enumerate()
            .filter(|(code, _)| {
                prefix
                    .iter()
                    .enumerate()
                    .all(|(i, s)| (*code >> i & 1 == 1) == *s)
            })
            .map(|(_, w)| w.clone())
            .sum()
    };
    let mut depths = Vec::new();
    let mut frontier: Vec<IntervalLabel> = vec![IntervalLabel {
        sigma: vec![],
        lo: Rational::zero(),
        hi: Rational::one(),
    }];
    for _ in 0..m {
        let mut next = Vec::new();
        for node in &frontier {
            let mut lo = node.lo.clone();
            // asserting branch first, matching the depth-1 split [0, |phi0|)
            for s in [true, false] {
                let mut sigma = node.sigma.clone();
                sigma.push(s);
                let w = mass(&sigma);
                let hi = &lo + &w;
                next.push(IntervalLabel {
                    sigma,
                    lo: lo.clone(),
                    hi: hi.clone(),
                });
                lo = hi;
            }
        }
        depths.push(next.clone());
        frontier = next;
    }
    depths
}

/// End-to-end synthesis for a theory over a structure.
pub struct Synthesis {
    pub table: AtomTable,
    pub outcome: SolveOutcome,
    pub team: Option<DiscreteMeasureTeam>,
    pub tree: Vec<Vec<IntervalLabel>>,
}

pub fn synthesize(
    structure: &FiniteStructure,
    sigma: &[Formula1],
    atom_cap: u128,
    denominator_cap: u64,
) -> Result<Synthesis, WitnessError> {
    let table = table_for_theory(structure, sigma, atom_cap)?;
    let problem = build_problem(sigma, &table)?;
    let outcome = solve_weights(&problem, denominator_cap);
    let (team, tree) = match &outcome {
        SolveOutcome::Weights(w) => (
            Some(assemble_team(w, &table, structure)?),
            interval_tree(w, &table),
        ),
        _ => (None, Vec::new()),
    };
    Ok(Synthesis {
        table,
        outcome,
        team,
        tree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_l1, Signature};

    fn three_elem() -> FiniteStructure {
        // A = {0, 1, 2}, R = {0}
        let signature = Signature {
            name: "A3".into(),
            relations: vec![("R".into(), 1)],
            functions: vec![],
            constants: vec![],
        };
        let mut relations = std::collections::BTreeMap::new();
        relations.insert(
            "R".into(),
            [vec![0usize]].into_iter().collect::<std::collections::BTreeSet<_>>(),
        );
        FiniteStructure::new(
            signature,
            3,
            relations,
            Default::default(),
            Default::default(),
        )
        .unwrap()
    }

    #[test]
    fn one_third_witness() {
        let a = three_elem();
        let sigma = vec![parse_l1("|R(v0)| = 1/3", &a.signature, &[0]).unwrap()];
        let s = synthesize(&a, &sigma, 1 << 20, 1 << 16).unwrap();
        let w = match &s.outcome {
            SolveOutcome::Weights(w) => w,
            other => panic!("expected weights, got {other:?}"),
        };
        // code 1 asserts R, code 0 denies it
        assert_eq!(w[1], Rational::new(1, 3));
        assert_eq!(w[0], Rational::new(2, 3));
        let team = s.team.unwrap();
        assert_eq!(team.rows.len(), 2);
        let phi = crate::syntax::parse_l0("R(v0)", &a.signature).unwrap();
        assert_eq!(team.prob(&a, &phi).unwrap(), Rational::new(1, 3));
    }

    #[test]
    fn contradiction_is_unsat_with_certificate() {
        let a = three_elem();
        let sigma = vec![
            parse_l1("|R(v0)| = 1/3", &a.signature, &[0]).unwrap(),
            parse_l1("|R(v0)| = 1/2", &a.signature, &[0]).unwrap(),
        ];
        let s = synthesize(&a, &sigma, 1 << 20, 1 << 16).unwrap();
        match s.outcome {
            SolveOutcome::Unsat { certificate } => assert!(!certificate.is_empty()),
            other => panic!("expected UNSAT, got {other:?}"),
        }
    }

    #[test]
    fn nonlinear_square_solved_exactly() {
        let a = three_elem();
        // |R| * |R| = 1/4 has the rational solution |R| = 1/2
        let sigma = vec![parse_l1("|R(v0)| * |R(v0)| = 1/4", &a.signature, &[0]).unwrap()];
        let s = synthesize(&a, &sigma, 1 << 20, 1 << 16).unwrap();
        match &s.outcome {
            SolveOutcome::Weights(w) => assert_eq!(w[1], Rational::new(1, 2)),
            other => panic!("expected weights, got {other:?}"),
        }
    }

    #[test]
    fn tree_partitions_unity() {
        let a = three_elem();
        let sigma = vec![parse_l1("|R(v0)| = 1/3", &a.signature, &[0]).unwrap()];
        let s = synthesize(&a, &sigma, 1 << 20, 1 << 16).unwrap();
        for depth in &s.tree {
            let total: Rational = depth.iter().map(|l| &l.hi - &l.lo).sum();
            assert_eq!(total, Rational::one());
        }
        // depth 1 splits [0, 1/3) / [1/3, 1)
        assert_eq!(s.tree[0][0].hi, Rational::new(1, 3));
        assert!(s.tree[0][0].sigma[0]);
    }

    #[test]
    fn disjunctive_theory_picks_a_branch() {
        let a = three_elem();
        let sigma =
            vec![parse_l1("|R(v0)| = 1/3 | |R(v0)| = 1/2", &a.signature, &[0]).unwrap()];
        let s = synthesize(&a, &sigma, 1 << 20, 1 << 16).unwrap();
        match &s.outcome {
            SolveOutcome::Weights(w) => {
                assert!(w[1] == Rational::new(1, 3) || w[1] == Rational::new(1, 2))
            }
            other => panic!("expected weights, got {other:?}"),
        }
    }
}

//! Executable example corpus: Hardy–Weinberg generators, Bell-type audits,
//! truncated Markov theories and the quantum measurement template.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::arith::Rational;
use crate::semantics::{FiniteStructure, SemanticsError};
use crate::syntax::{
    bool_encode, CmpOp, Formula0, Formula1, Prop, Signature, Term0, Term1,
};
use crate::teams::{DiscreteMeasureTeam, TeamError, TeamRow};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("not a probability distribution: {0}")]
    InvalidDistribution(String),
    #[error("generator cap exceeded: {need} objects requested, cap {cap}")]
    CapExceeded { need: usize, cap: usize },
    #[error(transparent)]
    Team(#[from] TeamError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

// ---------------------------------------------------------------------------
// Hardy–Weinberg

pub const GENOTYPES: [&str; 3] = ["AA", "Aa", "aa"];

/// The fixed 27-element structure of father-mother-child genotype triples,
/// with one unary predicate `P_j_k` per role `j` in {f, m, c} and genotype
/// `k` in {AA, Aa, aa}, plus the Mendel inheritance table.
pub struct GenotypeModel {
    pub structure: FiniteStructure,
}

/// Element id of the triple (father, mother, child), genotypes indexed
/// 0 = AA, 1 = Aa, 2 = aa.
pub fn triple_id(f: usize, m: usize, c: usize) -> usize {
    9 * f + 3 * m + c
}

impl GenotypeModel {
    pub fn new() -> GenotypeModel {
        let mut rel_sigs = Vec::new();
        let mut relations: BTreeMap<String, BTreeSet<Vec<usize>>> = BTreeMap::new();
        for (j, pick) in [
            ("f", 0usize),
            ("m", 1usize),
            ("c", 2usize),
        ] {
            for (k, geno) in GENOTYPES.iter().enumerate() {
                let name = format!("P_{j}_{geno}");
                rel_sigs.push((name.clone(), 1));
                let mut tuples = BTreeSet::new();
                for f in 0..3 {
                    for m in 0..3 {
                        for c in 0..3 {
                            if [f, m, c][pick] == k {
                                tuples.insert(vec![triple_id(f, m, c)]);
                            }
                        }
                    }
                }
                relations.insert(name, tuples);
            }
        }
        let signature = Signature {
            name: "genotype".into(),
            relations: rel_sigs,
            functions: vec![],
            constants: vec![],
        };
        let structure =
            FiniteStructure::new(signature, 27, relations, BTreeMap::new(), BTreeMap::new())
                .expect("genotype structure is well formed");
        GenotypeModel { structure }
    }

    /// Child genotype distribution for a parent pair: each parent passes one
    /// allele, a heterozygous parent each with probability 1/2.
    pub fn mendel(father: usize, mother: usize) -> [Rational; 3] {
        // probability that the parent passes the dominant allele A
        let pass_a = |g: usize| match g {
            0 => Rational::one(),
            1 => Rational::new(1, 2),
            _ => Rational::zero(),
        };
        let (pf, pm) = (pass_a(father), pass_a(mother));
        let (qf, qm) = (Rational::one() - pf.clone(), Rational::one() - pm.clone());
        [
            &pf * &pm,
            &pf * &qm + &qf * &pm,
            &qf * &qm,
        ]
    }
}

impl Default for GenotypeModel {
    fn default() -> Self {
        GenotypeModel::new()
    }
}

fn hw_atom(role: &str, k: usize, var: usize) -> Formula0 {
    Formula0::Rel(format!("P_{role}_{}", GENOTYPES[k]), vec![Term0::Var(var)])
}

fn prob_of(f: Formula0, var: usize) -> Term1 {
    Term1::prob(f, vec![var])
}

fn eq(a: Term1, b: Term1) -> Formula1 {
    Formula1::cmp(a, CmpOp::Eq, b)
}

/// The instantiated Hardy–Weinberg theory over dom (v0, v1, v2): the twelve
/// marginal equations, the fourteen Mendel equations with coefficients 1, 2
/// and 4, and the eighteen parental independence equations.
pub fn hw_sigma() -> Vec<Formula1> {
    let mut out = Vec::new();
    // parents of the next generation are distributed as this one's children
    for j in ["f", "m"] {
        for k in 0..3 {
            for i in 0..2 {
                out.push(eq(
                    prob_of(hw_atom(j, k, i + 1), i + 1),
                    prob_of(hw_atom("c", k, i), i),
                ));
            }
        }
    }
    // Mendel equations: |F ∧ M| = coef · |F ∧ M ∧ C|
    let coef1: [(usize, usize, usize); 4] = [(0, 0, 0), (0, 2, 1), (2, 0, 1), (2, 2, 2)];
    let coef2: [(usize, usize, usize); 9] = [
        (0, 1, 0),
        (0, 1, 1),
        (2, 1, 1),
        (2, 1, 2),
        (1, 2, 2),
        (1, 0, 1),
        (1, 2, 1),
        (1, 0, 0),
        (1, 1, 1),
    ];
    let coef4: [(usize, usize, usize); 2] = [(1, 1, 0), (1, 1, 2)];
    let mut mendel_eq = |k: usize, z: usize, w: usize, coef: i64| {
        for i in 0..2usize {
            let v = i + 1;
            let fm = Formula0::and(hw_atom("f", k, v), hw_atom("m", z, v));
            let fmc = Formula0::and(fm.clone(), hw_atom("c", w, v));
            let rhs = prob_of(fmc, v);
            let rhs = if coef == 1 {
                rhs
            } else {
                Term1::mul(Term1::rat(coef, 1), rhs)
            };
            out.push(eq(prob_of(fm, v), rhs));
        }
    };
    for (k, z, w) in coef1 {
        mendel_eq(k, z, w, 1);
    }
    for (k, z, w) in coef2 {
        mendel_eq(k, z, w, 2);
    }
    for (k, z, w) in coef4 {
        mendel_eq(k, z, w, 4);
    }
    // parental independence
    for k in 0..3 {
        for l in 0..3 {
            for i in 0..2usize {
                let v = i + 1;
                let f = hw_atom("f", k, v);
                let m = hw_atom("m", l, v);
                out.push(eq(
                    prob_of(Formula0::and(f.clone(), m.clone()), v),
                    Term1::mul(prob_of(f, v), prob_of(m, v)),
                ));
            }
        }
    }
    out
}

/// The equilibrium statement: child genotype frequencies agree between the
/// second and third generations.
pub fn hw_alpha() -> Formula1 {
    Formula1::conjoin(
        (0..3)
            .map(|k| {
                eq(
                    prob_of(hw_atom("c", k, 1), 1),
                    prob_of(hw_atom("c", k, 2), 2),
                )
            })
            .collect(),
    )
    .expect("three conjuncts")
}

fn check_distribution(g: &[Rational; 3]) -> Result<(), CorpusError> {
    if g.iter().any(Rational::is_negative) {
        return Err(CorpusError::InvalidDistribution(format!(
            "negative entry in {g:?}"
        )));
    }
    let total: Rational = g.iter().cloned().sum();
    if total != Rational::one() {
        return Err(CorpusError::InvalidDistribution(format!(
            "entries sum to {total}"
        )));
    }
    Ok(())
}

/// Child marginals of generations 1..=3 when generation 1's children are
/// distributed as `g1` and each later generation draws its parents
/// independently from the previous generation's children.
pub fn hw_marginals(g1: &[Rational; 3]) -> Result<[[Rational; 3]; 3], CorpusError> {
    check_distribution(g1)?;
    let next = |g: &[Rational; 3]| -> [Rational; 3] {
        let mut out = [Rational::zero(), Rational::zero(), Rational::zero()];
        for u in 0..3 {
            for v in 0..3 {
                let puv = &g[u] * &g[v];
                for (w, m) in GenotypeModel::mendel(u, v).into_iter().enumerate() {
                    out[w] = out[w].clone() + puv.clone() * m;
                }
            }
        }
        out
    };
    let g2 = next(g1);
    let g3 = next(&g2);
    Ok([g1.clone(), g2, g3])
}

/// Build a three-generation team over the genotype structure: generation 1
/// children per `g1` (parents set equal to the child, which no equation
/// constrains), later generations with independently drawn parents and
/// Mendel children; the three generations are independent coordinates.
pub fn synth_hw_team(
    model: &GenotypeModel,
    g1: &[Rational; 3],
) -> Result<DiscreteMeasureTeam, CorpusError> {
    let marginals = hw_marginals(g1)?;
    // per-generation distribution on triples
    let mut dists: Vec<Vec<(usize, Rational)>> = Vec::new();
    let mut gen1 = Vec::new();
    for k in 0..3 {
        if !g1[k].is_zero() {
            gen1.push((triple_id(k, k, k), g1[k].clone()));
        }
    }
    dists.push(gen1);
    for gen in 0..2 {
        let g = &marginals[gen];
        let mut d = Vec::new();
        for u in 0..3 {
            for v in 0..3 {
                let puv = &g[u] * &g[v];
                if puv.is_zero() {
                    continue;
                }
                for (w, m) in GenotypeModel::mendel(u, v).into_iter().enumerate() {
                    let p = &puv * &m;
                    if !p.is_zero() {
                        d.push((triple_id(u, v, w), p));
                    }
                }
            }
        }
        dists.push(d);
    }
    let mut rows = Vec::new();
    for (a, wa) in &dists[0] {
        for (b, wb) in &dists[1] {
            for (c, wc) in &dists[2] {
                rows.push(TeamRow {
                    assignment: vec![*a, *b, *c],
                    weight: wa * &(wb * wc),
                });
            }
        }
    }
    Ok(DiscreteMeasureTeam::new(
        vec![0, 1, 2],
        rows,
        &model.structure,
    )?)
}

// ---------------------------------------------------------------------------
// Bell-type inequalities

/// Propositional formulas to audit against a boolean multi-team.
pub struct BellInstance {
    pub formulas: Vec<Prop>,
}

#[derive(Debug, Clone)]
pub struct BellReport {
    /// `[phi_j]` per formula
    pub probs: Vec<Rational>,
    /// `Σ_j [phi_j]`
    pub total: Rational,
    /// `[⋀_j phi_j]`
    pub conjunction: Rational,
    /// `k - 1 + [⋀_j phi_j]`
    pub bound: Rational,
    /// the classical bound `total <= bound`; never violated
    pub holds: bool,
    /// whether `⋀_j phi_j` is contradictory by truth table
    pub contradictory: bool,
    /// `total <= k - 1`, evaluated only under a verified contradiction
    pub strict_holds: Option<bool>,
}

/// Audit `Σ_j [phi_j] <= k - 1 + [⋀_j phi_j]` and, when the conjunction is
/// truth-table contradictory, the strict form `Σ_j [phi_j] <= k - 1`.
pub fn bell_audit(
    inst: &BellInstance,
    team: &DiscreteMeasureTeam,
    structure: &FiniteStructure,
) -> Result<BellReport, TeamError> {
    assert!(!inst.formulas.is_empty(), "k >= 1 formulas required");
    let probs: Vec<Rational> = inst
        .formulas
        .iter()
        .map(|p| team.prob(structure, &bool_encode(p)))
        .collect::<Result<_, _>>()?;
    let total: Rational = probs.iter().cloned().sum();
    let conj_prop = inst
        .formulas
        .iter()
        .skip(1)
        .fold(inst.formulas[0].clone(), |a, b| Prop::and(a, b.clone()));
    let conjunction = team.prob(structure, &bool_encode(&conj_prop))?;
    let k_minus_1 = Rational::from_int(inst.formulas.len() as i64 - 1);
    let bound = &k_minus_1 + &conjunction;
    let contradictory = conj_prop.is_contradictory();
    Ok(BellReport {
        holds: total <= bound,
        strict_holds: contradictory.then(|| total <= k_minus_1),
        probs,
        total,
        conjunction,
        bound,
        contradictory,
    })
}

// ---------------------------------------------------------------------------
// Truncated Markov chains

/// Constant name for the node reached by the digit sequence `path` from the
/// root: `c` for the root itself, then `c0`, `c01`, ...
pub fn node_name(path: &[usize]) -> String {
    let mut s = String::from("c");
    for d in path {
        s.push_str(&d.to_string());
    }
    s
}

/// The depth-`d` fan-out-`n` tree structure with edge relation `E`, and the
/// homogeneous-walk theory for team variables v0..v_h.
///
/// Infinitely many constants are truncated to the depth-`d` ball, so the
/// step axioms `|E(v_i, v_{i+1})| = 1` are emitted only while a walk from
/// the root cannot have left the ball.  The source homogeneity equation is
/// printed with a duplicated guard, "(|v_i = c_η| = 0) ∨ (|v_i = c_η| = 0)";
/// we generate the evident intent, one guard for `i` and one for `j`.
pub fn markov_sigma(
    n: usize,
    depth: usize,
    horizon: usize,
    cap: usize,
) -> Result<(FiniteStructure, Vec<Formula1>), CorpusError> {
    assert!(n >= 1, "fan-out must be positive");
    let mut nodes: Vec<Vec<usize>> = vec![vec![]];
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..depth {
        let mut next = Vec::new();
        for path in &frontier {
            for digit in 0..n {
                let mut child = path.clone();
                child.push(digit);
                next.push(child);
            }
        }
        nodes.extend(next.iter().cloned());
        frontier = next;
        if nodes.len() > cap {
            return Err(CorpusError::CapExceeded {
                need: nodes.len(),
                cap,
            });
        }
    }
    let id: BTreeMap<Vec<usize>, usize> = nodes
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let mut edges = BTreeSet::new();
    for path in &nodes {
        if path.len() < depth {
            for digit in 0..n {
                let mut child = path.clone();
                child.push(digit);
                edges.insert(vec![id[path], id[&child]]);
            }
        }
    }
    let constants: BTreeMap<String, usize> = nodes
        .iter()
        .map(|p| (node_name(p), id[p]))
        .collect();
    let signature = Signature {
        name: "markov".into(),
        relations: vec![("E".into(), 2)],
        functions: vec![],
        constants: constants.keys().cloned().collect(),
    };
    let mut relations = BTreeMap::new();
    relations.insert("E".into(), edges);
    let structure =
        FiniteStructure::new(signature, nodes.len(), relations, BTreeMap::new(), constants)?;

    let at = |var: usize, path: &[usize]| -> Formula0 {
        Formula0::Eq(Term0::Var(var), Term0::Const(node_name(path)))
    };
    let mut theory = Vec::new();
    // (A) the walk starts at the root
    theory.push(eq(
        Term1::prob(at(0, &[]), vec![0]),
        Term1::rat(1, 1),
    ));
    // (B) consecutive positions are joined by an edge; only while the walk
    // is guaranteed inside the ball
    for i in 0..horizon.min(depth) {
        theory.push(eq(
            Term1::prob(
                Formula0::Rel("E".into(), vec![Term0::Var(i), Term0::Var(i + 1)]),
                vec![i, i + 1],
            ),
            Term1::rat(1, 1),
        ));
    }
    // (C) homogeneity: transition frequencies at steps i and j agree unless
    // one of the conditioning events is null
    let step = |i: usize, path: &[usize], child: &[usize]| -> Term1 {
        Term1::prob(
            Formula0::and(at(i, path), at(i + 1, child)),
            vec![i, i + 1],
        )
    };
    let here = |i: usize, path: &[usize]| -> Term1 { Term1::prob(at(i, path), vec![i]) };
    if horizon >= 1 {
        for i in 0..horizon - 1 {
            for j in i + 1..horizon {
                for path in &nodes {
                    if path.len() >= depth {
                        continue;
                    }
                    for digit in 0..n {
                        let mut child = path.clone();
                        child.push(digit);
                        let zero = |t: Term1| Formula1::cmp(t, CmpOp::Eq, Term1::rat(0, 1));
                        theory.push(Formula1::or(
                            Formula1::or(zero(here(i, path)), zero(here(j, path))),
                            eq(
                                Term1::mul(step(i, path, &child), here(j, path)),
                                Term1::mul(step(j, path, &child), here(i, path)),
                            ),
                        ));
                    }
                }
            }
        }
    }
    if theory.len() > cap {
        return Err(CorpusError::CapExceeded {
            need: theory.len(),
            cap,
        });
    }
    Ok((structure, theory))
}

/// The uniform walk of length `horizon` from the root: every length-h path
/// with equal weight n^{-h}.  Requires `horizon <= depth`.
pub fn fair_walk_team(
    structure: &FiniteStructure,
    n: usize,
    depth: usize,
    horizon: usize,
) -> Result<DiscreteMeasureTeam, CorpusError> {
    assert!(horizon <= depth, "walk would leave the depth ball");
    let mut paths: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..horizon {
        paths = paths
            .iter()
            .flat_map(|p| {
                (0..n).map(move |d| {
                    let mut q = p.clone();
                    q.push(d);
                    q
                })
            })
            .collect();
    }
    let weight = Rational::new(1, (n as i64).pow(horizon as u32));
    let rows = paths
        .into_iter()
        .map(|p| TeamRow {
            assignment: (0..=horizon)
                .map(|l| structure.constants[&node_name(&p[..l])])
                .collect(),
            weight: weight.clone(),
        })
        .collect();
    Ok(DiscreteMeasureTeam::new(
        (0..=horizon).collect(),
        rows,
        structure,
    )?)
}

// ---------------------------------------------------------------------------
// Quantum measurement template

/// Object-language structure for the four measurement outcomes: constants
/// `1`..`4` name four domain elements.  A fifth, unnamed element stands for
/// no detection: the state s = (1/2)·Σ c_n·p(n) is subnormalized, so the
/// four outcome frequencies sum to 1/4 and the remaining mass needs
/// somewhere to live.
pub fn quantum_structure() -> FiniteStructure {
    let names: Vec<String> = (1..=4).map(|i| i.to_string()).collect();
    let signature = Signature {
        name: "outcomes".into(),
        relations: vec![],
        functions: vec![],
        constants: names.clone(),
    };
    let constants = names.into_iter().zip(0..4).collect();
    FiniteStructure::new(signature, 5, BTreeMap::new(), BTreeMap::new(), constants)
        .expect("outcome structure is well formed")
}

/// The measurement sentence: there are four complex amplitudes c_n
/// (pairs a_n + b_n·i of reals in [-1, 1]) with `|c_n|² = [v1 = n]` and,
/// for the state s = (1/2)·Σ_n c_n·p(n), `|⟨s|q(i)⟩|² = [v2 = i]`.
///
/// `basis[i][n]` is the rational coordinate of q(i+1) along p(n+1); only
/// rational coordinates are accepted, a limit of the built-in backend.
pub fn quantum_sigma(basis: &[[Rational; 4]; 4]) -> Formula1 {
    let outcome = |var: usize, i: usize| -> Term1 {
        Term1::prob(
            Formula0::Eq(Term0::Var(var), Term0::Const((i + 1).to_string())),
            vec![var],
        )
    };
    let re = |n: usize| Term1::RealVar(format!("a{}", n + 1));
    let im = |n: usize| Term1::RealVar(format!("b{}", n + 1));
    let square = |t: Term1| Term1::mul(t.clone(), t);
    let half_dot = |parts: &dyn Fn(usize) -> Term1, i: usize| -> Term1 {
        let sum = (0..4)
            .map(|n| Term1::mul(Term1::Rat(basis[i][n].clone()), parts(n)))
            .reduce(Term1::add)
            .expect("four summands");
        Term1::mul(Term1::rat(1, 2), sum)
    };
    let mut conjuncts = Vec::new();
    for i in 0..4 {
        conjuncts.push(eq(
            Term1::add(square(re(i)), square(im(i))),
            outcome(1, i),
        ));
        conjuncts.push(eq(
            Term1::add(
                square(half_dot(&re, i)),
                square(half_dot(&im, i)),
            ),
            outcome(2, i),
        ));
    }
    let mut body = Formula1::conjoin(conjuncts).expect("eight conjuncts");
    // bounded-existential prefix, innermost first
    for n in (0..4).rev() {
        for name in [format!("b{}", n + 1), format!("a{}", n + 1)] {
            let bounds = Formula1::and(
                Formula1::cmp(Term1::rat(-1, 1), CmpOp::Le, Term1::RealVar(name.clone())),
                Formula1::cmp(Term1::RealVar(name.clone()), CmpOp::Le, Term1::rat(1, 1)),
            );
            body = Formula1::exists(name, Formula1::and(bounds, body));
        }
    }
    body
}

/// Identity change of basis: q(i) = p(i).
pub fn identity_basis() -> [[Rational; 4]; 4] {
    std::array::from_fn(|i| {
        std::array::from_fn(|n| {
            if i == n {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Policy, Verdict};

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn hw_sigma_counts() {
        let sigma = hw_sigma();
        assert_eq!(sigma.len(), 60);
        let mut conjuncts = 1;
        let mut f = &hw_alpha();
        while let Formula1::And(a, _) = f {
            conjuncts += 1;
            f = a;
        }
        assert_eq!(conjuncts, 3);
    }

    #[test]
    fn mendel_rows_are_distributions() {
        for u in 0..3 {
            for v in 0..3 {
                let row = GenotypeModel::mendel(u, v);
                let total: Rational = row.iter().cloned().sum();
                assert_eq!(total, Rational::one());
                assert_eq!(row, GenotypeModel::mendel(v, u));
            }
        }
        assert_eq!(
            GenotypeModel::mendel(1, 1),
            [r(1, 4), r(1, 2), r(1, 4)]
        );
    }

    #[test]
    fn hw_team_reaches_equilibrium() {
        let model = GenotypeModel::new();
        let g1 = [r(1, 2), r(0, 1), r(1, 2)];
        let team = synth_hw_team(&model, &g1).unwrap();
        let marginals = hw_marginals(&g1).unwrap();
        assert_eq!(marginals[1], [r(1, 4), r(1, 2), r(1, 4)]);
        // the team's second-generation child frequencies match
        for k in 0..3 {
            let p = team.prob(&model.structure, &hw_atom("c", k, 1)).unwrap();
            assert_eq!(p, marginals[1][k]);
        }
        let mut theory = hw_sigma();
        theory.push(hw_alpha());
        for v in team
            .check_theory(&model.structure, &theory, &Policy::default())
            .unwrap()
        {
            assert_eq!(v, Verdict::Holds);
        }
    }

    #[test]
    fn bell_strict_bound_on_contradictory_triple() {
        let structure = FiniteStructure::boolean();
        let patterns = [
            [1, 1, 0, 1],
            [1, 1, 1, 1],
            [1, 1, 1, 1],
            [1, 1, 1, 0],
            [0, 0, 1, 1],
            [0, 0, 0, 0],
            [0, 0, 0, 0],
            [0, 0, 0, 0],
        ];
        let rows = patterns
            .iter()
            .map(|p| TeamRow {
                assignment: p.to_vec(),
                weight: r(1, 8),
            })
            .collect();
        let team = DiscreteMeasureTeam::new(vec![0, 1, 2, 3], rows, &structure).unwrap();
        let inst = BellInstance {
            formulas: vec![
                Prop::var(0),
                Prop::var(1),
                Prop::not(Prop::and(Prop::var(0), Prop::var(1))),
            ],
        };
        let report = bell_audit(&inst, &team, &structure).unwrap();
        assert_eq!(report.total, r(3, 2));
        assert!(report.contradictory);
        assert_eq!(report.strict_holds, Some(true));
        assert!(report.holds);
    }

    #[test]
    fn markov_tree_and_fair_walk() {
        let (structure, theory) = markov_sigma(2, 2, 2, 10_000).unwrap();
        assert_eq!(structure.constants.len(), 7);
        assert_eq!(structure.relations["E"].len(), 6);
        let team = fair_walk_team(&structure, 2, 2, 2).unwrap();
        for v in team
            .check_theory(&structure, &theory, &Policy::default())
            .unwrap()
        {
            assert_eq!(v, Verdict::Holds);
        }
    }

    #[test]
    fn markov_cap() {
        assert!(matches!(
            markov_sigma(3, 10, 2, 100),
            Err(CorpusError::CapExceeded { .. })
        ));
    }

    #[test]
    fn quantum_identity_instance() {
        let structure = quantum_structure();
        let sentence = quantum_sigma(&identity_basis());
        // [v1=1] = 1 and [v2=1] = 1/4 (the rest undetected): witness c1 = 1
        let rows = vec![
            TeamRow {
                assignment: vec![0, 0],
                weight: r(1, 4),
            },
            TeamRow {
                assignment: vec![0, 4],
                weight: r(3, 4),
            },
        ];
        let team = DiscreteMeasureTeam::new(vec![1, 2], rows, &structure).unwrap();
        let verdicts = team
            .check_theory(&structure, &[sentence.clone()], &Policy::default())
            .unwrap();
        assert_eq!(verdicts[0], Verdict::Holds);
        // [v2=1] = 1/2 instead: |c1/2|^2 = 1/2 needs |c1| = sqrt(2) > 1
        let rows = vec![
            TeamRow {
                assignment: vec![0, 0],
                weight: r(1, 2),
            },
            TeamRow {
                assignment: vec![0, 4],
                weight: r(1, 2),
            },
        ];
        let team = DiscreteMeasureTeam::new(vec![1, 2], rows, &structure).unwrap();
        let verdicts = team
            .check_theory(&structure, &[sentence], &Policy::default())
            .unwrap();
        assert_eq!(verdicts[0], Verdict::Fails);
    }
}

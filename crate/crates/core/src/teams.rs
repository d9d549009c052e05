//! Discrete measure teams: weighted tables of assignments, and the exact
//! probability `[phi]_X` of a first-order formula.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::arith::{eval_quantified, Grounding, Policy, Rational, Verdict};
use crate::semantics::{FiniteStructure, SemanticsError};
use crate::syntax::{Formula0, Formula1, ProbConst};

#[derive(Debug, Error)]
pub enum TeamError {
    #[error("team file: {0}")]
    Io(#[from] std::io::Error),
    #[error("team file: {0}")]
    Csv(#[from] csv::Error),
    #[error("team file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("column `{0}` is not a team variable (expected `vN` or `_weight`)")]
    BadColumn(String),
    #[error("row {row}: bad cell `{cell}`")]
    BadCell { row: usize, cell: String },
    #[error("row {row}: element {element} outside domain of size {size}")]
    UnknownElement {
        row: usize,
        element: usize,
        size: usize,
    },
    #[error("negative weight {0}")]
    NegativeWeight(Rational),
    #[error("weights sum to {0}, expected 1")]
    WeightSum(Rational),
    #[error("empty team")]
    Empty,
    #[error("formula uses v{0}, not in the team domain")]
    OutsideDomain(usize),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TeamRow {
    pub assignment: Vec<usize>,
    pub weight: Rational,
}

/// `(Omega, P, tau)` with the full power set as the sigma-algebra: finitely
/// many rows, nonnegative rational weights summing to one, each row a total
/// assignment on `dom`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiscreteMeasureTeam {
    /// ordered variable indices: `dom = [0, 1, 2]` means v0, v1, v2
    pub dom: Vec<usize>,
    pub rows: Vec<TeamRow>,
    /// name of the structure supplying the values
    pub structure_ref: String,
}

impl DiscreteMeasureTeam {
    pub fn new(
        dom: Vec<usize>,
        rows: Vec<TeamRow>,
        structure: &FiniteStructure,
    ) -> Result<DiscreteMeasureTeam, TeamError> {
        let t = DiscreteMeasureTeam {
            dom,
            rows,
            structure_ref: structure.signature.name.clone(),
        };
        t.validate(structure)?;
        Ok(t)
    }

    pub fn validate(&self, structure: &FiniteStructure) -> Result<(), TeamError> {
        if self.rows.is_empty() {
            return Err(TeamError::Empty);
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.assignment.len() != self.dom.len() {
                return Err(TeamError::BadCell {
                    row: i,
                    cell: format!("{:?}", row.assignment),
                });
            }
            for &e in &row.assignment {
                if e >= structure.domain_size {
                    return Err(TeamError::UnknownElement {
                        row: i,
                        element: e,
                        size: structure.domain_size,
                    });
                }
            }
            if row.weight.is_negative() {
                return Err(TeamError::NegativeWeight(row.weight.clone()));
            }
        }
        let total: Rational = self.rows.iter().map(|r| r.weight.clone()).sum();
        if total != Rational::one() {
            return Err(TeamError::WeightSum(total));
        }
        Ok(())
    }

    /// Indices of zero-weight rows; retained but worth reporting.
    pub fn zero_weight_rows(&self) -> Vec<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.weight.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// CSV schema: header of variable names `vN` plus an optional `_weight`
    /// column of exact rational or decimal literals; a missing weight column
    /// means uniform weights.
    pub fn load_csv(
        path: &Path,
        structure: &FiniteStructure,
    ) -> Result<DiscreteMeasureTeam, TeamError> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_path(path)?;
        let headers = reader.headers()?.clone();
        let mut dom: Vec<usize> = Vec::new();
        let mut weight_col: Option<usize> = None;
        for (i, h) in headers.iter().enumerate() {
            if h == "_weight" {
                weight_col = Some(i);
            } else if let Some(idx) = h
                .strip_prefix('v')
                .and_then(|rest| rest.parse::<usize>().ok())
            {
                dom.push(idx);
            } else {
                return Err(TeamError::BadColumn(h.to_string()));
            }
        }
        let mut rows = Vec::new();
        for (rix, record) in reader.records().enumerate() {
            let record = record?;
            let mut assignment = Vec::with_capacity(dom.len());
            let mut weight = None;
            for (i, cell) in record.iter().enumerate() {
                if Some(i) == weight_col {
                    weight = Some(cell.parse::<Rational>().map_err(|_| TeamError::BadCell {
                        row: rix,
                        cell: cell.to_string(),
                    })?);
                } else {
                    assignment.push(cell.parse::<usize>().map_err(|_| TeamError::BadCell {
                        row: rix,
                        cell: cell.to_string(),
                    })?);
                }
            }
            rows.push(TeamRow {
                assignment,
                weight: weight.unwrap_or_else(Rational::zero),
            });
        }
        if rows.is_empty() {
            return Err(TeamError::Empty);
        }
        if weight_col.is_none() {
            let uniform = Rational::new(1, rows.len() as i64);
            for r in &mut rows {
                r.weight = uniform.clone();
            }
        }
        DiscreteMeasureTeam::new(dom, rows, structure)
    }

    pub fn load_json(
        path: &Path,
        structure: &FiniteStructure,
    ) -> Result<DiscreteMeasureTeam, TeamError> {
        let text = std::fs::read_to_string(path)?;
        let t: DiscreteMeasureTeam = serde_json::from_str(&text)?;
        t.validate(structure)?;
        Ok(t)
    }

    /// Loads by extension: `.csv` or `.json`.
    pub fn load(
        path: &Path,
        structure: &FiniteStructure,
    ) -> Result<DiscreteMeasureTeam, TeamError> {
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => DiscreteMeasureTeam::load_csv(path, structure),
            _ => DiscreteMeasureTeam::load_json(path, structure),
        }
    }

    fn row_env(&self, row: &TeamRow) -> HashMap<usize, usize> {
        self.dom
            .iter()
            .copied()
            .zip(row.assignment.iter().copied())
            .collect()
    }

    fn check_scope(&self, phi: &Formula0) -> Result<(), TeamError> {
        for v in phi.free_vars() {
            if !self.dom.contains(&v) {
                return Err(TeamError::OutsideDomain(v));
            }
        }
        Ok(())
    }

    /// `[phi]_X`: total weight of the rows whose assignment satisfies `phi`.
    pub fn prob(
        &self,
        structure: &FiniteStructure,
        phi: &Formula0,
    ) -> Result<Rational, TeamError> {
        self.check_scope(phi)?;
        #[cfg(feature = "parallel")]
        {
            let parts: Result<Vec<Rational>, TeamError> = self
                .rows
                .par_iter()
                .map(|row| {
                    Ok(if structure.sat_fo(phi, &self.row_env(row))? {
                        row.weight.clone()
                    } else {
                        Rational::zero()
                    })
                })
                .collect();
            Ok(parts?.into_iter().sum())
        }
        #[cfg(not(feature = "parallel"))]
        {
            self.prob_seq(structure, phi)
        }
    }

    /// Sequential evaluation; the benchmark baseline, identical output.
    pub fn prob_seq(
        &self,
        structure: &FiniteStructure,
        phi: &Formula0,
    ) -> Result<Rational, TeamError> {
        self.check_scope(phi)?;
        let mut total = Rational::zero();
        for row in &self.rows {
            if structure.sat_fo(phi, &self.row_env(row))? {
                total = total + row.weight.clone();
            }
        }
        Ok(total)
    }

    /// Grounds a list of probability constants, deduplicating by formula.
    pub fn ground_constants(
        &self,
        structure: &FiniteStructure,
        constants: &[ProbConst],
    ) -> Result<Grounding, TeamError> {
        let mut cache: HashMap<Formula0, Rational> = HashMap::new();
        let mut out = Grounding::new();
        for pc in constants {
            let p = match cache.get(&pc.formula) {
                Some(p) => p.clone(),
                None => {
                    let p = self.prob(structure, &pc.formula)?;
                    cache.insert(pc.formula.clone(), p.clone());
                    p
                }
            };
            out.insert(pc.clone(), p);
        }
        Ok(out)
    }

    /// Checks each sentence of a theory against this team; grounding first,
    /// then exact or interval evaluation per the policy.
    pub fn check_theory(
        &self,
        structure: &FiniteStructure,
        theory: &[Formula1],
        policy: &Policy,
    ) -> Result<Vec<Verdict>, TeamError> {
        let mut constants: Vec<ProbConst> = Vec::new();
        for s in theory {
            constants.extend(s.prob_consts().into_iter().cloned());
        }
        let grounding = self.ground_constants(structure, &constants)?;
        theory
            .iter()
            .map(|s| {
                eval_quantified(s, &grounding, policy)
                    .map_err(|e| TeamError::Semantics(SemanticsError::UnknownSymbol(e.to_string())))
            })
            .collect()
    }
}

/// A linear piece `slope * t + intercept` on `[lo, hi]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Piece {
    pub lo: Rational,
    pub hi: Rational,
    pub slope: Rational,
    pub intercept: Rational,
}

/// Piecewise-linear `f_i : [0,1] -> [0,1]` per variable, sampled at `n`
/// midpoints. The discrete team this produces is an approximation and every
/// report derived from it must carry the APPROXIMATE tag.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampledContinuousSpec {
    /// functions for v0, v1, ... in order
    pub vars: Vec<Vec<Piece>>,
    pub samples: usize,
}

#[derive(Debug, Error)]
pub enum SampleError {
    #[error("need at least one sample")]
    NoSamples,
    #[error("function for v{var} undefined at {at}")]
    Undefined { var: usize, at: Rational },
}

/// The sampled carrier: a team over a fresh structure whose domain
/// enumerates the distinct sampled values in increasing order, with a binary
/// relation `Le` tabulating that order.
pub struct SampledTeam {
    pub team: DiscreteMeasureTeam,
    pub structure: FiniteStructure,
    /// element id -> sampled value
    pub values: Vec<Rational>,
    pub samples: usize,
}

fn eval_piecewise(pieces: &[Piece], t: &Rational) -> Option<Rational> {
    pieces
        .iter()
        .find(|p| p.lo <= *t && *t <= p.hi)
        .map(|p| &(&p.slope * t) + &p.intercept)
}

/// Midpoint sampling: row `k` of `n` evaluates every function at
/// `(2k + 1) / (2n)`.
pub fn sample_continuous(spec: &SampledContinuousSpec) -> Result<SampledTeam, SampleError> {
    if spec.samples == 0 {
        return Err(SampleError::NoSamples);
    }
    let n = spec.samples as i64;
    let mut sampled: Vec<Vec<Rational>> = Vec::with_capacity(spec.samples);
    for k in 0..n {
        let t = Rational::new(2 * k + 1, 2 * n);
        let mut row = Vec::with_capacity(spec.vars.len());
        for (var, pieces) in spec.vars.iter().enumerate() {
            row.push(eval_piecewise(pieces, &t).ok_or_else(|| SampleError::Undefined {
                var,
                at: t.clone(),
            })?);
        }
        sampled.push(row);
    }
    let mut values: Vec<Rational> = sampled.iter().flatten().cloned().collect();
    values.sort();
    values.dedup();
    let index: HashMap<&Rational, usize> =
        values.iter().enumerate().map(|(i, v)| (v, i)).collect();

    let signature = crate::syntax::Signature {
        name: "sampled".into(),
        relations: vec![("Le".into(), 2)],
        functions: vec![],
        constants: vec![],
    };
    let mut le = std::collections::BTreeSet::new();
    for i in 0..values.len() {
        for j in 0..values.len() {
            if values[i] <= values[j] {
                le.insert(vec![i, j]);
            }
        }
    }
    let mut relations = std::collections::BTreeMap::new();
    relations.insert("Le".into(), le);
    let structure = FiniteStructure::new(
        signature,
        values.len(),
        relations,
        std::collections::BTreeMap::new(),
        std::collections::BTreeMap::new(),
    )
    .expect("sampled structure is well formed");

    let uniform = Rational::new(1, n);
    let rows = sampled
        .into_iter()
        .map(|row| TeamRow {
            assignment: row.iter().map(|v| index[v]).collect(),
            weight: uniform.clone(),
        })
        .collect();
    let team = DiscreteMeasureTeam::new((0..spec.vars.len()).collect(), rows, &structure)
        .expect("sampled team is well formed");
    Ok(SampledTeam {
        team,
        structure,
        values,
        samples: spec.samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_l0;

    fn uniform_team(
        structure: &FiniteStructure,
        dom: Vec<usize>,
        assignments: &[&[usize]],
    ) -> DiscreteMeasureTeam {
        let w = Rational::new(1, assignments.len() as i64);
        let rows = assignments
            .iter()
            .map(|a| TeamRow {
                assignment: a.to_vec(),
                weight: w.clone(),
            })
            .collect();
        DiscreteMeasureTeam::new(dom, rows, structure).unwrap()
    }

    #[test]
    fn prob_counts_rows() {
        let b = FiniteStructure::boolean();
        let team = uniform_team(&b, vec![0, 1], &[&[1, 1], &[1, 0], &[0, 1], &[0, 0]]);
        let phi = parse_l0("(v0 & v1) = 1", &b.signature).unwrap();
        assert_eq!(team.prob(&b, &phi).unwrap(), Rational::new(1, 4));
        assert_eq!(team.prob_seq(&b, &phi).unwrap(), Rational::new(1, 4));
    }

    #[test]
    fn weights_must_sum_to_one() {
        let b = FiniteStructure::boolean();
        let rows = vec![TeamRow {
            assignment: vec![1],
            weight: Rational::new(1, 2),
        }];
        assert!(matches!(
            DiscreteMeasureTeam::new(vec![0], rows, &b),
            Err(TeamError::WeightSum(_))
        ));
    }

    #[test]
    fn formula_outside_domain_rejected() {
        let b = FiniteStructure::boolean();
        let team = uniform_team(&b, vec![0], &[&[1]]);
        let phi = parse_l0("v3 = 1", &b.signature).unwrap();
        assert!(matches!(
            team.prob(&b, &phi),
            Err(TeamError::OutsideDomain(3))
        ));
    }

    #[test]
    fn ground_constants_deduplicates() {
        let b = FiniteStructure::boolean();
        let team = uniform_team(&b, vec![0], &[&[1], &[0]]);
        let phi = parse_l0("v0 = 1", &b.signature).unwrap();
        let pc = ProbConst::new(phi, vec![0]).unwrap();
        let g = team.ground_constants(&b, &[pc.clone(), pc.clone()]).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[&pc], Rational::new(1, 2));
    }

    #[test]
    fn midpoint_sampling() {
        // f0(t) = t, two samples: rows at 1/4 and 3/4
        let spec = SampledContinuousSpec {
            vars: vec![vec![Piece {
                lo: Rational::zero(),
                hi: Rational::one(),
                slope: Rational::one(),
                intercept: Rational::zero(),
            }]],
            samples: 2,
        };
        let s = sample_continuous(&spec).unwrap();
        assert_eq!(s.values, vec![Rational::new(1, 4), Rational::new(3, 4)]);
        assert_eq!(s.team.rows.len(), 2);
        assert_eq!(s.team.rows[0].weight, Rational::new(1, 2));
    }

    #[test]
    fn sampled_order_relation() {
        // f0(t) = t, 1000 samples; half the midpoints lie below 1/2, checked
        // through the tabulated Le relation against the largest value < 1/2
        let spec = SampledContinuousSpec {
            vars: vec![vec![Piece {
                lo: Rational::zero(),
                hi: Rational::one(),
                slope: Rational::one(),
                intercept: Rational::zero(),
            }]],
            samples: 1000,
        };
        let s = sample_continuous(&spec).unwrap();
        let half = Rational::new(1, 2);
        let below: Rational = s
            .team
            .rows
            .iter()
            .filter(|r| s.values[r.assignment[0]] < half)
            .map(|r| r.weight.clone())
            .sum();
        assert_eq!(below, half);
    }
}

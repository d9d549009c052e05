//! Finite first-order structures and satisfaction.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{Formula0, Signature, Term0};

#[derive(Debug, Error)]
pub enum SemanticsError {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol `{symbol}` used with arity {got}, declared {expected}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        got: usize,
    },
    #[error("function `{symbol}` is not total: missing value at {tuple:?}")]
    NotTotal { symbol: String, tuple: Vec<usize> },
    #[error("function `{symbol}` defined twice at {tuple:?}")]
    DuplicateEntry { symbol: String, tuple: Vec<usize> },
    #[error("domain element {0} out of range (domain size {1})")]
    OutOfRange(usize, usize),
    #[error("variable v{0} unbound under the given assignment")]
    UnboundVariable(usize),
    #[error("structure file: {0}")]
    Io(#[from] std::io::Error),
    #[error("structure file: {0}")]
    Json(#[from] serde_json::Error),
}

/// A finite structure over a signature; the domain is `0..domain_size`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiniteStructure {
    pub signature: Signature,
    pub domain_size: usize,
    /// relation name -> set of tuples in the relation
    pub relations: BTreeMap<String, BTreeSet<Vec<usize>>>,
    /// function name -> entries `[a_1, ..., a_k, value]`
    pub functions: BTreeMap<String, Vec<Vec<usize>>>,
    pub constants: BTreeMap<String, usize>,
    #[serde(skip)]
    tables: HashMap<String, HashMap<Vec<usize>, usize>>,
}

impl FiniteStructure {
    pub fn new(
        signature: Signature,
        domain_size: usize,
        relations: BTreeMap<String, BTreeSet<Vec<usize>>>,
        functions: BTreeMap<String, Vec<Vec<usize>>>,
        constants: BTreeMap<String, usize>,
    ) -> Result<FiniteStructure, SemanticsError> {
        let mut s = FiniteStructure {
            signature,
            domain_size,
            relations,
            functions,
            constants,
            tables: HashMap::new(),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<FiniteStructure, SemanticsError> {
        let text = std::fs::read_to_string(path)?;
        let mut s: FiniteStructure = serde_json::from_str(&text)?;
        s.validate()?;
        Ok(s)
    }

    /// The two-element boolean structure: constants `0`, `1` and functions
    /// `and`, `or`, `not` with the usual tables.
    pub fn boolean() -> FiniteStructure {
        let signature = Signature {
            name: "bool".into(),
            relations: vec![],
            functions: vec![("and".into(), 2), ("or".into(), 2), ("not".into(), 1)],
            constants: vec!["0".into(), "1".into()],
        };
        let mut functions = BTreeMap::new();
        functions.insert(
            "and".into(),
            vec![vec![0, 0, 0], vec![0, 1, 0], vec![1, 0, 0], vec![1, 1, 1]],
        );
        functions.insert(
            "or".into(),
            vec![vec![0, 0, 0], vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 1]],
        );
        functions.insert("not".into(), vec![vec![0, 1], vec![1, 0]]);
        let mut constants = BTreeMap::new();
        constants.insert("0".into(), 0);
        constants.insert("1".into(), 1);
        FiniteStructure::new(signature, 2, BTreeMap::new(), functions, constants)
            .expect("boolean structure is well formed")
    }

    /// Checks arity, totality and domain bounds; builds the lookup tables.
    pub fn validate(&mut self) -> Result<(), SemanticsError> {
        self.signature
            .validate()
            .map_err(|e| SemanticsError::UnknownSymbol(e.to_string()))?;
        if self.domain_size == 0 {
            return Err(SemanticsError::OutOfRange(0, 0));
        }
        for (name, arity) in &self.signature.relations {
            let tuples = self
                .relations
                .get(name)
                .ok_or_else(|| SemanticsError::UnknownSymbol(name.clone()))?;
            for t in tuples {
                if t.len() != *arity {
                    return Err(SemanticsError::ArityMismatch {
                        symbol: name.clone(),
                        expected: *arity,
                        got: t.len(),
                    });
                }
                for &e in t {
                    if e >= self.domain_size {
                        return Err(SemanticsError::OutOfRange(e, self.domain_size));
                    }
                }
            }
        }
        for extra in self.relations.keys() {
            if !self.signature.relations.iter().any(|(n, _)| n == extra) {
                return Err(SemanticsError::UnknownSymbol(extra.clone()));
            }
        }
        self.tables.clear();
        for (name, arity) in &self.signature.functions {
            let entries = self
                .functions
                .get(name)
                .ok_or_else(|| SemanticsError::UnknownSymbol(name.clone()))?;
            let mut table: HashMap<Vec<usize>, usize> = HashMap::new();
            for entry in entries {
                if entry.len() != arity + 1 {
                    return Err(SemanticsError::ArityMismatch {
                        symbol: name.clone(),
                        expected: *arity,
                        got: entry.len().saturating_sub(1),
                    });
                }
                for &e in entry {
                    if e >= self.domain_size {
                        return Err(SemanticsError::OutOfRange(e, self.domain_size));
                    }
                }
                let (args, value) = entry.split_at(*arity);
                if table.insert(args.to_vec(), value[0]).is_some() {
                    return Err(SemanticsError::DuplicateEntry {
                        symbol: name.clone(),
                        tuple: args.to_vec(),
                    });
                }
            }
            let expected = self.domain_size.pow(*arity as u32);
            if table.len() != expected {
                let missing = all_tuples(self.domain_size, *arity)
                    .into_iter()
                    .find(|t| !table.contains_key(t))
                    .unwrap_or_default();
                return Err(SemanticsError::NotTotal {
                    symbol: name.clone(),
                    tuple: missing,
                });
            }
            self.tables.insert(name.clone(), table);
        }
        for extra in self.functions.keys() {
            if !self.signature.functions.iter().any(|(n, _)| n == extra) {
                return Err(SemanticsError::UnknownSymbol(extra.clone()));
            }
        }
        for name in &self.signature.constants {
            let v = self
                .constants
                .get(name)
                .ok_or_else(|| SemanticsError::UnknownSymbol(name.clone()))?;
            if *v >= self.domain_size {
                return Err(SemanticsError::OutOfRange(*v, self.domain_size));
            }
        }
        for extra in self.constants.keys() {
            if !self.signature.constants.contains(extra) {
                return Err(SemanticsError::UnknownSymbol(extra.clone()));
            }
        }
        Ok(())
    }

    pub fn eval_term(
        &self,
        t: &Term0,
        env: &HashMap<usize, usize>,
    ) -> Result<usize, SemanticsError> {
        match t {
            Term0::Var(v) => env
                .get(v)
                .copied()
                .ok_or(SemanticsError::UnboundVariable(*v)),
            Term0::Const(name) => self
                .constants
                .get(name)
                .copied()
                .ok_or_else(|| SemanticsError::UnknownSymbol(name.clone())),
            Term0::App(name, args) => {
                let vals: Vec<usize> = args
                    .iter()
                    .map(|a| self.eval_term(a, env))
                    .collect::<Result<_, _>>()?;
                self.tables
                    .get(name)
                    .and_then(|t| t.get(&vals))
                    .copied()
                    .ok_or_else(|| SemanticsError::UnknownSymbol(name.clone()))
            }
        }
    }

    /// Tarskian satisfaction under a (partial) assignment covering the free
    /// variables of `f`.
    pub fn sat_fo(
        &self,
        f: &Formula0,
        env: &HashMap<usize, usize>,
    ) -> Result<bool, SemanticsError> {
        match f {
            Formula0::Eq(a, b) => Ok(self.eval_term(a, env)? == self.eval_term(b, env)?),
            Formula0::Rel(name, args) => {
                let vals: Vec<usize> = args
                    .iter()
                    .map(|a| self.eval_term(a, env))
                    .collect::<Result<_, _>>()?;
                Ok(self
                    .relations
                    .get(name)
                    .ok_or_else(|| SemanticsError::UnknownSymbol(name.clone()))?
                    .contains(&vals))
            }
            Formula0::Not(x) => Ok(!self.sat_fo(x, env)?),
            Formula0::And(a, b) => Ok(self.sat_fo(a, env)? && self.sat_fo(b, env)?),
            Formula0::Or(a, b) => Ok(self.sat_fo(a, env)? || self.sat_fo(b, env)?),
            Formula0::Implies(a, b) => Ok(!self.sat_fo(a, env)? || self.sat_fo(b, env)?),
            Formula0::Iff(a, b) => Ok(self.sat_fo(a, env)? == self.sat_fo(b, env)?),
            Formula0::Forall(v, body) => {
                let mut env = env.clone();
                for e in 0..self.domain_size {
                    env.insert(*v, e);
                    if !self.sat_fo(body, &env)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula0::Exists(v, body) => {
                let mut env = env.clone();
                for e in 0..self.domain_size {
                    env.insert(*v, e);
                    if self.sat_fo(body, &env)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    /// Validity on this structure: truth under every assignment to the free
    /// variables.
    pub fn valid_on(&self, f: &Formula0) -> Result<bool, SemanticsError> {
        let fv: Vec<usize> = f.free_vars().into_iter().collect();
        let mut env = HashMap::new();
        self.valid_rec(f, &fv, 0, &mut env)
    }

    fn valid_rec(
        &self,
        f: &Formula0,
        fv: &[usize],
        i: usize,
        env: &mut HashMap<usize, usize>,
    ) -> Result<bool, SemanticsError> {
        if i == fv.len() {
            return self.sat_fo(f, env);
        }
        for e in 0..self.domain_size {
            env.insert(fv[i], e);
            if !self.valid_rec(f, fv, i + 1, env)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn all_tuples(domain_size: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..domain_size).map(move |e| {
                    let mut t = t.clone();
                    t.push(e);
                    t
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_l0;

    #[test]
    fn boolean_structure_functions() {
        let b = FiniteStructure::boolean();
        let f = parse_l0("(v0 & v1) = 1", &b.signature).unwrap();
        let mut env = HashMap::new();
        env.insert(0, 1);
        env.insert(1, 1);
        assert!(b.sat_fo(&f, &env).unwrap());
        env.insert(1, 0);
        assert!(!b.sat_fo(&f, &env).unwrap());
    }

    #[test]
    fn quantifiers_range_over_domain() {
        let b = FiniteStructure::boolean();
        let f = parse_l0("forall v0 exists v1 ~(v0 = v1)", &b.signature).unwrap();
        assert!(b.sat_fo(&f, &HashMap::new()).unwrap());
        let f = parse_l0("exists v0 forall v1 v0 = v1", &b.signature).unwrap();
        assert!(!b.sat_fo(&f, &HashMap::new()).unwrap());
    }

    #[test]
    fn validity_closes_free_variables() {
        let b = FiniteStructure::boolean();
        let taut = parse_l0("v0 = v1 | ~(v0 = v1)", &b.signature).unwrap();
        assert!(b.valid_on(&taut).unwrap());
        let open = parse_l0("v0 = v1", &b.signature).unwrap();
        assert!(!b.valid_on(&open).unwrap());
    }

    #[test]
    fn partial_function_rejected() {
        let mut b = FiniteStructure::boolean();
        b.functions.get_mut("not").unwrap().pop();
        assert!(matches!(
            b.validate(),
            Err(SemanticsError::NotTotal { .. })
        ));
    }

    #[test]
    fn json_roundtrip() {
        let b = FiniteStructure::boolean();
        let text = serde_json::to_string(&b).unwrap();
        let mut back: FiniteStructure = serde_json::from_str(&text).unwrap();
        back.validate().unwrap();
        assert_eq!(back.domain_size, 2);
        let f = parse_l0("~(0 = 1)", &b.signature).unwrap();
        assert!(back.sat_fo(&f, &HashMap::new()).unwrap());
    }
}

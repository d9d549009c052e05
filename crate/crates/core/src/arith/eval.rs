use std::collections::HashMap;

use super::{ArithError, Grounding, Rational, Verdict};
use crate::syntax::{CmpOp, Formula1, Term1};

/// Exact value of a ground term: every probability constant grounded, no
/// real variables.
pub fn eval_ground_term(t: &Term1, g: &Grounding) -> Result<Rational, ArithError> {
    match t {
        Term1::Rat(q) => Ok(q.clone()),
        Term1::RealVar(v) => Err(ArithError::FreeRealVariable(v.clone())),
        Term1::Prob(pc) => g
            .get(pc)
            .cloned()
            .ok_or_else(|| ArithError::MissingConstant(pc.to_string())),
        Term1::Add(a, b) => Ok(eval_ground_term(a, g)? + eval_ground_term(b, g)?),
        Term1::Sub(a, b) => Ok(eval_ground_term(a, g)? - eval_ground_term(b, g)?),
        Term1::Mul(a, b) => Ok(eval_ground_term(a, g)? * eval_ground_term(b, g)?),
        Term1::Neg(a) => Ok(-eval_ground_term(a, g)?),
    }
}

/// Exact truth value of a quantifier-free sentence; never `Unknown`.
pub fn eval_ground_qf(f: &Formula1, g: &Grounding) -> Result<Verdict, ArithError> {
    Ok(if eval_qf_bool(f, g)? {
        Verdict::Holds
    } else {
        Verdict::Fails
    })
}

fn eval_qf_bool(f: &Formula1, g: &Grounding) -> Result<bool, ArithError> {
    match f {
        Formula1::Cmp(a, op, b) => {
            let x = eval_ground_term(a, g)?;
            let y = eval_ground_term(b, g)?;
            Ok(match op {
                CmpOp::Eq => x == y,
                CmpOp::Le => x <= y,
                CmpOp::Lt => x < y,
            })
        }
        Formula1::Not(f) => Ok(!eval_qf_bool(f, g)?),
        Formula1::And(a, b) => Ok(eval_qf_bool(a, g)? && eval_qf_bool(b, g)?),
        Formula1::Or(a, b) => Ok(eval_qf_bool(a, g)? || eval_qf_bool(b, g)?),
        Formula1::Implies(a, b) => Ok(!eval_qf_bool(a, g)? || eval_qf_bool(b, g)?),
        Formula1::Iff(a, b) => Ok(eval_qf_bool(a, g)? == eval_qf_bool(b, g)?),
        Formula1::Forall(v, _) | Formula1::Exists(v, _) => Err(
            ArithError::UnsupportedFragment(format!("quantifier over `{v}` in ground evaluation")),
        ),
    }
}

/// Substitute exact rational values for real variables.
pub fn substitute_reals(f: &Formula1, env: &HashMap<String, Rational>) -> Formula1 {
    match f {
        Formula1::Cmp(a, op, b) => Formula1::Cmp(subst_term(a, env), *op, subst_term(b, env)),
        Formula1::Not(g) => Formula1::not(substitute_reals(g, env)),
        Formula1::And(a, b) => Formula1::and(substitute_reals(a, env), substitute_reals(b, env)),
        Formula1::Or(a, b) => Formula1::or(substitute_reals(a, env), substitute_reals(b, env)),
        Formula1::Implies(a, b) => {
            Formula1::implies(substitute_reals(a, env), substitute_reals(b, env))
        }
        Formula1::Iff(a, b) => Formula1::iff(substitute_reals(a, env), substitute_reals(b, env)),
        Formula1::Forall(v, g) => {
            let mut env = env.clone();
            env.remove(v);
            Formula1::Forall(v.clone(), Box::new(substitute_reals(g, &env)))
        }
        Formula1::Exists(v, g) => {
            let mut env = env.clone();
            env.remove(v);
            Formula1::Exists(v.clone(), Box::new(substitute_reals(g, &env)))
        }
    }
}

fn subst_term(t: &Term1, env: &HashMap<String, Rational>) -> Term1 {
    match t {
        Term1::Rat(_) | Term1::Prob(_) => t.clone(),
        Term1::RealVar(v) => match env.get(v) {
            Some(q) => Term1::Rat(q.clone()),
            None => t.clone(),
        },
        Term1::Add(a, b) => Term1::add(subst_term(a, env), subst_term(b, env)),
        Term1::Sub(a, b) => Term1::sub(subst_term(a, env), subst_term(b, env)),
        Term1::Mul(a, b) => Term1::mul(subst_term(a, env), subst_term(b, env)),
        Term1::Neg(a) => Term1::neg(subst_term(a, env)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{Formula0, ProbConst, Term0};

    fn pc(name: &str) -> ProbConst {
        ProbConst {
            formula: Formula0::Rel(name.into(), vec![Term0::Var(0)]),
            tuple: vec![0],
        }
    }

    #[test]
    fn exact_ops() {
        let mut g = Grounding::new();
        g.insert(pc("P"), Rational::new(1, 2));
        g.insert(pc("S"), Rational::new(1, 3));
        let t = Term1::add(Term1::Prob(pc("P")), Term1::Prob(pc("S")));
        assert_eq!(eval_ground_term(&t, &g).unwrap(), Rational::new(5, 6));
        let t = Term1::mul(Term1::rat(2, 3), Term1::rat(3, 4));
        assert_eq!(eval_ground_term(&t, &g).unwrap(), Rational::new(1, 2));
        let mut g2 = Grounding::new();
        g2.insert(pc("P"), Rational::new(1, 8));
        let t = Term1::sub(Term1::rat(1, 1), Term1::Prob(pc("P")));
        assert_eq!(eval_ground_term(&t, &g2).unwrap(), Rational::new(7, 8));
    }

    #[test]
    fn missing_constant() {
        let g = Grounding::new();
        let t = Term1::Prob(pc("P"));
        assert!(matches!(
            eval_ground_term(&t, &g),
            Err(ArithError::MissingConstant(_))
        ));
    }

    #[test]
    fn qf_never_unknown() {
        let mut g = Grounding::new();
        g.insert(pc("P"), Rational::new(1, 2));
        let f = Formula1::cmp(Term1::Prob(pc("P")), CmpOp::Le, Term1::rat(1, 1));
        assert_eq!(eval_ground_qf(&f, &g).unwrap(), Verdict::Holds);
        let f = Formula1::cmp(Term1::Prob(pc("P")), CmpOp::Eq, Term1::rat(2, 3));
        assert_eq!(eval_ground_qf(&f, &g).unwrap(), Verdict::Fails);
    }
}

//! Exact linear feasibility over the rationals.
//!
//! Equalities are eliminated by substitution, the remaining inequalities by
//! Fourier–Motzkin. A satisfiable system yields an explicit rational point;
//! an unsatisfiable one yields a Farkas certificate: multipliers on the
//! original constraints whose combination reads `0 <= c` with `c < 0`
//! (or `0 < 0`). Multipliers on inequalities are nonnegative, multipliers on
//! equalities may take either sign.

use super::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Eq,
    Le,
    Lt,
}

/// `coeffs . x  rel  rhs`
#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rel: Rel,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, rel: Rel, rhs: Rational) -> Constraint {
        Constraint { coeffs, rel, rhs }
    }
}

#[derive(Debug, Clone)]
pub enum Feasibility {
    Sat(Vec<Rational>),
    /// Farkas multipliers, indexed into the input constraint slice.
    Unsat(Vec<(usize, Rational)>),
}

impl Feasibility {
    pub fn is_sat(&self) -> bool {
        matches!(self, Feasibility::Sat(_))
    }
}

#[derive(Debug, Clone)]
struct Row {
    coeffs: Vec<Rational>,
    strict: bool,
    rhs: Rational,
    cert: Vec<(usize, Rational)>,
}

impl Row {
    fn coeff(&self, var: usize) -> &Rational {
        &self.coeffs[var]
    }
}

fn cert_add(into: &mut Vec<(usize, Rational)>, from: &[(usize, Rational)], scale: &Rational) {
    for (idx, c) in from {
        let add = c * scale;
        match into.iter_mut().find(|(i, _)| i == idx) {
            Some((_, existing)) => *existing = &*existing + &add,
            None => into.push((*idx, add)),
        }
    }
    into.retain(|(_, c)| !c.is_zero());
    into.sort_by_key(|(i, _)| *i);
}

/// Substitution record `x_var = rhs - coeffs . x`.
struct EqSub {
    var: usize,
    coeffs: Vec<Rational>,
    rhs: Rational,
}

/// FM stage record: bounds on `var` in terms of the not-yet-eliminated
/// variables, each as `(coeffs, rhs, strict)` meaning
/// lower: `x_var >(=) rhs - coeffs . x`,  upper: `x_var <(=) rhs - coeffs . x`.
struct FmStage {
    var: usize,
    lowers: Vec<(Vec<Rational>, Rational, bool)>,
    uppers: Vec<(Vec<Rational>, Rational, bool)>,
}

pub fn solve(n_vars: usize, constraints: &[Constraint]) -> Feasibility {
    for c in constraints {
        assert_eq!(c.coeffs.len(), n_vars, "coefficient width mismatch");
    }

    let mut eqs: Vec<Row> = Vec::new();
    let mut ineqs: Vec<Row> = Vec::new();
    for (i, c) in constraints.iter().enumerate() {
        let row = Row {
            coeffs: c.coeffs.clone(),
            strict: matches!(c.rel, Rel::Lt),
            rhs: c.rhs.clone(),
            cert: vec![(i, Rational::one())],
        };
        match c.rel {
            Rel::Eq => eqs.push(row),
            Rel::Le | Rel::Lt => ineqs.push(row),
        }
    }

    // Phase 1: equality substitution.
    let mut subs: Vec<EqSub> = Vec::new();
    while let Some(eq) = eqs.pop() {
        let pivot = match eq.coeffs.iter().position(|c| !c.is_zero()) {
            Some(p) => p,
            None => {
                if eq.rhs.is_zero() {
                    continue;
                }
                // 0 = c with c != 0: scale so the combination reads 0 <= -1
                let mut cert = Vec::new();
                let scale = -eq.rhs.recip();
                cert_add(&mut cert, &eq.cert, &scale);
                return Feasibility::Unsat(cert);
            }
        };
        let pc = eq.coeff(pivot).clone();
        // normalize: x_pivot = rhs' - coeffs' . x
        let rhs_n = &eq.rhs / &pc;
        let coeffs_n: Vec<Rational> = eq
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| if j == pivot { Rational::zero() } else { c / &pc })
            .collect();
        let apply = |row: &mut Row| {
            let lam = -&(row.coeff(pivot) / &pc);
            if lam.is_zero() {
                return;
            }
            for (j, c) in eq.coeffs.iter().enumerate() {
                row.coeffs[j] = &row.coeffs[j] + &(&lam * c);
            }
            row.rhs = &row.rhs + &(&lam * &eq.rhs);
            let cert = eq.cert.clone();
            cert_add(&mut row.cert, &cert, &lam);
        };
        for row in eqs.iter_mut().chain(ineqs.iter_mut()) {
            apply(row);
        }
        subs.push(EqSub {
            var: pivot,
            coeffs: coeffs_n,
            rhs: rhs_n,
        });
    }

    // Phase 2: Fourier–Motzkin on the inequalities.
    let mut stages: Vec<FmStage> = Vec::new();
    for var in 0..n_vars {
        if ineqs.iter().all(|r| r.coeff(var).is_zero()) {
            continue;
        }
        let (with, without): (Vec<Row>, Vec<Row>) = ineqs
            .into_iter()
            .partition(|r| !r.coeff(var).is_zero());
        let mut lowers: Vec<Row> = Vec::new(); // coeff < 0 after normalization -> lower bound
        let mut uppers: Vec<Row> = Vec::new();
        let mut stage = FmStage {
            var,
            lowers: Vec::new(),
            uppers: Vec::new(),
        };
        for mut row in with {
            let c = row.coeff(var).clone();
            let inv = c.recip().abs();
            for x in row.coeffs.iter_mut() {
                *x = &*x * &inv;
            }
            row.rhs = &row.rhs * &inv;
            let mut cert = Vec::new();
            cert_add(&mut cert, &row.cert, &inv);
            row.cert = cert;
            if c.is_positive() {
                // x_var + rest <= rhs  =>  x_var <= rhs - rest
                let mut rest = row.coeffs.clone();
                rest[var] = Rational::zero();
                stage.uppers.push((rest, row.rhs.clone(), row.strict));
                uppers.push(row);
            } else {
                // -x_var + rest <= rhs  =>  x_var >= rest - rhs... normalize:
                // row is scaled to coefficient -1 on var
                let mut rest: Vec<Rational> =
                    row.coeffs.iter().map(|x| -x).collect();
                rest[var] = Rational::zero();
                stage.lowers.push((rest, -&row.rhs, row.strict));
                lowers.push(row);
            }
        }
        // stage lower bound reads x_var >= (-rhs) - rest'; stored as
        // (coeffs, rhs, strict) with meaning x_var >= rhs - coeffs . x,
        // matching the upper-bound convention with the inequality flipped.
        let mut next = without;
        for lo in &lowers {
            for up in &uppers {
                // lo: -x + a.x <= r1 ; up: x + b.x <= r2 ; sum eliminates x
                let mut coeffs: Vec<Rational> = lo
                    .coeffs
                    .iter()
                    .zip(up.coeffs.iter())
                    .map(|(a, b)| a + b)
                    .collect();
                coeffs[var] = Rational::zero();
                let mut cert = lo.cert.clone();
                cert_add(&mut cert, &up.cert, &Rational::one());
                next.push(Row {
                    coeffs,
                    strict: lo.strict || up.strict,
                    rhs: &lo.rhs + &up.rhs,
                    cert,
                });
            }
        }
        stages.push(stage);
        ineqs = dedup(next);
    }

    // Phase 3: constant rows.
    for row in &ineqs {
        debug_assert!(row.coeffs.iter().all(|c| c.is_zero()));
        let bad = if row.strict {
            !row.rhs.is_positive()
        } else {
            row.rhs.is_negative()
        };
        if bad {
            return Feasibility::Unsat(row.cert.clone());
        }
    }

    // Phase 4: recover a point.
    let mut point = vec![Rational::zero(); n_vars];
    let mut fixed = vec![false; n_vars];
    for stage in stages.iter().rev() {
        let eval = |(coeffs, rhs, strict): &(Vec<Rational>, Rational, bool)| {
            let mut v = rhs.clone();
            for (j, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    v = &v - &(c * &point[j]);
                }
            }
            (v, *strict)
        };
        let lo = stage.lowers.iter().map(eval).reduce(|a, b| {
            if a.0 > b.0 || (a.0 == b.0 && a.1) {
                a
            } else {
                b
            }
        });
        let hi = stage.uppers.iter().map(eval).reduce(|a, b| {
            if a.0 < b.0 || (a.0 == b.0 && a.1) {
                a
            } else {
                b
            }
        });
        let half = Rational::new(1, 2);
        point[stage.var] = match (lo, hi) {
            (Some((l, ls)), Some((h, _))) => {
                if l == h {
                    debug_assert!(!ls, "strict pinch not caught by elimination");
                    l
                } else {
                    (&l + &h) * half
                }
            }
            (Some((l, ls)), None) => {
                if ls {
                    &l + &Rational::one()
                } else {
                    l
                }
            }
            (None, Some((h, hs))) => {
                if hs {
                    &h - &Rational::one()
                } else {
                    h
                }
            }
            (None, None) => Rational::zero(),
        };
        fixed[stage.var] = true;
    }
    for sub in subs.iter().rev() {
        let mut v = sub.rhs.clone();
        for (j, c) in sub.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v = &v - &(c * &point[j]);
            }
        }
        point[sub.var] = v;
        fixed[sub.var] = true;
    }
    let _ = fixed;

    debug_assert!(check_point(&point, constraints));
    Feasibility::Sat(point)
}

fn dedup(rows: Vec<Row>) -> Vec<Row> {
    let mut out: Vec<Row> = Vec::new();
    for row in rows {
        // drop trivially true constant rows early
        if row.coeffs.iter().all(|c| c.is_zero()) {
            let trivial = if row.strict {
                row.rhs.is_positive()
            } else {
                !row.rhs.is_negative()
            };
            if trivial {
                continue;
            }
        }
        let dup = out.iter().any(|r| {
            r.strict == row.strict && r.rhs == row.rhs && r.coeffs == row.coeffs
        });
        if !dup {
            out.push(row);
        }
    }
    out
}

/// Exact check that a point satisfies every constraint.
pub fn check_point(point: &[Rational], constraints: &[Constraint]) -> bool {
    constraints.iter().all(|c| {
        let lhs: Rational = c
            .coeffs
            .iter()
            .zip(point.iter())
            .map(|(a, x)| a * x)
            .sum();
        match c.rel {
            Rel::Eq => lhs == c.rhs,
            Rel::Le => lhs <= c.rhs,
            Rel::Lt => lhs < c.rhs,
        }
    })
}

/// Exact check that Farkas multipliers certify infeasibility.
pub fn check_certificate(cert: &[(usize, Rational)], constraints: &[Constraint]) -> bool {
    if cert.is_empty() {
        return false;
    }
    let n = match constraints.first() {
        Some(c) => c.coeffs.len(),
        None => return false,
    };
    let mut coeffs = vec![Rational::zero(); n];
    let mut rhs = Rational::zero();
    let mut any_strict = false;
    for (idx, m) in cert {
        let c = match constraints.get(*idx) {
            Some(c) => c,
            None => return false,
        };
        match c.rel {
            Rel::Eq => {}
            Rel::Le | Rel::Lt => {
                if m.is_negative() {
                    return false;
                }
                if matches!(c.rel, Rel::Lt) && m.is_positive() {
                    any_strict = true;
                }
            }
        }
        for (j, a) in c.coeffs.iter().enumerate() {
            coeffs[j] = &coeffs[j] + &(m * a);
        }
        rhs = &rhs + &(m * &c.rhs);
    }
    if coeffs.iter().any(|c| !c.is_zero()) {
        return false;
    }
    // combination reads 0 <= rhs (or 0 < rhs when some strict multiplier
    // is active); it certifies infeasibility when that is false
    if any_strict {
        !rhs.is_positive()
    } else {
        rhs.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn c(coeffs: &[i64], rel: Rel, rhs: (i64, i64)) -> Constraint {
        Constraint::new(
            coeffs.iter().map(|&x| r(x, 1)).collect(),
            rel,
            r(rhs.0, rhs.1),
        )
    }

    #[test]
    fn simplex_vertex() {
        // x + y = 1, x >= 0, y >= 0, x <= 1/3
        let cs = vec![
            c(&[1, 1], Rel::Eq, (1, 1)),
            c(&[-1, 0], Rel::Le, (0, 1)),
            c(&[0, -1], Rel::Le, (0, 1)),
            c(&[1, 0], Rel::Le, (1, 3)),
        ];
        match solve(2, &cs) {
            Feasibility::Sat(p) => assert!(check_point(&p, &cs)),
            Feasibility::Unsat(_) => panic!("feasible system reported unsat"),
        }
    }

    #[test]
    fn infeasible_with_certificate() {
        // x <= 1, x >= 2
        let cs = vec![c(&[1], Rel::Le, (1, 1)), c(&[-1], Rel::Le, (-2, 1))];
        match solve(1, &cs) {
            Feasibility::Unsat(cert) => assert!(check_certificate(&cert, &cs)),
            Feasibility::Sat(_) => panic!("infeasible system reported sat"),
        }
    }

    #[test]
    fn strict_pinch() {
        // x < 1, x >= 1
        let cs = vec![c(&[1], Rel::Lt, (1, 1)), c(&[-1], Rel::Le, (-1, 1))];
        match solve(1, &cs) {
            Feasibility::Unsat(cert) => assert!(check_certificate(&cert, &cs)),
            Feasibility::Sat(_) => panic!("strict pinch reported sat"),
        }
    }

    #[test]
    fn contradictory_equalities() {
        let cs = vec![c(&[1, 1], Rel::Eq, (1, 1)), c(&[1, 1], Rel::Eq, (2, 1))];
        match solve(2, &cs) {
            Feasibility::Unsat(cert) => assert!(check_certificate(&cert, &cs)),
            Feasibility::Sat(_) => panic!("contradictory equalities reported sat"),
        }
    }

    #[test]
    fn unconstrained_variable_defaults() {
        let cs = vec![c(&[1, 0], Rel::Eq, (1, 2))];
        match solve(2, &cs) {
            Feasibility::Sat(p) => {
                assert_eq!(p[0], r(1, 2));
                assert!(check_point(&p, &cs));
            }
            Feasibility::Unsat(_) => panic!("unsat"),
        }
    }

    #[test]
    fn random_systems_agree_with_point_or_certificate() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(1..4usize);
            let m = rng.gen_range(1..6usize);
            let cs: Vec<Constraint> = (0..m)
                .map(|_| {
                    let coeffs = (0..n).map(|_| r(rng.gen_range(-3..4), 1)).collect();
                    let rel = match rng.gen_range(0..3) {
                        0 => Rel::Eq,
                        1 => Rel::Le,
                        _ => Rel::Lt,
                    };
                    Constraint::new(coeffs, rel, r(rng.gen_range(-3..4), 1))
                })
                .collect();
            match solve(n, &cs) {
                Feasibility::Sat(p) => assert!(check_point(&p, &cs), "bad point for {cs:?}"),
                Feasibility::Unsat(cert) => {
                    assert!(check_certificate(&cert, &cs), "bad certificate for {cs:?}")
                }
            }
        }
    }
}

use std::collections::HashMap;
use std::io::Write;
use std::process::Command;

use super::eval::{eval_ground_qf, substitute_reals};
use super::{ArithError, Grounding, Rational, Verdict};
use crate::syntax::{bound_values, bounded_body, CmpOp, Formula1, Term1};

/// Closed interval with exact rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn point(q: Rational) -> Interval {
        Interval {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn new(lo: Rational, hi: Rational) -> Interval {
        assert!(lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) * Rational::new(1, 2)
    }

    fn add(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    fn sub(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    fn neg(&self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }

    fn mul(&self, o: &Interval) -> Interval {
        let products = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = products.iter().cloned().reduce(Rational::min).expect("nonempty");
        let hi = products.iter().cloned().reduce(Rational::max).expect("nonempty");
        Interval::new(lo, hi)
    }
}

/// Backend selection for quantified sentences.
#[derive(Debug, Clone)]
pub enum Policy {
    Builtin {
        /// Resolution on each box edge at which the search gives up.
        delta: Rational,
        /// Budget on explored boxes.
        max_boxes: usize,
    },
    /// External decision procedure: invoked as `command <file>`, expected to
    /// print `sat`, `unsat` or `unknown` on the first line of stdout.
    External { command: String },
}

impl Default for Policy {
    fn default() -> Self {
        Policy::Builtin {
            // 2^-20
            delta: Rational::new(1, 1 << 20),
            max_boxes: 100_000,
        }
    }
}

impl Policy {
    pub fn builtin(delta: Rational) -> Policy {
        Policy::Builtin {
            delta,
            max_boxes: 100_000,
        }
    }
}

/// Evaluate a possibly quantified sentence under a grounding.
pub fn eval_quantified(f: &Formula1, g: &Grounding, policy: &Policy) -> Result<Verdict, ArithError> {
    Ok(eval_quantified_with_witness(f, g, policy)?.0)
}

/// As `eval_quantified`; on `HOLDS` from the built-in policy also returns
/// the verified rational witness.
pub fn eval_quantified_with_witness(
    f: &Formula1,
    g: &Grounding,
    policy: &Policy,
) -> Result<(Verdict, Option<HashMap<String, Rational>>), ArithError> {
    if f.is_quantifier_free() && f.free_real_vars().is_empty() {
        return Ok((eval_ground_qf(f, g)?, None));
    }
    match policy {
        Policy::Builtin { delta, max_boxes } => builtin_eval(f, g, delta, *max_boxes),
        Policy::External { command } => {
            let v = external_eval(f, g, command)?;
            Ok((v, None))
        }
    }
}

fn builtin_eval(
    f: &Formula1,
    g: &Grounding,
    delta: &Rational,
    max_boxes: usize,
) -> Result<(Verdict, Option<HashMap<String, Rational>>), ArithError> {
    match f {
        Formula1::Exists(..) => {
            let (boxes, body) = peel_existentials(f)?;
            let body = nnf(&body)?;
            search(&boxes, &body, f, g, delta, max_boxes)
        }
        // bounded universal: refute the negated bounded existential
        Formula1::Forall(v, inner) => {
            let (lo, hi, body) = match &**inner {
                Formula1::Implies(bounds, body) => match forall_bounds(v, bounds) {
                    Some((lo, hi)) => (lo, hi, (**body).clone()),
                    None => {
                        return Err(ArithError::UnsupportedFragment(
                            "universal quantifier without rational bounds".into(),
                        ))
                    }
                },
                _ => {
                    return Err(ArithError::UnsupportedFragment(
                        "universal quantifier without rational bounds".into(),
                    ))
                }
            };
            let negated = Formula1::exists(
                v.clone(),
                Formula1::and(
                    Formula1::and(
                        Formula1::cmp(Term1::Rat(lo), CmpOp::Le, Term1::RealVar(v.clone())),
                        Formula1::cmp(Term1::RealVar(v.clone()), CmpOp::Le, Term1::Rat(hi)),
                    ),
                    Formula1::not(body),
                ),
            );
            let (v, _) = builtin_eval(&negated, g, delta, max_boxes)?;
            Ok((
                match v {
                    Verdict::Holds => Verdict::Fails,
                    Verdict::Fails => Verdict::Holds,
                    u => u,
                },
                None,
            ))
        }
        _ => Err(ArithError::UnsupportedFragment(
            "built-in policy requires a bounded quantifier prefix".into(),
        )),
    }
}

fn forall_bounds(v: &str, bounds: &Formula1) -> Option<(Rational, Rational)> {
    // lo <= v & v <= hi
    if let Formula1::And(lo, hi) = bounds {
        if let (
            Formula1::Cmp(Term1::Rat(l), CmpOp::Le, Term1::RealVar(a)),
            Formula1::Cmp(Term1::RealVar(b), CmpOp::Le, Term1::Rat(h)),
        ) = (&**lo, &**hi)
        {
            if a == v && b == v {
                return Some((l.clone(), h.clone()));
            }
        }
    }
    None
}

/// Strip a prefix of bounded existentials `exists r (lo <= r & r <= hi & body)`.
fn peel_existentials(f: &Formula1) -> Result<(Vec<(String, Interval)>, Formula1), ArithError> {
    let mut boxes = Vec::new();
    let mut cur = f.clone();
    loop {
        match cur {
            Formula1::Exists(v, inner) => {
                let (lo, hi) = bound_values(&v, &inner).ok_or_else(|| {
                    ArithError::UnsupportedFragment(format!(
                        "existential over `{v}` lacks rational bounds `lo <= {v} & {v} <= hi`"
                    ))
                })?;
                if lo > hi {
                    return Err(ArithError::UnsupportedFragment(format!(
                        "empty bounds on `{v}`"
                    )));
                }
                let body = bounded_body(&v, &inner).expect("checked by bound_values");
                let body = body.clone();
                boxes.push((v, Interval::new(lo, hi)));
                cur = body;
            }
            other => {
                if !other.is_quantifier_free() {
                    return Err(ArithError::UnsupportedFragment(
                        "quantifier below the bounded existential prefix".into(),
                    ));
                }
                let bound: Vec<&String> = boxes.iter().map(|(v, _)| v).collect();
                for fv in other.free_real_vars() {
                    if !bound.iter().any(|b| **b == fv) {
                        return Err(ArithError::FreeRealVariable(fv));
                    }
                }
                return Ok((boxes, other));
            }
        }
    }
}

/// Negation normal form over comparison atoms; `!(a = b)` splits into two
/// strict inequalities.
pub(crate) fn nnf(f: &Formula1) -> Result<Formula1, ArithError> {
    match f {
        Formula1::Cmp(..) => Ok(f.clone()),
        Formula1::And(a, b) => Ok(Formula1::and(nnf(a)?, nnf(b)?)),
        Formula1::Or(a, b) => Ok(Formula1::or(nnf(a)?, nnf(b)?)),
        Formula1::Implies(a, b) => Ok(Formula1::or(nnf(&Formula1::not((**a).clone()))?, nnf(b)?)),
        Formula1::Iff(a, b) => {
            let l = Formula1::and((**a).clone(), (**b).clone());
            let r = Formula1::and(
                Formula1::not((**a).clone()),
                Formula1::not((**b).clone()),
            );
            nnf(&Formula1::or(l, r))
        }
        Formula1::Not(inner) => match &**inner {
            Formula1::Cmp(a, op, b) => Ok(match op {
                CmpOp::Eq => Formula1::or(
                    Formula1::Cmp(a.clone(), CmpOp::Lt, b.clone()),
                    Formula1::Cmp(b.clone(), CmpOp::Lt, a.clone()),
                ),
                CmpOp::Le => Formula1::Cmp(b.clone(), CmpOp::Lt, a.clone()),
                CmpOp::Lt => Formula1::Cmp(b.clone(), CmpOp::Le, a.clone()),
            }),
            Formula1::Not(g) => nnf(g),
            Formula1::And(a, b) => Ok(Formula1::or(
                nnf(&Formula1::not((**a).clone()))?,
                nnf(&Formula1::not((**b).clone()))?,
            )),
            Formula1::Or(a, b) => Ok(Formula1::and(
                nnf(&Formula1::not((**a).clone()))?,
                nnf(&Formula1::not((**b).clone()))?,
            )),
            Formula1::Implies(a, b) => Ok(Formula1::and(
                nnf(a)?,
                nnf(&Formula1::not((**b).clone()))?,
            )),
            Formula1::Iff(a, b) => nnf(&Formula1::iff(
                (**a).clone(),
                Formula1::not((**b).clone()),
            )),
            q => Err(ArithError::UnsupportedFragment(format!(
                "negated quantifier in body: {q}"
            ))),
        },
        Formula1::Forall(..) | Formula1::Exists(..) => Err(ArithError::UnsupportedFragment(
            "quantifier inside body".into(),
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tri {
    True,
    False,
    Maybe,
}

fn term_interval(
    t: &Term1,
    env: &HashMap<String, Interval>,
    g: &Grounding,
) -> Result<Interval, ArithError> {
    match t {
        Term1::Rat(q) => Ok(Interval::point(q.clone())),
        Term1::RealVar(v) => env
            .get(v)
            .cloned()
            .ok_or_else(|| ArithError::FreeRealVariable(v.clone())),
        Term1::Prob(pc) => g
            .get(pc)
            .map(|q| Interval::point(q.clone()))
            .ok_or_else(|| ArithError::MissingConstant(pc.to_string())),
        Term1::Add(a, b) => Ok(term_interval(a, env, g)?.add(&term_interval(b, env, g)?)),
        Term1::Sub(a, b) => Ok(term_interval(a, env, g)?.sub(&term_interval(b, env, g)?)),
        Term1::Mul(a, b) => Ok(term_interval(a, env, g)?.mul(&term_interval(b, env, g)?)),
        Term1::Neg(a) => Ok(term_interval(a, env, g)?.neg()),
    }
}

fn tri_eval(
    f: &Formula1,
    env: &HashMap<String, Interval>,
    g: &Grounding,
) -> Result<Tri, ArithError> {
    match f {
        Formula1::Cmp(a, op, b) => {
            let d = term_interval(a, env, g)?.sub(&term_interval(b, env, g)?);
            let zero = Rational::zero();
            Ok(match op {
                CmpOp::Eq => {
                    if d.lo > zero || d.hi < zero {
                        Tri::False
                    } else if d.lo == zero && d.hi == zero {
                        Tri::True
                    } else {
                        Tri::Maybe
                    }
                }
                CmpOp::Le => {
                    if d.hi <= zero {
                        Tri::True
                    } else if d.lo > zero {
                        Tri::False
                    } else {
                        Tri::Maybe
                    }
                }
                CmpOp::Lt => {
                    if d.hi < zero {
                        Tri::True
                    } else if d.lo >= zero {
                        Tri::False
                    } else {
                        Tri::Maybe
                    }
                }
            })
        }
        Formula1::And(a, b) => Ok(match (tri_eval(a, env, g)?, tri_eval(b, env, g)?) {
            (Tri::False, _) | (_, Tri::False) => Tri::False,
            (Tri::True, Tri::True) => Tri::True,
            _ => Tri::Maybe,
        }),
        Formula1::Or(a, b) => Ok(match (tri_eval(a, env, g)?, tri_eval(b, env, g)?) {
            (Tri::True, _) | (_, Tri::True) => Tri::True,
            (Tri::False, Tri::False) => Tri::False,
            _ => Tri::Maybe,
        }),
        other => Err(ArithError::UnsupportedFragment(format!(
            "connective not in negation normal form: {other}"
        ))),
    }
}

/// Floating-point value of a term under an approximate environment; only a
/// heuristic — every candidate it produces is re-verified exactly.
fn term_f64(t: &Term1, env: &HashMap<String, f64>, g: &Grounding) -> f64 {
    match t {
        Term1::Rat(q) => q.to_f64_approx(),
        Term1::RealVar(v) => env.get(v).copied().unwrap_or(f64::NAN),
        Term1::Prob(pc) => g.get(pc).map(|q| q.to_f64_approx()).unwrap_or(f64::NAN),
        Term1::Add(a, b) => term_f64(a, env, g) + term_f64(b, env, g),
        Term1::Sub(a, b) => term_f64(a, env, g) - term_f64(b, env, g),
        Term1::Mul(a, b) => term_f64(a, env, g) * term_f64(b, env, g),
        Term1::Neg(a) => -term_f64(a, env, g),
    }
}

/// Penalty of an nnf body: zero iff (approximately) satisfied.
fn violation(f: &Formula1, env: &HashMap<String, f64>, g: &Grounding) -> f64 {
    match f {
        Formula1::Cmp(a, op, b) => {
            let d = term_f64(a, env, g) - term_f64(b, env, g);
            match op {
                CmpOp::Eq => d.abs(),
                CmpOp::Le | CmpOp::Lt => d.max(0.0),
            }
        }
        Formula1::And(a, b) => violation(a, env, g) + violation(b, env, g),
        Formula1::Or(a, b) => violation(a, env, g).min(violation(b, env, g)),
        _ => f64::INFINITY,
    }
}

/// Random-descent candidate hunt inside the root box.  Midpoint splitting
/// alone cannot land on solutions at box corners (e.g. `a = 1` inside
/// `[-1, 1]`), so before branching we descend on the penalty numerically,
/// reconstruct small rationals from the approximate point, and keep a
/// candidate only if the exact check accepts it.
fn numeric_polish(
    names: &[&String],
    root: &[Interval],
    body: &Formula1,
    original: &Formula1,
    g: &Grounding,
) -> Result<Option<HashMap<String, Rational>>, ArithError> {
    use rand::Rng;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x1e7a);
    let lo: Vec<f64> = root.iter().map(|i| i.lo.to_f64_approx()).collect();
    let hi: Vec<f64> = root.iter().map(|i| i.hi.to_f64_approx()).collect();
    let caps: [u64; 5] = [2, 16, 256, 1 << 12, 1 << 20];

    let reconstruct = |point: &[f64]| -> Result<Option<HashMap<String, Rational>>, ArithError> {
        for cap in caps {
            let mut env = HashMap::new();
            for (k, x) in point.iter().enumerate() {
                let q = match Rational::reconstruct_f64(*x, cap) {
                    Some(q) => q.max(root[k].lo.clone()).min(root[k].hi.clone()),
                    None => break,
                };
                env.insert(names[k].clone(), q);
            }
            if env.len() == names.len() && verify_witness(original, &env, g)? {
                return Ok(Some(env));
            }
        }
        Ok(None)
    };

    let mut best: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| (a + b) / 2.0).collect();
    let mut best_v = violation(body, &env_of(names, &best), g);
    if let Some(w) = reconstruct(&best)? {
        return Ok(Some(w));
    }
    let mut scale = 0.5;
    for it in 0..20_000u32 {
        let mut cand = best.clone();
        for k in 0..cand.len() {
            if rng.gen::<f64>() < 0.5 {
                let span = (hi[k] - lo[k]) * scale;
                cand[k] = (cand[k] + rng.gen_range(-span..=span)).clamp(lo[k], hi[k]);
            }
        }
        let v = violation(body, &env_of(names, &cand), g);
        if v < best_v {
            best = cand;
            best_v = v;
            if let Some(w) = reconstruct(&best)? {
                return Ok(Some(w));
            }
        }
        if it % 400 == 399 {
            scale = (scale * 0.8).max(1e-9);
            if let Some(w) = reconstruct(&best)? {
                return Ok(Some(w));
            }
        }
    }
    reconstruct(&best)
}

fn env_of(names: &[&String], point: &[f64]) -> HashMap<String, f64> {
    names
        .iter()
        .zip(point)
        .map(|(n, x)| ((*n).clone(), *x))
        .collect()
}

fn search(
    boxes: &[(String, Interval)],
    body: &Formula1,
    original: &Formula1,
    g: &Grounding,
    delta: &Rational,
    max_boxes: usize,
) -> Result<(Verdict, Option<HashMap<String, Rational>>), ArithError> {
    let names: Vec<&String> = boxes.iter().map(|(v, _)| v).collect();
    let root: Vec<Interval> = boxes.iter().map(|(_, i)| i.clone()).collect();
    if tri_eval(body, &names.iter().zip(root.iter()).map(|(n, i)| ((*n).clone(), i.clone())).collect(), g)? != Tri::False {
        if let Some(w) = numeric_polish(&names, &root, body, original, g)? {
            return Ok((Verdict::Holds, Some(w)));
        }
    }
    let mut stack: Vec<Vec<Interval>> = vec![boxes.iter().map(|(_, i)| i.clone()).collect()];
    let mut unknown_seen = false;
    let mut explored = 0usize;

    while let Some(cube) = stack.pop() {
        explored += 1;
        if explored > max_boxes {
            return Ok((
                Verdict::unknown("box budget exceeded", Some(delta.clone())),
                None,
            ));
        }
        let env: HashMap<String, Interval> = names
            .iter()
            .zip(cube.iter())
            .map(|(n, i)| ((*n).clone(), i.clone()))
            .collect();
        match tri_eval(body, &env, g)? {
            Tri::False => continue,
            Tri::True | Tri::Maybe => {
                // candidate point: box midpoints, verified exactly against
                // the original sentence body
                let candidate: HashMap<String, Rational> = names
                    .iter()
                    .zip(cube.iter())
                    .map(|(n, i)| ((*n).clone(), i.midpoint()))
                    .collect();
                if verify_witness(original, &candidate, g)? {
                    return Ok((Verdict::Holds, Some(candidate)));
                }
                // split the widest edge
                let (widest, _) = cube
                    .iter()
                    .enumerate()
                    .max_by(|(i, a), (j, b)| a.width().cmp(&b.width()).then(j.cmp(i)))
                    .expect("nonempty cube");
                if cube[widest].width() <= *delta {
                    unknown_seen = true;
                    continue;
                }
                let mid = cube[widest].midpoint();
                let mut left = cube.clone();
                let mut right = cube;
                left[widest] = Interval::new(left[widest].lo.clone(), mid.clone());
                right[widest] = Interval::new(mid, right[widest].hi.clone());
                stack.push(right);
                stack.push(left);
            }
        }
    }
    if unknown_seen {
        Ok((
            Verdict::unknown("resolution reached without witness", Some(delta.clone())),
            None,
        ))
    } else {
        Ok((Verdict::Fails, None))
    }
}

/// A claimed witness must make the quantifier-free matrix of the original
/// sentence hold under exact evaluation.
fn verify_witness(
    original: &Formula1,
    env: &HashMap<String, Rational>,
    g: &Grounding,
) -> Result<bool, ArithError> {
    // drop the quantifiers, keeping bounds as conjuncts; the prefix nests
    // each inner quantifier under its predecessor's bounds conjunction
    fn matrix(f: &Formula1) -> Formula1 {
        match f {
            Formula1::Exists(_, inner) | Formula1::Forall(_, inner) => matrix(inner),
            Formula1::And(a, b) => Formula1::and(matrix(a), matrix(b)),
            Formula1::Or(a, b) => Formula1::or(matrix(a), matrix(b)),
            other => other.clone(),
        }
    }
    let grounded = substitute_reals(&matrix(original), env);
    Ok(eval_ground_qf(&grounded, g)?.holds())
}

/// Substitute grounded probability constants by their exact values.
pub fn ground_probs(f: &Formula1, g: &Grounding) -> Result<Formula1, ArithError> {
    fn term(t: &Term1, g: &Grounding) -> Result<Term1, ArithError> {
        Ok(match t {
            Term1::Rat(_) | Term1::RealVar(_) => t.clone(),
            Term1::Prob(pc) => Term1::Rat(
                g.get(pc)
                    .cloned()
                    .ok_or_else(|| ArithError::MissingConstant(pc.to_string()))?,
            ),
            Term1::Add(a, b) => Term1::add(term(a, g)?, term(b, g)?),
            Term1::Sub(a, b) => Term1::sub(term(a, g)?, term(b, g)?),
            Term1::Mul(a, b) => Term1::mul(term(a, g)?, term(b, g)?),
            Term1::Neg(a) => Term1::neg(term(a, g)?),
        })
    }
    Ok(match f {
        Formula1::Cmp(a, op, b) => Formula1::Cmp(term(a, g)?, *op, term(b, g)?),
        Formula1::Not(x) => Formula1::not(ground_probs(x, g)?),
        Formula1::And(a, b) => Formula1::and(ground_probs(a, g)?, ground_probs(b, g)?),
        Formula1::Or(a, b) => Formula1::or(ground_probs(a, g)?, ground_probs(b, g)?),
        Formula1::Implies(a, b) => Formula1::implies(ground_probs(a, g)?, ground_probs(b, g)?),
        Formula1::Iff(a, b) => Formula1::iff(ground_probs(a, g)?, ground_probs(b, g)?),
        Formula1::Forall(v, x) => Formula1::Forall(v.clone(), Box::new(ground_probs(x, g)?)),
        Formula1::Exists(v, x) => Formula1::Exists(v.clone(), Box::new(ground_probs(x, g)?)),
    })
}

/// Solver exchange: one grounded sentence per file, formula text per the
/// published grammar; the backend prints `sat` / `unsat` / `unknown`.
fn external_eval(f: &Formula1, g: &Grounding, command: &str) -> Result<Verdict, ArithError> {
    let grounded = ground_probs(f, g)?;
    let path = std::env::temp_dir().join(format!(
        "mtl-query-{}-{:x}.sentence",
        std::process::id(),
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_nanos())
            .unwrap_or(0)
    ));
    let mut file =
        std::fs::File::create(&path).map_err(|e| ArithError::Backend(format!("{e}")))?;
    writeln!(file, "{grounded}").map_err(|e| ArithError::Backend(format!("{e}")))?;
    drop(file);
    let mut parts = command.split_whitespace();
    let prog = parts
        .next()
        .ok_or_else(|| ArithError::Backend("empty backend command".into()))?;
    let output = Command::new(prog)
        .args(parts)
        .arg(&path)
        .output()
        .map_err(|e| ArithError::Backend(format!("spawn `{command}`: {e}")))?;
    let _ = std::fs::remove_file(&path);
    if !output.status.success() {
        return Err(ArithError::Backend(format!(
            "backend exited with {}",
            output.status
        )));
    }
    let stdout = String::from_utf8_lossy(&output.stdout);
    match stdout.lines().next().map(str::trim) {
        Some("sat") => Ok(Verdict::Holds),
        Some("unsat") => Ok(Verdict::Fails),
        Some("unknown") => Ok(Verdict::unknown("external backend returned unknown", None)),
        other => Err(ArithError::Backend(format!(
            "unrecognized backend answer {other:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_l1, Signature};

    fn sig() -> Signature {
        Signature {
            name: "t".into(),
            relations: vec![("P".into(), 1)],
            functions: vec![],
            constants: vec![],
        }
    }

    fn grounding(v: Rational) -> Grounding {
        let f = crate::syntax::parse_l0("P(v0)", &sig()).unwrap();
        let mut g = Grounding::new();
        g.insert(
            crate::syntax::ProbConst::new(f, vec![0]).unwrap(),
            v,
        );
        g
    }

    fn sentence(text: &str) -> Formula1 {
        parse_l1(text, &sig(), &[0]).unwrap()
    }

    #[test]
    fn perfect_square_witness() {
        let f = sentence("exists r (0 <= r & r <= 1 & r * r = |P(v0)|)");
        let g = grounding(Rational::new(1, 4));
        let (v, w) = eval_quantified_with_witness(&f, &g, &Policy::default()).unwrap();
        assert_eq!(v, Verdict::Holds);
        assert_eq!(w.unwrap()["r"], Rational::new(1, 2));
    }

    #[test]
    fn bound_refutation() {
        let f = sentence("exists r (0 <= r & r <= 1 & r * r = 2)");
        let g = Grounding::new();
        let v = eval_quantified(&f, &g, &Policy::default()).unwrap();
        assert_eq!(v, Verdict::Fails);
    }

    #[test]
    fn irrational_witness_is_unknown() {
        let f = sentence("exists r (0 <= r & r <= 1 & r * r = |P(v0)|)");
        let g = grounding(Rational::new(1, 2));
        let v = eval_quantified(&f, &g, &Policy::builtin(Rational::new(1, 1 << 12))).unwrap();
        assert!(matches!(v, Verdict::Unknown { .. }), "got {v}");
    }

    #[test]
    fn bounded_universal() {
        let f = sentence("forall r (0 <= r & r <= 1 -> r * r <= 1)");
        let v = eval_quantified(&f, &Grounding::new(), &Policy::default()).unwrap();
        assert_eq!(v, Verdict::Holds);
        let f = sentence("forall r (0 <= r & r <= 1 -> r * r <= 1/4)");
        let v = eval_quantified(&f, &Grounding::new(), &Policy::default()).unwrap();
        assert_eq!(v, Verdict::Fails);
    }

    #[test]
    fn unbounded_rejected() {
        let f = sentence("exists r (r * r = 2)");
        assert!(matches!(
            eval_quantified(&f, &Grounding::new(), &Policy::default()),
            Err(ArithError::UnsupportedFragment(_))
        ));
    }
}

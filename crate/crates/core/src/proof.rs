//! Checkable proof scripts for the deductive system `(T, Sigma) |- alpha`.
//!
//! Scripts are data files. Axioms A0/A1/A2 are matched syntactically against
//! their schemas; rule R0 maps a disjunction-of-conjunctions of universally
//! closed implications to the corresponding inequalities. Object-language
//! premises are discharged either by membership in the named hypotheses T or
//! by validity on the designated finite structure — there is no first-order
//! proof search. Real-arithmetic steps split into a complete propositional
//! justification (TAUT) and a sound, possibly incomplete linear oracle (RCF):
//! an oracle UNKNOWN fails the line, never passes it.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::arith::linear::{self, Constraint, Feasibility, Rel};
use crate::arith::{interval, Rational};
use crate::semantics::FiniteStructure;
use crate::syntax::{
    lex, parse_l0, parse_l1, CmpOp, Formula0, Formula1, ProbConst, Signature, SyntaxError, Term1,
    Tok,
};

#[derive(Debug, Error)]
pub enum ProofError {
    #[error("script line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("script line {line}: {source}")]
    Statement {
        line: usize,
        #[source]
        source: SyntaxError,
    },
    #[error("script has no goal")]
    MissingGoal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    L0(Formula0),
    L1(Formula1),
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::L0(x) => write!(f, "{x}"),
            Statement::L1(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    HypT(String),
    HypSigma(String),
    AxA0,
    AxA1,
    AxA2,
    /// cites the line holding the object-language premise
    R0(usize),
    Taut(Vec<usize>),
    Rcf(Vec<usize>),
    FoSemantic,
}

#[derive(Debug, Clone)]
pub struct ProofLine {
    pub num: usize,
    pub statement: Statement,
    pub just: Justification,
}

#[derive(Debug, Clone)]
pub struct ProofScript {
    /// optional path recorded by the `structure:` directive
    pub structure_path: Option<String>,
    pub hyp_t: Vec<(String, Formula0)>,
    pub hyp_sigma: Vec<(String, Formula1)>,
    pub goal: Formula1,
    pub lines: Vec<ProofLine>,
}

#[derive(Debug, Clone)]
pub struct LineReport {
    pub num: usize,
    pub ok: bool,
    pub msg: String,
}

#[derive(Debug, Clone)]
pub struct ProofReport {
    pub accepted: bool,
    pub lines: Vec<LineReport>,
}

impl fmt::Display for ProofReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(
                f,
                "line {}: {}{}{}",
                l.num,
                if l.ok { "OK" } else { "FAIL" },
                if l.msg.is_empty() { "" } else { " " },
                l.msg
            )?;
        }
        write!(f, "{}", if self.accepted { "ACCEPTED" } else { "REJECTED" })
    }
}

/// Script format, one item per line:
/// ```text
/// # comment
/// structure: fixtures/b2.json
/// hyp_t name: <L0 sentence>
/// hyp_sigma name: <L1 sentence>
/// goal: <L1 sentence>
/// 1: <statement> ; <JUSTIFICATION>
/// ```
/// Justifications: `HYP_T name`, `HYP_SIGMA name`, `AX_A0`, `AX_A1`,
/// `AX_A2`, `R0 n`, `TAUT n ...`, `RCF n ...`, `FO_SEMANTIC`. The statement
/// is an object-language formula for `HYP_T` and `FO_SEMANTIC` lines and a
/// real-arithmetic formula otherwise. Probability-constant tuples are the
/// variables mentioned anywhere in the script, in increasing order.
/// The `structure:` directive of a script, if any; needed before full
/// parsing because the structure supplies the signature.
pub fn structure_directive(text: &str) -> Option<String> {
    for (_, content) in script_items(text) {
        if let Some(("structure", path)) = content
            .split_once(':')
            .map(|(h, p)| (h.trim(), p.trim()))
        {
            return Some(path.to_string());
        }
    }
    None
}

pub fn parse_script(text: &str, sig: &Signature) -> Result<ProofScript, ProofError> {
    // first pass: the variable tuple shared by every |phi| in the script
    let mut dom: Vec<usize> = Vec::new();
    for (_, content) in script_items(text) {
        let payload = content.split_once(':').map(|(_, p)| p).unwrap_or(content);
        if let Ok(toks) = lex(payload) {
            for t in toks {
                if let Tok::Var(i) = t.tok {
                    if !dom.contains(&i) {
                        dom.push(i);
                    }
                }
            }
        }
    }
    dom.sort_unstable();

    let mut structure_path = None;
    let mut hyp_t = Vec::new();
    let mut hyp_sigma = Vec::new();
    let mut goal = None;
    let mut lines = Vec::new();

    for (lineno, content) in script_items(text) {
        let bad = |msg: &str| ProofError::Malformed {
            line: lineno,
            msg: msg.to_string(),
        };
        let (head, payload) = content
            .split_once(':')
            .ok_or_else(|| bad("expected `<head>: <content>`"))?;
        let head = head.trim();
        let payload = payload.trim();
        if head == "structure" {
            structure_path = Some(payload.to_string());
        } else if let Some(name) = head.strip_prefix("hyp_t ") {
            let f = parse_l0(payload, sig)
                .map_err(|source| ProofError::Statement { line: lineno, source })?;
            hyp_t.push((name.trim().to_string(), f));
        } else if let Some(name) = head.strip_prefix("hyp_sigma ") {
            let f = parse_l1(payload, sig, &dom)
                .map_err(|source| ProofError::Statement { line: lineno, source })?;
            hyp_sigma.push((name.trim().to_string(), f));
        } else if head == "goal" {
            let f = parse_l1(payload, sig, &dom)
                .map_err(|source| ProofError::Statement { line: lineno, source })?;
            goal = Some(f);
        } else if let Ok(num) = head.parse::<usize>() {
            let (stmt_text, just_text) = payload
                .rsplit_once(';')
                .ok_or_else(|| bad("expected `<statement> ; <justification>`"))?;
            let just = parse_justification(just_text.trim()).map_err(|m| bad(&m))?;
            let statement = match just {
                Justification::HypT(_) | Justification::FoSemantic => Statement::L0(
                    parse_l0(stmt_text.trim(), sig)
                        .map_err(|source| ProofError::Statement { line: lineno, source })?,
                ),
                _ => Statement::L1(
                    parse_l1(stmt_text.trim(), sig, &dom)
                        .map_err(|source| ProofError::Statement { line: lineno, source })?,
                ),
            };
            lines.push(ProofLine {
                num,
                statement,
                just,
            });
        } else {
            return Err(bad("unrecognized directive"));
        }
    }
    Ok(ProofScript {
        structure_path,
        hyp_t,
        hyp_sigma,
        goal: goal.ok_or(ProofError::MissingGoal)?,
        lines,
    })
}

fn script_items(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            None
        } else {
            Some((i + 1, l))
        }
    })
}

fn parse_justification(text: &str) -> Result<Justification, String> {
    let mut parts = text.split_whitespace();
    let tag = parts.next().ok_or("empty justification")?;
    let rest: Vec<&str> = parts.collect();
    let cited = |rest: &[&str]| -> Result<Vec<usize>, String> {
        rest.iter()
            .map(|s| s.parse::<usize>().map_err(|_| format!("bad line ref `{s}`")))
            .collect()
    };
    match tag {
        "HYP_T" => Ok(Justification::HypT(
            rest.first().ok_or("HYP_T needs a name")?.to_string(),
        )),
        "HYP_SIGMA" => Ok(Justification::HypSigma(
            rest.first().ok_or("HYP_SIGMA needs a name")?.to_string(),
        )),
        "AX_A0" => Ok(Justification::AxA0),
        "AX_A1" => Ok(Justification::AxA1),
        "AX_A2" => Ok(Justification::AxA2),
        "R0" => {
            let c = cited(&rest)?;
            if c.len() != 1 {
                return Err("R0 cites exactly one line".into());
            }
            Ok(Justification::R0(c[0]))
        }
        "TAUT" => Ok(Justification::Taut(cited(&rest)?)),
        "RCF" => Ok(Justification::Rcf(cited(&rest)?)),
        "FO_SEMANTIC" => Ok(Justification::FoSemantic),
        other => Err(format!("unknown justification `{other}`")),
    }
}

/// Checks every line; the script is ACCEPTED iff all lines check and the
/// final line states the goal.
pub fn check_proof(script: &ProofScript, structure: Option<&FiniteStructure>) -> ProofReport {
    let mut reports = Vec::new();
    let mut checked: HashMap<usize, &ProofLine> = HashMap::new();
    let mut all_ok = true;

    for line in &script.lines {
        let result = check_line(script, line, &checked, structure);
        let (ok, msg) = match result {
            Ok(()) => (true, String::new()),
            Err(m) => (false, m),
        };
        all_ok &= ok;
        reports.push(LineReport {
            num: line.num,
            ok,
            msg,
        });
        checked.insert(line.num, line);
    }

    let goal_ok = match script.lines.last() {
        Some(last) => last.statement == Statement::L1(script.goal.clone()),
        None => false,
    };
    if !goal_ok {
        all_ok = false;
        reports.push(LineReport {
            num: script.lines.last().map(|l| l.num).unwrap_or(0),
            ok: false,
            msg: "final line does not state the goal".into(),
        });
    }
    ProofReport {
        accepted: all_ok,
        lines: reports,
    }
}

fn check_line(
    script: &ProofScript,
    line: &ProofLine,
    earlier: &HashMap<usize, &ProofLine>,
    structure: Option<&FiniteStructure>,
) -> Result<(), String> {
    let cite = |n: usize| -> Result<&ProofLine, String> {
        earlier
            .get(&n)
            .copied()
            .ok_or_else(|| format!("cites line {n}, which is not earlier in the script"))
    };
    match (&line.just, &line.statement) {
        (Justification::HypT(name), Statement::L0(f)) => {
            match script.hyp_t.iter().find(|(n, _)| n == name) {
                Some((_, h)) if h == f => Ok(()),
                Some(_) => Err(format!("statement differs from hypothesis `{name}`")),
                None => Err(format!("no hypothesis `{name}` in T")),
            }
        }
        (Justification::HypSigma(name), Statement::L1(f)) => {
            match script.hyp_sigma.iter().find(|(n, _)| n == name) {
                Some((_, h)) if h == f => Ok(()),
                Some(_) => Err(format!("statement differs from hypothesis `{name}`")),
                None => Err(format!("no hypothesis `{name}` in Sigma")),
            }
        }
        (Justification::AxA0, Statement::L1(f)) => check_a0(f),
        (Justification::AxA1, Statement::L1(f)) => check_a1(f),
        (Justification::AxA2, Statement::L1(f)) => check_a2(f),
        (Justification::R0(premise), Statement::L1(f)) => {
            let p = cite(*premise)?;
            match (&p.statement, &p.just) {
                (Statement::L0(prem), Justification::HypT(_) | Justification::FoSemantic) => {
                    check_r0(prem, f)
                }
                (Statement::L0(_), _) => Err(format!(
                    "line {premise} is not discharged by HYP_T or FO_SEMANTIC"
                )),
                _ => Err(format!("line {premise} is not an object-language premise")),
            }
        }
        (Justification::Taut(cites), Statement::L1(f)) => {
            let mut hyps = Vec::new();
            for n in cites {
                match &cite(*n)?.statement {
                    Statement::L1(h) => hyps.push(h.clone()),
                    Statement::L0(_) => {
                        return Err(format!("line {n} is not a real-arithmetic statement"))
                    }
                }
            }
            check_taut(&hyps, f)
        }
        (Justification::Rcf(cites), Statement::L1(f)) => {
            let mut hyps = Vec::new();
            for n in cites {
                match &cite(*n)?.statement {
                    Statement::L1(h) => hyps.push(h.clone()),
                    Statement::L0(_) => {
                        return Err(format!("line {n} is not a real-arithmetic statement"))
                    }
                }
            }
            check_rcf(&hyps, f)
        }
        (Justification::FoSemantic, Statement::L0(f)) => {
            let s = structure.ok_or("FO_SEMANTIC needs a designated structure")?;
            match s.valid_on(f) {
                Ok(true) => Ok(()),
                Ok(false) => Err(format!("not valid on structure `{}`", s.signature.name)),
                Err(e) => Err(e.to_string()),
            }
        }
        (j, s) => Err(format!(
            "justification {j:?} does not apply to a statement of this sort: {s}"
        )),
    }
}

// ---- axiom schemas ----

fn as_prob(t: &Term1) -> Option<&ProbConst> {
    match t {
        Term1::Prob(pc) => Some(pc),
        _ => None,
    }
}

/// `|phi & ~phi| = 0`
fn check_a0(f: &Formula1) -> Result<(), String> {
    let (lhs, rhs) = match f {
        Formula1::Cmp(a, CmpOp::Eq, b) => (a, b),
        _ => return Err("A0 statement must be an equality".into()),
    };
    if *rhs != Term1::Rat(Rational::zero()) {
        return Err(format!("A0 right side must be 0, found `{rhs}`"));
    }
    let pc = as_prob(lhs).ok_or("A0 left side must be a probability constant")?;
    match &pc.formula {
        Formula0::And(a, b) => match &**b {
            Formula0::Not(nb) if **nb == **a => Ok(()),
            _ => Err(format!(
                "A0 needs `phi & ~phi`; the conjuncts `{a}` and `{b}` do not match"
            )),
        },
        other => Err(format!("A0 needs a conjunction under the bars, found `{other}`")),
    }
}

/// `|phi | ~phi| = 1`
fn check_a1(f: &Formula1) -> Result<(), String> {
    let (lhs, rhs) = match f {
        Formula1::Cmp(a, CmpOp::Eq, b) => (a, b),
        _ => return Err("A1 statement must be an equality".into()),
    };
    if *rhs != Term1::Rat(Rational::one()) {
        return Err(format!("A1 right side must be 1, found `{rhs}`"));
    }
    let pc = as_prob(lhs).ok_or("A1 left side must be a probability constant")?;
    match &pc.formula {
        Formula0::Or(a, b) => match &**b {
            Formula0::Not(nb) if **nb == **a => Ok(()),
            _ => Err(format!(
                "A1 needs `phi | ~phi`; the disjuncts `{a}` and `{b}` do not match"
            )),
        },
        other => Err(format!("A1 needs a disjunction under the bars, found `{other}`")),
    }
}

/// `|phi | psi| = |phi| + |psi| - |phi & psi|`
fn check_a2(f: &Formula1) -> Result<(), String> {
    let (lhs, rhs) = match f {
        Formula1::Cmp(a, CmpOp::Eq, b) => (a, b),
        _ => return Err("A2 statement must be an equality".into()),
    };
    let por = as_prob(lhs).ok_or("A2 left side must be a probability constant")?;
    let (phi, psi) = match &por.formula {
        Formula0::Or(a, b) => (&**a, &**b),
        other => {
            return Err(format!(
                "A2 needs a disjunction under the left bars, found `{other}`"
            ))
        }
    };
    let (sum, pand) = match rhs {
        Term1::Sub(sum, pand) => (&**sum, &**pand),
        _ => return Err("A2 right side must be `|phi| + |psi| - |phi & psi|`".into()),
    };
    let (p1, p2) = match sum {
        Term1::Add(a, b) => (
            as_prob(a).ok_or("A2: `|phi|` expected")?,
            as_prob(b).ok_or("A2: `|psi|` expected")?,
        ),
        _ => return Err("A2 right side must start with `|phi| + |psi|`".into()),
    };
    let pand = as_prob(pand).ok_or("A2: `|phi & psi|` expected")?;
    if p1.formula != *phi {
        return Err(format!("A2: `{}` differs from `{phi}`", p1.formula));
    }
    if p2.formula != *psi {
        return Err(format!("A2: `{}` differs from `{psi}`", p2.formula));
    }
    match &pand.formula {
        Formula0::And(a, b) if **a == *phi && **b == *psi => {}
        other => return Err(format!("A2: `{other}` is not `{phi} & {psi}`")),
    }
    for t in [&p1.tuple, &p2.tuple, &pand.tuple] {
        if t != &por.tuple {
            return Err("A2: probability constants use different variable tuples".into());
        }
    }
    Ok(())
}

// ---- rule R0 ----

fn disjuncts0(f: &Formula0, out: &mut Vec<Formula0>) {
    match f {
        Formula0::Or(a, b) => {
            disjuncts0(a, out);
            disjuncts0(b, out);
        }
        _ => out.push(f.clone()),
    }
}

fn conjuncts0(f: &Formula0, out: &mut Vec<Formula0>) {
    match f {
        Formula0::And(a, b) => {
            conjuncts0(a, out);
            conjuncts0(b, out);
        }
        _ => out.push(f.clone()),
    }
}

fn disjuncts1(f: &Formula1, out: &mut Vec<Formula1>) {
    match f {
        Formula1::Or(a, b) => {
            disjuncts1(a, out);
            disjuncts1(b, out);
        }
        _ => out.push(f.clone()),
    }
}

fn conjuncts1(f: &Formula1, out: &mut Vec<Formula1>) {
    match f {
        Formula1::And(a, b) => {
            conjuncts1(a, out);
            conjuncts1(b, out);
        }
        _ => out.push(f.clone()),
    }
}

/// From a premise `\/_i /\_j forall x (phi_ij -> psi_ij)` conclude
/// `\/_i /\_j |phi_ij| <= |psi_ij|`, index by index. The premise must be a
/// sentence.
pub fn check_r0(premise: &Formula0, conclusion: &Formula1) -> Result<(), String> {
    if !premise.free_vars().is_empty() {
        return Err("R0 premise must be a sentence".into());
    }
    let mut pd = Vec::new();
    disjuncts0(premise, &mut pd);
    let mut cd = Vec::new();
    disjuncts1(conclusion, &mut cd);
    if pd.len() != cd.len() {
        return Err(format!(
            "R0 shape mismatch: premise has {} disjuncts, conclusion {}",
            pd.len(),
            cd.len()
        ));
    }
    for (p, c) in pd.iter().zip(cd.iter()) {
        let mut pc = Vec::new();
        conjuncts0(p, &mut pc);
        let mut cc = Vec::new();
        conjuncts1(c, &mut cc);
        if pc.len() != cc.len() {
            return Err(format!(
                "R0 shape mismatch: {} conjuncts against {}",
                pc.len(),
                cc.len()
            ));
        }
        for (pleaf, cleaf) in pc.iter().zip(cc.iter()) {
            check_r0_leaf(pleaf, cleaf)?;
        }
    }
    Ok(())
}

fn check_r0_leaf(premise: &Formula0, conclusion: &Formula1) -> Result<(), String> {
    let mut body = premise;
    let mut quantified = Vec::new();
    while let Formula0::Forall(v, inner) = body {
        quantified.push(*v);
        body = inner;
    }
    let (phi, psi) = match body {
        Formula0::Implies(a, b) => (&**a, &**b),
        other => return Err(format!("R0 premise leaf `{other}` is not an implication")),
    };
    let (lp, rp) = match conclusion {
        Formula1::Cmp(a, CmpOp::Le, b) => (
            as_prob(a).ok_or("R0 conclusion sides must be probability constants")?,
            as_prob(b).ok_or("R0 conclusion sides must be probability constants")?,
        ),
        other => return Err(format!("R0 conclusion leaf `{other}` is not `|phi| <= |psi|`")),
    };
    if lp.formula != *phi {
        return Err(format!("R0: `{}` differs from premise `{phi}`", lp.formula));
    }
    if rp.formula != *psi {
        return Err(format!("R0: `{}` differs from premise `{psi}`", rp.formula));
    }
    if lp.tuple != rp.tuple {
        return Err("R0: probability constants use different variable tuples".into());
    }
    for v in &quantified {
        if !lp.tuple.contains(v) {
            return Err(format!("R0: quantified variable v{v} outside the tuple"));
        }
    }
    Ok(())
}

// ---- propositional tautology check ----

fn cmp_atoms(f: &Formula1, out: &mut Vec<Formula1>) -> Result<(), String> {
    match f {
        Formula1::Cmp(..) => {
            if !out.contains(f) {
                out.push(f.clone());
            }
            Ok(())
        }
        Formula1::Not(a) => cmp_atoms(a, out),
        Formula1::And(a, b) | Formula1::Or(a, b) | Formula1::Implies(a, b)
        | Formula1::Iff(a, b) => {
            cmp_atoms(a, out)?;
            cmp_atoms(b, out)
        }
        Formula1::Forall(..) | Formula1::Exists(..) => {
            Err("TAUT does not apply to quantified statements".into())
        }
    }
}

fn prop_eval(f: &Formula1, atoms: &[Formula1], vals: u32) -> bool {
    match f {
        Formula1::Cmp(..) => {
            let i = atoms.iter().position(|a| a == f).expect("collected atom");
            vals >> i & 1 == 1
        }
        Formula1::Not(a) => !prop_eval(a, atoms, vals),
        Formula1::And(a, b) => prop_eval(a, atoms, vals) && prop_eval(b, atoms, vals),
        Formula1::Or(a, b) => prop_eval(a, atoms, vals) || prop_eval(b, atoms, vals),
        Formula1::Implies(a, b) => !prop_eval(a, atoms, vals) || prop_eval(b, atoms, vals),
        Formula1::Iff(a, b) => prop_eval(a, atoms, vals) == prop_eval(b, atoms, vals),
        Formula1::Forall(..) | Formula1::Exists(..) => unreachable!("rejected earlier"),
    }
}

/// Truth-tables `(/\ hyps) -> stmt` over its distinct comparison atoms.
pub fn check_taut(hyps: &[Formula1], stmt: &Formula1) -> Result<(), String> {
    let implication = match hyps.iter().cloned().reduce(Formula1::and) {
        Some(h) => Formula1::implies(h, stmt.clone()),
        None => stmt.clone(),
    };
    let mut atoms = Vec::new();
    cmp_atoms(&implication, &mut atoms)?;
    if atoms.len() > 20 {
        return Err(format!(
            "TAUT limited to 20 distinct atoms, found {}",
            atoms.len()
        ));
    }
    for vals in 0..(1u32 << atoms.len()) {
        if !prop_eval(&implication, &atoms, vals) {
            let mut witness = Vec::new();
            for (i, a) in atoms.iter().enumerate() {
                witness.push(format!("{a} := {}", vals >> i & 1 == 1));
            }
            return Err(format!(
                "not a propositional tautology; countervaluation: {}",
                witness.join(", ")
            ));
        }
    }
    Ok(())
}

// ---- linear real-arithmetic oracle ----

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum LinVar {
    Prob(ProbConst),
    Real(String),
}

struct LinSpace {
    vars: Vec<LinVar>,
}

impl LinSpace {
    fn index(&mut self, v: LinVar) -> usize {
        match self.vars.iter().position(|x| *x == v) {
            Some(i) => i,
            None => {
                self.vars.push(v);
                self.vars.len() - 1
            }
        }
    }
}

/// `term = coeffs . vars + constant`, or None if not linear.
fn linearize(t: &Term1, space: &mut LinSpace) -> Option<(HashMap<usize, Rational>, Rational)> {
    match t {
        Term1::Rat(q) => Some((HashMap::new(), q.clone())),
        Term1::RealVar(v) => {
            let i = space.index(LinVar::Real(v.clone()));
            Some(([(i, Rational::one())].into_iter().collect(), Rational::zero()))
        }
        Term1::Prob(pc) => {
            let i = space.index(LinVar::Prob(pc.clone()));
            Some(([(i, Rational::one())].into_iter().collect(), Rational::zero()))
        }
        Term1::Add(a, b) => {
            let (mut ca, ka) = linearize(a, space)?;
            let (cb, kb) = linearize(b, space)?;
            for (i, c) in cb {
                let e = ca.entry(i).or_insert_with(Rational::zero);
                *e = &*e + &c;
            }
            Some((ca, ka + kb))
        }
        Term1::Sub(a, b) => {
            let (mut ca, ka) = linearize(a, space)?;
            let (cb, kb) = linearize(b, space)?;
            for (i, c) in cb {
                let e = ca.entry(i).or_insert_with(Rational::zero);
                *e = &*e - &c;
            }
            Some((ca, ka - kb))
        }
        Term1::Neg(a) => {
            let (ca, ka) = linearize(a, space)?;
            Some((ca.into_iter().map(|(i, c)| (i, -c)).collect(), -ka))
        }
        Term1::Mul(a, b) => {
            let (ca, ka) = linearize(a, space)?;
            let (cb, kb) = linearize(b, space)?;
            if ca.values().all(|c| c.is_zero()) {
                Some((cb.into_iter().map(|(i, c)| (i, &c * &ka)).collect(), &ka * &kb))
            } else if cb.values().all(|c| c.is_zero()) {
                Some((ca.into_iter().map(|(i, c)| (i, &c * &kb)).collect(), &ka * &kb))
            } else {
                None
            }
        }
    }
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

/// Validity of `(/\ hyps) -> stmt` over the reals, with every probability
/// constant confined to `[0, 1]` and free real variables universally closed.
/// Complete on the linear fragment; nonlinear atoms fail the line as
/// ORACLE_INCOMPLETE.
pub fn check_rcf(hyps: &[Formula1], stmt: &Formula1) -> Result<(), String> {
    let implication = match hyps.iter().cloned().reduce(Formula1::and) {
        Some(h) => Formula1::implies(h, stmt.clone()),
        None => stmt.clone(),
    };
    // refute the negation
    let negated = interval::nnf(&Formula1::not(implication))
        .map_err(|e| format!("ORACLE_INCOMPLETE: {e}"))?;
    for clause in dnf(&negated) {
        let mut space = LinSpace { vars: Vec::new() };
        let mut rows: Vec<(HashMap<usize, Rational>, Rel, Rational)> = Vec::new();
        for atom in &clause {
            let (a, op, b) = match atom {
                Formula1::Cmp(a, op, b) => (a, op, b),
                other => return Err(format!("ORACLE_INCOMPLETE: non-atomic `{other}`")),
            };
            let d = Term1::sub(a.clone(), b.clone());
            let (coeffs, k) = linearize(&d, &mut space)
                .ok_or_else(|| format!("ORACLE_INCOMPLETE: nonlinear atom `{atom}`"))?;
            let rel = match op {
                CmpOp::Eq => Rel::Eq,
                CmpOp::Le => Rel::Le,
                CmpOp::Lt => Rel::Lt,
            };
            rows.push((coeffs, rel, -k));
        }
        let n = space.vars.len();
        let mut constraints: Vec<Constraint> = rows
            .into_iter()
            .map(|(coeffs, rel, rhs)| {
                let mut v = vec![Rational::zero(); n];
                for (i, c) in coeffs {
                    v[i] = c;
                }
                Constraint::new(v, rel, rhs)
            })
            .collect();
        for (i, var) in space.vars.iter().enumerate() {
            if let LinVar::Prob(_) = var {
                let mut lo = vec![Rational::zero(); n];
                lo[i] = -Rational::one();
                constraints.push(Constraint::new(lo, Rel::Le, Rational::zero()));
                let mut hi = vec![Rational::zero(); n];
                hi[i] = Rational::one();
                constraints.push(Constraint::new(hi, Rel::Le, Rational::one()));
            }
        }
        if let Feasibility::Sat(point) = linear::solve(n, &constraints) {
            let assignment: Vec<String> = space
                .vars
                .iter()
                .zip(point.iter())
                .map(|(v, p)| match v {
                    LinVar::Prob(pc) => format!("{pc} := {p}"),
                    LinVar::Real(r) => format!("{r} := {p}"),
                })
                .collect();
            return Err(format!(
                "not valid over the reals; counterexample: {}",
                assignment.join(", ")
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::FiniteStructure;

    fn bool_sig() -> Signature {
        FiniteStructure::boolean().signature
    }

    fn l1(text: &str) -> Formula1 {
        parse_l1(text, &bool_sig(), &[0, 1]).unwrap()
    }

    #[test]
    fn axiom_schemas() {
        assert!(check_a0(&l1("|v0 = 1 & ~v0 = 1| = 0")).is_ok());
        assert!(check_a0(&l1("|v0 = 1 & ~v1 = 1| = 0")).is_err());
        assert!(check_a1(&l1("|v0 = 1 | ~v0 = 1| = 1")).is_ok());
        assert!(check_a2(&l1(
            "|v0 = 1 | v1 = 1| = |v0 = 1| + |v1 = 1| - |v0 = 1 & v1 = 1|"
        ))
        .is_ok());
        assert!(check_a2(&l1(
            "|v0 = 1 | v1 = 1| = |v0 = 1| + |v1 = 1| - |v1 = 1 & v0 = 1|"
        ))
        .is_err());
    }

    #[test]
    fn r0_shape() {
        let sig = bool_sig();
        let prem = parse_l0("forall v0 forall v1 ((v0 & v1) = 1 -> v0 = 1)", &sig).unwrap();
        let concl = l1("|(v0 & v1) = 1| <= |v0 = 1|");
        assert!(check_r0(&prem, &concl).is_ok());
        let reversed = l1("|v0 = 1| <= |(v0 & v1) = 1|");
        assert!(check_r0(&prem, &reversed).is_err());
    }

    #[test]
    fn taut_and_rcf() {
        let a = l1("|v0 = 1| = 1/2");
        let b = l1("|v1 = 1| <= 1/2");
        assert!(check_taut(&[a.clone(), b.clone()], &l1("|v0 = 1| = 1/2 & |v1 = 1| <= 1/2")).is_ok());
        assert!(check_taut(&[a.clone()], &b).is_err());
        assert!(check_rcf(&[a.clone()], &l1("|v0 = 1| <= 1")).is_ok());
        assert!(check_rcf(&[], &l1("|v0 = 1| <= 1")).is_ok());
        assert!(check_rcf(&[a.clone()], &l1("|v0 = 1| < 1/2")).is_err());
        assert!(check_rcf(&[], &l1("|v0 = 1| * |v0 = 1| <= 1"))
            .unwrap_err()
            .contains("ORACLE_INCOMPLETE"));
    }

    #[test]
    fn end_to_end_script() {
        let b = FiniteStructure::boolean();
        let text = "\
# conjunction bounds its first coordinate
goal: |(v0 & v1) = 1| <= |v0 = 1|
1: forall v0 forall v1 ((v0 & v1) = 1 -> v0 = 1) ; FO_SEMANTIC
2: |(v0 & v1) = 1| <= |v0 = 1| ; R0 1
";
        let script = parse_script(text, &b.signature).unwrap();
        let report = check_proof(&script, Some(&b));
        assert!(report.accepted, "{report}");
    }

    #[test]
    fn undischarged_premise_rejected() {
        let b = FiniteStructure::boolean();
        let text = "\
goal: |v0 = 1| <= |v1 = 1|
1: forall v0 forall v1 (v0 = 1 -> v1 = 1) ; FO_SEMANTIC
2: |v0 = 1| <= |v1 = 1| ; R0 1
";
        let script = parse_script(text, &b.signature).unwrap();
        let report = check_proof(&script, Some(&b));
        assert!(!report.accepted);
        assert!(!report.lines[0].ok);
    }
}

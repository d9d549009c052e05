//! `mtl`: evaluate, check, witness, prove and generate measure-team data.
//!
//! Exit codes: 0 success, 1 semantic failure (NOT SATISFIED / UNSAT /
//! REJECTED / bound violated), 2 UNKNOWN, 3 input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use measure_team::arith::{Policy, Verdict};
use measure_team::corpus;
use measure_team::proof;
use measure_team::syntax::{self, parse_prop, Prop};
use measure_team::teams::TeamRow;
use measure_team::witness::{self, SolveOutcome};
use measure_team::{DiscreteMeasureTeam, FiniteStructure, Rational};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "mtl", version, about = "measure team logic toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct BackendOpts {
    /// `builtin` or an external solver command reading one sentence file
    #[arg(long, default_value = "builtin")]
    backend: String,
    /// resolution at which the built-in search answers UNKNOWN
    #[arg(long)]
    delta: Option<String>,
}

impl BackendOpts {
    fn policy(&self) -> Result<Policy> {
        if self.backend == "builtin" {
            Ok(match &self.delta {
                Some(d) => Policy::builtin(
                    d.parse::<Rational>()
                        .map_err(|e| anyhow!("bad --delta `{d}`: {e}"))?,
                ),
                None => Policy::default(),
            })
        } else {
            Ok(Policy::External {
                command: self.backend.clone(),
            })
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate `|phi|` on a team: the exact probability of an object formula
    Eval {
        #[arg(long)]
        team: PathBuf,
        #[arg(long)]
        structure: PathBuf,
        /// object formula, with or without the surrounding bars
        formula: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check a theory file against a team, sentence by sentence
    Check {
        #[arg(long)]
        team: PathBuf,
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        theory: PathBuf,
        #[command(flatten)]
        backend: BackendOpts,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Synthesize a witness team for a quantifier-free theory
    Witness {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        theory: PathBuf,
        /// bound on the atom (sign-vector) scan
        #[arg(long, default_value_t = 1 << 20)]
        atom_cap: u128,
        /// largest denominator tried when reconstructing nonlinear solutions
        #[arg(long, default_value_t = 1 << 16)]
        denominator_cap: u64,
        /// write the witness team (JSON) here
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check a proof script line by line
    Prove {
        #[arg(long)]
        script: PathBuf,
        /// overrides the script's `structure:` directive
        #[arg(long)]
        structure: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Emit the example corpus, or audit Bell bounds on a team
    Corpus {
        #[command(subcommand)]
        what: CorpusCmd,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// The 8-row boolean team and its structure
    Fig1 {
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Hardy-Weinberg: structure, theory, equilibrium statement and a team
    Hw {
        /// generation-1 child distribution, e.g. `1/2,0,1/2`
        #[arg(long, default_value = "1/4,1/2,1/4")]
        g1: String,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Truncated homogeneous-walk theory over the fan-out tree
    Markov {
        #[arg(long, default_value_t = 2)]
        fanout: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        horizon: usize,
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// The measurement sentence for a rational change of basis
    Quantum {
        /// path to a JSON 4x4 array of rationals; identity when omitted
        #[arg(long)]
        basis: Option<PathBuf>,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Audit the Bell bounds for propositional formulas on a boolean team
    Bell {
        #[arg(long)]
        team: PathBuf,
        #[arg(long)]
        structure: PathBuf,
        /// propositional formulas over team variables, e.g. `v0 & ~v1`
        formulas: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("mtl: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn run() -> Result<u8> {
    match Cli::parse().cmd {
        Cmd::Eval {
            team,
            structure,
            formula,
            format,
        } => cmd_eval(&team, &structure, &formula, format),
        Cmd::Check {
            team,
            structure,
            theory,
            backend,
            format,
        } => cmd_check(&team, &structure, &theory, &backend, format),
        Cmd::Witness {
            structure,
            theory,
            atom_cap,
            denominator_cap,
            out,
            format,
        } => cmd_witness(&structure, &theory, atom_cap, denominator_cap, out.as_deref(), format),
        Cmd::Prove {
            script,
            structure,
            format,
        } => cmd_prove(&script, structure.as_deref(), format),
        Cmd::Corpus { what } => cmd_corpus(what),
    }
}

fn load_structure(path: &Path) -> Result<FiniteStructure> {
    FiniteStructure::load(path).with_context(|| format!("loading structure {}", path.display()))
}

fn load_team(path: &Path, structure: &FiniteStructure) -> Result<DiscreteMeasureTeam> {
    DiscreteMeasureTeam::load(path, structure)
        .with_context(|| format!("loading team {}", path.display()))
}

fn load_theory(
    path: &Path,
    structure: &FiniteStructure,
    dom: &[usize],
) -> Result<Vec<syntax::Formula1>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading theory {}", path.display()))?;
    syntax::parse_theory(&text, &structure.signature, dom)
        .with_context(|| format!("parsing theory {}", path.display()))
}

fn rat_json(q: &Rational) -> serde_json::Value {
    json!({ "exact": q.to_string(), "approx": q.to_f64_approx(), "approx_is_inexact": true })
}

fn rat_text(q: &Rational) -> String {
    format!("{q} (approx {:.6})", q.to_f64_approx())
}

fn cmd_eval(team: &Path, structure: &Path, formula: &str, format: Format) -> Result<u8> {
    let structure = load_structure(structure)?;
    let team = load_team(team, &structure)?;
    let text = formula.trim();
    // accept the probability-constant spelling `|phi|` as well as bare `phi`
    let inner = text
        .strip_prefix('|')
        .and_then(|t| t.strip_suffix('|'))
        .unwrap_or(text);
    let phi = syntax::parse_l0(inner, &structure.signature)
        .map_err(|e| anyhow!("parsing `{inner}`: {e}"))?;
    let p = team.prob(&structure, &phi)?;
    match format {
        Format::Text => {
            println!("{}", rat_text(&p));
        }
        Format::Json => println!(
            "{}",
            json!({
                "version": SCHEMA_VERSION,
                "command": "eval",
                "formula": phi.to_string(),
                "probability": rat_json(&p),
            })
        ),
    }
    Ok(0)
}

fn cmd_check(
    team: &Path,
    structure: &Path,
    theory: &Path,
    backend: &BackendOpts,
    format: Format,
) -> Result<u8> {
    let structure = load_structure(structure)?;
    let team = load_team(team, &structure)?;
    let theory = load_theory(theory, &structure, &team.dom)?;
    let policy = backend.policy()?;
    let verdicts = team.check_theory(&structure, &theory, &policy)?;
    let satisfied = verdicts.iter().all(Verdict::holds);
    let unknown = verdicts
        .iter()
        .any(|v| matches!(v, Verdict::Unknown { .. }));
    match format {
        Format::Text => {
            for (s, v) in theory.iter().zip(&verdicts) {
                let tag = match v {
                    Verdict::Holds => "HOLDS".to_string(),
                    Verdict::Fails => "FAILS".to_string(),
                    Verdict::Unknown { reason, .. } => format!("UNKNOWN ({reason})"),
                };
                println!("{tag}: {s}");
            }
            println!(
                "{}",
                if satisfied {
                    "SATISFIED"
                } else if unknown {
                    "UNKNOWN"
                } else {
                    "NOT SATISFIED"
                }
            );
        }
        Format::Json => {
            let sentences: Vec<_> = theory
                .iter()
                .zip(&verdicts)
                .map(|(s, v)| {
                    let (tag, reason) = match v {
                        Verdict::Holds => ("holds", None),
                        Verdict::Fails => ("fails", None),
                        Verdict::Unknown { reason, .. } => ("unknown", Some(reason.clone())),
                    };
                    json!({ "sentence": s.to_string(), "verdict": tag, "reason": reason })
                })
                .collect();
            println!(
                "{}",
                json!({
                    "version": SCHEMA_VERSION,
                    "command": "check",
                    "sentences": sentences,
                    "satisfied": if satisfied { "yes" } else if unknown { "unknown" } else { "no" },
                })
            );
        }
    }
    Ok(if satisfied {
        0
    } else if unknown {
        2
    } else {
        1
    })
}

fn cmd_witness(
    structure: &Path,
    theory: &Path,
    atom_cap: u128,
    denominator_cap: u64,
    out: Option<&Path>,
    format: Format,
) -> Result<u8> {
    let structure = load_structure(structure)?;
    let theory = load_theory(theory, &structure, &[])?;
    let synthesis = witness::synthesize(&structure, &theory, atom_cap, denominator_cap)?;
    // a produced team must re-check; quantifier-free sentences are exact
    if let Some(team) = &synthesis.team {
        let verdicts = team.check_theory(&structure, &theory, &Policy::default())?;
        if !verdicts.iter().all(Verdict::holds) {
            bail!("internal error: synthesized team failed the re-check");
        }
    }
    if let (Some(path), Some(team)) = (out, &synthesis.team) {
        std::fs::write(path, serde_json::to_string_pretty(team)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    match format {
        Format::Text => match &synthesis.outcome {
            SolveOutcome::Weights(w) => {
                println!("SAT: {} atoms, {} with positive mass", w.len(),
                    w.iter().filter(|q| q.is_positive()).count());
                for (code, q) in w.iter().enumerate() {
                    if !q.is_zero() {
                        println!("  atom {code}: {}", rat_text(q));
                    }
                }
                if let Some(team) = &synthesis.team {
                    println!("team: {} rows, re-check SATISFIED", team.rows.len());
                }
            }
            SolveOutcome::Unsat { certificate } => {
                println!("UNSAT");
                for (text, mult) in certificate {
                    println!("  {mult} * [{text}]");
                }
            }
            SolveOutcome::Unknown { reason } => println!("UNKNOWN: {reason}"),
        },
        Format::Json => {
            let (tag, payload) = match &synthesis.outcome {
                SolveOutcome::Weights(w) => (
                    "sat",
                    json!({
                        "weights": w.iter().map(rat_json).collect::<Vec<_>>(),
                        "team": synthesis.team,
                        "tree": synthesis.tree.iter().map(|depth| depth.iter().map(|l| json!({
                            "sigma": l.sigma,
                            "lo": rat_json(&l.lo),
                            "hi": rat_json(&l.hi),
                        })).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    }),
                ),
                SolveOutcome::Unsat { certificate } => (
                    "unsat",
                    json!({
                        "certificate": certificate.iter()
                            .map(|(t, m)| json!({ "constraint": t, "multiplier": rat_json(m) }))
                            .collect::<Vec<_>>(),
                    }),
                ),
                SolveOutcome::Unknown { reason } => ("unknown", json!({ "reason": reason })),
            };
            println!(
                "{}",
                json!({
                    "version": SCHEMA_VERSION,
                    "command": "witness",
                    "outcome": tag,
                    "detail": payload,
                })
            );
        }
    }
    Ok(match &synthesis.outcome {
        SolveOutcome::Weights(_) => 0,
        SolveOutcome::Unsat { .. } => 1,
        SolveOutcome::Unknown { .. } => 2,
    })
}

fn cmd_prove(script: &Path, structure_flag: Option<&Path>, format: Format) -> Result<u8> {
    let text = std::fs::read_to_string(script)
        .with_context(|| format!("reading script {}", script.display()))?;
    // the structure both supplies the signature for parsing and discharges
    // FO_SEMANTIC lines; the flag wins over the script directive
    let directive = proof::structure_directive(&text);
    let structure = match (structure_flag, directive) {
        (Some(p), _) => load_structure(p)?,
        (None, Some(rel)) => {
            let base = script.parent().unwrap_or(Path::new("."));
            load_structure(&base.join(rel))?
        }
        (None, None) => bail!("no structure: pass --structure or add a `structure:` directive"),
    };
    let parsed = proof::parse_script(&text, &structure.signature)
        .map_err(|e| anyhow!("parsing script: {e}"))?;
    let report = proof::check_proof(&parsed, Some(&structure));
    match format {
        Format::Text => println!("{report}"),
        Format::Json => println!(
            "{}",
            json!({
                "version": SCHEMA_VERSION,
                "command": "prove",
                "accepted": report.accepted,
                "lines": report.lines.iter()
                    .map(|l| json!({ "line": l.num, "ok": l.ok, "msg": l.msg }))
                    .collect::<Vec<_>>(),
            })
        ),
    }
    Ok(if report.accepted { 0 } else { 1 })
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
    println!("wrote {}", path.display());
    Ok(path)
}

fn theory_text(sentences: &[syntax::Formula1]) -> String {
    let mut s: String = sentences
        .iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join("\n");
    s.push('\n');
    s
}

/// The 8-row boolean team: rows as truth-value vectors over v0..v3.
fn fig1_team(structure: &FiniteStructure) -> DiscreteMeasureTeam {
    let patterns: [[usize; 4]; 8] = [
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
            weight: Rational::new(1, 8),
        })
        .collect();
    DiscreteMeasureTeam::new(vec![0, 1, 2, 3], rows, structure).expect("valid by construction")
}

fn fig1_csv(team: &DiscreteMeasureTeam) -> String {
    let mut s = String::from("v0,v1,v2,v3,_weight\n");
    for row in &team.rows {
        let cells: Vec<String> = row.assignment.iter().map(|a| a.to_string()).collect();
        s.push_str(&format!("{},{}\n", cells.join(","), row.weight));
    }
    s
}

fn cmd_corpus(what: CorpusCmd) -> Result<u8> {
    match what {
        CorpusCmd::Fig1 { out_dir } => {
            let structure = FiniteStructure::boolean();
            let team = fig1_team(&structure);
            write_file(&out_dir, "b2.json", &serde_json::to_string_pretty(&structure)?)?;
            write_file(&out_dir, "fig1.csv", &fig1_csv(&team))?;
            Ok(0)
        }
        CorpusCmd::Hw { g1, out_dir } => {
            let parts: Vec<Rational> = g1
                .split(',')
                .map(|p| p.trim().parse::<Rational>())
                .collect::<Result<_, _>>()
                .map_err(|e| anyhow!("bad --g1 `{g1}`: {e}"))?;
            let g1: [Rational; 3] = parts
                .try_into()
                .map_err(|_| anyhow!("--g1 needs exactly three entries"))?;
            let model = corpus::GenotypeModel::new();
            let team = corpus::synth_hw_team(&model, &g1)?;
            write_file(
                &out_dir,
                "genotype.json",
                &serde_json::to_string_pretty(&model.structure)?,
            )?;
            write_file(&out_dir, "hw_sigma.theory", &theory_text(&corpus::hw_sigma()))?;
            write_file(&out_dir, "hw_alpha.theory", &theory_text(&[corpus::hw_alpha()]))?;
            write_file(&out_dir, "hw_team.json", &serde_json::to_string_pretty(&team)?)?;
            Ok(0)
        }
        CorpusCmd::Markov {
            fanout,
            depth,
            horizon,
            cap,
            out_dir,
        } => {
            let (structure, theory) = corpus::markov_sigma(fanout, depth, horizon, cap)?;
            write_file(
                &out_dir,
                "markov.json",
                &serde_json::to_string_pretty(&structure)?,
            )?;
            write_file(&out_dir, "markov.theory", &theory_text(&theory))?;
            if horizon <= depth {
                let team = corpus::fair_walk_team(&structure, fanout, depth, horizon)?;
                write_file(
                    &out_dir,
                    "walk_team.json",
                    &serde_json::to_string_pretty(&team)?,
                )?;
            }
            Ok(0)
        }
        CorpusCmd::Quantum { basis, out_dir } => {
            let basis = match basis {
                None => corpus::identity_basis(),
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .with_context(|| format!("reading basis {}", path.display()))?;
                    let rows: Vec<Vec<String>> = serde_json::from_str(&text)?;
                    let mut out = corpus::identity_basis();
                    if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
                        bail!("basis must be a 4x4 array of rationals");
                    }
                    for (i, row) in rows.iter().enumerate() {
                        for (n, cell) in row.iter().enumerate() {
                            out[i][n] = cell
                                .parse::<Rational>()
                                .map_err(|e| anyhow!("basis[{i}][{n}] `{cell}`: {e}"))?;
                        }
                    }
                    out
                }
            };
            write_file(
                &out_dir,
                "outcomes.json",
                &serde_json::to_string_pretty(&corpus::quantum_structure())?,
            )?;
            write_file(
                &out_dir,
                "quantum.theory",
                &theory_text(&[corpus::quantum_sigma(&basis)]),
            )?;
            Ok(0)
        }
        CorpusCmd::Bell {
            team,
            structure,
            formulas,
            format,
        } => {
            if formulas.is_empty() {
                bail!("at least one propositional formula required");
            }
            let structure = load_structure(&structure)?;
            let team = load_team(&team, &structure)?;
            let props: Vec<Prop> = formulas
                .iter()
                .map(|t| parse_prop(t).map_err(|e| anyhow!("parsing `{t}`: {e}")))
                .collect::<Result<_>>()?;
            let report = corpus::bell_audit(
                &corpus::BellInstance { formulas: props },
                &team,
                &structure,
            )?;
            match format {
                Format::Text => {
                    for (t, p) in formulas.iter().zip(&report.probs) {
                        println!("[{t}] = {}", rat_text(p));
                    }
                    println!("sum = {}", rat_text(&report.total));
                    println!(
                        "bound k-1+[conj] = {}: {}",
                        rat_text(&report.bound),
                        if report.holds { "HOLDS" } else { "VIOLATED" }
                    );
                    match report.strict_holds {
                        Some(ok) => println!(
                            "conjunction contradictory; strict bound k-1: {}",
                            if ok { "HOLDS" } else { "VIOLATED" }
                        ),
                        None => println!("conjunction satisfiable; strict bound not applicable"),
                    }
                }
                Format::Json => println!(
                    "{}",
                    json!({
                        "version": SCHEMA_VERSION,
                        "command": "bell",
                        "probabilities": report.probs.iter().map(rat_json).collect::<Vec<_>>(),
                        "sum": rat_json(&report.total),
                        "conjunction": rat_json(&report.conjunction),
                        "bound": rat_json(&report.bound),
                        "holds": report.holds,
                        "contradictory": report.contradictory,
                        "strict_holds": report.strict_holds,
                    })
                ),
            }
            Ok(if report.holds && report.strict_holds != Some(false) {
                0
            } else {
                1
            })
        }
    }
}

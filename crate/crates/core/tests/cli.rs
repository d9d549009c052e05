//! End-to-end runs of the `mtl` binary: exit codes and the versioned JSON
//! report schema.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures")).to_path_buf()
}

fn mtl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mtl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_prints_exact_probability() {
    let team = fixtures().join("fig1.csv");
    let structure = fixtures().join("b2.json");
    let out = mtl(&[
        "eval",
        "--team",
        team.to_str().unwrap(),
        "--structure",
        structure.to_str().unwrap(),
        "|(v0&v1)=1|",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("1/2"), "got: {}", stdout(&out));
}

#[test]
fn eval_json_schema_is_pinned() {
    let team = fixtures().join("fig1.csv");
    let structure = fixtures().join("b2.json");
    let out = mtl(&[
        "eval",
        "--team",
        team.to_str().unwrap(),
        "--structure",
        structure.to_str().unwrap(),
        "--format",
        "json",
        "|v3=1|",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // golden: field names and version are part of the contract
    assert_eq!(
        v,
        serde_json::json!({
            "version": 1,
            "command": "eval",
            "formula": "v3 = 1",
            "probability": { "exact": "1/2", "approx": 0.5, "approx_is_inexact": true },
        })
    );
}

#[test]
fn check_exit_codes() {
    let team = fixtures().join("fig1.csv");
    let structure = fixtures().join("b2.json");
    let dir = tempfile::tempdir().unwrap();

    let good = dir.path().join("good.theory");
    std::fs::write(&good, "|v0=1| = 1/2\n").unwrap();
    let out = mtl(&[
        "check",
        "--team",
        team.to_str().unwrap(),
        "--structure",
        structure.to_str().unwrap(),
        "--theory",
        good.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("SATISFIED"));

    let bad = dir.path().join("bad.theory");
    std::fs::write(&bad, "|v0=1| = 1/3\n").unwrap();
    let out = mtl(&[
        "check",
        "--team",
        team.to_str().unwrap(),
        "--structure",
        structure.to_str().unwrap(),
        "--theory",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("NOT SATISFIED"));

    // unparsable theory: input error
    let ugly = dir.path().join("ugly.theory");
    std::fs::write(&ugly, "|v0=1| = = 1\n").unwrap();
    let out = mtl(&[
        "check",
        "--team",
        team.to_str().unwrap(),
        "--structure",
        structure.to_str().unwrap(),
        "--theory",
        ugly.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));

    // an irrational constraint the built-in search cannot settle
    let unknown = dir.path().join("unknown.theory");
    std::fs::write(
        &unknown,
        "exists r (0 <= r & r <= 1 & r * r = |v0=1|)\n",
    )
    .unwrap();
    let out = mtl(&[
        "check",
        "--team",
        team.to_str().unwrap(),
        "--structure",
        structure.to_str().unwrap(),
        "--theory",
        unknown.to_str().unwrap(),
        "--delta",
        "1/1024",
    ]);
    assert_eq!(out.status.code(), Some(2), "{}", stdout(&out));
}

#[test]
fn witness_emits_a_team_that_rechecks() {
    let dir = tempfile::tempdir().unwrap();
    let structure = dir.path().join("a3.json");
    std::fs::write(
        &structure,
        r#"{"signature":{"name":"A3","relations":[["R",1]],"functions":[],"constants":[]},
            "domain_size":3,"relations":{"R":[[0]]},"functions":{},"constants":{}}"#,
    )
    .unwrap();
    let theory = dir.path().join("w.theory");
    std::fs::write(&theory, "|R(v0)| = 1/3\n").unwrap();
    let team = dir.path().join("team.json");
    let out = mtl(&[
        "witness",
        "--structure",
        structure.to_str().unwrap(),
        "--theory",
        theory.to_str().unwrap(),
        "--out",
        team.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let out = mtl(&[
        "check",
        "--team",
        team.to_str().unwrap(),
        "--structure",
        structure.to_str().unwrap(),
        "--theory",
        theory.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    // contradictory theory: UNSAT, exit 1, certificate in the report
    std::fs::write(&theory, "|R(v0)| = 1/3\n|R(v0)| = 1/2\n").unwrap();
    let out = mtl(&[
        "witness",
        "--structure",
        structure.to_str().unwrap(),
        "--theory",
        theory.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["outcome"], "unsat");
    assert!(v["detail"]["certificate"].as_array().map_or(false, |c| !c.is_empty()));
}

#[test]
fn prove_accepts_shipped_scripts_and_rejects_corruption() {
    for name in [
        "partition.proof",
        "closure_i.proof",
        "closure_ii.proof",
        "closure_iii.proof",
        "closure_iv.proof",
    ] {
        let script = fixtures().join("proofs").join(name);
        let out = mtl(&["prove", "--script", script.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stdout(&out));
        assert!(stdout(&out).trim_end().ends_with("ACCEPTED"));
    }

    // corrupt one statement: REJECTED, exit 1, failing line identified
    let text = std::fs::read_to_string(fixtures().join("proofs/closure_ii.proof")).unwrap();
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(fixtures().join("s2.json"), dir.path().join("s2.json")).unwrap();
    let bad = dir.path().join("bad.proof");
    std::fs::write(
        &bad,
        text.replace("structure: ../s2.json", "structure: s2.json")
            .replace("2: |R(v0) | ~R(v0)| = 1 ; AX_A1", "2: |R(v0) | R(v0)| = 1 ; AX_A1"),
    )
    .unwrap();
    let out = mtl(&["prove", "--script", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("line 2: FAIL"), "{text}");
    assert!(text.trim_end().ends_with("REJECTED"));
}

#[test]
fn corpus_files_round_trip_through_check() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    assert_eq!(
        mtl(&["corpus", "hw", "--g1", "1/2,0,1/2", "--out-dir", out_dir])
            .status
            .code(),
        Some(0)
    );
    let out = mtl(&[
        "check",
        "--team",
        dir.path().join("hw_team.json").to_str().unwrap(),
        "--structure",
        dir.path().join("genotype.json").to_str().unwrap(),
        "--theory",
        dir.path().join("hw_sigma.theory").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    assert_eq!(
        mtl(&["corpus", "markov", "--out-dir", out_dir]).status.code(),
        Some(0)
    );
    let out = mtl(&[
        "check",
        "--team",
        dir.path().join("walk_team.json").to_str().unwrap(),
        "--structure",
        dir.path().join("markov.json").to_str().unwrap(),
        "--theory",
        dir.path().join("markov.theory").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn bell_audit_from_the_cli() {
    let team = fixtures().join("fig1.csv");
    let structure = fixtures().join("b2.json");
    let out = mtl(&[
        "corpus",
        "bell",
        "--team",
        team.to_str().unwrap(),
        "--structure",
        structure.to_str().unwrap(),
        "v0",
        "v1",
        "~(v0 & v1)",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("sum = 3/2"), "{text}");
    assert!(text.contains("contradictory"), "{text}");
}

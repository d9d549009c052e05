//! Parallel vs sequential probability evaluation and atom enumeration.
//! With the default `parallel` feature `prob` runs on rayon; `prob_seq` is
//! the always-available sequential baseline.

use std::collections::BTreeMap;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use measure_team::syntax::{parse_l0, Formula0, Signature};
use measure_team::teams::TeamRow;
use measure_team::witness;
use measure_team::{DiscreteMeasureTeam, FiniteStructure, Rational};

fn structure() -> FiniteStructure {
    let signature = Signature {
        name: "bench".into(),
        relations: vec![("R".into(), 1), ("E".into(), 2)],
        functions: vec![],
        constants: vec![],
    };
    let size = 8usize;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut relations = BTreeMap::new();
    relations.insert(
        "R".into(),
        (0..size).filter(|_| rng.gen_bool(0.5)).map(|a| vec![a]).collect(),
    );
    relations.insert(
        "E".into(),
        (0..size)
            .flat_map(|a| (0..size).map(move |b| (a, b)))
            .filter(|_| rng.gen_bool(0.3))
            .map(|(a, b)| vec![a, b])
            .collect(),
    );
    FiniteStructure::new(signature, size, relations, BTreeMap::new(), BTreeMap::new()).unwrap()
}

fn team(structure: &FiniteStructure, rows: usize) -> DiscreteMeasureTeam {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let rows: Vec<TeamRow> = (0..rows)
        .map(|_| TeamRow {
            assignment: (0..3)
                .map(|_| rng.gen_range(0..structure.domain_size))
                .collect(),
            weight: Rational::new(1, rows as i64),
        })
        .collect();
    DiscreteMeasureTeam::new(vec![0, 1, 2], rows, structure).unwrap()
}

fn bench_prob(c: &mut Criterion) {
    let a = structure();
    // a quantified formula makes each row check nontrivial
    let phi = parse_l0(
        "forall v3 (E(v0, v3) -> exists v4 (E(v3, v4) & R(v4))) | E(v1, v2)",
        &a.signature,
    )
    .unwrap();
    let mut group = c.benchmark_group("prob");
    for rows in [100usize, 1000, 10_000] {
        let x = team(&a, rows);
        group.bench_with_input(BenchmarkId::new("parallel", rows), &x, |b, x| {
            b.iter(|| x.prob(&a, &phi).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential", rows), &x, |b, x| {
            b.iter(|| x.prob_seq(&a, &phi).unwrap())
        });
    }
    group.finish();
}

fn bench_atom_enumeration(c: &mut Criterion) {
    let a = structure();
    let formulas: Vec<Formula0> = [
        "R(v0)",
        "E(v0, v1)",
        "E(v1, v2) & R(v2)",
        "R(v0) | R(v1)",
        "~E(v2, v0)",
    ]
    .iter()
    .map(|t| parse_l0(t, &a.signature).unwrap())
    .collect();
    c.bench_function("enumerate_atoms/5-formulas-8^3-tuples", |b| {
        b.iter(|| witness::enumerate_atoms(&a, &formulas, &[0, 1, 2], 1 << 20).unwrap())
    });
}

criterion_group!(benches, bench_prob, bench_atom_enumeration);
criterion_main!(benches);

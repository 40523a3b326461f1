//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p gengame-cli --test acceptance`.

use std::collections::{BTreeMap, BTreeSet};
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use gengame::corpus::builtin_corpus;
use gengame::digraph::Rule;
use gengame::oracle::{check_structure_invariance, DEFAULT_ORACLE_CAP};
use gengame::spectrum::{empirical_spectrum, feasible_spectrum, TypeSet};
use gengame::{
    build_group, nim_value_of_game, ExtendedType, NimTable, SpectrumOptions, StructureDigraph,
    SubgroupLattice,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const fn et(p: u8, e: u32, o: u32, s: u8) -> ExtendedType {
    ExtendedType::new(p, e, o, s)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, started: Instant) -> Result<Duration, String> {
    let elapsed = started.elapsed();
    ensure(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })?;
    Ok(elapsed)
}

fn corpus_digraphs() -> Vec<StructureDigraph> {
    builtin_corpus()
        .iter()
        .map(|g| StructureDigraph::from_spec(g.spec, None).expect(g.name))
        .collect()
}

fn nim_table() -> Outcome {
    let started = Instant::now();
    let expected = [
        ("Z1", 0),
        ("Z3^3", 1),
        ("Z3", 2),
        ("Z2^3", 0),
        ("Z4", 1),
        ("Z2", 2),
        ("S3", 3),
        ("Z6", 4),
    ];
    for (spec, nim) in expected {
        let got = nim_value_of_game(spec).map_err(|e| e.to_string())?;
        ensure(got == nim, || format!("{spec}: got {got}, expected {nim}"))?;
    }
    let elapsed = within(Duration::from_secs(5), started)?;
    Ok(format!("8 groups in {elapsed:.2?}"))
}

fn expected_spectrum() -> BTreeMap<ExtendedType, Vec<usize>> {
    let until = |from: usize| (from..=5).collect::<Vec<_>>();
    BTreeMap::from([
        (et(0, 0, 0, 2), vec![0]),
        (et(0, 1, 2, 2), vec![1]),
        (et(1, 1, 2, 1), vec![1, 2]),
        (et(1, 2, 1, 0), vec![1]),
        (et(1, 4, 3, 1), vec![1]),
        (et(0, 0, 2, 2), vec![2]),
        (et(1, 0, 1, 1), until(2)),
        (et(1, 0, 2, 1), vec![2, 3]),
        (et(1, 1, 0, 0), vec![2]),
        (et(1, 3, 0, 0), vec![2]),
        (et(1, 3, 2, 1), vec![2]),
        (et(1, 4, 0, 0), vec![2]),
        (et(1, 4, 1, 1), vec![2]),
        (et(1, 4, 2, 1), vec![2]),
        (et(0, 0, 1, 2), until(3)),
        (et(1, 0, 1, 0), until(3)),
        (et(1, 0, 2, 0), vec![3, 4]),
        (et(1, 1, 2, 0), vec![3]),
        (et(1, 3, 1, 0), vec![3]),
        (et(1, 3, 2, 0), vec![3]),
    ])
}

fn spectrum_table() -> Outcome {
    let started = Instant::now();
    let spectrum = feasible_spectrum(SpectrumOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = within(Duration::from_secs(60), started)?;
    ensure(spectrum.stabilized_at() == 5, || {
        format!("stabilized at {}", spectrum.stabilized_at())
    })?;
    ensure(spectrum.layer(5) == spectrum.layer(6), || {
        "layer 5 differs from layer 6".into()
    })?;
    let got = spectrum.memberships();
    let expected = expected_spectrum();
    ensure(got == expected, || {
        let extra: Vec<_> = got.iter().filter(|r| !expected.contains_key(r.0)).collect();
        format!("memberships differ; unexpected rows {extra:?}")
    })?;
    Ok(format!(
        "{} types, stable at k = 5, {elapsed:.2?}",
        got.len()
    ))
}

fn first_layer_trace() -> Outcome {
    let spectrum = feasible_spectrum(SpectrumOptions::default()).map_err(|e| e.to_string())?;
    let inner = spectrum.inner(1);
    let e10 = TypeSet::from([et(0, 1, 2, 2), et(1, 2, 1, 0)]);
    let e11 = TypeSet::from([
        et(0, 1, 2, 2),
        et(1, 1, 2, 1),
        et(1, 2, 1, 0),
        et(1, 4, 3, 1),
    ]);
    ensure(inner.len() == 3, || {
        format!("{} inner layers, expected 3", inner.len())
    })?;
    ensure(inner[0] == e10, || format!("inner 0 = {:?}", inner[0]))?;
    ensure(inner[1] == e11, || format!("inner 1 = {:?}", inner[1]))?;
    ensure(inner[2] == inner[1], || {
        "inner 2 differs from inner 1".into()
    })?;
    Ok("inner layers 0, 1, 2 as expected".into())
}

fn oracle_equivalence() -> Outcome {
    let started = Instant::now();
    let mut checked = 0;
    for g in builtin_corpus() {
        let group = Arc::new(build_group(g.spec).map_err(|e| e.to_string())?);
        if group.order() > 16 {
            continue;
        }
        let lattice = SubgroupLattice::new(group);
        let table = NimTable::compute(&lattice, DEFAULT_ORACLE_CAP).map_err(|e| e.to_string())?;
        let nim = nim_value_of_game(g.spec).map_err(|e| e.to_string())?;
        ensure(table.start() == nim, || {
            format!("{}: oracle {} vs digraph {nim}", g.name, table.start())
        })?;
        let violations = check_structure_invariance(&lattice, &table);
        ensure(violations.is_empty(), || {
            format!("{}: {} invariance violations", g.name, violations.len())
        })?;
        checked += 1;
    }
    let elapsed = within(Duration::from_secs(120), started)?;
    Ok(format!("{checked} groups of order <= 16 in {elapsed:.2?}"))
}

fn odd_order_theorem() -> Outcome {
    let mut checked = 0;
    for d in corpus_digraphs().iter().filter(|d| d.group().parity() == 1) {
        let ok = d.verify_odd_order_types().map_err(|e| e.to_string())?;
        ensure(ok, || format!("{}: class types differ", d.group().name()))?;
        checked += 1;
    }
    ensure(checked > 0, || "no odd-order groups".into())?;
    Ok(format!("{checked} odd-order groups"))
}

fn restriction_suite() -> Outcome {
    let digraphs = corpus_digraphs();
    for d in &digraphs {
        let violations = d.verify_option_restrictions();
        ensure(violations.is_empty(), || {
            format!("{}: {}", d.group().name(), violations[0])
        })?;
    }
    // Plant an arc from the even class <3> to the odd class <2> of Z6.
    let mut z6 = StructureDigraph::from_spec("Z6", None).map_err(|e| e.to_string())?;
    let three = z6
        .find(&[0, 3].into_iter().collect())
        .ok_or("class <3> missing")?;
    let two = z6
        .find(&[0, 2, 4].into_iter().collect())
        .ok_or("class <2> missing")?;
    z6.inject_arc(three, two);
    let violations = z6.verify_option_restrictions();
    ensure(violations.len() == 1, || {
        format!("{} violations after planting", violations.len())
    })?;
    let v = &violations[0];
    ensure(
        v.rule == Rule::EvenOptionsOnly && v.arc == Some((three, two)),
        || format!("unexpected violation {v}"),
    )?;
    Ok(format!(
        "{} clean digraphs, planted violation found",
        digraphs.len()
    ))
}

fn empirical_containment() -> Outcome {
    let digraphs = corpus_digraphs();
    let feasible = feasible_spectrum(SpectrumOptions::default()).map_err(|e| e.to_string())?;
    let report = empirical_spectrum(&digraphs, &feasible);
    ensure(report.contained(), || {
        format!("outside: {:?}", report.outside)
    })?;
    let unwitnessed: BTreeSet<_> = report.unwitnessed.iter().copied().collect();
    let boxed = [
        (et(1, 0, 1, 1), 2),
        (et(1, 3, 2, 1), 2),
        (et(1, 4, 1, 1), 2),
        (et(1, 4, 2, 1), 2),
        (et(1, 0, 2, 0), 3),
    ];
    for pair in boxed {
        ensure(unwitnessed.contains(&pair), || {
            format!("{} at {} was witnessed", pair.0, pair.1)
        })?;
    }
    Ok(format!(
        "{} witnessed, {} unwitnessed pairs",
        report.witnessed.len(),
        report.unwitnessed.len()
    ))
}

fn z6_golden() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("z6.dot");
    let status = Command::new(env!("CARGO_BIN_EXE_gengame"))
        .args(["--no-cache", "diagram", "Z6", "--dot"])
        .arg(&out)
        .status()
        .map_err(|e| e.to_string())?;
    ensure(status.success(), || format!("gengame exited with {status}"))?;
    let got = std::fs::read(&out).map_err(|e| e.to_string())?;
    let golden = include_bytes!("golden/z6.dot");
    ensure(got == golden, || {
        "output differs from tests/golden/z6.dot".into()
    })?;
    let text = String::from_utf8_lossy(&got);
    let nodes: Vec<&str> = text.lines().filter(|l| l.contains("shape=")).collect();
    ensure(nodes.len() == 4, || format!("{} nodes", nodes.len()))?;
    let node = |label: &str| {
        nodes
            .iter()
            .find(|l| l.contains(label))
            .copied()
            .unwrap_or("")
    };
    ensure(node("(1,2,1,0)\\n<2>").contains("style=dotted"), || {
        "<2> not rough".into()
    })?;
    ensure(node("(1,4,3,1)\\n<0>").contains("peripheries=2"), || {
        "<0> not smooth".into()
    })?;
    for label in ["(0,0,0,2)", "(0,1,2,2)"] {
        ensure(!node(label).is_empty(), || format!("missing {label}"))?;
    }
    Ok("byte-identical to golden file".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("eight-group nim table", nim_table),
        ("feasible spectrum table", spectrum_table),
        ("first layer trace", first_layer_trace),
        ("oracle equivalence", oracle_equivalence),
        ("odd-order theorem", odd_order_theorem),
        ("option restrictions", restriction_suite),
        ("empirical containment", empirical_containment),
        ("Z6 golden diagram", z6_golden),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(reason) => {
                failures += 1;
                println!("FAIL {}. {name}: {reason}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

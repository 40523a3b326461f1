//! The built-in group corpus and the corpus-wide consistency run.

use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::calculus::ExtendedType;
use crate::digraph::{StructureDigraph, REPORT_SCHEMA};
use crate::error::Result;
use crate::group::build_group;
use crate::lattice::SubgroupLattice;
use crate::oracle::{check_quotient, check_structure_invariance, NimTable};
use crate::spectrum::{empirical_spectrum, feasible_spectrum, SpectrumOptions};

/// A named group in the corpus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusGroup {
    pub name: &'static str,
    pub spec: &'static str,
}

const fn g(name: &'static str, spec: &'static str) -> CorpusGroup {
    CorpusGroup { name, spec }
}

const NAMED: &[CorpusGroup] = &[
    g("Z2^2", "Z2^2"),
    g("Z2xZ4", "Z2xZ4"),
    g("Z2^3", "Z2^3"),
    g("Z3^2", "Z3^2"),
    g("Z2xZ6", "Z2xZ6"),
    g("Z4^2", "Z4^2"),
    g("Z2xZ8", "Z2xZ8"),
    g("Z2^2xZ4", "Z2^2xZ4"),
    g("Z2^4", "Z2^4"),
    g("S3", "S3"),
    g("D4", "D4"),
    g("Q8", "Q8"),
    g("D5", "D5"),
    g("D6", "D6"),
    g("A4", "A4"),
    g("Dic3", "Dic3"),
    g("D7", "D7"),
    g("D8", "D8"),
    g("Dic4", "Dic4"),
    g("Z2xD4", "Z2xD4"),
    g("Z2xQ8", "Z2xQ8"),
    g("Z7:Z3", "perm:(1,2,3,4,5,6,7);(2,3,5)(4,7,6)"),
    g("Z5^2", "Z5^2"),
    g("Z3^3", "Z3^3"),
    g("Z3xZ9", "Z3xZ9"),
    g(
        "Heis(Z3)",
        "perm:(1,2,3)(4,5,6)(7,8,9);(1,4,7)(2,5,8)(3,6,9);(2,5,8)(3,9,6)",
    ),
    g("Z9:Z3", "perm:(1,2,3,4,5,6,7,8,9);(2,5,8)(3,9,6)"),
    g(
        "Z13:Z3",
        "perm:(1,2,3,4,5,6,7,8,9,10,11,12,13);(2,4,10)(3,7,6)(5,13,11)(8,9,12)",
    ),
    g("Z3xZ15", "Z3xZ15"),
    g(
        "Z11:Z5",
        "perm:(1,2,3,4,5,6,7,8,9,10,11);(2,4,10,6,5)(3,7,8,11,9)",
    ),
    g("Z3x(Z7:Z3)", "Z3xperm:(1,2,3,4,5,6,7);(2,3,5)(4,7,6)"),
    g("Z3xZ21", "Z3xZ21"),
    g("Z5xZ15", "Z5xZ15"),
    g("Z3^4", "Z3^4"),
    g("Z9^2", "Z9^2"),
    g("Z3xZ27", "Z3xZ27"),
    g("Z3^2xZ9", "Z3^2xZ9"),
];

const CYCLIC: &[&str] = &[
    "Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z10", "Z11", "Z12", "Z13", "Z14", "Z15",
    "Z16", "Z17", "Z19", "Z21", "Z23", "Z25", "Z27", "Z29", "Z31", "Z33", "Z35", "Z37", "Z39",
    "Z41", "Z43", "Z45", "Z47", "Z49", "Z51", "Z53", "Z55", "Z57", "Z59", "Z61", "Z63", "Z65",
    "Z67", "Z69", "Z71", "Z73", "Z75", "Z77", "Z79", "Z81",
];

/// Groups of order at most 16 plus odd-order groups up to 81, in a fixed
/// order: cyclic groups first, then the named list.
pub fn builtin_corpus() -> Vec<CorpusGroup> {
    CYCLIC
        .iter()
        .map(|&s| g(s, s))
        .chain(NAMED.iter().copied())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub status: CheckStatus,
    pub reason: String,
}

impl CheckResult {
    fn from_bool(ok: bool, pass: &str, fail: String) -> Self {
        if ok {
            CheckResult {
                status: CheckStatus::Pass,
                reason: pass.to_string(),
            }
        } else {
            CheckResult {
                status: CheckStatus::Fail,
                reason: fail,
            }
        }
    }

    fn skipped(reason: impl Into<String>) -> Self {
        CheckResult {
            status: CheckStatus::Skipped,
            reason: reason.into(),
        }
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Checks {
    pub restrictions: CheckResult,
    pub invariance: CheckResult,
    pub odd_theorem: CheckResult,
    pub conjecture: CheckResult,
}

impl Checks {
    pub fn all(&self) -> [&CheckResult; 4] {
        [
            &self.restrictions,
            &self.invariance,
            &self.odd_theorem,
            &self.conjecture,
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    pub spec: String,
    pub order: usize,
    pub parity: u8,
    pub nim: u32,
    pub class_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_nim: Option<u32>,
    pub checks: Checks,
    /// Wall time for this entry; only serialized when timing was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumSummary {
    /// `E_k` for each deficiency `k` that occurred.
    pub observed: Vec<(usize, Vec<ExtendedType>)>,
    pub contained: bool,
    pub outside: Vec<(ExtendedType, usize, String)>,
    pub witnessed: Vec<(ExtendedType, usize)>,
    pub unwitnessed: Vec<(ExtendedType, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub schema: u32,
    pub max_order: usize,
    pub entries: Vec<CorpusEntry>,
    pub spectrum: SpectrumSummary,
}

impl CorpusReport {
    pub fn all_passed(&self) -> bool {
        self.spectrum.contained
            && self.entries.iter().all(|e| {
                !e.checks.all().iter().any(|c| c.failed())
                    && e.oracle_nim.is_none_or(|o| o == e.nim)
            })
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

#[derive(Clone, Debug)]
pub struct CorpusOptions<'a> {
    pub max_order: usize,
    pub jobs: usize,
    pub oracle_cap: usize,
    pub cache_dir: Option<&'a Path>,
    pub timing: bool,
}

impl Default for CorpusOptions<'_> {
    fn default() -> Self {
        CorpusOptions {
            max_order: 81,
            jobs: 1,
            oracle_cap: crate::oracle::DEFAULT_ORACLE_CAP,
            cache_dir: None,
            timing: false,
        }
    }
}

/// Analyses one group: digraph, restrictions, oracle (when small enough),
/// odd-order theorem or even-option conjecture.
pub fn analyze(
    group: CorpusGroup,
    options: &CorpusOptions<'_>,
) -> Result<(CorpusEntry, StructureDigraph)> {
    let started = Instant::now();
    let built = Arc::new(build_group(group.spec)?);
    let lattice = match options.cache_dir {
        Some(dir) => SubgroupLattice::cached(built.clone(), dir)?,
        None => SubgroupLattice::new(built.clone()),
    };
    let digraph = StructureDigraph::build(&lattice);
    let nim = digraph.nim_value();

    let violations = digraph.verify_option_restrictions();
    let restrictions = CheckResult::from_bool(
        violations.is_empty(),
        "no violations",
        violations
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("; "),
    );

    let (oracle_nim, invariance) = if built.order() <= options.oracle_cap {
        let table = NimTable::compute(&lattice, options.oracle_cap)?;
        let split = check_structure_invariance(&lattice, &table);
        let quotient = check_quotient(&lattice, &digraph, &table);
        let ok = split.is_empty() && quotient.is_empty() && table.start() == nim;
        let reason = format!(
            "{} invariance violations, {} quotient mismatches, oracle {} vs {}",
            split.len(),
            quotient.len(),
            table.start(),
            nim
        );
        (
            Some(table.start()),
            CheckResult::from_bool(ok, "oracle agrees on every position", reason),
        )
    } else {
        (
            None,
            CheckResult::skipped(format!(
                "order {} above oracle cap {}",
                built.order(),
                options.oracle_cap
            )),
        )
    };

    let (odd_theorem, conjecture) = if built.parity() == 1 {
        let ok = digraph.verify_odd_order_types()?;
        (
            CheckResult::from_bool(
                ok,
                "types match the odd-order table",
                "type mismatch".into(),
            ),
            CheckResult::skipped("odd order"),
        )
    } else {
        let report = digraph.check_even_option_conjecture()?;
        (
            CheckResult::skipped("even order"),
            CheckResult::from_bool(
                report.holds(),
                "every odd class has an even option one level down",
                format!("counterexample classes {:?}", report.counterexamples),
            ),
        )
    };

    let entry = CorpusEntry {
        name: group.name.to_string(),
        spec: group.spec.to_string(),
        order: built.order(),
        parity: built.parity(),
        nim,
        class_count: digraph.classes().len(),
        oracle_nim,
        checks: Checks {
            restrictions,
            invariance,
            odd_theorem,
            conjecture,
        },
        elapsed_ms: options.timing.then(|| started.elapsed().as_millis() as u64),
    };
    Ok((entry, digraph))
}

/// Runs [`analyze`] over the built-in corpus restricted to `max_order`.
///
/// With `jobs > 1` groups are analysed in parallel; entries keep corpus
/// order, so the report does not depend on the job count.
pub fn run_corpus(options: &CorpusOptions<'_>) -> Result<CorpusReport> {
    let groups: Vec<CorpusGroup> = builtin_corpus()
        .into_iter()
        .filter(|g| {
            build_group(g.spec)
                .map(|b| b.order() <= options.max_order)
                .unwrap_or(true)
        })
        .collect();
    let run = || -> Result<Vec<(CorpusEntry, StructureDigraph)>> {
        groups.par_iter().map(|&g| analyze(g, options)).collect()
    };
    let results = if options.jobs <= 1 {
        groups
            .iter()
            .map(|&g| analyze(g, options))
            .collect::<Result<Vec<_>>>()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .expect("thread pool")
            .install(run)?
    };

    let feasible = feasible_spectrum(SpectrumOptions::default())?;
    let empirical = empirical_spectrum(results.iter().map(|(_, d)| d), &feasible);
    let spectrum = SpectrumSummary {
        observed: empirical
            .observed
            .iter()
            .map(|(&k, s)| (k, s.iter().copied().collect()))
            .collect(),
        contained: empirical.contained(),
        outside: empirical.outside,
        witnessed: empirical.witnessed,
        unwitnessed: empirical.unwitnessed,
    };
    Ok(CorpusReport {
        schema: REPORT_SCHEMA,
        max_order: options.max_order,
        entries: results.into_iter().map(|(e, _)| e).collect(),
        spectrum,
    })
}

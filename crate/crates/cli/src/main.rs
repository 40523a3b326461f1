use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use gengame::corpus::{run_corpus, CheckStatus, CorpusOptions};
use gengame::oracle::{check_quotient, check_structure_invariance, DEFAULT_ORACLE_CAP};
use gengame::spectrum::feasible_spectrum;
use gengame::{build_group, Error, NimTable, SpectrumOptions, StructureDigraph, SubgroupLattice};

const DEFAULT_CACHE_DIR: &str = ".gengame-cache";

#[derive(Parser)]
#[command(
    name = "gengame",
    version,
    about = "Nim-values of the achievement game GEN(G)"
)]
struct Cli {
    /// Directory for cached subgroup lattices
    #[arg(long, global = true, env = "GENGAME_CACHE_DIR", default_value = DEFAULT_CACHE_DIR)]
    cache_dir: PathBuf,

    /// Do not read or write the lattice cache
    #[arg(long, global = true)]
    no_cache: bool,

    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the nim-value of GEN(G)
    Nim {
        /// Group spec, e.g. Z6, S3, Z2^3, D4xZ3, perm:(1,2,3);(1,2)
        spec: String,
    },
    /// Write the structure digraph as DOT and optionally as JSON
    Diagram {
        spec: String,

        /// DOT output path; printed to stdout when omitted
        #[arg(long)]
        dot: Option<PathBuf>,

        /// JSON report output path
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Solve the game tree exhaustively and compare with the structure digraph
    Oracle {
        spec: String,

        /// Write every position's nim-value as JSON
        #[arg(long)]
        dump: Option<PathBuf>,

        /// Largest group order the oracle accepts (at most 20)
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        max_order: usize,
    },
    /// Compute the feasible spectrum of extended types
    Spectrum {
        /// Also print the inner layers
        #[arg(long)]
        trace: bool,

        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,

        /// Enumerate every subset pair instead of deduplicating signatures
        #[arg(long)]
        naive: bool,
    },
    /// Run all checks over the built-in corpus
    Corpus {
        #[arg(long, default_value_t = 81)]
        max_order: usize,

        /// Worker threads
        #[arg(long, default_value_t = 1)]
        jobs: usize,

        /// JSON report output path
        #[arg(long)]
        report: Option<PathBuf>,

        /// Record per-group wall time in the report
        #[arg(long)]
        timing: bool,
    },
    /// Check that every odd class has an even option one deficiency lower
    Conjecture { spec: String },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

/// A failed run: the module that failed and why.
struct Failure {
    module: &'static str,
    message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.module, self.message)
    }
}

fn fail(module: &'static str, message: impl ToString) -> Failure {
    Failure {
        module,
        message: message.to_string(),
    }
}

/// Attributes a library error to the module that raised it.
fn lib_error(err: Error) -> Failure {
    let module = match err {
        Error::Parse { .. } | Error::TooLarge { .. } | Error::InvalidTable(_) => "group_core",
        Error::WrongParity { .. } => "structure_digraph",
        Error::IterationBudget { .. } => "spectrum_engine",
        Error::Io { .. } => "subgroup_lattice",
        Error::Json(_) => "cli",
    };
    fail(module, err)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| fail("cli", format!("cannot write {}: {e}", path.display())))
}

impl Cli {
    fn cache(&self) -> Option<&Path> {
        (!self.no_cache).then_some(self.cache_dir.as_path())
    }

    fn lattice(&self, spec: &str) -> Result<SubgroupLattice, Failure> {
        let group = Arc::new(build_group(spec).map_err(lib_error)?);
        match self.cache() {
            Some(dir) => SubgroupLattice::cached(group, dir).map_err(lib_error),
            None => Ok(SubgroupLattice::new(group)),
        }
    }

    fn digraph(&self, spec: &str) -> Result<StructureDigraph, Failure> {
        StructureDigraph::from_spec(spec, self.cache()).map_err(lib_error)
    }
}

/// Runs the command; `Ok(false)` means a requested check failed.
fn run(cli: &Cli) -> Result<bool, Failure> {
    match &cli.cmd {
        Command::Nim { spec } => {
            println!("{}", cli.digraph(spec)?.nim_value());
            Ok(true)
        }
        Command::Diagram { spec, dot, json } => {
            let digraph = cli.digraph(spec)?;
            match dot {
                Some(path) => write_file(path, &digraph.to_dot())?,
                None => print!("{}", digraph.to_dot()),
            }
            if let Some(path) = json {
                write_file(path, &digraph.report_json())?;
            }
            Ok(true)
        }
        Command::Oracle {
            spec,
            dump,
            max_order,
        } => {
            let lattice = cli.lattice(spec)?;
            let table = NimTable::compute(&lattice, *max_order)
                .map_err(|e| fail("bruteforce_oracle", e))?;
            let digraph = StructureDigraph::build(&lattice);
            let split = check_structure_invariance(&lattice, &table);
            let quotient = check_quotient(&lattice, &digraph, &table);
            println!("oracle nim: {}", table.start());
            println!("digraph nim: {}", digraph.nim_value());
            println!("invariance violations: {}", split.len());
            println!("quotient mismatches: {}", quotient.len());
            for v in split.iter().take(10) {
                println!(
                    "  closure {} splits: {} -> {}, {} -> {}",
                    v.closure, v.first, v.values.0, v.second, v.values.1
                );
            }
            if let Some(path) = dump {
                write_file(path, &table.to_json())?;
            }
            Ok(split.is_empty() && quotient.is_empty() && table.start() == digraph.nim_value())
        }
        Command::Spectrum {
            trace,
            format,
            naive,
        } => {
            let options = SpectrumOptions {
                naive: *naive,
                ..SpectrumOptions::default()
            };
            let spectrum = feasible_spectrum(options).map_err(lib_error)?;
            match format {
                Format::Table => print!("{}", spectrum.to_table(*trace)),
                Format::Json => print!("{}", spectrum.to_json(*trace)),
            }
            Ok(true)
        }
        Command::Corpus {
            max_order,
            jobs,
            report,
            timing,
        } => {
            let options = CorpusOptions {
                max_order: *max_order,
                jobs: *jobs,
                cache_dir: cli.cache(),
                timing: *timing,
                ..CorpusOptions::default()
            };
            let result = run_corpus(&options).map_err(lib_error)?;
            for entry in &result.entries {
                let oracle = entry.oracle_nim.map_or("-".to_string(), |v| v.to_string());
                let failed: Vec<&str> = [
                    ("restrictions", &entry.checks.restrictions),
                    ("invariance", &entry.checks.invariance),
                    ("odd_theorem", &entry.checks.odd_theorem),
                    ("conjecture", &entry.checks.conjecture),
                ]
                .into_iter()
                .filter(|(_, c)| c.status == CheckStatus::Fail)
                .map(|(name, _)| name)
                .collect();
                let status = if failed.is_empty() {
                    "ok".to_string()
                } else {
                    format!("FAIL {}", failed.join(","))
                };
                println!(
                    "{:<12} {:>3} nim={} oracle={} classes={} {}",
                    entry.name, entry.order, entry.nim, oracle, entry.class_count, status
                );
            }
            let s = &result.spectrum;
            println!(
                "spectrum: contained={} witnessed={} unwitnessed={}",
                s.contained,
                s.witnessed.len(),
                s.unwitnessed.len()
            );
            if let Some(path) = report {
                write_file(path, &result.to_json())?;
            }
            Ok(result.all_passed())
        }
        Command::Conjecture { spec } => {
            let digraph = cli.digraph(spec)?;
            if digraph.group().parity() == 1 {
                let ok = digraph.verify_odd_order_types().map_err(lib_error)?;
                println!("odd order: types match the odd-order table: {ok}");
                return Ok(ok);
            }
            let report = digraph.check_even_option_conjecture().map_err(lib_error)?;
            println!("checked {} odd classes", report.checked);
            if report.holds() {
                println!("holds");
            } else {
                for &id in &report.counterexamples {
                    let class = digraph.class(id);
                    println!(
                        "counterexample: {} {}",
                        digraph.group().subgroup_label(&class.subgroup),
                        class.etype
                    );
                }
            }
            Ok(report.holds())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(failure) => {
            eprintln!("gengame: error in {failure}");
            ExitCode::FAILURE
        }
    }
}

//! Command-line surface: subcommands, exit codes, and JSON output.
//!
//! Exit codes: `0` property holds / verification passed / success, `1`
//! property fails / verification failed, `2` usage or input error, `3`
//! solver budget exceeded.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::certificate::Certificate;
use crate::generators::{
    affine_lines_family, cofinite_family, complete_graph, cycle_graph, large_subsets_family,
    path_graph, random_hypergraph, GeneratorError, RNG_ALGORITHM,
};
use crate::heritability::{
    cover_critical_core, explore, minimal_non_cp_core, minimal_nonbipartite_core, ExploreOptions,
};
use crate::hypergraph::{EdgeSubset, Hypergraph};
use crate::instance::{emit_instance, parse_instance, ParseError};
use crate::properties::{has_cp, has_konig, has_weak_konig, is_bipartite, PropertyKind};
use crate::solvers::{
    bipartition, covering_number, exact_transversal, max_matching, Budget, SolveStats, SolverError,
};

#[derive(Parser)]
#[command(name = "konig", version, about = "Exact deciders for hypergraph matching and covering properties")]
struct Cli {
    /// Node cap for each exact search.
    #[arg(long, global = true)]
    max_nodes: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a property, optionally writing a JSON certificate when it holds.
    Check {
        property: PropertyKind,
        file: PathBuf,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Run one exact solver and print its witness.
    Solve {
        task: SolveTask,
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Emit an instance from a named family.
    Generate {
        #[command(subcommand)]
        family: Family,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Test a property on all (or sampled) small edge subsets and the whole family.
    Explore {
        property: PropertyKind,
        file: PathBuf,
        #[arg(long)]
        max_subset_size: usize,
        /// Maximum number of subsets to check before sampling.
        #[arg(long, default_value_t = crate::heritability::DEFAULT_CHECK_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Extract a 1-minimal witness core.
    Witness {
        kind: WitnessKind,
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check a JSON certificate against an instance.
    Verify {
        file: PathBuf,
        certificate: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum SolveTask {
    Matching,
    Cover,
    Transversal,
    Bipartition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum WitnessKind {
    Bipartite,
    Cp,
    Cover,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Parse {
        path: PathBuf,
        source: ParseError,
    },
    #[error("{}: {source}", path.display())]
    BadCertificate {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Solver(SolverError::BudgetExceeded { .. }) => 3,
            _ => 2,
        }
    }
}

/// Entry point shared by the binary and the tests.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return code;
        }
    };
    let budget = Budget {
        max_nodes: cli.max_nodes.unwrap_or(crate::solvers::DEFAULT_NODE_BUDGET),
    };
    match dispatch(cli.command, &budget) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn dispatch(command: Command, budget: &Budget) -> Result<i32, CliError> {
    match command {
        Command::Check {
            property,
            file,
            certificate,
        } => check(property, &file, certificate.as_deref(), budget),
        Command::Solve { task, file, json } => solve(task, &file, json, budget),
        Command::Generate { family, output } => generate(family, output.as_deref()),
        Command::Explore {
            property,
            file,
            max_subset_size,
            budget: check_budget,
            seed,
            json,
        } => {
            let h = read_instance(&file)?;
            let options = ExploreOptions {
                max_subset_size,
                check_budget,
                seed,
                solver_budget: *budget,
            };
            let report = explore(&h, property, &options)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                );
            } else {
                println!(
                    "property {} on subsets of at most {} edges ({:?} over {} subsets):",
                    report.property,
                    report.max_subset_size,
                    report.mode,
                    report.subsets_checked
                );
                match &report.smallest_failing_subset {
                    None => println!("  all checked subsets hold"),
                    Some(subset) => println!("  smallest failing subset: {:?}", subset.indices()),
                }
                println!(
                    "  whole family: {}",
                    if report.whole_holds { "holds" } else { "does not hold" }
                );
            }
            Ok(if report.whole_holds { 0 } else { 1 })
        }
        Command::Witness { kind, file, json } => witness(kind, &file, json, budget),
        Command::Verify { file, certificate } => {
            let h = read_instance(&file)?;
            let text = read_file(&certificate)?;
            let cert = Certificate::from_json(&text).map_err(|source| CliError::BadCertificate {
                path: certificate.clone(),
                source,
            })?;
            match cert.verify(&h) {
                Ok(()) => {
                    println!("certificate valid: {}", cert.kind_name());
                    Ok(0)
                }
                Err(reason) => {
                    println!("certificate invalid: {reason}");
                    Ok(1)
                }
            }
        }
    }
}

fn check(
    property: PropertyKind,
    file: &Path,
    certificate_path: Option<&Path>,
    budget: &Budget,
) -> Result<i32, CliError> {
    let h = read_instance(file)?;
    if property == PropertyKind::Cp && h.has_singleton_edge() {
        eprintln!("warning: instance has singleton edges; they force their vertex into the choice set");
    }
    let certificate: Option<Certificate> = match property {
        PropertyKind::Konig => has_konig(&h, budget)?
            .certificate
            .as_ref()
            .map(Certificate::konig),
        PropertyKind::WeakKonig => {
            let outcome = has_weak_konig(&h, budget)?;
            outcome
                .holds
                .then(|| Certificate::weak_konig(&outcome.matching, &outcome.cover.cover))
        }
        PropertyKind::Bipartite => is_bipartite(&h, budget)?
            .bipartition
            .as_ref()
            .map(Certificate::bipartite),
        PropertyKind::Cp => has_cp(&h, budget)?.transversal.as_ref().map(Certificate::cp),
    };
    match certificate {
        Some(cert) => {
            debug_assert!(cert.verify(&h).is_ok(), "emitted certificates re-verify");
            println!("{property}: holds");
            if let Some(path) = certificate_path {
                write_file(path, &cert.to_json())?;
            }
            Ok(0)
        }
        None => {
            println!("{property}: does not hold");
            if certificate_path.is_some() {
                eprintln!("note: property does not hold; no certificate written");
            }
            Ok(1)
        }
    }
}

#[derive(Serialize)]
struct SolveReport<'a> {
    task: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nu: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    found: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    indices: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<u32>>,
    stats: &'a SolveStats,
}

fn solve(task: SolveTask, file: &Path, json: bool, budget: &Budget) -> Result<i32, CliError> {
    let h = read_instance(file)?;
    match task {
        SolveTask::Matching => {
            let result = max_matching(&h, budget)?;
            let indices = result.matching.indices().to_vec();
            if json {
                print_json(&SolveReport {
                    task: "matching",
                    size: Some(result.size()),
                    nu: None,
                    found: None,
                    indices: Some(indices),
                    vertices: None,
                    stats: &result.stats,
                });
            } else {
                println!("maximum matching size {}: edges {:?}", result.size(), indices);
                print_stats(&result.stats);
            }
            Ok(0)
        }
        SolveTask::Cover => {
            let result = covering_number(&h, budget)?;
            if json {
                print_json(&SolveReport {
                    task: "cover",
                    size: None,
                    nu: Some(result.solution.nu),
                    found: None,
                    indices: None,
                    vertices: Some(result.solution.cover.clone()),
                    stats: &result.stats,
                });
            } else {
                println!(
                    "covering number {}: vertices {:?}",
                    result.solution.nu, result.solution.cover
                );
                print_stats(&result.stats);
            }
            Ok(0)
        }
        SolveTask::Transversal => {
            let result = exact_transversal(&h, budget)?;
            let found = result.transversal.is_some();
            if json {
                print_json(&SolveReport {
                    task: "transversal",
                    size: None,
                    nu: None,
                    found: Some(found),
                    indices: None,
                    vertices: result.transversal.as_ref().map(|t| t.choice.clone()),
                    stats: &result.stats,
                });
            } else {
                match &result.transversal {
                    Some(t) => println!("exact transversal: vertices {:?}", t.choice),
                    None => println!("no exact transversal"),
                }
                print_stats(&result.stats);
            }
            Ok(if found { 0 } else { 1 })
        }
        SolveTask::Bipartition => {
            let result = bipartition(&h, budget)?;
            let found = result.bipartition.is_some();
            if json {
                print_json(&SolveReport {
                    task: "bipartition",
                    size: None,
                    nu: None,
                    found: Some(found),
                    indices: None,
                    vertices: result.bipartition.as_ref().map(|b| b.side.clone()),
                    stats: &result.stats,
                });
            } else {
                match &result.bipartition {
                    Some(b) => println!("bipartition side: vertices {:?}", b.side),
                    None => println!("no bipartition"),
                }
                print_stats(&result.stats);
            }
            Ok(if found { 0 } else { 1 })
        }
    }
}

fn generate(family: Family, output: Option<&Path>) -> Result<i32, CliError> {
    let (banner, h) = match family {
        Family::Cofinite { n, k } => (format!("# konig generate cofinite {n} {k}\n"), cofinite_family(n, k)?),
        Family::LargeSubsets { n, m } => (
            format!("# konig generate large-subsets {n} {m}\n"),
            large_subsets_family(n, m)?,
        ),
        Family::AffineLines { p } => (
            format!("# konig generate affine-lines {p}\n"),
            affine_lines_family(p)?,
        ),
        Family::Complete { n } => (format!("# konig generate complete {n}\n"), complete_graph(n)?),
        Family::Cycle { n } => (format!("# konig generate cycle {n}\n"), cycle_graph(n)?),
        Family::Path { n } => (format!("# konig generate path {n}\n"), path_graph(n)?),
        Family::Random { n, m, arity, seed } => (
            format!(
                "# konig generate random {n} {m} {arity} {seed}\n# rng: {RNG_ALGORITHM} seed={seed}\n"
            ),
            random_hypergraph(n, m, arity, seed)?,
        ),
    };
    let text = format!("{banner}{}", emit_instance(&h));
    match output {
        Some(path) => write_file(path, &text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

#[derive(Subcommand)]
enum Family {
    /// All subsets of 0..n whose complement has at most k vertices.
    Cofinite { n: u32, k: u32 },
    /// All subsets of 0..n with at least m vertices.
    LargeSubsets { n: u32, m: u32 },
    /// The p^2 + p lines of the affine plane of prime order p.
    AffineLines { p: u32 },
    Complete { n: u32 },
    Cycle { n: u32 },
    Path { n: u32 },
    /// m distinct edges of size at most arity, drawn from the seeded generator.
    Random { n: u32, m: u64, arity: u32, seed: u64 },
}

#[derive(Serialize)]
struct WitnessReport {
    kind: &'static str,
    found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    indices: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nu: Option<usize>,
}

fn witness(kind: WitnessKind, file: &Path, json: bool, budget: &Budget) -> Result<i32, CliError> {
    let h = read_instance(file)?;
    let (report, code) = match kind {
        WitnessKind::Bipartite => match minimal_nonbipartite_core(&h, budget)? {
            Some(core) => (
                WitnessReport {
                    kind: "bipartite-core",
                    found: true,
                    indices: Some(core.indices().to_vec()),
                    nu: None,
                },
                0,
            ),
            None => (
                WitnessReport {
                    kind: "bipartite-core",
                    found: false,
                    indices: None,
                    nu: None,
                },
                1,
            ),
        },
        WitnessKind::Cp => match minimal_non_cp_core(&h, budget)? {
            Some(core) => (
                WitnessReport {
                    kind: "cp-core",
                    found: true,
                    indices: Some(core.indices().to_vec()),
                    nu: None,
                },
                0,
            ),
            None => (
                WitnessReport {
                    kind: "cp-core",
                    found: false,
                    indices: None,
                    nu: None,
                },
                1,
            ),
        },
        WitnessKind::Cover => {
            let core = cover_critical_core(&h, budget)?;
            let (induced, _) = h
                .induced(&EdgeSubset::new(core.indices().iter().copied()))
                .expect("core indices are valid");
            let nu = covering_number(&induced, budget)?.solution.nu;
            (
                WitnessReport {
                    kind: "cover-core",
                    found: true,
                    indices: Some(core.indices().to_vec()),
                    nu: Some(nu),
                },
                0,
            )
        }
    };
    if json {
        print_json(&report);
    } else if report.found {
        let indices = report.indices.as_deref().unwrap_or(&[]);
        match report.nu {
            Some(nu) => println!("{} (covering number {nu}): edges {:?}", report.kind, indices),
            None => println!("{}: edges {:?}", report.kind, indices),
        }
    } else {
        println!("{}: property holds on the whole family; no core", report.kind);
    }
    Ok(code)
}

fn print_stats(stats: &SolveStats) {
    println!(
        "nodes explored {}, {} ms, optimum proved: {}",
        stats.nodes_explored, stats.elapsed_ms, stats.optimum_proved
    );
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialize")
    );
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_instance(path: &Path) -> Result<Hypergraph, CliError> {
    let text = read_file(path)?;
    parse_instance(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_with_two() {
        assert_eq!(run(["konig", "definitely-not-a-command"]), 2);
        assert_eq!(run(["konig", "check", "konig"]), 2);
        assert_eq!(run(["konig", "check", "konig", "/no/such/file.hg"]), 2);
    }

    #[test]
    fn help_exits_cleanly() {
        assert_eq!(run(["konig", "--help"]), 0);
        assert_eq!(run(["konig", "generate", "--help"]), 0);
    }
}

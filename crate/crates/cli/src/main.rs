//! `bipart`: biclique partition bounds, exact solvers, coverage certificates
//! and seeded experiments.
//!
//! Exit codes: 0 when every checked invariant held, 1 when a violation was
//! found, 2 on bad usage or unreadable input.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use bipartition::coverage::{
    classify_family, derive_s_t, extract_witness, f_exact, f_greedy, g_certificate, h_certificate,
    validate_trace, CoverageFamily, PeelSteps, F_EXACT_MAX_SETS, F_EXACT_MAX_UNIVERSE,
};
use bipartition::graph::{
    independence_number_exact, read_edge_list, sample_gnp, write_edge_list, Effort, GnpSpec, Graph,
};
use bipartition::harness::{emit_report, run_experiment, ExperimentConfig, ReportFormat};
use bipartition::partition::{
    largest_induced_biclique, tau_exact, tau_prime_exact, validate_partition, EXACT_INDUCED_MAX_N,
};
use bipartition::spectral::{default_tolerance, inertia};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "bipart", version, about = "Biclique edge partitions of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Tau,
    Tauprime,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    F,
    G,
    H,
    Witness,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Sample G(n, p) and write it as an edge list.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Spectral lower bound and constructive upper bounds on tau.
    Bounds {
        #[arg(long)]
        graph: PathBuf,
        /// Node budget for the independence number search.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Exact tau or tau' by branch and bound.
    Exact {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "tau")]
        mode: Mode,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Coverage value, certificates and witnesses for a family of left sides.
    Coverage {
        #[arg(long)]
        graph: PathBuf,
        /// JSON file `{"universe": [..], "sets": [[..], ..]}`.
        #[arg(long)]
        family: PathBuf,
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        /// Edge probability; the logarithm base is `1/p`.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the checks of a JSON config and write one report per check.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

fn load_graph(path: &Path) -> Result<Graph> {
    read_edge_list(path).with_context(|| format!("reading graph {}", path.display()))
}

fn print(value: &serde_json::Value) {
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(value).expect("json value"));
}

/// Returns whether every checked invariant held.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen { n, p, seed, out } => {
            let g = sample_gnp(&GnpSpec::new(n, p, seed)?)?;
            std::fs::write(&out, write_edge_list(&g)).with_context(|| format!("writing {}", out.display()))?;
            eprintln!("wrote G({n}, {p}) with {} edges to {}", g.m(), out.display());
            Ok(true)
        }
        Command::Bounds { graph, budget } => {
            let g = load_graph(&graph)?;
            let n = g.n();
            let sig = inertia(&g, default_tolerance(n))?;
            let gp = sig.n_plus.max(sig.n_minus);
            let alpha = independence_number_exact(&g, budget);
            let alon = if n <= EXACT_INDUCED_MAX_N {
                let beta = largest_induced_biclique(&g, Effort::Exact, budget, 0)?;
                Some(n + 1 - beta.size)
            } else {
                None
            };
            let upper = n - alpha.size;
            print(&json!({
                "n": n,
                "m": g.m(),
                "inertia": sig,
                "gp_bound": gp,
                "alpha": alpha.size,
                "alpha_status": alpha.status,
                "tau_upper": upper,
                "alon_upper": alon,
            }));
            Ok(gp <= upper)
        }
        Command::Exact { graph, mode, budget } => {
            let g = load_graph(&graph)?;
            let result = match mode {
                Mode::Tau => tau_exact(&g, budget)?,
                Mode::Tauprime => tau_prime_exact(&g, budget)?,
            };
            print(&serde_json::to_value(&result)?);
            Ok(result.witness.as_ref().is_none_or(|w| validate_partition(&g, w).is_ok()))
        }
        Command::Coverage {
            graph,
            family,
            op,
            epsilon,
            p,
            seed,
        } => {
            let g = load_graph(&graph)?;
            let text = std::fs::read_to_string(&family).with_context(|| format!("reading {}", family.display()))?;
            let fam = CoverageFamily::from_json(&text, g.n())?;
            coverage(&g, &fam, op, epsilon, p, seed)
        }
        Command::Experiment { config, out, format } => {
            let cfg = ExperimentConfig::read(&config)?;
            std::fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let mut ok = true;
            for report in run_experiment(&cfg)? {
                let stem = out.join(report.check.name());
                if matches!(format, Format::Json | Format::Both) {
                    emit_report(&report, ReportFormat::Json, &stem.with_extension("json"))?;
                }
                if matches!(format, Format::Csv | Format::Both) {
                    emit_report(&report, ReportFormat::Csv, &stem.with_extension("csv"))?;
                }
                println!(
                    "{}: {} trials, {} violating, {}",
                    report.check.name(),
                    report.summary.trials,
                    report.summary.violating_trials,
                    if report.passed { "pass" } else { "FAIL" }
                );
                ok &= report.passed;
            }
            Ok(ok)
        }
    }
}

fn coverage(g: &Graph, fam: &CoverageFamily, op: Op, epsilon: f64, p: f64, seed: u64) -> Result<bool> {
    match op {
        Op::F => {
            let exact = fam.len() <= F_EXACT_MAX_SETS && fam.universe.len() <= F_EXACT_MAX_UNIVERSE;
            let (value, trace) = if exact { f_exact(g, fam)? } else { f_greedy(g, fam, seed)? };
            let valid = validate_trace(g, fam, &trace).is_ok();
            print(&json!({ "op": "f", "value": value, "exact": exact, "trace": trace }));
            Ok(valid)
        }
        Op::G => {
            let (s, t) = derive_s_t(fam)?;
            let edges = g_certificate(g, fam, &s, &t)?;
            print(&json!({
                "op": "g",
                "value": edges.len(),
                "s": s.to_vec(),
                "t": t.to_vec(),
                "edges": edges,
            }));
            Ok(true)
        }
        Op::H => {
            let order = fam.universe.to_vec();
            let pair = extract_witness(fam, &fam.universe, &order, None, PeelSteps::UntilExhausted)?;
            let edges = h_certificate(g, &fam.universe, &pair.w_prime_set(g.n()), &pair.label_map(g.n()))?;
            print(&json!({ "op": "h", "value": edges.len(), "witness": pair, "edges": edges }));
            Ok(true)
        }
        Op::Witness => {
            anyhow::ensure!(p > 0.0 && p < 1.0, "--p must lie in (0, 1) for a witness, got {p}");
            let b = 1.0 / p;
            let split = classify_family(fam, epsilon, b)?;
            let small = fam.subfamily(&split.l1);
            let order = fam.universe.to_vec();
            match extract_witness(&small, &fam.universe, &order, None, PeelSteps::Auto { b }) {
                Ok(pair) => {
                    print(&json!({ "op": "witness", "split": split, "witness": pair }));
                    Ok(true)
                }
                Err(e @ bipartition::Error::PeelingExhausted { .. }) => {
                    print(&json!({ "op": "witness", "split": split, "error": e.to_string() }));
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

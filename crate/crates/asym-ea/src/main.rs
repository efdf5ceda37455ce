//! Command-line front end: single runs, grid experiments, Mann-Whitney
//! comparisons of run files, drift-inequality sweeps, and oracle queries.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use asym_ea::ea::{run, MutationOperator, RunConfig, RunOutcome, TargetSpec};
use asym_ea::harness::{parse_config, read_runs_csv, run_experiment, write_trace_csv, ExperimentSpec};
use asym_ea::oracle::{exact_success_probability, lemma1_check, mc_success_probability};
use asym_ea::stats::{mann_whitney_u, summarize};
use asym_ea::{BitProfile, Error, ProbabilityPair, Result};

#[derive(Parser)]
#[command(
    name = "asym-ea",
    version,
    about = "(1+1) evolutionary algorithms with asymmetric mutation, plus an exact \
             improvement oracle and experiment tooling"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a single run and print its record.
    Run(RunArgs),
    /// Execute a grid of runs from a config file or preset and write CSVs.
    Experiment(ExperimentArgs),
    /// Compare the runtimes in two per-run CSV files with a Mann-Whitney U test.
    Compare(CompareArgs),
    /// Sweep the drift inequality over a parameter grid and emit CSV.
    VerifyLemma(VerifyLemmaArgs),
    /// Query the exact improvement-probability oracle for one profile.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Problem dimension.
    #[arg(long)]
    n: usize,
    /// Mutation operator: standard, static-asym, or self-adjusting-asym.
    #[arg(long)]
    algorithm: MutationOperator,
    /// Seed of the run's random stream.
    #[arg(long)]
    seed: u64,
    /// Target preset: all-ones, all-zeros, half-split, or pattern:<bits>.
    #[arg(long, default_value = "all-ones")]
    target: TargetSpec,
    /// Adaptation rate of the self-adjusting operator.
    #[arg(long, default_value_t = 0.1)]
    alpha: f64,
    /// Phase length of the self-adjusting operator.
    #[arg(long, short = 'N', default_value_t = 50)]
    phase_length: u64,
    /// Evaluation budget [default: 10000 * n].
    #[arg(long)]
    max_evaluations: Option<u64>,
    /// Write the strength trace to this CSV file (self-adjusting runs only).
    #[arg(long, value_name = "PATH")]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Configuration file of `key = value` lines; see the library docs for
    /// the grammar.
    #[arg(long, required_unless_present = "preset", conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Built-in spec: quick (n in {1000, 2000, 4000}, 100 runs, all operators).
    #[arg(long, value_parser = ["quick"])]
    preset: Option<String>,
    /// Override the output directory.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Override the runs per cell.
    #[arg(long)]
    runs: Option<usize>,
    /// Override the master seed.
    #[arg(long)]
    master_seed: Option<u64>,
    /// Override the worker thread count.
    #[arg(long)]
    parallelism: Option<usize>,
}

#[derive(Args)]
struct CompareArgs {
    /// Per-run CSV of the first group.
    file_a: PathBuf,
    /// Per-run CSV of the second group.
    file_b: PathBuf,
    /// Keep only first-group rows with this operator.
    #[arg(long)]
    algorithm_a: Option<String>,
    /// Keep only second-group rows with this operator.
    #[arg(long)]
    algorithm_b: Option<String>,
    /// Keep only first-group rows with this dimension.
    #[arg(long)]
    n_a: Option<usize>,
    /// Keep only second-group rows with this dimension.
    #[arg(long)]
    n_b: Option<usize>,
    /// Also write the comparison as one CSV row to this file.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyLemmaArgs {
    /// Zero-class sizes (comma-separated).
    #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 5, 10, 100, 1000])]
    zeros: Vec<usize>,
    /// One-class sizes (comma-separated).
    #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 5, 10, 100, 1000])]
    ones: Vec<usize>,
    /// Base strengths r0 (comma-separated).
    #[arg(long, value_delimiter = ',', default_values_t = [0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8])]
    r0: Vec<f64>,
    /// Strength offsets beta (comma-separated).
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.05, 0.1, 0.15])]
    beta: Vec<f64>,
    /// Write the CSV here instead of stdout.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    /// Parent profile as four comma-separated counts n00,n01,n10,n11, where
    /// nxy counts positions with parent bit x and target bit y.
    #[arg(long, value_name = "N00,N01,N10,N11")]
    profile: String,
    /// Flip probability of each parent zero-bit.
    #[arg(long)]
    p0: f64,
    /// Flip probability of each parent one-bit.
    #[arg(long)]
    p1: f64,
    /// Also draw this many Monte Carlo samples as a cross-check.
    #[arg(long)]
    mc_samples: Option<u64>,
    /// Seed of the Monte Carlo stream.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Experiment(args) => cmd_experiment(args),
        Command::Compare(args) => cmd_compare(args),
        Command::VerifyLemma(args) => cmd_verify_lemma(args),
        Command::Oracle(args) => cmd_oracle(args),
    }
}

fn file_error(path: &Path, err: impl std::fmt::Display) -> Error {
    Error::File {
        path: path.to_path_buf(),
        message: err.to_string(),
    }
}

fn cmd_run(args: RunArgs) -> Result<ExitCode> {
    let config = RunConfig {
        n: args.n,
        target: args.target.clone(),
        operator: args.algorithm,
        alpha: args.alpha,
        phase_length: args.phase_length,
        seed: args.seed,
        max_evaluations: args
            .max_evaluations
            .unwrap_or(RunConfig::DEFAULT_CAP_FACTOR * args.n as u64),
        record_trace: args.trace.is_some(),
    };
    let record = run(&config)?;
    println!("algorithm: {}", args.algorithm);
    println!("target: {} (n = {})", args.target, args.n);
    println!("seed: {}", record.seed);
    match record.outcome {
        RunOutcome::Reached(evals) => {
            println!("outcome: optimum reached after {evals} evaluations");
        }
        RunOutcome::CapReached => {
            println!(
                "outcome: evaluation budget of {} exhausted before the optimum",
                config.max_evaluations
            );
        }
    }
    println!("final fitness: {} of {}", record.final_fitness, args.n);
    println!("strict improvements: {}", record.strict_improvements);
    if let Some(path) = &args.trace {
        write_trace_csv(path, record.seed, &record.trace)?;
        println!(
            "strength trace: {} phases written to {}",
            record.trace.len(),
            path.display()
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_experiment(args: ExperimentArgs) -> Result<ExitCode> {
    let mut spec = match (&args.config, args.preset.as_deref()) {
        (Some(path), None) => {
            let text =
                std::fs::read_to_string(path).map_err(|err| file_error(path, err))?;
            parse_config(&text)?
        }
        (None, Some("quick")) => ExperimentSpec::preset_quick(),
        _ => unreachable!("clap enforces exactly one of --config and --preset"),
    };
    if let Some(output) = args.output {
        spec.output = output;
    }
    if let Some(runs) = args.runs {
        spec.runs = runs;
    }
    if let Some(master_seed) = args.master_seed {
        spec.master_seed = master_seed;
    }
    if let Some(parallelism) = args.parallelism {
        spec.parallelism = parallelism;
    }

    let artifact = run_experiment(&spec)?;
    println!(
        "{:<22} {:>8} {:>6} {:>14} {:>14}",
        "algorithm", "n", "runs", "mean", "std"
    );
    for cell in &artifact.cells {
        println!(
            "{:<22} {:>8} {:>6} {:>14.2} {:>14.2}",
            cell.operator.name(),
            cell.n,
            cell.summary.count,
            cell.summary.mean,
            cell.summary.std
        );
    }
    println!();
    println!("per-run rows: {}", artifact.runs_path.display());
    println!("summaries: {}", artifact.summary_path.display());
    Ok(ExitCode::SUCCESS)
}

fn load_group(
    path: &Path,
    algorithm: &Option<String>,
    n: Option<usize>,
) -> Result<(Vec<f64>, String)> {
    let rows = read_runs_csv(path)?;
    let mut filters = Vec::new();
    if let Some(a) = algorithm {
        filters.push(format!("algorithm = {a}"));
    }
    if let Some(n) = n {
        filters.push(format!("n = {n}"));
    }
    let description = if filters.is_empty() {
        path.display().to_string()
    } else {
        format!("{} [{}]", path.display(), filters.join(", "))
    };
    let values: Vec<f64> = rows
        .iter()
        .filter(|row| algorithm.as_ref().map_or(true, |a| &row.algorithm == a))
        .filter(|row| n.map_or(true, |n| row.n == n))
        .map(|row| row.evaluations as f64)
        .collect();
    if values.is_empty() {
        return Err(file_error(
            path,
            format!(
                "no rows match {}",
                if filters.is_empty() {
                    "(file has no data rows)".to_string()
                } else {
                    filters.join(", ")
                }
            ),
        ));
    }
    Ok((values, description))
}

fn format_p(p: f64) -> String {
    if p < 1e-4 {
        format!("{p:.3e}")
    } else {
        format!("{p:.4}")
    }
}

fn cmd_compare(args: CompareArgs) -> Result<ExitCode> {
    let (a, description_a) = load_group(&args.file_a, &args.algorithm_a, args.n_a)?;
    let (b, description_b) = load_group(&args.file_b, &args.algorithm_b, args.n_b)?;
    let summary_a = summarize(&a)?;
    let summary_b = summarize(&b)?;
    let (u, p) = mann_whitney_u(&a, &b)?;

    println!("group a: {description_a}");
    println!(
        "  {} runs, mean {:.2}, std {:.2}",
        summary_a.count, summary_a.mean, summary_a.std
    );
    println!("group b: {description_b}");
    println!(
        "  {} runs, mean {:.2}, std {:.2}",
        summary_b.count, summary_b.mean, summary_b.std
    );
    println!("mann-whitney U = {u}, two-sided p = {}", format_p(p));

    if let Some(path) = &args.csv {
        let mut writer = csv::Writer::from_path(path).map_err(|err| file_error(path, err))?;
        writer
            .write_record([
                "count_a",
                "mean_a",
                "std_a",
                "count_b",
                "mean_b",
                "std_b",
                "u",
                "p_two_sided",
            ])
            .map_err(|err| file_error(path, err))?;
        writer
            .write_record([
                summary_a.count.to_string(),
                summary_a.mean.to_string(),
                summary_a.std.to_string(),
                summary_b.count.to_string(),
                summary_b.mean.to_string(),
                summary_b.std.to_string(),
                u.to_string(),
                p.to_string(),
            ])
            .map_err(|err| file_error(path, err))?;
        writer.flush().map_err(|err| file_error(path, err))?;
        println!("comparison row written to {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify_lemma(args: VerifyLemmaArgs) -> Result<ExitCode> {
    let sink_path = args
        .output
        .clone()
        .unwrap_or_else(|| PathBuf::from("-"));
    let sink: Box<dyn std::io::Write> = match &args.output {
        Some(path) => {
            Box::new(std::fs::File::create(path).map_err(|err| file_error(path, err))?)
        }
        None => Box::new(std::io::stdout().lock()),
    };
    let mut writer = csv::Writer::from_writer(sink);
    writer
        .write_record(["zeros", "ones", "r0", "beta", "lhs", "rhs", "margin", "satisfied"])
        .map_err(|err| file_error(&sink_path, err))?;

    let mut checked = 0usize;
    let mut violations = 0usize;
    let mut skipped = 0usize;
    for &zeros in &args.zeros {
        for &ones in &args.ones {
            for &r0 in &args.r0 {
                for &beta in &args.beta {
                    let outcome = match lemma1_check(zeros, ones, r0, beta) {
                        Ok(outcome) => outcome,
                        Err(_) => {
                            skipped += 1;
                            continue;
                        }
                    };
                    checked += 1;
                    if !outcome.satisfied {
                        violations += 1;
                    }
                    writer
                        .write_record([
                            zeros.to_string(),
                            ones.to_string(),
                            r0.to_string(),
                            beta.to_string(),
                            outcome.lhs.to_string(),
                            outcome.rhs.to_string(),
                            outcome.margin.to_string(),
                            outcome.satisfied.to_string(),
                        ])
                        .map_err(|err| file_error(&sink_path, err))?;
                }
            }
        }
    }
    writer.flush().map_err(|err| file_error(&sink_path, err))?;
    if checked == 0 {
        return Err(Error::InvalidConfig {
            field: "grid".into(),
            message: "every combination in the grid is invalid".into(),
        });
    }
    let skipped_note = if skipped > 0 {
        format!(", {skipped} skipped as invalid")
    } else {
        String::new()
    };
    eprintln!("checked {checked} combinations, {violations} violations{skipped_note}");
    Ok(if violations == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_oracle(args: OracleArgs) -> Result<ExitCode> {
    let counts: Vec<usize> = args
        .profile
        .split(',')
        .map(|part| {
            part.trim().parse().map_err(|err| Error::InvalidConfig {
                field: "profile".into(),
                message: format!("cannot parse `{}`: {err}", part.trim()),
            })
        })
        .collect::<Result<_>>()?;
    if counts.len() != 4 {
        return Err(Error::InvalidConfig {
            field: "profile".into(),
            message: format!(
                "expected four comma-separated counts n00,n01,n10,n11, got {}",
                counts.len()
            ),
        });
    }
    let profile = BitProfile {
        n00: counts[0],
        n01: counts[1],
        n10: counts[2],
        n11: counts[3],
    };
    let pair = ProbabilityPair::new(args.p0, args.p1)?;
    let exact = exact_success_probability(&profile, pair);

    let mut stdout = std::io::stdout().lock();
    writeln!(
        stdout,
        "profile: n00 = {}, n01 = {}, n10 = {}, n11 = {} (n = {})",
        profile.n00,
        profile.n01,
        profile.n10,
        profile.n11,
        profile.len()
    )?;
    writeln!(
        stdout,
        "flip probabilities: p0 = {}, p1 = {}",
        pair.p0(),
        pair.p1()
    )?;
    writeln!(stdout, "exact improvement probability: {exact}")?;
    if let Some(samples) = args.mc_samples {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let (estimate, standard_error) =
            mc_success_probability(&profile, pair, samples, &mut rng)?;
        writeln!(
            stdout,
            "monte carlo ({samples} samples, seed {}): {estimate} (standard error {standard_error:.3e})",
            args.seed
        )?;
    }
    Ok(ExitCode::SUCCESS)
}

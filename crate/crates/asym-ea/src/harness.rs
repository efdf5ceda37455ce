//! Experiment harness: grid sweeps over dimensions and operators, driven by a
//! flat key-value configuration, with per-run and per-cell CSV artifacts.
//!
//! # Configuration grammar
//!
//! One `key = value` pair per line; blank lines and lines starting with `#`
//! are ignored. Lists are comma-separated. Recognized keys:
//!
//! ```text
//! n_values     = 8000, 10000, 12000      # required, positive integers
//! algorithms   = standard, static-asym, self-adjusting-asym   # required
//! target       = all-ones                # or all-zeros, half-split, pattern:<bits>
//! runs         = 1000                    # per (algorithm, n) cell
//! alpha        = 0.1                     # adaptation rate, 0 < alpha < 0.25
//! N            = 50                      # phase length, even, >= 2
//! master_seed  = 42
//! output       = results                 # directory for runs.csv / summary.csv
//! parallelism  = 4                       # worker threads, default: all cores
//! ```

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::ea::{
    derive_seed, run_batch, MutationOperator, PhaseTrace, RunConfig, RunOutcome, RunRecord,
    TargetSpec,
};
use crate::error::{Error, Result};
use crate::stats::{summarize, SampleSummary};

/// A full experiment: the cross product of dimensions and operators, with a
/// fixed number of runs per cell.
#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    /// Problem dimensions to sweep.
    pub n_values: Vec<usize>,
    /// Operators to sweep.
    pub algorithms: Vec<MutationOperator>,
    /// Target preset shared by all cells.
    pub target: TargetSpec,
    /// Runs per (algorithm, n) cell.
    pub runs: usize,
    /// Adaptation rate for self-adjusting cells.
    pub alpha: f64,
    /// Phase length for self-adjusting cells.
    pub phase_length: u64,
    /// Seed from which every run seed is derived.
    pub master_seed: u64,
    /// Directory receiving `runs.csv` and `summary.csv`.
    pub output: PathBuf,
    /// Worker threads for run batches (0 means one per core).
    pub parallelism: usize,
}

impl ExperimentSpec {
    /// A spec with the stock parameters for the given grid: all-ones target,
    /// 1000 runs per cell, `alpha = 0.1`, phase length 50, master seed 42,
    /// output directory `results`, one worker per core.
    pub fn with_defaults(n_values: Vec<usize>, algorithms: Vec<MutationOperator>) -> Self {
        ExperimentSpec {
            n_values,
            algorithms,
            target: TargetSpec::AllOnes,
            runs: 1000,
            alpha: 0.1,
            phase_length: 50,
            master_seed: 42,
            output: PathBuf::from("results"),
            parallelism: default_parallelism(),
        }
    }

    /// The desk-scale preset: `n` in {1000, 2000, 4000}, 100 runs per cell,
    /// all three operators. Small enough for a quick check, large enough to
    /// show the factor-two separation between the asymmetric variants.
    pub fn preset_quick() -> Self {
        ExperimentSpec {
            runs: 100,
            ..Self::with_defaults(
                vec![1000, 2000, 4000],
                MutationOperator::ALL.to_vec(),
            )
        }
    }

    /// Validates every field, naming the first offender.
    pub fn validate(&self) -> Result<()> {
        if self.n_values.is_empty() {
            return Err(invalid("n_values", "at least one dimension is required"));
        }
        if let Some(&bad) = self.n_values.iter().find(|&&n| n == 0) {
            return Err(invalid("n_values", format!("dimension must be positive, got {bad}")));
        }
        if self.algorithms.is_empty() {
            return Err(invalid("algorithms", "at least one operator is required"));
        }
        if self.runs == 0 {
            return Err(invalid("runs", "at least one run per cell is required"));
        }
        if !self.alpha.is_finite() || self.alpha <= 0.0 || self.alpha >= 0.25 {
            return Err(invalid(
                "alpha",
                format!("must lie strictly between 0 and 0.25, got {}", self.alpha),
            ));
        }
        if self.phase_length < 2 || self.phase_length % 2 != 0 {
            return Err(invalid(
                "N",
                format!("must be an even integer >= 2, got {}", self.phase_length),
            ));
        }
        Ok(())
    }
}

fn invalid(field: &str, message: impl Into<String>) -> Error {
    Error::InvalidConfig {
        field: field.into(),
        message: message.into(),
    }
}

fn default_parallelism() -> usize {
    std::thread::available_parallelism()
        .map(std::num::NonZeroUsize::get)
        .unwrap_or(1)
}

/// Parses the flat key-value configuration documented at the module level.
/// `n_values` and `algorithms` are required; everything else defaults as in
/// [`ExperimentSpec::with_defaults`].
pub fn parse_config(text: &str) -> Result<ExperimentSpec> {
    let mut spec = ExperimentSpec::with_defaults(Vec::new(), Vec::new());
    let mut seen = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(invalid(
                format!("line {}", index + 1).as_str(),
                format!("expected `key = value`, got `{line}`"),
            ));
        };
        let key = key.trim();
        let value = value.trim();
        if seen.contains(&key.to_string()) {
            return Err(invalid(key, "field given more than once"));
        }
        seen.push(key.to_string());
        match key {
            "n_values" => spec.n_values = parse_list(key, value)?,
            "algorithms" => spec.algorithms = parse_list(key, value)?,
            "target" => spec.target = parse_scalar(key, value)?,
            "runs" => spec.runs = parse_scalar(key, value)?,
            "alpha" => spec.alpha = parse_scalar(key, value)?,
            "N" => spec.phase_length = parse_scalar(key, value)?,
            "master_seed" => spec.master_seed = parse_scalar(key, value)?,
            "output" => spec.output = PathBuf::from(value),
            "parallelism" => {
                spec.parallelism = parse_scalar(key, value)?;
                if spec.parallelism == 0 {
                    return Err(invalid(key, "must be at least 1"));
                }
            }
            _ => return Err(invalid(key, "unknown field")),
        }
    }
    if spec.n_values.is_empty() {
        return Err(invalid("n_values", "required field is missing or empty"));
    }
    if spec.algorithms.is_empty() {
        return Err(invalid("algorithms", "required field is missing or empty"));
    }
    spec.validate()?;
    Ok(spec)
}

fn parse_scalar<T>(field: &str, value: &str) -> Result<T>
where
    T: FromStr,
    T::Err: Display,
{
    value
        .parse()
        .map_err(|err| invalid(field, format!("cannot parse `{value}`: {err}")))
}

fn parse_list<T>(field: &str, value: &str) -> Result<Vec<T>>
where
    T: FromStr,
    T::Err: Display,
{
    value
        .split(',')
        .map(str::trim)
        .filter(|part| !part.is_empty())
        .map(|part| parse_scalar(field, part))
        .collect()
}

/// Results of one (algorithm, n) cell.
#[derive(Clone, Debug)]
pub struct CellResult {
    /// Operator of this cell.
    pub operator: MutationOperator,
    /// Dimension of this cell.
    pub n: usize,
    /// All run records, in run-index order.
    pub records: Vec<RunRecord>,
    /// Summary of the evaluation counts.
    pub summary: SampleSummary,
}

/// Everything an experiment produced: the written files plus in-memory cells.
#[derive(Clone, Debug)]
pub struct ExperimentArtifact {
    /// Path of the per-run CSV.
    pub runs_path: PathBuf,
    /// Path of the per-cell summary CSV.
    pub summary_path: PathBuf,
    /// Cell results in execution order (dimension-major, operator-minor).
    pub cells: Vec<CellResult>,
}

/// The master seed of one cell, derived from the experiment master seed, the
/// operator's position in [`MutationOperator::ALL`], and the dimension.
/// Depending only on those makes every cell reproducible in isolation,
/// whatever subset of the grid a spec names.
fn cell_seed(master_seed: u64, operator: MutationOperator, n: usize) -> u64 {
    let operator_id = MutationOperator::ALL
        .iter()
        .position(|op| *op == operator)
        .expect("ALL contains every operator") as u64;
    derive_seed(derive_seed(master_seed, operator_id), n as u64)
}

fn file_error(path: &Path, err: impl Display) -> Error {
    Error::File {
        path: path.to_path_buf(),
        message: err.to_string(),
    }
}

/// Executes the full grid and writes `runs.csv` and `summary.csv` into the
/// spec's output directory. Both files are flushed after every cell, so an
/// interrupted sweep leaves complete rows for the cells it finished.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentArtifact> {
    spec.validate()?;
    std::fs::create_dir_all(&spec.output).map_err(|err| file_error(&spec.output, err))?;
    let runs_path = spec.output.join("runs.csv");
    let summary_path = spec.output.join("summary.csv");

    let mut runs_csv =
        csv::Writer::from_path(&runs_path).map_err(|err| file_error(&runs_path, err))?;
    runs_csv
        .write_record([
            "algorithm",
            "n",
            "target",
            "alpha",
            "N",
            "run_id",
            "seed",
            "evaluations",
            "final_fitness",
        ])
        .map_err(|err| file_error(&runs_path, err))?;
    let mut summary_csv =
        csv::Writer::from_path(&summary_path).map_err(|err| file_error(&summary_path, err))?;
    summary_csv
        .write_record(["algorithm", "n", "runs", "mean", "std"])
        .map_err(|err| file_error(&summary_path, err))?;

    let mut cells = Vec::new();
    for &n in &spec.n_values {
        for &operator in &spec.algorithms {
            let config = RunConfig {
                n,
                target: spec.target.clone(),
                operator,
                alpha: spec.alpha,
                phase_length: spec.phase_length,
                seed: 0,
                max_evaluations: RunConfig::DEFAULT_CAP_FACTOR * n as u64,
                record_trace: false,
            };
            let records = run_batch(
                &config,
                spec.runs,
                cell_seed(spec.master_seed, operator, n),
                spec.parallelism,
            )?;

            for (run_id, record) in records.iter().enumerate() {
                runs_csv
                    .write_record([
                        operator.name().to_string(),
                        n.to_string(),
                        spec.target.label(),
                        spec.alpha.to_string(),
                        spec.phase_length.to_string(),
                        run_id.to_string(),
                        record.seed.to_string(),
                        record.evaluations.to_string(),
                        record.final_fitness.to_string(),
                    ])
                    .map_err(|err| file_error(&runs_path, err))?;
            }
            let evaluations: Vec<f64> = records.iter().map(|r| r.evaluations as f64).collect();
            let summary = summarize(&evaluations)?;
            summary_csv
                .write_record([
                    operator.name().to_string(),
                    n.to_string(),
                    summary.count.to_string(),
                    summary.mean.to_string(),
                    summary.std.to_string(),
                ])
                .map_err(|err| file_error(&summary_path, err))?;

            runs_csv.flush().map_err(|err| file_error(&runs_path, err))?;
            summary_csv
                .flush()
                .map_err(|err| file_error(&summary_path, err))?;
            cells.push(CellResult {
                operator,
                n,
                records,
                summary,
            });
        }
    }
    Ok(ExperimentArtifact {
        runs_path,
        summary_path,
        cells,
    })
}

/// One row of a per-run CSV, as read back for comparisons.
#[derive(Clone, Debug)]
pub struct RunRow {
    /// Operator name.
    pub algorithm: String,
    /// Dimension.
    pub n: usize,
    /// Offspring evaluations.
    pub evaluations: u64,
}

/// Reads the `algorithm`, `n`, and `evaluations` columns of a per-run CSV.
pub fn read_runs_csv(path: &Path) -> Result<Vec<RunRow>> {
    let mut reader = csv::Reader::from_path(path).map_err(|err| file_error(path, err))?;
    let headers = reader.headers().map_err(|err| file_error(path, err))?;
    let column = |name: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| file_error(path, format!("missing column `{name}`")))
    };
    let algorithm_col = column("algorithm")?;
    let n_col = column("n")?;
    let evaluations_col = column("evaluations")?;

    let mut rows = Vec::new();
    for (index, record) in reader.records().enumerate() {
        let record = record.map_err(|err| file_error(path, err))?;
        let cell = |col: usize| -> Result<&str> {
            record
                .get(col)
                .ok_or_else(|| file_error(path, format!("row {} is truncated", index + 2)))
        };
        rows.push(RunRow {
            algorithm: cell(algorithm_col)?.to_string(),
            n: cell(n_col)?
                .parse()
                .map_err(|err| file_error(path, format!("row {}: {err}", index + 2)))?,
            evaluations: cell(evaluations_col)?
                .parse()
                .map_err(|err| file_error(path, format!("row {}: {err}", index + 2)))?,
        });
    }
    Ok(rows)
}

/// Writes the strength trace of a run as CSV with columns
/// `run_id,phase,r0,b,direction`.
pub fn write_trace_csv(path: &Path, run_id: u64, trace: &[PhaseTrace]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path).map_err(|err| file_error(path, err))?;
    writer
        .write_record(["run_id", "phase", "r0", "b", "direction"])
        .map_err(|err| file_error(path, err))?;
    for event in trace {
        writer
            .write_record([
                run_id.to_string(),
                event.phase.to_string(),
                event.r0.to_string(),
                event.balance.to_string(),
                event.direction.to_string(),
            ])
            .map_err(|err| file_error(path, err))?;
    }
    writer.flush().map_err(|err| file_error(path, err))
}

/// True when the record reached the optimum (rather than its evaluation cap).
pub fn reached_optimum(record: &RunRecord) -> bool {
    matches!(record.outcome, RunOutcome::Reached(_))
}

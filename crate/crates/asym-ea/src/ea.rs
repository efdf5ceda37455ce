//! The (1+1) evolutionary algorithm.
//!
//! Each run starts from a uniformly random parent and repeats: create one
//! offspring by mutation, evaluate it, and accept it if its fitness is at
//! least the parent's. The runtime of a run is the number of offspring
//! evaluations until the optimum is first evaluated; the initial sample
//! counts as evaluation 0.
//!
//! The hot loop never copies the parent: mutations are sampled as flip
//! position sets, scored against the target by inspecting only those
//! positions, and applied in place when accepted.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bitstring::BitString;
use crate::controller::{ControllerState, StrengthMove};
use crate::error::{Error, Result};
use crate::fitness::Target;
use crate::mutation::{
    sample_asymmetric_flips_into, sample_standard_flips_into, static_pair, ClassIndex,
};

/// The mutation operator driving a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MutationOperator {
    /// Every bit flips independently with probability `1/n`.
    Standard,
    /// Zero-bits flip with probability `1/(2 zeros(x))`, one-bits with
    /// `1/(2 ones(x))`.
    StaticAsymmetric,
    /// Asymmetric mutation whose strengths are tuned online by
    /// [`ControllerState`].
    SelfAdjustingAsymmetric,
}

impl MutationOperator {
    /// All operators, in the order used by experiment sweeps.
    pub const ALL: [MutationOperator; 3] = [
        MutationOperator::Standard,
        MutationOperator::StaticAsymmetric,
        MutationOperator::SelfAdjustingAsymmetric,
    ];

    /// The stable name used in CLIs and CSV output.
    pub fn name(&self) -> &'static str {
        match self {
            MutationOperator::Standard => "standard",
            MutationOperator::StaticAsymmetric => "static-asym",
            MutationOperator::SelfAdjustingAsymmetric => "self-adjusting-asym",
        }
    }
}

impl fmt::Display for MutationOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MutationOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(MutationOperator::Standard),
            "static-asym" => Ok(MutationOperator::StaticAsymmetric),
            "self-adjusting-asym" => Ok(MutationOperator::SelfAdjustingAsymmetric),
            _ => Err(Error::InvalidConfig {
                field: "algorithm".into(),
                message: format!(
                    "unknown operator `{s}`, expected standard, static-asym, or self-adjusting-asym"
                ),
            }),
        }
    }
}

/// Which target point a run optimizes toward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetSpec {
    /// Target `1^n` (classic OneMax).
    AllOnes,
    /// Target `0^n`.
    AllZeros,
    /// Target `0^(n/2) 1^(n - n/2)`.
    HalfSplit,
    /// An explicit target point; its length must equal the configured `n`.
    Pattern(BitString),
}

impl TargetSpec {
    /// Builds the concrete target for dimension `n`.
    pub fn build(&self, n: usize) -> Result<Target> {
        match self {
            TargetSpec::AllOnes => Target::all_ones(n),
            TargetSpec::AllZeros => Target::all_zeros(n),
            TargetSpec::HalfSplit => Target::half_split(n),
            TargetSpec::Pattern(bits) => {
                if bits.len() != n {
                    return Err(Error::InvalidConfig {
                        field: "target".into(),
                        message: format!(
                            "pattern length {} does not match n = {n}",
                            bits.len()
                        ),
                    });
                }
                Ok(Target::from_bits(bits.clone()))
            }
        }
    }

    /// The stable name used in CLIs and CSV output.
    pub fn label(&self) -> String {
        match self {
            TargetSpec::AllOnes => "all-ones".into(),
            TargetSpec::AllZeros => "all-zeros".into(),
            TargetSpec::HalfSplit => "half-split".into(),
            TargetSpec::Pattern(bits) => format!("pattern:{bits}"),
        }
    }
}

impl fmt::Display for TargetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for TargetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all-ones" => Ok(TargetSpec::AllOnes),
            "all-zeros" => Ok(TargetSpec::AllZeros),
            "half-split" => Ok(TargetSpec::HalfSplit),
            _ => {
                if let Some(pattern) = s.strip_prefix("pattern:") {
                    Ok(TargetSpec::Pattern(pattern.parse()?))
                } else {
                    Err(Error::InvalidConfig {
                        field: "target".into(),
                        message: format!(
                            "unknown target `{s}`, expected all-ones, all-zeros, half-split, or pattern:<bits>"
                        ),
                    })
                }
            }
        }
    }
}

/// Full description of a single run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Problem dimension.
    pub n: usize,
    /// Target point.
    pub target: TargetSpec,
    /// Mutation operator.
    pub operator: MutationOperator,
    /// Adaptation rate for the self-adjusting operator; ignored otherwise.
    pub alpha: f64,
    /// Phase length for the self-adjusting operator; ignored otherwise.
    pub phase_length: u64,
    /// Seed of the per-run random stream.
    pub seed: u64,
    /// Give up after this many offspring evaluations.
    pub max_evaluations: u64,
    /// Record the strength trajectory (self-adjusting runs only).
    pub record_trace: bool,
}

impl RunConfig {
    /// Evaluation budget used when none is given explicitly, per dimension.
    pub const DEFAULT_CAP_FACTOR: u64 = 10_000;

    /// A config with the stock parameters: all-ones target, `alpha = 0.1`,
    /// phase length 50, evaluation cap `10^4 n`, no trace.
    pub fn new(n: usize, operator: MutationOperator, seed: u64) -> Self {
        RunConfig {
            n,
            target: TargetSpec::AllOnes,
            operator,
            alpha: 0.1,
            phase_length: 50,
            seed,
            max_evaluations: Self::DEFAULT_CAP_FACTOR * n as u64,
            record_trace: false,
        }
    }
}

/// How a run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunOutcome {
    /// The optimum was first evaluated at this many offspring evaluations.
    Reached(u64),
    /// The evaluation budget ran out first.
    CapReached,
}

/// One phase-boundary event of a self-adjusting run.
#[derive(Clone, Copy, Debug)]
pub struct PhaseTrace {
    /// 1-based index of the completed phase.
    pub phase: u64,
    /// Strength in effect during that phase (before the boundary step).
    pub r0: f64,
    /// Improvement balance at the boundary (before the reset).
    pub balance: i64,
    /// Direction the strength stepped.
    pub direction: StrengthMove,
}

/// Everything observed during one run.
#[derive(Clone, Debug)]
pub struct RunRecord {
    /// Whether and when the optimum was reached.
    pub outcome: RunOutcome,
    /// Offspring evaluations performed.
    pub evaluations: u64,
    /// Fitness of the final parent.
    pub final_fitness: usize,
    /// Seed the run was started with.
    pub seed: u64,
    /// Number of strictly improving offspring.
    pub strict_improvements: u64,
    /// Strength trajectory, empty unless tracing a self-adjusting run.
    pub trace: Vec<PhaseTrace>,
}

/// Parent state with enough bookkeeping to score and apply a mutation in time
/// proportional to the number of flipped bits.
struct SearchPoint {
    bits: BitString,
    classes: ClassIndex,
    matches: usize,
}

impl SearchPoint {
    fn new(bits: BitString, target: &Target) -> Result<Self> {
        let matches = target.eval(&bits)?;
        let classes = ClassIndex::new(&bits);
        Ok(SearchPoint {
            bits,
            classes,
            matches,
        })
    }

    /// Fitness change if `flips` were applied: +1 per incorrect position
    /// flipped, -1 per correct one.
    fn fitness_delta(&self, flips: &[usize], target: &Target) -> i64 {
        let mut delta = 0i64;
        for &pos in flips {
            if self.bits.bit(pos) == target.bit(pos) {
                delta -= 1;
            } else {
                delta += 1;
            }
        }
        delta
    }

    /// Applies `flips` in place, keeping the class index and match count
    /// consistent.
    fn apply(&mut self, flips: &[usize], target: &Target) {
        for &pos in flips {
            self.bits.flip(pos).expect("sampled positions are in range");
            let now = self.bits.bit(pos);
            self.classes.record_flip(pos, now);
            if now == target.bit(pos) {
                self.matches += 1;
            } else {
                self.matches -= 1;
            }
        }
    }
}

/// Executes one run.
pub fn run(config: &RunConfig) -> Result<RunRecord> {
    if config.max_evaluations == 0 {
        return Err(Error::InvalidConfig {
            field: "max_evaluations".into(),
            message: "evaluation budget must be at least 1".into(),
        });
    }
    let target = config.target.build(config.n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut point = SearchPoint::new(BitString::random_uniform(config.n, &mut rng)?, &target)?;
    let mut controller = match config.operator {
        MutationOperator::SelfAdjustingAsymmetric => {
            Some(ControllerState::new(config.alpha, config.phase_length)?)
        }
        _ => None,
    };

    let mut evaluations = 0u64;
    let mut strict_improvements = 0u64;
    let mut trace = Vec::new();
    let mut flips = Vec::new();

    while point.matches < config.n {
        if evaluations == config.max_evaluations {
            return Ok(RunRecord {
                outcome: RunOutcome::CapReached,
                evaluations,
                final_fitness: point.matches,
                seed: config.seed,
                strict_improvements,
                trace,
            });
        }
        match config.operator {
            MutationOperator::Standard => {
                sample_standard_flips_into(config.n, &mut rng, &mut flips)
            }
            MutationOperator::StaticAsymmetric => {
                let pair = static_pair(&point.bits);
                sample_asymmetric_flips_into(&point.classes, pair, &mut rng, &mut flips);
            }
            MutationOperator::SelfAdjustingAsymmetric => {
                let pair = controller
                    .as_ref()
                    .expect("self-adjusting runs own a controller")
                    .current_pair(&point.bits);
                sample_asymmetric_flips_into(&point.classes, pair, &mut rng, &mut flips);
            }
        }
        evaluations += 1;
        let delta = point.fitness_delta(&flips, &target);
        if delta >= 0 {
            point.apply(&flips, &target);
        }
        let strict = delta > 0;
        if strict {
            strict_improvements += 1;
            debug_assert_eq!(point.matches, target.eval(&point.bits)?);
        }
        if let Some(c) = controller.as_mut() {
            c.record_outcome(strict);
            if c.at_phase_boundary() {
                let r0 = c.r0();
                let balance = c.improvement_balance();
                let direction = c.phase_boundary_update(&mut rng)?;
                if config.record_trace {
                    trace.push(PhaseTrace {
                        phase: c.phase_index(),
                        r0,
                        balance,
                        direction,
                    });
                }
            }
        }
    }

    Ok(RunRecord {
        outcome: RunOutcome::Reached(evaluations),
        evaluations,
        final_fitness: config.n,
        seed: config.seed,
        strict_improvements,
        trace,
    })
}

/// Derives the seed of run `index` from a master seed.
///
/// Uses the splitmix64 finalizer, so consecutive indices give well-mixed,
/// distinct streams and the mapping never changes between releases.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add((index + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Executes `runs` independent runs of `config`, seeding run `i` with
/// `derive_seed(master_seed, i)`; the seed inside `config` is ignored.
///
/// `parallelism` is the number of worker threads (0 means one per core).
/// Results are returned in run order and are identical for every parallelism
/// level.
pub fn run_batch(
    config: &RunConfig,
    runs: usize,
    master_seed: u64,
    parallelism: usize,
) -> Result<Vec<RunRecord>> {
    let configs: Vec<RunConfig> = (0..runs)
        .map(|i| RunConfig {
            seed: derive_seed(master_seed, i as u64),
            ..config.clone()
        })
        .collect();
    if parallelism == 1 {
        return configs.iter().map(run).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .map_err(|err| Error::InvalidConfig {
            field: "parallelism".into(),
            message: err.to_string(),
        })?;
    pool.install(|| configs.par_iter().map(run).collect())
}

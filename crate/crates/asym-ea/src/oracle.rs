//! Exact success probabilities for one asymmetric mutation.
//!
//! A mutation succeeds when the offspring is strictly fitter than the parent.
//! Writing the parent-vs-target tally as a [`BitProfile`], the fitness change
//! is
//!
//! ```text
//! G = Bin(n01, p0) + Bin(n10, p1) - Bin(n00, p0) - Bin(n11, p1)
//! ```
//!
//! with the four binomials independent, so the success probability `P(G > 0)`
//! follows from convolving the gain and loss distributions. The module also
//! provides a brute-force enumeration and a Monte Carlo estimator (both for
//! cross-validation), and a checker for the drift inequality that shifting
//! strength toward the zero-bits of an all-ones-style profile raises the
//! success probability by a guaranteed amount.

use rand::Rng;
use statrs::distribution::{Binomial, Discrete};

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::fitness::{BitProfile, Target};
use crate::mutation::{sample_asymmetric_flips_into, ClassIndex, ProbabilityPair};

/// Numerical slack allowed when declaring the drift inequality satisfied.
pub const LEMMA_EPSILON: f64 = 1e-9;

/// Compensated (Neumaier) summation, so the final probability accumulation
/// does not lose mass to cancellation when many tiny terms are involved.
struct Neumaier {
    sum: f64,
    compensation: f64,
}

impl Neumaier {
    fn new() -> Self {
        Neumaier {
            sum: 0.0,
            compensation: 0.0,
        }
    }

    fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

fn binomial_pmf_vec(m: usize, p: f64) -> Vec<f64> {
    if m == 0 {
        return vec![1.0];
    }
    let dist = Binomial::new(p, m as u64).expect("pair probabilities are validated");
    (0..=m as u64).map(|k| dist.pmf(k)).collect()
}

fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact probability that one asymmetric mutation with `pair` strictly
/// improves a parent with the given profile.
pub fn exact_success_probability(profile: &BitProfile, pair: ProbabilityPair) -> f64 {
    let gains = convolve(
        &binomial_pmf_vec(profile.n01, pair.p0()),
        &binomial_pmf_vec(profile.n10, pair.p1()),
    );
    let losses = convolve(
        &binomial_pmf_vec(profile.n00, pair.p0()),
        &binomial_pmf_vec(profile.n11, pair.p1()),
    );

    // P(losses <= t), cumulatively.
    let mut loss_cdf = losses;
    for i in 1..loss_cdf.len() {
        loss_cdf[i] += loss_cdf[i - 1];
    }

    let mut acc = Neumaier::new();
    for (g, &pg) in gains.iter().enumerate().skip(1) {
        let below = loss_cdf[(g - 1).min(loss_cdf.len() - 1)];
        acc.add(pg * below);
    }
    acc.total().clamp(0.0, 1.0)
}

/// Success probability by enumerating every flip subset. Exponential in the
/// profile size; panics above 24 positions.
pub fn brute_force_success_probability(profile: &BitProfile, pair: ProbabilityPair) -> f64 {
    let n = profile.len();
    assert!(n <= 24, "brute force enumerates 2^n subsets, refusing n = {n}");

    // Lay the positions out class by class: flip probability per position,
    // and +1/-1 fitness effect when it flips.
    let mut flip_prob = Vec::with_capacity(n);
    let mut effect = Vec::with_capacity(n);
    for _ in 0..profile.n00 {
        flip_prob.push(pair.p0());
        effect.push(-1i32);
    }
    for _ in 0..profile.n01 {
        flip_prob.push(pair.p0());
        effect.push(1);
    }
    for _ in 0..profile.n10 {
        flip_prob.push(pair.p1());
        effect.push(1);
    }
    for _ in 0..profile.n11 {
        flip_prob.push(pair.p1());
        effect.push(-1);
    }

    let mut total = 0.0;
    for mask in 0u32..1u32 << n {
        let mut probability = 1.0;
        let mut delta = 0i32;
        for i in 0..n {
            if mask >> i & 1 == 1 {
                probability *= flip_prob[i];
                delta += effect[i];
            } else {
                probability *= 1.0 - flip_prob[i];
            }
        }
        if delta > 0 {
            total += probability;
        }
    }
    total
}

/// Monte Carlo estimate of the success probability from `samples` mutations,
/// returned together with its binomial standard error
/// `sqrt(estimate (1 - estimate) / samples)`.
/// Errors when `samples` is 0 or the profile is empty.
pub fn mc_success_probability<R: Rng + ?Sized>(
    profile: &BitProfile,
    pair: ProbabilityPair,
    samples: u64,
    rng: &mut R,
) -> Result<(f64, f64)> {
    if samples == 0 {
        return Err(Error::EmptySample);
    }
    let n = profile.len();
    // Build a parent/target pair realizing the profile: the parent has its
    // zeros first, and the target disagrees exactly on the middle blocks.
    let mut x = BitString::zeros(n)?;
    for pos in profile.zeros()..n {
        x.flip(pos)?;
    }
    let mut a = BitString::zeros(n)?;
    for pos in profile.n00..profile.zeros() {
        a.flip(pos)?;
    }
    for pos in profile.zeros() + profile.n10..n {
        a.flip(pos)?;
    }
    let target = Target::from_bits(a);
    debug_assert_eq!(target.classify(&x)?, *profile);

    let classes = ClassIndex::new(&x);
    let mut flips = Vec::new();
    let mut hits = 0u64;
    for _ in 0..samples {
        sample_asymmetric_flips_into(&classes, pair, rng, &mut flips);
        let delta: i64 = flips
            .iter()
            .map(|&p| if x.bit(p) == target.bit(p) { -1 } else { 1 })
            .sum();
        if delta > 0 {
            hits += 1;
        }
    }
    let estimate = hits as f64 / samples as f64;
    let standard_error = (estimate * (1.0 - estimate) / samples as f64).sqrt();
    Ok((estimate, standard_error))
}

/// Outcome of one drift-inequality check.
#[derive(Clone, Copy, Debug)]
pub struct Lemma1Outcome {
    /// Success probability with the boosted pair
    /// `((r0 + beta) / zeros, (r1 - beta) / ones)`.
    pub lhs: f64,
    /// Success probability with the base pair `(r0 / zeros, r1 / ones)` plus
    /// the guaranteed bonus `r1 * r0 * (1 - e^(-beta))`.
    pub rhs: f64,
    /// `lhs - rhs`; the inequality predicts this is nonnegative.
    pub margin: f64,
    /// Whether `margin >= -`[`LEMMA_EPSILON`].
    pub satisfied: bool,
}

/// Checks the drift inequality on a parent with `zeros` incorrect zero-bits
/// and `ones` correct one-bits (an all-ones-style profile): moving strength
/// `beta` from the one-bits to the zero-bits must raise the success
/// probability by at least `r1 * r0 * (1 - e^(-beta))`.
///
/// Requires `zeros, ones >= 1`, `0 < r0 < 1`, and `0 <= beta <= 1 - r0`; at
/// `beta = 0` the inequality collapses to an exact equality.
pub fn lemma1_check(zeros: usize, ones: usize, r0: f64, beta: f64) -> Result<Lemma1Outcome> {
    if zeros == 0 {
        return Err(Error::InvalidConfig {
            field: "zeros".into(),
            message: "the zero-bit class must be non-empty".into(),
        });
    }
    if ones == 0 {
        return Err(Error::InvalidConfig {
            field: "ones".into(),
            message: "the one-bit class must be non-empty".into(),
        });
    }
    if !r0.is_finite() || r0 <= 0.0 || r0 >= 1.0 {
        return Err(Error::InvalidProbability { value: r0 });
    }
    if !beta.is_finite() || beta < 0.0 || r0 + beta > 1.0 {
        return Err(Error::InvalidProbability { value: beta });
    }
    let r1 = 1.0 - r0;
    let profile = BitProfile {
        n00: 0,
        n01: zeros,
        n10: 0,
        n11: ones,
    };
    let base = exact_success_probability(
        &profile,
        ProbabilityPair::new(r0 / zeros as f64, r1 / ones as f64)?,
    );
    let boosted = exact_success_probability(
        &profile,
        ProbabilityPair::new((r0 + beta) / zeros as f64, (r1 - beta) / ones as f64)?,
    );
    let bonus = r1 * r0 * (1.0 - (-beta).exp());
    let rhs = base + bonus;
    let margin = boosted - rhs;
    Ok(Lemma1Outcome {
        lhs: boosted,
        rhs,
        margin,
        satisfied: margin >= -LEMMA_EPSILON,
    })
}

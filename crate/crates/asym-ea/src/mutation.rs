//! Mutation operators over bit strings.
//!
//! Standard mutation flips every bit independently with probability `1/n`.
//! Asymmetric mutation flips every zero-bit with one probability and every
//! one-bit with another; the static variant uses `1/(2 zeros(x))` and
//! `1/(2 ones(x))` so that in expectation half a bit of each value flips.
//!
//! Flip positions are sampled by geometric gap skipping: instead of rolling a
//! Bernoulli per position, the sampler jumps directly to the next flipped
//! position, so one mutation costs time proportional to the number of flips
//! rather than to `n`.

use rand::Rng;

use crate::bitstring::BitString;
use crate::error::{Error, Result};

/// Per-class flip probabilities for asymmetric mutation: `p0` applies to the
/// zero-bits of the parent, `p1` to its one-bits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbabilityPair {
    p0: f64,
    p1: f64,
}

impl ProbabilityPair {
    /// Validates that both probabilities are finite and within `[0, 1]`.
    pub fn new(p0: f64, p1: f64) -> Result<Self> {
        for value in [p0, p1] {
            if !value.is_finite() || !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidProbability { value });
            }
        }
        Ok(ProbabilityPair { p0, p1 })
    }

    /// Flip probability of each zero-bit.
    pub fn p0(&self) -> f64 {
        self.p0
    }

    /// Flip probability of each one-bit.
    pub fn p1(&self) -> f64 {
        self.p1
    }
}

/// The static asymmetric pair `(1/(2 zeros(x)), 1/(2 ones(x)))` for a parent
/// `x`. An empty class gets probability 0, which never matters because there
/// is no bit it could apply to.
pub fn static_pair(x: &BitString) -> ProbabilityPair {
    let zeros = x.count_zeros();
    let ones = x.count_ones();
    let p0 = if zeros == 0 { 0.0 } else { 1.0 / (2.0 * zeros as f64) };
    let p1 = if ones == 0 { 0.0 } else { 1.0 / (2.0 * ones as f64) };
    ProbabilityPair::new(p0, p1).expect("class probabilities are within [0, 1/2]")
}

/// Calls `emit(i)` for every `i` in `0..m` independently with probability `p`,
/// in increasing order, via geometric gap skipping.
fn for_each_success<R: Rng + ?Sized>(m: usize, p: f64, rng: &mut R, mut emit: impl FnMut(usize)) {
    debug_assert!((0.0..=1.0).contains(&p));
    if m == 0 || p <= 0.0 {
        return;
    }
    if p >= 1.0 {
        for i in 0..m {
            emit(i);
        }
        return;
    }
    // Gap to the next success is geometric: P(gap >= k) = (1-p)^k, realized by
    // inverting the CDF. `ln_1p` keeps the denominator accurate for tiny `p`,
    // and `1 - u` maps the unit draw into (0, 1] so the log stays finite.
    let denom = (-p).ln_1p();
    let mut next = 0usize;
    loop {
        let gap = (1.0 - rng.random::<f64>()).ln() / denom;
        if gap >= m as f64 {
            return;
        }
        next += gap as usize;
        if next >= m {
            return;
        }
        emit(next);
        next += 1;
    }
}

/// Samples the positions standard mutation flips: each of `0..n` independently
/// with probability `1/n`. Positions are distinct and increasing.
pub fn sample_standard_flips<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut flips = Vec::new();
    sample_standard_flips_into(n, rng, &mut flips);
    flips
}

pub(crate) fn sample_standard_flips_into<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
    out: &mut Vec<usize>,
) {
    out.clear();
    let p = 1.0 / n as f64;
    for_each_success(n, p, rng, |i| out.push(i));
}

/// Standard mutation: flips every bit of `x` independently with probability
/// `1/n`. With `n = 1` the single bit always flips.
pub fn standard_mutate<R: Rng + ?Sized>(x: &BitString, rng: &mut R) -> BitString {
    let flips = sample_standard_flips(x.len(), rng);
    x.apply_flips(&flips)
        .expect("sampled positions are distinct and in range")
}

/// Positions of a bit string grouped by bit value, with O(1) membership moves.
///
/// The evolutionary algorithm keeps one of these alongside its current search
/// point so each mutation can sample directly within the zero and one classes
/// without rescanning the string.
#[derive(Clone, Debug)]
pub struct ClassIndex {
    zeros: Vec<usize>,
    ones: Vec<usize>,
    /// `slot[pos]` is the index of `pos` inside whichever class vector holds it.
    slot: Vec<usize>,
}

impl ClassIndex {
    /// Builds the index by scanning `x` once.
    pub fn new(x: &BitString) -> Self {
        let mut zeros = Vec::with_capacity(x.count_zeros());
        let mut ones = Vec::with_capacity(x.count_ones());
        let mut slot = vec![0; x.len()];
        for pos in 0..x.len() {
            if x.bit(pos) {
                slot[pos] = ones.len();
                ones.push(pos);
            } else {
                slot[pos] = zeros.len();
                zeros.push(pos);
            }
        }
        ClassIndex { zeros, ones, slot }
    }

    /// Number of zero-bits.
    pub fn zero_count(&self) -> usize {
        self.zeros.len()
    }

    /// Number of one-bits.
    pub fn one_count(&self) -> usize {
        self.ones.len()
    }

    /// The position holding the `k`-th zero-bit (arbitrary but stable order).
    pub fn zero_at(&self, k: usize) -> usize {
        self.zeros[k]
    }

    /// The position holding the `k`-th one-bit (arbitrary but stable order).
    pub fn one_at(&self, k: usize) -> usize {
        self.ones[k]
    }

    /// Moves `position` to the class given by its new bit value. Call after
    /// flipping that bit in the underlying string.
    pub fn record_flip(&mut self, position: usize, now_one: bool) {
        let (from, to) = if now_one {
            (&mut self.zeros, &mut self.ones)
        } else {
            (&mut self.ones, &mut self.zeros)
        };
        let s = self.slot[position];
        debug_assert_eq!(from[s], position);
        let last = from.len() - 1;
        from.swap(s, last);
        self.slot[from[s]] = s;
        from.pop();
        self.slot[position] = to.len();
        to.push(position);
    }
}

/// Samples the positions asymmetric mutation flips: every zero-bit
/// independently with probability `pair.p0`, every one-bit with `pair.p1`.
/// Positions are distinct; zero-class positions come first.
pub fn sample_asymmetric_flips<R: Rng + ?Sized>(
    classes: &ClassIndex,
    pair: ProbabilityPair,
    rng: &mut R,
) -> Vec<usize> {
    let mut flips = Vec::new();
    sample_asymmetric_flips_into(classes, pair, rng, &mut flips);
    flips
}

pub(crate) fn sample_asymmetric_flips_into<R: Rng + ?Sized>(
    classes: &ClassIndex,
    pair: ProbabilityPair,
    rng: &mut R,
    out: &mut Vec<usize>,
) {
    out.clear();
    for_each_success(classes.zero_count(), pair.p0(), rng, |k| {
        out.push(classes.zero_at(k))
    });
    for_each_success(classes.one_count(), pair.p1(), rng, |k| {
        out.push(classes.one_at(k))
    });
}

/// Asymmetric mutation: flips every zero-bit of `x` independently with
/// probability `pair.p0` and every one-bit with `pair.p1`.
pub fn asymmetric_mutate<R: Rng + ?Sized>(
    x: &BitString,
    pair: ProbabilityPair,
    rng: &mut R,
) -> BitString {
    let classes = ClassIndex::new(x);
    let flips = sample_asymmetric_flips(&classes, pair, rng);
    x.apply_flips(&flips)
        .expect("sampled positions are distinct and in range")
}

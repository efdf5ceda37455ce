//! The generalized OneMax family: fitness of `x` against a target `a` is the
//! number of positions where they agree, `f(x) = n - H(x, a)`. The unique
//! optimum is `a` itself, with fitness `n`.

use crate::bitstring::BitString;
use crate::error::{Error, Result};

/// Joint tally of a search point `x` against a target `a`, split by bit value.
///
/// `n_bc` counts positions where `x` has bit `b` and `a` has bit `c`, so `n00`
/// and `n11` are the correct positions while `n01` and `n10` need a flip.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BitProfile {
    /// Positions with `x = 0` and `a = 0` (correct zeros).
    pub n00: usize,
    /// Positions with `x = 0` and `a = 1` (zeros that should flip).
    pub n01: usize,
    /// Positions with `x = 1` and `a = 0` (ones that should flip).
    pub n10: usize,
    /// Positions with `x = 1` and `a = 1` (correct ones).
    pub n11: usize,
}

impl BitProfile {
    /// Total number of positions.
    pub fn len(&self) -> usize {
        self.n00 + self.n01 + self.n10 + self.n11
    }

    /// True when the profile covers no positions.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Fitness of `x`: the number of correct positions.
    pub fn matches(&self) -> usize {
        self.n00 + self.n11
    }

    /// Number of zero-bits in `x`.
    pub fn zeros(&self) -> usize {
        self.n00 + self.n01
    }

    /// Number of one-bits in `x`.
    pub fn ones(&self) -> usize {
        self.n10 + self.n11
    }
}

/// A target point `a` defining the fitness function `f(x) = n - H(x, a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Target {
    point: BitString,
}

impl Target {
    /// Classic OneMax: the target is the all-ones string.
    pub fn all_ones(n: usize) -> Result<Self> {
        Ok(Target {
            point: BitString::ones(n)?,
        })
    }

    /// The target is the all-zeros string.
    pub fn all_zeros(n: usize) -> Result<Self> {
        Ok(Target {
            point: BitString::zeros(n)?,
        })
    }

    /// The target has zeros on the first `n / 2` positions and ones on the
    /// rest (for odd `n` the ones block is one position longer).
    pub fn half_split(n: usize) -> Result<Self> {
        let mut point = BitString::zeros(n)?;
        for index in n / 2..n {
            point.flip(index)?;
        }
        Ok(Target { point })
    }

    /// Parses a target from a literal like `"0110"`.
    pub fn from_pattern(pattern: &str) -> Result<Self> {
        Ok(Target {
            point: pattern.parse()?,
        })
    }

    /// Uses an explicit bit string as the target.
    pub fn from_bits(point: BitString) -> Self {
        Target { point }
    }

    /// Number of bits.
    pub fn len(&self) -> usize {
        self.point.len()
    }

    /// Always false: targets wrap non-empty bit strings.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The unique optimum, which is the target point itself.
    pub fn optimum(&self) -> &BitString {
        &self.point
    }

    /// Fitness of `x`: positions where `x` agrees with the target.
    pub fn eval(&self, x: &BitString) -> Result<usize> {
        Ok(self.len() - x.hamming(&self.point)?)
    }

    /// True when `x` attains the maximum fitness `n`.
    pub fn is_optimum(&self, x: &BitString) -> Result<bool> {
        Ok(self.eval(x)? == self.len())
    }

    /// Tallies `x` against the target into a [`BitProfile`].
    pub fn classify(&self, x: &BitString) -> Result<BitProfile> {
        if x.len() != self.len() {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: self.len(),
            });
        }
        let x_words = x.words();
        let a_words = self.point.words();
        let last = x_words.len() - 1;
        let mut profile = BitProfile {
            n00: 0,
            n01: 0,
            n10: 0,
            n11: 0,
        };
        for (i, (&xw, &aw)) in x_words.iter().zip(a_words).enumerate() {
            // Tail bits above the logical length are zero in both strings, so
            // only the doubly-complemented n00 term needs masking.
            let mask = if i == last { x.last_word_mask() } else { !0 };
            profile.n11 += (xw & aw).count_ones() as usize;
            profile.n10 += (xw & !aw).count_ones() as usize;
            profile.n01 += (!xw & aw).count_ones() as usize;
            profile.n00 += (!xw & !aw & mask).count_ones() as usize;
        }
        Ok(profile)
    }

    /// Unchecked target-bit access for crate-internal hot paths.
    #[inline]
    pub(crate) fn bit(&self, index: usize) -> bool {
        self.point.bit(index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::ChaCha8Rng;
    use rand::SeedableRng;

    #[test]
    fn all_ones_fitness_counts_ones() {
        let target = Target::all_ones(10).unwrap();
        let x: BitString = "0110010001".parse().unwrap();
        assert_eq!(target.eval(&x).unwrap(), x.count_ones());
        assert!(!target.is_optimum(&x).unwrap());
        assert!(target.is_optimum(&BitString::ones(10).unwrap()).unwrap());
    }

    #[test]
    fn all_zeros_fitness_counts_zeros() {
        let target = Target::all_zeros(10).unwrap();
        let x: BitString = "0110010001".parse().unwrap();
        assert_eq!(target.eval(&x).unwrap(), x.count_zeros());
        assert!(target.is_optimum(&BitString::zeros(10).unwrap()).unwrap());
    }

    #[test]
    fn half_split_layout() {
        assert_eq!(Target::half_split(4).unwrap().optimum().to_string(), "0011");
        assert_eq!(
            Target::half_split(5).unwrap().optimum().to_string(),
            "00111"
        );
    }

    #[test]
    fn eval_is_length_minus_hamming() {
        let target = Target::from_pattern("1110").unwrap();
        let x: BitString = "0110".parse().unwrap();
        assert_eq!(target.eval(&x).unwrap(), 3);
        let wrong_len: BitString = "01100".parse().unwrap();
        assert!(matches!(
            target.eval(&wrong_len),
            Err(Error::LengthMismatch { .. })
        ));
    }

    /// Per-position reference implementation for cross-checking the
    /// word-parallel classifier.
    fn classify_naive(target: &Target, x: &BitString) -> BitProfile {
        let mut profile = BitProfile {
            n00: 0,
            n01: 0,
            n10: 0,
            n11: 0,
        };
        for i in 0..x.len() {
            match (x.get(i).unwrap(), target.optimum().get(i).unwrap()) {
                (false, false) => profile.n00 += 1,
                (false, true) => profile.n01 += 1,
                (true, false) => profile.n10 += 1,
                (true, true) => profile.n11 += 1,
            }
        }
        profile
    }

    #[test]
    fn classify_matches_naive_reference_across_word_boundaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in [1, 3, 63, 64, 65, 128, 200] {
            let target =
                Target::from_bits(BitString::random_uniform(n, &mut rng).unwrap());
            for _ in 0..20 {
                let x = BitString::random_uniform(n, &mut rng).unwrap();
                let profile = target.classify(&x).unwrap();
                assert_eq!(profile, classify_naive(&target, &x), "n = {n}");
                assert_eq!(profile.len(), n);
                assert_eq!(profile.matches(), target.eval(&x).unwrap());
                assert_eq!(profile.zeros(), x.count_zeros());
                assert_eq!(profile.ones(), x.count_ones());
            }
        }
    }

    #[test]
    fn classify_example_by_hand() {
        let target = Target::from_pattern("1100110").unwrap();
        let x: BitString = "1010101".parse().unwrap();
        let profile = target.classify(&x).unwrap();
        assert_eq!(
            profile,
            BitProfile {
                n00: 1,
                n01: 2,
                n10: 2,
                n11: 2
            }
        );
        assert_eq!(profile.matches(), target.eval(&x).unwrap());
    }
}

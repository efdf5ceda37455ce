//! Packed bit strings with cached population counts.
//!
//! Positions are numbered `0..n` and position 0 is the leftmost character in
//! the textual form, so `"0110"` has a one at positions 1 and 2. Bits are
//! stored LSB-first inside 64-bit words; any bits above the logical length are
//! kept at zero so whole-word operations never see garbage.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

/// A fixed-length string of bits with O(1) access to its number of ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
    ones: usize,
}

impl BitString {
    /// Creates a bit string of `n` zeros. Fails for `n = 0`.
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroLength);
        }
        Ok(BitString {
            words: vec![0; n.div_ceil(WORD_BITS)],
            len: n,
            ones: 0,
        })
    }

    /// Creates a bit string of `n` ones. Fails for `n = 0`.
    pub fn ones(n: usize) -> Result<Self> {
        let mut bits = Self::zeros(n)?;
        for word in &mut bits.words {
            *word = !0;
        }
        let last = bits.words.len() - 1;
        bits.words[last] &= tail_mask(n);
        bits.ones = n;
        Ok(bits)
    }

    /// Draws a bit string of length `n` uniformly at random. Fails for `n = 0`.
    pub fn random_uniform<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        let mut bits = Self::zeros(n)?;
        for word in &mut bits.words {
            *word = rng.random::<u64>();
        }
        let last = bits.words.len() - 1;
        bits.words[last] &= tail_mask(n);
        bits.ones = bits.words.iter().map(|w| w.count_ones() as usize).sum();
        Ok(bits)
    }

    /// Number of bits.
    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false: zero-length strings cannot be constructed.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of one-bits.
    pub fn count_ones(&self) -> usize {
        self.ones
    }

    /// Number of zero-bits.
    pub fn count_zeros(&self) -> usize {
        self.len - self.ones
    }

    /// Returns the bit at `index`, or an error if `index >= len`.
    pub fn get(&self, index: usize) -> Result<bool> {
        if index >= self.len {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.len,
            });
        }
        Ok(self.bit(index))
    }

    /// Unchecked bit access for crate-internal hot paths.
    #[inline]
    pub(crate) fn bit(&self, index: usize) -> bool {
        debug_assert!(index < self.len);
        self.words[index / WORD_BITS] >> (index % WORD_BITS) & 1 == 1
    }

    /// Flips the bit at `index` in place, or errors if `index >= len`.
    pub fn flip(&mut self, index: usize) -> Result<()> {
        if index >= self.len {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.len,
            });
        }
        let mask = 1u64 << (index % WORD_BITS);
        let word = &mut self.words[index / WORD_BITS];
        *word ^= mask;
        if *word & mask == 0 {
            self.ones -= 1;
        } else {
            self.ones += 1;
        }
        Ok(())
    }

    /// Returns a copy with every position in `positions` flipped.
    ///
    /// `positions` is interpreted as a set and must not contain duplicates;
    /// any out-of-range position yields an error and leaves nothing mutated.
    pub fn apply_flips(&self, positions: &[usize]) -> Result<Self> {
        debug_assert!(distinct(positions), "flip positions must be distinct");
        for &index in positions {
            if index >= self.len {
                return Err(Error::IndexOutOfRange {
                    index,
                    len: self.len,
                });
            }
        }
        let mut flipped = self.clone();
        for &index in positions {
            flipped
                .flip(index)
                .expect("positions were bounds-checked above");
        }
        Ok(flipped)
    }

    /// Hamming distance to `other`, or an error if the lengths differ.
    pub fn hamming(&self, other: &Self) -> Result<usize> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum())
    }

    /// Raw words, LSB-first, with all bits above `len` guaranteed zero.
    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    /// Mask selecting the valid bits of the final word.
    pub(crate) fn last_word_mask(&self) -> u64 {
        tail_mask(self.len)
    }
}

fn tail_mask(n: usize) -> u64 {
    let rem = n % WORD_BITS;
    if rem == 0 {
        !0
    } else {
        (1u64 << rem) - 1
    }
}

#[cfg(debug_assertions)]
fn distinct(positions: &[usize]) -> bool {
    let mut seen = std::collections::HashSet::new();
    positions.iter().all(|p| seen.insert(p))
}

#[cfg(not(debug_assertions))]
fn distinct(_positions: &[usize]) -> bool {
    true
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for index in 0..self.len {
            f.write_str(if self.bit(index) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = BitString::zeros(s.chars().count())?;
        for (index, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits.flip(index)?,
                _ => return Err(Error::InvalidBitChar { ch }),
            }
        }
        Ok(bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::ConstWords;
    use rand_chacha::ChaCha8Rng;
    use rand::SeedableRng;

    #[test]
    fn zero_length_is_rejected_everywhere() {
        assert!(matches!(BitString::zeros(0), Err(Error::ZeroLength)));
        assert!(matches!(BitString::ones(0), Err(Error::ZeroLength)));
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            BitString::random_uniform(0, &mut rng),
            Err(Error::ZeroLength)
        ));
        assert!(matches!(BitString::from_str(""), Err(Error::ZeroLength)));
    }

    #[test]
    fn constructors_report_expected_counts() {
        for n in [1, 63, 64, 65, 130] {
            let z = BitString::zeros(n).unwrap();
            assert_eq!((z.len(), z.count_ones(), z.count_zeros()), (n, 0, n));
            let o = BitString::ones(n).unwrap();
            assert_eq!((o.len(), o.count_ones(), o.count_zeros()), (n, n, 0));
        }
    }

    #[test]
    fn tail_bits_stay_zero_after_forced_all_ones_draw() {
        for n in [1, 63, 64, 65, 127, 128, 129] {
            let bits = BitString::random_uniform(n, &mut ConstWords(!0)).unwrap();
            assert_eq!(bits.count_ones(), n, "n = {n}");
            assert_eq!(bits, BitString::ones(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn display_puts_position_zero_leftmost() {
        let mut bits = BitString::zeros(4).unwrap();
        bits.flip(1).unwrap();
        bits.flip(2).unwrap();
        assert_eq!(bits.to_string(), "0110");
    }

    #[test]
    fn parse_roundtrips_and_rejects_junk() {
        let text = "0100111010";
        let bits: BitString = text.parse().unwrap();
        assert_eq!(bits.to_string(), text);
        assert_eq!(bits.count_ones(), 5);
        assert!(matches!(
            BitString::from_str("0102"),
            Err(Error::InvalidBitChar { ch: '2' })
        ));
    }

    #[test]
    fn flip_maintains_counts_and_rejects_out_of_range() {
        let mut bits = BitString::zeros(70).unwrap();
        bits.flip(69).unwrap();
        assert_eq!(bits.count_ones(), 1);
        assert!(bits.get(69).unwrap());
        bits.flip(69).unwrap();
        assert_eq!(bits.count_ones(), 0);
        assert!(matches!(
            bits.flip(70),
            Err(Error::IndexOutOfRange { index: 70, len: 70 })
        ));
    }

    #[test]
    fn apply_flips_is_out_of_place_and_validates_positions() {
        let bits: BitString = "0000".parse().unwrap();
        let flipped = bits.apply_flips(&[0, 3]).unwrap();
        assert_eq!(bits.to_string(), "0000");
        assert_eq!(flipped.to_string(), "1001");
        assert!(matches!(
            bits.apply_flips(&[1, 4]),
            Err(Error::IndexOutOfRange { index: 4, len: 4 })
        ));
    }

    #[test]
    fn hamming_counts_differing_positions() {
        let a: BitString = "0101".parse().unwrap();
        let b: BitString = "0011".parse().unwrap();
        assert_eq!(a.hamming(&b).unwrap(), 2);
        assert_eq!(a.hamming(&a).unwrap(), 0);
        let c: BitString = "01010".parse().unwrap();
        assert!(matches!(
            a.hamming(&c),
            Err(Error::LengthMismatch { left: 4, right: 5 })
        ));
    }

    #[test]
    fn random_uniform_is_reproducible_for_equal_seeds() {
        let mut rng_a = ChaCha8Rng::seed_from_u64(42);
        let mut rng_b = ChaCha8Rng::seed_from_u64(42);
        let a = BitString::random_uniform(1000, &mut rng_a).unwrap();
        let b = BitString::random_uniform(1000, &mut rng_b).unwrap();
        assert_eq!(a, b);
    }
}

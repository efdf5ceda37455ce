//! Deterministic RNGs for forcing specific random outcomes in tests.

/// RNG that repeats one 64-bit word forever; used to force bit patterns and
/// coin flips.
pub(crate) struct ConstWords(pub u64);

impl rand::RngCore for ConstWords {
    fn next_u32(&mut self) -> u32 {
        self.0 as u32
    }

    fn next_u64(&mut self) -> u64 {
        self.0
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        for chunk in dest.chunks_mut(8) {
            let bytes = self.0.to_le_bytes();
            chunk.copy_from_slice(&bytes[..chunk.len()]);
        }
    }
}

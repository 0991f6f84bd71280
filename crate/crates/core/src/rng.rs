//! Deterministic, platform-independent pseudo-randomness.
//!
//! Everything random in this crate derives from SplitMix64, written in its
//! random-access form: the k-th output of the stream identified by `seed` is
//! `mix64(seed + (k + 1) * GOLDEN)`, where `mix64` is the SplitMix64
//! finalizer and GOLDEN = 0x9E3779B97F4A7C15. Only wrapping 64-bit integer
//! arithmetic is used, so identical seeds give bit-identical values on every
//! platform.
//!
//! Stream-split rule: the value consumed by position `i` of a transmission
//! with seed `s` is `stream_value(s, i)`; child seeds (per trial, per
//! purpose) are themselves stream values, `stream_value(parent, tag)`.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The `index`-th output of the SplitMix64 stream identified by `seed`.
#[inline]
pub fn stream_value(seed: u64, index: u64) -> u64 {
    mix64(seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN)))
}

/// Sequential SplitMix64 generator, for shuffles and one-off draws.
/// `next_u64` walks the same stream that `stream_value(seed, k)` indexes.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix64(self.state)
    }

    /// Unbiased integer in `[0, n)` via Lemire's multiply-shift with
    /// rejection. `n` must be nonzero.
    pub fn next_below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        let threshold = n.wrapping_neg() % n;
        loop {
            let wide = u128::from(self.next_u64()) * u128::from(n);
            if (wide as u64) >= threshold {
                return (wide >> 64) as u64;
            }
        }
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.next_below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stream_matches_sequential_generator() {
        let mut rng = SplitMix64::new(12345);
        for k in 0..32 {
            assert_eq!(rng.next_u64(), stream_value(12345, k));
        }
    }

    // Reference outputs of the standard SplitMix64 sequence for seed 0;
    // pins the generator against accidental algorithm changes.
    #[test]
    fn known_answer_vector() {
        let mut rng = SplitMix64::new(0);
        assert_eq!(rng.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(rng.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(rng.next_u64(), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn next_below_stays_in_range_and_covers() {
        let mut rng = SplitMix64::new(7);
        let mut seen = [false; 6];
        for _ in 0..1000 {
            let v = rng.next_below(6) as usize;
            assert!(v < 6);
            seen[v] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn shuffle_is_a_permutation() {
        let mut rng = SplitMix64::new(99);
        let mut items: Vec<u32> = (0..50).collect();
        rng.shuffle(&mut items);
        let mut sorted = items.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..50).collect::<Vec<_>>());
        assert_ne!(items, (0..50).collect::<Vec<_>>());
    }
}

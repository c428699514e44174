/// Additive constant of the SplitMix64 generator (odd 64-bit golden ratio).
pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// SplitMix64 output function applied to `key`, i.e. the first output of a
/// SplitMix64 generator seeded with `key`.
#[inline]
pub fn scramble(key: u64) -> u64 {
    mix64(key.wrapping_add(GOLDEN_GAMMA))
}

/// The SplitMix64 pseudo-random generator.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform integer in `[0, bound)` by multiply-shift; `bound` must be nonzero.
    #[inline]
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }

    /// Fisher-Yates shuffle, drawing from the back of the slice forward.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_outputs() {
        assert_eq!(scramble(0), 0xE220_A839_7B1D_CDAF);
        let mut g = SplitMix64::new(0);
        assert_eq!(g.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(scramble(12345), scramble(12345));
    }

    #[test]
    fn shuffle_hits_every_permutation_evenly() {
        let mut counts = [0u32; 6];
        for seed in 0..60_000 {
            let mut v = [0u8, 1, 2];
            SplitMix64::new(seed).shuffle(&mut v);
            let rank = match v {
                [0, 1, 2] => 0,
                [0, 2, 1] => 1,
                [1, 0, 2] => 2,
                [1, 2, 0] => 3,
                [2, 0, 1] => 4,
                _ => 5,
            };
            counts[rank] += 1;
        }
        for c in counts {
            assert!((c as f64 / 60_000.0 - 1.0 / 6.0).abs() < 0.01, "{counts:?}");
        }
    }

    #[test]
    fn avalanche() {
        // Flip one input bit per sample and count how often each output bit changes.
        const SAMPLES: u64 = 1_000_000;
        let mut flips = [0u64; 64];
        for k in 0..SAMPLES {
            let diff = scramble(k) ^ scramble(k ^ (1 << (k % 64)));
            for (b, f) in flips.iter_mut().enumerate() {
                *f += (diff >> b) & 1;
            }
        }
        for (b, f) in flips.iter().enumerate() {
            let rate = *f as f64 / SAMPLES as f64;
            assert!((0.49..=0.51).contains(&rate), "bit {b}: {rate}");
        }
    }
}

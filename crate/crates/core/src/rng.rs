//! A small deterministic generator (SplitMix64) used wherever "random" test
//! vectors or sample points are needed. Keeping it in-tree makes every
//! randomized check byte-for-byte reproducible across platforms and releases.

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound` (bound > 0).
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    /// Small signed integer in `[-span, span]`, never zero if `nonzero` is set.
    pub fn small_int(&mut self, span: u64, nonzero: bool) -> i64 {
        loop {
            let v = self.below(2 * span + 1) as i64 - span as i64;
            if v != 0 || !nonzero {
                return v;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_stream() {
        let mut a = SplitMix64::new(7);
        let mut b = SplitMix64::new(7);
        for _ in 0..32 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn small_int_respects_span() {
        let mut r = SplitMix64::new(1);
        for _ in 0..200 {
            let v = r.small_int(3, true);
            assert!(v != 0 && (-3..=3).contains(&v));
        }
    }
}

//! SplitMix64 generator used for instance generation.
//!
//! Instances must reproduce bit-exactly across runs, platforms, and
//! reimplementations in other languages, so the generator is pinned to this
//! exact algorithm instead of going through an external RNG crate whose
//! stream could change between versions.

/// SplitMix64, seeded directly with the user-supplied seed.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from `[0, range)` by rejection sampling, so the
    /// distribution is exactly uniform and independent of `range`.
    pub fn next_below(&mut self, range: u64) -> u64 {
        assert!(range > 0, "empty range");
        // Largest multiple of `range` representable in u64.
        let zone = u64::MAX - (u64::MAX % range);
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % range;
            }
        }
    }

    /// Uniform draw from the inclusive range `[lo, hi]`.
    pub fn uniform(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi, "inverted range");
        let span = (hi as i128 - lo as i128 + 1) as u64;
        lo.wrapping_add(self.next_below(span) as i64)
    }

    /// `count` distinct values from `[0, n)`, returned sorted ascending.
    pub fn distinct_sorted(&mut self, n: u64, count: usize) -> Vec<u64> {
        assert!(count as u64 <= n, "cannot draw {count} distinct values from {n}");
        let mut picked = std::collections::BTreeSet::new();
        while picked.len() < count {
            picked.insert(self.next_below(n));
        }
        picked.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_stream() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn seeds_differ() {
        let mut a = SplitMix64::new(1);
        let mut b = SplitMix64::new(2);
        assert_ne!(a.next_u64(), b.next_u64());
    }

    #[test]
    fn uniform_stays_in_range() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..10_000 {
            let v = rng.uniform(-50, 50);
            assert!((-50..=50).contains(&v));
        }
    }

    #[test]
    fn distinct_sorted_has_no_duplicates() {
        let mut rng = SplitMix64::new(3);
        let picks = rng.distinct_sorted(100, 10);
        assert_eq!(picks.len(), 10);
        for w in picks.windows(2) {
            assert!(w[0] < w[1]);
        }
    }
}

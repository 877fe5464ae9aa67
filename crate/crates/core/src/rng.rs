//! A 64-bit linear congruential generator with fixed constants, so sampled data are reproducible
//! bit for bit in any language.
//!
//! `state <- state * 6364136223846793005 + 1442695040888963407 (mod 2^64)`, starting from the
//! seed itself. Derived draws:
//! - `next_u32` is the top 32 bits of the new state;
//! - `below(n)` is `(next_u32 * n) >> 32`;
//! - `next_f64` is the top 53 bits of the new state times `2^-53`, in `[0, 1)`.

/// Multiplier of the generator.
pub const LCG_MULTIPLIER: u64 = 6364136223846793005;
/// Increment of the generator.
pub const LCG_INCREMENT: u64 = 1442695040888963407;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(LCG_MULTIPLIER).wrapping_add(LCG_INCREMENT);
        self.state
    }

    pub fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }

    /// Uniform in `0..n` for `n <= 2^32`.
    pub fn below(&mut self, n: u64) -> u64 {
        (self.next_u32() as u64 * n) >> 32
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_states_from_seed_one() {
        let mut r = Lcg::new(1);
        assert_eq!(r.next_u64(), 7806831264735756412);
        assert_eq!(r.next_u64(), 9396908728118811419);
    }

    #[test]
    fn below_stays_in_range() {
        let mut r = Lcg::new(7);
        assert!((0..1000).all(|_| r.below(3) < 3));
        assert!((0..1000).all(|_| (0.0..1.0).contains(&r.next_f64())));
    }
}

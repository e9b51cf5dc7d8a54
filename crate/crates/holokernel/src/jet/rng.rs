//! Deterministic splitmix64-based generator for small rational jet data.

use super::xpoly::{rat, Rat};

pub struct SmallRng {
    state: u64,
}

impl SmallRng {
    pub fn new(seed: u64) -> Self {
        SmallRng {
            state: seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(0xD1B54A32D192ED03),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Rational with numerator in [-5, 5] and denominator in [1, 4].
    pub fn small_rational(&mut self) -> Rat {
        let num = (self.next_u64() % 11) as i64 - 5;
        let den = (self.next_u64() % 4) as i64 + 1;
        rat(num, den)
    }

    /// Small rational that is nonzero.
    pub fn small_rational_nonzero(&mut self) -> Rat {
        loop {
            let r = self.small_rational();
            if !num_traits::Zero::is_zero(&r) {
                return r;
            }
        }
    }

    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let mut a = SmallRng::new(7);
        let mut b = SmallRng::new(7);
        for _ in 0..10 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }
}

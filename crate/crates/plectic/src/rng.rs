//! A small deterministic PRNG (splitmix64) so that randomized suites are
//! reproducible bit-for-bit across runs and platforms.

#[derive(Clone, Debug)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in lo..hi (exclusive).
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo < hi);
        let span = (hi - lo) as u64;
        lo + (self.next_u64() % span) as i64
    }

    pub fn usize(&mut self, hi: usize) -> usize {
        assert!(hi > 0);
        (self.next_u64() % hi as u64) as usize
    }

    /// A small rational with numerator in −max..=max and denominator 1..=den.
    pub fn rat(&mut self, max: i64, den: i64) -> crate::rational::Rat {
        let n = self.range(-max, max + 1);
        let d = self.range(1, den + 1);
        crate::rational::rat(n, d)
    }
}

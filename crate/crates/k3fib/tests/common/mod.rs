//! Deterministic randomness for the property suites (splitmix64).

use k3fib::exactalg::{QPoly, Rat, RatFunc, UniPoly};

pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in lo..=hi.
    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    pub fn rat(&mut self) -> Rat {
        k3fib::exactalg::rat(self.int(-9, 9), self.int(1, 9))
    }

    pub fn poly(&mut self, max_deg: usize) -> QPoly {
        let deg = self.int(0, max_deg as i64) as usize;
        let coeffs: Vec<Rat> = (0..=deg).map(|_| self.rat()).collect();
        UniPoly::from_coeffs(coeffs)
    }

    pub fn nonzero_poly(&mut self, max_deg: usize) -> QPoly {
        loop {
            let p = self.poly(max_deg);
            if !p.is_zero() {
                return p;
            }
        }
    }

    #[allow(dead_code)]
    pub fn ratfunc(&mut self, max_deg: usize) -> RatFunc<Rat> {
        RatFunc::new(self.poly(max_deg), self.nonzero_poly(max_deg)).unwrap()
    }
}

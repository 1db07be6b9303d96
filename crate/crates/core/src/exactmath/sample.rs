//! Seeded generation of small exact scalars for sampling-based checks.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Field, GaussianRational, Rational};

/// Default seed used by every sampling check unless overridden.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

/// Deterministic source of small Gaussian rationals.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Derives an independent stream for a named sub-check, so adding a
    /// check does not perturb the samples drawn by the others.
    pub fn for_label(seed: u64, label: &str) -> Self {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in label.bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        Self::new(seed ^ h)
    }

    pub fn rational(&mut self) -> Rational {
        let num: i64 = self.rng.gen_range(-9..=9);
        let den: i64 = self.rng.gen_range(1..=5);
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !Field::is_zero(&r) {
                return r;
            }
        }
    }

    /// A nonzero Gaussian rational; about a third of the draws have a
    /// nonzero imaginary part.
    pub fn nonzero(&mut self) -> GaussianRational {
        let re = self.rational();
        let im = if self.rng.gen_ratio(1, 3) {
            self.nonzero_rational()
        } else {
            Rational::from_integer(BigInt::from(0))
        };
        let z = GaussianRational::new(re, im);
        if z.is_zero() {
            GaussianRational::from_rational(self.nonzero_rational())
        } else {
            z
        }
    }

    /// A Gaussian rational that may be zero.
    pub fn any(&mut self) -> GaussianRational {
        if self.rng.gen_ratio(1, 6) {
            GaussianRational::zero()
        } else {
            self.nonzero()
        }
    }

    /// An integer in `-2..=2`, for inputs whose size should stay small
    /// under repeated products.
    pub fn small(&mut self) -> GaussianRational {
        GaussianRational::from_int(self.rng.gen_range(-2..=2))
    }

    pub fn nonzero_real(&mut self) -> GaussianRational {
        GaussianRational::from_rational(self.nonzero_rational())
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}

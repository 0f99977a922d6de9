//! Deterministic random rationals for the identity suites.
//!
//! Numerators are drawn from `[-20, 20]` and denominators from `[1, 10]`.
//! Each trial owns an independent ChaCha stream, so results do not depend on
//! the order in which trials run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::Rational;
use crate::vertex::{BoundaryVector, BoundaryVectors, Side};

pub const NUMERATOR_BOUND: i64 = 20;
pub const DENOMINATOR_BOUND: i64 = 10;

#[derive(Clone, Debug)]
pub struct RationalSampler {
    rng: ChaCha8Rng,
}

impl RationalSampler {
    pub fn new(seed: u64) -> Self {
        RationalSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Sampler for one trial: same seed, separate stream.
    pub fn for_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RationalSampler { rng }
    }

    fn ratio(&mut self, lo: i64, hi: i64) -> Rational {
        let numer = self.rng.gen_range(lo..=hi);
        let denom = self.rng.gen_range(1..=DENOMINATOR_BOUND);
        Rational::new(numer, denom).expect("denominator is positive")
    }

    pub fn rational(&mut self) -> Rational {
        self.ratio(-NUMERATOR_BOUND, NUMERATOR_BOUND)
    }

    pub fn nonzero(&mut self) -> Rational {
        loop {
            let x = self.rational();
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn positive(&mut self) -> Rational {
        self.ratio(1, NUMERATOR_BOUND)
    }

    pub fn nonnegative(&mut self) -> Rational {
        self.ratio(0, NUMERATOR_BOUND)
    }

    pub fn rationals(&mut self, count: usize) -> Vec<Rational> {
        (0..count).map(|_| self.rational()).collect()
    }

    /// `count` pairwise distinct rationals.
    pub fn distinct(&mut self, count: usize) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::with_capacity(count);
        while out.len() < count {
            let x = self.rational();
            if !out.contains(&x) {
                out.push(x);
            }
        }
        out
    }

    /// `count` strictly increasing rationals.
    pub fn increasing(&mut self, count: usize) -> Vec<Rational> {
        let mut out = self.distinct(count);
        out.sort();
        out
    }

    pub fn vector(&mut self, side: Side) -> BoundaryVector {
        BoundaryVector::new(side, self.rational(), self.rational())
    }

    pub fn nonnegative_vector(&mut self, side: Side) -> BoundaryVector {
        BoundaryVector::new(side, self.nonnegative(), self.nonnegative())
    }

    pub fn vectors(&mut self) -> BoundaryVectors {
        BoundaryVectors {
            north: self.vector(Side::North),
            east: self.vector(Side::East),
            south: self.vector(Side::South),
            west: self.vector(Side::West),
        }
    }

    pub fn nonnegative_vectors(&mut self) -> BoundaryVectors {
        BoundaryVectors {
            north: self.nonnegative_vector(Side::North),
            east: self.nonnegative_vector(Side::East),
            south: self.nonnegative_vector(Side::South),
            west: self.nonnegative_vector(Side::West),
        }
    }
}

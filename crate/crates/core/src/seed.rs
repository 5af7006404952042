//! Deterministic seed derivation for the seeded generators.
//!
//! Generators are pure functions of `(seed, size)`. Distinct sampling slots
//! (the `a`/`b`/`c`/`r` positions of a law case, the two halves of a pair,
//! the entries of a generated vector) derive child seeds with [`mix`], so
//! concurrent or re-ordered evaluation cannot change what is generated.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::value::Rational;

/// SplitMix64 finalizer; a cheap, well-distributed seed combiner.
pub fn mix(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw from `0..=max`.
pub fn gen_range_u(rng: &mut ChaCha8Rng, max: u64) -> u64 {
    rng.gen_range(0..=max)
}

/// Uniform draw from `-bound..=bound`.
pub fn gen_range_i(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

/// Nonnegative rational with numerator `0..=size` and denominator `1..=size.max(1)`.
pub fn gen_nonneg_rational(rng: &mut ChaCha8Rng, size: u32) -> Rational {
    let size = size.max(1) as u64;
    let num = gen_range_u(rng, size) as i64;
    let den = rng.gen_range(1..=size) as i64;
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Strictly positive rational with numerator and denominator in `1..=size.max(1)`.
pub fn gen_positive_rational(rng: &mut ChaCha8Rng, size: u32) -> Rational {
    let size = size.max(1) as u64;
    let num = rng.gen_range(1..=size) as i64;
    let den = rng.gen_range(1..=size) as i64;
    Rational::new(BigInt::from(num), BigInt::from(den))
}

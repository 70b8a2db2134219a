#![allow(dead_code)]

use ark_ec::{CurveGroup, PrimeGroup};
use ark_ff::UniformRand;
use flexproofs::algebra::{G1Affine, Scalar, G1};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Test-data RNG, offset so it never replays a seeded setup's trapdoors.
pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed ^ 0x7e57_da7a_0000_0000)
}

pub fn scalars(len: usize, rng: &mut impl Rng) -> Vec<Scalar> {
    (0..len).map(|_| Scalar::rand(rng)).collect()
}

pub fn g1s(len: usize, rng: &mut impl Rng) -> Vec<G1Affine> {
    scalars(len, rng)
        .into_iter()
        .map(|s| (G1::generator() * s).into_affine())
        .collect()
}

/// `Σ a[i]·b[i]` computed one term at a time.
pub fn naive_mexp(a: &[G1Affine], b: &[Scalar]) -> G1Affine {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(G1::default(), |acc, (p, s)| acc + *p * s)
        .into_affine()
}

pub fn flip_bit(bytes: &[u8], bit: usize) -> Vec<u8> {
    let mut out = bytes.to_vec();
    out[bit / 8] ^= 1 << (bit % 8);
    out
}

/// Flips `trials` distinct random bits of `bytes` one at a time and
/// returns how many of the corrupted encodings `accepts` let through.
pub fn bit_flip_survivors(bytes: &[u8], trials: usize, seed: u64, accepts: impl Fn(&[u8]) -> bool) -> usize {
    let mut rng = rng(seed);
    let mut bits: Vec<usize> = (0..bytes.len() * 8).collect();
    // partial Fisher–Yates for distinct positions
    let trials = trials.min(bits.len());
    for k in 0..trials {
        let j = rng.gen_range(k..bits.len());
        bits.swap(k, j);
    }
    bits[..trials]
        .iter()
        .filter(|&&bit| accepts(&flip_bit(bytes, bit)))
        .count()
}

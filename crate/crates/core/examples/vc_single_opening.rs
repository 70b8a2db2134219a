//! A prover that keeps its vector, answers opening requests from a cache,
//! and ships openings as bytes to an independent verifier.

use ark_ff::{One, UniformRand};
use flexproofs::algebra::Scalar;
use flexproofs::vc::{self, Prover, VcOpening, VcParams};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn main() -> flexproofs::Result<()> {
    let mut rng = ChaCha20Rng::seed_from_u64(5);
    let pp = VcParams::setup(256, 4, &mut rng)?;
    let m: Vec<Scalar> = (0..256).map(|_| Scalar::rand(&mut rng)).collect();
    let prover = Prover::new(pp.clone(), m.clone())?;
    let c = prover.commitment();

    for i in [0, 99, 255] {
        let bytes = prover.open(i)?.to_bytes();
        let opening = VcOpening::from_bytes(&bytes)?;
        println!(
            "index {i}: {} bytes, honest value {}, wrong value {}",
            bytes.len(),
            vc::verify(&pp, &c, i, m[i], &opening)?,
            vc::verify(&pp, &c, i, m[i] + Scalar::one(), &opening)?
        );
    }
    Ok(())
}

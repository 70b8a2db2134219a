//! Prove the value of the vector's multilinear extension at a point, as a
//! SNARK consuming the committed vector would need.

use ark_ff::UniformRand;
use flexproofs::algebra::{MultilinearPoly, Scalar};
use flexproofs::mle_opening;
use flexproofs::vc::{self, VcParams};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn main() -> flexproofs::Result<()> {
    let mut rng = ChaCha20Rng::seed_from_u64(7);
    let n = 1 << 10;
    let pp = VcParams::setup(n, 1, &mut rng)?;
    let m: Vec<Scalar> = (0..n).map(|_| Scalar::rand(&mut rng)).collect();
    let (c, aux) = vc::commit(&pp, &m)?;

    let r: Vec<Scalar> = (0..10).map(|_| Scalar::rand(&mut rng)).collect();
    let proof = mle_opening::prove(&pp, &c, &aux, &r)?;
    let expected = MultilinearPoly::new(m)?.evaluate(&r)?;
    println!("value matches direct evaluation: {}", proof.y == expected);
    println!(
        "{} byte proof verifies: {}",
        proof.size_bytes(),
        mle_opening::verify(&pp, &c, &r, &proof)?
    );
    Ok(())
}

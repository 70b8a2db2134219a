//! Open a set of positions of a committed G1 vector; the verifier folds the
//! unit vectors in O(|I|·log n) field operations.

use ark_ec::{CurveGroup, PrimeGroup};
use ark_ff::UniformRand;
use flexproofs::algebra::{G1Affine, Scalar, G1};
use flexproofs::fc::{self, FcParams};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn main() -> flexproofs::Result<()> {
    let mut rng = ChaCha20Rng::seed_from_u64(2);
    let n = 256;
    let pp = FcParams::setup(n, &mut rng)?;
    let a: Vec<G1Affine> = (0..n)
        .map(|_| (G1::generator() * Scalar::rand(&mut rng)).into_affine())
        .collect();
    let c = fc::commit(&pp, &a)?;

    let indices = [7, 100, 101, 255];
    let ys: Vec<G1Affine> = indices.iter().map(|&i| a[i]).collect();
    let proof = fc::batch_open_units(&pp, &c, &a, &indices, &ys)?;
    println!("positions {indices:?}: {} byte proof", proof.to_bytes().len());
    println!("verifies: {}", fc::batch_verify_units(&pp, &c, &indices, &ys, &proof)?);
    println!(
        "shifted positions: {}",
        fc::batch_verify_units(&pp, &c, &[8, 100, 101, 255], &ys, &proof)?
    );
    Ok(())
}

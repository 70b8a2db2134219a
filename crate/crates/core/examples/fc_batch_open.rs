//! Commit to a vector of G1 elements and prove several inner products with
//! it in one constant-size proof.

use ark_ec::{CurveGroup, PrimeGroup};
use ark_ff::UniformRand;
use flexproofs::algebra::{G1Affine, Scalar, G1};
use flexproofs::fc::{self, FcParams};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn main() -> flexproofs::Result<()> {
    let mut rng = ChaCha20Rng::seed_from_u64(1);
    let n = 64;
    let pp = FcParams::setup(n, &mut rng)?;
    let a: Vec<G1Affine> = (0..n)
        .map(|_| (G1::generator() * Scalar::rand(&mut rng)).into_affine())
        .collect();
    let c = fc::commit(&pp, &a)?;

    // t claims y_i = ⟨A, b_i⟩
    let t = 8;
    let bs: Vec<Vec<Scalar>> = (0..t)
        .map(|_| (0..n).map(|_| Scalar::rand(&mut rng)).collect())
        .collect();
    let ys: Vec<G1Affine> = bs
        .iter()
        .map(|b| {
            a.iter()
                .zip(b)
                .fold(G1::default(), |acc, (p, s)| acc + *p * s)
                .into_affine()
        })
        .collect();

    let proof = fc::batch_open(&pp, &c, &a, &bs, &ys)?;
    println!("{t} claims over n = {n}: proof is {} bytes", proof.to_bytes().len());
    println!("verifies: {}", fc::batch_verify(&pp, &c, &bs, &ys, &proof)?);

    let mut wrong = ys.clone();
    wrong[3] = a[0];
    println!(
        "with one claim altered: {}",
        fc::batch_verify(&pp, &c, &bs, &wrong, &proof)?
    );
    Ok(())
}

//! Evaluation proofs for a multilinear polynomial: one at a random point,
//! and all 2^k hypercube points at once with the shared quotient tree.

use ark_ff::UniformRand;
use flexproofs::algebra::{bin_point, MultilinearPoly, Scalar};
use flexproofs::pc::{self, PcParams};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use std::time::Instant;

fn main() -> flexproofs::Result<()> {
    let mut rng = ChaCha20Rng::seed_from_u64(3);
    let k = 8;
    let pp = PcParams::setup(k, &mut rng);
    let f = MultilinearPoly::new((0..1 << k).map(|_| Scalar::rand(&mut rng)).collect())?;
    let c = pc::commit(&pp, &f)?;

    let r: Vec<Scalar> = (0..k).map(|_| Scalar::rand(&mut rng)).collect();
    let (y, proof) = pc::eval(&pp, &f, &r)?;
    println!(
        "f(r) proven with {} bytes: {}",
        proof.size_bytes(),
        pc::verify(&pp, &c, &r, y, &proof)?
    );

    let start = Instant::now();
    let all = pc::hyper_eval(&pp, &f)?;
    println!("{} hypercube proofs in {:.2?}", all.len(), start.elapsed());
    let ok = all
        .iter()
        .enumerate()
        .step_by(37)
        .all(|(i, (y, p))| pc::verify(&pp, &c, &bin_point(i, k).unwrap(), *y, p).unwrap());
    println!("sampled proofs verify: {ok}");
    Ok(())
}

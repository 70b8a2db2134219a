//! Commit to a vector of field elements, generate every opening proof in
//! one pass, and verify each of them.

use ark_ff::UniformRand;
use flexproofs::algebra::Scalar;
use flexproofs::vc::{self, VcParams};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use std::time::Instant;

fn main() -> flexproofs::Result<()> {
    let mut rng = ChaCha20Rng::seed_from_u64(4);
    let n = 1 << 10;
    // batch size b: larger blocks mean fewer FC proofs but bigger openings
    let pp = VcParams::setup(n, 10, &mut rng)?;
    let m: Vec<Scalar> = (0..n).map(|_| Scalar::rand(&mut rng)).collect();
    let (c, aux) = vc::commit(&pp, &m)?;
    println!(
        "N = {n}: {} subvectors of {}, batch size {}",
        pp.subvectors(),
        pp.subvector_len(),
        pp.batch_size()
    );

    let start = Instant::now();
    let all = vc::open_all(&pp, &c, &aux, &m)?;
    println!("{} openings in {:.2?}", all.len(), start.elapsed());

    let start = Instant::now();
    let openings = all.into_openings();
    let ok = openings
        .par_iter()
        .enumerate()
        .all(|(i, o)| vc::verify(&pp, &c, i, m[i], o).unwrap());
    println!("all verify: {ok} ({:.2?})", start.elapsed());
    println!("opening size: {} bytes", openings[0].size_bytes());
    Ok(())
}

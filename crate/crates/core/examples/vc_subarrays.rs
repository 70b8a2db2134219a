//! Hand out a committed vector in equal consecutive pieces, each with a
//! proof that it is the right piece.

use ark_ff::UniformRand;
use flexproofs::algebra::Scalar;
use flexproofs::vc::{self, VcParams};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn main() -> flexproofs::Result<()> {
    let mut rng = ChaCha20Rng::seed_from_u64(6);
    let n = 1 << 10;
    let pp = VcParams::setup(n, 1, &mut rng)?;
    let m: Vec<Scalar> = (0..n).map(|_| Scalar::rand(&mut rng)).collect();
    let (c, aux) = vc::commit(&pp, &m)?;

    let parts = 8;
    let len = n / parts;
    let openings = vc::open_subarrays(&pp, &c, &aux, parts)?;
    for (p, opening) in openings.iter().enumerate() {
        let piece = &m[p * len..(p + 1) * len];
        println!("piece {p}: {}", vc::verify_subarray(&pp, &c, parts, p, piece, opening)?);
    }
    let other = &m[..len];
    println!(
        "piece 0 presented as piece 1: {}",
        vc::verify_subarray(&pp, &c, parts, 1, other, &openings[1])?
    );
    Ok(())
}

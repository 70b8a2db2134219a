//! Functional commitment for multi-exponentiations with batch opening.
//!
//! A vector `A ∈ G1^n` is committed as `C = A * v` against a structured G2
//! key `v[i] = g2^{β^{2i}}`. A batch opening proves `t` claims
//! `⟨A, b^{(i)}⟩ = y_i` at once: the claims are merged with hash-derived
//! scalars `r_i` into a single claim `⟨A, Σ r_i b^{(i)}⟩ = Σ r_i·y_i`, which
//! is then proven by a logarithmic folding argument.
//!
//! The verifier never folds `v` itself. The prover sends the folded key
//! `v_ℓ = g2^{f(β)}` with a KZG-style opening of `f` at a transcript point,
//! checked against `g1^β`.
//!
//! # Transcript layout
//!
//! * `r_i = H(digest(b^{(i)}), C, [digest(b^{(k)})]_k, [y_k]_k)` under label
//!   `FC/H`, where `digest` is SHAKE256 over the canonical vector encoding.
//! * `x_j = H'(x_{j-1}, L_j, R_j)` under label `FC/Hprime`, one running
//!   transcript starting from the empty string; each `L_j`/`R_j` is absorbed
//!   as its GT part followed by its G1 part.
//! * The key-proof point `z` is squeezed from the same running transcript
//!   after absorbing `v_ℓ`.

use crate::algebra::{
    self, inverse, multi_exp, pairing_prod, sparse_multi_exp, to_affine, BilinearCtx, G1Affine, G2Affine, Gt, Scalar,
    G1, G2,
};
use crate::counters::{self, Op};
use crate::encoding::{self, Reader, Writer};
use crate::error::{ensure_len, Error, Result};
use crate::transcript::{self, Digest, Transcript, LABEL_H, LABEL_H_PRIME};
use ark_ec::pairing::Pairing;
use ark_ec::{AffineRepr, CurveGroup, PrimeGroup, ScalarMul};
use ark_ff::{Field, One, UniformRand, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use std::collections::HashSet;

const VECTOR_DIGEST_TAG: &[u8] = b"FC/b";

/// Public parameters: the structured key and the elements needed to check
/// the folded key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FcParams {
    n: usize,
    g1: G1Affine,
    g1_beta: G1Affine,
    g2: G2Affine,
    /// `g2^{β^{2i}}` for `i < n`; this is the commitment key.
    v: Vec<G2Affine>,
    /// `g2^{β^{2i+1}}` for `i < n - 1`; only used to commit to key-proof
    /// quotients, which have odd-degree terms.
    v_odd: Vec<G2Affine>,
}

impl FcParams {
    pub fn setup<R: RngCore>(n: usize, rng: &mut R) -> Result<Self> {
        let mut beta = Scalar::rand(rng);
        while beta.is_zero() {
            beta = Scalar::rand(rng);
        }
        Self::from_trapdoor(n, beta)
    }

    /// Deterministic setup from a seed. The trapdoor is recoverable by
    /// anyone who knows the seed, so this is for tests and benchmarks only.
    pub fn setup_seeded(n: usize, seed: u64) -> Result<Self> {
        Self::setup(n, &mut ChaCha20Rng::seed_from_u64(seed))
    }

    /// Builds the parameters from a known `β`. Whoever holds `β` can break
    /// binding; use only for tests.
    pub fn from_trapdoor(n: usize, beta: Scalar) -> Result<Self> {
        if !n.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(n));
        }
        // β^0, β^1, …, β^{2n-2}
        let mut powers = Vec::with_capacity(2 * n - 1);
        let mut acc = Scalar::one();
        for _ in 0..2 * n - 1 {
            powers.push(acc);
            acc *= beta;
        }
        let g2 = G2::generator();
        let all = g2.batch_mul(&powers);
        let v = all.iter().step_by(2).copied().collect();
        let v_odd = all.iter().skip(1).step_by(2).copied().collect();
        Ok(Self {
            n,
            g1: G1Affine::generator(),
            g1_beta: (G1::generator() * beta).into_affine(),
            g2: g2.into_affine(),
            v,
            v_odd,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of folding rounds, `log2 n`.
    pub fn rounds(&self) -> usize {
        self.n.trailing_zeros() as usize
    }

    pub fn key(&self) -> &[G2Affine] {
        &self.v
    }

    pub fn odd_key(&self) -> &[G2Affine] {
        &self.v_odd
    }

    pub fn g1_beta(&self) -> G1Affine {
        self.g1_beta
    }

    /// Size in bytes of every batch proof under these parameters.
    pub fn proof_size(&self) -> usize {
        FcBatchProof::size_for_rounds(self.rounds())
    }

    pub fn write_to(&self, w: &mut Writer) {
        w.u64(self.n as u64).g1(&self.g1).g1(&self.g1_beta).g2(&self.g2);
        for p in self.v.iter().chain(&self.v_odd) {
            w.g2(p);
        }
    }

    pub fn read_from(r: &mut Reader<'_>) -> Result<Self> {
        let n = r.u64()? as usize;
        if !n.is_power_of_two() || n > 1 << 32 {
            return Err(Error::Decode(format!("invalid FC length {n}")));
        }
        let g1 = r.g1()?;
        let g1_beta = r.g1()?;
        let g2 = r.g2()?;
        let v = (0..n).map(|_| r.g2()).collect::<Result<Vec<_>>>()?;
        let v_odd = (0..n - 1).map(|_| r.g2()).collect::<Result<Vec<_>>>()?;
        if g1 != G1Affine::generator() || g2 != G2Affine::generator() || v[0] != g2 {
            return Err(Error::Decode("FC parameters use foreign generators".into()));
        }
        Ok(Self {
            n,
            g1,
            g1_beta,
            g2,
            v,
            v_odd,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FcCommitment(pub Gt);

/// A GT/G1 pair `(A' * v', ⟨A', b'⟩)` sent in each folding round.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossTerm {
    pub gt: Gt,
    pub g1: G1Affine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FoldRound {
    pub left: CrossTerm,
    pub right: CrossTerm,
}

impl FoldRound {
    fn absorb(&self, t: &mut Transcript) {
        t.append_gt(b"L.gt", &self.left.gt);
        t.append_g1(b"L.g1", &self.left.g1);
        t.append_gt(b"R.gt", &self.right.gt);
        t.append_g1(b"R.g1", &self.right.g1);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FcBatchProof {
    pub rounds: Vec<FoldRound>,
    pub a_final: G1Affine,
    pub v_final: G2Affine,
    pub key_proof: G2Affine,
}

impl FcBatchProof {
    /// `2ℓ(sT + s1) + s1 + 2·s2`.
    pub const fn size_for_rounds(rounds: usize) -> usize {
        2 * rounds * (BilinearCtx::GT_BYTES + BilinearCtx::G1_BYTES) + BilinearCtx::G1_BYTES + 2 * BilinearCtx::G2_BYTES
    }

    pub fn size_bytes(&self) -> usize {
        Self::size_for_rounds(self.rounds.len())
    }

    pub fn write_to(&self, w: &mut Writer) {
        for round in &self.rounds {
            w.gt(&round.left.gt)
                .g1(&round.left.g1)
                .gt(&round.right.gt)
                .g1(&round.right.g1);
        }
        w.g1(&self.a_final).g2(&self.v_final).g2(&self.key_proof);
    }

    /// Canonical encoding. The round count is implied by the length.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new();
        self.write_to(&mut w);
        w.finish()
    }

    pub fn read_from(r: &mut Reader<'_>, rounds: usize) -> Result<Self> {
        let mut out = Vec::with_capacity(rounds);
        for _ in 0..rounds {
            let left = CrossTerm {
                gt: r.gt()?,
                g1: r.g1()?,
            };
            let right = CrossTerm {
                gt: r.gt()?,
                g1: r.g1()?,
            };
            out.push(FoldRound { left, right });
        }
        Ok(Self {
            rounds: out,
            a_final: r.g1()?,
            v_final: r.g2()?,
            key_proof: r.g2()?,
        })
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let fixed = Self::size_for_rounds(0);
        let per_round = Self::size_for_rounds(1) - fixed;
        if bytes.len() < fixed || !(bytes.len() - fixed).is_multiple_of(per_round) {
            return Err(Error::Decode(format!(
                "{} bytes is not a valid FC proof length",
                bytes.len()
            )));
        }
        let mut r = Reader::new(bytes);
        let proof = Self::read_from(&mut r, (bytes.len() - fixed) / per_round)?;
        r.finish()?;
        Ok(proof)
    }
}

/// `C = A * v`.
pub fn commit(pp: &FcParams, a: &[G1Affine]) -> Result<FcCommitment> {
    ensure_len(pp.n, a.len())?;
    Ok(FcCommitment(pairing_prod(a, &pp.v)?))
}

/// Digest of a claim vector as absorbed into the aggregation oracle.
pub fn vector_digest(b: &[Scalar]) -> Digest {
    transcript::scalar_vec_digest(VECTOR_DIGEST_TAG, b)
}

/// [`vector_digest`] of the unit vector `u_index` of length `n`.
pub fn unit_vector_digest(n: usize, index: usize) -> Digest {
    let mut u = vec![Scalar::zero(); n];
    u[index] = Scalar::one();
    vector_digest(&u)
}

/// The scalars `r_i` that merge `t` claims into one.
pub fn aggregation_scalars(c: &FcCommitment, digests: &[Digest], ys: &[G1Affine]) -> Vec<Scalar> {
    let c_bytes = encoding::gt_bytes(&c.0);
    let all_b: Vec<u8> = digests.concat();
    let all_y: Vec<u8> = ys.iter().flat_map(encoding::g1_bytes).collect();
    digests
        .iter()
        .map(|d| transcript::hash_to_scalar(LABEL_H, &[d, &c_bytes, &all_b, &all_y]))
        .collect()
}

fn check_claims(pp: &FcParams, bs: &[Vec<Scalar>], ys: &[G1Affine]) -> Result<()> {
    if bs.is_empty() {
        return Err(Error::EmptyBatch);
    }
    ensure_len(bs.len(), ys.len())?;
    for b in bs {
        ensure_len(pp.n, b.len())?;
    }
    Ok(())
}

fn check_indices(pp: &FcParams, indices: &[usize], ys: &[G1Affine]) -> Result<()> {
    if indices.is_empty() {
        return Err(Error::EmptyBatch);
    }
    ensure_len(indices.len(), ys.len())?;
    let mut seen = HashSet::with_capacity(indices.len());
    for &i in indices {
        if i >= pp.n {
            return Err(Error::IndexOutOfRange { index: i, len: pp.n });
        }
        if !seen.insert(i) {
            return Err(Error::DuplicateIndex(i));
        }
    }
    Ok(())
}

fn combine(bs: &[Vec<Scalar>], r: &[Scalar]) -> Vec<Scalar> {
    let n = bs[0].len();
    let mut b = vec![Scalar::zero(); n];
    for (bi, ri) in bs.iter().zip(r) {
        b.par_iter_mut().zip(bi).for_each(|(acc, x)| *acc += *ri * x);
    }
    counters::record(Op::FieldOp, n * bs.len());
    b
}

/// Opens `C` to `t` multi-exponentiation claims `⟨A, bs[i]⟩ = ys[i]`.
pub fn batch_open(
    pp: &FcParams,
    c: &FcCommitment,
    a: &[G1Affine],
    bs: &[Vec<Scalar>],
    ys: &[G1Affine],
) -> Result<FcBatchProof> {
    ensure_len(pp.n, a.len())?;
    check_claims(pp, bs, ys)?;
    let digests: Vec<Digest> = bs.iter().map(|b| vector_digest(b)).collect();
    let r = aggregation_scalars(c, &digests, ys);
    Ok(prove_folded(pp, a, combine(bs, &r)))
}

/// Batch opening at unit vectors: proves `A[indices[i]] = ys[i]`.
///
/// Produces exactly the proof [`batch_open`] would for the explicit unit
/// vectors, without materializing them.
pub fn batch_open_units(
    pp: &FcParams,
    c: &FcCommitment,
    a: &[G1Affine],
    indices: &[usize],
    ys: &[G1Affine],
) -> Result<FcBatchProof> {
    ensure_len(pp.n, a.len())?;
    check_indices(pp, indices, ys)?;
    let digests: Vec<Digest> = indices.iter().map(|&i| unit_vector_digest(pp.n, i)).collect();
    let r = aggregation_scalars(c, &digests, ys);
    let mut b = vec![Scalar::zero(); pp.n];
    for (&i, ri) in indices.iter().zip(&r) {
        b[i] = *ri;
    }
    Ok(prove_folded(pp, a, b))
}

fn prove_folded(pp: &FcParams, a: &[G1Affine], b: Vec<Scalar>) -> FcBatchProof {
    let mut a = a.to_vec();
    let mut v = pp.v.clone();
    let mut b = b;
    let mut t = Transcript::new(LABEL_H_PRIME);
    let mut rounds = Vec::with_capacity(pp.rounds());
    let mut challenges = Vec::with_capacity(pp.rounds());

    while a.len() > 1 {
        let half = a.len() / 2;
        let (al, ar) = a.split_at(half);
        let (vl, vr) = v.split_at(half);
        let (bl, br) = b.split_at(half);

        let ((l_gt, r_gt), (l_g1, r_g1)) = rayon::join(
            || rayon::join(|| pairing_prod(ar, vl), || pairing_prod(al, vr)),
            || (sparse_multi_exp::<G1>(ar, bl), sparse_multi_exp::<G1>(al, br)),
        );
        let round = FoldRound {
            left: CrossTerm {
                gt: l_gt.expect("halves have equal length"),
                g1: l_g1.expect("halves have equal length").into_affine(),
            },
            right: CrossTerm {
                gt: r_gt.expect("halves have equal length"),
                g1: r_g1.expect("halves have equal length").into_affine(),
            },
        };
        round.absorb(&mut t);
        let x = t.challenge_scalar(b"x");
        let x_inv = inverse(x);

        let next_a: Vec<G1> = al.par_iter().zip(ar).map(|(l, r)| *l + *r * x).collect();
        let next_v: Vec<G2> = vl.par_iter().zip(vr).map(|(l, r)| *l + *r * x_inv).collect();
        let next_b: Vec<Scalar> = bl.iter().zip(br).map(|(l, r)| *l + x_inv * r).collect();
        counters::record(Op::G1Exp, half);
        counters::record(Op::G2Exp, half);
        counters::record(Op::FieldOp, half);
        a = to_affine(&next_a);
        v = to_affine(&next_v);
        b = next_b;

        rounds.push(round);
        challenges.push(x);
    }

    let a_final = a[0];
    let v_final = v[0];
    t.append_g2(b"v_final", &v_final);
    let z = t.challenge_scalar(b"z");
    let key_proof = key_proof(pp, &challenges, z);
    debug_assert_eq!(v_final, fold_key(pp, &challenges));

    FcBatchProof {
        rounds,
        a_final,
        v_final,
        key_proof,
    }
}

/// Verifies a batch opening of `C` to the claims `⟨A, bs[i]⟩ = ys[i]`.
///
/// Returns `Ok(false)` for any failed check; errors are reserved for
/// inputs whose shape does not match the parameters.
pub fn batch_verify(
    pp: &FcParams,
    c: &FcCommitment,
    bs: &[Vec<Scalar>],
    ys: &[G1Affine],
    proof: &FcBatchProof,
) -> Result<bool> {
    check_claims(pp, bs, ys)?;
    check_rounds(pp, proof)?;
    let digests: Vec<Digest> = bs.iter().map(|b| vector_digest(b)).collect();
    let r = aggregation_scalars(c, &digests, ys);
    let b = combine(bs, &r);
    let y: G1 = multi_exp(ys, &r)?;
    Ok(verify_folded(pp, c, y, proof, |x_invs| fold_scalars(b, x_invs)))
}

/// Verifies a unit-vector batch opening, computing the folded claim vector
/// in O(|indices|·ℓ) instead of O(n).
pub fn batch_verify_units(
    pp: &FcParams,
    c: &FcCommitment,
    indices: &[usize],
    ys: &[G1Affine],
    proof: &FcBatchProof,
) -> Result<bool> {
    check_indices(pp, indices, ys)?;
    check_rounds(pp, proof)?;
    let digests: Vec<Digest> = indices.iter().map(|&i| unit_vector_digest(pp.n, i)).collect();
    let r = aggregation_scalars(c, &digests, ys);
    let y: G1 = multi_exp(ys, &r)?;
    Ok(verify_folded(pp, c, y, proof, |x_invs| {
        folded_unit_combination(indices, &r, x_invs)
    }))
}

fn check_rounds(pp: &FcParams, proof: &FcBatchProof) -> Result<()> {
    if proof.rounds.len() != pp.rounds() {
        return Err(Error::MalformedProof(format!(
            "expected {} folding rounds, got {}",
            pp.rounds(),
            proof.rounds.len()
        )));
    }
    Ok(())
}

/// `b_j = (b_{j-1})_L + x_j^{-1}·(b_{j-1})_R`, repeated until one entry is left.
pub fn fold_scalars(mut b: Vec<Scalar>, x_invs: &[Scalar]) -> Scalar {
    for x_inv in x_invs {
        let half = b.len() / 2;
        for i in 0..half {
            let r = b[i + half];
            b[i] += *x_inv * r;
        }
        b.truncate(half);
        counters::record(Op::FieldOp, half);
    }
    b[0]
}

/// `Σ_i r_i ∏_{k=1}^{ℓ} (x_k^{-1})^{bit_{ℓ-k}(index_i)}`: the fully folded
/// value of `Σ r_i u_{index_i}`.
pub fn folded_unit_combination(indices: &[usize], r: &[Scalar], x_invs: &[Scalar]) -> Scalar {
    let rounds = x_invs.len();
    counters::record(Op::FieldOp, indices.len() * rounds);
    indices
        .iter()
        .zip(r)
        .map(|(&i, ri)| {
            x_invs
                .iter()
                .enumerate()
                .filter(|(k, _)| (i >> (rounds - 1 - k)) & 1 == 1)
                .fold(*ri, |acc, (_, x_inv)| acc * x_inv)
        })
        .sum()
}

fn verify_folded(
    pp: &FcParams,
    c: &FcCommitment,
    y: G1,
    proof: &FcBatchProof,
    folded_b: impl FnOnce(&[Scalar]) -> Scalar,
) -> bool {
    let mut t = Transcript::new(LABEL_H_PRIME);
    let mut c_gt = c.0;
    let mut c_g1 = y;
    let mut challenges = Vec::with_capacity(proof.rounds.len());
    for round in &proof.rounds {
        round.absorb(&mut t);
        let x = t.challenge_scalar(b"x");
        let x_inv = inverse(x);
        #[cfg(feature = "broken-fold-update")]
        let x_inv = x;
        c_gt = round.left.gt * x + c_gt + round.right.gt * x_inv;
        c_g1 = round.left.g1 * x + c_g1 + round.right.g1 * x_inv;
        challenges.push(x);
    }
    counters::record(Op::GtExp, 2 * proof.rounds.len());
    counters::record(Op::G1Exp, 2 * proof.rounds.len());

    t.append_g2(b"v_final", &proof.v_final);
    let z = t.challenge_scalar(b"z");
    if !key_verify(pp, &challenges, &proof.v_final, &proof.key_proof, z) {
        return false;
    }

    let x_invs: Vec<Scalar> = challenges.iter().map(|x| inverse(*x)).collect();
    let b_final = folded_b(&x_invs);
    counters::record(Op::G1Exp, 1);
    BilinearCtx::pairing(proof.a_final, proof.v_final) == c_gt && proof.a_final * b_final == c_g1
}

/// Coefficients `c` of the folded key in the basis `β^{2i}`:
/// `v_ℓ = ∏ v[i]^{c[i]}` with `c[i] = ∏_{k=1}^{ℓ} (x_k^{-1})^{bit_{ℓ-k}(i)}`.
pub fn key_coefficients(challenges: &[Scalar]) -> Vec<Scalar> {
    let mut c = Vec::with_capacity(1 << challenges.len());
    c.push(Scalar::one());
    // the last challenge drives bit 0, the first one the top bit
    for x in challenges.iter().rev() {
        let x_inv = inverse(*x);
        let ext: Vec<Scalar> = c.iter().map(|ci| *ci * x_inv).collect();
        c.extend(ext);
    }
    c
}

/// `f(z) = ∏_{k=1}^{ℓ} (1 + x_k^{-1} z^{2^{ℓ-k+1}})` in O(ℓ).
pub fn key_poly_eval(challenges: &[Scalar], z: Scalar) -> Scalar {
    let mut power = z.square();
    let mut acc = Scalar::one();
    for x in challenges.iter().rev() {
        acc *= Scalar::one() + inverse(*x) * power;
        power.square_in_place();
    }
    counters::record(Op::FieldOp, 3 * challenges.len());
    acc
}

/// The folded key `v_ℓ` computed directly from the challenges.
pub fn fold_key(pp: &FcParams, challenges: &[Scalar]) -> G2Affine {
    let c = key_coefficients(challenges);
    multi_exp::<G2>(&pp.v, &c)
        .expect("one coefficient per key element")
        .into_affine()
}

/// `g2^{q(β)}` for `q(X) = (f(X) − f(z)) / (X − z)`.
pub fn key_proof(pp: &FcParams, challenges: &[Scalar], z: Scalar) -> G2Affine {
    let c = key_coefficients(challenges);
    // f(X) = Σ c[i] X^{2i}, degree 2n-2
    let degree = 2 * (c.len() - 1);
    if degree == 0 {
        return G2Affine::zero();
    }
    let coeff = |d: usize| if d.is_multiple_of(2) { c[d / 2] } else { Scalar::zero() };
    // synthetic division: q_{d-1} = f_d + z·q_d
    let mut q = vec![Scalar::zero(); degree];
    let mut carry = Scalar::zero();
    for d in (1..=degree).rev() {
        carry = coeff(d) + z * carry;
        q[d - 1] = carry;
    }
    counters::record(Op::FieldOp, 2 * degree);
    let even: Vec<Scalar> = q.iter().step_by(2).copied().collect();
    let odd: Vec<Scalar> = q.iter().skip(1).step_by(2).copied().collect();
    let proof: G2 = multi_exp::<G2>(&pp.v[..even.len()], &even).expect("lengths match")
        + multi_exp::<G2>(&pp.v_odd[..odd.len()], &odd).expect("lengths match");
    proof.into_affine()
}

/// Checks `e(g1^β / g1^z, π) = e(g1, v_ℓ / g2^{f(z)})`.
pub fn key_verify(pp: &FcParams, challenges: &[Scalar], v_final: &G2Affine, proof: &G2Affine, z: Scalar) -> bool {
    let fz = key_poly_eval(challenges, z);
    let lhs_g1 = (pp.g1_beta.into_group() - pp.g1 * z).into_affine();
    let rhs_g2 = (v_final.into_group() - pp.g2 * fz).into_affine();
    counters::record(Op::G1Exp, 1);
    counters::record(Op::G2Exp, 1);
    counters::record(Op::Pairing, 2);
    let check = algebra::Bn254::multi_pairing([lhs_g1, (-pp.g1.into_group()).into_affine()], [*proof, rhs_g2]);
    check.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ark_ff::UniformRand;

    fn s(v: u64) -> Scalar {
        Scalar::from(v)
    }

    fn rand_g1(n: usize, rng: &mut ChaCha20Rng) -> Vec<G1Affine> {
        (0..n).map(|_| G1Affine::rand(rng)).collect()
    }

    #[test]
    fn setup_examples() {
        let g2 = BilinearCtx::g2();
        let p = FcParams::from_trapdoor(1, s(7)).unwrap();
        assert_eq!(p.key(), &[g2]);
        let p = FcParams::from_trapdoor(2, s(2)).unwrap();
        assert_eq!(p.key(), &[g2, (g2 * s(4)).into_affine()]);
        let p = FcParams::from_trapdoor(4, s(3)).unwrap();
        let expected: Vec<G2Affine> = [1u64, 9, 81, 729].iter().map(|e| (g2 * s(*e)).into_affine()).collect();
        assert_eq!(p.key(), expected.as_slice());
        assert_eq!(
            p.odd_key(),
            &[
                (g2 * s(3)).into_affine(),
                (g2 * s(27)).into_affine(),
                (g2 * s(243)).into_affine()
            ]
        );
        assert!(FcParams::from_trapdoor(3, s(2)).is_err());
        assert!(FcParams::from_trapdoor(0, s(2)).is_err());
    }

    #[test]
    fn key_structure_is_consistent_with_g1_beta() {
        let p = FcParams::setup_seeded(8, 1).unwrap();
        // e(g1^β, v[i]) = e(g1, odd[i]) since both are e(g1,g2)^{β^{2i+1}}
        for i in 0..7 {
            assert_eq!(
                BilinearCtx::pairing(p.g1_beta(), p.key()[i]),
                BilinearCtx::pairing(BilinearCtx::g1(), p.odd_key()[i])
            );
        }
    }

    #[test]
    fn commit_examples() {
        let p = FcParams::from_trapdoor(2, s(5)).unwrap();
        let zero = commit(&p, &[G1Affine::zero(), G1Affine::zero()]).unwrap();
        assert!(zero.0.is_zero());
        let g1 = BilinearCtx::g1();
        let a = [(g1 * s(2)).into_affine(), (g1 * s(3)).into_affine()];
        // 2 + 3·β², β = 5
        assert_eq!(commit(&p, &a).unwrap().0, BilinearCtx::gt() * s(77));
        let p1 = FcParams::from_trapdoor(1, s(5)).unwrap();
        assert_eq!(
            commit(&p1, &[(g1 * s(9)).into_affine()]).unwrap().0,
            BilinearCtx::gt() * s(9)
        );
        assert!(commit(&p, &a[..1]).is_err());
    }

    #[test]
    fn key_proof_example_with_known_beta() {
        let beta = s(3);
        let p = FcParams::from_trapdoor(4, beta).unwrap();
        let xs = [s(2), s(4)];
        // (1 + β⁴/2)(1 + β²/4)
        let exponent =
            (Scalar::one() + beta.pow([4]) * inverse(s(2))) * (Scalar::one() + beta.pow([2]) * inverse(s(4)));
        let v_final = fold_key(&p, &xs);
        assert_eq!(v_final, (BilinearCtx::g2() * exponent).into_affine());
        assert_eq!(key_poly_eval(&xs, beta), exponent);
        let z = s(11);
        let proof = key_proof(&p, &xs, z);
        assert!(key_verify(&p, &xs, &v_final, &proof, z));
        let tampered = (v_final.into_group() + BilinearCtx::g2()).into_affine();
        assert!(!key_verify(&p, &xs, &tampered, &proof, z));
        assert!(!key_verify(&p, &xs, &v_final, &proof, s(12)));
    }

    #[test]
    fn key_proof_for_zero_rounds() {
        let p = FcParams::setup_seeded(1, 3).unwrap();
        assert_eq!(fold_key(&p, &[]), BilinearCtx::g2());
        let proof = key_proof(&p, &[], s(5));
        assert!(proof.is_zero());
        assert!(key_verify(&p, &[], &BilinearCtx::g2(), &proof, s(5)));
    }

    #[test]
    fn folded_key_matches_explicit_folding() {
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        let p = FcParams::setup_seeded(16, 4).unwrap();
        let xs: Vec<Scalar> = (0..4).map(|_| Scalar::rand(&mut rng)).collect();
        let mut v: Vec<G2> = p.key().iter().map(|g| g.into_group()).collect();
        for x in &xs {
            let half = v.len() / 2;
            v = (0..half).map(|i| v[i] + v[i + half] * inverse(*x)).collect();
        }
        assert_eq!(fold_key(&p, &xs), v[0].into_affine());
    }

    #[test]
    fn single_element_vector() {
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let p = FcParams::setup_seeded(1, 5).unwrap();
        let a = rand_g1(1, &mut rng);
        let c = commit(&p, &a).unwrap();
        let bs = vec![vec![s(3)], vec![s(8)]];
        let ys: Vec<G1Affine> = bs.iter().map(|b| (a[0] * b[0]).into_affine()).collect();
        let proof = batch_open(&p, &c, &a, &bs, &ys).unwrap();
        assert!(proof.rounds.is_empty());
        assert_eq!(proof.a_final, a[0]);
        assert!(batch_verify(&p, &c, &bs, &ys, &proof).unwrap());
    }

    #[test]
    fn empty_batch_and_shape_errors() {
        let mut rng = ChaCha20Rng::seed_from_u64(6);
        let p = FcParams::setup_seeded(4, 6).unwrap();
        let a = rand_g1(4, &mut rng);
        let c = commit(&p, &a).unwrap();
        assert!(matches!(batch_open(&p, &c, &a, &[], &[]), Err(Error::EmptyBatch)));
        assert!(batch_open(&p, &c, &a, &[vec![s(1); 3]], &[a[0]]).is_err());
        assert!(batch_open(&p, &c, &a[..2], &[vec![s(1); 4]], &[a[0]]).is_err());
        assert!(matches!(
            batch_open_units(&p, &c, &a, &[1, 1], &[a[1], a[1]]),
            Err(Error::DuplicateIndex(1))
        ));
        assert!(matches!(
            batch_open_units(&p, &c, &a, &[4], &[a[0]]),
            Err(Error::IndexOutOfRange { .. })
        ));
        let proof = batch_open_units(&p, &c, &a, &[2], &[a[2]]).unwrap();
        let mut short = proof.clone();
        short.rounds.pop();
        assert!(matches!(
            batch_verify_units(&p, &c, &[2], &[a[2]], &short),
            Err(Error::MalformedProof(_))
        ));
    }

    #[test]
    fn unit_digest_matches_explicit_vector() {
        let mut u = vec![Scalar::zero(); 8];
        u[5] = Scalar::one();
        assert_eq!(unit_vector_digest(8, 5), vector_digest(&u));
    }

    #[test]
    fn unit_fast_path_edge_cases() {
        let xs = [s(3), s(5), s(7)];
        let x_invs: Vec<Scalar> = xs.iter().map(|x| inverse(*x)).collect();
        assert_eq!(folded_unit_combination(&[0], &[Scalar::one()], &x_invs), Scalar::one());
        let all = x_invs.iter().product::<Scalar>();
        assert_eq!(folded_unit_combination(&[7], &[Scalar::one()], &x_invs), all);
        // general folding of u_i agrees with the coefficients of the folded key
        let c = key_coefficients(&xs);
        for i in 0..8 {
            let mut u = vec![Scalar::zero(); 8];
            u[i] = Scalar::one();
            assert_eq!(fold_scalars(u, &x_invs), c[i]);
            assert_eq!(folded_unit_combination(&[i], &[Scalar::one()], &x_invs), c[i]);
        }
    }

    #[test]
    fn proof_round_trips_and_has_fixed_size() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let p = FcParams::setup_seeded(8, 7).unwrap();
        let a = rand_g1(8, &mut rng);
        let c = commit(&p, &a).unwrap();
        let proof = batch_open_units(&p, &c, &a, &[1, 6], &[a[1], a[6]]).unwrap();
        let bytes = proof.to_bytes();
        assert_eq!(bytes.len(), p.proof_size());
        assert_eq!(bytes.len(), 2 * 3 * (384 + 32) + 32 + 128);
        assert_eq!(FcBatchProof::from_bytes(&bytes).unwrap(), proof);
        assert!(FcBatchProof::from_bytes(&bytes[..bytes.len() - 1]).is_err());
    }
}

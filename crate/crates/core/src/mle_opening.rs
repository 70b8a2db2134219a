//! Evaluation proofs for the multilinear extension of a committed vector.
//!
//! Write the point as `r = (r_L, r_R)`, with `r_L` the `log μ` high-order
//! coordinates (which select the subvector) and `r_R` the `log ν` low ones.
//! Then `f_m(r) = Σ_j T_j(r_L)·f_j(r_R)` with `T_j` the eq-polynomial
//! weights, so the prover
//!
//! 1. commits to `F = Σ_j T_j·f_j` homomorphically as `C_F = Σ_j T_j·C_j`,
//! 2. proves `C_F = ⟨C, T⟩` with one FC opening of the general kind, and
//! 3. proves `F(r_R) = y` with one PC evaluation proof against `C_F`.
//!
//! This is the interface a SNARK consuming `f_m(r)` needs.

use crate::algebra::{eq_table, multi_exp, BilinearCtx, G1Affine, MultilinearPoly, Scalar, G1};
use crate::counters::{self, Op};
use crate::encoding::{Reader, Writer};
use crate::error::{ensure_len, Result};
use crate::fc::{self, FcBatchProof};
use crate::pc::{self, PcCommitment, PcEvalProof};
use crate::vc::{VcAux, VcCommitment, VcParams};
use ark_ec::CurveGroup;
use ark_ff::Zero;
use rayon::prelude::*;

/// `(T_j(r_L))_j`, the eq-polynomial weights of every subvector index.
pub fn eq_weights(r_l: &[Scalar]) -> Vec<Scalar> {
    eq_table(r_l)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MleEvalProof {
    /// Commitment to `F = Σ_j T_j·f_j`.
    pub c_f: G1Affine,
    pub fc_proof: FcBatchProof,
    pub pc_proof: PcEvalProof,
    /// The claimed value `f_m(r)`.
    pub y: Scalar,
}

impl MleEvalProof {
    pub fn size_bytes(&self) -> usize {
        BilinearCtx::G1_BYTES + self.fc_proof.size_bytes() + self.pc_proof.size_bytes() + BilinearCtx::SCALAR_BYTES
    }

    /// `C_F ‖ FC proof ‖ PC proof ‖ y`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new();
        w.g1(&self.c_f);
        self.fc_proof.write_to(&mut w);
        self.pc_proof.write_to(&mut w);
        w.scalar(&self.y);
        w.finish()
    }

    /// Decodes a proof made under `pp`, which fixes the FC round count.
    pub fn from_bytes(pp: &VcParams, bytes: &[u8]) -> Result<Self> {
        let mut r = Reader::new(bytes);
        let c_f = r.g1()?;
        let fc_proof = FcBatchProof::read_from(&mut r, pp.fc_params().rounds())?;
        let pc_proof = PcEvalProof::read_from(&mut r)?;
        let y = r.scalar()?;
        r.finish()?;
        Ok(Self {
            c_f,
            fc_proof,
            pc_proof,
            y,
        })
    }
}

fn split_point<'a>(pp: &VcParams, r: &'a [Scalar]) -> Result<(&'a [Scalar], &'a [Scalar])> {
    let log_mu = pp.subvectors().trailing_zeros() as usize;
    let log_nu = pp.subvector_len().trailing_zeros() as usize;
    ensure_len(log_mu + log_nu, r.len())?;
    Ok(r.split_at(log_mu))
}

/// Proves the value of `f_m` at `r` (most significant coordinate first).
pub fn prove(pp: &VcParams, c: &VcCommitment, aux: &VcAux, r: &[Scalar]) -> Result<MleEvalProof> {
    let (r_l, r_r) = split_point(pp, r)?;
    ensure_len(pp.subvectors(), aux.polys.len())?;
    let t = eq_weights(r_l);
    let c_f = multi_exp::<G1>(&aux.commitments, &t)?.into_affine();
    let fc_proof = fc::batch_open(pp.fc_params(), &c.0, &aux.commitments, std::slice::from_ref(&t), &[c_f])?;

    let nu = pp.subvector_len();
    let f: Vec<Scalar> = (0..nu)
        .into_par_iter()
        .map(|a| aux.polys.iter().zip(&t).map(|(fj, tj)| fj.evals()[a] * tj).sum())
        .collect();
    counters::record(Op::FieldOp, pp.len());
    let (y, pc_proof) = pc::eval(pp.pc_params(), &MultilinearPoly::new(f)?, r_r)?;
    Ok(MleEvalProof {
        c_f,
        fc_proof,
        pc_proof,
        y,
    })
}

/// Checks `proof` against `c`, taking the claimed value from the proof.
pub fn verify(pp: &VcParams, c: &VcCommitment, r: &[Scalar], proof: &MleEvalProof) -> Result<bool> {
    verify_value(pp, c, r, proof.y, proof)
}

/// Checks that `f_m(r) = y` for a caller-supplied `y`, ignoring the value
/// stored in the proof.
pub fn verify_value(pp: &VcParams, c: &VcCommitment, r: &[Scalar], y: Scalar, proof: &MleEvalProof) -> Result<bool> {
    let (r_l, r_r) = split_point(pp, r)?;
    let t = eq_weights(r_l);
    if !fc::batch_verify(pp.fc_params(), &c.0, &[t], &[proof.c_f], &proof.fc_proof)? {
        return Ok(false);
    }
    pc::verify(pp.pc_params(), &PcCommitment(proof.c_f), r_r, y, &proof.pc_proof)
}

/// `Σ_j T_j(r_L)·f_j(r_R)`, evaluated in the clear.
pub fn decomposed_eval(aux: &VcAux, r_l: &[Scalar], r_r: &[Scalar]) -> Result<Scalar> {
    let t = eq_weights(r_l);
    ensure_len(t.len(), aux.polys.len())?;
    aux.polys
        .iter()
        .zip(&t)
        .try_fold(Scalar::zero(), |acc, (f, tj)| Ok(acc + f.evaluate(r_r)? * tj))
}

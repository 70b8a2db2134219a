//! The two-layer vector commitment and its all-proofs generator.
//!
//! A vector `m` of length `N = μ·ν` is cut into `μ` subvectors of length
//! `ν`; subvector `j` is the evaluation table of a multilinear polynomial
//! `f_j` and is committed with the PC scheme as `C_j`. The vector of PC
//! commitments is then committed with the FC scheme, giving the public
//! commitment `C`.
//!
//! [`open_all`] produces all `N` opening proofs in two steps:
//!
//! 1. The `C_j` are split into blocks of `b` and every block gets one FC
//!    unit-vector batch proof, showing it sits at the right positions of `C`.
//! 2. The `f_j` are randomized as `g_j = r_j·f_j` (with `r_j` derived from a
//!    Merkle root over all `(C_j, digest(f_j))`) and summed pairwise up a
//!    binary tree into `g*`. Each opening carries the sibling commitment and
//!    sibling evaluation of every level on its path, so the verifier can
//!    rebuild `D* = Σ r_j·C_j` and `y*_a = g*(Bin(a))` from its own value
//!    and check one PC proof from HyperEval on `g*`.
//!
//! Index `i` lives in subvector `j = ⌊i/ν⌋` at position `a = i mod ν`.
//!
//! The sibling evaluations are only checked through their sum, which is
//! what the PC proof at the root pins down. Like the interactive protocol
//! this derives from, binding of a single opening assumes the verifiers of
//! one commitment see the same Merkle root and fold data.

use crate::algebra::{bin_point, BilinearCtx, G1Affine, MultilinearPoly, Scalar, G1};
use crate::counters::{self, Op};
use crate::encoding::{self, Reader, Writer};
use crate::error::{ensure_len, Error, Result};
use crate::fc::{self, FcBatchProof, FcCommitment, FcParams};
use crate::pc::{self, PcEvalProof, PcParams};
use crate::transcript::{self, Digest, MerkleTree};
use ark_ec::CurveGroup;
use ark_ff::Zero;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use std::path::Path;
use std::sync::OnceLock;

pub const PARAMS_MAGIC: &[u8; 8] = b"FLEXPP01";
pub const OPENING_VERSION: u8 = 1;

const POLY_DIGEST_TAG: &[u8] = b"FP/poly";
const FOLD_CHALLENGE_TAG: &[u8] = b"FP/r";

/// Header bytes of an encoded opening: version, log μ, log ν, block length.
const OPENING_HEADER_BYTES: usize = 5;
/// Encoded sibling record: level, node, `D_w`, `y_{w,a}`.
const SIBLING_BYTES: usize = 1 + 4 + BilinearCtx::G1_BYTES + BilinearCtx::SCALAR_BYTES;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcParams {
    n: usize,
    mu: usize,
    nu: usize,
    batch: usize,
    fc: FcParams,
    pc: PcParams,
}

/// `(μ, ν)` for a vector of length `n`: `μ = 2^{⌈log n / 2⌉}`, `ν = n / μ`.
pub fn layout(n: usize) -> Result<(usize, usize)> {
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    let log_n = n.trailing_zeros() as usize;
    let mu = 1 << log_n.div_ceil(2);
    Ok((mu, n / mu))
}

impl VcParams {
    pub fn setup<R: RngCore>(n: usize, batch: usize, rng: &mut R) -> Result<Self> {
        let (mu, nu) = layout(n)?;
        if batch == 0 || batch > mu {
            return Err(Error::InvalidBatchSize { batch, max: mu });
        }
        let fc = FcParams::setup(mu, rng)?;
        let pc = PcParams::setup(nu.trailing_zeros() as usize, rng);
        Ok(Self {
            n,
            mu,
            nu,
            batch,
            fc,
            pc,
        })
    }

    /// Deterministic setup from a seed. The trapdoors are recoverable from
    /// the seed, so this is for tests and benchmarks only.
    pub fn setup_seeded(n: usize, batch: usize, seed: u64) -> Result<Self> {
        Self::setup(n, batch, &mut ChaCha20Rng::seed_from_u64(seed))
    }

    /// Assembles parameters from existing sub-scheme parameters.
    pub fn from_parts(n: usize, batch: usize, fc: FcParams, pc: PcParams) -> Result<Self> {
        let (mu, nu) = layout(n)?;
        if batch == 0 || batch > mu {
            return Err(Error::InvalidBatchSize { batch, max: mu });
        }
        ensure_len(mu, fc.len())?;
        ensure_len(nu.trailing_zeros() as usize, pc.num_vars())?;
        Ok(Self {
            n,
            mu,
            nu,
            batch,
            fc,
            pc,
        })
    }

    /// Vector length `N`.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of subvectors `μ`.
    pub fn subvectors(&self) -> usize {
        self.mu
    }

    /// Subvector length `ν`.
    pub fn subvector_len(&self) -> usize {
        self.nu
    }

    pub fn batch_size(&self) -> usize {
        self.batch
    }

    /// Number of Step-1 blocks, `⌈μ/b⌉`.
    pub fn block_count(&self) -> usize {
        self.mu.div_ceil(self.batch)
    }

    /// Subvector indices covered by block `k`; the last block is clipped.
    pub fn block_range(&self, k: usize) -> std::ops::Range<usize> {
        let start = k * self.batch;
        start..(start + self.batch).min(self.mu)
    }

    pub fn fc_params(&self) -> &FcParams {
        &self.fc
    }

    pub fn pc_params(&self) -> &PcParams {
        &self.pc
    }

    fn log_mu(&self) -> usize {
        self.mu.trailing_zeros() as usize
    }

    fn log_nu(&self) -> usize {
        self.nu.trailing_zeros() as usize
    }

    /// Same parameters with a different batch size.
    pub fn with_batch_size(&self, batch: usize) -> Result<Self> {
        if batch == 0 || batch > self.mu {
            return Err(Error::InvalidBatchSize { batch, max: self.mu });
        }
        Ok(Self { batch, ..self.clone() })
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new();
        w.bytes(PARAMS_MAGIC);
        w.u8(BilinearCtx::CURVE_ID.len() as u8)
            .bytes(BilinearCtx::CURVE_ID.as_bytes());
        w.u64(self.n as u64)
            .u64(self.mu as u64)
            .u64(self.nu as u64)
            .u64(self.batch as u64);
        self.fc.write_to(&mut w);
        self.pc.write_to(&mut w);
        w.finish()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader::new(bytes);
        if r.take(PARAMS_MAGIC.len()).map_err(|_| Error::BadMagic)? != PARAMS_MAGIC {
            return Err(Error::BadMagic);
        }
        let id_len = r.u8()? as usize;
        let id = String::from_utf8_lossy(r.take(id_len)?).into_owned();
        if id != BilinearCtx::CURVE_ID {
            return Err(Error::UnsupportedCurve(id));
        }
        let n = r.u64()? as usize;
        let mu = r.u64()? as usize;
        let nu = r.u64()? as usize;
        let batch = r.u64()? as usize;
        if layout(n).ok() != Some((mu, nu)) {
            return Err(Error::Decode(format!("inconsistent layout N={n}, μ={mu}, ν={nu}")));
        }
        let fc = FcParams::read_from(&mut r)?;
        let pc = PcParams::read_from(&mut r)?;
        r.finish()?;
        Self::from_parts(n, batch, fc, pc)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        // write-then-rename so readers never see a partial file
        let path = path.as_ref();
        let tmp = path.with_extension("partial");
        std::fs::write(&tmp, self.to_bytes())?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_bytes(&std::fs::read(path)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VcCommitment(pub FcCommitment);

/// Prover-side data kept next to the commitment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcAux {
    /// `C_j`, one PC commitment per subvector.
    pub commitments: Vec<G1Affine>,
    /// `f_j`, the subvector tables (`N` scalars overall).
    pub polys: Vec<MultilinearPoly>,
}

pub fn commit(pp: &VcParams, m: &[Scalar]) -> Result<(VcCommitment, VcAux)> {
    ensure_len(pp.n, m.len())?;
    let polys: Vec<MultilinearPoly> = m
        .chunks(pp.nu)
        .map(|chunk| MultilinearPoly::new(chunk.to_vec()))
        .collect::<Result<_>>()?;
    let commitments = polys
        .par_iter()
        .map(|f| pc::commit(&pp.pc, f).map(|c| c.0))
        .collect::<Result<Vec<_>>>()?;
    let c = fc::commit(&pp.fc, &commitments)?;
    Ok((VcCommitment(c), VcAux { commitments, polys }))
}

fn check_aux(pp: &VcParams, aux: &VcAux, m: &[Scalar]) -> Result<()> {
    ensure_len(pp.n, m.len())?;
    ensure_len(pp.mu, aux.commitments.len())?;
    ensure_len(pp.mu, aux.polys.len())?;
    for (j, (f, chunk)) in aux.polys.iter().zip(m.chunks(pp.nu)).enumerate() {
        if f.evals() != chunk {
            return Err(Error::AuxMismatch(j));
        }
    }
    Ok(())
}

pub fn poly_digest(f: &[Scalar]) -> Digest {
    transcript::scalar_vec_digest(POLY_DIGEST_TAG, f)
}

fn merkle_leaf(c: &G1Affine, digest: &Digest) -> Vec<u8> {
    let mut leaf = encoding::g1_bytes(c);
    leaf.extend_from_slice(digest);
    leaf
}

/// `r_j = H(C ‖ root ‖ j)`.
pub fn fold_challenge(c: &VcCommitment, root: &Digest, j: usize) -> Scalar {
    let c_bytes = encoding::gt_bytes(&c.0 .0);
    transcript::hash_to_scalar(FOLD_CHALLENGE_TAG, &[&c_bytes, root, &(j as u64).to_be_bytes()])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldNode {
    /// `g_w` as an evaluation table.
    pub poly: Vec<Scalar>,
    /// `D_w`.
    pub commitment: G1Affine,
}

/// The fold tree. `levels[0]` holds the randomized leaves `(g_j, D_j)`,
/// `levels[h]` the `μ/2^h` sums over aligned runs of `2^h` leaves, and the
/// last level the root `(g*, D*)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldState {
    levels: Vec<Vec<FoldNode>>,
}

impl FoldState {
    /// Randomizes the leaves with `r` and sums them up the tree.
    pub fn build(aux: &VcAux, r: &[Scalar]) -> Result<Self> {
        ensure_len(aux.polys.len(), r.len())?;
        if !r.len().is_power_of_two() {
            return Err(Error::NotPowerOfTwo(r.len()));
        }
        let leaves: Vec<FoldNode> = aux
            .polys
            .par_iter()
            .zip(&aux.commitments)
            .zip(r)
            .map(|((f, c), rj)| FoldNode {
                poly: f.evals().iter().map(|x| *x * rj).collect(),
                commitment: (*c * rj).into_affine(),
            })
            .collect();
        counters::record(Op::G1Exp, r.len());
        counters::record(Op::FieldOp, r.len() * aux.polys.first().map_or(0, |f| f.evals().len()));

        let mut levels = vec![leaves];
        while levels.last().map_or(0, Vec::len) > 1 {
            let prev = levels.last().expect("non-empty");
            let next: Vec<FoldNode> = prev
                .par_chunks(2)
                .map(|pair| FoldNode {
                    poly: pair[0].poly.iter().zip(&pair[1].poly).map(|(l, r)| *l + r).collect(),
                    commitment: (pair[0].commitment + pair[1].commitment).into_affine(),
                })
                .collect();
            counters::record(Op::FieldOp, next.len() * next[0].poly.len());
            levels.push(next);
        }
        Ok(Self { levels })
    }

    /// Number of fold levels, `log μ`.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, h: usize) -> &[FoldNode] {
        &self.levels[h]
    }

    pub fn root(&self) -> &FoldNode {
        &self.levels[self.depth()][0]
    }

    /// Every parent's evaluations and commitment are the sums of its
    /// children's.
    pub fn check_conservation(&self) -> bool {
        self.levels.windows(2).all(|w| {
            w[1].iter().enumerate().all(|(p, parent)| {
                let (l, r) = (&w[0][2 * p], &w[0][2 * p + 1]);
                parent.commitment == (l.commitment + r.commitment).into_affine()
                    && parent
                        .poly
                        .iter()
                        .zip(l.poly.iter().zip(&r.poly))
                        .all(|(y, (a, b))| *y == *a + b)
            })
        })
    }

    /// Sibling records on the path of leaf `j` for residue `a`.
    pub fn siblings(&self, j: usize, a: usize) -> Vec<SiblingRecord> {
        (0..self.depth())
            .map(|h| {
                let node = (j >> h) ^ 1;
                let sib = &self.levels[h][node];
                SiblingRecord {
                    level: h as u8,
                    node: node as u32,
                    commitment: sib.commitment,
                    eval: sib.poly[a],
                }
            })
            .collect()
    }
}

/// What the prover hands to a verifier at one fold level: the commitment
/// and the evaluation at the verifier's residue of the sibling node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SiblingRecord {
    pub level: u8,
    pub node: u32,
    pub commitment: G1Affine,
    pub eval: Scalar,
}

/// Opening proof for one index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcOpening {
    /// The PC commitments of the block containing the index's subvector.
    pub block: Vec<G1Affine>,
    pub block_proof: FcBatchProof,
    /// Digest of the index's subvector table, completing its Merkle leaf.
    pub poly_digest: Digest,
    pub root: Digest,
    pub path: Vec<Digest>,
    pub siblings: Vec<SiblingRecord>,
    pub d_star: G1Affine,
    pub y_star: Scalar,
    pub eval_proof: PcEvalProof,
}

impl VcOpening {
    pub fn size_bytes(&self) -> usize {
        OPENING_HEADER_BYTES
            + self.block.len() * BilinearCtx::G1_BYTES
            + self.block_proof.size_bytes()
            + 32 * (2 + self.path.len())
            + self.siblings.len() * SIBLING_BYTES
            + BilinearCtx::G1_BYTES
            + BilinearCtx::SCALAR_BYTES
            + self.eval_proof.size_bytes()
    }

    /// Size without the block of PC commitments, for comparisons that count
    /// the block as shared broadcast data.
    pub fn size_bytes_without_block(&self) -> usize {
        self.size_bytes() - self.block.len() * BilinearCtx::G1_BYTES
    }

    /// `header ‖ block ‖ FC proof ‖ poly digest ‖ root ‖ path ‖ siblings ‖ D* ‖ y* ‖ PC proof`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new();
        w.u8(OPENING_VERSION)
            .u8(self.path.len() as u8)
            .u8(self.eval_proof.quotients.len() as u8)
            .u16(self.block.len() as u16);
        for c in &self.block {
            w.g1(c);
        }
        self.block_proof.write_to(&mut w);
        w.bytes(&self.poly_digest).bytes(&self.root);
        for d in &self.path {
            w.bytes(d);
        }
        for s in &self.siblings {
            w.u8(s.level).u32(s.node).g1(&s.commitment).scalar(&s.eval);
        }
        w.g1(&self.d_star).scalar(&self.y_star);
        self.eval_proof.write_to(&mut w);
        w.finish()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader::new(bytes);
        let version = r.u8()?;
        if version != OPENING_VERSION {
            return Err(Error::Decode(format!("unknown opening version {version}")));
        }
        let log_mu = r.u8()? as usize;
        let log_nu = r.u8()? as usize;
        let block_len = r.u16()? as usize;
        if log_mu > 32 || log_nu > 32 {
            return Err(Error::Decode("opening dimensions out of range".into()));
        }
        let block = (0..block_len).map(|_| r.g1()).collect::<Result<Vec<_>>>()?;
        let block_proof = FcBatchProof::read_from(&mut r, log_mu)?;
        let poly_digest = r.array()?;
        let root = r.array()?;
        let path = (0..log_mu).map(|_| r.array()).collect::<Result<Vec<Digest>>>()?;
        let siblings = (0..log_mu)
            .map(|_| {
                Ok(SiblingRecord {
                    level: r.u8()?,
                    node: r.u32()?,
                    commitment: r.g1()?,
                    eval: r.scalar()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let d_star = r.g1()?;
        let y_star = r.scalar()?;
        let eval_proof = PcEvalProof::read_from(&mut r)?;
        if eval_proof.quotients.len() != log_nu {
            return Err(Error::Decode("PC proof length disagrees with the header".into()));
        }
        r.finish()?;
        Ok(Self {
            block,
            block_proof,
            poly_digest,
            root,
            path,
            siblings,
            d_star,
            y_star,
            eval_proof,
        })
    }
}

/// Everything [`open_all`] computes, stored once and shared by all
/// openings. [`AllProofs::opening`] assembles the proof of one index.
#[derive(Clone, Debug)]
pub struct AllProofs {
    mu: usize,
    nu: usize,
    batch: usize,
    blocks: Vec<FcBatchProof>,
    commitments: Vec<G1Affine>,
    poly_digests: Vec<Digest>,
    tree: MerkleTree,
    challenges: Vec<Scalar>,
    fold: FoldState,
    evals: Vec<(Scalar, PcEvalProof)>,
}

impl AllProofs {
    pub fn len(&self) -> usize {
        self.mu * self.nu
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn block_proofs(&self) -> &[FcBatchProof] {
        &self.blocks
    }

    pub fn root(&self) -> Digest {
        self.tree.root()
    }

    /// The fold challenges `r_j`.
    pub fn challenges(&self) -> &[Scalar] {
        &self.challenges
    }

    pub fn fold_state(&self) -> &FoldState {
        &self.fold
    }

    /// `(y*_a, π*_a)` for every residue `a`.
    pub fn root_evaluations(&self) -> &[(Scalar, PcEvalProof)] {
        &self.evals
    }

    pub fn opening(&self, i: usize) -> Result<VcOpening> {
        if i >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.len(),
            });
        }
        let (j, a) = (i / self.nu, i % self.nu);
        let k = j / self.batch;
        let start = k * self.batch;
        let end = (start + self.batch).min(self.mu);
        let (y_star, eval_proof) = self.evals[a].clone();
        Ok(VcOpening {
            block: self.commitments[start..end].to_vec(),
            block_proof: self.blocks[k].clone(),
            poly_digest: self.poly_digests[j],
            root: self.tree.root(),
            path: self.tree.path(j)?,
            siblings: self.fold.siblings(j, a),
            d_star: self.fold.root().commitment,
            y_star,
            eval_proof,
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = VcOpening> + '_ {
        (0..self.len()).map(|i| self.opening(i).expect("index in range"))
    }

    pub fn into_openings(self) -> Vec<VcOpening> {
        self.iter().collect()
    }
}

/// Generates the opening proofs of every index.
pub fn open_all(pp: &VcParams, c: &VcCommitment, aux: &VcAux, m: &[Scalar]) -> Result<AllProofs> {
    open_all_inner(pp, c, aux, m, None)
}

/// [`open_all`] with caller-chosen fold challenges instead of the
/// Merkle-derived ones. The resulting openings do not verify; this exists
/// to test the fold tree in isolation.
#[doc(hidden)]
pub fn open_all_with_challenges(
    pp: &VcParams,
    c: &VcCommitment,
    aux: &VcAux,
    m: &[Scalar],
    challenges: &[Scalar],
) -> Result<AllProofs> {
    ensure_len(pp.mu, challenges.len())?;
    open_all_inner(pp, c, aux, m, Some(challenges))
}

fn open_all_inner(
    pp: &VcParams,
    c: &VcCommitment,
    aux: &VcAux,
    m: &[Scalar],
    forced: Option<&[Scalar]>,
) -> Result<AllProofs> {
    check_aux(pp, aux, m)?;

    // Step 1: one unit-vector batch proof per block of commitments.
    let blocks = (0..pp.block_count())
        .into_par_iter()
        .map(|k| {
            let indices: Vec<usize> = pp.block_range(k).collect();
            let ys = &aux.commitments[pp.block_range(k)];
            fc::batch_open_units(&pp.fc, &c.0, &aux.commitments, &indices, ys)
        })
        .collect::<Result<Vec<_>>>()?;

    // Step 2: Merkle root over (C_j, digest(f_j)), fold, HyperEval at the root.
    let poly_digests: Vec<Digest> = aux.polys.par_iter().map(|f| poly_digest(f.evals())).collect();
    let leaves: Vec<Vec<u8>> = aux
        .commitments
        .iter()
        .zip(&poly_digests)
        .map(|(cj, d)| merkle_leaf(cj, d))
        .collect();
    let tree = MerkleTree::build(&leaves);
    let root = tree.root();
    let challenges: Vec<Scalar> = match forced {
        Some(r) => r.to_vec(),
        None => (0..pp.mu)
            .into_par_iter()
            .map(|j| fold_challenge(c, &root, j))
            .collect(),
    };
    let fold = FoldState::build(aux, &challenges)?;
    debug_assert!(fold.check_conservation());
    let g_star = MultilinearPoly::new(fold.root().poly.clone())?;
    let evals = pc::hyper_eval(&pp.pc, &g_star)?;

    Ok(AllProofs {
        mu: pp.mu,
        nu: pp.nu,
        batch: pp.batch,
        blocks,
        commitments: aux.commitments.clone(),
        poly_digests,
        tree,
        challenges,
        fold,
        evals,
    })
}

/// Checks that `m_i` is the `i`-th entry of the vector committed in `c`.
///
/// Returns `Ok(false)` when any check fails and an error only when the
/// opening's shape does not fit the parameters.
pub fn verify(pp: &VcParams, c: &VcCommitment, i: usize, m_i: Scalar, opening: &VcOpening) -> Result<bool> {
    if i >= pp.n {
        return Err(Error::IndexOutOfRange { index: i, len: pp.n });
    }
    let (j, a) = (i / pp.nu, i % pp.nu);
    let k = j / pp.batch;
    let range = pp.block_range(k);
    let malformed = |what: &str| Err(Error::MalformedProof(what.into()));
    if opening.block.len() != range.len() {
        return malformed("block length does not match the batch size");
    }
    if opening.path.len() != pp.log_mu() || opening.siblings.len() != pp.log_mu() {
        return malformed("path length does not match the parameters");
    }
    if opening.eval_proof.quotients.len() != pp.log_nu() {
        return malformed("PC proof length does not match the parameters");
    }

    // Step 1: the block holds the commitments at positions S_k of C.
    let indices: Vec<usize> = range.clone().collect();
    if !fc::batch_verify_units(&pp.fc, &c.0, &indices, &opening.block, &opening.block_proof)? {
        return Ok(false);
    }
    let c_j = opening.block[j - range.start];

    // Step 2: membership of (C_j, digest(f_j)), then fold up to the root.
    if !MerkleTree::verify(
        &opening.root,
        j,
        &merkle_leaf(&c_j, &opening.poly_digest),
        &opening.path,
    ) {
        return Ok(false);
    }
    let r_j = fold_challenge(c, &opening.root, j);
    let mut y = r_j * m_i;
    let mut d: G1 = c_j * r_j;
    counters::record(Op::G1Exp, 1);
    for (h, s) in opening.siblings.iter().enumerate() {
        if s.level as usize != h || s.node as usize != (j >> h) ^ 1 {
            return Ok(false);
        }
        y += s.eval;
        d += s.commitment;
    }
    if d.into_affine() != opening.d_star || y != opening.y_star {
        return Ok(false);
    }
    pc::verify(
        &pp.pc,
        &pc::PcCommitment(opening.d_star),
        &bin_point(a, pp.log_nu())?,
        opening.y_star,
        &opening.eval_proof,
    )
}

/// Prover holding one committed vector; all proofs are generated on the
/// first request and cached.
pub struct Prover {
    pp: VcParams,
    commitment: VcCommitment,
    aux: VcAux,
    m: Vec<Scalar>,
    proofs: OnceLock<AllProofs>,
}

impl Prover {
    pub fn new(pp: VcParams, m: Vec<Scalar>) -> Result<Self> {
        let (commitment, aux) = commit(&pp, &m)?;
        Ok(Self {
            pp,
            commitment,
            aux,
            m,
            proofs: OnceLock::new(),
        })
    }

    pub fn params(&self) -> &VcParams {
        &self.pp
    }

    pub fn commitment(&self) -> VcCommitment {
        self.commitment
    }

    pub fn aux(&self) -> &VcAux {
        &self.aux
    }

    pub fn all_proofs(&self) -> Result<&AllProofs> {
        if let Some(p) = self.proofs.get() {
            return Ok(p);
        }
        let p = open_all(&self.pp, &self.commitment, &self.aux, &self.m)?;
        Ok(self.proofs.get_or_init(|| p))
    }

    pub fn open(&self, i: usize) -> Result<VcOpening> {
        if i >= self.pp.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.pp.n,
            });
        }
        self.all_proofs()?.opening(i)
    }
}

/// Single-index opening without a cache: runs [`open_all`] and extracts `i`.
pub fn open(pp: &VcParams, c: &VcCommitment, aux: &VcAux, m: &[Scalar], i: usize) -> Result<VcOpening> {
    if i >= pp.n {
        return Err(Error::IndexOutOfRange { index: i, len: pp.n });
    }
    open_all(pp, c, aux, m)?.opening(i)
}

/// Proof that a run of whole subvectors sits at its place in the committed
/// vector: their PC commitments plus one FC batch proof for them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubarrayOpening {
    pub commitments: Vec<G1Affine>,
    pub proof: FcBatchProof,
}

fn subarray_shape(pp: &VcParams, parts: usize) -> Result<usize> {
    if parts == 0 || !pp.n.is_multiple_of(parts) || parts > pp.mu || !pp.mu.is_multiple_of(parts) {
        return Err(Error::MisalignedPartition {
            parts,
            subvectors: pp.mu,
        });
    }
    Ok(pp.mu / parts)
}

/// Openings for the `parts` equal consecutive sub-arrays of the vector.
/// Each sub-array must consist of whole subvectors.
pub fn open_subarrays(pp: &VcParams, c: &VcCommitment, aux: &VcAux, parts: usize) -> Result<Vec<SubarrayOpening>> {
    let per = subarray_shape(pp, parts)?;
    ensure_len(pp.mu, aux.commitments.len())?;
    (0..parts)
        .into_par_iter()
        .map(|p| {
            let indices: Vec<usize> = (p * per..(p + 1) * per).collect();
            let ys = aux.commitments[p * per..(p + 1) * per].to_vec();
            let proof = fc::batch_open_units(&pp.fc, &c.0, &aux.commitments, &indices, &ys)?;
            Ok(SubarrayOpening { commitments: ys, proof })
        })
        .collect()
}

/// Checks that `values` is the `part`-th of `parts` sub-arrays of the
/// committed vector, recommitting its subvectors.
pub fn verify_subarray(
    pp: &VcParams,
    c: &VcCommitment,
    parts: usize,
    part: usize,
    values: &[Scalar],
    opening: &SubarrayOpening,
) -> Result<bool> {
    let per = subarray_shape(pp, parts)?;
    if part >= parts {
        return Err(Error::IndexOutOfRange {
            index: part,
            len: parts,
        });
    }
    ensure_len(per * pp.nu, values.len())?;
    if opening.commitments.len() != per {
        return Err(Error::MalformedProof("wrong number of subvector commitments".into()));
    }
    let recommitted = values
        .par_chunks(pp.nu)
        .map(|chunk| pc::commit(&pp.pc, &MultilinearPoly::new(chunk.to_vec())?).map(|c| c.0))
        .collect::<Result<Vec<_>>>()?;
    if recommitted != opening.commitments {
        return Ok(false);
    }
    let indices: Vec<usize> = (part * per..(part + 1) * per).collect();
    fc::batch_verify_units(&pp.fc, &c.0, &indices, &opening.commitments, &opening.proof)
}

/// `D* = Σ r_j·C_j` computed directly, for cross-checking the fold tree.
pub fn folded_commitment(aux: &VcAux, r: &[Scalar]) -> Result<G1Affine> {
    ensure_len(aux.commitments.len(), r.len())?;
    Ok(aux
        .commitments
        .iter()
        .zip(r)
        .fold(G1::zero(), |acc, (c, rj)| acc + *c * rj)
        .into_affine())
}

//! Fiat–Shamir hashing and the Merkle tree used for multi-verifier
//! challenge derivation.
//!
//! Both random oracles are SHAKE256 with distinct domain labels. Every
//! absorbed item is length-prefixed together with its label, so absorb
//! sequences are unambiguous. Challenges are the wide reduction of 64 bytes
//! of output and are never zero.

use crate::algebra::{G1Affine, G2Affine, Gt, Scalar};
use crate::encoding;
use crate::error::{Error, Result};
use ark_ff::{PrimeField, Zero};
use sha3::digest::{ExtendableOutput, Update, XofReader};
use sha3::Shake256;

/// Domain label of the aggregation-scalar oracle `H`.
pub const LABEL_H: &[u8] = b"FC/H";
/// Domain label of the folding-challenge oracle `H'`.
pub const LABEL_H_PRIME: &[u8] = b"FC/Hprime";

const PROTOCOL: &[u8] = b"flexproofs/v1";

pub type Digest = [u8; 32];

/// Running Fiat–Shamir state.
#[derive(Clone)]
pub struct Transcript {
    state: Shake256,
    label: &'static [u8],
    absorbed: u64,
}

impl Transcript {
    pub fn new(label: &'static [u8]) -> Self {
        let mut state = Shake256::default();
        absorb_framed(&mut state, b"protocol", PROTOCOL);
        absorb_framed(&mut state, b"domain", label);
        Self {
            state,
            label,
            absorbed: 0,
        }
    }

    pub fn label(&self) -> &'static [u8] {
        self.label
    }

    /// Number of messages absorbed so far, challenges included.
    pub fn absorbed(&self) -> u64 {
        self.absorbed
    }

    pub fn append_message(&mut self, label: &[u8], bytes: &[u8]) {
        absorb_framed(&mut self.state, label, bytes);
        self.absorbed += 1;
    }

    pub fn append_scalar(&mut self, label: &[u8], s: &Scalar) {
        self.append_message(label, &encoding::scalar_bytes(s));
    }

    pub fn append_g1(&mut self, label: &[u8], p: &G1Affine) {
        self.append_message(label, &encoding::g1_bytes(p));
    }

    pub fn append_g2(&mut self, label: &[u8], p: &G2Affine) {
        self.append_message(label, &encoding::g2_bytes(p));
    }

    pub fn append_gt(&mut self, label: &[u8], p: &Gt) {
        self.append_message(label, &encoding::gt_bytes(p));
    }

    /// Squeezes a nonzero scalar and absorbs it back, so the next
    /// challenge depends on this one.
    pub fn challenge_scalar(&mut self, label: &[u8]) -> Scalar {
        let state = &self.state;
        let c = nonzero_with_counter(|counter| {
            let mut fork = state.clone();
            absorb_framed(&mut fork, b"challenge", label);
            fork.update(&[counter]);
            wide_reduce(fork)
        });
        self.append_scalar(b"challenge-value", &c);
        c
    }
}

fn absorb_framed(state: &mut Shake256, label: &[u8], bytes: &[u8]) {
    state.update(&(label.len() as u64).to_be_bytes());
    state.update(label);
    state.update(&(bytes.len() as u64).to_be_bytes());
    state.update(bytes);
}

fn wide_reduce(state: Shake256) -> Scalar {
    let mut out = [0u8; 64];
    state.finalize_xof().read(&mut out);
    Scalar::from_be_bytes_mod_order(&out)
}

/// Re-derives with an incremented counter byte until the output is nonzero.
pub(crate) fn nonzero_with_counter(mut derive: impl FnMut(u8) -> Scalar) -> Scalar {
    for counter in 0..=u8::MAX {
        let s = derive(counter);
        if !s.is_zero() {
            return s;
        }
    }
    unreachable!("256 consecutive zero outputs from the hash")
}

/// One-shot oracle: hashes the labelled parts and returns a nonzero scalar.
pub fn hash_to_scalar(domain: &'static [u8], parts: &[&[u8]]) -> Scalar {
    let mut t = Transcript::new(domain);
    for part in parts {
        t.append_message(b"part", part);
    }
    t.challenge_scalar(b"out")
}

/// 32-byte SHAKE256 digest under a domain tag.
pub fn digest(domain: &[u8], parts: &[&[u8]]) -> Digest {
    let mut state = Shake256::default();
    absorb_framed(&mut state, b"digest", domain);
    for part in parts {
        state.update(part);
    }
    let mut out = [0u8; 32];
    state.finalize_xof().read(&mut out);
    out
}

/// Digest of a scalar vector's canonical encoding.
pub fn scalar_vec_digest(domain: &[u8], v: &[Scalar]) -> Digest {
    let mut state = Shake256::default();
    absorb_framed(&mut state, b"digest", domain);
    state.update(&(v.len() as u64).to_be_bytes());
    for s in v {
        state.update(&encoding::scalar_bytes(s));
    }
    let mut out = [0u8; 32];
    state.finalize_xof().read(&mut out);
    out
}

const LEAF_TAG: &[u8] = b"FP/merkle/leaf";
const NODE_TAG: &[u8] = b"FP/merkle/node";
const EMPTY_TAG: &[u8] = b"FP/merkle/empty";

/// Binary Merkle tree over byte-string leaves, padded to a power of two
/// with a fixed empty-leaf digest.
#[derive(Clone, Debug)]
pub struct MerkleTree {
    // levels[0] are the (padded) leaf digests, the last level is the root
    levels: Vec<Vec<Digest>>,
    leaf_count: usize,
}

impl MerkleTree {
    pub fn build<L: AsRef<[u8]>>(leaves: &[L]) -> Self {
        let width = leaves.len().max(1).next_power_of_two();
        let mut level: Vec<Digest> = leaves.iter().map(|l| leaf_digest(l.as_ref())).collect();
        level.resize(width, empty_leaf());
        let mut levels = vec![level];
        while levels.last().map_or(0, Vec::len) > 1 {
            let prev = levels.last().expect("non-empty");
            let next = prev.chunks(2).map(|p| node_digest(&p[0], &p[1])).collect();
            levels.push(next);
        }
        Self {
            levels,
            leaf_count: leaves.len(),
        }
    }

    pub fn root(&self) -> Digest {
        self.levels.last().expect("at least one level")[0]
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_count
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// Sibling digests from the leaf level upward.
    pub fn path(&self, index: usize) -> Result<Vec<Digest>> {
        if index >= self.leaf_count {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.leaf_count,
            });
        }
        let mut pos = index;
        let mut path = Vec::with_capacity(self.depth());
        for level in &self.levels[..self.depth()] {
            path.push(level[pos ^ 1]);
            pos >>= 1;
        }
        Ok(path)
    }

    pub fn verify(root: &Digest, index: usize, leaf: &[u8], path: &[Digest]) -> bool {
        if path.len() < usize::BITS as usize && index >> path.len() != 0 {
            return false;
        }
        let mut acc = leaf_digest(leaf);
        for (level, sibling) in path.iter().enumerate() {
            acc = if (index >> level) & 1 == 0 {
                node_digest(&acc, sibling)
            } else {
                node_digest(sibling, &acc)
            };
        }
        acc == *root
    }
}

pub fn leaf_digest(leaf: &[u8]) -> Digest {
    digest(LEAF_TAG, &[leaf])
}

fn node_digest(l: &Digest, r: &Digest) -> Digest {
    digest(NODE_TAG, &[l, r])
}

fn empty_leaf() -> Digest {
    digest(EMPTY_TAG, &[])
}

//! PST-style commitment to multilinear polynomials.
//!
//! Polynomials are held as hypercube evaluation tables, so the reference
//! string is kept in Lagrange form: for every `t ≤ k` it contains
//! `g1^{eq(s_{<t}, i)}` for all `i < 2^t`, where `s_{<t}` is the trapdoor
//! restricted to the `t` low variables. Commitment is then one
//! multi-exponentiation, and the quotient for variable `x_a` (which only
//! depends on the variables below it) is committed with basis `a`.

use crate::algebra::{eq_table, multi_exp, BilinearCtx, Bn254, G1Affine, G2Affine, MultilinearPoly, Scalar, G1, G2};
use crate::counters::{self, Op};
use crate::encoding::{Reader, Writer};
use crate::error::{ensure_len, Error, Result};
use ark_ec::pairing::Pairing;
use ark_ec::{AffineRepr, CurveGroup, PrimeGroup, ScalarMul};
use ark_ff::{UniformRand, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use std::ops::Add;

// Below this many variables HyperEval recurses sequentially.
const PARALLEL_MIN_VARS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcParams {
    num_vars: usize,
    /// `bases[t][i] = g1^{eq(s_{<t}, Bin(i))}` for `t = 0..=k`.
    bases: Vec<Vec<G1Affine>>,
    /// `g2^{s_a}` for each variable `a`.
    g2_s: Vec<G2Affine>,
}

impl PcParams {
    pub fn setup<R: RngCore>(num_vars: usize, rng: &mut R) -> Self {
        let s: Vec<Scalar> = (0..num_vars).map(|_| Scalar::rand(rng)).collect();
        Self::from_trapdoor(&s)
    }

    /// Deterministic setup from a seed, for tests and benchmarks only.
    pub fn setup_seeded(num_vars: usize, seed: u64) -> Self {
        Self::setup(num_vars, &mut ChaCha20Rng::seed_from_u64(seed))
    }

    /// Builds the parameters from a known trapdoor `s = (s_0, …, s_{k-1})`,
    /// where `s_a` is the secret value of variable `x_a`.
    pub fn from_trapdoor(s: &[Scalar]) -> Self {
        let g1 = G1::generator();
        let bases = (0..=s.len())
            .map(|t| {
                // eq_table takes the most significant variable first
                let point: Vec<Scalar> = s[..t].iter().rev().copied().collect();
                g1.batch_mul(&eq_table(&point))
            })
            .collect();
        let g2_s = G2::generator().batch_mul(s);
        Self {
            num_vars: s.len(),
            bases,
            g2_s,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Lagrange basis over the `t` low variables.
    pub fn basis(&self, t: usize) -> &[G1Affine] {
        &self.bases[t]
    }

    pub fn g2_trapdoor(&self) -> &[G2Affine] {
        &self.g2_s
    }

    pub fn write_to(&self, w: &mut Writer) {
        w.u8(self.num_vars as u8);
        for p in &self.g2_s {
            w.g2(p);
        }
        for basis in &self.bases {
            for p in basis {
                w.g1(p);
            }
        }
    }

    pub fn read_from(r: &mut Reader<'_>) -> Result<Self> {
        let num_vars = r.u8()? as usize;
        if num_vars > 32 {
            return Err(Error::Decode(format!("{num_vars} variables is out of range")));
        }
        let g2_s = (0..num_vars).map(|_| r.g2()).collect::<Result<Vec<_>>>()?;
        let bases = (0..=num_vars)
            .map(|t| (0..1usize << t).map(|_| r.g1()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if bases[0][0] != G1Affine::generator() {
            return Err(Error::Decode("PC parameters use a foreign generator".into()));
        }
        Ok(Self { num_vars, bases, g2_s })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PcCommitment(pub G1Affine);

impl PcCommitment {
    pub fn scale(&self, r: Scalar) -> Self {
        counters::record(Op::G1Exp, 1);
        Self((self.0 * r).into_affine())
    }
}

impl Add for PcCommitment {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self((self.0 + rhs.0).into_affine())
    }
}

/// One quotient commitment per variable; `quotients[a]` belongs to `x_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcEvalProof {
    pub quotients: Vec<G1Affine>,
}

impl PcEvalProof {
    pub fn size_bytes(&self) -> usize {
        1 + self.quotients.len() * BilinearCtx::G1_BYTES
    }

    pub fn write_to(&self, w: &mut Writer) {
        w.u8(self.quotients.len() as u8);
        for q in &self.quotients {
            w.g1(q);
        }
    }

    /// `k ‖ q_0 ‖ … ‖ q_{k-1}`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new();
        self.write_to(&mut w);
        w.finish()
    }

    pub fn read_from(r: &mut Reader<'_>) -> Result<Self> {
        let k = r.u8()? as usize;
        let quotients = (0..k).map(|_| r.g1()).collect::<Result<Vec<_>>>()?;
        Ok(Self { quotients })
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader::new(bytes);
        let proof = Self::read_from(&mut r)?;
        r.finish()?;
        Ok(proof)
    }
}

fn commit_table(pp: &PcParams, table: &[Scalar]) -> G1Affine {
    let t = table.len().trailing_zeros() as usize;
    multi_exp::<G1>(&pp.bases[t], table)
        .expect("table length matches its basis")
        .into_affine()
}

pub fn commit(pp: &PcParams, f: &MultilinearPoly) -> Result<PcCommitment> {
    ensure_len(pp.num_vars, f.num_vars())?;
    Ok(PcCommitment(commit_table(pp, f.evals())))
}

/// Quotient tables for `f(X) − f(r) = Σ_a q_a(X_{<a})·(X_a − r_a)`,
/// obtained by restricting the most significant variable first.
/// Returns `f(r)` and the tables indexed by variable.
pub fn quotients(f: &MultilinearPoly, point: &[Scalar]) -> Result<(Scalar, Vec<Vec<Scalar>>)> {
    let k = f.num_vars();
    ensure_len(k, point.len())?;
    let mut table = f.evals().to_vec();
    let mut qs = vec![Vec::new(); k];
    for (pos, x) in point.iter().enumerate() {
        let half = table.len() / 2;
        let (lo, hi) = table.split_at(half);
        let diff: Vec<Scalar> = lo.iter().zip(hi).map(|(l, h)| *h - l).collect();
        table = lo.iter().zip(&diff).map(|(l, d)| *l + *x * d).collect();
        qs[k - 1 - pos] = diff;
    }
    counters::record(Op::FieldOp, 2 * f.evals().len());
    Ok((table[0], qs))
}

/// Evaluates `f` at `point` and proves the result.
pub fn eval(pp: &PcParams, f: &MultilinearPoly, point: &[Scalar]) -> Result<(Scalar, PcEvalProof)> {
    ensure_len(pp.num_vars, f.num_vars())?;
    let (y, qs) = quotients(f, point)?;
    let quotients = qs.iter().map(|q| commit_table(pp, q)).collect();
    Ok((y, PcEvalProof { quotients }))
}

/// Checks `e(C / g1^y, g2) = ∏_a e(π_a, g2^{s_a} / g2^{r_a})`.
pub fn verify(pp: &PcParams, c: &PcCommitment, point: &[Scalar], y: Scalar, proof: &PcEvalProof) -> Result<bool> {
    let k = pp.num_vars;
    ensure_len(k, point.len())?;
    if proof.quotients.len() != k {
        return Err(Error::MalformedProof(format!(
            "expected {k} quotient commitments, got {}",
            proof.quotients.len()
        )));
    }
    let g1 = G1Affine::generator();
    let g2 = G2Affine::generator();
    let mut lhs = Vec::with_capacity(k + 1);
    let mut rhs = Vec::with_capacity(k + 1);
    lhs.push((c.0.into_group() - g1 * y).into_affine());
    rhs.push((-g2.into_group()).into_affine());
    let shifted: Vec<G2> = (0..k).map(|a| self::shift(pp.g2_s[a], point[k - 1 - a])).collect();
    lhs.extend_from_slice(&proof.quotients);
    rhs.extend(G2::normalize_batch(&shifted));
    counters::record(Op::G1Exp, 1);
    counters::record(Op::G2Exp, k);
    counters::record(Op::Pairing, k + 1);
    Ok(Bn254::multi_pairing(lhs, rhs).is_zero())
}

fn shift(g2_s: G2Affine, r: Scalar) -> G2 {
    g2_s.into_group() - G2::generator() * r
}

/// Proofs for every hypercube point: entry `i` is `(f(Bin(i)), π_i)`.
///
/// The quotient for the top variable of a subtree is the same for every
/// point below it, so each node of the recursion commits to one quotient
/// and shares it with all its leaves: `k·2^{k-1}` group operations overall.
pub fn hyper_eval(pp: &PcParams, f: &MultilinearPoly) -> Result<Vec<(Scalar, PcEvalProof)>> {
    ensure_len(pp.num_vars, f.num_vars())?;
    Ok(hyper_rec(pp, f.evals())
        .into_iter()
        .map(|(y, quotients)| (y, PcEvalProof { quotients }))
        .collect())
}

fn hyper_rec(pp: &PcParams, table: &[Scalar]) -> Vec<(Scalar, Vec<G1Affine>)> {
    let t = table.len().trailing_zeros() as usize;
    if t == 0 {
        return vec![(table[0], Vec::new())];
    }
    let half = table.len() / 2;
    let (lo, hi) = table.split_at(half);
    let diff: Vec<Scalar> = lo.iter().zip(hi).map(|(l, h)| *h - l).collect();
    counters::record(Op::FieldOp, half);
    let (q, (mut left, right)) = if t >= PARALLEL_MIN_VARS {
        rayon::join(
            || commit_table(pp, &diff),
            || rayon::join(|| hyper_rec(pp, lo), || hyper_rec(pp, hi)),
        )
    } else {
        (commit_table(pp, &diff), (hyper_rec(pp, lo), hyper_rec(pp, hi)))
    };
    left.extend(right);
    for (_, qs) in &mut left {
        qs.push(q);
    }
    left
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bin_point;
    use ark_ff::One;

    fn s(v: u64) -> Scalar {
        Scalar::from(v)
    }

    fn random_poly(k: usize, rng: &mut ChaCha20Rng) -> MultilinearPoly {
        MultilinearPoly::new((0..1 << k).map(|_| Scalar::rand(rng)).collect()).unwrap()
    }

    // table of the monomial ∏_{a ∈ subset} x_a
    fn monomial(k: usize, subset: usize) -> MultilinearPoly {
        MultilinearPoly::new(
            (0..1usize << k)
                .map(|i| {
                    if i & subset == subset {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn setup_examples() {
        let g1 = G1::generator();
        let p = PcParams::from_trapdoor(&[]);
        assert_eq!(p.basis(0), &[g1.into_affine()]);
        let c = commit(&p, &MultilinearPoly::constant(s(7), 0)).unwrap();
        assert_eq!(c.0, (g1 * s(7)).into_affine());

        // monomial form (g1, g1^2) for s = (2)
        let p = PcParams::from_trapdoor(&[s(2)]);
        assert_eq!(commit(&p, &monomial(1, 0)).unwrap().0, g1.into_affine());
        assert_eq!(commit(&p, &monomial(1, 1)).unwrap().0, (g1 * s(2)).into_affine());

        // subset products {1, 2, 3, 6} for s = (2, 3)
        let p = PcParams::from_trapdoor(&[s(2), s(3)]);
        for (subset, e) in [(0, 1u64), (1, 2), (2, 3), (3, 6)] {
            assert_eq!(commit(&p, &monomial(2, subset)).unwrap().0, (g1 * s(e)).into_affine());
        }
        assert_eq!(
            p.g2_trapdoor(),
            &[
                (G2::generator() * s(2)).into_affine(),
                (G2::generator() * s(3)).into_affine()
            ]
        );
    }

    #[test]
    fn commit_examples() {
        let p = PcParams::from_trapdoor(&[s(2), s(3)]);
        assert!(commit(&p, &MultilinearPoly::constant(Scalar::zero(), 2))
            .unwrap()
            .0
            .is_zero());
        assert_eq!(
            commit(&p, &MultilinearPoly::constant(s(5), 2)).unwrap().0,
            (G1::generator() * s(5)).into_affine()
        );
        // f(x_1, x_0) from table (1, 0, 0, 1), evaluated at (s_1, s_0) = (3, 2)
        let f = MultilinearPoly::new(vec![s(1), s(0), s(0), s(1)]).unwrap();
        let at_s = f.evaluate(&[s(3), s(2)]).unwrap();
        assert_eq!(commit(&p, &f).unwrap().0, (G1::generator() * at_s).into_affine());
        assert!(commit(&p, &MultilinearPoly::constant(s(1), 1)).is_err());
    }

    #[test]
    fn eval_examples() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let p0 = PcParams::setup_seeded(0, 1);
        let f0 = MultilinearPoly::constant(s(4), 0);
        let (y, proof) = eval(&p0, &f0, &[]).unwrap();
        assert_eq!(y, s(4));
        assert!(proof.quotients.is_empty());
        assert!(verify(&p0, &commit(&p0, &f0).unwrap(), &[], y, &proof).unwrap());

        let p = PcParams::setup_seeded(3, 2);
        let f = random_poly(3, &mut rng);
        let c = commit(&p, &f).unwrap();
        for i in 0..8 {
            let (y, proof) = eval(&p, &f, &bin_point(i, 3).unwrap()).unwrap();
            assert_eq!(y, f.evals()[i]);
            assert!(verify(&p, &c, &bin_point(i, 3).unwrap(), y, &proof).unwrap());
        }
        assert!(eval(&p, &f, &[s(1)]).is_err());
    }

    #[test]
    fn quotient_identity_holds_at_random_points() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let k = 2;
        let p = PcParams::setup_seeded(k, 3);
        let f = random_poly(k, &mut rng);
        let r: Vec<Scalar> = (0..k).map(|_| Scalar::rand(&mut rng)).collect();
        let (y, qs) = quotients(&f, &r).unwrap();
        assert_eq!(y, f.evaluate(&r).unwrap());
        for _ in 0..20 {
            // X = (X_{k-1}, …, X_0)
            let x: Vec<Scalar> = (0..k).map(|_| Scalar::rand(&mut rng)).collect();
            let mut rhs = Scalar::zero();
            for (a, q) in qs.iter().enumerate() {
                // q_a depends on X_{a-1}, …, X_0 — the last a coordinates of X
                let qa = MultilinearPoly::new(q.clone()).unwrap().evaluate(&x[k - a..]).unwrap();
                rhs += qa * (x[k - 1 - a] - r[k - 1 - a]);
            }
            assert_eq!(f.evaluate(&x).unwrap() - y, rhs);
        }
        let (y, proof) = eval(&p, &f, &r).unwrap();
        assert!(verify(&p, &commit(&p, &f).unwrap(), &r, y, &proof).unwrap());
    }

    #[test]
    fn verify_rejects_wrong_value_and_tampered_quotient() {
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        let p = PcParams::setup_seeded(4, 4);
        let f = random_poly(4, &mut rng);
        let c = commit(&p, &f).unwrap();
        let r: Vec<Scalar> = (0..4).map(|_| Scalar::rand(&mut rng)).collect();
        let (y, proof) = eval(&p, &f, &r).unwrap();
        assert!(verify(&p, &c, &r, y, &proof).unwrap());
        assert!(!verify(&p, &c, &r, y + Scalar::one(), &proof).unwrap());
        for a in 0..4 {
            let mut bad = proof.clone();
            bad.quotients[a] = (bad.quotients[a] + G1::generator()).into_affine();
            assert!(!verify(&p, &c, &r, y, &bad).unwrap());
        }
        let mut short = proof.clone();
        short.quotients.pop();
        assert!(verify(&p, &c, &r, y, &short).is_err());
    }

    #[test]
    fn hyper_eval_matches_per_point_eval() {
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        for k in 0..=4 {
            let p = PcParams::setup_seeded(k, 10 + k as u64);
            let f = random_poly(k, &mut rng);
            let c = commit(&p, &f).unwrap();
            let all = hyper_eval(&p, &f).unwrap();
            assert_eq!(all.len(), 1 << k);
            for (i, (y, proof)) in all.iter().enumerate() {
                let point = bin_point(i, k).unwrap();
                let (y_ref, proof_ref) = eval(&p, &f, &point).unwrap();
                assert_eq!((*y, proof), (y_ref, &proof_ref));
                assert!(verify(&p, &c, &point, *y, proof).unwrap());
            }
        }
    }

    #[test]
    fn hyper_eval_of_constant() {
        let p = PcParams::setup_seeded(3, 6);
        let all = hyper_eval(&p, &MultilinearPoly::constant(s(9), 3)).unwrap();
        assert!(all
            .iter()
            .all(|(y, proof)| *y == s(9) && proof.quotients.iter().all(|q| q.is_zero())));
    }

    #[test]
    fn commitments_are_homomorphic() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        for k in 0..=6 {
            let p = PcParams::setup_seeded(k, 20 + k as u64);
            let f = random_poly(k, &mut rng);
            let g = random_poly(k, &mut rng);
            let r = Scalar::rand(&mut rng);
            let lhs = commit(&p, &f.scale(r).add(&g).unwrap()).unwrap();
            let rhs = commit(&p, &f).unwrap().scale(r) + commit(&p, &g).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn proof_encoding_round_trips() {
        let mut rng = ChaCha20Rng::seed_from_u64(8);
        let p = PcParams::setup_seeded(3, 8);
        let f = random_poly(3, &mut rng);
        let (_, proof) = eval(&p, &f, &bin_point(5, 3).unwrap()).unwrap();
        let bytes = proof.to_bytes();
        assert_eq!(bytes.len(), proof.size_bytes());
        assert_eq!(bytes[0], 3);
        assert_eq!(PcEvalProof::from_bytes(&bytes).unwrap(), proof);
    }

    #[test]
    fn params_round_trip() {
        let p = PcParams::setup_seeded(3, 9);
        let mut w = Writer::new();
        p.write_to(&mut w);
        let bytes = w.finish();
        let mut r = Reader::new(&bytes);
        assert_eq!(PcParams::read_from(&mut r).unwrap(), p);
        r.finish().unwrap();
    }
}

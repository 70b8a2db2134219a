//! Pairing groups, vector arithmetic and multilinear extensions.
//!
//! Everything is instantiated over BN254. Group elements are written
//! additively (arkworks convention), so the multiplicative notation
//! `A^x` becomes `A * x` and `A ∘ B` becomes element-wise addition.

use crate::counters::{self, Op};
use crate::error::{ensure_len, Error, Result};
use ark_ec::pairing::{Pairing, PairingOutput};
use ark_ec::{AffineRepr, CurveGroup, PrimeGroup, VariableBaseMSM};
use ark_ff::{Field, One, Zero};
use rayon::prelude::*;

pub use ark_bn254::{Bn254, Fr as Scalar, G1Affine, G1Projective as G1, G2Affine, G2Projective as G2};

/// The pairing target group.
pub type Gt = PairingOutput<Bn254>;

/// Static description of the bilinear group in use.
///
/// The byte widths are the canonical compressed encodings produced by
/// [`crate::encoding`]; GT elements are stored as a full Fp12 element.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BilinearCtx;

impl BilinearCtx {
    pub const CURVE_ID: &'static str = "bn254";
    pub const SCALAR_BYTES: usize = 32;
    pub const G1_BYTES: usize = 32;
    pub const G2_BYTES: usize = 64;
    pub const GT_BYTES: usize = 384;

    pub fn g1() -> G1Affine {
        G1Affine::generator()
    }

    pub fn g2() -> G2Affine {
        G2Affine::generator()
    }

    /// `e(g1, g2)`.
    pub fn gt() -> Gt {
        Gt::generator()
    }

    pub fn pairing(a: G1Affine, b: G2Affine) -> Gt {
        counters::record(Op::Pairing, 1);
        Bn254::pairing(a, b)
    }
}

/// Groups whose multi-exponentiations are counted by [`counters`].
pub trait CountedGroup: VariableBaseMSM {
    const OP: Op;
}

// Spelled out with the concrete curve configs: coherence cannot see through
// the `BnConfig` projections behind the `G1`/`G2` aliases.
impl CountedGroup for ark_ec::short_weierstrass::Projective<ark_bn254::g1::Config> {
    const OP: Op = Op::G1Exp;
}

impl CountedGroup for ark_ec::short_weierstrass::Projective<ark_bn254::g2::Config> {
    const OP: Op = Op::G2Exp;
}

impl CountedGroup for Gt {
    const OP: Op = Op::GtExp;
}

/// `∏ bases[i]^{scalars[i]}`; the identity for empty input.
pub fn multi_exp<G>(bases: &[G::MulBase], scalars: &[Scalar]) -> Result<G>
where
    G: CountedGroup + VariableBaseMSM<ScalarField = Scalar>,
{
    ensure_len(bases.len(), scalars.len())?;
    counters::record(G::OP, bases.len());
    Ok(G::msm_unchecked(bases, scalars))
}

/// Multi-exponentiation that skips zero exponents, for sparse scalar vectors.
pub fn sparse_multi_exp<G>(bases: &[G::MulBase], scalars: &[Scalar]) -> Result<G>
where
    G: CountedGroup<ScalarField = Scalar>,
{
    ensure_len(bases.len(), scalars.len())?;
    let nonzero = scalars.iter().filter(|s| !s.is_zero()).count();
    if nonzero * 4 >= scalars.len() {
        return multi_exp(bases, scalars);
    }
    let (b, s): (Vec<_>, Vec<_>) = bases
        .iter()
        .zip(scalars)
        .filter(|(_, s)| !s.is_zero())
        .map(|(b, s)| (*b, *s))
        .unzip();
    multi_exp(&b, &s)
}

/// `A * B = ∏ e(A[i], B[i])`, computed as one multi-Miller loop.
pub fn pairing_prod(a: &[G1Affine], b: &[G2Affine]) -> Result<Gt> {
    ensure_len(a.len(), b.len())?;
    if a.is_empty() {
        return Ok(Gt::zero());
    }
    counters::record(Op::Pairing, a.len());
    // Chunked Miller loops in parallel; the final exponentiation runs once.
    const CHUNK: usize = 64;
    if a.len() <= CHUNK {
        return Ok(Bn254::multi_pairing(a.iter().copied(), b.iter().copied()));
    }
    let ml = a
        .par_chunks(CHUNK)
        .zip(b.par_chunks(CHUNK))
        .map(|(ca, cb)| Bn254::multi_miller_loop(ca.iter().copied(), cb.iter().copied()).0)
        .reduce(<Bn254 as Pairing>::TargetField::one, |x, y| x * y);
    Ok(Bn254::final_exponentiation(ark_ec::pairing::MillerLoopOutput(ml))
        .expect("final exponentiation of a Miller loop output"))
}

/// `A ∘ B`, element-wise group operation.
pub fn hadamard<G: CurveGroup>(a: &[G], b: &[G]) -> Result<Vec<G>> {
    ensure_len(a.len(), b.len())?;
    Ok(a.iter().zip(b).map(|(x, y)| *x + y).collect())
}

/// `A^x`, element-wise.
pub fn vec_pow<G: PrimeGroup<ScalarField = Scalar>>(a: &[G], x: Scalar) -> Vec<G> {
    a.iter().map(|g| *g * x).collect()
}

/// Splits an even-length slice into its left and right halves.
pub fn split_lr<T>(v: &[T]) -> Result<(&[T], &[T])> {
    if !v.len().is_multiple_of(2) {
        return Err(Error::OddLength(v.len()));
    }
    Ok(v.split_at(v.len() / 2))
}

/// Bit decomposition `(i_{k-1}, …, i_0)`, most significant bit first.
pub fn bin(i: usize, k: usize) -> Result<Vec<bool>> {
    if k < usize::BITS as usize && i >> k != 0 {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: 1usize << k,
        });
    }
    Ok((0..k).rev().map(|a| (i >> a) & 1 == 1).collect())
}

/// [`bin`] lifted into the field, ready to use as an evaluation point.
pub fn bin_point(i: usize, k: usize) -> Result<Vec<Scalar>> {
    Ok(bin(i, k)?
        .into_iter()
        .map(|bit| if bit { Scalar::one() } else { Scalar::zero() })
        .collect())
}

/// Equality-polynomial table over the hypercube.
///
/// For a point `x = (x_{k-1}, …, x_0)` returns `w` with
/// `w[i] = ∏_a (i_a x_a + (1 - i_a)(1 - x_a))`, built by doubling in O(2^k).
pub fn eq_table(point: &[Scalar]) -> Vec<Scalar> {
    let mut table = Vec::with_capacity(1 << point.len());
    table.push(Scalar::one());
    for x in point {
        let prev = std::mem::take(&mut table);
        table.reserve(prev.len() * 2);
        for w in prev {
            let hi = w * x;
            table.push(w - hi);
            table.push(hi);
        }
    }
    counters::record(Op::FieldOp, table.len());
    table
}

/// A multilinear polynomial stored by its evaluations on `{0,1}^k`.
///
/// Entry `i` is the value at `Bin(i)`: bit `a` of the index is the
/// coordinate of variable `x_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearPoly {
    evals: Vec<Scalar>,
    num_vars: usize,
}

impl MultilinearPoly {
    pub fn new(evals: Vec<Scalar>) -> Result<Self> {
        let len = evals.len();
        if !len.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(len));
        }
        Ok(Self {
            num_vars: len.trailing_zeros() as usize,
            evals,
        })
    }

    pub fn constant(c: Scalar, num_vars: usize) -> Self {
        Self {
            evals: vec![c; 1 << num_vars],
            num_vars,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn evals(&self) -> &[Scalar] {
        &self.evals
    }

    pub fn into_evals(self) -> Vec<Scalar> {
        self.evals
    }

    /// Value of the multilinear extension at `point` (most significant
    /// variable first), by restricting one variable at a time.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        ensure_len(self.num_vars, point.len())?;
        let mut table = self.evals.clone();
        for x in point {
            let half = table.len() / 2;
            for i in 0..half {
                let lo = table[i];
                table[i] = lo + (table[i + half] - lo) * x;
            }
            table.truncate(half);
        }
        counters::record(Op::FieldOp, self.evals.len());
        Ok(table[0])
    }

    pub fn scale(&self, r: Scalar) -> Self {
        Self {
            evals: self.evals.iter().map(|e| *e * r).collect(),
            num_vars: self.num_vars,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        ensure_len(self.num_vars, other.num_vars)?;
        Ok(Self {
            evals: self.evals.iter().zip(&other.evals).map(|(a, b)| *a + b).collect(),
            num_vars: self.num_vars,
        })
    }
}

/// Convenience wrapper for [`MultilinearPoly::evaluate`].
pub fn mle_eval(f: &MultilinearPoly, x: &[Scalar]) -> Result<Scalar> {
    f.evaluate(x)
}

/// Converts a batch of projective points to affine form.
pub fn to_affine<G: CurveGroup>(points: &[G]) -> Vec<G::Affine> {
    G::normalize_batch(points)
}

pub(crate) fn inverse(x: Scalar) -> Scalar {
    x.inverse().expect("challenge scalars are nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use ark_ff::UniformRand;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn s(v: u64) -> Scalar {
        Scalar::from(v)
    }

    // the multilinear extension written out term by term, for cross-checking `evaluate`
    fn brute_force_mle(m: &[Scalar], x: &[Scalar]) -> Scalar {
        let k = x.len();
        let mut acc = Scalar::zero();
        for (i, mi) in m.iter().enumerate() {
            let mut term = *mi;
            for a in 0..k {
                // x is most-significant first, so x_a sits at position k-1-a
                let xa = x[k - 1 - a];
                let ia = (i >> a) & 1;
                term *= if ia == 1 { xa } else { Scalar::one() - xa };
            }
            acc += term;
        }
        acc
    }

    #[test]
    fn multi_exp_examples() {
        let g = BilinearCtx::g1();
        let a: Vec<G1Affine> = vec![(g * s(2)).into_affine(), (g * s(3)).into_affine()];
        let zero: G1 = multi_exp(&a, &[Scalar::zero(), Scalar::zero()]).unwrap();
        assert!(zero.is_zero());
        let unit: G1 = multi_exp(&a, &[Scalar::zero(), Scalar::one()]).unwrap();
        assert_eq!(unit.into_affine(), a[1]);
        let r: G1 = multi_exp(&a, &[s(5), s(7)]).unwrap();
        assert_eq!(r, g * s(31));
        assert!(multi_exp::<G1>(&a, &[s(1)]).is_err());
        let empty: G1 = multi_exp(&[], &[]).unwrap();
        assert!(empty.is_zero());
    }

    #[test]
    fn pairing_prod_examples() {
        let g1 = BilinearCtx::g1();
        let g2 = BilinearCtx::g2();
        let ident = pairing_prod(&[G1Affine::zero(), G1Affine::zero()], &[g2, g2]).unwrap();
        assert!(ident.is_zero());
        let single = pairing_prod(&[(g1 * s(6)).into_affine()], &[(g2 * s(7)).into_affine()]).unwrap();
        assert_eq!(single, BilinearCtx::gt() * s(42));
        let a = [(g1 * s(2)).into_affine(), (g1 * s(3)).into_affine()];
        let b = [(g2 * s(5)).into_affine(), (g2 * s(7)).into_affine()];
        assert_eq!(pairing_prod(&a, &b).unwrap(), BilinearCtx::gt() * s(31));
        assert!(pairing_prod(&a, &b[..1]).is_err());
        assert!(pairing_prod(&[], &[]).unwrap().is_zero());
    }

    #[test]
    fn pairing_prod_splits_and_chunks() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let n = 200;
        let a: Vec<G1Affine> = (0..n).map(|_| G1Affine::rand(&mut rng)).collect();
        let b: Vec<G2Affine> = (0..n).map(|_| G2Affine::rand(&mut rng)).collect();
        let whole = pairing_prod(&a, &b).unwrap();
        let (al, ar) = split_lr(&a).unwrap();
        let (bl, br) = split_lr(&b).unwrap();
        assert_eq!(whole, pairing_prod(al, bl).unwrap() + pairing_prod(ar, br).unwrap());
        let naive = a
            .iter()
            .zip(&b)
            .fold(Gt::zero(), |acc, (x, y)| acc + Bn254::pairing(*x, *y));
        assert_eq!(whole, naive);
    }

    #[test]
    fn bilinearity() {
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        for _ in 0..3 {
            let a = Scalar::from(u64::rand(&mut rng) % 1000);
            let b = Scalar::from(u64::rand(&mut rng) % 1000);
            let lhs = BilinearCtx::pairing(
                (BilinearCtx::g1() * a).into_affine(),
                (BilinearCtx::g2() * b).into_affine(),
            );
            assert_eq!(lhs, BilinearCtx::gt() * (a * b));
        }
    }

    #[test]
    fn vector_helpers() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let a: Vec<G1> = (0..4).map(|_| G1::rand(&mut rng)).collect();
        assert_eq!(hadamard(&a, &vec![G1::zero(); 4]).unwrap(), a);
        assert!(hadamard(&a, &a[..3]).is_err());
        assert_eq!(vec_pow(&a, Scalar::one()), a);
        let (l, r) = split_lr(&[1, 2, 3, 4]).unwrap();
        assert_eq!((l, r), (&[1, 2][..], &[3, 4][..]));
        assert!(split_lr(&[1, 2, 3]).is_err());
    }

    #[test]
    fn bin_examples() {
        assert_eq!(bin(0, 3).unwrap(), vec![false, false, false]);
        assert_eq!(bin(5, 3).unwrap(), vec![true, false, true]);
        assert_eq!(bin(6, 3).unwrap(), vec![true, true, false]);
        assert!(bin(8, 3).is_err());
        assert_eq!(bin(0, 0).unwrap(), Vec::<bool>::new());
    }

    #[test]
    fn mle_examples() {
        let f = MultilinearPoly::new(vec![s(3), s(5)]).unwrap();
        // 3·(1−2) + 5·2
        assert_eq!(mle_eval(&f, &[s(2)]).unwrap(), s(7));
        let c = MultilinearPoly::constant(s(9), 3);
        assert_eq!(mle_eval(&c, &[s(11), s(12), s(13)]).unwrap(), s(9));
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        let m: Vec<Scalar> = (0..8).map(|_| Scalar::rand(&mut rng)).collect();
        let f = MultilinearPoly::new(m.clone()).unwrap();
        for (i, mi) in m.iter().enumerate() {
            assert_eq!(f.evaluate(&bin_point(i, 3).unwrap()).unwrap(), *mi);
        }
        assert!(f.evaluate(&[s(1)]).is_err());
        assert!(MultilinearPoly::new(vec![s(1); 3]).is_err());
    }

    #[test]
    fn mle_matches_brute_force_up_to_six_vars() {
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        for k in 0..=6 {
            for _ in 0..4 {
                let m: Vec<Scalar> = (0..1 << k).map(|_| Scalar::rand(&mut rng)).collect();
                let x: Vec<Scalar> = (0..k).map(|_| Scalar::rand(&mut rng)).collect();
                let f = MultilinearPoly::new(m.clone()).unwrap();
                assert_eq!(f.evaluate(&x).unwrap(), brute_force_mle(&m, &x));
                let via_eq: Scalar = eq_table(&x).iter().zip(&m).map(|(w, v)| *w * v).sum();
                assert_eq!(via_eq, brute_force_mle(&m, &x));
            }
        }
    }

    #[test]
    fn eq_table_selects_hypercube_points() {
        for i in 0..8 {
            let w = eq_table(&bin_point(i, 3).unwrap());
            for (j, wj) in w.iter().enumerate() {
                assert_eq!(*wj, if i == j { Scalar::one() } else { Scalar::zero() });
            }
        }
        assert_eq!(eq_table(&[s(5)]), vec![-s(4), s(5)]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(16))]

            #[test]
            fn multi_exp_is_additive(seed in any::<u64>(), n in 1usize..8) {
                let mut rng = ChaCha20Rng::seed_from_u64(seed);
                let a: Vec<G1Affine> = (0..n).map(|_| G1Affine::rand(&mut rng)).collect();
                let b: Vec<Scalar> = (0..n).map(|_| Scalar::from(u64::rand(&mut rng) % 1000)).collect();
                let c: Vec<Scalar> = (0..n).map(|_| Scalar::from(u64::rand(&mut rng) % 1000)).collect();
                let bc: Vec<Scalar> = b.iter().zip(&c).map(|(x, y)| *x + y).collect();
                let lhs: G1 = multi_exp(&a, &bc).unwrap();
                let rhs: G1 = multi_exp::<G1>(&a, &b).unwrap() + multi_exp::<G1>(&a, &c).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn sparse_and_dense_multi_exp_agree(seed in any::<u64>(), n in 1usize..40) {
                let mut rng = ChaCha20Rng::seed_from_u64(seed);
                let a: Vec<G1Affine> = (0..n).map(|_| G1Affine::rand(&mut rng)).collect();
                let b: Vec<Scalar> = (0..n)
                    .map(|i| if i % 7 == 3 { Scalar::rand(&mut rng) } else { Scalar::zero() })
                    .collect();
                let dense: G1 = multi_exp(&a, &b).unwrap();
                let sparse: G1 = sparse_multi_exp(&a, &b).unwrap();
                prop_assert_eq!(dense, sparse);
            }
        }
    }
}

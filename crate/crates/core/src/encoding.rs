//! Canonical byte encodings.
//!
//! Scalars are 32-byte big-endian integers below the field modulus. Curve
//! points use the compressed arkworks encoding and GT elements the full
//! Fp12 encoding. Decoding is strict: an input is accepted only if it
//! re-encodes to the same bytes, so every element has exactly one encoding.

use crate::algebra::{BilinearCtx, G1Affine, G2Affine, Gt, Scalar};
use crate::error::{Error, Result};
use ark_ff::{BigInteger, PrimeField};
use ark_serialize::{CanonicalDeserialize, CanonicalSerialize};

pub fn scalar_bytes(s: &Scalar) -> [u8; 32] {
    let be = s.into_bigint().to_bytes_be();
    let mut out = [0u8; 32];
    out.copy_from_slice(&be);
    out
}

pub fn scalar_from_bytes(bytes: &[u8]) -> Result<Scalar> {
    if bytes.len() != BilinearCtx::SCALAR_BYTES {
        return Err(Error::Decode(format!("scalar needs 32 bytes, got {}", bytes.len())));
    }
    let s = Scalar::from_be_bytes_mod_order(bytes);
    if scalar_bytes(&s) != bytes {
        return Err(Error::Decode("non-canonical scalar".into()));
    }
    Ok(s)
}

fn compressed<T: CanonicalSerialize>(t: &T) -> Vec<u8> {
    let mut out = Vec::with_capacity(t.compressed_size());
    t.serialize_compressed(&mut out)
        .expect("serializing into a Vec cannot fail");
    out
}

fn strict<T: CanonicalSerialize + CanonicalDeserialize>(bytes: &[u8], what: &str) -> Result<T> {
    let t = T::deserialize_compressed(bytes).map_err(|e| Error::Decode(format!("{what}: {e}")))?;
    if compressed(&t) != bytes {
        return Err(Error::Decode(format!("non-canonical {what}")));
    }
    Ok(t)
}

pub fn g1_bytes(p: &G1Affine) -> Vec<u8> {
    compressed(p)
}

pub fn g2_bytes(p: &G2Affine) -> Vec<u8> {
    compressed(p)
}

pub fn gt_bytes(p: &Gt) -> Vec<u8> {
    compressed(p)
}

pub fn g1_from_bytes(bytes: &[u8]) -> Result<G1Affine> {
    strict(bytes, "G1 element")
}

pub fn g2_from_bytes(bytes: &[u8]) -> Result<G2Affine> {
    strict(bytes, "G2 element")
}

pub fn gt_from_bytes(bytes: &[u8]) -> Result<Gt> {
    strict(bytes, "GT element")
}

/// Append-only byte sink with typed writers.
#[derive(Default)]
pub struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bytes(&mut self, b: &[u8]) -> &mut Self {
        self.buf.extend_from_slice(b);
        self
    }

    pub fn u8(&mut self, v: u8) -> &mut Self {
        self.buf.push(v);
        self
    }

    pub fn u16(&mut self, v: u16) -> &mut Self {
        self.bytes(&v.to_be_bytes())
    }

    pub fn u32(&mut self, v: u32) -> &mut Self {
        self.bytes(&v.to_be_bytes())
    }

    pub fn u64(&mut self, v: u64) -> &mut Self {
        self.bytes(&v.to_be_bytes())
    }

    pub fn scalar(&mut self, s: &Scalar) -> &mut Self {
        self.bytes(&scalar_bytes(s))
    }

    pub fn g1(&mut self, p: &G1Affine) -> &mut Self {
        self.bytes(&g1_bytes(p))
    }

    pub fn g2(&mut self, p: &G2Affine) -> &mut Self {
        self.bytes(&g2_bytes(p))
    }

    pub fn gt(&mut self, p: &Gt) -> &mut Self {
        self.bytes(&gt_bytes(p))
    }

    pub fn finish(self) -> Vec<u8> {
        self.buf
    }
}

/// Cursor over an encoded buffer. Every read fails cleanly on truncation.
pub struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Self { buf, pos: 0 }
    }

    pub fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|end| *end <= self.buf.len())
            .ok_or_else(|| Error::Decode(format!("truncated input at byte {}", self.pos)))?;
        let out = &self.buf[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    pub fn array<const N: usize>(&mut self) -> Result<[u8; N]> {
        let mut out = [0u8; N];
        out.copy_from_slice(self.take(N)?);
        Ok(out)
    }

    pub fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    pub fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_be_bytes(self.array()?))
    }

    pub fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_be_bytes(self.array()?))
    }

    pub fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_be_bytes(self.array()?))
    }

    pub fn scalar(&mut self) -> Result<Scalar> {
        scalar_from_bytes(self.take(BilinearCtx::SCALAR_BYTES)?)
    }

    pub fn g1(&mut self) -> Result<G1Affine> {
        g1_from_bytes(self.take(BilinearCtx::G1_BYTES)?)
    }

    pub fn g2(&mut self) -> Result<G2Affine> {
        g2_from_bytes(self.take(BilinearCtx::G2_BYTES)?)
    }

    pub fn gt(&mut self) -> Result<Gt> {
        gt_from_bytes(self.take(BilinearCtx::GT_BYTES)?)
    }

    pub fn remaining(&self) -> usize {
        self.buf.len() - self.pos
    }

    /// Fails if any bytes are left unread.
    pub fn finish(self) -> Result<()> {
        if self.remaining() != 0 {
            return Err(Error::Decode(format!("{} trailing bytes", self.remaining())));
        }
        Ok(())
    }
}

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("{0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("duplicate index {0}")]
    DuplicateIndex(usize),

    #[error("a batch opening needs at least one claim")]
    EmptyBatch,

    #[error("batch size {batch} outside 1..={max}")]
    InvalidBatchSize { batch: usize, max: usize },

    #[error("odd length {0} cannot be split into halves")]
    OddLength(usize),

    #[error("malformed proof: {0}")]
    MalformedProof(String),

    #[error("decoding failed: {0}")]
    Decode(String),

    #[error("bad magic bytes in parameter file")]
    BadMagic,

    #[error("unsupported curve id {0:?}")]
    UnsupportedCurve(String),

    #[error("auxiliary data does not match the committed vector at subvector {0}")]
    AuxMismatch(usize),

    #[error("{parts} sub-arrays do not align with {subvectors} subvectors")]
    MisalignedPartition { parts: usize, subvectors: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, got })
    }
}

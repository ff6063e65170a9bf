use thiserror::Error;

/// Everything that can go wrong outside of an honest "signature invalid"
/// verdict. Verification failure is reported as `Ok(false)`, never as an
/// error; errors mean the inputs were structurally unusable.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("empty ring")]
    EmptyRing,
    #[error("duplicate ring entry")]
    DuplicateRingEntry,
    #[error("empty identity")]
    EmptyIdentity,
    #[error("empty warrant")]
    EmptyWarrant,
    #[error("signer index {index} out of range for ring of size {ring_size}")]
    SignerIndexOutOfRange { index: usize, ring_size: usize },
    #[error("signer key does not match the ring entry at the signer index")]
    SignerMismatch,
    #[error("combined public key does not match the proxy key pair")]
    CombinedKeyMismatch,
    #[error("delegation token failed verification")]
    InvalidDelegation,
    #[error("ring length and signature value count differ")]
    LengthMismatch,

    // Wire format errors, one per rejection class.
    #[error("bad magic bytes")]
    BadMagic,
    #[error("unsupported format version {0}")]
    UnsupportedVersion(u8),
    #[error("unknown artifact kind {0}")]
    UnknownKind(u8),
    #[error("unknown curve id {0}")]
    UnknownCurve(u8),
    #[error("truncated input")]
    Truncated,
    #[error("trailing bytes after payload")]
    TrailingBytes,
    #[error("invalid point encoding")]
    InvalidPoint,
    #[error("scalar out of range")]
    InvalidScalar,
    #[error("invalid target group encoding")]
    InvalidTarget,
    #[error("invalid hex armor")]
    BadHex,
    #[error("expected {expected} artifact, found {found}")]
    KindMismatch {
        expected: &'static str,
        found: &'static str,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

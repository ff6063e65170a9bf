//! Canonical binary serialization for every public artifact.
//!
//! Every file is an envelope: `magic ‖ version ‖ kind ‖ payload`. Payloads
//! use fixed-length compressed group encodings and 8-byte big-endian length
//! prefixes; signatures embed their full ring descriptor since verification
//! needs the member list. Decoding validates everything — magic, version,
//! kind, lengths, point subgroup membership, scalar range — and returns a
//! distinct error per rejection class, never panicking on junk input.
//!
//! The master key file deliberately does not use the envelope: it is a
//! private, minimal `version ‖ scalar` blob that should never be confused
//! with a shareable artifact.

use crate::error::{Error, Result};
use crate::groups::{BasePoint, CurveId, KeyPoint, Scalar, TargetElem};
use crate::hashing::RingDescriptor;
use crate::kgc::{IdentitySecretKey, MasterKey, SystemParams};
use crate::proxy_ring::{DelegationToken, LongTermKeyPair, ProxyKeyPair, ProxyRingSignature};
use crate::ring_sig::RingSignature;

pub const MAGIC: [u8; 4] = *b"IDRS";
pub const VERSION: u8 = 1;

const KIND_PARAMS: u8 = 1;
const KIND_IDENTITY_KEY: u8 = 2;
const KIND_RING_SIG: u8 = 3;
const KIND_TOKEN: u8 = 4;
const KIND_PROXY_SIG: u8 = 5;
const KIND_LONGTERM_KEY: u8 = 6;
const KIND_PUBLIC_KEY: u8 = 7;
const KIND_PROXY_KEY: u8 = 8;

/// Any value that can travel as an envelope file.
#[derive(Debug, Clone, PartialEq)]
pub enum Artifact {
    Params(SystemParams),
    IdentityKey(IdentitySecretKey),
    RingSig(RingSignature),
    Token(DelegationToken),
    ProxySig(ProxyRingSignature),
    LongTermKey(LongTermKeyPair),
    PublicKey(BasePoint),
    ProxyKey(ProxyKeyPair),
}

impl Artifact {
    pub fn kind_byte(&self) -> u8 {
        match self {
            Artifact::Params(_) => KIND_PARAMS,
            Artifact::IdentityKey(_) => KIND_IDENTITY_KEY,
            Artifact::RingSig(_) => KIND_RING_SIG,
            Artifact::Token(_) => KIND_TOKEN,
            Artifact::ProxySig(_) => KIND_PROXY_SIG,
            Artifact::LongTermKey(_) => KIND_LONGTERM_KEY,
            Artifact::PublicKey(_) => KIND_PUBLIC_KEY,
            Artifact::ProxyKey(_) => KIND_PROXY_KEY,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Artifact::Params(_) => "params",
            Artifact::IdentityKey(_) => "identity-key",
            Artifact::RingSig(_) => "ring-sig",
            Artifact::Token(_) => "token",
            Artifact::ProxySig(_) => "proxy-sig",
            Artifact::LongTermKey(_) => "longterm-key",
            Artifact::PublicKey(_) => "public-key",
            Artifact::ProxyKey(_) => "proxy-key",
        }
    }
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(buf: &'a [u8]) -> Self {
        Reader { buf, pos: 0 }
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if n > self.buf.len() - self.pos {
            return Err(Error::Truncated);
        }
        let out = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }

    fn take_u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn take_len(&mut self) -> Result<usize> {
        let bytes: [u8; 8] = self.take(8)?.try_into().expect("exactly 8 bytes");
        usize::try_from(u64::from_be_bytes(bytes)).map_err(|_| Error::Truncated)
    }

    fn finish(self) -> Result<()> {
        if self.pos == self.buf.len() {
            Ok(())
        } else {
            Err(Error::TrailingBytes)
        }
    }
}

fn put_bytes(out: &mut Vec<u8>, bytes: &[u8]) {
    out.extend_from_slice(&(bytes.len() as u64).to_be_bytes());
    out.extend_from_slice(bytes);
}

fn put_descriptor(out: &mut Vec<u8>, ring: &RingDescriptor) {
    out.extend_from_slice(&(ring.len() as u64).to_be_bytes());
    for entry in ring.entries() {
        put_bytes(out, entry);
    }
}

fn read_descriptor(r: &mut Reader) -> Result<RingDescriptor> {
    let count = r.take_len()?;
    // No preallocation from an untrusted count: reads fail fast on
    // truncation instead.
    let mut entries = Vec::new();
    for _ in 0..count {
        let len = r.take_len()?;
        entries.push(r.take(len)?.to_vec());
    }
    RingDescriptor::new(entries)
}

fn read_base_point(r: &mut Reader) -> Result<BasePoint> {
    BasePoint::from_bytes(r.take(BasePoint::BYTES)?)
}

fn read_key_point(r: &mut Reader) -> Result<KeyPoint> {
    KeyPoint::from_bytes(r.take(KeyPoint::BYTES)?)
}

fn read_scalar(r: &mut Reader) -> Result<Scalar> {
    Scalar::from_bytes(r.take(Scalar::BYTES)?)
}

fn read_target(r: &mut Reader) -> Result<TargetElem> {
    TargetElem::from_bytes(r.take(TargetElem::BYTES)?)
}

/// Serializes an artifact into its envelope bytes.
pub fn encode(artifact: &Artifact) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(&MAGIC);
    out.push(VERSION);
    out.push(artifact.kind_byte());
    match artifact {
        Artifact::Params(p) => {
            out.push(p.curve.to_byte());
            out.extend_from_slice(&p.base.to_bytes());
            out.extend_from_slice(&p.key_base.to_bytes());
            out.extend_from_slice(&p.master_public.to_bytes());
        }
        Artifact::IdentityKey(k) => {
            put_bytes(&mut out, &k.id);
            out.extend_from_slice(&k.secret_point().to_bytes());
        }
        Artifact::RingSig(sig) => {
            put_descriptor(&mut out, &sig.ring);
            for v in &sig.values {
                out.extend_from_slice(&v.to_bytes());
            }
            out.extend_from_slice(&sig.aggregate.to_bytes());
        }
        Artifact::Token(t) => {
            put_bytes(&mut out, &t.warrant);
            out.extend_from_slice(&t.delegation_point.to_bytes());
        }
        Artifact::ProxySig(sig) => {
            put_descriptor(&mut out, &sig.ring);
            for v in &sig.values {
                out.extend_from_slice(&v.to_bytes());
            }
            out.extend_from_slice(&sig.aggregate.to_bytes());
        }
        Artifact::LongTermKey(k) => {
            out.extend_from_slice(&k.secret_bytes());
            out.extend_from_slice(&k.public.to_bytes());
        }
        Artifact::PublicKey(pk) => {
            out.extend_from_slice(&pk.to_bytes());
        }
        Artifact::ProxyKey(k) => {
            out.extend_from_slice(&k.secret_point().to_bytes());
            out.extend_from_slice(&k.combined_public.to_bytes());
        }
    }
    out
}

/// Parses and fully validates an envelope.
pub fn decode(bytes: &[u8]) -> Result<Artifact> {
    let mut r = Reader::new(bytes);
    if r.take(4)? != MAGIC {
        return Err(Error::BadMagic);
    }
    let version = r.take_u8()?;
    if version != VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    let kind = r.take_u8()?;
    let artifact = match kind {
        KIND_PARAMS => {
            let curve = CurveId::from_byte(r.take_u8()?)?;
            let base = read_base_point(&mut r)?;
            let key_base = read_key_point(&mut r)?;
            let master_public = read_base_point(&mut r)?;
            Artifact::Params(SystemParams {
                curve,
                base,
                key_base,
                master_public,
            })
        }
        KIND_IDENTITY_KEY => {
            let len = r.take_len()?;
            let id = r.take(len)?.to_vec();
            let secret = read_key_point(&mut r)?;
            Artifact::IdentityKey(IdentitySecretKey::from_parts(id, secret)?)
        }
        KIND_RING_SIG => {
            let (ring, values, aggregate) = read_sig_body(&mut r)?;
            Artifact::RingSig(RingSignature {
                ring,
                values,
                aggregate,
            })
        }
        KIND_TOKEN => {
            let len = r.take_len()?;
            let warrant = r.take(len)?.to_vec();
            if warrant.is_empty() {
                return Err(Error::EmptyWarrant);
            }
            let delegation_point = read_key_point(&mut r)?;
            Artifact::Token(DelegationToken {
                warrant,
                delegation_point,
            })
        }
        KIND_PROXY_SIG => {
            let (ring, values, aggregate) = read_sig_body(&mut r)?;
            Artifact::ProxySig(ProxyRingSignature {
                ring,
                values,
                aggregate,
            })
        }
        KIND_LONGTERM_KEY => {
            let secret = read_scalar(&mut r)?;
            if secret.is_zero() {
                return Err(Error::InvalidScalar);
            }
            let public = read_base_point(&mut r)?;
            let pair = LongTermKeyPair::from_secret(secret);
            // The stored public half must match the secret.
            if pair.public != public {
                return Err(Error::InvalidPoint);
            }
            Artifact::LongTermKey(pair)
        }
        KIND_PUBLIC_KEY => Artifact::PublicKey(read_base_point(&mut r)?),
        KIND_PROXY_KEY => {
            let proxy_secret = read_key_point(&mut r)?;
            let combined_public = read_base_point(&mut r)?;
            Artifact::ProxyKey(ProxyKeyPair::from_parts(proxy_secret, combined_public))
        }
        other => return Err(Error::UnknownKind(other)),
    };
    r.finish()?;
    Ok(artifact)
}

fn read_sig_body(r: &mut Reader) -> Result<(RingDescriptor, Vec<TargetElem>, KeyPoint)> {
    let ring = read_descriptor(r)?;
    let mut values = Vec::with_capacity(ring.len());
    for _ in 0..ring.len() {
        values.push(read_target(r)?);
    }
    let aggregate = read_key_point(r)?;
    Ok((ring, values, aggregate))
}

/// Lowercase hex of the envelope bytes.
pub fn encode_hex(artifact: &Artifact) -> String {
    hex::encode(encode(artifact))
}

pub fn decode_hex(armored: &str) -> Result<Artifact> {
    let bytes = hex::decode(armored.trim()).map_err(|_| Error::BadHex)?;
    decode(&bytes)
}

/// Master key blob: `version ‖ scalar`, no envelope.
pub fn encode_master_key(mk: &MasterKey) -> Vec<u8> {
    let mut out = Vec::with_capacity(1 + Scalar::BYTES);
    out.push(VERSION);
    out.extend_from_slice(&mk.secret_bytes());
    out
}

pub fn decode_master_key(bytes: &[u8]) -> Result<MasterKey> {
    let mut r = Reader::new(bytes);
    let version = r.take_u8()?;
    if version != VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    let secret = read_scalar(&mut r)?;
    r.finish()?;
    MasterKey::from_scalar(secret)
}

macro_rules! typed_decoder {
    ($name:ident, $variant:ident, $ty:ty, $expected:literal) => {
        pub fn $name(bytes: &[u8]) -> Result<$ty> {
            match decode(bytes)? {
                Artifact::$variant(v) => Ok(v),
                other => Err(Error::KindMismatch {
                    expected: $expected,
                    found: other.kind_name(),
                }),
            }
        }
    };
}

typed_decoder!(decode_params, Params, SystemParams, "params");
typed_decoder!(decode_identity_key, IdentityKey, IdentitySecretKey, "identity-key");
typed_decoder!(decode_ring_sig, RingSig, RingSignature, "ring-sig");
typed_decoder!(decode_token, Token, DelegationToken, "token");
typed_decoder!(decode_proxy_sig, ProxySig, ProxyRingSignature, "proxy-sig");
typed_decoder!(decode_longterm_key, LongTermKey, LongTermKeyPair, "longterm-key");
typed_decoder!(decode_proxy_key, ProxyKey, ProxyKeyPair, "proxy-key");

/// Reads a base-group public key from either a `public-key` artifact or the
/// public half of a `longterm-key` artifact.
pub fn decode_public_point(bytes: &[u8]) -> Result<BasePoint> {
    match decode(bytes)? {
        Artifact::PublicKey(pk) => Ok(pk),
        Artifact::LongTermKey(pair) => Ok(pair.public),
        other => Err(Error::KindMismatch {
            expected: "public-key",
            found: other.kind_name(),
        }),
    }
}

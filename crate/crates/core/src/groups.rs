//! Pairing-group backend.
//!
//! The protocol layers only ever see four opaque value types — [`Scalar`],
//! [`BasePoint`], [`KeyPoint`], [`TargetElem`] — and the operations below.
//! Concretely they are backed by BLS12-381: the base group is G1 (public
//! keys, generators), the key group is G2 (identity keys, glue points), and
//! the target group is GT. The schemes were written for a symmetric pairing;
//! this split is the type-correct asymmetric realization, with e(T, P)
//! computed as `pairing(base, key)` throughout.
//!
//! Every operation reports itself to the cost meter, so a scope wrapped in
//! [`crate::cost_meter::count_ops`] observes exactly the group operations the
//! protocol performed.

use ark_bls12_381::{Bls12_381, Fq12, Fr, G1Projective, G2Projective};
use ark_ec::pairing::{Pairing, PairingOutput};
use ark_ec::{AdditiveGroup, CurveGroup, PrimeGroup};
use ark_ff::{BigInteger, Field, PrimeField, Zero};
use ark_serialize::{CanonicalDeserialize, CanonicalSerialize};
use num_bigint::BigUint;
use rand::Rng;

use crate::cost_meter::{record, CountedOp};
use crate::error::{Error, Result};

/// Which pairing-friendly curve a set of system parameters lives on.
///
/// Only BLS12-381 is realized; the id exists so artifacts are explicit about
/// the curve they were produced on and other curves can be added without a
/// format change.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveId {
    Bls12_381,
}

impl CurveId {
    pub fn to_byte(self) -> u8 {
        match self {
            CurveId::Bls12_381 => 1,
        }
    }

    pub fn from_byte(b: u8) -> Result<Self> {
        match b {
            1 => Ok(CurveId::Bls12_381),
            other => Err(Error::UnknownCurve(other)),
        }
    }
}

/// An element of Z_q, the common order of all three groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scalar(pub(crate) Fr);

/// An element of the base source group (BLS12-381 G1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasePoint(pub(crate) G1Projective);

/// An element of the key source group (BLS12-381 G2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KeyPoint(pub(crate) G2Projective);

/// An element of the multiplicative target group (BLS12-381 GT).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TargetElem(pub(crate) PairingOutput<Bls12_381>);

impl Scalar {
    pub const BYTES: usize = 32;

    pub fn zero() -> Self {
        Scalar(Fr::ZERO)
    }

    pub fn one() -> Self {
        Scalar(Fr::ONE)
    }

    pub fn from_u64(v: u64) -> Self {
        Scalar(Fr::from(v))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Canonical fixed-length big-endian encoding.
    pub fn to_bytes(&self) -> [u8; Self::BYTES] {
        let mut out = [0u8; Self::BYTES];
        let bytes = self.0.into_bigint().to_bytes_be();
        out[Self::BYTES - bytes.len()..].copy_from_slice(&bytes);
        out
    }

    /// Rejects any encoding that is not a canonical value below the group
    /// order.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() != Self::BYTES {
            return Err(Error::InvalidScalar);
        }
        let value = BigUint::from_bytes_be(bytes);
        if value >= Self::order() {
            return Err(Error::InvalidScalar);
        }
        Ok(Scalar(Fr::from(value)))
    }

    /// The prime group order q as a big integer.
    pub fn order() -> BigUint {
        BigUint::from_bytes_be(&Fr::MODULUS.to_bytes_be())
    }

    /// Reduces an arbitrary big integer into Z_q.
    pub fn from_biguint_reduced(v: &BigUint) -> Self {
        Scalar(Fr::from(v % Self::order()))
    }

    pub fn to_biguint(&self) -> BigUint {
        BigUint::from_bytes_be(&self.to_bytes())
    }
}

impl BasePoint {
    pub const BYTES: usize = 48;

    pub fn identity() -> Self {
        BasePoint(G1Projective::ZERO)
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(Self::BYTES);
        self.0
            .into_affine()
            .serialize_compressed(&mut out)
            .expect("serializing to a Vec cannot fail");
        out
    }

    /// Deserializes and validates curve membership and the subgroup check.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() != Self::BYTES {
            return Err(Error::InvalidPoint);
        }
        let affine = ark_bls12_381::G1Affine::deserialize_compressed(bytes)
            .map_err(|_| Error::InvalidPoint)?;
        Ok(BasePoint(affine.into()))
    }
}

impl KeyPoint {
    pub const BYTES: usize = 96;

    pub fn identity() -> Self {
        KeyPoint(G2Projective::ZERO)
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(Self::BYTES);
        self.0
            .into_affine()
            .serialize_compressed(&mut out)
            .expect("serializing to a Vec cannot fail");
        out
    }

    /// Deserializes and validates curve membership and the subgroup check.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() != Self::BYTES {
            return Err(Error::InvalidPoint);
        }
        let affine = ark_bls12_381::G2Affine::deserialize_compressed(bytes)
            .map_err(|_| Error::InvalidPoint)?;
        Ok(KeyPoint(affine.into()))
    }
}

impl TargetElem {
    pub const BYTES: usize = 576;

    /// The multiplicative identity of the target group.
    pub fn identity() -> Self {
        TargetElem(PairingOutput::ZERO)
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_zero()
    }

    /// Canonical encoding of the underlying extension-field element. This is
    /// also the exact byte string the target-group hash consumes.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(Self::BYTES);
        self.0
            .serialize_compressed(&mut out)
            .expect("serializing to a Vec cannot fail");
        out
    }

    /// Deserializes a canonical field encoding. Membership in the order-q
    /// subgroup is not decided here; values that are not honest pairing
    /// outputs simply fail the verification equations.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() != Self::BYTES {
            return Err(Error::InvalidTarget);
        }
        let value = Fq12::deserialize_compressed(bytes).map_err(|_| Error::InvalidTarget)?;
        Ok(TargetElem(PairingOutput(value)))
    }
}

/// The fixed generator of the base group (the scheme's P).
pub fn base_generator() -> BasePoint {
    BasePoint(G1Projective::generator())
}

/// The fixed generator of the key group.
pub fn key_generator() -> KeyPoint {
    KeyPoint(G2Projective::generator())
}

/// The bilinear map e(base, key) -> target.
pub fn pairing(a: &BasePoint, b: &KeyPoint) -> TargetElem {
    record(CountedOp::Pairing);
    TargetElem(Bls12_381::pairing(a.0, b.0))
}

pub fn base_mul(k: &Scalar, p: &BasePoint) -> BasePoint {
    record(CountedOp::BaseMul);
    BasePoint(p.0 * k.0)
}

pub fn base_add(p: &BasePoint, q: &BasePoint) -> BasePoint {
    BasePoint(p.0 + q.0)
}

pub fn key_mul(k: &Scalar, p: &KeyPoint) -> KeyPoint {
    record(CountedOp::KeyMul);
    KeyPoint(p.0 * k.0)
}

pub fn key_add(p: &KeyPoint, q: &KeyPoint) -> KeyPoint {
    record(CountedOp::KeyAdd);
    KeyPoint(p.0 + q.0)
}

pub fn key_sub(p: &KeyPoint, q: &KeyPoint) -> KeyPoint {
    record(CountedOp::KeyAdd);
    KeyPoint(p.0 - q.0)
}

/// Product in the target group.
pub fn gt_mul(x: &TargetElem, y: &TargetElem) -> TargetElem {
    record(CountedOp::GtMul);
    TargetElem(x.0 + y.0)
}

/// Exponentiation in the target group.
pub fn gt_pow(x: &TargetElem, k: &Scalar) -> TargetElem {
    record(CountedOp::GtPow);
    TargetElem(x.0 * k.0)
}

/// Multiplication in Z_q.
pub fn scalar_mul(a: &Scalar, b: &Scalar) -> Scalar {
    record(CountedOp::ScalarMul);
    Scalar(a.0 * b.0)
}

/// Uniform over Z_q^*: never returns zero.
pub fn random_scalar<R: Rng>(rng: &mut R) -> Scalar {
    use ark_std::UniformRand;
    loop {
        let s = Fr::rand(rng);
        if !s.is_zero() {
            return Scalar(s);
        }
    }
}

/// Uniform over the key group.
pub fn random_key_point<R: Rng>(rng: &mut R) -> KeyPoint {
    use ark_std::UniformRand;
    KeyPoint(G2Projective::rand(rng))
}

//! Key Generation Center: system setup and identity key extraction.
//!
//! The KGC draws the master secret s, publishes P_pub = sP, and hands each
//! enrolled identity its private key S = s·H2(id). Anyone can recompute an
//! identity's public key as H2(id); extraction validity is the pairing
//! relation e(P_pub, H2(id)) = e(P, S).

use rand::Rng;

use crate::error::{Error, Result};
use crate::groups::{
    base_generator, base_mul, key_generator, key_mul, random_scalar, BasePoint, CurveId, KeyPoint,
    Scalar,
};
use crate::hashing::h2_point;

/// Public system parameters shared by every party.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SystemParams {
    pub curve: CurveId,
    /// Generator of the base group (the scheme's P).
    pub base: BasePoint,
    /// Generator of the key group.
    pub key_base: KeyPoint,
    /// Master public key P_pub = sP.
    pub master_public: BasePoint,
}

/// The KGC's master secret. Never serialized alongside the public
/// parameters.
#[derive(Clone, PartialEq, Eq)]
pub struct MasterKey {
    pub(crate) secret: Scalar,
}

impl std::fmt::Debug for MasterKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("MasterKey(..)")
    }
}

/// An extracted identity key: the identity string and S = s·H2(id).
#[derive(Clone, PartialEq, Eq)]
pub struct IdentitySecretKey {
    pub id: Vec<u8>,
    pub(crate) secret: KeyPoint,
}

impl std::fmt::Debug for IdentitySecretKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "IdentitySecretKey({:?}, ..)", String::from_utf8_lossy(&self.id))
    }
}

impl MasterKey {
    pub(crate) fn from_scalar(secret: Scalar) -> Result<Self> {
        if secret.is_zero() {
            return Err(Error::InvalidScalar);
        }
        Ok(MasterKey { secret })
    }

    pub(crate) fn secret_bytes(&self) -> [u8; Scalar::BYTES] {
        self.secret.to_bytes()
    }
}

impl IdentitySecretKey {
    pub(crate) fn from_parts(id: Vec<u8>, secret: KeyPoint) -> Result<Self> {
        if id.is_empty() {
            return Err(Error::EmptyIdentity);
        }
        Ok(IdentitySecretKey { id, secret })
    }

    pub fn secret_point(&self) -> &KeyPoint {
        &self.secret
    }
}

/// Draws a master key and publishes the matching parameters.
pub fn setup<R: Rng>(rng: &mut R, curve: CurveId) -> (SystemParams, MasterKey) {
    let secret = random_scalar(rng);
    params_for(curve, &secret)
}

/// Deterministic setup from a caller-chosen master scalar. Test vectors
/// only; compiled out of release builds.
#[cfg(debug_assertions)]
pub fn setup_with_master(curve: CurveId, secret: Scalar) -> Result<(SystemParams, MasterKey)> {
    if secret.is_zero() {
        return Err(Error::InvalidScalar);
    }
    Ok(params_for(curve, &secret))
}

fn params_for(curve: CurveId, secret: &Scalar) -> (SystemParams, MasterKey) {
    let base = base_generator();
    let params = SystemParams {
        curve,
        base,
        key_base: key_generator(),
        master_public: base_mul(secret, &base),
    };
    (params, MasterKey { secret: *secret })
}

/// Extracts the private key S = s·H2(id) for an identity.
pub fn extract(master: &MasterKey, id: &[u8]) -> Result<IdentitySecretKey> {
    if id.is_empty() {
        return Err(Error::EmptyIdentity);
    }
    let q = h2_point(id);
    Ok(IdentitySecretKey {
        id: id.to_vec(),
        secret: key_mul(&master.secret, &q),
    })
}

/// The public key anyone can derive for an identity: H2(id).
pub fn public_key_of(id: &[u8]) -> Result<KeyPoint> {
    if id.is_empty() {
        return Err(Error::EmptyIdentity);
    }
    Ok(h2_point(id))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::pairing;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn forced_unit_master_key() {
        let (params, mk) = setup_with_master(CurveId::Bls12_381, Scalar::one()).unwrap();
        assert_eq!(params.master_public, params.base);
        let sk = extract(&mk, b"alice").unwrap();
        assert_eq!(sk.secret, h2_point(b"alice"));
    }

    #[test]
    fn setup_is_randomized_and_consistent() {
        let (a, mk_a) = setup(&mut ChaCha20Rng::seed_from_u64(1), CurveId::Bls12_381);
        let (b, _) = setup(&mut ChaCha20Rng::seed_from_u64(2), CurveId::Bls12_381);
        assert_ne!(a.master_public, b.master_public);
        assert_eq!(base_mul(&mk_a.secret, &a.base), a.master_public);
    }

    #[test]
    fn extraction_validity_pairing_relation() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let (params, mk) = setup(&mut rng, CurveId::Bls12_381);
        for i in 0..20u32 {
            let id = format!("user-{i}").into_bytes();
            let sk = extract(&mk, &id).unwrap();
            let q = public_key_of(&id).unwrap();
            assert_eq!(
                pairing(&params.master_public, &q),
                pairing(&params.base, &sk.secret)
            );
        }
    }

    #[test]
    fn extract_is_deterministic() {
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        let (_, mk) = setup(&mut rng, CurveId::Bls12_381);
        assert_eq!(extract(&mk, b"bob").unwrap(), extract(&mk, b"bob").unwrap());
    }

    #[test]
    fn empty_identity_rejected() {
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let (_, mk) = setup(&mut rng, CurveId::Bls12_381);
        assert_eq!(extract(&mk, b""), Err(Error::EmptyIdentity));
        assert_eq!(public_key_of(b""), Err(Error::EmptyIdentity));
    }

    #[test]
    fn identity_public_keys_distinct() {
        let mut seen = std::collections::HashSet::new();
        for i in 0..64u32 {
            let p = public_key_of(format!("id-{i}").as_bytes()).unwrap();
            assert!(seen.insert(p.to_bytes()));
        }
    }
}

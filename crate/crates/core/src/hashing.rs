//! Protocol hash functions and canonical hash-input encodings.
//!
//! Three hashes with distinct domain-separation tags: `h1_scalar` keys the
//! ring equation, `h2_point` maps identities into the key group, `h3_scalar`
//! folds target-group values back into Z_q. Warrants get their own tag
//! ([`TAG_WARRANT`]) so a warrant can never collide with an enrolled
//! identity.
//!
//! Scalar hashes reject zero by re-hashing with an incremented counter byte,
//! keeping outputs in Z_q^*. The point hash re-hashes the same way in the
//! (never observed) case of the identity point.

use ark_bls12_381::{g2, G2Projective};
use ark_ec::hashing::curve_maps::wb::WBMap;
use ark_ec::hashing::map_to_curve_hasher::MapToCurveBasedHasher;
use ark_ec::hashing::HashToCurve;
use ark_ff::field_hashers::DefaultFieldHasher;
use ark_ff::{PrimeField, Zero};
use sha2::{Digest, Sha256, Sha512};

use crate::cost_meter::{record, CountedOp};
use crate::error::{Error, Result};
use crate::groups::{KeyPoint, Scalar};

pub const TAG_H1: &[u8] = b"IDBRS-H1";
pub const TAG_H2: &[u8] = b"IDBRS-H2";
pub const TAG_H3: &[u8] = b"IDBRS-H3";
pub const TAG_WARRANT: &[u8] = b"PROXY-W";
const TAG_SIGN_INPUT: &[u8] = b"IDBRS-SI";

/// The ordered, duplicate-free member list a ring signature is made over.
///
/// Entries are identity strings for the identity-based scheme and combined
/// public-key encodings for the proxy scheme. Order is significant: the same
/// members in a different order hash to a different ring key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingDescriptor {
    entries: Vec<Vec<u8>>,
}

impl RingDescriptor {
    pub fn new(entries: Vec<Vec<u8>>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyRing);
        }
        let mut seen = std::collections::HashSet::new();
        for entry in &entries {
            if !seen.insert(entry.as_slice()) {
                return Err(Error::DuplicateRingEntry);
            }
        }
        Ok(RingDescriptor { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false // constructor rejects empty rings
    }

    pub fn entries(&self) -> &[Vec<u8>] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &[u8] {
        &self.entries[i]
    }

    pub fn position(&self, entry: &[u8]) -> Option<usize> {
        self.entries.iter().position(|e| e == entry)
    }
}

fn hash_to_scalar(tag: &[u8], data: &[u8]) -> Scalar {
    record(CountedOp::Hash);
    for counter in 0u8..=255 {
        let digest = Sha512::new()
            .chain_update(tag)
            .chain_update([counter])
            .chain_update(data)
            .finalize();
        let s = ark_bls12_381::Fr::from_be_bytes_mod_order(&digest);
        if !s.is_zero() {
            return Scalar(s);
        }
    }
    unreachable!("256 consecutive zero digests");
}

fn hash_to_key_point(tag: &[u8], data: &[u8]) -> KeyPoint {
    record(CountedOp::Hash);
    let hasher = MapToCurveBasedHasher::<
        G2Projective,
        DefaultFieldHasher<Sha256, 128>,
        WBMap<g2::Config>,
    >::new(tag)
    .expect("fixed-size domain tag is accepted");
    let mut msg = data.to_vec();
    loop {
        let point = KeyPoint(G2Projective::from(
            hasher.hash(&msg).expect("hash-to-curve is total"),
        ));
        if !point.is_identity() {
            return point;
        }
        msg.push(0);
    }
}

/// H1: arbitrary bytes to Z_q^*.
pub fn h1_scalar(data: &[u8]) -> Scalar {
    hash_to_scalar(TAG_H1, data)
}

/// H2: identity bytes to a key-group point.
pub fn h2_point(id: &[u8]) -> KeyPoint {
    hash_to_key_point(TAG_H2, id)
}

/// H3: a target-group element to Z_q^*, over its canonical encoding.
pub fn h3_scalar(x: &crate::groups::TargetElem) -> Scalar {
    hash_to_scalar(TAG_H3, &x.to_bytes())
}

/// Warrant hash: delegation warrants to a key-group point, domain-separated
/// from identity hashing.
pub fn warrant_point(warrant: &[u8]) -> KeyPoint {
    hash_to_key_point(TAG_WARRANT, warrant)
}

/// Canonical injective encoding of (message, ring) — the exact bytes both
/// signer and verifier feed to H1 for the ring key.
///
/// Layout: tag ‖ u64-be len(m) ‖ m ‖ u64-be count ‖ (u64-be len ‖ entry)*.
pub fn encode_sign_input(msg: &[u8], ring: &RingDescriptor) -> Vec<u8> {
    let body: usize = ring.entries().iter().map(|e| 8 + e.len()).sum();
    let mut out = Vec::with_capacity(TAG_SIGN_INPUT.len() + 16 + msg.len() + body);
    out.extend_from_slice(TAG_SIGN_INPUT);
    out.extend_from_slice(&(msg.len() as u64).to_be_bytes());
    out.extend_from_slice(msg);
    out.extend_from_slice(&(ring.len() as u64).to_be_bytes());
    for entry in ring.entries() {
        out.extend_from_slice(&(entry.len() as u64).to_be_bytes());
        out.extend_from_slice(entry);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{base_generator, key_generator, pairing, random_key_point, TargetElem};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn ring(entries: &[&str]) -> RingDescriptor {
        RingDescriptor::new(entries.iter().map(|s| s.as_bytes().to_vec()).collect()).unwrap()
    }

    /// Independent parser for the documented sign-input layout. Kept apart
    /// from the encoder so a bug cannot hide on both sides.
    fn decode_sign_input(bytes: &[u8]) -> Option<(Vec<u8>, Vec<Vec<u8>>)> {
        let rest = bytes.strip_prefix(TAG_SIGN_INPUT)?;
        let take_u64 = |b: &[u8]| -> Option<(u64, usize)> {
            Some((u64::from_be_bytes(b.get(..8)?.try_into().ok()?), 8))
        };
        let (mlen, mut pos) = take_u64(rest)?;
        let msg = rest.get(pos..pos + mlen as usize)?.to_vec();
        pos += mlen as usize;
        let (count, adv) = take_u64(rest.get(pos..)?)?;
        pos += adv;
        let mut entries = Vec::new();
        for _ in 0..count {
            let (elen, adv) = take_u64(rest.get(pos..)?)?;
            pos += adv;
            entries.push(rest.get(pos..pos + elen as usize)?.to_vec());
            pos += elen as usize;
        }
        (pos == rest.len()).then_some((msg, entries))
    }

    #[test]
    fn h1_deterministic_and_sensitive() {
        use rand::RngCore;
        assert_eq!(h1_scalar(b"hello"), h1_scalar(b"hello"));
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        for _ in 0..64 {
            let mut a = vec![0u8; 24];
            rng.fill_bytes(&mut a);
            let mut b = a.clone();
            b[7] ^= 0x20;
            assert_ne!(h1_scalar(&a), h1_scalar(&b));
        }
    }

    #[test]
    fn h1_codomain_excludes_zero() {
        for i in 0..1000u32 {
            assert!(!h1_scalar(&i.to_be_bytes()).is_zero());
        }
    }

    #[test]
    fn h2_deterministic_valid_subgroup() {
        assert_eq!(h2_point(b"alice"), h2_point(b"alice"));
        for i in 0..100u32 {
            let p = h2_point(&i.to_be_bytes());
            // Round-tripping through the checked decoder is the subgroup test.
            assert_eq!(KeyPoint::from_bytes(&p.to_bytes()).unwrap(), p);
        }
    }

    #[test]
    fn h2_output_pairs_nontrivially() {
        for i in 0..8u32 {
            let p = h2_point(&i.to_be_bytes());
            assert_ne!(pairing(&base_generator(), &p), TargetElem::identity());
        }
    }

    #[test]
    fn h3_stable_and_injective_in_practice() {
        let x = pairing(&base_generator(), &key_generator());
        assert_eq!(h3_scalar(&x), h3_scalar(&x));
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        for _ in 0..64 {
            let a = pairing(&base_generator(), &random_key_point(&mut rng));
            let b = pairing(&base_generator(), &random_key_point(&mut rng));
            assert_ne!(a, b);
            assert_ne!(h3_scalar(&a), h3_scalar(&b));
        }
    }

    #[test]
    fn h3_codomain_excludes_zero() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let x = pairing(&base_generator(), &random_key_point(&mut rng));
            assert!(!h3_scalar(&x).is_zero());
        }
    }

    #[test]
    fn warrant_hash_differs_from_identity_hash() {
        assert_ne!(warrant_point(b"alice"), h2_point(b"alice"));
    }

    #[test]
    fn domain_tags_are_pairwise_distinct() {
        let tags = [TAG_H1, TAG_H2, TAG_H3, TAG_WARRANT, TAG_SIGN_INPUT];
        for (i, a) in tags.iter().enumerate() {
            for b in &tags[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn ring_order_is_significant() {
        let m = b"msg";
        assert_ne!(
            encode_sign_input(m, &ring(&["a", "b"])),
            encode_sign_input(m, &ring(&["b", "a"]))
        );
    }

    #[test]
    fn length_prefixes_prevent_splicing() {
        assert_ne!(
            encode_sign_input(b"xy", &ring(&["z"])),
            encode_sign_input(b"x", &ring(&["yz"]))
        );
    }

    #[test]
    fn descriptor_rejects_empty_and_duplicates() {
        assert_eq!(RingDescriptor::new(vec![]), Err(Error::EmptyRing));
        assert_eq!(
            RingDescriptor::new(vec![b"a".to_vec(), b"a".to_vec()]),
            Err(Error::DuplicateRingEntry)
        );
    }

    proptest! {
        #[test]
        fn sign_input_round_trips(
            msg in proptest::collection::vec(any::<u8>(), 0..64),
            entries in proptest::collection::hash_set(
                proptest::collection::vec(any::<u8>(), 0..16), 1..6
            )
        ) {
            let entries: Vec<Vec<u8>> = entries.into_iter().collect();
            let ring = RingDescriptor::new(entries.clone()).unwrap();
            let encoded = encode_sign_input(&msg, &ring);
            let (m2, e2) = decode_sign_input(&encoded).expect("decodes");
            prop_assert_eq!(m2, msg);
            prop_assert_eq!(e2, entries);
        }
    }
}

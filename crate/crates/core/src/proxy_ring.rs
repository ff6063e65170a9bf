//! Delegation by warrant and the proxy ring signature scheme.
//!
//! An original signer with long-term key (x_o, PK_o = x_o·P) delegates by
//! publishing x_ow = x_o·W for W = H_w(warrant); anyone can check the token
//! against e(PK_o, W) = e(P, x_ow). A delegated proxy with key (x_p, PK_p)
//! forms the proxy signing key S = (x_o + x_p)·W, whose public counterpart
//! is the combined key PK_o + PK_p.
//!
//! Ring structure and indexing mirror [`crate::ring_sig`], with the ring
//! made of combined public keys and two differences in the equations: the
//! seeded slot carries no exponent (c_{k+1} = e(A, P)) and the shared key
//! K = H1(m ‖ L') applies only to the first pairing factor of each link,
//!
//!   c_{j+1} = e(PK_o + PK_{p_j}, H3(c_j)·W)^K · e(T_j, P)
//!
//! so the closing point solves to T_k = A − K·H3(c_k)·S. The product over
//! all links gives the two-pairing aggregate check
//!
//!   Π_j c_j = e(Σ_j H3(c_j)·(PK_o + PK_{p_j}), W)^K · e(T, P)
//!
//! which is the index-consistent aggregation of the link equation.

use rand::Rng;

use crate::error::{Error, Result};
use crate::groups::{
    base_add, base_generator, base_mul, gt_mul, gt_pow, key_add, key_mul, key_sub, pairing,
    random_key_point, random_scalar, scalar_mul, BasePoint, KeyPoint, Scalar, TargetElem,
};
use crate::hashing::{encode_sign_input, h1_scalar, h3_scalar, warrant_point, RingDescriptor};
use crate::kgc::SystemParams;

/// A conventional long-term key pair x, PK = x·P.
#[derive(Clone, PartialEq, Eq)]
pub struct LongTermKeyPair {
    pub(crate) secret: Scalar,
    pub public: BasePoint,
}

impl std::fmt::Debug for LongTermKeyPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("LongTermKeyPair(..)")
    }
}

impl LongTermKeyPair {
    pub fn generate<R: Rng>(rng: &mut R) -> Self {
        Self::from_secret(random_scalar(rng))
    }

    pub fn from_secret(secret: Scalar) -> Self {
        let public = base_mul(&secret, &base_generator());
        LongTermKeyPair { secret, public }
    }

    pub(crate) fn secret_bytes(&self) -> [u8; Scalar::BYTES] {
        self.secret.to_bytes()
    }
}

/// A delegation: the warrant bytes and the delegation point x_ow = x_o·W.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelegationToken {
    pub warrant: Vec<u8>,
    pub delegation_point: KeyPoint,
}

/// A proxy's signing material: S = (x_o + x_p)·W and the combined public
/// key PK_o + PK_p it answers to.
#[derive(Clone, PartialEq, Eq)]
pub struct ProxyKeyPair {
    pub(crate) proxy_secret: KeyPoint,
    pub combined_public: BasePoint,
}

impl std::fmt::Debug for ProxyKeyPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("ProxyKeyPair(..)")
    }
}

impl ProxyKeyPair {
    pub(crate) fn from_parts(proxy_secret: KeyPoint, combined_public: BasePoint) -> Self {
        ProxyKeyPair {
            proxy_secret,
            combined_public,
        }
    }

    pub(crate) fn secret_point(&self) -> &KeyPoint {
        &self.proxy_secret
    }
}

/// A proxy ring signature over the combined public keys of L'.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProxyRingSignature {
    pub ring: RingDescriptor,
    pub values: Vec<TargetElem>,
    pub aggregate: KeyPoint,
}

/// Per-slot audit trace, mirroring [`crate::ring_sig::SignTrace`].
#[derive(Debug, Clone)]
pub struct ProxySignTrace {
    pub ring_key: Scalar,
    pub glue: KeyPoint,
    pub parts: Vec<KeyPoint>,
}

/// Issues a delegation token for a warrant: x_ow = x_o·H_w(w).
pub fn delegate(original: &LongTermKeyPair, warrant: &[u8]) -> Result<DelegationToken> {
    if warrant.is_empty() {
        return Err(Error::EmptyWarrant);
    }
    Ok(DelegationToken {
        warrant: warrant.to_vec(),
        delegation_point: key_mul(&original.secret, &warrant_point(warrant)),
    })
}

/// Checks a token against the claimed original signer:
/// e(P, x_ow) = e(PK_o, H_w(w)).
pub fn delegation_verify(original_public: &BasePoint, token: &DelegationToken) -> bool {
    if token.warrant.is_empty() {
        return false;
    }
    pairing(&base_generator(), &token.delegation_point)
        == pairing(original_public, &warrant_point(&token.warrant))
}

/// Combines a verified token with the proxy's own key:
/// S = x_ow + x_p·W, public side PK_o + PK_p.
pub fn proxy_key_gen(
    token: &DelegationToken,
    proxy: &LongTermKeyPair,
    original_public: &BasePoint,
) -> Result<ProxyKeyPair> {
    if !delegation_verify(original_public, token) {
        return Err(Error::InvalidDelegation);
    }
    let own_share = key_mul(&proxy.secret, &warrant_point(&token.warrant));
    Ok(ProxyKeyPair {
        proxy_secret: key_add(&token.delegation_point, &own_share),
        combined_public: base_add(original_public, &proxy.public),
    })
}

/// The ring descriptor a proxy ring is hashed over: combined public keys
/// PK_o + PK_p in L' order, canonically encoded.
pub fn combined_ring(original_public: &BasePoint, proxies: &[BasePoint]) -> Result<RingDescriptor> {
    RingDescriptor::new(
        proxies
            .iter()
            .map(|pk| base_add(original_public, pk).to_bytes())
            .collect(),
    )
}

/// Index of the ring value c_j in the stored list (which holds c_1..c_n).
fn slot_value(j: usize, n: usize) -> usize {
    (j + n - 1) % n
}

pub fn proxy_ring_sign<R: Rng>(
    params: &SystemParams,
    original_public: &BasePoint,
    proxies: &[BasePoint],
    signer: usize,
    key: &ProxyKeyPair,
    warrant: &[u8],
    msg: &[u8],
    rng: &mut R,
) -> Result<ProxyRingSignature> {
    Ok(
        proxy_ring_sign_traced(
            params,
            original_public,
            proxies,
            signer,
            key,
            warrant,
            msg,
            rng,
        )?
        .0,
    )
}

/// Signing variant that also returns the per-slot trace for auditing.
#[allow(clippy::too_many_arguments)]
pub fn proxy_ring_sign_traced<R: Rng>(
    params: &SystemParams,
    original_public: &BasePoint,
    proxies: &[BasePoint],
    signer: usize,
    key: &ProxyKeyPair,
    warrant: &[u8],
    msg: &[u8],
    rng: &mut R,
) -> Result<(ProxyRingSignature, ProxySignTrace)> {
    if warrant.is_empty() {
        return Err(Error::EmptyWarrant);
    }
    let n = proxies.len();
    if signer >= n {
        return Err(Error::SignerIndexOutOfRange {
            index: signer,
            ring_size: n,
        });
    }
    let combined: Vec<BasePoint> = proxies
        .iter()
        .map(|pk| base_add(original_public, pk))
        .collect();
    if combined[signer] != key.combined_public {
        return Err(Error::CombinedKeyMismatch);
    }
    let ring = RingDescriptor::new(combined.iter().map(|c| c.to_bytes()).collect())?;

    let ring_key = h1_scalar(&encode_sign_input(msg, &ring));
    let warrant_key = warrant_point(warrant);
    let glue = random_key_point(rng);

    let mut values = vec![TargetElem::identity(); n];
    let mut parts = vec![KeyPoint::identity(); n];

    // Seed the signer's slot: c_{k+1} = e(A, P), no exponent here.
    values[signer] = pairing(&params.base, &glue);

    // Walk the remaining links: the first factor carries the exponent K,
    // folded into the key-group scalar.
    for step in 1..n {
        let j = (signer + step) % n;
        let prev = values[slot_value(j, n)];
        let h = h3_scalar(&prev);
        parts[j] = random_key_point(rng);
        values[j] = gt_mul(
            &pairing(
                &combined[j],
                &key_mul(&scalar_mul(&ring_key, &h), &warrant_key),
            ),
            &pairing(&params.base, &parts[j]),
        );
    }

    // Close the ring: T_k = A − K·H3(c_k)·S.
    let own_value = values[slot_value(signer, n)];
    let exponent = scalar_mul(&ring_key, &h3_scalar(&own_value));
    parts[signer] = key_sub(&glue, &key_mul(&exponent, key.secret_point()));

    let mut aggregate = parts[0];
    for part in &parts[1..] {
        aggregate = key_add(&aggregate, part);
    }

    Ok((
        ProxyRingSignature {
            ring,
            values,
            aggregate,
        },
        ProxySignTrace {
            ring_key,
            glue,
            parts,
        },
    ))
}

/// The aggregate two-pairing check:
///
///   Π_j c_j = e(Σ_j H3(c_j)·(PK_o + PK_{p_j}), W)^K · e(T, P)
pub fn proxy_ring_verify(
    params: &SystemParams,
    original_public: &BasePoint,
    proxies: &[BasePoint],
    warrant: &[u8],
    msg: &[u8],
    sig: &ProxyRingSignature,
) -> Result<bool> {
    let n = proxies.len();
    if n == 0 || sig.values.len() != n {
        return Err(Error::LengthMismatch);
    }
    if warrant.is_empty() {
        return Err(Error::EmptyWarrant);
    }
    let combined: Vec<BasePoint> = proxies
        .iter()
        .map(|pk| base_add(original_public, pk))
        .collect();
    let ring = RingDescriptor::new(combined.iter().map(|c| c.to_bytes()).collect())?;
    let ring_key = h1_scalar(&encode_sign_input(msg, &ring));
    let warrant_key = warrant_point(warrant);

    let mut product = sig.values[0];
    for v in &sig.values[1..] {
        product = gt_mul(&product, v);
    }

    let mut weighted = base_mul(&h3_scalar(&sig.values[slot_value(0, n)]), &combined[0]);
    for j in 1..n {
        let term = base_mul(&h3_scalar(&sig.values[slot_value(j, n)]), &combined[j]);
        weighted = base_add(&weighted, &term);
    }

    let rhs = gt_mul(
        &pairing(&base_mul(&ring_key, &weighted), &warrant_key),
        &pairing(&params.base, &sig.aggregate),
    );
    Ok(product == rhs)
}

/// Audits a proxy signature against its trace, link by link.
pub fn proxy_link_check(
    params: &SystemParams,
    original_public: &BasePoint,
    proxies: &[BasePoint],
    warrant: &[u8],
    msg: &[u8],
    trace: &ProxySignTrace,
    sig: &ProxyRingSignature,
) -> Result<bool> {
    let n = proxies.len();
    if sig.values.len() != n || trace.parts.len() != n {
        return Err(Error::LengthMismatch);
    }
    let combined: Vec<BasePoint> = proxies
        .iter()
        .map(|pk| base_add(original_public, pk))
        .collect();
    let ring = RingDescriptor::new(combined.iter().map(|c| c.to_bytes()).collect())?;
    let ring_key = h1_scalar(&encode_sign_input(msg, &ring));
    let warrant_key = warrant_point(warrant);

    for j in 0..n {
        let prev = sig.values[slot_value(j, n)];
        let expected = gt_mul(
            &gt_pow(
                &pairing(&combined[j], &key_mul(&h3_scalar(&prev), &warrant_key)),
                &ring_key,
            ),
            &pairing(&params.base, &trace.parts[j]),
        );
        if sig.values[j] != expected {
            return Ok(false);
        }
    }

    let mut sum = trace.parts[0];
    for part in &trace.parts[1..] {
        sum = key_add(&sum, part);
    }
    Ok(sum == sig.aggregate)
}

//! The identity-based ring signature scheme.
//!
//! A signature over ring L = (id_0, .., id_{r-1}) is (L; c_1, .., c_r; T).
//! Ring slots are 0-based and every c-index is taken mod r, so there are
//! exactly r ring values; `values[i]` stores c_{i+1}. Slot j's link equation
//! is
//!
//!   c_{j+1} = [ e(P_pub, H3(c_j)·Q_j) · e(T_j, P) ]^K,   K = H1(m ‖ L)
//!
//! The signer seeds slot k with c_{k+1} = e(A, P)^K for random A, walks the
//! remaining links with random T_j, and closes the ring with
//! T_k = A − H3(c_k)·S_k. Verification multiplies all link equations
//! together: the per-slot points collapse into T = Σ T_j and the product of
//! ring values telescopes, leaving a two-pairing check.

use rand::Rng;

use crate::error::{Error, Result};
use crate::groups::{
    gt_mul, gt_pow, key_add, key_mul, key_sub, pairing, random_key_point, scalar_mul, KeyPoint,
    Scalar, TargetElem,
};
use crate::hashing::{encode_sign_input, h1_scalar, h2_point, h3_scalar, RingDescriptor};
use crate::kgc::{IdentitySecretKey, SystemParams};

/// A ring signature: the member list, the ring values c_1..c_r, and the
/// aggregate point T.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSignature {
    pub ring: RingDescriptor,
    pub values: Vec<TargetElem>,
    pub aggregate: KeyPoint,
}

/// The randomness behind one signature: the ring key K, the glue point A,
/// and every per-slot point T_j (including the solved signer slot).
///
/// Exists so tests can audit each link equation individually. The trace
/// identifies the signer, so it must never travel with the signature.
#[derive(Debug, Clone)]
pub struct SignTrace {
    pub ring_key: Scalar,
    pub glue: KeyPoint,
    pub parts: Vec<KeyPoint>,
}

/// How the shared exponent K is applied when computing ring values. Both
/// routes produce identical group elements; folding trades target-group
/// exponentiations for key-group scalar multiplications.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ExpStrategy {
    /// Fold K into the key-group scalars: e(P, K·A), e(P_pub, (K·H3)·Q).
    FoldKey,
    /// Raise the assembled bracket to K in the target group. Reference
    /// route, kept for the equivalence tests.
    #[cfg_attr(not(test), allow(dead_code))]
    TargetPow,
}

/// Index of the ring value c_j in the stored list (which holds c_1..c_r).
fn slot_value(j: usize, r: usize) -> usize {
    (j + r - 1) % r
}

pub fn ring_sign<R: Rng>(
    params: &SystemParams,
    ring: &RingDescriptor,
    signer: usize,
    key: &IdentitySecretKey,
    msg: &[u8],
    rng: &mut R,
) -> Result<RingSignature> {
    Ok(ring_sign_traced(params, ring, signer, key, msg, rng)?.0)
}

/// Signing variant that also returns the per-slot trace for auditing.
pub fn ring_sign_traced<R: Rng>(
    params: &SystemParams,
    ring: &RingDescriptor,
    signer: usize,
    key: &IdentitySecretKey,
    msg: &[u8],
    rng: &mut R,
) -> Result<(RingSignature, SignTrace)> {
    sign_impl(params, ring, signer, key, msg, rng, ExpStrategy::FoldKey)
}

pub(crate) fn sign_impl<R: Rng>(
    params: &SystemParams,
    ring: &RingDescriptor,
    signer: usize,
    key: &IdentitySecretKey,
    msg: &[u8],
    rng: &mut R,
    strategy: ExpStrategy,
) -> Result<(RingSignature, SignTrace)> {
    let r = ring.len();
    if signer >= r {
        return Err(Error::SignerIndexOutOfRange {
            index: signer,
            ring_size: r,
        });
    }
    if ring.entry(signer) != key.id.as_slice() {
        return Err(Error::SignerMismatch);
    }

    let ring_key = h1_scalar(&encode_sign_input(msg, ring));
    let glue = random_key_point(rng);

    let mut values = vec![TargetElem::identity(); r];
    let mut parts = vec![KeyPoint::identity(); r];

    // Seed the signer's slot: c_{k+1} = e(A, P)^K.
    values[signer] = match strategy {
        ExpStrategy::FoldKey => pairing(&params.base, &key_mul(&ring_key, &glue)),
        ExpStrategy::TargetPow => gt_pow(&pairing(&params.base, &glue), &ring_key),
    };

    // Walk the remaining links forward with fresh randomness.
    for step in 1..r {
        let j = (signer + step) % r;
        let prev = values[slot_value(j, r)];
        let q_j = h2_point(ring.entry(j));
        let h = h3_scalar(&prev);
        parts[j] = random_key_point(rng);
        values[j] = match strategy {
            ExpStrategy::FoldKey => gt_mul(
                &pairing(
                    &params.master_public,
                    &key_mul(&scalar_mul(&ring_key, &h), &q_j),
                ),
                &pairing(&params.base, &key_mul(&ring_key, &parts[j])),
            ),
            ExpStrategy::TargetPow => gt_pow(
                &gt_mul(
                    &pairing(&params.master_public, &key_mul(&h, &q_j)),
                    &pairing(&params.base, &parts[j]),
                ),
                &ring_key,
            ),
        };
    }

    // Close the ring: T_k = A − H3(c_k)·S_k.
    let own_value = values[slot_value(signer, r)];
    parts[signer] = key_sub(&glue, &key_mul(&h3_scalar(&own_value), key.secret_point()));

    let mut aggregate = parts[0];
    for part in &parts[1..] {
        aggregate = key_add(&aggregate, part);
    }

    Ok((
        RingSignature {
            ring: ring.clone(),
            values,
            aggregate,
        },
        SignTrace {
            ring_key,
            glue,
            parts,
        },
    ))
}

/// The aggregate two-pairing check:
///
///   Π_j c_j = [ e(P_pub, Σ_j H3(c_j)·Q_j) · e(T, P) ]^K
///
/// Returns `Ok(false)` for a well-formed signature that fails the equation
/// and an error only for structural mismatch.
pub fn ring_verify(
    params: &SystemParams,
    ring: &RingDescriptor,
    msg: &[u8],
    sig: &RingSignature,
) -> Result<bool> {
    let r = ring.len();
    if sig.values.len() != r {
        return Err(Error::LengthMismatch);
    }
    let ring_key = h1_scalar(&encode_sign_input(msg, ring));

    let mut product = sig.values[0];
    for v in &sig.values[1..] {
        product = gt_mul(&product, v);
    }

    let mut weighted = weighted_key(sig, ring, 0);
    for j in 1..r {
        weighted = key_add(&weighted, &weighted_key(sig, ring, j));
    }

    let rhs = gt_mul(
        &pairing(&params.master_public, &key_mul(&ring_key, &weighted)),
        &pairing(&params.base, &key_mul(&ring_key, &sig.aggregate)),
    );
    Ok(product == rhs)
}

/// H3(c_j)·Q_j for ring slot j.
fn weighted_key(sig: &RingSignature, ring: &RingDescriptor, j: usize) -> KeyPoint {
    let r = ring.len();
    key_mul(
        &h3_scalar(&sig.values[slot_value(j, r)]),
        &h2_point(ring.entry(j)),
    )
}

/// Audits a signature against its trace: every cyclic link equation must
/// hold individually (computed by the direct exponentiation route, not the
/// folded one used for signing) and the per-slot points must sum to T.
pub fn link_check(
    params: &SystemParams,
    ring: &RingDescriptor,
    msg: &[u8],
    trace: &SignTrace,
    sig: &RingSignature,
) -> Result<bool> {
    let r = ring.len();
    if sig.values.len() != r || trace.parts.len() != r {
        return Err(Error::LengthMismatch);
    }
    let ring_key = h1_scalar(&encode_sign_input(msg, ring));

    for j in 0..r {
        let prev = sig.values[slot_value(j, r)];
        let expected = gt_pow(
            &gt_mul(
                &pairing(
                    &params.master_public,
                    &key_mul(&h3_scalar(&prev), &h2_point(ring.entry(j))),
                ),
                &pairing(&params.base, &trace.parts[j]),
            ),
            &ring_key,
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

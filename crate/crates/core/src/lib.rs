//! Identity-based ring signatures and proxy ring signatures over bilinear
//! pairings.
//!
//! A Key Generation Center ([`kgc`]) extracts per-identity private keys from
//! a master secret; any key holder can then sign on behalf of an ad-hoc ring
//! of identities without revealing which member signed ([`ring_sig`]). An
//! original signer can also delegate signing rights by warrant to a set of
//! proxies, any one of whom signs anonymously within the proxy set
//! ([`proxy_ring`]).
//!
//! The [`groups`] module hides the concrete curve (BLS12-381) behind base /
//! key / target group types, [`wire`] fixes the byte formats of every
//! shareable artifact, and [`cost_meter`] counts group operations per
//! invocation so the schemes' pairing budgets (2n−1 to sign, 2 to verify)
//! can be checked exactly.
//!
//! Research-grade code: not constant-time, not audited.

pub mod cost_meter;
pub mod error;
pub mod groups;
pub mod hashing;
pub mod kgc;
pub mod proxy_ring;
pub mod ring_sig;
pub mod wire;

pub use error::{Error, Result};
pub use groups::{BasePoint, CurveId, KeyPoint, Scalar, TargetElem};
pub use hashing::RingDescriptor;
pub use kgc::{IdentitySecretKey, MasterKey, SystemParams};
pub use proxy_ring::{DelegationToken, LongTermKeyPair, ProxyKeyPair, ProxyRingSignature};
pub use ring_sig::RingSignature;

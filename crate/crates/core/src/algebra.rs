//! Bilinear group wrapper over BLS12-381.
//!
//! Every other module talks to the curve through the newtypes here. Group
//! operations are written additively (`+`, `-`, `* Scalar`) for all three
//! groups, including the target group, where `+` is the field product.
//!
//! Encodings are fixed: scalars are 32 bytes little-endian, G1 and G2 use the
//! standard compressed form (48 and 96 bytes), and target-group elements are
//! 12 base-field elements (576 bytes). Decoding always validates curve and
//! subgroup membership.

use std::borrow::Cow;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::OnceLock;

use ark_bls12_381::{g1, Bls12_381, Fr, G1Affine, G1Projective, G2Affine, G2Projective};
use ark_ec::hashing::curve_maps::wb::WBMap;
use ark_ec::hashing::map_to_curve_hasher::MapToCurveBasedHasher;
use ark_ec::hashing::HashToCurve;
use ark_ec::pairing::{Pairing, PairingOutput};
use ark_ec::{AdditiveGroup, CurveGroup, PrimeGroup};
use ark_ff::field_hashers::DefaultFieldHasher;
use ark_ff::{Field, PrimeField, UniformRand, Zero};
use ark_serialize::{CanonicalDeserialize, CanonicalSerialize, Compress, Validate};
use rand::{CryptoRng, RngCore};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const SCALAR_BYTES: usize = 32;
pub const G1_BYTES: usize = 48;
pub const G2_BYTES: usize = 96;
pub const GT_BYTES: usize = 576;

/// Domain separation tag for deriving the public generators.
const PARAMS_DST: &[u8] = b"BPK-SHARP-V1-PARAMS_BLS12381G1_XMD:SHA-256_SSWU_RO_";

/// Element of the scalar field of order p.
#[derive(Clone, Copy, PartialEq, Eq, Default)]
pub struct Scalar(pub(crate) Fr);

/// Element of the prime-order subgroup of G1.
#[derive(Clone, Copy, PartialEq, Eq, Default)]
pub struct G1Point(pub(crate) G1Projective);

/// Element of the prime-order subgroup of G2.
#[derive(Clone, Copy, PartialEq, Eq, Default)]
pub struct G2Point(pub(crate) G2Projective);

/// Element of the pairing target group.
#[derive(Clone, Copy, PartialEq, Eq, Default)]
pub struct GtElement(pub(crate) PairingOutput<Bls12_381>);

impl Scalar {
    pub const ZERO: Scalar = Scalar(Fr::ZERO);
    pub const ONE: Scalar = Scalar(Fr::ONE);

    pub fn from_u64(v: u64) -> Self {
        Scalar(Fr::from(v))
    }

    pub fn random<R: RngCore + CryptoRng + ?Sized>(rng: &mut R) -> Self {
        Scalar(Fr::rand(rng))
    }

    /// Uniform element of `[1, p)`. Zero has probability 2^-255 and is
    /// redrawn.
    pub fn random_nonzero<R: RngCore + CryptoRng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let s = Fr::rand(rng);
            if !s.is_zero() {
                return Scalar(s);
            }
        }
    }

    /// Reduces an arbitrary little-endian byte string modulo p.
    pub fn from_le_bytes_mod_order(bytes: &[u8]) -> Self {
        Scalar(Fr::from_le_bytes_mod_order(bytes))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn invert(&self) -> Option<Scalar> {
        self.0.inverse().map(Scalar)
    }

    pub fn to_bytes(&self) -> [u8; SCALAR_BYTES] {
        let mut out = [0u8; SCALAR_BYTES];
        self.0
            .serialize_compressed(&mut out[..])
            .expect("scalar fits in 32 bytes");
        out
    }

    /// Rejects non-canonical encodings (values `>= p`).
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() != SCALAR_BYTES {
            return Err(Error::Encoding("scalar"));
        }
        Fr::deserialize_compressed(bytes)
            .map(Scalar)
            .map_err(|_| Error::Encoding("scalar"))
    }
}

impl G1Point {
    pub fn identity() -> Self {
        G1Point(G1Projective::zero())
    }

    pub fn generator() -> Self {
        G1Point(G1Projective::generator())
    }

    pub fn random<R: RngCore + CryptoRng + ?Sized>(rng: &mut R) -> Self {
        G1Point(G1Projective::rand(rng))
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_bytes(&self) -> [u8; G1_BYTES] {
        let mut out = [0u8; G1_BYTES];
        self.0
            .into_affine()
            .serialize_compressed(&mut out[..])
            .expect("compressed G1 is 48 bytes");
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() != G1_BYTES {
            return Err(Error::Encoding("G1 point"));
        }
        G1Affine::deserialize_with_mode(bytes, Compress::Yes, Validate::Yes)
            .map(|p| G1Point(p.into()))
            .map_err(|_| Error::Encoding("G1 point"))
    }

    /// Hash-to-curve (SSWU, random-oracle variant) under the given tag.
    pub fn hash_to_curve(dst: &[u8], msg: &[u8]) -> Self {
        let hasher = MapToCurveBasedHasher::<
            G1Projective,
            DefaultFieldHasher<Sha256, 128>,
            WBMap<g1::Config>,
        >::new(dst)
        .expect("BLS12-381 G1 supports the WB map");
        let p = hasher.hash(msg).expect("hash to curve is total");
        G1Point(p.into())
    }
}

impl G2Point {
    pub fn identity() -> Self {
        G2Point(G2Projective::zero())
    }

    pub fn generator() -> Self {
        G2Point(G2Projective::generator())
    }

    pub fn random<R: RngCore + CryptoRng + ?Sized>(rng: &mut R) -> Self {
        G2Point(G2Projective::rand(rng))
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_bytes(&self) -> [u8; G2_BYTES] {
        let mut out = [0u8; G2_BYTES];
        self.0
            .into_affine()
            .serialize_compressed(&mut out[..])
            .expect("compressed G2 is 96 bytes");
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() != G2_BYTES {
            return Err(Error::Encoding("G2 point"));
        }
        G2Affine::deserialize_with_mode(bytes, Compress::Yes, Validate::Yes)
            .map(|p| G2Point(p.into()))
            .map_err(|_| Error::Encoding("G2 point"))
    }
}

impl GtElement {
    pub fn identity() -> Self {
        GtElement(PairingOutput::ZERO)
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(GT_BYTES);
        self.0
            .serialize_uncompressed(&mut out)
            .expect("GT serializes to 576 bytes");
        out
    }

    /// Checks that the decoded value lies in the order-p subgroup.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() != GT_BYTES {
            return Err(Error::Encoding("GT element"));
        }
        PairingOutput::<Bls12_381>::deserialize_with_mode(bytes, Compress::No, Validate::Yes)
            .map(GtElement)
            .map_err(|_| Error::Encoding("GT element"))
    }
}

/// The bilinear map e: G1 x G2 -> GT.
pub fn pairing(p: &G1Point, q: &G2Point) -> GtElement {
    GtElement(Bls12_381::pairing(p.0, q.0))
}

/// Product of pairings computed with one shared final exponentiation.
pub fn multi_pairing(pairs: &[(G1Point, G2Point)]) -> GtElement {
    let (left, right): (Vec<G1Affine>, Vec<G2Affine>) = pairs
        .iter()
        .map(|(p, q)| (p.0.into_affine(), q.0.into_affine()))
        .unzip();
    GtElement(Bls12_381::multi_pairing(left, right))
}

/// A G2 element with its Miller-loop line coefficients precomputed, for
/// points that take part in several pairings.
#[derive(Clone, Debug)]
pub struct PreparedG2(<Bls12_381 as Pairing>::G2Prepared);

impl PreparedG2 {
    pub fn new(q: &G2Point) -> Self {
        PreparedG2(q.0.into_affine().into())
    }

    /// The prepared form of the standard G2 generator, computed once.
    pub fn generator() -> &'static PreparedG2 {
        static GEN: OnceLock<PreparedG2> = OnceLock::new();
        GEN.get_or_init(|| PreparedG2::new(&G2Point::generator()))
    }
}

/// [`multi_pairing`] against prepared G2 elements.
pub fn multi_pairing_prepared(pairs: &[(G1Point, &PreparedG2)]) -> GtElement {
    let mut left = Vec::with_capacity(pairs.len());
    let mut right = Vec::with_capacity(pairs.len());
    for (p, q) in pairs {
        left.push(p.0.into_affine());
        right.push(q.0.clone());
    }
    GtElement(Bls12_381::multi_pairing(left, right))
}

/// Deterministic map from a tagged transcript to a scalar.
///
/// Two SHA-256 blocks (512 bits) are drawn over the length-prefixed tag and
/// the transcript and reduced mod p, so the bias is below 2^-128.
pub fn hash_to_scalar(domain_tag: &[u8], transcript: &[u8]) -> Scalar {
    assert!(!domain_tag.is_empty(), "domain tag must be non-empty");
    let mut wide = [0u8; 64];
    for (i, chunk) in wide.chunks_mut(32).enumerate() {
        let mut h = Sha256::new();
        h.update([i as u8]);
        h.update((domain_tag.len() as u64).to_le_bytes());
        h.update(domain_tag);
        h.update(transcript);
        chunk.copy_from_slice(&h.finalize());
    }
    Scalar::from_le_bytes_mod_order(&wide)
}

/// The generators and public constants shared by every party.
///
/// `y` belongs to the signature scheme, `h` to the key exchange and `k` to
/// the encryption scheme. All three are hashed onto the curve from a seed so
/// that anyone can re-derive them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupParams {
    pub g: G1Point,
    pub g_hat: G2Point,
    pub y: G1Point,
    pub h: G1Point,
    pub k: G1Point,
}

impl GroupParams {
    pub fn derive(seed: &[u8]) -> Self {
        let point = |label: &[u8]| {
            let mut msg = Vec::with_capacity(seed.len() + 9 + label.len());
            msg.extend_from_slice(&(seed.len() as u64).to_le_bytes());
            msg.extend_from_slice(seed);
            msg.push(b'/');
            msg.extend_from_slice(label);
            G1Point::hash_to_curve(PARAMS_DST, &msg)
        };
        GroupParams {
            g: G1Point::generator(),
            g_hat: G2Point::generator(),
            y: point(b"Y"),
            h: point(b"H"),
            k: point(b"K"),
        }
    }

    /// SHA-256 over the canonical encodings, in the order G, G^, Y, H, K.
    pub fn digest(&self) -> [u8; 32] {
        let mut h = Sha256::new();
        h.update(self.g.to_bytes());
        h.update(self.g_hat.to_bytes());
        h.update(self.y.to_bytes());
        h.update(self.h.to_bytes());
        h.update(self.k.to_bytes());
        h.finalize().into()
    }

    /// Prepared `G^`; the shared cached copy when it is the standard
    /// generator.
    pub fn prepared_g_hat(&self) -> Cow<'static, PreparedG2> {
        if self.g_hat == G2Point::generator() {
            Cow::Borrowed(PreparedG2::generator())
        } else {
            Cow::Owned(PreparedG2::new(&self.g_hat))
        }
    }

    pub fn is_well_formed(&self) -> bool {
        !(self.y.is_identity() || self.h.is_identity() || self.k.is_identity())
            && !self.g.is_identity()
            && !self.g_hat.is_identity()
    }
}

macro_rules! group_ops {
    ($t:ident) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                $t(self.0 + rhs.0)
            }
        }

        impl AddAssign for $t {
            fn add_assign(&mut self, rhs: $t) {
                self.0 += rhs.0;
            }
        }

        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                $t(self.0 - rhs.0)
            }
        }

        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $t(-self.0)
            }
        }

        impl Mul<Scalar> for $t {
            type Output = $t;
            fn mul(self, rhs: Scalar) -> $t {
                $t(self.0 * rhs.0)
            }
        }
    };
}

group_ops!(Scalar);
group_ops!(G1Point);
group_ops!(G2Point);
group_ops!(GtElement);

impl Hash for G1Point {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.to_bytes().hash(state);
    }
}

impl Hash for G2Point {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.to_bytes().hash(state);
    }
}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.to_bytes().hash(state);
    }
}

fn hex_prefix(bytes: &[u8]) -> String {
    bytes.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({}..)", hex_prefix(&self.to_bytes()))
    }
}

impl fmt::Debug for G1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G1({}..)", hex_prefix(&self.to_bytes()))
    }
}

impl fmt::Debug for G2Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G2({}..)", hex_prefix(&self.to_bytes()))
    }
}

impl fmt::Debug for GtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GT({}..)", hex_prefix(&self.to_bytes()))
    }
}

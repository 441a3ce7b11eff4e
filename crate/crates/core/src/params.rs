//! The nine parameter sets and every size derived from them.
//!
//! All moduli are powers of two, so a parameter set is described by bit
//! widths: `q = 2^eps_q`, `p = 2^eps_p`, `t = 2^eps_t`. Everything else in the
//! crate takes a [`SchemeParams`] and never hard-codes a width.

use core::fmt;
use core::str::FromStr;

use crate::Error;

/// Length of every seed, hash input key and shared secret.
pub const SEED_BYTES: usize = 32;

/// Number of message bits carried by one encapsulation.
pub const MESSAGE_BITS: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    /// Ring-LWR, one large polynomial per key.
    Florete,
    /// Module-LWR over 64-coefficient polynomials.
    Espada,
    /// Module-LWR over 256-coefficient polynomials.
    Sable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Low,
    Medium,
    High,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Florete, Scheme::Espada, Scheme::Sable];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Florete => "florete",
            Scheme::Espada => "espada",
            Scheme::Sable => "sable",
        }
    }
}

impl Level {
    pub const ALL: [Level; 3] = [Level::Low, Level::Medium, Level::High];

    pub fn name(self) -> &'static str {
        match self {
            Level::Low => "low",
            Level::Medium => "medium",
            Level::High => "high",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Scheme::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownScheme(s.to_owned()))
    }
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Level::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownLevel(s.to_owned()))
    }
}

/// A (scheme, security level) pair. All nine combinations are valid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchemeId {
    pub scheme: Scheme,
    pub level: Level,
}

impl SchemeId {
    pub const ALL: [SchemeId; 9] = [
        SchemeId::new(Scheme::Florete, Level::Low),
        SchemeId::new(Scheme::Florete, Level::Medium),
        SchemeId::new(Scheme::Florete, Level::High),
        SchemeId::new(Scheme::Espada, Level::Low),
        SchemeId::new(Scheme::Espada, Level::Medium),
        SchemeId::new(Scheme::Espada, Level::High),
        SchemeId::new(Scheme::Sable, Level::Low),
        SchemeId::new(Scheme::Sable, Level::Medium),
        SchemeId::new(Scheme::Sable, Level::High),
    ];

    pub const fn new(scheme: Scheme, level: Level) -> Self {
        SchemeId { scheme, level }
    }

    pub fn params(self) -> &'static SchemeParams {
        params_for(self)
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.scheme, self.level)
    }
}

/// The quotient polynomial of the ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingModulus {
    /// `x^n + 1`
    NegaCyclic,
    /// `x^768 - x^384 + 1`; `x^768 + 1` is reducible, so Florete Medium uses this.
    Trinomial768,
}

/// Which multiplication tree computes the ring products.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MulTree {
    /// Toom-4, two Karatsuba layers, 16x16 schoolbook (the 256x256 multiplier).
    Toom4Karatsuba256,
    /// One Karatsuba layer over the 256x256 multiplier (n = 512).
    KaratsubaOver256,
    /// Toom-3 over the 256x256 multiplier (n = 768).
    Toom3Over256,
    /// Toom-4 over the 256x256 multiplier (n = 1024).
    Toom4Over256,
    /// Two Karatsuba layers and 16x16 schoolbook (n = 64). No divisions.
    Karatsuba64,
}

impl MulTree {
    /// Bits lost to exact divisions along the tree. Toom-3 costs one, Toom-4 three.
    pub const fn headroom_bits(self) -> u32 {
        match self {
            MulTree::Toom4Karatsuba256 | MulTree::KaratsubaOver256 => 3,
            MulTree::Toom3Over256 => 1 + 3,
            MulTree::Toom4Over256 => 3 + 3,
            MulTree::Karatsuba64 => 0,
        }
    }

    /// Number of 256x256 products in one ring multiplication, zero for trees
    /// that do not use the 256x256 multiplier.
    pub const fn mul256_per_product(self) -> u64 {
        match self {
            MulTree::Toom4Karatsuba256 => 1,
            MulTree::KaratsubaOver256 => 3,
            MulTree::Toom3Over256 => 5,
            MulTree::Toom4Over256 => 7,
            MulTree::Karatsuba64 => 0,
        }
    }
}

/// Lane width the multipliers compute in.
pub const LANE_BITS: u32 = 16;

/// Constants added before each rounding shift. Every coefficient of the
/// constant polynomials `h1`, `h2`, `h3` carries the same value.
///
/// `h3` may be negative under [`RoundingConstants::uncentered`]; it is applied
/// modulo `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RoundingConstants {
    pub h1: i32,
    pub h2: i32,
    pub h3: i32,
}

impl RoundingConstants {
    /// `h1 = h2 = 2^(eps_q-eps_p-1)`, `h3 = 2^(eps_p-B-1) - 2^(eps_p-eps_t-1)`.
    ///
    /// The second term of `h3` is `2^B` times the truncation midpoint of `v`.
    /// With `B = 1` the window still fits; with `B = 4` it is shifted far
    /// enough that Espada Low and Medium fail to decrypt at all. Kept for
    /// comparison only.
    pub const fn uncentered(eps_q: u32, eps_p: u32, eps_t: u32, msg_bits: u32) -> Self {
        let h = 1 << (eps_q - eps_p - 1);
        RoundingConstants {
            h1: h,
            h2: h,
            h3: (1 << (eps_p - msg_bits - 1)) - (1 << (eps_p - eps_t - 1)),
        }
    }

    /// Same `h1`, `h2`; `h3 = 2^(eps_p-B-1) - 2^(eps_p-eps_t-B-1)` centres the
    /// decoding window on the truncation error of `v`. This is what the KEM uses.
    pub const fn centered(eps_q: u32, eps_p: u32, eps_t: u32, msg_bits: u32) -> Self {
        let h = 1 << (eps_q - eps_p - 1);
        RoundingConstants {
            h1: h,
            h2: h,
            h3: (1 << (eps_p - msg_bits - 1)) - (1 << (eps_p - eps_t - msg_bits - 1)),
        }
    }
}

/// One immutable parameter record.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchemeParams {
    pub id: SchemeId,
    /// Ring degree.
    pub n: usize,
    /// Module rank (1 for Florete).
    pub l: usize,
    pub eps_q: u32,
    pub eps_p: u32,
    pub eps_t: u32,
    /// Centered binomial parameter: a sample is the difference of the Hamming
    /// weights of two `eta`-bit strings.
    pub eta: u32,
    /// Message bits per coefficient (`B`).
    pub msg_bits: u32,
    pub ring: RingModulus,
    pub tree: MulTree,
    /// Bits per packed secret coefficient.
    pub secret_bits: u32,
    pub rounding: RoundingConstants,
    /// Post-quantum security estimate, `log2`. Metadata only.
    pub pq_security_log2: u32,
    /// Decryption failure probability, `-log2`. Metadata only.
    pub failure_neg_log2: u32,
}

#[allow(clippy::too_many_arguments)]
const fn record(
    scheme: Scheme,
    level: Level,
    n: usize,
    l: usize,
    (eps_q, eps_p, eps_t): (u32, u32, u32),
    eta: u32,
    msg_bits: u32,
    ring: RingModulus,
    tree: MulTree,
    secret_bits: u32,
    (pq_security_log2, failure_neg_log2): (u32, u32),
) -> SchemeParams {
    SchemeParams {
        id: SchemeId::new(scheme, level),
        n,
        l,
        eps_q,
        eps_p,
        eps_t,
        eta,
        msg_bits,
        ring,
        tree,
        secret_bits,
        rounding: RoundingConstants::centered(eps_q, eps_p, eps_t, msg_bits),
        pq_security_log2,
        failure_neg_log2,
    }
}

use Level::*;
use MulTree::*;
use RingModulus::*;
use Scheme::*;

static PARAMS: [SchemeParams; 9] = [
    record(Florete, Low, 512, 1, (11, 9, 2), 1, 1, NegaCyclic, KaratsubaOver256, 2, (104, 138)),
    record(Florete, Medium, 768, 1, (10, 9, 3), 1, 1, Trinomial768, Toom3Over256, 2, (157, 131)),
    record(Florete, High, 1024, 1, (10, 9, 4), 1, 1, NegaCyclic, Toom4Over256, 2, (220, 165)),
    record(Espada, Low, 64, 10, (15, 13, 2), 3, 4, NegaCyclic, Karatsuba64, 4, (101, 148)),
    record(Espada, Medium, 64, 12, (15, 13, 3), 3, 4, NegaCyclic, Karatsuba64, 4, (128, 167)),
    record(Espada, High, 64, 15, (15, 13, 5), 3, 4, NegaCyclic, Karatsuba64, 4, (168, 162)),
    record(Sable, Low, 256, 2, (11, 9, 2), 1, 1, NegaCyclic, Toom4Karatsuba256, 2, (104, 139)),
    record(Sable, Medium, 256, 3, (11, 9, 4), 1, 1, NegaCyclic, Toom4Karatsuba256, 2, (169, 143)),
    record(Sable, High, 256, 4, (11, 10, 2), 1, 1, NegaCyclic, Toom4Karatsuba256, 2, (203, 208)),
];

/// The static record for `id`.
pub fn params_for(id: SchemeId) -> &'static SchemeParams {
    let row = match id.scheme {
        Florete => 0,
        Espada => 3,
        Sable => 6,
    };
    let col = match id.level {
        Low => 0,
        Medium => 1,
        High => 2,
    };
    &PARAMS[row + col]
}

/// Byte counts that follow from a parameter set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DerivedSizes {
    pub pk_bytes: usize,
    pub sk_bytes: usize,
    pub ct_bytes: usize,
    /// XOF bytes consumed to expand the public matrix.
    pub a_stream_bytes: usize,
    /// XOF bytes consumed to sample one secret vector.
    pub s_stream_bytes: usize,
}

impl SchemeParams {
    pub fn with_rounding(mut self, rounding: RoundingConstants) -> Self {
        self.rounding = rounding;
        self
    }

    pub fn uncentered_rounding(&self) -> RoundingConstants {
        RoundingConstants::uncentered(self.eps_q, self.eps_p, self.eps_t, self.msg_bits)
    }

    /// Bytes of `count` coefficients packed at `width` bits.
    pub const fn packed_bytes(count: usize, width: u32) -> usize {
        count * width as usize / 8
    }

    /// Packed length of one vector of `l` polynomials at `eps_p` bits.
    pub fn vec_p_bytes(&self) -> usize {
        Self::packed_bytes(self.n * self.l, self.eps_p)
    }

    /// Packed length of the message-carrying polynomial `v`.
    pub fn v_bytes(&self) -> usize {
        Self::packed_bytes(self.n, self.eps_t + self.msg_bits)
    }

    pub fn secret_bytes(&self) -> usize {
        Self::packed_bytes(self.n * self.l, self.secret_bits)
    }

    pub fn pk_bytes(&self) -> usize {
        SEED_BYTES + self.vec_p_bytes()
    }

    pub fn ct_bytes(&self) -> usize {
        self.vec_p_bytes() + self.v_bytes()
    }

    /// `s || z || H(pk) || pk`.
    pub fn sk_bytes(&self) -> usize {
        self.secret_bytes() + SEED_BYTES + SEED_BYTES + self.pk_bytes()
    }

    pub fn a_stream_bytes(&self) -> usize {
        Self::packed_bytes(self.n * self.l * self.l, self.eps_q)
    }

    pub fn s_stream_bytes(&self) -> usize {
        Self::packed_bytes(self.n * self.l, 2 * self.eta)
    }

    pub fn derived_sizes(&self) -> DerivedSizes {
        DerivedSizes {
            pk_bytes: self.pk_bytes(),
            sk_bytes: self.sk_bytes(),
            ct_bytes: self.ct_bytes(),
            a_stream_bytes: self.a_stream_bytes(),
            s_stream_bytes: self.s_stream_bytes(),
        }
    }

    /// Copies of the 256-bit message in the message polynomial (Florete only,
    /// 1 elsewhere).
    pub fn replicas(&self) -> usize {
        match self.id.scheme {
            Florete => self.n / MESSAGE_BITS,
            _ => 1,
        }
    }

    /// Largest decryption noise `|v'' - v'|` that cannot cause a failure:
    /// `p / 2^(B+1) * (1 - 1/t)`.
    pub fn noise_bound(&self) -> f64 {
        let p = (1u64 << self.eps_p) as f64;
        let t = (1u64 << self.eps_t) as f64;
        p / (1u64 << (self.msg_bits + 1)) as f64 * (1.0 - 1.0 / t)
    }
}

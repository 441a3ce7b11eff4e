//! Wire formats.
//!
//! Bit order is LSB-first everywhere: coefficient `i` of a `w`-bit packing
//! occupies stream bits `[i*w, (i+1)*w)`, and stream bit `j` is bit `j % 8`
//! of byte `j / 8`.
//!
//! ```text
//! pk = seed_A (32) || pack(b, eps_p)
//! ct = pack(u, eps_p) || pack(v, eps_t + B)
//! sk = pack_secret(s) || z (32) || H(pk) (32) || pk
//! ```

use zeroize::{Zeroize, ZeroizeOnDrop};

use crate::error::Error;
use crate::params::{Scheme, SchemeParams, MESSAGE_BITS, SEED_BYTES};
use crate::pke::{PkeCiphertext, PkePublicKey, PkeSecretKey};
use crate::ring::{mask, Poly, SecretVec};

/// Packs `coeffs`, each reduced to its low `width` bits.
pub fn pack_coeffs(coeffs: &[u16], width: u32) -> Vec<u8> {
    assert!((1..=16).contains(&width), "width {width}");
    assert_eq!(coeffs.len() * width as usize % 8, 0, "{} coefficients at {width} bits", coeffs.len());
    let mut out = Vec::with_capacity(coeffs.len() * width as usize / 8);
    let m = mask(width) as u32;
    let mut buf: u32 = 0;
    let mut bits = 0;
    for &c in coeffs {
        buf |= (c as u32 & m) << bits;
        bits += width;
        while bits >= 8 {
            out.push(buf as u8);
            buf >>= 8;
            bits -= 8;
        }
    }
    debug_assert_eq!(bits, 0);
    out
}

/// Inverse of [`pack_coeffs`]. `bytes` must be exactly `count * width / 8` long.
pub fn unpack_coeffs(bytes: &[u8], width: u32, count: usize) -> Result<Vec<u16>, Error> {
    assert!((1..=16).contains(&width), "width {width}");
    Error::check_len("packed coefficients", count * width as usize / 8, bytes.len())?;
    Ok(unpack_unchecked(bytes, width, count))
}

fn unpack_unchecked(bytes: &[u8], width: u32, count: usize) -> Vec<u16> {
    let m = mask(width) as u32;
    let mut out = Vec::with_capacity(count);
    let mut buf: u32 = 0;
    let mut bits = 0;
    let mut it = bytes.iter();
    for _ in 0..count {
        while bits < width {
            buf |= (*it.next().expect("length checked") as u32) << bits;
            bits += 8;
        }
        out.push((buf & m) as u16);
        buf >>= width;
        bits -= width;
    }
    out
}

fn pack_vec(v: &[Poly], width: u32) -> Vec<u8> {
    let flat: Vec<u16> = v.iter().flat_map(|p| p.coeffs.iter().copied()).collect();
    pack_coeffs(&flat, width)
}

fn unpack_vec(bytes: &[u8], width: u32, n: usize, l: usize) -> Vec<Poly> {
    unpack_unchecked(bytes, width, n * l)
        .chunks_exact(n)
        .map(|c| Poly::from_coeffs(c.to_vec()))
        .collect()
}

/// Two's-complement secret coefficients in `secret_bits` bits.
pub fn pack_secret(p: &SchemeParams, s: &SecretVec) -> Vec<u8> {
    assert_eq!(s.rank(), p.l, "secret rank");
    let mut flat: Vec<u16> = s
        .polys
        .iter()
        .flat_map(|poly| poly.iter().map(|&c| c as u8 as u16))
        .collect();
    let out = pack_coeffs(&flat, p.secret_bits);
    flat.zeroize();
    out
}

/// Inverse of [`pack_secret`]. Rejects encodings outside `[-eta, eta]`
/// (for example `0b10` at 2 bits, `4..=12` at 4 bits).
pub fn unpack_secret(p: &SchemeParams, bytes: &[u8]) -> Result<SecretVec, Error> {
    Error::check_len("secret", p.secret_bytes(), bytes.len())?;
    let w = p.secret_bits;
    let sign = 1u16 << (w - 1);
    let eta = p.eta as i16;
    let mut raw = unpack_unchecked(bytes, w, p.n * p.l);
    let mut bad = 0u8;
    let polys = raw
        .chunks_exact(p.n)
        .map(|chunk| {
            chunk
                .iter()
                .map(|&c| {
                    // sign-extend from w bits
                    let v = (c ^ sign).wrapping_sub(sign) as i16;
                    bad |= ((v > eta) | (v < -eta)) as u8;
                    v as i8
                })
                .collect()
        })
        .collect();
    raw.zeroize();
    let s = SecretVec { polys };
    if bad != 0 {
        return Err(Error::SecretCoefficient);
    }
    Ok(s)
}

/// A 256-bit message; bit `b` is `(bytes[b / 8] >> (b % 8)) & 1`.
#[derive(Clone, PartialEq, Eq, Zeroize, ZeroizeOnDrop)]
pub struct Message(pub [u8; 32]);

impl Message {
    pub fn bit(&self, b: usize) -> u16 {
        ((self.0[b / 8] >> (b % 8)) & 1) as u16
    }
}

impl std::fmt::Debug for Message {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("Message(..)")
    }
}

/// The message polynomial, `B` bits per coefficient.
///
/// Florete repeats the 256 bits `n / 256` times; Espada packs four bits per
/// coefficient, little-endian; Sable is the identity.
pub fn arrange_msg(p: &SchemeParams, m: &Message) -> Poly {
    let coeffs = match p.id.scheme {
        Scheme::Florete => (0..p.n).map(|i| m.bit(i % MESSAGE_BITS)).collect(),
        Scheme::Espada => (0..p.n)
            .map(|b| (0..4).map(|j| m.bit(4 * b + j) << j).sum())
            .collect(),
        Scheme::Sable => (0..p.n).map(|b| m.bit(b)).collect(),
    };
    Poly::from_coeffs(coeffs)
}

/// Inverse of [`arrange_msg`] on noisy input. Florete decodes each bit by
/// majority over the replicas: bit `b` is 0 iff the replica sum is at most
/// `replicas - 2` (0, 1, 2 for Low, Medium, High).
pub fn original_msg(p: &SchemeParams, m_poly: &Poly) -> Message {
    assert_eq!(m_poly.len(), p.n, "message polynomial length");
    let c = &m_poly.coeffs;
    let mut out = [0u8; 32];
    match p.id.scheme {
        Scheme::Florete => {
            let reps = p.replicas();
            let threshold = reps as i32 - 2;
            for b in 0..MESSAGE_BITS {
                let sum: i32 = (0..reps).map(|k| (c[b + k * MESSAGE_BITS] & 1) as i32).sum();
                let bit = ((threshold - sum) >> 31) & 1;
                out[b / 8] |= (bit as u8) << (b % 8);
            }
        }
        Scheme::Espada => {
            for (b1, &coef) in c.iter().enumerate() {
                for b2 in 0..4 {
                    let bit = 4 * b1 + b2;
                    out[bit / 8] |= (((coef >> b2) & 1) as u8) << (bit % 8);
                }
            }
        }
        Scheme::Sable => {
            for (b, &coef) in c.iter().enumerate() {
                out[b / 8] |= ((coef & 1) as u8) << (b % 8);
            }
        }
    }
    Message(out)
}

pub fn encode_pk(p: &SchemeParams, pk: &PkePublicKey) -> Vec<u8> {
    assert_eq!(pk.b.len(), p.l, "pk rank");
    let mut out = Vec::with_capacity(p.pk_bytes());
    out.extend_from_slice(&pk.seed_a);
    out.extend(pack_vec(&pk.b, p.eps_p));
    out
}

pub fn decode_pk(p: &SchemeParams, bytes: &[u8]) -> Result<PkePublicKey, Error> {
    Error::check_len("public key", p.pk_bytes(), bytes.len())?;
    let (seed, body) = bytes.split_at(SEED_BYTES);
    Ok(PkePublicKey {
        seed_a: seed.try_into().expect("32 bytes"),
        b: unpack_vec(body, p.eps_p, p.n, p.l),
    })
}

pub fn encode_ct(p: &SchemeParams, ct: &PkeCiphertext) -> Vec<u8> {
    assert_eq!(ct.u.len(), p.l, "ciphertext rank");
    let mut out = pack_vec(&ct.u, p.eps_p);
    out.extend(pack_coeffs(&ct.v.coeffs, p.eps_t + p.msg_bits));
    out
}

pub fn decode_ct(p: &SchemeParams, bytes: &[u8]) -> Result<PkeCiphertext, Error> {
    Error::check_len("ciphertext", p.ct_bytes(), bytes.len())?;
    let (u, v) = bytes.split_at(p.vec_p_bytes());
    Ok(PkeCiphertext {
        u: unpack_vec(u, p.eps_p, p.n, p.l),
        v: Poly::from_coeffs(unpack_unchecked(v, p.eps_t + p.msg_bits, p.n)),
    })
}

/// The KEM secret key's components.
#[derive(Clone, Debug)]
pub struct SecretKeyParts {
    pub s: PkeSecretKey,
    /// Implicit-rejection secret.
    pub z: [u8; 32],
    /// `H(pk)`.
    pub pkh: [u8; 32],
    pub pk: PkePublicKey,
    /// The public key's wire bytes, as stored.
    pub pk_bytes: Vec<u8>,
}

impl Drop for SecretKeyParts {
    fn drop(&mut self) {
        self.z.zeroize();
    }
}

pub fn encode_sk(p: &SchemeParams, s: &PkeSecretKey, z: &[u8; 32], pkh: &[u8; 32], pk_bytes: &[u8]) -> Vec<u8> {
    assert_eq!(pk_bytes.len(), p.pk_bytes(), "pk length");
    let mut out = Vec::with_capacity(p.sk_bytes());
    out.extend(pack_secret(p, &s.s));
    out.extend_from_slice(z);
    out.extend_from_slice(pkh);
    out.extend_from_slice(pk_bytes);
    out
}

pub fn decode_sk(p: &SchemeParams, bytes: &[u8]) -> Result<SecretKeyParts, Error> {
    Error::check_len("secret key", p.sk_bytes(), bytes.len())?;
    let (s, rest) = bytes.split_at(p.secret_bytes());
    let (z, rest) = rest.split_at(SEED_BYTES);
    let (pkh, pk) = rest.split_at(SEED_BYTES);
    Ok(SecretKeyParts {
        s: PkeSecretKey { s: unpack_secret(p, s)? },
        z: z.try_into().expect("32 bytes"),
        pkh: pkh.try_into().expect("32 bytes"),
        pk: decode_pk(p, pk)?,
        pk_bytes: pk.to_vec(),
    })
}

//! The CPA-secure encryption core shared by all three schemes.
//!
//! ```text
//! KeyGen:  A = gen_matrix(seed_A), s = gen_secret(seed_s)
//!          b = ((A^T s + h1) mod q) >> (eps_q - eps_p)
//! Enc:     s' = gen_secret(r)
//!          u  = ((A s' + h1) mod q) >> (eps_q - eps_p)
//!          v' = b^T s' + h2 mod p
//!          v  = ((v' - 2^(eps_p - B) m) mod p) >> (eps_p - eps_t - B)
//! Dec:     v'' = u^T s + h2 mod p
//!          m   = ((v'' - 2^(eps_p - eps_t - B) v + h3) mod p) >> (eps_p - B)
//! ```

use crate::codec::{arrange_msg, original_msg, Message};
use crate::params::SchemeParams;
use crate::polymul::{inner_prod, matvec_mul};
use crate::ring::{mask, Poly, PolyVec, SecretVec};
use crate::sampler::{gen_matrix, gen_secret};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PkePublicKey {
    pub seed_a: [u8; 32],
    /// Coefficients below `2^eps_p`.
    pub b: PolyVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PkeSecretKey {
    pub s: SecretVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PkeCiphertext {
    /// Coefficients below `2^eps_p`.
    pub u: PolyVec,
    /// Coefficients below `2^(eps_t + B)`.
    pub v: Poly,
}

/// Rounding constant `h` as a lane value; negative constants wrap and are
/// masked by the caller.
fn lane(h: i32) -> u16 {
    h as i16 as u16
}

fn round_vec(v: PolyVec, add: u16, eps: u32, shift: u32) -> PolyVec {
    v.iter().map(|p| p.add_shift(add, eps, shift)).collect()
}

pub fn keygen(p: &SchemeParams, seed_a: &[u8; 32], seed_s: &[u8; 32]) -> (PkePublicKey, PkeSecretKey) {
    let a = gen_matrix(p, seed_a);
    let s = gen_secret(p, seed_s);
    let h1 = lane(p.rounding.h1);
    let b = round_vec(matvec_mul(p, &a, &s, true), h1, p.eps_q, p.eps_q - p.eps_p);
    (PkePublicKey { seed_a: *seed_a, b }, PkeSecretKey { s })
}

/// Encryption that also returns `v'` (before the message is folded in), for
/// noise measurements.
pub fn enc_traced(p: &SchemeParams, pk: &PkePublicKey, m: &Message, r: &[u8; 32]) -> (PkeCiphertext, Poly) {
    assert_eq!(pk.b.len(), p.l, "public key rank");
    let a = gen_matrix(p, &pk.seed_a);
    let s1 = gen_secret(p, r);
    let h1 = lane(p.rounding.h1);
    let h2 = lane(p.rounding.h2);
    let u = round_vec(matvec_mul(p, &a, &s1, false), h1, p.eps_q, p.eps_q - p.eps_p);
    let v1 = inner_prod(p, &pk.b, &s1).add_shift(h2, p.eps_p, 0);

    let m_poly = arrange_msg(p, m);
    let mp = mask(p.eps_p);
    let up = p.eps_p - p.msg_bits;
    let down = p.eps_p - p.eps_t - p.msg_bits;
    let v = Poly::from_coeffs(
        v1.coeffs
            .iter()
            .zip(&m_poly.coeffs)
            .map(|(&x, &mb)| (x.wrapping_sub(mb << up) & mp) >> down)
            .collect(),
    );
    (PkeCiphertext { u, v }, v1)
}

pub fn enc(p: &SchemeParams, pk: &PkePublicKey, m: &Message, r: &[u8; 32]) -> PkeCiphertext {
    enc_traced(p, pk, m, r).0
}

/// Decryption that also returns `v''`.
pub fn dec_traced(p: &SchemeParams, sk: &PkeSecretKey, ct: &PkeCiphertext) -> (Message, Poly) {
    assert_eq!(ct.u.len(), p.l, "ciphertext rank");
    let h2 = lane(p.rounding.h2);
    let h3 = lane(p.rounding.h3);
    let v2 = inner_prod(p, &ct.u, &sk.s).add_shift(h2, p.eps_p, 0);
    let mp = mask(p.eps_p);
    let up = p.eps_p - p.eps_t - p.msg_bits;
    let down = p.eps_p - p.msg_bits;
    let m_poly = Poly::from_coeffs(
        v2.coeffs
            .iter()
            .zip(&ct.v.coeffs)
            .map(|(&x, &c)| (x.wrapping_sub(c << up).wrapping_add(h3) & mp) >> down)
            .collect(),
    );
    (original_msg(p, &m_poly), v2)
}

pub fn dec(p: &SchemeParams, sk: &PkeSecretKey, ct: &PkeCiphertext) -> Message {
    dec_traced(p, sk, ct).0
}

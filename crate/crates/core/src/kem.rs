//! The CCA-secure KEM: Fujisaki-Okamoto with implicit rejection.
//!
//! ```text
//! KeyGen:  (pk, s) = PKE.KeyGen(seed_A, seed_s); sk = s || z || H(pk) || pk
//! Encaps:  (K^, r) = G(H(pk) || m); c = PKE.Enc(pk, m; r); K = KDF(K^ || H(c))
//! Decaps:  m' = PKE.Dec(s, c); (K^', r') = G(H(pk) || m'); c* = PKE.Enc(pk, m'; r')
//!          K = KDF((c == c* ? K^' : z) || H(c))
//! ```
//!
//! `m` is the raw 256-bit message; the message polynomial only exists inside
//! the encryption core.

use std::fmt;

use zeroize::{Zeroize, ZeroizeOnDrop};

use crate::codec::{decode_ct, decode_pk, decode_sk, encode_ct, encode_pk, encode_sk, Message};
use crate::ct::{ct_eq_mask, ct_select};
use crate::error::Error;
use crate::params::{SchemeId, SchemeParams};
use crate::pke;
use crate::symmetric::{hash_g2, hash_h, kdf, split_g};

#[derive(Clone, PartialEq, Eq)]
pub struct PublicKey(Vec<u8>);

#[derive(Clone, PartialEq, Eq, Zeroize, ZeroizeOnDrop)]
pub struct SecretKey(Vec<u8>);

#[derive(Clone, PartialEq, Eq)]
pub struct Ciphertext(Vec<u8>);

#[derive(Clone, PartialEq, Eq, Zeroize, ZeroizeOnDrop)]
pub struct SharedSecret([u8; 32]);

macro_rules! byte_wrapper {
    ($t:ident, $what:literal, $len:ident) => {
        impl $t {
            /// Wraps wire bytes after checking the length for `id`.
            pub fn from_bytes(id: SchemeId, bytes: &[u8]) -> Result<Self, Error> {
                Error::check_len($what, id.params().$len(), bytes.len())?;
                Ok($t(bytes.to_vec()))
            }

            pub fn as_bytes(&self) -> &[u8] {
                &self.0
            }
        }

        impl AsRef<[u8]> for $t {
            fn as_ref(&self) -> &[u8] {
                &self.0
            }
        }
    };
}

byte_wrapper!(PublicKey, "public key", pk_bytes);
byte_wrapper!(SecretKey, "secret key", sk_bytes);
byte_wrapper!(Ciphertext, "ciphertext", ct_bytes);

impl SharedSecret {
    pub fn from_bytes(bytes: [u8; 32]) -> Self {
        SharedSecret(bytes)
    }

    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }
}

impl fmt::Debug for PublicKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PublicKey({} bytes)", self.0.len())
    }
}

impl fmt::Debug for Ciphertext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ciphertext({} bytes)", self.0.len())
    }
}

impl fmt::Debug for SecretKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SecretKey(<redacted {} bytes>)", self.0.len())
    }
}

impl fmt::Debug for SharedSecret {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("SharedSecret(<redacted>)")
    }
}

#[derive(Clone, Debug)]
pub struct KeyPair {
    pub public: PublicKey,
    pub secret: SecretKey,
}

/// A KEM instance for one parameter set.
#[derive(Clone, Copy, Debug)]
pub struct Kem {
    params: SchemeParams,
}

fn os_random() -> Result<[u8; 32], Error> {
    let mut out = [0u8; 32];
    getrandom::fill(&mut out).map_err(|e| Error::Entropy(e.to_string()))?;
    Ok(out)
}

impl Kem {
    pub fn new(id: SchemeId) -> Self {
        Kem { params: *id.params() }
    }

    /// A KEM over modified parameters (for example other rounding constants).
    pub fn with_params(params: SchemeParams) -> Self {
        Kem { params }
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    pub fn id(&self) -> SchemeId {
        self.params.id
    }

    /// Key generation from OS entropy.
    pub fn keygen(&self) -> Result<KeyPair, Error> {
        let mut seed_s = os_random()?;
        let mut z = os_random()?;
        let kp = self.keygen_deterministic(&os_random()?, &seed_s, &z);
        seed_s.zeroize();
        z.zeroize();
        Ok(kp)
    }

    pub fn keygen_deterministic(&self, seed_a: &[u8; 32], seed_s: &[u8; 32], z: &[u8; 32]) -> KeyPair {
        let p = &self.params;
        let (pk, sk) = pke::keygen(p, seed_a, seed_s);
        let pk_bytes = encode_pk(p, &pk);
        let pkh = hash_h(&pk_bytes);
        let sk_bytes = encode_sk(p, &sk, z, &pkh, &pk_bytes);
        KeyPair {
            public: PublicKey(pk_bytes),
            secret: SecretKey(sk_bytes),
        }
    }

    /// Encapsulation with a message drawn from OS entropy.
    pub fn encaps(&self, pk: &PublicKey) -> Result<(Ciphertext, SharedSecret), Error> {
        let mut m = os_random()?;
        let out = self.encaps_deterministic(pk, &m);
        m.zeroize();
        out
    }

    pub fn encaps_deterministic(&self, pk: &PublicKey, m: &[u8; 32]) -> Result<(Ciphertext, SharedSecret), Error> {
        let p = &self.params;
        let pk_obj = decode_pk(p, &pk.0)?;
        let m = Message(*m);
        let mut g = hash_g2(&hash_h(&pk.0), &m.0);
        let (mut k_hat, mut r) = split_g(&g);
        let ct = encode_ct(p, &pke::enc(p, &pk_obj, &m, &r));
        let ss = kdf(&k_hat, &hash_h(&ct));
        g.zeroize();
        k_hat.zeroize();
        r.zeroize();
        Ok((Ciphertext(ct), SharedSecret(ss)))
    }

    /// Decapsulation. A ciphertext of the right length always yields a key;
    /// a tampered one yields `KDF(z || H(c))`.
    pub fn decaps(&self, sk: &SecretKey, ct: &Ciphertext) -> Result<SharedSecret, Error> {
        let p = &self.params;
        let parts = decode_sk(p, &sk.0)?;
        let ct_obj = decode_ct(p, &ct.0)?;
        let m = pke::dec(p, &parts.s, &ct_obj);
        let mut g = hash_g2(&parts.pkh, &m.0);
        let (mut k_hat, mut r) = split_g(&g);
        let c_star = encode_ct(p, &pke::enc(p, &parts.pk, &m, &r));
        let ok = ct_eq_mask(&ct.0, &c_star);
        let mut key = ct_select(ok, &k_hat, &parts.z);
        let ss = kdf(&key, &hash_h(&ct.0));
        g.zeroize();
        k_hat.zeroize();
        r.zeroize();
        key.zeroize();
        Ok(SharedSecret(ss))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{Level, Scheme};

    #[test]
    fn sizes_match_records() {
        for id in SchemeId::ALL {
            let kem = Kem::new(id);
            let kp = kem.keygen_deterministic(&[1; 32], &[2; 32], &[3; 32]);
            let (ct, _) = kem.encaps_deterministic(&kp.public, &[4; 32]).unwrap();
            let p = id.params();
            assert_eq!(
                (kp.public.as_bytes().len(), kp.secret.as_bytes().len(), ct.as_bytes().len()),
                (p.pk_bytes(), p.sk_bytes(), p.ct_bytes())
            );
        }
    }

    #[test]
    fn round_trip_and_determinism() {
        for id in SchemeId::ALL {
            let kem = Kem::new(id);
            let kp = kem.keygen_deterministic(&[5; 32], &[6; 32], &[7; 32]);
            let (ct, ss) = kem.encaps_deterministic(&kp.public, &[8; 32]).unwrap();
            assert_eq!(kem.encaps_deterministic(&kp.public, &[8; 32]).unwrap(), (ct.clone(), ss.clone()));
            assert_eq!(kem.decaps(&kp.secret, &ct).unwrap(), ss, "{id}");
        }
    }

    #[test]
    fn stored_pkh_matches() {
        let kem = Kem::new(SchemeId::new(Scheme::Florete, Level::Low));
        let kp = kem.keygen_deterministic(&[1; 32], &[1; 32], &[1; 32]);
        let parts = decode_sk(kem.params(), kp.secret.as_bytes()).unwrap();
        assert_eq!(parts.pkh, hash_h(kp.public.as_bytes()));
        assert_eq!(parts.pk_bytes, kp.public.as_bytes());
    }

    #[test]
    fn tampered_ciphertext_is_rejected_implicitly() {
        let kem = Kem::new(SchemeId::new(Scheme::Sable, Level::Low));
        let kp = kem.keygen_deterministic(&[1; 32], &[2; 32], &[3; 32]);
        let (ct, ss) = kem.encaps_deterministic(&kp.public, &[4; 32]).unwrap();
        let mut bad = ct.as_bytes().to_vec();
        bad[10] ^= 0x04;
        let bad = Ciphertext::from_bytes(kem.id(), &bad).unwrap();
        let r1 = kem.decaps(&kp.secret, &bad).unwrap();
        assert_ne!(r1, ss);
        assert_eq!(r1, kem.decaps(&kp.secret, &bad).unwrap());
        assert_eq!(r1.as_bytes(), &kdf(&[3; 32], &hash_h(bad.as_bytes())));
    }

    #[test]
    fn wrong_lengths() {
        let id = SchemeId::new(Scheme::Sable, Level::Medium);
        let err = Ciphertext::from_bytes(id, &[0; 1023]).unwrap_err();
        assert!(err.to_string().starts_with("ciphertext length"), "{err}");
        let kem = Kem::new(id);
        let other = Kem::new(SchemeId::new(Scheme::Sable, Level::High))
            .keygen_deterministic(&[0; 32], &[0; 32], &[0; 32]);
        assert!(matches!(kem.encaps(&other.public), Err(Error::Length { what: "public key", .. })));
    }

    #[test]
    fn secrets_are_redacted() {
        let kem = Kem::new(SchemeId::new(Scheme::Sable, Level::Low));
        let kp = kem.keygen().unwrap();
        let (_, ss) = kem.encaps(&kp.public).unwrap();
        assert!(!format!("{:?}{:?}", kp.secret, ss).contains(&hex::encode(&kp.secret.as_bytes()[..4])));
    }
}

//! SHAKE-128 as the expansion XOF, SHA3-256 as `H`, SHA3-512 as `G`, and the
//! key derivation `KDF(k, c) = SHA3-256(k || c)`.

use sha3::digest::{Digest, ExtendableOutput, Update, XofReader};
use sha3::{Sha3_256, Sha3_512, Shake128, Shake128Reader};

pub type Digest32 = [u8; 32];
pub type Digest64 = [u8; 64];

/// A SHAKE-128 output stream. Reads are contiguous: reading `k` then `j`
/// bytes yields the same bytes as reading `k + j` at once.
pub struct XofStream {
    reader: Shake128Reader,
    position: usize,
}

impl XofStream {
    pub fn new(seed: &[u8]) -> Self {
        let mut shake = Shake128::default();
        shake.update(seed);
        XofStream {
            reader: shake.finalize_xof(),
            position: 0,
        }
    }

    /// Multi-part seed, absorbed in order.
    pub fn from_parts(parts: &[&[u8]]) -> Self {
        let mut shake = Shake128::default();
        for part in parts {
            shake.update(part);
        }
        XofStream {
            reader: shake.finalize_xof(),
            position: 0,
        }
    }

    pub fn fill(&mut self, out: &mut [u8]) {
        self.reader.read(out);
        self.position += out.len();
    }

    pub fn read_vec(&mut self, len: usize) -> Vec<u8> {
        let mut out = vec![0u8; len];
        self.fill(&mut out);
        out
    }

    /// Total bytes squeezed so far.
    pub fn position(&self) -> usize {
        self.position
    }
}

pub fn hash_h(data: &[u8]) -> Digest32 {
    Sha3_256::digest(data).into()
}

pub fn hash_g(data: &[u8]) -> Digest64 {
    Sha3_512::digest(data).into()
}

/// `G(a || b)` without building the concatenation.
pub fn hash_g2(a: &[u8], b: &[u8]) -> Digest64 {
    let mut g = Sha3_512::new();
    Digest::update(&mut g, a);
    Digest::update(&mut g, b);
    g.finalize().into()
}

pub fn kdf(k_hat: &[u8; 32], c_hash: &Digest32) -> [u8; 32] {
    let mut h = Sha3_256::new();
    Digest::update(&mut h, k_hat);
    Digest::update(&mut h, c_hash);
    h.finalize().into()
}

/// Splits a `G` output into `(K_hat, r)`.
pub fn split_g(digest: &Digest64) -> ([u8; 32], [u8; 32]) {
    let mut k = [0u8; 32];
    let mut r = [0u8; 32];
    k.copy_from_slice(&digest[..32]);
    r.copy_from_slice(&digest[32..]);
    (k, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sha3_256_empty() {
        assert_eq!(
            hex::encode(hash_h(b"")),
            "a7ffc6f8bf1ed76651c14756a061d662f580ff4de43b49fa82d80a4b80f8434a"
        );
    }

    #[test]
    fn sha3_512_empty() {
        assert_eq!(
            hex::encode(hash_g(b"")),
            "a69f73cca23a9ac5c8b567dc185a756e97c982164fe25859e0d1dcc1475c80a6\
             15b2123af1f5f94c11e3e9402c3ac558f500199d95b6d3e301758586281dcd26"
        );
    }

    #[test]
    fn shake128_empty_message() {
        // FIPS 202 SHAKE128("") first 32 bytes.
        let mut x = XofStream::new(b"");
        assert_eq!(
            hex::encode(x.read_vec(32)),
            "7f9c2ba4e88f827d616045507605853ed73b8093f6efbc88eb1a6eacfa66ef26"
        );
    }

    #[test]
    fn shake128_zero_seed() {
        // Independent FIPS 202 implementation (Python hashlib):
        // hashlib.shake_128(bytes(32)).hexdigest(32)
        let mut x = XofStream::new(&[0u8; 32]);
        assert_eq!(
            hex::encode(x.read_vec(32)),
            "24a7ca4b75e3898d4f12e74dea8cbb650733bd34525b281e4b6488d4291c0fdb"
        );
    }

    #[test]
    fn split_reads_match_single_read() {
        let seed = [7u8; 32];
        let mut a = XofStream::new(&seed);
        let mut first = a.read_vec(16);
        first.extend(a.read_vec(16));
        assert_eq!(a.position(), 32);
        assert_eq!(first, XofStream::new(&seed).read_vec(32));
    }

    #[test]
    fn distinct_seeds_diverge() {
        assert_ne!(XofStream::new(&[1u8; 32]).read_vec(32), XofStream::new(&[2u8; 32]).read_vec(32));
    }

    #[test]
    fn parts_equal_concatenation() {
        let whole = XofStream::new(b"abcdef").read_vec(40);
        assert_eq!(XofStream::from_parts(&[b"abc", b"def"]).read_vec(40), whole);
        assert_eq!(hash_g2(b"abc", b"def"), hash_g(b"abcdef"));
    }

    #[test]
    fn kdf_is_order_sensitive() {
        let a = [1u8; 32];
        let b = [2u8; 32];
        assert_eq!(kdf(&a, &b), kdf(&a, &b));
        assert_ne!(kdf(&a, &b), kdf(&b, &a));
        let mut cat = a.to_vec();
        cat.extend_from_slice(&b);
        assert_eq!(kdf(&a, &b), hash_h(&cat));
    }

    #[test]
    fn g_split_round_trip() {
        let g = hash_g(b"split");
        let (k, r) = split_g(&g);
        assert_eq!([k, r].concat(), g.to_vec());
    }
}

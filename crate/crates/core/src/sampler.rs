//! Expansion of seeds into the public matrix and the secret vectors.
//!
//! The matrix takes `n * l * l * eps_q / 8` XOF bytes, split into `eps_q`-bit
//! LSB-first fields and assigned row-major (`A[0][0]` first, then `A[0][1]`,
//! ...). A secret takes `n * l * 2 * eta / 8` bytes; each `2 * eta`-bit field
//! yields one coefficient `HW(low eta bits) - HW(high eta bits)`.

use crate::codec::unpack_coeffs;
use crate::params::SchemeParams;
use crate::ring::{Poly, PolyMat, SecretVec};
use crate::symmetric::XofStream;
use zeroize::Zeroize;

/// One centered binomial sample from a `2 * eta`-bit field.
#[inline]
pub fn cbd_sample(field: u16, eta: u32) -> i8 {
    let m = (1u16 << eta) - 1;
    (field & m).count_ones() as i8 - ((field >> eta) & m).count_ones() as i8
}

pub fn gen_matrix(p: &SchemeParams, seed_a: &[u8; 32]) -> PolyMat {
    gen_matrix_from(p, &mut XofStream::new(seed_a))
}

/// Reads exactly [`SchemeParams::a_stream_bytes`] from `xof`.
pub fn gen_matrix_from(p: &SchemeParams, xof: &mut XofStream) -> PolyMat {
    let bytes = xof.read_vec(p.a_stream_bytes());
    let coeffs = unpack_coeffs(&bytes, p.eps_q, p.n * p.l * p.l).expect("stream length");
    let mut polys = coeffs.chunks_exact(p.n).map(|c| Poly::from_coeffs(c.to_vec()));
    let rows = (0..p.l).map(|_| polys.by_ref().take(p.l).collect()).collect();
    PolyMat { rows }
}

pub fn gen_secret(p: &SchemeParams, seed: &[u8; 32]) -> SecretVec {
    gen_secret_from(p, &mut XofStream::new(seed))
}

/// Reads exactly [`SchemeParams::s_stream_bytes`] from `xof`.
pub fn gen_secret_from(p: &SchemeParams, xof: &mut XofStream) -> SecretVec {
    let mut bytes = xof.read_vec(p.s_stream_bytes());
    let mut fields = unpack_coeffs(&bytes, 2 * p.eta, p.n * p.l).expect("stream length");
    let polys = fields
        .chunks_exact(p.n)
        .map(|c| c.iter().map(|&f| cbd_sample(f, p.eta)).collect())
        .collect();
    bytes.zeroize();
    fields.zeroize();
    SecretVec { polys }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{Level, Scheme, SchemeId};

    #[test]
    fn florete_stream_budgets() {
        for (level, a, s) in [(Level::Low, 704, 128), (Level::Medium, 960, 192), (Level::High, 1280, 256)] {
            let p = SchemeId::new(Scheme::Florete, level).params();
            let mut x = XofStream::new(&[1; 32]);
            gen_matrix_from(p, &mut x);
            assert_eq!(x.position(), a);
            let mut x = XofStream::new(&[1; 32]);
            gen_secret_from(p, &mut x);
            assert_eq!(x.position(), s);
        }
    }

    #[test]
    fn cbd_values() {
        assert_eq!(cbd_sample(0b01, 1), 1);
        assert_eq!(cbd_sample(0b10, 1), -1);
        assert_eq!(cbd_sample(0b11, 1), 0);
        assert_eq!(cbd_sample(0b000_111, 3), 3);
        assert_eq!(cbd_sample(0b111_000, 3), -3);
        assert_eq!(cbd_sample(0b101_011, 3), 0);
    }

    #[test]
    fn matrix_row_major() {
        let p = SchemeId::new(Scheme::Sable, Level::Low).params();
        let m = gen_matrix(p, &[9; 32]);
        let raw = XofStream::new(&[9; 32]).read_vec(p.a_stream_bytes());
        let flat = unpack_coeffs(&raw, p.eps_q, p.n * 4).unwrap();
        assert_eq!(m.get(0, 1).coeffs, flat[256..512]);
        assert_eq!(m.get(1, 0).coeffs, flat[512..768]);
        assert!(flat.iter().all(|&c| c < 1 << p.eps_q));
    }

    #[test]
    fn secrets_in_range() {
        for id in SchemeId::ALL {
            let p = id.params();
            let s = gen_secret(p, &[id.level as u8; 32]);
            assert_eq!(s.rank(), p.l);
            let eta = p.eta as i8;
            assert!(s.polys.iter().flatten().all(|&c| (-eta..=eta).contains(&c)));
        }
    }
}

use proptest::prelude::*;
use scabbard::codec::Message;
use scabbard::params::{Level, Scheme, SchemeId};
use scabbard::ring::Poly;
use scabbard::{pke, Ciphertext, Kem, PublicKey, SecretKey};

#[test]
fn wrappers_check_lengths() {
    let id = SchemeId::new(Scheme::Florete, Level::High);
    let p = id.params();
    assert!(PublicKey::from_bytes(id, &vec![0; p.pk_bytes()]).is_ok());
    assert!(SecretKey::from_bytes(id, &vec![0; p.sk_bytes() + 1]).is_err());
    assert!(Ciphertext::from_bytes(id, &[]).is_err());
}

#[test]
fn secret_key_with_bad_coefficient() {
    let kem = Kem::new(SchemeId::new(Scheme::Sable, Level::Low));
    let kp = kem.keygen_deterministic(&[1; 32], &[2; 32], &[3; 32]);
    let (ct, _) = kem.encaps_deterministic(&kp.public, &[4; 32]).unwrap();
    let mut sk = kp.secret.as_bytes().to_vec();
    sk[0] = 0b10;
    let sk = SecretKey::from_bytes(kem.id(), &sk).unwrap();
    assert_eq!(kem.decaps(&sk, &ct), Err(scabbard::Error::SecretCoefficient));
}

#[test]
fn keys_from_different_sets_do_not_mix() {
    // Florete Low and Sable Low share pk and sk lengths but not ciphertext length.
    let a = Kem::new(SchemeId::new(Scheme::Florete, Level::Low));
    let b = Kem::new(SchemeId::new(Scheme::Sable, Level::Low));
    let kp = a.keygen_deterministic(&[1; 32], &[2; 32], &[3; 32]);
    let (ct, _) = b.encaps_deterministic(&kp.public, &[9; 32]).unwrap();
    assert!(Ciphertext::from_bytes(a.id(), ct.as_bytes()).is_err());
    let err = a.decaps(&kp.secret, &ct).unwrap_err();
    assert!(err.to_string().starts_with("ciphertext length"));
}

#[test]
fn zero_ciphertext_with_zero_secret() {
    // With s = 0 and c = 0 every message coefficient is ((h2 + h3) mod p) >> (eps_p - B).
    for id in SchemeId::ALL {
        let p = id.params();
        let sk = pke::PkeSecretKey { s: scabbard::ring::SecretVec { polys: vec![vec![0; p.n]; p.l] } };
        let ct = pke::PkeCiphertext { u: vec![Poly::zero(p.n); p.l], v: Poly::zero(p.n) };
        let (_, v2) = pke::dec_traced(p, &sk, &ct);
        assert!(v2.coeffs.iter().all(|&c| c as i32 == p.rounding.h2), "{id}");
        let k = ((p.rounding.h2 + p.rounding.h3).rem_euclid(1 << p.eps_p)) >> (p.eps_p - p.msg_bits);
        let expect = scabbard::codec::original_msg(p, &Poly::constant(p.n, k as u16));
        assert_eq!(pke::dec(p, &sk, &ct), expect, "{id}");
    }
}

#[test]
fn uncentered_rounding_comparison() {
    // Sets with B = 1 decrypt under both h3 variants; Espada (B = 4) only under the centered one.
    for id in SchemeId::ALL {
        let p = id.params().with_rounding(id.params().uncentered_rounding());
        let (pk, sk) = pke::keygen(&p, &[5; 32], &[6; 32]);
        let ok = (0..8u8).all(|i| {
            let m = Message([i.wrapping_mul(37); 32]);
            pke::dec(&p, &sk, &pke::enc(&p, &pk, &m, &[i; 32])) == m
        });
        let expect_ok = !(id.scheme == Scheme::Espada && id.level != Level::High);
        if expect_ok {
            assert!(ok, "{id} should decrypt with the uncentered constant");
        } else {
            assert!(!ok, "{id} unexpectedly decrypts with the uncentered constant");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rounding_is_monotone(x in 0u16..2048, y in 0u16..2048) {
        let p = SchemeId::new(Scheme::Sable, Level::Medium).params();
        let h1 = p.rounding.h1 as u16;
        let shift = p.eps_q - p.eps_p;
        let r = |v: u16| Poly::from_coeffs(vec![v]).add_shift(h1, p.eps_q, shift).coeffs[0];
        let (lo, hi) = (x.min(y), x.max(y));
        // Monotone up to the single wrap at the top of Z_q.
        if hi + h1 < 2048 {
            prop_assert!(r(lo) <= r(hi));
        }
    }

    #[test]
    fn kem_round_trip(seed in any::<[u8; 32]>(), m in any::<[u8; 32]>(), set in 0usize..9) {
        let kem = Kem::new(SchemeId::ALL[set]);
        let kp = kem.keygen_deterministic(&seed, &m, &seed);
        let (ct, ss) = kem.encaps_deterministic(&kp.public, &m).unwrap();
        prop_assert_eq!(kem.decaps(&kp.secret, &ct).unwrap(), ss);
    }
}

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_scabbard");
const SEED_A: &str = "0101010101010101010101010101010101010101010101010101010101010101";
const SEED_S: &str = "0202020202020202020202020202020202020202020202020202020202020202";
const Z: &str = "0303030303030303030303030303030303030303030303030303030303030303";
const M: &str = "0404040404040404040404040404040404040404040404040404040404040404";

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("SCABBARD_DETERMINISTIC").output().expect("spawn")
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn keygen(dir: &TempDir, scheme: &str, level: &str) -> (String, String) {
    let (pk, sk) = (path(dir, "pk"), path(dir, "sk"));
    let o = run(&["keygen", "--scheme", scheme, "--level", level, "--pk", &pk, "--sk", &sk]);
    assert!(o.status.success(), "{}", stderr(&o));
    (pk, sk)
}

#[test]
fn sable_medium_public_key_size() {
    let dir = TempDir::new().unwrap();
    let (pk, sk) = keygen(&dir, "sable", "medium");
    assert_eq!(fs::metadata(&pk).unwrap().len(), 896);
    assert_eq!(fs::metadata(&sk).unwrap().len(), 1152);
}

#[test]
fn round_trip_every_set() {
    for scheme in ["florete", "espada", "sable"] {
        for level in ["low", "medium", "high"] {
            let dir = TempDir::new().unwrap();
            let (pk, sk) = keygen(&dir, scheme, level);
            let (ct, ss1, ss2) = (path(&dir, "ct"), path(&dir, "ss1"), path(&dir, "ss2"));
            let o = run(&["encaps", "--scheme", scheme, "--level", level, "--pk", &pk, "--ct", &ct, "--ss", &ss1]);
            assert!(o.status.success(), "{}", stderr(&o));
            let o = run(&["decaps", "--scheme", scheme, "--level", level, "--sk", &sk, "--ct", &ct, "--ss", &ss2]);
            assert!(o.status.success(), "{}", stderr(&o));
            let a = fs::read(&ss1).unwrap();
            assert_eq!(a.len(), 32);
            assert_eq!(a, fs::read(&ss2).unwrap(), "{scheme} {level}");
        }
    }
}

#[test]
fn truncated_ciphertext_is_rejected() {
    let dir = TempDir::new().unwrap();
    let (pk, sk) = keygen(&dir, "sable", "low");
    let (ct, ss) = (path(&dir, "ct"), path(&dir, "ss"));
    assert!(run(&["encaps", "--scheme", "sable", "--level", "low", "--pk", &pk, "--ct", &ct, "--ss", &ss]).status.success());
    let mut bytes = fs::read(&ct).unwrap();
    bytes.pop();
    fs::write(&ct, bytes).unwrap();
    let o = run(&["decaps", "--scheme", "sable", "--level", "low", "--sk", &sk, "--ct", &ct, "--ss", &ss]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("ciphertext length"), "{}", stderr(&o));
}

#[test]
fn deterministic_keygen_and_encaps() {
    let dir = TempDir::new().unwrap();
    let outputs: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let (pk, sk, ct, ss) =
                (path(&dir, &format!("pk{i}")), path(&dir, &format!("sk{i}")), path(&dir, &format!("ct{i}")), path(&dir, &format!("ss{i}")));
            let o = Command::new(BIN)
                .args(["keygen", "--scheme", "espada", "--level", "low", "--pk", &pk, "--sk", &sk])
                .args(["--seed-a", SEED_A, "--seed-s", SEED_S, "--z", Z])
                .env("SCABBARD_DETERMINISTIC", "1")
                .output()
                .unwrap();
            assert!(o.status.success(), "{}", stderr(&o));
            let o = Command::new(BIN)
                .args(["encaps", "--scheme", "espada", "--level", "low", "--pk", &pk, "--ct", &ct, "--ss", &ss, "--m", M])
                .env("SCABBARD_DETERMINISTIC", "1")
                .output()
                .unwrap();
            assert!(o.status.success(), "{}", stderr(&o));
            [fs::read(pk).unwrap(), fs::read(sk).unwrap(), fs::read(ct).unwrap(), fs::read(ss).unwrap()].concat()
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn deterministic_mode_refuses_os_entropy() {
    let dir = TempDir::new().unwrap();
    let (pk, sk) = (path(&dir, "pk"), path(&dir, "sk"));
    let o = Command::new(BIN)
        .args(["keygen", "--scheme", "sable", "--level", "low", "--pk", &pk, "--sk", &sk])
        .env("SCABBARD_DETERMINISTIC", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(!Path::new(&pk).exists());
    let o = run(&["keygen", "--scheme", "sable", "--level", "low", "--pk", &pk, "--sk", &sk, "--seed-a", SEED_A]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_seed_hex() {
    let dir = TempDir::new().unwrap();
    let (pk, sk) = (path(&dir, "pk"), path(&dir, "sk"));
    let o = run(&["keygen", "--scheme", "sable", "--level", "low", "--pk", &pk, "--sk", &sk, "--seed-a", "abcd", "--seed-s", SEED_S, "--z", Z]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("64 hex digits"));
}

#[test]
fn kat_generate_and_verify() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (path(&dir, "a.kat"), path(&dir, "b.kat"));
    for out in [&a, &b] {
        let o = run(&["kat", "--scheme", "florete", "--level", "low", "--master-seed", SEED_A, "--count", "2", "--out", out]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("# scabbard-kat v1 florete low\ncount = 0\nseed = "));

    let o = run(&["kat-verify", &a]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = run(&["kat-verify", &a, "--master-seed", SEED_A]);
    assert!(o.status.success(), "{}", stderr(&o));

    let pos = text.find("\nss = ").unwrap() + 6;
    let mut edited = text.into_bytes();
    edited[pos] = if edited[pos] == b'0' { b'1' } else { b'0' };
    fs::write(&b, edited).unwrap();
    let o = run(&["kat-verify", &b]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("field `ss`"), "{}", stderr(&o));
}

#[test]
fn sizes_table() {
    let o = run(&["sizes"]);
    assert!(o.status.success());
    let out = String::from_utf8(o.stdout).unwrap();
    assert_eq!(out.lines().count(), 9);
    assert!(out.lines().any(|l| l == "florete medium 896 1152 1248"));
    assert!(out.lines().any(|l| l == "espada high 1592 2136 1632"));
}

#[test]
fn bench_output_and_zero_iterations() {
    let o = run(&["bench", "--scheme", "sable", "--level", "low", "--iters", "3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = String::from_utf8(o.stdout).unwrap();
    let ops: Vec<&str> = out.lines().map(|l| l.split_whitespace().nth(2).unwrap()).collect();
    assert_eq!(ops, ["keygen", "encaps", "decaps"]);
    for line in out.lines() {
        let f: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(f.len(), 5, "{line}");
        assert!(f[3].parse::<u64>().is_ok() && f[4] == "ns", "{line}");
    }
    assert_eq!(run(&["bench", "--iters", "0"]).status.code(), Some(2));
}

#[test]
fn secrets_never_printed() {
    let dir = TempDir::new().unwrap();
    let (pk, sk) = (path(&dir, "pk"), path(&dir, "sk"));
    let o = run(&["keygen", "--scheme", "sable", "--level", "low", "--pk", &pk, "--sk", &sk, "--seed-a", SEED_A, "--seed-s", SEED_S, "--z", Z]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty() && o.stderr.is_empty());
}

#[test]
fn unknown_scheme() {
    let o = run(&["sizes", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["keygen", "--scheme", "rapier", "--level", "low", "--pk", "x", "--sk", "y"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown scheme"));
}

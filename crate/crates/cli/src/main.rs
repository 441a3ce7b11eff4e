use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use scabbard::kat;
use scabbard::{Ciphertext, Kem, Level, PublicKey, Scheme, SchemeId, SecretKey, SharedSecret};

const DETERMINISTIC_ENV: &str = "SCABBARD_DETERMINISTIC";

#[derive(Parser)]
#[command(name = "scabbard", version, about = "Florete, Espada and Sable key encapsulation")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Copy)]
struct SetArgs {
    #[arg(long, value_parser = parse_scheme)]
    scheme: Scheme,
    #[arg(long, value_parser = parse_level)]
    level: Level,
}

impl SetArgs {
    fn id(self) -> SchemeId {
        SchemeId::new(self.scheme, self.level)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a key pair.
    Keygen {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        pk: PathBuf,
        #[arg(long)]
        sk: PathBuf,
        /// Matrix seed (64 hex digits).
        #[arg(long, value_parser = parse_hex32)]
        seed_a: Option<[u8; 32]>,
        /// Secret seed (64 hex digits).
        #[arg(long, value_parser = parse_hex32)]
        seed_s: Option<[u8; 32]>,
        /// Implicit-rejection secret (64 hex digits).
        #[arg(long, value_parser = parse_hex32)]
        z: Option<[u8; 32]>,
    },
    /// Encapsulate to a public key.
    Encaps {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        pk: PathBuf,
        #[arg(long)]
        ct: PathBuf,
        #[arg(long)]
        ss: PathBuf,
        /// Message (64 hex digits).
        #[arg(long, value_parser = parse_hex32)]
        m: Option<[u8; 32]>,
    },
    /// Decapsulate a ciphertext.
    Decaps {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        sk: PathBuf,
        #[arg(long)]
        ct: PathBuf,
        #[arg(long)]
        ss: PathBuf,
    },
    /// Write a known-answer test file.
    Kat {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, value_parser = parse_hex32)]
        master_seed: [u8; 32],
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        count: u32,
        /// Output file (standard output if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a known-answer test file.
    KatVerify {
        file: PathBuf,
        /// Regenerate every record from this seed instead of trusting the
        /// per-record seeds.
        #[arg(long, value_parser = parse_hex32)]
        master_seed: Option<[u8; 32]>,
    },
    /// Print key and ciphertext sizes in bytes (pk sk ct).
    Sizes,
    /// Median time per operation.
    Bench {
        #[arg(long, value_parser = parse_scheme)]
        scheme: Option<Scheme>,
        #[arg(long, value_parser = parse_level)]
        level: Option<Level>,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
        iters: u32,
    },
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    s.parse().map_err(|e: scabbard::Error| e.to_string())
}

fn parse_level(s: &str) -> Result<Level, String> {
    s.parse().map_err(|e: scabbard::Error| e.to_string())
}

fn parse_hex32(s: &str) -> Result<[u8; 32], String> {
    if s.len() != 64 {
        return Err(format!("expected 64 hex digits, got {}", s.len()));
    }
    let mut out = [0u8; 32];
    hex::decode_to_slice(s, &mut out).map_err(|e| e.to_string())?;
    Ok(out)
}

/// A failure with its exit status: 2 for bad input, 1 for everything else.
struct Failure {
    code: u8,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

fn runtime(msg: impl Into<String>) -> Failure {
    Failure { code: 1, msg: msg.into() }
}

impl From<scabbard::Error> for Failure {
    fn from(e: scabbard::Error) -> Self {
        match e {
            scabbard::Error::Entropy(_) => runtime(e.to_string()),
            _ => usage(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| runtime(format!("{}: {e}", path.display())))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| runtime(format!("{}: {e}", path.display())))
}

fn deterministic_only() -> bool {
    std::env::var(DETERMINISTIC_ENV).is_ok_and(|v| v == "1")
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Keygen { set, pk, sk, seed_a, seed_s, z } => {
            let kem = Kem::new(set.id());
            let kp = match (seed_a, seed_s, z) {
                (Some(a), Some(s), Some(z)) => kem.keygen_deterministic(&a, &s, &z),
                (None, None, None) if !deterministic_only() => kem.keygen()?,
                (None, None, None) => {
                    return Err(usage(format!(
                        "{DETERMINISTIC_ENV}=1 requires --seed-a, --seed-s and --z"
                    )))
                }
                _ => return Err(usage("--seed-a, --seed-s and --z must be given together")),
            };
            write(&pk, kp.public.as_bytes())?;
            write(&sk, kp.secret.as_bytes())?;
        }
        Cmd::Encaps { set, pk, ct, ss, m } => {
            let kem = Kem::new(set.id());
            let public = PublicKey::from_bytes(set.id(), &read(&pk)?)?;
            let (c, k) = match m {
                Some(m) => kem.encaps_deterministic(&public, &m)?,
                None if !deterministic_only() => kem.encaps(&public)?,
                None => return Err(usage(format!("{DETERMINISTIC_ENV}=1 requires --m"))),
            };
            write(&ct, c.as_bytes())?;
            write(&ss, k.as_bytes())?;
        }
        Cmd::Decaps { set, sk, ct, ss } => {
            let kem = Kem::new(set.id());
            let secret = SecretKey::from_bytes(set.id(), &read(&sk)?)?;
            let c = Ciphertext::from_bytes(set.id(), &read(&ct)?)?;
            let k: SharedSecret = kem.decaps(&secret, &c)?;
            write(&ss, k.as_bytes())?;
        }
        Cmd::Kat { set, master_seed, count, out } => {
            let text = kat::generate(set.id(), &master_seed, count).render();
            match out {
                Some(path) => write(&path, text.as_bytes())?,
                None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| runtime(e.to_string()))?,
            }
        }
        Cmd::KatVerify { file, master_seed } => {
            let text = String::from_utf8(read(&file)?).map_err(|_| runtime("KAT file is not UTF-8"))?;
            match kat::verify(&text, master_seed.as_ref()) {
                Ok(n) => println!("{}: {n} records ok", file.display()),
                Err(e) => return Err(runtime(format!("{}: {e}", file.display()))),
            }
        }
        Cmd::Sizes => {
            for id in SchemeId::ALL {
                let p = id.params();
                println!("{} {} {} {} {}", id.scheme, id.level, p.pk_bytes(), p.sk_bytes(), p.ct_bytes());
            }
        }
        Cmd::Bench { scheme, level, iters } => {
            for id in SchemeId::ALL {
                if scheme.is_some_and(|s| s != id.scheme) || level.is_some_and(|l| l != id.level) {
                    continue;
                }
                bench(id, iters)?;
            }
        }
    }
    Ok(())
}

fn median(mut v: Vec<u128>) -> u128 {
    v.sort_unstable();
    v[v.len() / 2]
}

fn bench(id: SchemeId, iters: u32) -> Result<(), Failure> {
    let kem = Kem::new(id);
    let (mut kg, mut en, mut de) = (Vec::new(), Vec::new(), Vec::new());
    for i in 0..iters {
        let seed = [i as u8; 32];
        let t = Instant::now();
        let kp = kem.keygen_deterministic(&seed, &seed, &seed);
        kg.push(t.elapsed().as_nanos());
        let t = Instant::now();
        let (ct, ss) = kem.encaps_deterministic(&kp.public, &seed)?;
        en.push(t.elapsed().as_nanos());
        let t = Instant::now();
        let back = kem.decaps(&kp.secret, &ct)?;
        de.push(t.elapsed().as_nanos());
        if back != ss {
            return Err(runtime(format!("{id}: decapsulation mismatch")));
        }
    }
    for (op, times) in [("keygen", kg), ("encaps", en), ("decaps", de)] {
        println!("{} {} {op} {} ns", id.scheme, id.level, median(times));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("scabbard: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

//! Known-answer test files.
//!
//! Record `i` draws 128 bytes from `SHAKE-128(master_seed || i as u32 LE)`
//! and splits them into `seed_A || seed_s || z || m`. The file is
//!
//! ```text
//! # scabbard-kat v1 <scheme> <level>
//! count = 0
//! seed = <128 bytes>
//! pk = ...
//! sk = ...
//! ct = ...
//! ss = ...
//!
//! count = 1
//! ...
//! ```
//!
//! with all byte strings in uppercase hex.

use std::fmt::{self, Write as _};

use crate::kem::Kem;
use crate::params::{Level, Scheme, SchemeId};
use crate::symmetric::XofStream;

pub const HEADER_PREFIX: &str = "# scabbard-kat v1";

/// Bytes of derived randomness per record.
pub const RECORD_SEED_BYTES: usize = 128;

/// The fields of one record, in file order.
pub const FIELDS: [&str; 6] = ["count", "seed", "pk", "sk", "ct", "ss"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KatRecord {
    pub count: u32,
    pub seed: Vec<u8>,
    pub pk: Vec<u8>,
    pub sk: Vec<u8>,
    pub ct: Vec<u8>,
    pub ss: Vec<u8>,
}

impl KatRecord {
    fn field(&self, name: &str) -> &[u8] {
        match name {
            "seed" => &self.seed,
            "pk" => &self.pk,
            "sk" => &self.sk,
            "ct" => &self.ct,
            "ss" => &self.ss,
            _ => unreachable!("no byte field {name}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KatFile {
    pub id: SchemeId,
    pub records: Vec<KatRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KatError {
    Header(String),
    Malformed { line: usize, reason: String },
    Empty,
    /// Record `record` differs from the regenerated value in `field`.
    Mismatch { record: usize, field: &'static str },
}

impl fmt::Display for KatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KatError::Header(h) => write!(f, "bad header line `{h}`"),
            KatError::Malformed { line, reason } => write!(f, "line {line}: {reason}"),
            KatError::Empty => f.write_str("no records"),
            KatError::Mismatch { record, field } => write!(f, "record {record}: field `{field}` differs"),
        }
    }
}

impl std::error::Error for KatError {}

/// The 128 bytes of randomness for record `index`.
pub fn record_seed(master_seed: &[u8; 32], index: u32) -> [u8; RECORD_SEED_BYTES] {
    let mut out = [0u8; RECORD_SEED_BYTES];
    XofStream::from_parts(&[master_seed, &index.to_le_bytes()]).fill(&mut out);
    out
}

/// Runs keygen and encaps from the 128-byte record seed.
pub fn record_from_seed(id: SchemeId, count: u32, seed: &[u8]) -> KatRecord {
    assert_eq!(seed.len(), RECORD_SEED_BYTES, "record seed length");
    let part = |i: usize| -> [u8; 32] { seed[32 * i..32 * (i + 1)].try_into().expect("32 bytes") };
    let kem = Kem::new(id);
    let kp = kem.keygen_deterministic(&part(0), &part(1), &part(2));
    let (ct, ss) = kem.encaps_deterministic(&kp.public, &part(3)).expect("own public key");
    KatRecord {
        count,
        seed: seed.to_vec(),
        pk: kp.public.as_bytes().to_vec(),
        sk: kp.secret.as_bytes().to_vec(),
        ct: ct.as_bytes().to_vec(),
        ss: ss.as_bytes().to_vec(),
    }
}

pub fn generate(id: SchemeId, master_seed: &[u8; 32], count: u32) -> KatFile {
    KatFile {
        id,
        records: (0..count)
            .map(|i| record_from_seed(id, i, &record_seed(master_seed, i)))
            .collect(),
    }
}

impl KatFile {
    pub fn render(&self) -> String {
        let mut out = format!("{HEADER_PREFIX} {} {}\n", self.id.scheme, self.id.level);
        for r in &self.records {
            writeln!(out, "count = {}", r.count).unwrap();
            for name in &FIELDS[1..] {
                writeln!(out, "{name} = {}", hex::encode_upper(r.field(name))).unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<KatFile, KatError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(KatError::Empty)?;
        let id = parse_header(header)?;

        let mut records = Vec::new();
        let mut pending: Vec<(&str, &str)> = Vec::new();
        let mut start = 0;
        let mut flush = |pending: &mut Vec<(&str, &str)>, start: usize| -> Result<(), KatError> {
            if !pending.is_empty() {
                records.push(parse_record(pending, start)?);
                pending.clear();
            }
            Ok(())
        };
        for (i, line) in lines {
            let lineno = i + 1;
            if line.is_empty() {
                flush(&mut pending, start)?;
                continue;
            }
            let (k, v) = line.split_once(" = ").ok_or_else(|| KatError::Malformed {
                line: lineno,
                reason: "expected `name = value`".into(),
            })?;
            if pending.is_empty() {
                start = lineno;
            }
            pending.push((k, v));
        }
        flush(&mut pending, start)?;
        if records.is_empty() {
            return Err(KatError::Empty);
        }
        Ok(KatFile { id, records })
    }
}

fn parse_header(line: &str) -> Result<SchemeId, KatError> {
    let bad = || KatError::Header(line.to_string());
    let rest = line.strip_prefix(HEADER_PREFIX).ok_or_else(bad)?;
    let mut words = rest.split_whitespace();
    let scheme: Scheme = words.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let level: Level = words.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if words.next().is_some() {
        return Err(bad());
    }
    Ok(SchemeId::new(scheme, level))
}

fn parse_record(fields: &[(&str, &str)], start: usize) -> Result<KatRecord, KatError> {
    let malformed = |offset: usize, reason: String| KatError::Malformed { line: start + offset, reason };
    if fields.len() != FIELDS.len() {
        return Err(malformed(0, format!("record has {} fields, expected {}", fields.len(), FIELDS.len())));
    }
    let mut bytes: Vec<Vec<u8>> = Vec::new();
    let mut count = 0;
    for (offset, (&(k, v), want)) in fields.iter().zip(FIELDS).enumerate() {
        if k != want {
            return Err(malformed(offset, format!("expected field `{want}`, found `{k}`")));
        }
        if k == "count" {
            count = v.parse().map_err(|_| malformed(offset, format!("bad count `{v}`")))?;
            continue;
        }
        if v.bytes().any(|c| c.is_ascii_lowercase()) {
            return Err(malformed(offset, format!("field `{k}` is not uppercase hex")));
        }
        bytes.push(hex::decode(v).map_err(|e| malformed(offset, format!("field `{k}`: {e}")))?);
    }
    let mut it = bytes.into_iter();
    let mut next = || it.next().expect("five byte fields");
    Ok(KatRecord {
        count,
        seed: next(),
        pk: next(),
        sk: next(),
        ct: next(),
        ss: next(),
    })
}

/// Checks a KAT file and returns the number of records.
///
/// With `master_seed`, every record is regenerated from scratch and the seed
/// field is checked too. Without it, each record is regenerated from its own
/// seed field.
pub fn verify(text: &str, master_seed: Option<&[u8; 32]>) -> Result<usize, KatError> {
    let file = KatFile::parse(text)?;
    for (i, got) in file.records.iter().enumerate() {
        if got.count as usize != i {
            return Err(KatError::Mismatch { record: i, field: "count" });
        }
        let seed = match master_seed {
            Some(ms) => record_seed(ms, i as u32).to_vec(),
            None if got.seed.len() == RECORD_SEED_BYTES => got.seed.clone(),
            None => return Err(KatError::Mismatch { record: i, field: "seed" }),
        };
        let want = record_from_seed(file.id, i as u32, &seed);
        for &name in &FIELDS[1..] {
            if got.field(name) != want.field(name) {
                return Err(KatError::Mismatch { record: i, field: name });
            }
        }
    }
    Ok(file.records.len())
}

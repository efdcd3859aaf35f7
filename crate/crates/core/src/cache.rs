//! On-disk cache of shuffle bases, one versioned JSON file per `(D, N)`.
//!
//! Files carry a SHA-256 checksum of their payload. Anything that fails to
//! parse or validate is treated as absent: the caller recomputes and
//! overwrites it.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::basis::{Row, ShuffleBasis};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::word::Word;

pub const FORMAT: &str = "monodromy-shuffle-basis";
pub const VERSION: u32 = 1;
/// Environment variable naming the cache root.
pub const CACHE_ENV: &str = "MONODROMY_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Reduction {
    word: Word,
    row: Vec<(Word, Rational)>,
}

#[derive(Serialize, Deserialize)]
struct Payload {
    format: String,
    version: u32,
    dim: usize,
    rank: usize,
    basis: Vec<Word>,
    reductions: Vec<Reduction>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    #[serde(flatten)]
    payload: Payload,
    checksum: String,
}

fn checksum(p: &Payload) -> String {
    let bytes = serde_json::to_vec(p).expect("payload serializes");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn cache_path(dir: &Path, dim: usize, rank: usize) -> PathBuf {
    dir.join(format!("basis-d{dim}-n{rank}-v{VERSION}.json"))
}

/// Writes `basis` to its cache file atomically.
pub fn store(dir: &Path, basis: &ShuffleBasis) -> Result<()> {
    fs::create_dir_all(dir)?;
    let payload = Payload {
        format: FORMAT.to_string(),
        version: VERSION,
        dim: basis.dim(),
        rank: basis.rank(),
        basis: basis.basis_words().to_vec(),
        reductions: basis
            .rows_sorted()
            .into_iter()
            .map(|(word, row)| Reduction { word, row: row.to_vec() })
            .collect(),
    };
    let checksum = checksum(&payload);
    let file = CacheFile { payload, checksum };
    let path = cache_path(dir, basis.dim(), basis.rank());
    let tmp = tempfile::NamedTempFile::new_in(dir)?;
    let mut w = std::io::BufWriter::new(tmp);
    serde_json::to_writer(&mut w, &file).map_err(|e| Error::Cache(e.to_string()))?;
    w.flush()?;
    let tmp = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    tmp.persist(&path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Loads and validates a cached basis. Returns `Ok(None)` when no file exists
/// and `Err(Error::Cache)` when a file exists but is unusable.
pub fn load(dir: &Path, dim: usize, rank: usize) -> Result<Option<ShuffleBasis>> {
    let path = cache_path(dir, dim, rank);
    let bytes = match fs::read(&path) {
        Ok(b) => b,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let bad = |msg: &str| Error::Cache(format!("{}: {msg}", path.display()));
    let file: CacheFile = serde_json::from_slice(&bytes).map_err(|e| bad(&e.to_string()))?;
    let p = &file.payload;
    if p.format != FORMAT || p.version != VERSION || p.dim != dim || p.rank != rank {
        return Err(bad("header mismatch"));
    }
    if checksum(p) != file.checksum {
        return Err(bad("checksum mismatch"));
    }
    if p.basis.len() as u64 != crate::word::necklace_count(rank, dim) {
        return Err(bad("basis size differs from the necklace count"));
    }
    let total = p.basis.len() + p.reductions.len();
    if total != dim.pow(rank as u32) {
        return Err(bad("table does not cover every word"));
    }
    let basis_set: rustc_hash::FxHashSet<Word> = p.basis.iter().copied().collect();
    let in_range = |w: &Word| w.len() == rank && w.letters().all(|l| (l as usize) < dim);
    for r in &p.reductions {
        if !in_range(&r.word) || basis_set.contains(&r.word) {
            return Err(bad("malformed reduction word"));
        }
        if r.row.iter().any(|(b, c)| !basis_set.contains(b) || c.is_zero()) {
            return Err(bad("reduction row leaves the basis"));
        }
    }
    if !p.basis.iter().all(in_range) {
        return Err(bad("malformed basis word"));
    }
    let CacheFile { payload, .. } = file;
    let rows: Vec<(Word, Row)> = payload.reductions.into_iter().map(|r| (r.word, r.row.into_boxed_slice())).collect();
    Ok(Some(ShuffleBasis::from_parts(rank, dim, payload.basis, rows)))
}

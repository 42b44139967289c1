use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::hecke::io::{read_arith_csv, read_tau_csv, write_arith_csv, write_tau_csv};
use crate::hecke::{HeckeTables, TauBuildOptions, DISCRIMINANT_WEIGHT};

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "HECKEPS_CACHE";
pub const MANIFEST_FILE: &str = "manifest.json";
pub const TAU_FILE: &str = "tau.csv";
pub const ARITH_FILE: &str = "arith.csv";
pub const TABLE_KIND: &str = "discriminant tau/lambda + von Mangoldt/Moebius/divisor";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheManifest {
    pub kind: String,
    pub weight: u32,
    pub limit: u64,
    pub tau_sha256: String,
    pub arith_sha256: String,
    /// Seconds since the Unix epoch.
    pub built_at: u64,
}

/// How [`load_or_build`] obtained its tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheOutcome {
    Loaded,
    /// No usable cache existed.
    Built,
    /// A cache existed but was too small, unreadable or failed its hashes.
    Rebuilt,
}

pub fn default_cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

fn sha256_file(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

fn write_atomically(path: &Path, body: impl FnOnce(&mut BufWriter<File>) -> Result<()>) -> Result<()> {
    let tmp = path.with_extension("partial");
    let result = (|| {
        let file = File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
        let mut w = BufWriter::new(file);
        body(&mut w)?;
        w.flush().map_err(|e| Error::io(&tmp, e))?;
        fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

/// Writes the tables as `tau.csv` / `arith.csv` under `dir` with a manifest
/// of their hashes.
pub fn store_tables(tables: &HeckeTables, dir: &Path) -> Result<CacheManifest> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    // Drop the old manifest first so a crash mid-write never leaves a
    // manifest describing files it did not hash.
    let manifest_path = dir.join(MANIFEST_FILE);
    if manifest_path.exists() {
        fs::remove_file(&manifest_path).map_err(|e| Error::io(&manifest_path, e))?;
    }
    let tau_path = dir.join(TAU_FILE);
    let arith_path = dir.join(ARITH_FILE);
    write_atomically(&tau_path, |w| write_tau_csv(&tables.tau, w))?;
    write_atomically(&arith_path, |w| write_arith_csv(&tables.arith, w))?;
    let manifest = CacheManifest {
        kind: TABLE_KIND.to_string(),
        weight: tables.tau.weight(),
        limit: tables.limit(),
        tau_sha256: sha256_file(&tau_path)?,
        arith_sha256: sha256_file(&arith_path)?,
        built_at: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
    };
    write_atomically(&manifest_path, |w| Ok(serde_json::to_writer_pretty(w, &manifest)?))?;
    Ok(manifest)
}

/// Builds tables of size `limit`, persists them under `dir` and returns the
/// manifest.
pub fn cache_tables(limit: u64, dir: &Path) -> Result<CacheManifest> {
    let tables = HeckeTables::build(limit)?;
    store_tables(&tables, dir)
}

pub fn read_manifest(dir: &Path) -> Result<CacheManifest> {
    let path = dir.join(MANIFEST_FILE);
    let file = File::open(&path).map_err(|e| Error::io(&path, e))?;
    Ok(serde_json::from_reader(BufReader::new(file))?)
}

/// Loads the cached tables after verifying both hashes against the manifest.
pub fn load_tables(dir: &Path) -> Result<(HeckeTables, CacheManifest)> {
    let manifest = read_manifest(dir)?;
    if manifest.kind != TABLE_KIND {
        return Err(Error::Cache(format!("cache kind `{}` is not `{TABLE_KIND}`", manifest.kind)));
    }
    let tau_path = dir.join(TAU_FILE);
    let arith_path = dir.join(ARITH_FILE);
    for (path, expected) in [(&tau_path, &manifest.tau_sha256), (&arith_path, &manifest.arith_sha256)] {
        let actual = sha256_file(path)?;
        if &actual != expected {
            return Err(Error::Cache(format!("{}: hash {actual} does not match manifest {expected}", path.display())));
        }
    }
    let open = |p: &Path| File::open(p).map(BufReader::new).map_err(|e| Error::io(p, e));
    let tau = read_tau_csv(open(&tau_path)?, manifest.weight)?;
    let arith = read_arith_csv(open(&arith_path)?)?;
    let tables = HeckeTables { tau, arith };
    if tables.limit() != manifest.limit {
        return Err(Error::Cache(format!("cache holds {} entries, manifest says {}", tables.limit(), manifest.limit)));
    }
    Ok((tables, manifest))
}

/// Cached tables covering `limit`, rebuilding when the cache is missing,
/// corrupt or too small. A larger cache is truncated on load.
pub fn load_or_build(limit: u64, dir: &Path, options: TauBuildOptions) -> Result<(HeckeTables, CacheOutcome)> {
    let existed = dir.join(MANIFEST_FILE).exists();
    if existed {
        if let Ok((tables, manifest)) = load_tables(dir) {
            if manifest.limit >= limit && manifest.weight == DISCRIMINANT_WEIGHT {
                return Ok((truncate(tables, limit)?, CacheOutcome::Loaded));
            }
        }
    }
    let tables = HeckeTables::build_with(limit, options)?;
    store_tables(&tables, dir)?;
    Ok((tables, if existed { CacheOutcome::Rebuilt } else { CacheOutcome::Built }))
}

fn truncate(tables: HeckeTables, limit: u64) -> Result<HeckeTables> {
    if tables.limit() == limit {
        return Ok(tables);
    }
    Ok(HeckeTables { tau: tables.tau.truncated(limit)?, arith: crate::hecke::build_arithmetic_tables(limit)? })
}

//! Content-addressed store for multiplication tables.
//!
//! Layout: `<dir>/manifest.json` plus one `<sha256>.json` per entry. The
//! entry key hashes the request together with the code version, so a new
//! release never reads tables written by an older one.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use iqschur::tables::{TableBasis, TableRoute};

pub const MANIFEST_VERSION: u32 = 1;
pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const CACHE_DIR_ENV: &str = "IQSCHUR_CACHE_DIR";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache io at {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("manifest at {path} is unreadable: {source}")]
    Manifest { path: PathBuf, source: serde_json::Error },
    #[error("manifest version {found} is not supported (expected {MANIFEST_VERSION})")]
    Version { found: u32 },
}

type Result<T> = std::result::Result<T, CacheError>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableKey {
    pub n: usize,
    pub r: usize,
    pub basis: TableBasis,
    pub route: TableRoute,
}

impl TableKey {
    /// Stable textual form; hashed together with the code version.
    fn canonical(&self) -> String {
        let basis = match self.basis {
            TableBasis::Normalized => "normalized",
            TableBasis::Standard => "standard",
        };
        let route = match self.route {
            TableRoute::Formula => "formula",
            TableRoute::Oracle => "oracle",
        };
        format!("table;n={};r={};basis={basis};route={route};code={CODE_VERSION}", self.n, self.r)
    }

    pub fn id(&self) -> String {
        hex::encode(Sha256::digest(self.canonical().as_bytes()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub key: TableKey,
    pub code_version: String,
    pub file: String,
    pub size: u64,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: u32,
    /// Keyed by entry id so the file is written in a fixed order.
    pub entries: BTreeMap<String, ManifestEntry>,
}

impl Default for Manifest {
    fn default() -> Self {
        Self { version: MANIFEST_VERSION, entries: BTreeMap::new() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Lookup {
    Hit,
    Miss,
    /// An entry existed but its bytes no longer match the manifest.
    Invalidated,
}

pub struct Cache {
    dir: PathBuf,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CacheError + '_ {
    move |source| CacheError::Io { path: path.to_path_buf(), source }
}

fn sha_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(io_err(&dir))?;
        Ok(Self { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn manifest_path(&self) -> PathBuf {
        self.dir.join("manifest.json")
    }

    pub fn manifest(&self) -> Result<Manifest> {
        let path = self.manifest_path();
        if !path.exists() {
            return Ok(Manifest::default());
        }
        let bytes = fs::read(&path).map_err(io_err(&path))?;
        let m: Manifest = serde_json::from_slice(&bytes).map_err(|source| CacheError::Manifest { path, source })?;
        if m.version != MANIFEST_VERSION {
            return Err(CacheError::Version { found: m.version });
        }
        Ok(m)
    }

    /// Writes through a temporary file so a crash never leaves a torn manifest.
    fn write_atomic(&self, path: &Path, bytes: &[u8]) -> Result<()> {
        let tmp = path.with_extension("tmp");
        let mut f = fs::File::create(&tmp).map_err(io_err(&tmp))?;
        f.write_all(bytes).map_err(io_err(&tmp))?;
        f.sync_all().map_err(io_err(&tmp))?;
        fs::rename(&tmp, path).map_err(io_err(path))
    }

    fn save_manifest(&self, m: &Manifest) -> Result<()> {
        let mut bytes = serde_json::to_vec_pretty(m).expect("manifest serializes");
        bytes.push(b'\n');
        self.write_atomic(&self.manifest_path(), &bytes)
    }

    /// The stored bytes for `key`, verified against the manifest. A size or
    /// hash mismatch drops the entry.
    pub fn get(&self, key: &TableKey) -> Result<(Lookup, Option<Vec<u8>>)> {
        let mut m = self.manifest()?;
        let id = key.id();
        let Some(entry) = m.entries.get(&id).cloned() else {
            return Ok((Lookup::Miss, None));
        };
        let path = self.dir.join(&entry.file);
        let bytes = fs::read(&path).ok();
        match bytes {
            Some(b) if b.len() as u64 == entry.size && sha_hex(&b) == entry.sha256 => Ok((Lookup::Hit, Some(b))),
            _ => {
                m.entries.remove(&id);
                let _ = fs::remove_file(&path);
                self.save_manifest(&m)?;
                Ok((Lookup::Invalidated, None))
            }
        }
    }

    pub fn put(&self, key: &TableKey, bytes: &[u8]) -> Result<ManifestEntry> {
        let id = key.id();
        let file = format!("{id}.json");
        self.write_atomic(&self.dir.join(&file), bytes)?;
        let entry = ManifestEntry {
            key: key.clone(),
            code_version: CODE_VERSION.to_string(),
            file,
            size: bytes.len() as u64,
            sha256: sha_hex(bytes),
        };
        let mut m = self.manifest()?;
        m.entries.insert(id, entry.clone());
        self.save_manifest(&m)?;
        Ok(entry)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key() -> TableKey {
        TableKey { n: 1, r: 1, basis: TableBasis::Normalized, route: TableRoute::Oracle }
    }

    #[test]
    fn round_trip_and_invalidation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        assert_eq!(cache.get(&key()).unwrap().0, Lookup::Miss);
        let entry = cache.put(&key(), b"{}\n").unwrap();
        assert_eq!(entry.size, 3);
        let (hit, bytes) = cache.get(&key()).unwrap();
        assert_eq!(hit, Lookup::Hit);
        assert_eq!(bytes.unwrap(), b"{}\n");

        fs::write(dir.path().join(&entry.file), b"{ }\n").unwrap();
        assert_eq!(cache.get(&key()).unwrap().0, Lookup::Invalidated);
        assert!(cache.manifest().unwrap().entries.is_empty());
    }

    #[test]
    fn ids_separate_requests() {
        let mut other = key();
        other.basis = TableBasis::Standard;
        assert_ne!(key().id(), other.id());
        assert_eq!(key().id().len(), 64);
    }
}

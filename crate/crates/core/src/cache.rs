//! On-disk cache of expensive exact results.
//!
//! One JSON file per (object kind, presentation hash, degree). Every file
//! carries a format version and a SHA-256 checksum of its payload; a file
//! that fails either check is ignored and recomputed.

use std::path::{Path, PathBuf};
use std::sync::{Mutex, OnceLock};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "ZETALIE_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Envelope {
    format_version: u32,
    kind: String,
    presentation: String,
    degree: usize,
    checksum: String,
    payload: String,
}

fn sha256_hex(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

/// Short hash identifying the presentation an object was computed from.
pub fn presentation_hash(descriptor: &str) -> String {
    sha256_hex(descriptor)[..16].to_string()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskCache {
    dir: PathBuf,
}

/// Outcome of a cache lookup.
#[derive(Debug)]
pub enum Lookup<T> {
    Hit(T),
    Miss,
    /// present but unreadable, stale or corrupt
    Rejected(String),
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        DiskCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, kind: &str, presentation: &str, degree: usize) -> PathBuf {
        self.dir.join(format!("{kind}-{}-{degree}.json", presentation_hash(presentation)))
    }

    pub fn load<T: DeserializeOwned>(&self, kind: &str, presentation: &str, degree: usize) -> Lookup<T> {
        let path = self.path(kind, presentation, degree);
        let Ok(text) = std::fs::read_to_string(&path) else {
            return Lookup::Miss;
        };
        let env: Envelope = match serde_json::from_str(&text) {
            Ok(e) => e,
            Err(e) => return Lookup::Rejected(format!("{}: {e}", path.display())),
        };
        if env.format_version != FORMAT_VERSION {
            return Lookup::Rejected(format!("{}: format version {}", path.display(), env.format_version));
        }
        if env.kind != kind || env.presentation != presentation || env.degree != degree {
            return Lookup::Rejected(format!("{}: key mismatch", path.display()));
        }
        if sha256_hex(&env.payload) != env.checksum {
            return Lookup::Rejected(format!("{}: checksum mismatch", path.display()));
        }
        match serde_json::from_str(&env.payload) {
            Ok(v) => Lookup::Hit(v),
            Err(e) => Lookup::Rejected(format!("{}: {e}", path.display())),
        }
    }

    /// Writes atomically through a temporary file.
    pub fn store<T: Serialize>(&self, kind: &str, presentation: &str, degree: usize, value: &T) -> Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let payload = serde_json::to_string(value)?;
        let env = Envelope {
            format_version: FORMAT_VERSION,
            kind: kind.to_string(),
            presentation: presentation.to_string(),
            degree,
            checksum: sha256_hex(&payload),
            payload,
        };
        let path = self.path(kind, presentation, degree);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        std::fs::write(&tmp, serde_json::to_string_pretty(&env)?)?;
        std::fs::rename(&tmp, &path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))
    }

    /// Loads a cached value or computes and stores it. Rejected files are
    /// reported on stderr and overwritten.
    pub fn get_or_compute<T, F>(&self, kind: &str, presentation: &str, degree: usize, compute: F) -> Result<T>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T>,
    {
        match self.load(kind, presentation, degree) {
            Lookup::Hit(v) => return Ok(v),
            Lookup::Rejected(why) => eprintln!("cache: recomputing, {why}"),
            Lookup::Miss => {}
        }
        let v = compute()?;
        if let Err(e) = self.store(kind, presentation, degree, &v) {
            eprintln!("cache: could not write: {e}");
        }
        Ok(v)
    }
}

fn global() -> &'static Mutex<Option<DiskCache>> {
    static CACHE: OnceLock<Mutex<Option<DiskCache>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(std::env::var_os(CACHE_ENV).filter(|s| !s.is_empty()).map(DiskCache::new)))
}

/// Process-wide cache, initialized from [`CACHE_ENV`].
pub fn current() -> Option<DiskCache> {
    global().lock().unwrap_or_else(|e| e.into_inner()).clone()
}

/// Replaces the process-wide cache; `None` disables it.
pub fn set_current(cache: Option<DiskCache>) {
    *global().lock().unwrap_or_else(|e| e.into_inner()) = cache;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scratch_dir(tag: &str) -> PathBuf {
        let d = std::env::temp_dir().join(format!("zetalie-cache-{tag}-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&d);
        d
    }

    #[test]
    fn round_trip_and_corruption() {
        let c = DiskCache::new(scratch_dir("rt"));
        let v = vec!["1/2".to_string(), "-3".to_string()];
        c.store("demo", "p", 3, &v).unwrap();
        assert!(matches!(c.load::<Vec<String>>("demo", "p", 3), Lookup::Hit(ref x) if *x == v));
        assert!(matches!(c.load::<Vec<String>>("demo", "p", 4), Lookup::Miss));
        let path = c.path("demo", "p", 3);
        let text = std::fs::read_to_string(&path).unwrap().replace("1/2", "1/3");
        std::fs::write(&path, text).unwrap();
        assert!(matches!(c.load::<Vec<String>>("demo", "p", 3), Lookup::Rejected(_)));
        let mut calls = 0;
        let got: Vec<String> = c
            .get_or_compute("demo", "p", 3, || {
                calls += 1;
                Ok(v.clone())
            })
            .unwrap();
        assert_eq!((got, calls), (v.clone(), 1));
        assert!(matches!(c.load::<Vec<String>>("demo", "p", 3), Lookup::Hit(_)));
        let _ = std::fs::remove_dir_all(c.dir());
    }

    #[test]
    fn garbage_is_rejected() {
        let c = DiskCache::new(scratch_dir("junk"));
        std::fs::create_dir_all(c.dir()).unwrap();
        std::fs::write(c.path("demo", "p", 1), "{not json").unwrap();
        assert!(matches!(c.load::<u32>("demo", "p", 1), Lookup::Rejected(_)));
        let _ = std::fs::remove_dir_all(c.dir());
    }
}

//! On-disk cache for deduction results.
//!
//! Entries are keyed by a SHA-256 digest of the crate version and the query,
//! so results from another version are never read back. Values are stored as
//! the exact bytes printed, which makes a warm run byte-identical to a cold
//! one.

use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

pub const ENV_DIR: &str = "EQUICOH_CACHE_DIR";

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$EQUICOH_CACHE_DIR`, else `$XDG_CACHE_HOME/equicoh`, else
    /// `$HOME/.cache/equicoh`.
    pub fn from_env() -> Option<Self> {
        let var = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty());
        if let Some(d) = var(ENV_DIR) {
            return Some(Cache::at(d));
        }
        if let Some(d) = var("XDG_CACHE_HOME") {
            return Some(Cache::at(Path::new(&d).join("equicoh")));
        }
        var("HOME").map(|h| Cache::at(Path::new(&h).join(".cache").join("equicoh")))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(kind: &str, params: &str) -> String {
        let mut h = Sha256::new();
        h.update(env!("CARGO_PKG_VERSION").as_bytes());
        h.update([0]);
        h.update(kind.as_bytes());
        h.update([0]);
        h.update(params.as_bytes());
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<Vec<u8>> {
        std::fs::read(self.path(key)).ok()
    }

    /// Writes to a temporary file in the cache directory and renames it into
    /// place, so readers see either nothing or the whole entry.
    pub fn put(&self, key: &str, bytes: &[u8]) -> std::io::Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(bytes)?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_key_separation() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::at(dir.path().join("nested"));
        let k = Cache::key("deduce", "2 4 2");
        assert_eq!(k.len(), 64);
        assert_ne!(k, Cache::key("deduce", "2 4 1"));
        assert_ne!(k, Cache::key("other", "2 4 2"));
        assert_eq!(c.get(&k), None);
        c.put(&k, b"{\"x\":1}\n").unwrap();
        assert_eq!(c.get(&k).unwrap(), b"{\"x\":1}\n");
        c.put(&k, b"y").unwrap();
        assert_eq!(c.get(&k).unwrap(), b"y");
        let leftovers = std::fs::read_dir(c.dir()).unwrap().count();
        assert_eq!(leftovers, 1);
    }
}

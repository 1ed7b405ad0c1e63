//! Persistent content-addressed cache.
//!
//! Each entry is a text file named by the SHA-256 of its key. The first line
//! is `frobforge-cache/1 <sha256 of body>`; the body is compact JSON. A
//! missing, truncated or tampered entry is discarded with a warning and the
//! value is recomputed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::Value;
use sha2::{Digest, Sha256};

const HEADER: &str = "frobforge-cache/1";

fn sha256_hex(data: &[u8]) -> String {
    format!("{:x}", Sha256::digest(data))
}

/// Hash of the key parts, separated so that `["ab","c"]` and `["a","bc"]` differ.
pub fn cache_key(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    h.update(HEADER.as_bytes());
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p.as_bytes());
    }
    format!("{:x}", h.finalize())
}

#[derive(Clone, Debug)]
pub struct DiskCache {
    dir: PathBuf,
}

impl DiskCache {
    pub fn open(dir: &Path) -> std::io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(DiskCache { dir: dir.to_path_buf() })
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(&key[..2]).join(format!("{key}.json"))
    }

    /// The stored value, or `None` on a miss or a corrupt entry.
    pub fn load(&self, key: &str) -> Option<Value> {
        let path = self.path_for(key);
        let text = fs::read_to_string(&path).ok()?;
        match decode(&text) {
            Ok(v) => Some(v),
            Err(reason) => {
                eprintln!("warning: discarding corrupt cache entry {}: {reason}", path.display());
                let _ = fs::remove_file(&path);
                None
            }
        }
    }

    /// Writes atomically through a temporary file; failures only warn.
    pub fn store(&self, key: &str, value: &Value) {
        let path = self.path_for(key);
        let body = serde_json::to_string(value).expect("JSON values serialize");
        let text = format!("{HEADER} {}\n{body}", sha256_hex(body.as_bytes()));
        let write = || -> std::io::Result<()> {
            fs::create_dir_all(path.parent().expect("entry has a parent"))?;
            let tmp = path.with_extension(format!("tmp{}", std::process::id()));
            fs::File::create(&tmp)?.write_all(text.as_bytes())?;
            fs::rename(&tmp, &path)
        };
        if let Err(e) = write() {
            eprintln!("warning: could not write cache entry {}: {e}", path.display());
        }
    }

    /// Loads `key` or computes, stores and returns the value.
    pub fn get_or_compute<E>(&self, key: &str, f: impl FnOnce() -> Result<Value, E>) -> Result<Value, E> {
        if let Some(v) = self.load(key) {
            return Ok(v);
        }
        let v = f()?;
        self.store(key, &v);
        Ok(v)
    }
}

fn decode(text: &str) -> Result<Value, String> {
    let (head, body) = text.split_once('\n').ok_or("missing header")?;
    let digest = head.strip_prefix(HEADER).map(str::trim).ok_or("unknown header")?;
    if sha256_hex(body.as_bytes()) != digest {
        return Err("checksum mismatch".into());
    }
    serde_json::from_str(body).map_err(|e| e.to_string())
}

/// Uses the cache when present, otherwise computes directly.
pub fn cached<E>(cache: Option<&DiskCache>, key: &str, f: impl FnOnce() -> Result<Value, E>) -> Result<Value, E> {
    match cache {
        Some(c) => c.get_or_compute(key, f),
        None => f(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn hit_is_identical_and_corruption_recovers() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::open(dir.path()).unwrap();
        let key = cache_key(&["gb", "p=2"]);
        let v = json!({"basis": ["x^2"], "n": 3});
        let first = cache.get_or_compute::<()>(&key, || Ok(v.clone())).unwrap();
        let second = cache.get_or_compute::<()>(&key, || panic!("should hit")).unwrap();
        assert_eq!(serde_json::to_string(&first).unwrap(), serde_json::to_string(&second).unwrap());

        let path = cache.path_for(&key);
        let text = fs::read_to_string(&path).unwrap().replace("x^2", "x^3");
        fs::write(&path, text).unwrap();
        assert_eq!(cache.load(&key), None);
        assert!(!path.exists());
        assert_eq!(cache.get_or_compute::<()>(&key, || Ok(v.clone())).unwrap(), v);
    }

    #[test]
    fn key_parts_are_separated() {
        assert_ne!(cache_key(&["ab", "c"]), cache_key(&["a", "bc"]));
    }
}

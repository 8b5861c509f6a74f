//! On-disk JSON cache for cohomology results and claim reports.
//!
//! Location: explicit directory, else `$MODLIE_CACHE`, else
//! `$XDG_CACHE_HOME/modlie`, else `$HOME/.cache/modlie`.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{Cochain, CochainDoc, Cohomology, ComplexSlice, Module, SliceSpec};
use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;

pub const ENV_VAR: &str = "MODLIE_CACHE";

/// Part of every cohomology key; changing the coordinate order invalidates entries.
pub const TUPLE_ORDER: &str = "lex-increasing-v1";

#[derive(Debug)]
pub struct Cache {
    dir: PathBuf,
    write_lock: Mutex<()>,
}

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    key: String,
    value: T,
}

/// One listed entry: file stem and the human-readable key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Listing {
    pub id: String,
    pub key: String,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into(), write_lock: Mutex::new(()) }
    }

    pub fn default_dir() -> Option<PathBuf> {
        if let Some(d) = std::env::var_os(ENV_VAR).filter(|d| !d.is_empty()) {
            return Some(PathBuf::from(d));
        }
        if let Some(d) = std::env::var_os("XDG_CACHE_HOME").filter(|d| !d.is_empty()) {
            return Some(PathBuf::from(d).join("modlie"));
        }
        std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("modlie"))
    }

    /// `dir` if given, otherwise the default location.
    pub fn open(dir: Option<&Path>) -> Result<Self> {
        match dir.map(Path::to_path_buf).or_else(Self::default_dir) {
            Some(d) => Ok(Cache::new(d)),
            None => Err(Error::Precondition(format!("no cache directory; pass --cache-dir or set {ENV_VAR}"))),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, key: &str) -> PathBuf {
        let id = hex(&Sha256::digest(key.as_bytes()));
        self.dir.join(format!("{id}.json"))
    }

    /// Looks up `key`. An unreadable or mismatched entry is removed with a
    /// warning and reported as a miss.
    pub fn get<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let path = self.path_for(key);
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<Envelope<T>>(&text) {
            Ok(e) if e.key == key => Some(e.value),
            Ok(_) => {
                log::warn!("cache entry {} has a mismatched key; discarding", path.display());
                let _ = fs::remove_file(&path);
                None
            }
            Err(err) => {
                log::warn!("corrupt cache entry {} ({err}); discarding", path.display());
                let _ = fs::remove_file(&path);
                None
            }
        }
    }

    pub fn put<T: Serialize>(&self, key: &str, value: &T) -> Result<()> {
        let _guard = self.write_lock.lock().unwrap_or_else(|e| e.into_inner());
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(key);
        let tmp = path.with_extension("json.tmp");
        let text = serde_json::to_string(&Envelope { key: key.to_string(), value })?;
        fs::write(&tmp, text)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    pub fn list(&self) -> Result<Vec<Listing>> {
        let mut out = Vec::new();
        let entries = match fs::read_dir(&self.dir) {
            Ok(e) => e,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(out),
            Err(e) => return Err(e.into()),
        };
        for entry in entries {
            let path = entry?.path();
            if path.extension().and_then(|e| e.to_str()) != Some("json") {
                continue;
            }
            let id = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
            let key = fs::read_to_string(&path)
                .ok()
                .and_then(|t| serde_json::from_str::<Envelope<serde_json::Value>>(&t).ok())
                .map_or_else(|| "<corrupt>".to_string(), |e| e.key);
            out.push(Listing { id, key });
        }
        out.sort_by(|a, b| a.key.cmp(&b.key));
        Ok(out)
    }

    /// Removes all entries; returns how many were removed.
    pub fn clear(&self) -> Result<usize> {
        let _guard = self.write_lock.lock().unwrap_or_else(|e| e.into_inner());
        let mut n = 0;
        let entries = match fs::read_dir(&self.dir) {
            Ok(e) => e,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(e.into()),
        };
        for entry in entries {
            let path = entry?.path();
            let ext = path.extension().and_then(|e| e.to_str());
            if matches!(ext, Some("json") | Some("tmp")) {
                fs::remove_file(&path)?;
                n += 1;
            }
        }
        Ok(n)
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// SHA-256 of the algebra's JSON serialization.
pub fn algebra_hash(l: &LieAlgebra) -> String {
    hex(&Sha256::digest(l.to_json().as_bytes()))
}

pub fn cohomology_key(l: &LieAlgebra, module: Module, n: usize, spec: SliceSpec) -> String {
    format!("cohomology/{}/{module}/n={n}/{}/{TUPLE_ORDER}", algebra_hash(l), spec.describe())
}

#[derive(Serialize, Deserialize)]
struct StoredCohomology {
    dim: usize,
    cochain_dim: usize,
    cocycle_dim: usize,
    coboundary_dim: usize,
    representatives: Vec<CochainDoc>,
}

/// Cohomology of a slice, served from `cache` when present. The flag is true
/// on a cache hit.
pub fn cached_cohomology(cache: Option<&Cache>, slice: &ComplexSlice<'_>, n: usize, budget: u64) -> Result<(Cohomology, bool)> {
    let l = slice.algebra();
    let key = cohomology_key(l, slice.module(), n, slice.spec());
    if let Some(c) = cache {
        if let Some(s) = c.get::<StoredCohomology>(&key) {
            let reps: Result<Vec<Cochain>> = s.representatives.iter().map(|d| Cochain::from_doc(l, d)).collect();
            match reps {
                Ok(representatives) => {
                    return Ok((
                        Cohomology {
                            degree: n,
                            module: slice.module(),
                            spec: slice.spec(),
                            dim: s.dim,
                            cochain_dim: s.cochain_dim,
                            cocycle_dim: s.cocycle_dim,
                            coboundary_dim: s.coboundary_dim,
                            representatives,
                        },
                        true,
                    ))
                }
                Err(e) => log::warn!("cache entry for {key} does not fit the algebra ({e}); recomputing"),
            }
        }
    }
    let h = slice.cohomology(n, budget)?;
    if let Some(c) = cache {
        let stored = StoredCohomology {
            dim: h.dim,
            cochain_dim: h.cochain_dim,
            cocycle_dim: h.cocycle_dim,
            coboundary_dim: h.coboundary_dim,
            representatives: h.representatives.iter().map(Cochain::to_doc).collect(),
        };
        if let Err(e) = c.put(&key, &stored) {
            log::warn!("could not write cache entry: {e}");
        }
    }
    Ok((h, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Fp;
    use crate::ceco::DEFAULT_NNZ_BUDGET;
    use crate::liealg::make_w1;

    #[test]
    fn hit_after_miss_and_corruption_recovery() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let f = Fp::new(5).unwrap();
        let w = make_w1(1, &f).unwrap();
        let slice = ComplexSlice::new(&w, Module::Adjoint, SliceSpec::weight(0)).unwrap();
        let (a, hit) = cached_cohomology(Some(&cache), &slice, 2, DEFAULT_NNZ_BUDGET).unwrap();
        assert!(!hit);
        let (b, hit) = cached_cohomology(Some(&cache), &slice, 2, DEFAULT_NNZ_BUDGET).unwrap();
        assert!(hit);
        assert_eq!(a.dim, b.dim);
        assert_eq!(a.representatives, b.representatives);
        assert_eq!(cache.list().unwrap().len(), 1);

        let key = cohomology_key(&w, Module::Adjoint, 2, SliceSpec::weight(0));
        fs::write(cache.path_for(&key), "{ not json").unwrap();
        let (c, hit) = cached_cohomology(Some(&cache), &slice, 2, DEFAULT_NNZ_BUDGET).unwrap();
        assert!(!hit);
        assert_eq!(c.dim, 1);
        assert_eq!(cache.clear().unwrap(), 1);
        assert!(cache.list().unwrap().is_empty());
    }

    #[test]
    fn keys_separate_slices_and_modules() {
        let f = Fp::new(5).unwrap();
        let w = make_w1(1, &f).unwrap();
        let a = cohomology_key(&w, Module::Adjoint, 2, SliceSpec::weight(0));
        let b = cohomology_key(&w, Module::Trivial, 2, SliceSpec::weight(0));
        let c = cohomology_key(&w, Module::Adjoint, 2, SliceSpec::degree(5));
        assert!(a != b && a != c && b != c);
    }
}

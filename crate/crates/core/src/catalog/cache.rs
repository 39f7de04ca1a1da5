//! Structure-constant cache persistence.
//!
//! The file is JSON: a header with format version, descriptor and descriptor
//! hash, then records sorted by `(x, y)`, each listing `(element, [num, den])`
//! terms in canonical element order.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CacheError, Error, Result};
use crate::hypercore::{Element, Hypergroup, Measure};
use crate::rational::Rational;

pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Hex SHA-256 of a hypergroup descriptor.
pub fn descriptor_hash(descriptor: &str) -> String {
    Sha256::digest(descriptor.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub x: Element,
    pub y: Element,
    pub terms: Vec<(Element, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureCache {
    pub version: u32,
    pub descriptor: String,
    pub hash: String,
    pub records: Vec<CacheRecord>,
}

impl StructureCache {
    pub fn from_hypergroup(hg: &Hypergroup) -> Self {
        let records = hg
            .cache_snapshot()
            .into_iter()
            .map(|((x, y), m)| CacheRecord { x, y, terms: m.iter().map(|(z, c)| (z.clone(), c.clone())).collect() })
            .collect();
        StructureCache {
            version: CACHE_FORMAT_VERSION,
            descriptor: hg.descriptor().to_string(),
            hash: descriptor_hash(hg.descriptor()),
            records,
        }
    }

    pub fn measures(&self) -> impl Iterator<Item = ((Element, Element), Measure)> + '_ {
        self.records.iter().map(|r| ((r.x.clone(), r.y.clone()), Measure::from_terms(r.terms.iter().cloned())))
    }

    /// Seeds `hg`'s cache with these records.
    pub fn install(&self, hg: &Hypergroup) -> Result<()> {
        let expected = descriptor_hash(hg.descriptor());
        if self.hash != expected {
            return Err(CacheError::Hash { found: self.hash.clone(), expected }.into());
        }
        hg.preload_cache(self.measures())
    }
}

/// Writes the memoized structure constants of `hg`; returns the descriptor
/// hash.
pub fn cache_store(hg: &Hypergroup, path: &Path) -> Result<String> {
    let cache = StructureCache::from_hypergroup(hg);
    if cache.records.is_empty() {
        return Err(CacheError::Empty.into());
    }
    let text = serde_json::to_string_pretty(&cache).map_err(|e| CacheError::Corrupt(e.to_string()))?;
    std::fs::write(path, text).map_err(|source| Error::Io { path: path.into(), source })?;
    Ok(cache.hash)
}

/// Reads a cache file and checks its version and that it belongs to `hg`.
pub fn cache_load(path: &Path, hg: &Hypergroup) -> Result<StructureCache> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
    let cache: StructureCache = serde_json::from_str(&text).map_err(|e| CacheError::Corrupt(e.to_string()))?;
    if cache.version != CACHE_FORMAT_VERSION {
        return Err(CacheError::Version { found: cache.version, expected: CACHE_FORMAT_VERSION }.into());
    }
    let expected = descriptor_hash(hg.descriptor());
    if cache.hash != expected || cache.descriptor != hg.descriptor() {
        return Err(CacheError::Hash { found: cache.hash, expected }.into());
    }
    if descriptor_hash(&cache.descriptor) != cache.hash {
        return Err(CacheError::Corrupt("header hash does not match header descriptor".into()).into());
    }
    Ok(cache)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_su2_dual, build_su3_dual};

    #[test]
    fn round_trip_su3() {
        let hg = build_su3_dual();
        let t: Vec<Element> = hg.box_truncation(10).into_iter().filter(|x| {
            let w = x.as_tuple().unwrap();
            w[0] + w[1] <= 10
        }).collect();
        for x in &t {
            for g in hg.default_generator() {
                hg.convolve_points(x, &g).unwrap();
            }
        }
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("su3.json");
        let hash = cache_store(&hg, &path).unwrap();
        assert_eq!(hash, descriptor_hash("su3dual"));

        let fresh = build_su3_dual();
        let loaded = cache_load(&path, &fresh).unwrap();
        loaded.install(&fresh).unwrap();
        assert_eq!(fresh.cache_snapshot(), hg.cache_snapshot());
    }

    #[test]
    fn wrong_hypergroup_and_truncation() {
        let hg = build_su2_dual();
        let x = hg.parse_element("3").unwrap();
        hg.convolve_points(&x, &x).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("su2.json");
        cache_store(&hg, &path).unwrap();

        let err = cache_load(&path, &build_su3_dual()).unwrap_err();
        assert!(matches!(err, Error::Cache(CacheError::Hash { .. })), "{err}");

        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, &text[..text.len() / 2]).unwrap();
        let err = cache_load(&path, &hg).unwrap_err();
        assert!(matches!(err, Error::Cache(CacheError::Corrupt(_))), "{err}");
    }

    #[test]
    fn empty_cache_is_not_stored() {
        let dir = tempfile::tempdir().unwrap();
        let err = cache_store(&build_su2_dual(), &dir.path().join("x.json")).unwrap_err();
        assert!(matches!(err, Error::Cache(CacheError::Empty)));
    }

    #[test]
    fn version_mismatch() {
        let hg = build_su2_dual();
        let x = hg.parse_element("1").unwrap();
        hg.convolve_points(&x, &x).unwrap();
        let mut cache = StructureCache::from_hypergroup(&hg);
        cache.version = 99;
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("v.json");
        std::fs::write(&path, serde_json::to_string(&cache).unwrap()).unwrap();
        assert!(matches!(cache_load(&path, &hg), Err(Error::Cache(CacheError::Version { found: 99, .. }))));
    }
}

//! JSON cache of computed moment polynomials:
//! `{"moments": {"2": <poly>, "4": <poly>, ...}, "format_version": 1}`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{moment_polynomial, MomentPolynomial};
use crate::{Error, RatPoly, Result};

pub const CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    moments: BTreeMap<u32, RatPoly>,
    format_version: u32,
}

/// Moment polynomials keyed by order, optionally backed by a file.
///
/// Entries read from disk are re-validated (symmetry, degrees, boundary
/// values) rather than recomputed.
#[derive(Debug, Default)]
pub struct MomentCache {
    path: Option<PathBuf>,
    entries: BTreeMap<u32, MomentPolynomial>,
    dirty: bool,
}

impl MomentCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Opens the cache at `path`; a missing file gives an empty cache.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let mut cache = Self {
            path: Some(path.clone()),
            ..Self::default()
        };
        if path.exists() {
            let text = fs::read_to_string(&path)?;
            let file: CacheFile = serde_json::from_str(&text)?;
            if file.format_version != CACHE_FORMAT_VERSION {
                return Err(Error::Parse(format!(
                    "{}: unsupported cache format_version {}",
                    path.display(),
                    file.format_version
                )));
            }
            for (order, poly) in file.moments {
                cache.entries.insert(order, MomentPolynomial::new(order, poly)?);
            }
        }
        Ok(cache)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn contains(&self, two_l: u32) -> bool {
        self.entries.contains_key(&two_l)
    }

    /// Returns `P_2l`, computing and remembering it if absent.
    pub fn get_or_compute(&mut self, two_l: u32) -> Result<&MomentPolynomial> {
        match self.entries.entry(two_l) {
            Entry::Occupied(e) => Ok(e.into_mut()),
            Entry::Vacant(e) => {
                let mp = moment_polynomial(two_l)?;
                self.dirty = true;
                Ok(e.insert(mp))
            }
        }
    }

    /// Writes the cache back if anything new was computed.
    pub fn save(&mut self) -> Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        if !self.dirty {
            return Ok(());
        }
        let file = CacheFile {
            moments: self
                .entries
                .iter()
                .map(|(&k, v)| (k, v.poly.clone()))
                .collect(),
            format_version: CACHE_FORMAT_VERSION,
        };
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                fs::create_dir_all(dir)?;
            }
        }
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string_pretty(&file)?)?;
        fs::rename(&tmp, path)?;
        self.dirty = false;
        Ok(())
    }
}

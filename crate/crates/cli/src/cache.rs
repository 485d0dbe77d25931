//! On-disk memo table. A file is used only if its version tag matches; each
//! entry is used only if its truncation order and curve fingerprint match the
//! running engine.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use hurwitz_core::toprec::PoleTermJson;
use hurwitz_core::{format_rational, parse_rational, QTopRec, Rational};
use log::{debug, warn};
use serde::{Deserialize, Serialize};

pub const CACHE_VERSION: &str = "hurwitz-memo-v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub g: u32,
    pub k: u32,
    pub trunc_order: i64,
    pub fingerprint: String,
    /// canonical (sorted-descending) multi-indices only
    pub terms: Vec<PoleTermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub version: String,
    pub entries: Vec<CacheEntry>,
}

impl CacheFile {
    fn empty() -> Self {
        Self {
            version: CACHE_VERSION.into(),
            entries: Vec::new(),
        }
    }

    /// Reads a cache, or an empty one if the file is missing, unreadable or
    /// carries another version.
    pub fn load(path: &Path) -> Self {
        let Ok(text) = fs::read_to_string(path) else {
            debug!("no cache at {}", path.display());
            return Self::empty();
        };
        match serde_json::from_str::<CacheFile>(&text) {
            Ok(file) if file.version == CACHE_VERSION => file,
            Ok(file) => {
                warn!("ignoring cache {} with version {}", path.display(), file.version);
                Self::empty()
            }
            Err(e) => {
                warn!("ignoring unreadable cache {}: {e}", path.display());
                Self::empty()
            }
        }
    }

    /// Seeds the engine with every entry matching its order and fingerprint.
    pub fn preload(&self, engine: &mut QTopRec) -> usize {
        let fingerprint = engine.conventions().fingerprint();
        let mut used = 0;
        for entry in &self.entries {
            if entry.trunc_order != engine.order() || entry.fingerprint != fingerprint {
                continue;
            }
            let parsed: Option<BTreeMap<Vec<u32>, Rational>> = entry
                .terms
                .iter()
                .map(|t| Some((t.a.clone(), parse_rational(&t.c)?)))
                .collect();
            match parsed {
                Some(terms) if terms.keys().all(|a| a.len() == entry.k as usize) => {
                    engine.preload(entry.g, entry.k, terms);
                    used += 1;
                }
                _ => warn!("skipping malformed cache entry ({}, {})", entry.g, entry.k),
            }
        }
        debug!("preloaded {used} cached forms");
        used
    }

    /// Adds the engine's memo table, replacing entries with the same key.
    pub fn absorb(&mut self, engine: &QTopRec) {
        let fingerprint = engine.conventions().fingerprint();
        let order = engine.order();
        for ((g, k), terms) in engine.memo_entries() {
            self.entries.retain(|e| {
                !(e.g == g && e.k == k && e.trunc_order == order && e.fingerprint == fingerprint)
            });
            self.entries.push(CacheEntry {
                g,
                k,
                trunc_order: order,
                fingerprint: fingerprint.clone(),
                terms: terms
                    .iter()
                    .map(|(a, c)| PoleTermJson {
                        a: a.clone(),
                        c: format_rational(c),
                    })
                    .collect(),
            });
        }
        self.entries
            .sort_by_key(|a| (a.g, a.k, a.trunc_order));
    }

    /// Writes through a temporary file so readers never see a partial cache.
    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string(self)?)?;
        fs::rename(tmp, path)
    }
}

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::nvec::NatVec;

use super::Verdict;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    /// Canonical (sorted) form of the decided vector.
    pub vector: NatVec,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digest: Option<String>,
}

/// Verdict cache keyed by canonical form, optionally persisted as a JSON file.
#[derive(Debug, Default)]
pub struct Cache {
    map: RwLock<HashMap<NatVec, CacheEntry>>,
    path: Option<PathBuf>,
}

impl Cache {
    pub fn new() -> Self {
        Cache::default()
    }

    /// Load `dir/verdicts.json` if present; [`Cache::save`] writes it back.
    pub fn open(dir: &Path) -> Result<Self> {
        let path = dir.join("verdicts.json");
        let mut map = HashMap::new();
        if path.exists() {
            let text = fs::read_to_string(&path)?;
            let entries: Vec<CacheEntry> = serde_json::from_str(&text)
                .map_err(|e| crate::Error::Schema(format!("{}: {e}", path.display())))?;
            for e in entries {
                map.insert(e.vector.clone(), e);
            }
        }
        Ok(Cache { map: RwLock::new(map), path: Some(path) })
    }

    pub fn get(&self, v: &NatVec) -> Option<CacheEntry> {
        self.map.read().unwrap().get(&v.canonical()).cloned()
    }

    pub fn insert(&self, mut e: CacheEntry) {
        e.vector = e.vector.canonical();
        self.map.write().unwrap().entry(e.vector.clone()).or_insert(e);
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn save(&self) -> Result<()> {
        let Some(path) = &self.path else { return Ok(()) };
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let mut entries: Vec<CacheEntry> = self.map.read().unwrap().values().cloned().collect();
        entries.sort_by(|a, b| a.vector.cmp(&b.vector));
        let text = serde_json::to_string_pretty(&entries).expect("cache entries serialize");
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, text)?;
        fs::rename(tmp, path)?;
        Ok(())
    }
}

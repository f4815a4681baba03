use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::record::CohomologyRecord;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::Prime;
use crate::module::FreeLevel;

/// On-disk record format version. Files with another version are ignored
/// and recomputed.
pub const STORE_FORMAT_VERSION: u32 = 1;

/// Environment variable naming the cache directory.
pub const CACHE_DIR_ENV: &str = "FUSION_ORBIT_CACHE";

/// Identifies a cohomology record: the subgroup as its sorted permutations,
/// the prime and the degree bound.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RecordKey {
    pub degree: usize,
    pub elements: Vec<Vec<u32>>,
    pub prime: u32,
    pub bound: usize,
}

impl RecordKey {
    pub fn new(group: &FiniteGroup, h: &Subgroup, p: Prime, d: usize) -> Self {
        RecordKey {
            degree: group.degree(),
            elements: h.elements().iter().map(|&g| group.permutation(g).to_vec()).collect(),
            prime: p.get(),
            bound: d,
        }
    }

    /// SHA-256 of the canonical JSON encoding, in hex.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("keys serialize");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct StoredRecord {
    version: u32,
    key: RecordKey,
    levels: Vec<FreeLevel>,
}

/// Memoizes cohomology records in memory and, optionally, in a directory
/// with one JSON file per record named by the key digest.
#[derive(Debug, Default)]
pub struct CohomologyStore {
    dir: Option<PathBuf>,
    memory: RwLock<HashMap<RecordKey, Arc<CohomologyRecord>>>,
    disk_writes: Mutex<()>,
    hits: AtomicUsize,
    misses: AtomicUsize,
}

impl CohomologyStore {
    pub fn in_memory() -> Self {
        Self::default()
    }

    pub fn with_dir(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        Ok(CohomologyStore { dir: Some(dir), ..Self::default() })
    }

    /// Uses the directory in `FUSION_ORBIT_CACHE` when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(dir) if !dir.is_empty() => Self::with_dir(dir),
            _ => Ok(Self::in_memory()),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// `(hits, misses)` of in-memory lookups.
    pub fn stats(&self) -> (usize, usize) {
        (self.hits.load(Ordering::Relaxed), self.misses.load(Ordering::Relaxed))
    }

    /// Digests of every record held in memory, sorted.
    pub fn keys(&self) -> Vec<String> {
        let mut keys: Vec<String> = self.memory.read().expect("store lock").keys().map(|k| k.digest()).collect();
        keys.sort();
        keys
    }

    pub fn get(&self, group: &FiniteGroup, h: &Subgroup, p: Prime, d: usize) -> Result<Arc<CohomologyRecord>> {
        let key = RecordKey::new(group, h, p, d);
        {
            // A record with a larger bound answers every lower degree the same way.
            let memory = self.memory.read().expect("store lock");
            let found = memory
                .iter()
                .filter(|(k, _)| k.bound >= d && k.prime == key.prime && k.degree == key.degree && k.elements == key.elements)
                .min_by_key(|(k, _)| k.bound);
            if let Some((k, rec)) = found {
                self.hits.fetch_add(1, Ordering::Relaxed);
                if rec.subgroup() == h {
                    return Ok(rec.clone());
                }
                // Same permutations inside another group: element positions
                // agree, so the resolution carries over to this numbering.
                let levels = rec.resolution().levels().to_vec();
                return Ok(Arc::new(CohomologyRecord::from_resolution(group, h, p, k.bound, levels)?));
            }
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let rec = match self.load(group, h, p, d, &key) {
            Some(rec) => rec,
            None => {
                let rec = CohomologyRecord::compute(group, h, p, d);
                self.save(&key, &rec)?;
                rec
            }
        };
        let mut memory = self.memory.write().expect("store lock");
        Ok(memory.entry(key).or_insert_with(|| Arc::new(rec)).clone())
    }

    fn path_for(&self, key: &RecordKey) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", key.digest())))
    }

    // Unreadable, stale or inconsistent files are treated as absent.
    fn load(&self, group: &FiniteGroup, h: &Subgroup, p: Prime, d: usize, key: &RecordKey) -> Option<CohomologyRecord> {
        let path = self.path_for(key)?;
        let text = fs::read_to_string(path).ok()?;
        let stored: StoredRecord = serde_json::from_str(&text).ok()?;
        if stored.version != STORE_FORMAT_VERSION || stored.key != *key {
            return None;
        }
        CohomologyRecord::from_resolution(group, h, p, d, stored.levels).ok()
    }

    fn save(&self, key: &RecordKey, rec: &CohomologyRecord) -> Result<()> {
        let Some(path) = self.path_for(key) else { return Ok(()) };
        let stored = StoredRecord {
            version: STORE_FORMAT_VERSION,
            key: key.clone(),
            levels: rec.resolution().levels().to_vec(),
        };
        let text = serde_json::to_string(&stored).map_err(|e| Error::Cache(e.to_string()))?;
        let _guard = self.disk_writes.lock().expect("store write lock");
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, text).map_err(|e| Error::Cache(format!("{}: {e}", tmp.display())))?;
        fs::rename(&tmp, &path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))
    }
}

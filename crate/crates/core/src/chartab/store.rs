//! Character-table cache.
//!
//! Tables are cached in memory per store, and optionally on disk as JSON
//! keyed by a hash of (degree, sorted generator image lists, group order).
//! A hash collision or a stale file is caught by re-verifying the loaded
//! table (group data must match and orthogonality must hold). Disk writes
//! are atomic (write to a temp file, then rename).

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::CharacterTable;
use crate::cyclo::Cyclotomic;
use crate::perm::{ConjugacyData, Group};
use crate::{Error, Result};

/// Cache key: degree, sorted 1-based generator image lists, and order.
pub fn cache_key(g: &Group) -> String {
    let mut gens: Vec<Vec<u64>> = g
        .generators()
        .iter()
        .map(|p| p.images_one_based())
        .collect();
    gens.sort();
    let mut hasher = Sha256::new();
    hasher.update(format!("degree:{};order:{};", g.degree(), g.order()));
    for gen in &gens {
        hasher.update(format!("{gen:?};"));
    }
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// On-disk format. Field order is fixed, and every value serializes
/// canonically, so save/load/save is byte-identical.
#[derive(Serialize, Deserialize)]
struct CachedTable {
    degree: usize,
    order: String,
    generators: Vec<Vec<u64>>,
    class_reps: Vec<Vec<u64>>,
    class_sizes: Vec<u64>,
    exponent: u64,
    power_maps: Vec<Vec<usize>>,
    inverse_map: Vec<usize>,
    degrees: Vec<u64>,
    values: Vec<Vec<Cyclotomic>>,
}

impl CachedTable {
    fn from_table(t: &CharacterTable) -> CachedTable {
        CachedTable {
            degree: t.group().degree(),
            order: t.group().order().to_string(),
            generators: t
                .group()
                .generators()
                .iter()
                .map(|p| p.images_one_based())
                .collect(),
            class_reps: t
                .classes()
                .reps()
                .iter()
                .map(|p| p.images_one_based())
                .collect(),
            class_sizes: t.classes().sizes().to_vec(),
            exponent: t.classes().exponent(),
            power_maps: t.classes().power_maps().to_vec(),
            inverse_map: t.classes().inverse_map().to_vec(),
            degrees: t.degrees().to_vec(),
            values: (0..t.num_irr()).map(|i| t.row(i).to_vec()).collect(),
        }
    }

    /// Rebuilds and fully re-verifies the table for the given group.
    fn into_table(self, g: &Group) -> Result<CharacterTable> {
        if self.degree != g.degree() || self.order != g.order().to_string() {
            return Err(Error::internal("cached table does not match the group"));
        }
        let classes = ConjugacyData::compute(g)?;
        let reps: Vec<Vec<u64>> = classes
            .reps()
            .iter()
            .map(|p| p.images_one_based())
            .collect();
        if reps != self.class_reps
            || classes.sizes() != &self.class_sizes[..]
            || classes.exponent() != self.exponent
            || classes.power_maps() != &self.power_maps[..]
            || classes.inverse_map() != &self.inverse_map[..]
        {
            return Err(Error::internal("cached class data does not match the group"));
        }
        let table = CharacterTable::from_parts(g.clone(), classes, self.values, self.degrees);
        table.verify()?;
        Ok(table)
    }
}

/// Serializes a table to its canonical cache JSON.
pub fn table_to_json(t: &CharacterTable) -> String {
    serde_json::to_string_pretty(&CachedTable::from_table(t)).expect("table serializes")
}

/// Loads a table from cache JSON, re-verifying everything against `g`.
pub fn table_from_json(json: &str, g: &Group) -> Result<CharacterTable> {
    let cached: CachedTable =
        serde_json::from_str(json).map_err(|e| Error::input(format!("bad cached table: {e}")))?;
    cached.into_table(g)
}

/// A memoizing table store with an optional disk cache directory.
pub struct TableStore {
    dir: Option<PathBuf>,
    mem: Mutex<HashMap<String, Arc<CharacterTable>>>,
}

impl TableStore {
    pub fn new(dir: Option<PathBuf>) -> TableStore {
        TableStore {
            dir,
            mem: Mutex::new(HashMap::new()),
        }
    }

    pub fn in_memory() -> TableStore {
        TableStore::new(None)
    }

    /// The character table of `g`, from memory, disk, or a fresh build.
    pub fn table(&self, g: &Group) -> Result<Arc<CharacterTable>> {
        let key = cache_key(g);
        if let Some(t) = self.mem.lock().unwrap().get(&key) {
            return Ok(t.clone());
        }
        let path = self.dir.as_ref().map(|d| d.join(format!("{key}.json")));
        if let Some(p) = &path {
            if p.exists() {
                let json = std::fs::read_to_string(p)
                    .map_err(|e| Error::input(format!("cannot read cache file: {e}")))?;
                match table_from_json(&json, g) {
                    Ok(t) => {
                        let arc = Arc::new(t);
                        self.mem.lock().unwrap().insert(key, arc.clone());
                        return Ok(arc);
                    }
                    Err(_) => {
                        // Collision or stale entry; fall through to rebuild.
                    }
                }
            }
        }
        let t = CharacterTable::build(g)?;
        if let Some(p) = &path {
            if let Some(dir) = p.parent() {
                std::fs::create_dir_all(dir)
                    .map_err(|e| Error::input(format!("cannot create cache dir: {e}")))?;
            }
            let tmp = p.with_extension("json.tmp");
            std::fs::write(&tmp, table_to_json(&t))
                .map_err(|e| Error::input(format!("cannot write cache file: {e}")))?;
            std::fs::rename(&tmp, p)
                .map_err(|e| Error::input(format!("cannot commit cache file: {e}")))?;
        }
        let arc = Arc::new(t);
        self.mem.lock().unwrap().insert(key, arc.clone());
        Ok(arc)
    }
}

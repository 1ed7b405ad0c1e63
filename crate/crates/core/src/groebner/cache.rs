//! Insert-only, content-keyed memo tables shared across threads.
//!
//! Values are deterministic functions of their keys, so a racing double
//! insert is harmless: the first value wins and both are identical.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

/// A concurrent insert-only map from canonical content keys to shared values.
pub struct MemoTable<V> {
    map: RwLock<HashMap<String, Arc<V>>>,
}

impl<V> Default for MemoTable<V> {
    fn default() -> Self {
        MemoTable { map: RwLock::new(HashMap::new()) }
    }
}

impl<V> MemoTable<V> {
    pub fn get(&self, key: &str) -> Option<Arc<V>> {
        self.map.read().expect("memo lock").get(key).cloned()
    }

    /// Inserts unless present; returns the stored value.
    pub fn insert(&self, key: String, value: V) -> Arc<V> {
        let mut map = self.map.write().expect("memo lock");
        map.entry(key).or_insert_with(|| Arc::new(value)).clone()
    }

    pub fn get_or_try_insert_with<E>(&self, key: String, f: impl FnOnce() -> Result<V, E>) -> Result<Arc<V>, E> {
        if let Some(v) = self.get(&key) {
            return Ok(v);
        }
        let v = f()?;
        Ok(self.insert(key, v))
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("memo lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Snapshot of every entry, sorted by key.
    pub fn entries(&self) -> Vec<(String, Arc<V>)> {
        let map = self.map.read().expect("memo lock");
        let mut out: Vec<_> = map.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn clear(&self) {
        self.map.write().expect("memo lock").clear();
    }
}

/// Lazily created process-wide table.
pub(crate) fn global<V: Send + Sync + 'static>(cell: &'static OnceLock<MemoTable<V>>) -> &'static MemoTable<V> {
    cell.get_or_init(MemoTable::default)
}

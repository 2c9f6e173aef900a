//! Insert-once memo tables shared between threads.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::RwLock;

pub(crate) struct Memo<K, V>(RwLock<HashMap<K, V>>);

impl<K: Eq + Hash, V: Clone> Memo<K, V> {
    pub(crate) fn new() -> Self {
        Memo(RwLock::new(HashMap::new()))
    }

    pub(crate) fn get(&self, k: &K) -> Option<V> {
        self.0.read().expect("memo lock").get(k).cloned()
    }

    pub(crate) fn put(&self, k: K, v: V) -> V {
        self.0.write().expect("memo lock").entry(k).or_insert(v).clone()
    }
}

//! A sharded, bounded cache shared between clones of a structure whose
//! operations are pure.

use std::fmt;
use std::hash::{BuildHasher, Hash};
use std::sync::Mutex;

use hashbrown::{Equivalent, HashMap};
use rustc_hash::FxBuildHasher;

const SHARDS: usize = 16;
const SHARD_CAPACITY: usize = 1 << 17;

/// Each shard is cleared once it holds `SHARD_CAPACITY` entries.
pub(crate) struct Memo<K, V> {
    shards: [Mutex<HashMap<K, V, FxBuildHasher>>; SHARDS],
}

impl<K, V> Default for Memo<K, V> {
    fn default() -> Self {
        Memo {
            shards: std::array::from_fn(|_| Mutex::new(HashMap::with_hasher(FxBuildHasher))),
        }
    }
}

impl<K, V> fmt::Debug for Memo<K, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Memo")
    }
}

impl<K: Hash + Eq, V> Memo<K, V> {
    fn shard<Q: Hash + ?Sized>(&self, q: &Q) -> &Mutex<HashMap<K, V, FxBuildHasher>> {
        &self.shards[(FxBuildHasher.hash_one(q) >> 32) as usize % SHARDS]
    }

    /// Runs `hit` on the cached value for `probe`, or computes, caches and
    /// then visits it. `own` turns the probe into a stored key; it must hash
    /// and compare equal to the probe.
    pub(crate) fn visit<Q, R>(
        &self,
        probe: &Q,
        own: impl FnOnce(&Q) -> K,
        compute: impl FnOnce() -> V,
        hit: impl FnOnce(&V) -> R,
    ) -> R
    where
        Q: Hash + Equivalent<K> + ?Sized,
    {
        let shard = self.shard(probe);
        if let Some(v) = shard.lock().unwrap().get(probe) {
            return hit(v);
        }
        let v = compute();
        let out = hit(&v);
        let mut m = shard.lock().unwrap();
        if m.len() >= SHARD_CAPACITY {
            m.clear();
        }
        m.insert(own(probe), v);
        out
    }
}

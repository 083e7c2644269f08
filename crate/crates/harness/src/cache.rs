use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

use torvanish_core::homology::{resolve, tor_from_resolution, FreeResolution, ModulePresentation, TorProfile};
use torvanish_core::lab::{complexity_estimate, serre_check, ComplexityReport, SerreReport};
use torvanish_core::Result;

struct Memo<K, V>(Mutex<HashMap<K, Arc<V>>>);

impl<K: Eq + Hash, V> Memo<K, V> {
    fn new() -> Self {
        Self(Mutex::new(HashMap::new()))
    }

    fn get_or(&self, key: K, f: impl FnOnce() -> Result<V>) -> Result<Arc<V>> {
        if let Some(v) = self.0.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = Arc::new(f()?);
        Ok(self.0.lock().unwrap().entry(key).or_insert(v).clone())
    }
}

/// Shared memo tables for resolutions, Tor profiles, Serre verdicts and
/// complexity estimates, keyed by presentation text.
pub struct Cache {
    res: Memo<(String, usize), FreeResolution>,
    tor: Memo<(String, String, usize), TorProfile>,
    serre: Memo<(String, usize), SerreReport>,
    cx: Memo<(String, usize), ComplexityReport>,
}

impl Default for Cache {
    fn default() -> Self {
        Self::new()
    }
}

impl Cache {
    pub fn new() -> Self {
        Self {
            res: Memo::new(),
            tor: Memo::new(),
            serre: Memo::new(),
            cx: Memo::new(),
        }
    }

    pub fn resolution(&self, m: &ModulePresentation, bound: usize) -> Result<Arc<FreeResolution>> {
        self.res.get_or((m.cache_key(), bound), || resolve(m, bound))
    }

    /// `Tor_i(M, N)` for `0 <= i <= bound`.
    pub fn tor(&self, m: &ModulePresentation, n: &ModulePresentation, bound: usize) -> Result<Arc<TorProfile>> {
        self.tor.get_or((m.cache_key(), n.cache_key(), bound), || {
            let res = self.resolution(m, bound + 1)?;
            Ok(tor_from_resolution(&res, n, bound))
        })
    }

    pub fn serre(&self, m: &ModulePresentation, n: usize) -> Result<Arc<SerreReport>> {
        self.serre.get_or((m.cache_key(), n), || serre_check(m, n))
    }

    pub fn complexity(&self, m: &ModulePresentation, bound: usize) -> Result<Arc<ComplexityReport>> {
        self.cx.get_or((m.cache_key(), bound), || complexity_estimate(m, bound))
    }
}

//! Content-addressed cache for ideal lattices and their prime sublists,
//! the dominant cost of the exact checks.  Keys are hashes of the fixture
//! canonical form plus an operation id; values are plain JSON files under
//! the cache directory.  Materialized rings themselves are recomputed
//! (cheap) and only their lattices are cached.

use std::cell::RefCell;
use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::ideals::is_prime_ideal;
use crate::paction::TwistedPartialAction;
use crate::ringcore::{enumerate_ideals, IdealSet, RingOps};
use crate::skewseries::{materialize_finite, Flavor, Materialized};

pub struct Cache {
    dir: Option<PathBuf>,
    // in-process memo: several checks on one fixture reuse the same
    // lattices and materializations even when the disk cache is off
    mem: RefCell<HashMap<String, Arc<LatticeData>>>,
    mats: RefCell<HashMap<String, Arc<Materialized>>>,
}

#[derive(Serialize, Deserialize)]
struct StoredIdeal {
    members: Vec<usize>,
    generators: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct StoredLattice {
    card: usize,
    ideals: Vec<StoredIdeal>,
    primes: Vec<usize>,
}

/// A ring's full ideal lattice with the indices of its proper prime
/// members, as produced by [`Cache::lattice`].
pub struct LatticeData {
    pub ideals: Vec<IdealSet>,
    pub prime_indices: Vec<usize>,
}

impl LatticeData {
    pub fn primes(&self) -> Vec<&IdealSet> {
        self.prime_indices.iter().map(|&i| &self.ideals[i]).collect()
    }

    /// Prime radical: intersection of the proper primes (the whole ring if
    /// there are none).
    pub fn nil(&self, ring: &dyn RingOps) -> IdealSet {
        let mut members: Vec<usize> = (0..ring.card()).collect();
        for &i in &self.prime_indices {
            let p = &self.ideals[i];
            members.retain(|m| p.contains(*m));
        }
        IdealSet { members, generators: vec![] }
    }
}

fn compute_lattice(ring: &dyn RingOps, cap: usize) -> Result<LatticeData> {
    let ideals = enumerate_ideals(ring, cap)?;
    let mut prime_indices = Vec::new();
    for (i, p) in ideals.iter().enumerate() {
        if !p.is_whole(ring) && is_prime_ideal(ring, p)? {
            prime_indices.push(i);
        }
    }
    Ok(LatticeData { ideals, prime_indices })
}

impl Cache {
    /// A cache rooted at `dir`; `None` or `enabled = false` disables the
    /// disk layer (the in-process memo always runs).
    pub fn new(dir: Option<PathBuf>, enabled: bool) -> Cache {
        Cache {
            dir: if enabled { dir } else { None },
            mem: RefCell::new(HashMap::new()),
            mats: RefCell::new(HashMap::new()),
        }
    }

    pub fn disabled() -> Cache {
        Cache::new(None, false)
    }

    /// Materialized finite series ring, memoized in-process only (cheap to
    /// rebuild across runs, expensive to rebuild per check).
    pub fn materialized(
        &self,
        key: &str,
        act: &Arc<TwistedPartialAction>,
        flavor: Flavor,
        cap: usize,
    ) -> Result<Arc<Materialized>> {
        if let Some(m) = self.mats.borrow().get(key) {
            return Ok(m.clone());
        }
        let m = Arc::new(materialize_finite(act, flavor, cap)?);
        self.mats.borrow_mut().insert(key.to_string(), m.clone());
        Ok(m)
    }

    pub fn is_enabled(&self) -> bool {
        self.dir.is_some()
    }

    fn path_for(&self, key: &str) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        let mut h = Sha256::new();
        h.update(key.as_bytes());
        Some(dir.join(format!("{}.json", hex::encode(h.finalize()))))
    }

    /// Ideal lattice plus proper-prime indices for a ring, keyed by
    /// `key` (fixture content hash + operation id).  Hits are validated
    /// against the ring cardinality; misses and corrupt entries recompute
    /// and rewrite.
    pub fn lattice(&self, key: &str, ring: &dyn RingOps, cap: usize) -> Result<Arc<LatticeData>> {
        if let Some(data) = self.mem.borrow().get(key) {
            return Ok(data.clone());
        }
        let path = match self.path_for(key) {
            Some(p) => p,
            None => {
                let data = Arc::new(compute_lattice(ring, cap)?);
                self.mem.borrow_mut().insert(key.to_string(), data.clone());
                return Ok(data);
            }
        };
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(stored) = serde_json::from_str::<StoredLattice>(&text) {
                if stored.card == ring.card()
                    && stored.primes.iter().all(|&i| i < stored.ideals.len())
                {
                    let ideals: Vec<IdealSet> = stored
                        .ideals
                        .into_iter()
                        .map(|s| IdealSet { members: s.members, generators: s.generators })
                        .collect();
                    let data = Arc::new(LatticeData { ideals, prime_indices: stored.primes });
                    self.mem.borrow_mut().insert(key.to_string(), data.clone());
                    return Ok(data);
                }
            }
        }
        let data = compute_lattice(ring, cap)?;
        let stored = StoredLattice {
            card: ring.card(),
            ideals: data
                .ideals
                .iter()
                .map(|i| StoredIdeal {
                    members: i.members.clone(),
                    generators: i.generators.clone(),
                })
                .collect(),
            primes: data.prime_indices.clone(),
        };
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        std::fs::write(&path, serde_json::to_string(&stored).expect("lattice serializes"))?;
        let data = Arc::new(data);
        self.mem.borrow_mut().insert(key.to_string(), data.clone());
        Ok(data)
    }
}

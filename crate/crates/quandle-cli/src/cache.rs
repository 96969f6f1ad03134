//! On-disk census cache, keyed by (order, crate version). The order-6 census
//! dominates startup cost, so catalogs hydrate from `QUANDLE_CACHE_DIR`
//! (default: a subdirectory of the system temp dir) when possible.

use std::path::PathBuf;

use quandle::{Catalog, FiniteQuandle};

fn cache_dir() -> PathBuf {
    match std::env::var_os("QUANDLE_CACHE_DIR") {
        Some(dir) => PathBuf::from(dir),
        None => std::env::temp_dir().join("quandle-census"),
    }
}

fn cache_file(n: usize) -> PathBuf {
    cache_dir().join(format!(
        "census-v{}-n{n}.json",
        env!("CARGO_PKG_VERSION")
    ))
}

/// A catalog whose shelves are filled from the disk cache where available;
/// everything else is computed lazily and written back, best effort.
pub fn load_catalog(bound: usize) -> CachingCatalog {
    let catalog = Catalog::new(bound);
    for n in 1..=bound {
        if let Ok(text) = std::fs::read_to_string(cache_file(n)) {
            if let Ok(members) = serde_json::from_str::<Vec<FiniteQuandle>>(&text) {
                catalog.preload(n, members);
            }
        }
    }
    CachingCatalog { inner: catalog }
}

pub struct CachingCatalog {
    inner: Catalog,
}

impl CachingCatalog {
    pub fn order(&self, n: usize) -> Result<&[FiniteQuandle], quandle::CensusError> {
        let members = self.inner.order(n)?;
        self.persist();
        Ok(members)
    }

    pub fn up_to(&self, n: usize) -> Result<Vec<FiniteQuandle>, quandle::CensusError> {
        let members = self.inner.up_to(n)?;
        self.persist();
        Ok(members)
    }

    /// Writes every shelf that has been built so far, best effort.
    pub fn persist(&self) {
        for n in 1..=self.inner.bound() {
            let file = cache_file(n);
            if file.exists() {
                continue;
            }
            if let Some(members) = self.inner.cached(n) {
                let _ = std::fs::create_dir_all(cache_dir());
                if let Ok(json) = serde_json::to_string(&members.to_vec()) {
                    let _ = std::fs::write(file, json);
                }
            }
        }
    }
}

impl std::ops::Deref for CachingCatalog {
    type Target = Catalog;

    fn deref(&self) -> &Catalog {
        &self.inner
    }
}

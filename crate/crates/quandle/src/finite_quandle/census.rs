//! Enumeration of all quandles of a given order, raw or up to isomorphism.
//!
//! The search assigns one right-translation column at a time. Each column
//! `S_y` must be a permutation fixing `y`; right self-distributivity is
//! equivalent to `S_{S_z(y)} = S_z S_y S_z^-1`, so whenever columns `y` and
//! `z` are both known the column at index `S_z(y)` is forced. Forcing is
//! propagated to closure after every choice, which prunes the search far
//! below the naive `((n-1)!)^n` column space.

use std::sync::OnceLock;

use rayon::prelude::*;
use thiserror::Error;

use super::FiniteQuandle;

/// Default cap on the census order. Order 6 already has 73 classes, which
/// keeps separation sweeps fast.
pub const DEFAULT_CATALOG_BOUND: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("order {n} exceeds the catalog bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("order must be at least 1")]
    ZeroOrder,
}

/// All quandles of order `n`, subject to [`DEFAULT_CATALOG_BOUND`].
///
/// With `up_to_iso` the result holds one representative per isomorphism
/// class, namely the lexicographically least table over all relabelings.
/// Output is sorted by table either way.
pub fn enumerate_quandles(n: usize, up_to_iso: bool) -> Result<Vec<FiniteQuandle>, CensusError> {
    enumerate_quandles_bounded(n, up_to_iso, DEFAULT_CATALOG_BOUND)
}

/// [`enumerate_quandles`] with an explicit order bound.
pub fn enumerate_quandles_bounded(
    n: usize,
    up_to_iso: bool,
    bound: usize,
) -> Result<Vec<FiniteQuandle>, CensusError> {
    if n == 0 {
        return Err(CensusError::ZeroOrder);
    }
    if n > bound {
        return Err(CensusError::BoundExceeded { n, bound });
    }
    let tables = search_tables(n);
    let mut out: Vec<Vec<u8>> = if up_to_iso {
        let mut canon: Vec<Vec<u8>> = tables.par_iter().map(|t| canonical_table(t, n)).collect();
        canon.sort_unstable();
        canon.dedup();
        canon
    } else {
        let mut all = tables;
        all.sort_unstable();
        all
    };
    Ok(out
        .drain(..)
        .map(|t| FiniteQuandle::from_checked(n, t.into_iter().map(usize::from).collect(), None))
        .collect())
}

/// The lexicographically least relabeling of `q`'s table.
pub fn canonical_form(q: &FiniteQuandle) -> FiniteQuandle {
    let n = q.order();
    let flat: Vec<u8> = q.flat_table().iter().map(|&v| v as u8).collect();
    let table = canonical_table(&flat, n);
    FiniteQuandle::from_checked(n, table.into_iter().map(usize::from).collect(), None)
}

fn canonical_table(table: &[u8], n: usize) -> Vec<u8> {
    let mut best: Option<Vec<u8>> = None;
    let mut perm: Vec<u8> = (0..n as u8).collect();
    let mut scratch = vec![0u8; n * n];
    permute_tables(table, n, &mut perm, 0, &mut scratch, &mut best);
    best.expect("at least the identity relabeling")
}

fn permute_tables(
    table: &[u8],
    n: usize,
    perm: &mut Vec<u8>,
    k: usize,
    scratch: &mut Vec<u8>,
    best: &mut Option<Vec<u8>>,
) {
    if k == n {
        // relabeled[p(x)][p(y)] = p(table[x][y])
        let mut inv = vec![0usize; n];
        for (i, &v) in perm.iter().enumerate() {
            inv[v as usize] = i;
        }
        for x in 0..n {
            for y in 0..n {
                scratch[x * n + y] = perm[table[inv[x] * n + inv[y]] as usize];
            }
        }
        match best {
            Some(b) if scratch.as_slice() >= b.as_slice() => {}
            _ => *best = Some(scratch.clone()),
        }
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute_tables(table, n, perm, k + 1, scratch, best);
        perm.swap(k, i);
    }
}

/// Column-propagation search over all valid tables; returns flat row-major
/// tables in unspecified order.
fn search_tables(n: usize) -> Vec<Vec<u8>> {
    let candidates = perms_fixing_each_index(n);
    let first: Vec<Vec<u8>> = candidates[0].clone();
    let branches: Vec<Vec<Vec<u8>>> = first
        .into_par_iter()
        .map(|col0| {
            let mut cols: Vec<Option<Vec<u8>>> = vec![None; n];
            cols[0] = Some(col0);
            let mut results = Vec::new();
            match propagate(&mut cols, n) {
                Some(newly) => {
                    descend(&mut cols, n, &candidates, &mut results);
                    for i in newly {
                        cols[i] = None;
                    }
                }
                None => {}
            }
            results
        })
        .collect();
    branches.into_iter().flatten().collect()
}

fn descend(
    cols: &mut Vec<Option<Vec<u8>>>,
    n: usize,
    candidates: &[Vec<Vec<u8>>],
    results: &mut Vec<Vec<u8>>,
) {
    let free = match cols.iter().position(Option::is_none) {
        Some(i) => i,
        None => {
            // table[x][y] = S_y(x)
            let mut table = vec![0u8; n * n];
            for y in 0..n {
                let col = cols[y].as_ref().unwrap();
                for x in 0..n {
                    table[x * n + y] = col[x];
                }
            }
            results.push(table);
            return;
        }
    };
    for cand in &candidates[free] {
        cols[free] = Some(cand.clone());
        if let Some(newly) = propagate(cols, n) {
            descend(cols, n, candidates, results);
            for i in newly {
                cols[i] = None;
            }
        }
        cols[free] = None;
    }
}

/// Forces columns implied by `S_{S_z(y)} = S_z S_y S_z^-1` until closure.
/// Returns the newly assigned indices, or `None` on conflict (after undoing
/// its own assignments).
fn propagate(cols: &mut Vec<Option<Vec<u8>>>, n: usize) -> Option<Vec<usize>> {
    let mut newly: Vec<usize> = Vec::new();
    loop {
        let mut changed = false;
        for z in 0..n {
            let sz = match &cols[z] {
                Some(c) => c.clone(),
                None => continue,
            };
            let mut sz_inv = vec![0u8; n];
            for (i, &v) in sz.iter().enumerate() {
                sz_inv[v as usize] = i as u8;
            }
            for y in 0..n {
                let sy = match &cols[y] {
                    Some(c) => c.clone(),
                    None => continue,
                };
                let w = sz[y] as usize;
                let forced: Vec<u8> =
                    (0..n).map(|x| sz[sy[sz_inv[x] as usize] as usize]).collect();
                match &cols[w] {
                    Some(existing) => {
                        if *existing != forced {
                            for i in newly {
                                cols[i] = None;
                            }
                            return None;
                        }
                    }
                    None => {
                        cols[w] = Some(forced);
                        newly.push(w);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return Some(newly);
        }
    }
}

/// A lazily built store of census members, one shelf per order, in canonical
/// order (ascending order, then table). Separation searches draw their
/// targets from here.
#[derive(Debug)]
pub struct Catalog {
    bound: usize,
    shelves: Vec<OnceLock<Vec<FiniteQuandle>>>,
}

impl Catalog {
    pub fn new(bound: usize) -> Self {
        Catalog {
            bound,
            shelves: (0..=bound).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Census members of exactly order `n`.
    pub fn order(&self, n: usize) -> Result<&[FiniteQuandle], CensusError> {
        if n == 0 {
            return Err(CensusError::ZeroOrder);
        }
        if n > self.bound {
            return Err(CensusError::BoundExceeded { n, bound: self.bound });
        }
        Ok(self.shelves[n].get_or_init(|| {
            enumerate_quandles_bounded(n, true, self.bound).expect("within bound")
        }))
    }

    /// Pre-fills one shelf, e.g. from a disk cache. Ignored if already built
    /// or if the members fail a spot check.
    pub fn preload(&self, n: usize, members: Vec<FiniteQuandle>) {
        if n >= 1 && n <= self.bound && members.iter().all(|q| q.order() == n) {
            let _ = self.shelves[n].set(members);
        }
    }

    /// The shelf for order `n`, only if it has been built already.
    pub fn cached(&self, n: usize) -> Option<&[FiniteQuandle]> {
        self.shelves.get(n).and_then(|s| s.get()).map(Vec::as_slice)
    }

    /// All members of order `<= n`, canonically ordered.
    pub fn up_to(&self, n: usize) -> Result<Vec<FiniteQuandle>, CensusError> {
        let top = n.min(self.bound);
        if n > self.bound {
            return Err(CensusError::BoundExceeded { n, bound: self.bound });
        }
        let mut out = Vec::new();
        for k in 1..=top {
            out.extend(self.order(k)?.iter().cloned());
        }
        Ok(out)
    }
}

/// `perms[y]` lists the permutations of `{0,…,n-1}` fixing `y`, sorted.
fn perms_fixing_each_index(n: usize) -> Vec<Vec<Vec<u8>>> {
    let mut all: Vec<Vec<u8>> = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    heap_perms(&mut cur, 0, &mut all);
    all.sort_unstable();
    (0..n)
        .map(|y| {
            all.iter()
                .filter(|p| p[y] == y as u8)
                .cloned()
                .collect()
        })
        .collect()
}

fn heap_perms(cur: &mut Vec<u8>, k: usize, out: &mut Vec<Vec<u8>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        heap_perms(cur, k + 1, out);
        cur.swap(k, i);
    }
}

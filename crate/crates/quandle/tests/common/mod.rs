//! Independent oracles shared by the integration suites. These deliberately
//! avoid the library's optimized code paths: the census oracle filters raw
//! tables, and the coloring oracle walks the full assignment space.

// not every suite uses every oracle
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use quandle::{FiniteQuandle, QuandlePresentation};

/// Filters every n x n table by the three axioms, aborting a prefix as soon
/// as the diagonal or a column is already broken. No search-space reasoning
/// beyond plain filtering.
pub fn oracle_labeled_tables(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut table = vec![vec![0usize; n]; n];
    let mut col_used = vec![vec![false; n]; n];
    fill(n, 0, &mut table, &mut col_used, &mut out);
    out
}

fn fill(
    n: usize,
    pos: usize,
    table: &mut Vec<Vec<usize>>,
    col_used: &mut Vec<Vec<bool>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if pos == n * n {
        if is_quandle(table, n) {
            out.push(table.clone());
        }
        return;
    }
    let (x, y) = (pos / n, pos % n);
    for v in 0..n {
        if x == y && v != x {
            continue;
        }
        if col_used[y][v] {
            continue;
        }
        table[x][y] = v;
        col_used[y][v] = true;
        fill(n, pos + 1, table, col_used, out);
        col_used[y][v] = false;
    }
}

fn is_quandle(t: &[Vec<usize>], n: usize) -> bool {
    for x in 0..n {
        if t[x][x] != x {
            return false;
        }
    }
    for y in 0..n {
        let mut seen = vec![false; n];
        for x in 0..n {
            if seen[t[x][y]] {
                return false;
            }
            seen[t[x][y]] = true;
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if t[t[x][y]][z] != t[t[x][z]][t[y][z]] {
                    return false;
                }
            }
        }
    }
    true
}

fn relabel(t: &[Vec<usize>], p: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            out[p[x]][p[y]] = p[t[x][y]];
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn rec(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(cur, k + 1, out);
            cur.swap(k, i);
        }
    }
    rec(&mut cur, 0, &mut out);
    out
}

/// Labeled and up-to-relabeling counts by the raw filter.
pub fn oracle_census_counts(n: usize) -> (usize, usize) {
    let tables = oracle_labeled_tables(n);
    let perms = permutations(n);
    let mut classes: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    for t in &tables {
        let canon = perms.iter().map(|p| relabel(t, p, n)).min().unwrap();
        classes.insert(canon);
    }
    (tables.len(), classes.len())
}

/// Counts homomorphisms by walking every assignment with an odometer; no
/// backtracking, no relation scheduling.
pub fn oracle_count_colorings(p: &QuandlePresentation, f: &FiniteQuandle) -> u64 {
    let gens = p.generators();
    let n = f.order();
    let mut assign = vec![0usize; gens.len()];
    let mut count = 0u64;
    loop {
        let map: BTreeMap<_, _> = gens.iter().cloned().zip(assign.iter().copied()).collect();
        let ok = p.relations().iter().all(|(u, v)| {
            u.evaluate(f, &map).unwrap() == v.evaluate(f, &map).unwrap()
        });
        if ok {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == assign.len() {
                return count;
            }
            assign[i] += 1;
            if assign[i] < n {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

/// Inner-orbit count via union-find on the raw table, independent of the
/// permutation-group machinery.
pub fn oracle_orbit_count(q: &FiniteQuandle) -> usize {
    let n = q.order();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for x in 0..n {
        for y in 0..n {
            let (a, b) = (find(&mut parent, x), find(&mut parent, q.op(x, y)));
            if a != b {
                parent[a] = b;
            }
        }
    }
    (0..n).filter(|&x| find(&mut parent, x) == x).count()
}

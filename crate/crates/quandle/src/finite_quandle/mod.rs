//! Finite quandles as validated Cayley tables, together with the standard
//! group-derived constructions: conjugation quandles, coset quandles, and
//! disjoint unions of coset quandles.

mod census;
mod group;
mod perm;

pub use census::{
    canonical_form, enumerate_quandles, enumerate_quandles_bounded, Catalog, CensusError,
    DEFAULT_CATALOG_BOUND,
};
pub use group::{FiniteGroup, GroupError};
pub use perm::{Perm, PermutationGroup};

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A quandle axiom failure, reporting the first offending tuple in row-major
/// scan order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxiomViolation {
    /// `x * x != x`.
    Idempotence { x: usize },
    /// Column `y` is not a permutation; rows `x1 < x2` collide.
    RightTranslation { y: usize, x1: usize, x2: usize },
    /// `(x*y)*z != (x*z)*(y*z)`.
    Distributivity { x: usize, y: usize, z: usize },
}

impl AxiomViolation {
    /// 1 = idempotence, 2 = right bijectivity, 3 = right self-distributivity.
    pub fn axiom(&self) -> u8 {
        match self {
            AxiomViolation::Idempotence { .. } => 1,
            AxiomViolation::RightTranslation { .. } => 2,
            AxiomViolation::Distributivity { .. } => 3,
        }
    }
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Idempotence { x } => write!(f, "axiom 1: {x} * {x} != {x}"),
            AxiomViolation::RightTranslation { y, x1, x2 } => {
                write!(f, "axiom 2: column y={y} is not bijective (rows {x1}, {x2} collide)")
            }
            AxiomViolation::Distributivity { x, y, z } => {
                write!(f, "axiom 3: ({x}*{y})*{z} != ({x}*{z})*({y}*{z})")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidateError {
    #[error("table is not square: row {row} has {found} entries, expected {order}")]
    NotSquare { row: usize, found: usize, order: usize },
    #[error("table is empty")]
    Empty,
    #[error("entry out of range at ({x}, {y}): {value}")]
    EntryOutOfRange { x: usize, y: usize, value: usize },
    #[error("{0}")]
    Axiom(AxiomViolation),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosetError {
    #[error("element {elem} out of range for group of order {order}")]
    ElementOutOfRange { elem: usize, order: usize },
    #[error("subgroup set is not closed under product and inverse")]
    NotSubgroup,
    #[error("subgroup element {h} does not centralize z")]
    NotCentralizing { h: usize },
}

/// An order-`n` quandle given by its Cayley table `table[x][y] = x * y`.
///
/// Values of this type always satisfy the three quandle axioms; every
/// constructor validates. Labels are metadata and do not take part in
/// equality or ordering.
#[derive(Clone)]
pub struct FiniteQuandle {
    order: usize,
    table: Vec<usize>,
    label: Option<String>,
    dual: OnceLock<Vec<usize>>,
}

/// On-disk form: `{"order": n, "table": [[...], ...], "label": "..."}`.
#[derive(Serialize, Deserialize)]
pub struct CayleyTableFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl FiniteQuandle {
    /// Checks the three quandle axioms and builds the quandle.
    ///
    /// Axioms are scanned in order (idempotence, right bijectivity,
    /// distributivity), each in row-major order, so the reported violation is
    /// deterministic.
    pub fn validate(table: Vec<Vec<usize>>, label: Option<String>) -> Result<Self, ValidateError> {
        let order = table.len();
        if order == 0 {
            return Err(ValidateError::Empty);
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != order {
                return Err(ValidateError::NotSquare { row, found: r.len(), order });
            }
        }
        for (x, r) in table.iter().enumerate() {
            for (y, &v) in r.iter().enumerate() {
                if v >= order {
                    return Err(ValidateError::EntryOutOfRange { x, y, value: v });
                }
            }
        }
        for x in 0..order {
            if table[x][x] != x {
                return Err(ValidateError::Axiom(AxiomViolation::Idempotence { x }));
            }
        }
        for y in 0..order {
            let mut seen = vec![usize::MAX; order];
            for x in 0..order {
                let v = table[x][y];
                if seen[v] != usize::MAX {
                    return Err(ValidateError::Axiom(AxiomViolation::RightTranslation {
                        y,
                        x1: seen[v],
                        x2: x,
                    }));
                }
                seen[v] = x;
            }
        }
        for x in 0..order {
            for y in 0..order {
                for z in 0..order {
                    if table[table[x][y]][z] != table[table[x][z]][table[y][z]] {
                        return Err(ValidateError::Axiom(AxiomViolation::Distributivity {
                            x,
                            y,
                            z,
                        }));
                    }
                }
            }
        }
        Ok(Self::from_checked(
            order,
            table.into_iter().flatten().collect(),
            label,
        ))
    }

    pub(crate) fn from_checked(order: usize, table: Vec<usize>, label: Option<String>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        FiniteQuandle {
            order,
            table,
            label,
            dual: OnceLock::new(),
        }
    }

    /// The trivial quandle `x * y = x` on `n` elements.
    pub fn trivial(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n).flat_map(|x| std::iter::repeat(x).take(n)).collect();
        Self::from_checked(n, table, Some(format!("T{n}")))
    }

    /// The dihedral quandle `i * j = 2j - i (mod n)`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n)
            .flat_map(|i| (0..n).map(move |j| (2 * j + n - i) % n))
            .collect();
        Self::from_checked(n, table, Some(format!("R{n}")))
    }

    /// The conjugation quandle of `g`: `a * b = b^-1 a b`.
    pub fn conj(g: &FiniteGroup) -> Self {
        let n = g.order();
        let table = (0..n)
            .flat_map(|a| (0..n).map(move |b| g.mul(g.mul(g.inv(b), a), b)))
            .collect();
        Self::from_checked(n, table, None)
    }

    /// The coset quandle `(G, H, z)` on the right cosets of `H` with
    /// `Hx * Hy = H z^-1 x y^-1 z y`. Requires `H <= C_G(z)`.
    pub fn coset_quandle(g: &FiniteGroup, h: &[usize], z: usize) -> Result<Self, CosetError> {
        let q = disjoint_union_coset(g, &[(h.to_vec(), z)])?;
        Ok(q.quandle)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// `x * y`.
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    /// `x *^-1 y`: the unique `z` with `z * y = x`.
    #[inline]
    pub fn dual_op(&self, x: usize, y: usize) -> usize {
        let dual = self.dual.get_or_init(|| {
            let mut d = vec![0; self.order * self.order];
            for z in 0..self.order {
                for y in 0..self.order {
                    d[self.op(z, y) * self.order + y] = z;
                }
            }
            d
        });
        dual[x * self.order + y]
    }

    /// Rows of the table, for display and serialization.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|x| self.table[x * self.order..(x + 1) * self.order].to_vec())
            .collect()
    }

    /// Flat row-major table; the sort key used for canonical catalog order.
    pub fn flat_table(&self) -> &[usize] {
        &self.table
    }

    /// The inner automorphism group, generated by the right translations
    /// `S_y : x -> x * y`.
    pub fn inner_group(&self) -> PermutationGroup {
        let gens = (0..self.order)
            .map(|y| {
                Perm::from_images((0..self.order).map(|x| self.op(x, y)).collect())
                    .expect("columns of a quandle are permutations")
            })
            .collect();
        PermutationGroup::new(self.order, gens)
    }

    /// Searches for a relabeling `p` with `p(x * y) = p(x) * p(y)`.
    pub fn is_isomorphic(&self, other: &FiniteQuandle) -> Option<Perm> {
        if self.order != other.order {
            return None;
        }
        let n = self.order;
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if assign_iso(self, other, &mut image, &mut used, 0) {
            Perm::from_images(image)
        } else {
            None
        }
    }
}

fn assign_iso(
    a: &FiniteQuandle,
    b: &FiniteQuandle,
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    next: usize,
) -> bool {
    let n = a.order();
    if next == n {
        return true;
    }
    'cand: for v in 0..n {
        if used[v] {
            continue;
        }
        image[next] = v;
        used[v] = true;
        // check every product among already-mapped elements
        for x in 0..=next {
            for y in 0..=next {
                let xy = a.op(x, y);
                if xy <= next && b.op(image[x], image[y]) != image[xy] {
                    used[v] = false;
                    image[next] = usize::MAX;
                    continue 'cand;
                }
                if xy <= next && image[xy] == usize::MAX {
                    unreachable!("mapped prefix always has images");
                }
            }
        }
        if assign_iso(a, b, image, used, next + 1) {
            return true;
        }
        used[v] = false;
        image[next] = usize::MAX;
    }
    false
}

impl PartialEq for FiniteQuandle {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteQuandle {}

impl Hash for FiniteQuandle {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.table.hash(state);
    }
}

impl PartialOrd for FiniteQuandle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FiniteQuandle {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.order, &self.table).cmp(&(other.order, &other.table))
    }
}

impl fmt::Debug for FiniteQuandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteQuandle(order={}, table={:?}", self.order, self.rows())?;
        if let Some(l) = &self.label {
            write!(f, ", label={l:?}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for FiniteQuandle {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CayleyTableFile {
            order: self.order,
            table: self.rows(),
            label: self.label.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FiniteQuandle {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = CayleyTableFile::deserialize(deserializer)?;
        if raw.order != raw.table.len() {
            return Err(serde::de::Error::custom(format!(
                "declared order {} does not match table size {}",
                raw.order,
                raw.table.len()
            )));
        }
        FiniteQuandle::validate(raw.table, raw.label).map_err(serde::de::Error::custom)
    }
}

/// One part of a disjoint-union coset quandle: which part an element belongs
/// to and the minimal coset representative in the ambient group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CosetLabel {
    pub part: usize,
    pub rep: usize,
}

/// A disjoint union of coset quandles `(G, H_i, z_i)`, keeping the part tag
/// and coset representative of every element.
#[derive(Debug, Clone)]
pub struct CosetQuandle {
    pub quandle: FiniteQuandle,
    pub elements: Vec<CosetLabel>,
}

impl CosetQuandle {
    /// Element index of the coset containing `g` in part `part`.
    pub fn element_of(&self, g: &FiniteGroup, h: &[usize], part: usize, x: usize) -> usize {
        let rep = h.iter().map(|&hh| g.mul(hh, x)).min().expect("nonempty subgroup");
        self.elements
            .iter()
            .position(|l| l.part == part && l.rep == rep)
            .expect("coset present")
    }
}

/// Builds `⊔_i (G, H_i, z_i)` with
/// `H_i x * H_j y = H_i z_i^-1 x y^-1 z_j y`.
///
/// Cosets are canonicalized by their minimal representative; elements are
/// ordered part-major, then by representative.
pub fn disjoint_union_coset(
    g: &FiniteGroup,
    parts: &[(Vec<usize>, usize)],
) -> Result<CosetQuandle, CosetError> {
    let order = g.order();
    for (h, z) in parts {
        if *z >= order {
            return Err(CosetError::ElementOutOfRange { elem: *z, order });
        }
        for &e in h {
            if e >= order {
                return Err(CosetError::ElementOutOfRange { elem: e, order });
            }
        }
        if !g.is_subgroup(h) {
            return Err(CosetError::NotSubgroup);
        }
        for &hh in h {
            if !g.centralizes(hh, *z) {
                return Err(CosetError::NotCentralizing { h: hh });
            }
        }
    }
    let min_rep = |h: &[usize], x: usize| -> usize {
        h.iter().map(|&hh| g.mul(hh, x)).min().expect("nonempty subgroup")
    };
    let mut elements = Vec::new();
    for (pi, (h, _)) in parts.iter().enumerate() {
        let mut reps: Vec<usize> = (0..order).map(|x| min_rep(h, x)).collect();
        reps.sort_unstable();
        reps.dedup();
        elements.extend(reps.into_iter().map(|rep| CosetLabel { part: pi, rep }));
    }
    let index_of = |part: usize, rep: usize| -> usize {
        elements
            .iter()
            .position(|l| l.part == part && l.rep == rep)
            .expect("rep enumerated")
    };
    let n = elements.len();
    let mut table = vec![0; n * n];
    for (i, li) in elements.iter().enumerate() {
        let (hi, zi) = (&parts[li.part].0, parts[li.part].1);
        for (j, lj) in elements.iter().enumerate() {
            let zj = parts[lj.part].1;
            let (x, y) = (li.rep, lj.rep);
            // z_i^-1 x y^-1 z_j y
            let v = g.mul(g.mul(g.mul(g.mul(g.inv(zi), x), g.inv(y)), zj), y);
            table[i * n + j] = index_of(li.part, min_rep(hi, v));
        }
    }
    let rows: Vec<Vec<usize>> = (0..n).map(|x| table[x * n..(x + 1) * n].to_vec()).collect();
    let quandle = FiniteQuandle::validate(rows, None).expect("coset formula yields a quandle");
    Ok(CosetQuandle { quandle, elements })
}

//! The associated (enveloping) group of a quandle presentation, its action
//! back on finite quandles, and the abelianization rank.
//!
//! For a presentation `<X | R>` the associated group is `<e_x | R̄>` where
//! each relation `u = v` contributes the relator `eta(u) eta(v)^-1`: the
//! substitution `x * y -> e_y^-1 e_x e_y` iterated over left-normed words.

use std::collections::HashMap;

use serde::de::Error as _;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finite_quandle::{FiniteQuandle, PermutationGroup};
use crate::presentation::{eta, GeneratorSymbol, GroupWord, QuandlePresentation, Sign};

/// A group presentation: one generator per quandle generator (the name is
/// reused for `e_x`) and a list of freely reduced relators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<GeneratorSymbol>,
    relators: Vec<GroupWord>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<GeneratorSymbol>, relators: Vec<GroupWord>) -> Self {
        debug_assert!(relators.iter().all(|r| {
            r.letters().iter().all(|(g, _)| generators.contains(g))
        }));
        GroupPresentation { generators, relators }
    }

    pub fn generators(&self) -> &[GeneratorSymbol] {
        &self.generators
    }

    pub fn relators(&self) -> &[GroupWord] {
        &self.relators
    }

    /// Sorted view used for structural comparisons.
    pub fn canonical_key(&self) -> (Vec<String>, Vec<Vec<(String, i8)>>) {
        let mut gens: Vec<String> = self.generators.iter().map(|g| g.name().to_owned()).collect();
        gens.sort();
        let mut rels: Vec<Vec<(String, i8)>> =
            self.relators.iter().map(GroupWord::as_pairs).collect();
        rels.sort();
        (gens, rels)
    }
}

/// On-disk form. `relators` uses the letter coding (capitalized first letter
/// = inverse); `relators_list` is the machine-readable form and is the one
/// read back.
#[derive(Serialize, Deserialize)]
struct GroupPresentationData {
    generators: Vec<String>,
    relators: Vec<String>,
    relators_list: Vec<Vec<(String, i8)>>,
}

impl Serialize for GroupPresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GroupPresentationData {
            generators: self.generators.iter().map(|g| g.name().to_owned()).collect(),
            relators: self.relators.iter().map(GroupWord::letter_coded).collect(),
            relators_list: self.relators.iter().map(GroupWord::as_pairs).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupPresentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = GroupPresentationData::deserialize(d)?;
        let generators: Vec<GeneratorSymbol> =
            raw.generators.into_iter().map(GeneratorSymbol::new).collect();
        let mut relators = Vec::with_capacity(raw.relators_list.len());
        for pairs in raw.relators_list {
            let mut w = GroupWord::default();
            for (name, exp) in pairs {
                let sign = Sign::from_i8(exp)
                    .ok_or_else(|| D::Error::custom("exponent must be 1 or -1"))?;
                let g = GeneratorSymbol::new(name);
                if !generators.contains(&g) {
                    return Err(D::Error::custom(format!("undeclared generator {g}")));
                }
                w.push(g, sign);
            }
            relators.push(w);
        }
        Ok(GroupPresentation { generators, relators })
    }
}

/// The associated group of a presented quandle: generators `e_x`, one
/// relator `eta(u) eta(v)^-1` (freely reduced) per relation `u = v`.
pub fn associated_group(p: &QuandlePresentation) -> GroupPresentation {
    let relators = p
        .relations()
        .iter()
        .map(|(u, v)| eta(u).concat(&eta(v).inverse()))
        .collect();
    GroupPresentation::new(p.generators().to_vec(), relators)
}

/// Structural content of the free-product lemma: the associated group of a
/// free product is the disjoint union of the factors' associated groups.
/// Computes both sides independently and compares canonically.
pub fn as_free_product_check(p1: &QuandlePresentation, p2: &QuandlePresentation) -> bool {
    let fp = p1.free_product(p2);
    let whole = associated_group(&fp);
    let mut generators = Vec::new();
    let mut relators = Vec::new();
    for factor in fp.factor_presentations() {
        let part = associated_group(&factor);
        generators.extend(part.generators().to_vec());
        relators.extend(part.relators().to_vec());
    }
    let union = GroupPresentation::new(generators, relators);
    whole.canonical_key() == union.canonical_key()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActError {
    #[error("letter {0} does not name an element (expected a decimal index)")]
    UnknownElement(String),
    #[error("element {elem} out of range for quandle of order {order}")]
    ElementOutOfRange { elem: usize, order: usize },
}

/// The right action of the associated group on the quandle: `x . e_y = x * y`.
/// Letters name elements by decimal index; inverse letters act by the dual
/// operation.
pub fn act(q: &FiniteQuandle, x: usize, w: &GroupWord) -> Result<usize, ActError> {
    let mut acc = x;
    for (g, sign) in w.letters() {
        let y: usize = g
            .name()
            .parse()
            .map_err(|_| ActError::UnknownElement(g.name().to_owned()))?;
        if y >= q.order() {
            return Err(ActError::ElementOutOfRange { elem: y, order: q.order() });
        }
        acc = match sign {
            Sign::Pos => q.op(acc, y),
            Sign::Neg => q.dual_op(acc, y),
        };
    }
    Ok(acc)
}

/// The image of `psi: As(X) -> Inn(X)`, `e_x -> S_x`; identical to the inner
/// automorphism group and exposed as the finite side of the central
/// extension carried by a finite quandle.
pub fn psi_image(q: &FiniteQuandle) -> PermutationGroup {
    q.inner_group()
}

/// Abelianization rank of the associated group of a presentation.
///
/// Abelianizing `e_{x*y} = e_y^-1 e_x e_y` collapses `eta` images to their
/// head generator, so each relation `u = v` merges the classes of the two
/// heads; the rank is the number of classes left.
pub fn abelianization_rank(p: &QuandlePresentation) -> usize {
    let index: HashMap<&GeneratorSymbol, usize> = p
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| (g, i))
        .collect();
    let mut uf = UnionFind::new(p.generators().len());
    for (u, v) in p.relations() {
        uf.union(index[u.head()], index[v.head()]);
    }
    uf.class_count()
}

/// Abelianization rank of the associated group of a finite quandle: the
/// number of orbits of the inner action.
pub fn abelianization_rank_finite(q: &FiniteQuandle) -> usize {
    q.inner_group().orbits().len()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn class_count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}

//! Permutations of `{0, …, degree-1}` and finitely generated permutation groups.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

/// A permutation stored as its image vector: `map[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    map: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            map: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its image vector, checking bijectivity.
    pub fn from_images(map: Vec<usize>) -> Option<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return None;
            }
            seen[v] = true;
        }
        Some(Perm { map })
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    /// `self` then `other`: `(self.then(other))(x) = other(self(x))`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm {
            map: self.map.iter().map(|&v| other.map[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Perm { map: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.map)
    }
}

/// A permutation group given by generators; the element list is closed lazily
/// by breadth-first products and memoized.
#[derive(Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: OnceLock<Vec<Perm>>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Self {
        debug_assert!(generators.iter().all(|g| g.degree() == degree));
        PermutationGroup {
            degree,
            generators,
            elements: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// All elements, sorted, closed under products of generators and inverses.
    pub fn elements(&self) -> &[Perm] {
        self.elements.get_or_init(|| {
            let mut seen: HashSet<Perm> = HashSet::new();
            let id = Perm::identity(self.degree);
            seen.insert(id.clone());
            let mut frontier = vec![id];
            // Generators of a finite group close without explicit inverses,
            // but include them so partial budgets are never an issue.
            let mut gens = self.generators.clone();
            gens.extend(self.generators.iter().map(Perm::inverse));
            while let Some(p) = frontier.pop() {
                for g in &gens {
                    let q = p.then(g);
                    if seen.insert(q.clone()) {
                        frontier.push(q);
                    }
                }
            }
            let mut out: Vec<Perm> = seen.into_iter().collect();
            out.sort();
            out
        })
    }

    pub fn order(&self) -> usize {
        self.elements().len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements().binary_search(p).is_ok()
    }

    /// Orbits of the natural action on `{0, …, degree-1}`, each sorted,
    /// ordered by smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut orbits = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                for g in &self.generators {
                    for y in [g.apply(x), g.inverse().apply(x)] {
                        if !seen[y] {
                            seen[y] = true;
                            orbit.push(y);
                        }
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }
}

//! Finite groups as multiplication tables, the carrier for the group-derived
//! quandle constructions.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::perm::Perm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is not {order}x{order}")]
    BadShape { order: usize },
    #[error("table entry out of range at ({x}, {y})")]
    EntryOutOfRange { x: usize, y: usize },
    #[error("associativity fails at ({x}, {y}, {z})")]
    NotAssociative { x: usize, y: usize, z: usize },
    #[error("element {id} is not a two-sided identity")]
    BadIdentity { id: usize },
    #[error("element {x} has no two-sided inverse {inv}")]
    BadInverse { x: usize, inv: usize },
}

/// A finite group: multiplication table, inverse table, identity element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupData", into = "GroupData")]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    id: usize,
}

/// On-disk form: `{"order": n, "mul": [[...]], "inv": [...], "id": e}`.
#[derive(Serialize, Deserialize)]
struct GroupData {
    order: usize,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    id: usize,
}

impl TryFrom<GroupData> for FiniteGroup {
    type Error = GroupError;
    fn try_from(d: GroupData) -> Result<Self, GroupError> {
        FiniteGroup::new(d.order, d.mul, d.inv, d.id)
    }
}

impl From<FiniteGroup> for GroupData {
    fn from(g: FiniteGroup) -> GroupData {
        GroupData {
            order: g.order,
            mul: g.mul,
            inv: g.inv,
            id: g.id,
        }
    }
}

impl FiniteGroup {
    /// Validates the group axioms on the tables.
    pub fn new(
        order: usize,
        mul: Vec<Vec<usize>>,
        inv: Vec<usize>,
        id: usize,
    ) -> Result<Self, GroupError> {
        if order == 0 || mul.len() != order || inv.len() != order || id >= order {
            return Err(GroupError::BadShape { order });
        }
        for (x, row) in mul.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::BadShape { order });
            }
            for (y, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(GroupError::EntryOutOfRange { x, y });
                }
            }
        }
        for x in 0..order {
            if mul[id][x] != x || mul[x][id] != x {
                return Err(GroupError::BadIdentity { id });
            }
            let i = inv[x];
            if i >= order || mul[x][i] != id || mul[i][x] != id {
                return Err(GroupError::BadInverse { x, inv: i });
            }
        }
        for x in 0..order {
            for y in 0..order {
                for z in 0..order {
                    if mul[mul[x][y]][z] != mul[x][mul[y][z]] {
                        return Err(GroupError::NotAssociative { x, y, z });
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order,
            mul,
            inv,
            id,
        })
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let inv = (0..n).map(|a| (n - a) % n).collect();
        FiniteGroup::new(n, mul, inv, 0).expect("cyclic tables are a group")
    }

    /// Dihedral group of order `2n`: rotations `0..n`, reflections `n..2n`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let order = 2 * n;
        let mut mul = vec![vec![0; order]; order];
        for a in 0..order {
            for b in 0..order {
                let (ra, fa) = (a % n, a >= n);
                let (rb, fb) = (b % n, b >= n);
                // r^a f^e * r^b f^e' with f r = r^-1 f
                let rot = if fa { (ra + n - rb) % n } else { (ra + rb) % n };
                mul[a][b] = if fa ^ fb { rot + n } else { rot };
            }
        }
        let mut inv = vec![0; order];
        for a in 0..order {
            inv[a] = if a < n { (n - a) % n } else { a };
        }
        FiniteGroup::new(order, mul, inv, 0).expect("dihedral tables are a group")
    }

    /// Symmetric group on `n` points; elements are the permutations of
    /// `{0,…,n-1}` in lexicographic order of their image vectors.
    pub fn symmetric(n: usize) -> Self {
        let perms = all_perms(n);
        let index =
            |p: &Perm| perms.binary_search(p).expect("closure of S_n enumerates itself");
        let order = perms.len();
        let mul = perms
            .iter()
            .map(|a| perms.iter().map(|b| index(&a.then(b))).collect())
            .collect();
        let inv = perms.iter().map(|a| index(&a.inverse())).collect();
        let id = index(&Perm::identity(n));
        FiniteGroup::new(order, mul, inv, id).expect("symmetric tables are a group")
    }

    /// Index of a permutation in `symmetric(n)`'s element order.
    pub fn symmetric_index(n: usize, images: &[usize]) -> Option<usize> {
        let p = Perm::from_images(images.to_vec())?;
        all_perms(n).binary_search(&p).ok()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// Cyclic subgroup generated by `z`, sorted.
    pub fn cyclic_subgroup(&self, z: usize) -> Vec<usize> {
        let mut elems = vec![self.id];
        let mut cur = z;
        while cur != self.id {
            elems.push(cur);
            cur = self.mul(cur, z);
        }
        elems.sort_unstable();
        elems
    }

    pub fn centralizes(&self, h: usize, z: usize) -> bool {
        self.mul(h, z) == self.mul(z, h)
    }

    /// Checks that `set` (sorted or not) is closed under product and inverse
    /// and contains the identity.
    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let members: Vec<bool> = {
            let mut m = vec![false; self.order];
            for &x in set {
                if x >= self.order {
                    return false;
                }
                m[x] = true;
            }
            m
        };
        if !members[self.id] {
            return false;
        }
        set.iter().all(|&a| {
            members[self.inv(a)] && set.iter().all(|&b| members[self.mul(a, b)])
        })
    }

    /// Checks `phi` (given as an image vector into `target`) on the tables.
    /// Returns the first failing pair if any.
    pub fn check_homomorphism(
        &self,
        target: &FiniteGroup,
        phi: &[usize],
    ) -> Result<(), (usize, usize)> {
        assert_eq!(phi.len(), self.order);
        for x in 0..self.order {
            for y in 0..self.order {
                if phi[self.mul(x, y)] != target.mul(phi[x], phi[y]) {
                    return Err((x, y));
                }
            }
        }
        Ok(())
    }
}

fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut images: Vec<usize> = (0..n).collect();
    permute(&mut images, 0, &mut out);
    out.sort();
    out
}

fn permute(images: &mut Vec<usize>, k: usize, out: &mut Vec<Perm>) {
    if k == images.len() {
        out.push(Perm::from_images(images.clone()).unwrap());
        return;
    }
    for i in k..images.len() {
        images.swap(k, i);
        permute(images, k + 1, out);
        images.swap(k, i);
    }
}

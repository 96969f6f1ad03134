//! Braid words and their closures.
//!
//! Letters are `s<k>` and `s<k>^-1` for the Artin generator crossing strand
//! positions `k-1` and `k` (1-based `k`). In a positive letter the strand at
//! position `k-1` passes over; its inverse passes it under.

use thiserror::Error;

use super::{Crossing, LinkDiagram};
use crate::presentation::Sign;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("empty braid word")]
    EmptyBraid,
    #[error("bad braid token {token:?} at byte {position}")]
    SyntaxError { position: usize, token: String },
    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
}

/// A word in the braid group on `strands` strands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<(usize, Sign)>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<(usize, Sign)>) -> Result<Self, BraidError> {
        if strands < 1 {
            return Err(BraidError::EmptyBraid);
        }
        for &(k, _) in &letters {
            if k < 1 || k >= strands {
                return Err(BraidError::IndexOutOfRange { index: k, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(usize, Sign)] {
        &self.letters
    }

    /// Where each strand ends: `permutation()[i]` is the final position of
    /// the strand starting at position `i`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut pos_of_strand: Vec<usize> = (0..self.strands).collect();
        let mut strand_at: Vec<usize> = (0..self.strands).collect();
        for &(k, _) in &self.letters {
            let (i, j) = (k - 1, k);
            strand_at.swap(i, j);
            pos_of_strand[strand_at[i]] = i;
            pos_of_strand[strand_at[j]] = j;
        }
        pos_of_strand
    }
}

/// Parses whitespace-separated `s<k>` / `s<k>^-1` tokens. The strand count
/// is `max k + 1` unless given explicitly.
pub fn parse_braid(text: &str, strands: Option<usize>) -> Result<BraidWord, BraidError> {
    let mut letters = Vec::new();
    let mut max_index = 0usize;
    let mut offset = 0usize;
    for token in text.split_whitespace() {
        let position = text[offset..]
            .find(token)
            .map(|p| offset + p)
            .unwrap_or(offset);
        offset = position + token.len();
        let bad = || BraidError::SyntaxError { position, token: token.to_owned() };
        let rest = token.strip_prefix('s').ok_or_else(bad)?;
        let (digits, sign) = match rest.strip_suffix("^-1") {
            Some(d) => (d, Sign::Neg),
            None => (rest, Sign::Pos),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let k: usize = digits.parse().map_err(|_| bad())?;
        if k == 0 {
            return Err(bad());
        }
        max_index = max_index.max(k);
        letters.push((k, sign));
    }
    if letters.is_empty() {
        return Err(BraidError::EmptyBraid);
    }
    let strands = strands.unwrap_or(max_index + 1);
    BraidWord::new(strands, letters)
}

/// Closes the braid into a link diagram. Arcs are segmented at
/// under-crossings; components come from the cycles of the braid's
/// underlying permutation.
pub fn braid_closure(b: &BraidWord) -> LinkDiagram {
    let s = b.strands();
    // arc and strand currently occupying each position
    let mut pos_arc: Vec<usize> = (0..s).collect();
    let mut pos_strand: Vec<usize> = (0..s).collect();
    let mut arc_strand: Vec<usize> = (0..s).collect();
    let mut raw_crossings: Vec<(usize, usize, usize, Sign)> = Vec::new();
    for &(k, sign) in b.letters() {
        let (i, j) = (k - 1, k);
        let (a, bb) = (pos_arc[i], pos_arc[j]);
        let fresh = arc_strand.len();
        match sign {
            Sign::Pos => {
                // strand at i goes over and lands on position j
                raw_crossings.push((a, bb, fresh, Sign::Pos));
                arc_strand.push(pos_strand[j]);
                pos_arc[i] = fresh;
                pos_arc[j] = a;
            }
            Sign::Neg => {
                // strand at i goes under and lands on position j
                raw_crossings.push((bb, a, fresh, Sign::Neg));
                arc_strand.push(pos_strand[i]);
                pos_arc[j] = fresh;
                pos_arc[i] = bb;
            }
        }
        pos_strand.swap(i, j);
    }

    // closure: the final arc at position p continues into the initial arc p
    let mut uf = UnionFind::new(arc_strand.len());
    for p in 0..s {
        uf.union(pos_arc[p], p);
    }
    let mut reps: Vec<usize> = (0..arc_strand.len()).map(|a| uf.find(a)).collect();
    let mut sorted = reps.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let index_of = |rep: usize| sorted.binary_search(&rep).expect("rep present");
    for r in reps.iter_mut() {
        *r = index_of(*r);
    }
    let arcs = sorted.len();
    let crossings: Vec<Crossing> = raw_crossings
        .iter()
        .map(|&(over, under_in, under_out, sign)| Crossing {
            over: reps[over],
            under_in: reps[under_in],
            under_out: reps[under_out],
            sign,
        })
        .collect();

    // strand cycles -> components
    let perm = b.permutation();
    let mut cycle_of = vec![usize::MAX; s];
    let mut cycles = 0usize;
    for start in 0..s {
        if cycle_of[start] != usize::MAX {
            continue;
        }
        let mut cur = start;
        while cycle_of[cur] == usize::MAX {
            cycle_of[cur] = cycles;
            cur = perm[cur];
        }
        cycles += 1;
    }
    let mut components: Vec<Vec<usize>> = vec![Vec::new(); cycles];
    for (arc_raw, &strand) in arc_strand.iter().enumerate() {
        let arc = reps[arc_raw];
        let comp = &mut components[cycle_of[strand]];
        if !comp.contains(&arc) {
            comp.push(arc);
        }
    }
    for comp in &mut components {
        comp.sort_unstable();
    }

    LinkDiagram::new(arcs, crossings, components).expect("braid closures are consistent")
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
}

//! The bounded equality prover: bidirectional breadth-first search over the
//! rewrite graph of left-normed words.
//!
//! Nodes are words of tail length at most `max_len`. Moves are
//!   * cancellation / insertion of adjacent inverse pairs,
//!   * head idempotency in both directions,
//!   * the distributivity shuffle `(w *^e y) *^f z <-> (w *^f z) *^e (y *^f z)`
//!     where the compound letter `y *^f z` is resolved through a relation in
//!     Cayley shape (`generator *^± generator = generator`),
//!   * relation substitution at the head, and tail-letter expansion or
//!     contraction through a Cayley relation.
//!
//! Both search sides are seeded with the full reduction chain of their word,
//! so pairs with a common reduced form are proved without expanding the
//! graph. A successful search returns a move-by-move trace; absence only
//! means the budget ran out.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::Budget;
use crate::presentation::{GeneratorSymbol, QuandlePresentation, QuandleWord, Sign};

/// One rewrite step. Positions index the tail. `relation` indexes
/// `QuandlePresentation::relations`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Move {
    /// Remove the inverse pair at `pos`, `pos + 1`.
    CancelPair { pos: usize },
    /// Insert `(gen, sign), (gen, -sign)` at `pos`.
    InsertPair { pos: usize, gen: String, sign: i8 },
    /// Remove the leading tail letter, which equals the head.
    StripHead,
    /// Insert `(head, sign)` in front of the tail.
    GrowHead { sign: i8 },
    /// `… (y,e) (z,f) … -> … (z,f) (c,e) …` at `pos` via `y *^f z = c`.
    ShuffleRight { pos: usize, relation: usize },
    /// Inverse of `ShuffleRight` at the same position.
    ShuffleLeft { pos: usize, relation: usize },
    /// Replace the prefix matching one side of a relation by the other side.
    /// `reversed` swaps which side is matched.
    RewritePrefix { relation: usize, reversed: bool },
    /// `… (c,e) … -> … (h,-s) (g,e) (h,s) …` at `pos` via `g *^s h = c`.
    ExpandLetter { pos: usize, relation: usize },
    /// Inverse of `ExpandLetter` at the same position.
    ContractLetters { pos: usize, relation: usize },
}

/// A replayable derivation: `words[0]` is the start, `moves[i]` transforms
/// `words[i]` into `words[i+1]`, and the last word is the goal.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivationTrace {
    words: Vec<QuandleWord>,
    moves: Vec<Move>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReplayError {
    #[error("trace is empty")]
    Empty,
    #[error("step {step}: move does not apply")]
    BadMove { step: usize },
    #[error("step {step}: move produced a different word")]
    WrongResult { step: usize },
}

impl DerivationTrace {
    pub fn start(&self) -> &QuandleWord {
        self.words.first().expect("trace has at least one word")
    }

    pub fn end(&self) -> &QuandleWord {
        self.words.last().expect("trace has at least one word")
    }

    pub fn words(&self) -> &[QuandleWord] {
        &self.words
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Re-applies every move and checks each intermediate word.
    pub fn replay(&self, p: &QuandlePresentation) -> Result<(), ReplayError> {
        if self.words.is_empty() || self.words.len() != self.moves.len() + 1 {
            return Err(ReplayError::Empty);
        }
        let ctx = Context::new(p);
        for (step, mv) in self.moves.iter().enumerate() {
            let cur = ctx.compile(&self.words[step]);
            let next = ctx.compile(&self.words[step + 1]);
            let applied = ctx
                .apply_move(&cur, mv)
                .ok_or(ReplayError::BadMove { step })?;
            if applied != next {
                return Err(ReplayError::WrongResult { step });
            }
        }
        Ok(())
    }
}

impl Serialize for DerivationTrace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Step<'a> {
            word: String,
            #[serde(skip_serializing_if = "Option::is_none")]
            r#move: Option<&'a Move>,
        }
        let steps: Vec<Step> = self
            .words
            .iter()
            .enumerate()
            .map(|(i, w)| Step {
                word: w.to_string(),
                r#move: if i == 0 { None } else { Some(&self.moves[i - 1]) },
            })
            .collect();
        steps.serialize(s)
    }
}

impl fmt::Display for DerivationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.words[0])?;
        for (mv, w) in self.moves.iter().zip(&self.words[1..]) {
            write!(f, "  --{mv:?}-->  {w}")?;
        }
        Ok(())
    }
}

/// Interned word: generators as dense indices.
#[derive(Clone, PartialEq, Eq, Hash)]
struct CWord {
    head: u16,
    tail: Vec<(u16, Sign)>,
}

/// Compact move used inside the search; converted to [`Move`] only when a
/// trace is reconstructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CMove {
    CancelPair { pos: u32 },
    InsertPair { pos: u32, gen: u16, sign: Sign },
    StripHead,
    GrowHead { sign: Sign },
    ShuffleRight { pos: u32, relation: u32 },
    ShuffleLeft { pos: u32, relation: u32 },
    RewritePrefix { relation: u32, reversed: bool },
    ExpandLetter { pos: u32, relation: u32 },
    ContractLetters { pos: u32, relation: u32 },
}

/// A Cayley-shaped relation `g *^s h = c`.
#[derive(Clone, Copy)]
struct Cayley {
    g: u16,
    s: Sign,
    h: u16,
    c: u16,
    relation: usize,
}

struct Context {
    gens: Vec<GeneratorSymbol>,
    relations: Vec<(CWord, CWord)>,
    // (y, f, z) -> candidates with g=y, s=f, h=z
    fwd: HashMap<(u16, Sign, u16), Vec<Cayley>>,
    // (c, f, z) -> candidates with that result and right letter
    inv: HashMap<(u16, Sign, u16), Vec<Cayley>>,
    // c -> candidates with that result
    by_result: HashMap<u16, Vec<Cayley>>,
}

impl Context {
    fn new(p: &QuandlePresentation) -> Context {
        let gens: Vec<GeneratorSymbol> = p.generators().to_vec();
        let index: HashMap<&GeneratorSymbol, u16> = gens
            .iter()
            .enumerate()
            .map(|(i, g)| (g, i as u16))
            .collect();
        let compile = |w: &QuandleWord| CWord {
            head: index[w.head()],
            tail: w.tail().iter().map(|(g, s)| (index[g], *s)).collect(),
        };
        let relations: Vec<(CWord, CWord)> = p
            .relations()
            .iter()
            .map(|(u, v)| (compile(u), compile(v)))
            .collect();
        let mut cayley = Vec::new();
        for (i, (u, v)) in relations.iter().enumerate() {
            let mut add = |compound: &CWord, bare: &CWord| {
                if compound.tail.len() == 1 && bare.tail.is_empty() {
                    cayley.push(Cayley {
                        g: compound.head,
                        s: compound.tail[0].1,
                        h: compound.tail[0].0,
                        c: bare.head,
                        relation: i,
                    });
                }
            };
            add(u, v);
            add(v, u);
        }
        let mut fwd: HashMap<(u16, Sign, u16), Vec<Cayley>> = HashMap::new();
        let mut inv: HashMap<(u16, Sign, u16), Vec<Cayley>> = HashMap::new();
        let mut by_result: HashMap<u16, Vec<Cayley>> = HashMap::new();
        for &c in &cayley {
            fwd.entry((c.g, c.s, c.h)).or_default().push(c);
            inv.entry((c.c, c.s, c.h)).or_default().push(c);
            by_result.entry(c.c).or_default().push(c);
        }
        Context { gens, relations, fwd, inv, by_result }
    }

    fn compile(&self, w: &QuandleWord) -> CWord {
        let index = |g: &GeneratorSymbol| {
            self.gens
                .iter()
                .position(|x| x == g)
                .expect("word symbols are declared") as u16
        };
        CWord {
            head: index(w.head()),
            tail: w.tail().iter().map(|(g, s)| (index(g), *s)).collect(),
        }
    }

    fn name(&self, w: &CWord) -> QuandleWord {
        let mut out = QuandleWord::generator(self.gens[w.head as usize].clone());
        for &(g, s) in &w.tail {
            out.push(self.gens[g as usize].clone(), s);
        }
        out
    }

    /// Applies one move, if it matches the word.
    fn apply_move(&self, w: &CWord, mv: &Move) -> Option<CWord> {
        let mut out = w.clone();
        match *mv {
            Move::CancelPair { pos } => {
                let (a, b) = (w.tail.get(pos)?, w.tail.get(pos + 1)?);
                if a.0 != b.0 || a.1 != b.1.flip() {
                    return None;
                }
                out.tail.drain(pos..pos + 2);
            }
            Move::InsertPair { pos, ref gen, sign } => {
                if pos > w.tail.len() {
                    return None;
                }
                let g = self.gens.iter().position(|x| x.name() == gen)? as u16;
                let s = Sign::from_i8(sign)?;
                out.tail.splice(pos..pos, [(g, s), (g, s.flip())]);
            }
            Move::StripHead => {
                if w.tail.first()?.0 != w.head {
                    return None;
                }
                out.tail.remove(0);
            }
            Move::GrowHead { sign } => {
                out.tail.insert(0, (w.head, Sign::from_i8(sign)?));
            }
            Move::ShuffleRight { pos, relation } => {
                let &(y, e) = w.tail.get(pos)?;
                let &(z, f) = w.tail.get(pos + 1)?;
                let c = self
                    .fwd
                    .get(&(y, f, z))?
                    .iter()
                    .find(|c| c.relation == relation)?;
                out.tail[pos] = (z, f);
                out.tail[pos + 1] = (c.c, e);
            }
            Move::ShuffleLeft { pos, relation } => {
                let &(z, f) = w.tail.get(pos)?;
                let &(c, e) = w.tail.get(pos + 1)?;
                let cay = self
                    .inv
                    .get(&(c, f, z))?
                    .iter()
                    .find(|c| c.relation == relation)?;
                out.tail[pos] = (cay.g, e);
                out.tail[pos + 1] = (z, f);
            }
            Move::RewritePrefix { relation, reversed } => {
                let (lhs, rhs) = self.relations.get(relation)?;
                let (from, to) = if reversed { (rhs, lhs) } else { (lhs, rhs) };
                if w.head != from.head
                    || w.tail.len() < from.tail.len()
                    || w.tail[..from.tail.len()] != from.tail[..]
                {
                    return None;
                }
                out.head = to.head;
                out.tail = to
                    .tail
                    .iter()
                    .copied()
                    .chain(w.tail[from.tail.len()..].iter().copied())
                    .collect();
            }
            Move::ExpandLetter { pos, relation } => {
                let &(c, e) = w.tail.get(pos)?;
                let cay = self
                    .by_result
                    .get(&c)?
                    .iter()
                    .find(|x| x.relation == relation)?;
                out.tail.splice(
                    pos..pos + 1,
                    [(cay.h, cay.s.flip()), (cay.g, e), (cay.h, cay.s)],
                );
            }
            Move::ContractLetters { pos, relation } => {
                let &(h1, s1) = w.tail.get(pos)?;
                let &(g, e) = w.tail.get(pos + 1)?;
                let &(h2, s2) = w.tail.get(pos + 2)?;
                if h1 != h2 || s1 != s2.flip() {
                    return None;
                }
                let cay = self
                    .fwd
                    .get(&(g, s2, h2))?
                    .iter()
                    .find(|x| x.relation == relation)?;
                out.tail.splice(pos..pos + 3, [(cay.c, e)]);
            }
        }
        Some(out)
    }

    /// All moves applicable to `w` under the length bound.
    fn successors(&self, w: &CWord, max_len: usize, out: &mut Vec<(CWord, CMove)>) {
        out.clear();
        let len = w.tail.len();
        // cancellations
        for pos in 0..len.saturating_sub(1) {
            if w.tail[pos].0 == w.tail[pos + 1].0 && w.tail[pos].1 == w.tail[pos + 1].1.flip() {
                let mut t = w.clone();
                t.tail.drain(pos..pos + 2);
                out.push((t, CMove::CancelPair { pos: pos as u32 }));
            }
        }
        // head idempotency
        if len > 0 && w.tail[0].0 == w.head {
            let mut t = w.clone();
            t.tail.remove(0);
            out.push((t, CMove::StripHead));
        }
        if len + 1 <= max_len {
            for sign in [Sign::Pos, Sign::Neg] {
                let mut t = w.clone();
                t.tail.insert(0, (w.head, sign));
                out.push((t, CMove::GrowHead { sign }));
            }
        }
        // insertions
        if len + 2 <= max_len {
            for pos in 0..=len {
                for g in 0..self.gens.len() as u16 {
                    for sign in [Sign::Pos, Sign::Neg] {
                        let mut t = w.clone();
                        t.tail.splice(pos..pos, [(g, sign), (g, sign.flip())]);
                        out.push((t, CMove::InsertPair { pos: pos as u32, gen: g, sign }));
                    }
                }
            }
        }
        // distributivity shuffles
        for pos in 0..len.saturating_sub(1) {
            let (y, e) = w.tail[pos];
            let (z, f) = w.tail[pos + 1];
            if let Some(cands) = self.fwd.get(&(y, f, z)) {
                for c in cands {
                    let mut t = w.clone();
                    t.tail[pos] = (z, f);
                    t.tail[pos + 1] = (c.c, e);
                    out.push((
                        t,
                        CMove::ShuffleRight { pos: pos as u32, relation: c.relation as u32 },
                    ));
                }
            }
            // here (y, e) plays the role of (z, f) in the left shuffle
            let (z2, f2) = (y, e);
            let (c2, e2) = (z, f);
            if let Some(cands) = self.inv.get(&(c2, f2, z2)) {
                for c in cands {
                    let mut t = w.clone();
                    t.tail[pos] = (c.g, e2);
                    t.tail[pos + 1] = (z2, f2);
                    out.push((
                        t,
                        CMove::ShuffleLeft { pos: pos as u32, relation: c.relation as u32 },
                    ));
                }
            }
        }
        // relation substitution at the head
        for (i, (lhs, rhs)) in self.relations.iter().enumerate() {
            for (from, to, reversed) in [(lhs, rhs, false), (rhs, lhs, true)] {
                if w.head == from.head
                    && w.tail.len() >= from.tail.len()
                    && w.tail[..from.tail.len()] == from.tail[..]
                    && to.tail.len() + (w.tail.len() - from.tail.len()) <= max_len
                {
                    let mut t = w.clone();
                    t.head = to.head;
                    t.tail = to
                        .tail
                        .iter()
                        .copied()
                        .chain(w.tail[from.tail.len()..].iter().copied())
                        .collect();
                    out.push((t, CMove::RewritePrefix { relation: i as u32, reversed }));
                }
            }
        }
        // tail-letter expansion and contraction through Cayley relations
        if len + 2 <= max_len {
            for pos in 0..len {
                let (c, e) = w.tail[pos];
                if let Some(cands) = self.by_result.get(&c) {
                    for cay in cands {
                        let mut t = w.clone();
                        t.tail.splice(
                            pos..pos + 1,
                            [(cay.h, cay.s.flip()), (cay.g, e), (cay.h, cay.s)],
                        );
                        out.push((
                            t,
                            CMove::ExpandLetter { pos: pos as u32, relation: cay.relation as u32 },
                        ));
                    }
                }
            }
        }
        for pos in 0..len.saturating_sub(2) {
            let (h1, s1) = w.tail[pos];
            let (g, e) = w.tail[pos + 1];
            let (h2, s2) = w.tail[pos + 2];
            if h1 == h2 && s1 == s2.flip() {
                if let Some(cands) = self.fwd.get(&(g, s2, h2)) {
                    for cay in cands {
                        let mut t = w.clone();
                        t.tail.splice(pos..pos + 3, [(cay.c, e)]);
                        out.push((
                            t,
                            CMove::ContractLetters {
                                pos: pos as u32,
                                relation: cay.relation as u32,
                            },
                        ));
                    }
                }
            }
        }
    }

    /// Inverts `mv` applied at `from`, yielding the move that undoes it.
    fn invert(&self, mv: CMove, from: &CWord) -> CMove {
        match mv {
            CMove::CancelPair { pos } => CMove::InsertPair {
                pos,
                gen: from.tail[pos as usize].0,
                sign: from.tail[pos as usize].1,
            },
            CMove::InsertPair { pos, .. } => CMove::CancelPair { pos },
            CMove::StripHead => CMove::GrowHead { sign: from.tail[0].1 },
            CMove::GrowHead { .. } => CMove::StripHead,
            CMove::ShuffleRight { pos, relation } => CMove::ShuffleLeft { pos, relation },
            CMove::ShuffleLeft { pos, relation } => CMove::ShuffleRight { pos, relation },
            CMove::RewritePrefix { relation, reversed } => {
                CMove::RewritePrefix { relation, reversed: !reversed }
            }
            CMove::ExpandLetter { pos, relation } => CMove::ContractLetters { pos, relation },
            CMove::ContractLetters { pos, relation } => CMove::ExpandLetter { pos, relation },
        }
    }

    /// Converts a search move into the public, name-carrying form.
    fn to_public(&self, mv: CMove) -> Move {
        match mv {
            CMove::CancelPair { pos } => Move::CancelPair { pos: pos as usize },
            CMove::InsertPair { pos, gen, sign } => Move::InsertPair {
                pos: pos as usize,
                gen: self.gens[gen as usize].name().to_owned(),
                sign: sign.as_i8(),
            },
            CMove::StripHead => Move::StripHead,
            CMove::GrowHead { sign } => Move::GrowHead { sign: sign.as_i8() },
            CMove::ShuffleRight { pos, relation } => Move::ShuffleRight {
                pos: pos as usize,
                relation: relation as usize,
            },
            CMove::ShuffleLeft { pos, relation } => Move::ShuffleLeft {
                pos: pos as usize,
                relation: relation as usize,
            },
            CMove::RewritePrefix { relation, reversed } => Move::RewritePrefix {
                relation: relation as usize,
                reversed,
            },
            CMove::ExpandLetter { pos, relation } => Move::ExpandLetter {
                pos: pos as usize,
                relation: relation as usize,
            },
            CMove::ContractLetters { pos, relation } => Move::ContractLetters {
                pos: pos as usize,
                relation: relation as usize,
            },
        }
    }
}

/// The reduction chain of `w` as (words, moves): adjacent inverse pairs are
/// cancelled and leading head letters stripped until reduced.
fn reduction_chain(w: &CWord) -> (Vec<CWord>, Vec<CMove>) {
    let mut words = vec![w.clone()];
    let mut moves = Vec::new();
    loop {
        let cur = words.last().unwrap();
        let cancel = (0..cur.tail.len().saturating_sub(1)).find(|&i| {
            cur.tail[i].0 == cur.tail[i + 1].0 && cur.tail[i].1 == cur.tail[i + 1].1.flip()
        });
        if let Some(pos) = cancel {
            let mut t = cur.clone();
            t.tail.drain(pos..pos + 2);
            moves.push(CMove::CancelPair { pos: pos as u32 });
            words.push(t);
            continue;
        }
        if cur.tail.first().is_some_and(|&(g, _)| g == cur.head) {
            let mut t = cur.clone();
            t.tail.remove(0);
            moves.push(CMove::StripHead);
            words.push(t);
            continue;
        }
        return (words, moves);
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Forward,
    Backward,
}

type ParentMap = HashMap<CWord, (Side, Option<(CWord, CMove)>)>;

/// A meet node is the only word with parents on both sides; the second entry
/// lives under a marker key (`u16::MAX` never names a generator).
fn marker_key(w: &CWord) -> CWord {
    let mut t = w.clone();
    t.tail.push((u16::MAX, Sign::Pos));
    t
}

fn parent_of(seen: &ParentMap, w: &CWord, side: Side) -> Option<(CWord, CMove)> {
    match seen.get(w) {
        Some((s, e)) if *s == side => e.clone(),
        _ => match seen.get(&marker_key(w)) {
            Some((s, e)) if *s == side => e.clone(),
            _ => None,
        },
    }
}

/// Bidirectional BFS for a derivation `u -> v`. Returns the trace (if found)
/// and the number of node expansions consumed.
pub fn prove_equal(
    p: &QuandlePresentation,
    u: &QuandleWord,
    v: &QuandleWord,
    budget: &Budget,
) -> (Option<DerivationTrace>, u64) {
    let ctx = Context::new(p);
    let cu = ctx.compile(u);
    let cv = ctx.compile(v);

    let mut seen: ParentMap = HashMap::new();
    let mut fwd_queue: VecDeque<CWord> = VecDeque::new();
    let mut bwd_queue: VecDeque<CWord> = VecDeque::new();
    let mut meet: Option<CWord> = None;

    // seed the forward side with u's reduction chain
    {
        let (words, moves) = reduction_chain(&cu);
        seen.insert(words[0].clone(), (Side::Forward, None));
        fwd_queue.push_back(words[0].clone());
        for (i, &mv) in moves.iter().enumerate() {
            seen.insert(
                words[i + 1].clone(),
                (Side::Forward, Some((words[i].clone(), mv))),
            );
            fwd_queue.push_back(words[i + 1].clone());
        }
    }
    // seed the backward side with v's chain, watching for an immediate meet
    {
        let (words, moves) = reduction_chain(&cv);
        if seen.contains_key(&words[0]) {
            meet = Some(words[0].clone());
        } else {
            seen.insert(words[0].clone(), (Side::Backward, None));
            bwd_queue.push_back(words[0].clone());
            for (i, &mv) in moves.iter().enumerate() {
                let parent = Some((words[i].clone(), mv));
                if seen.contains_key(&words[i + 1]) {
                    seen.insert(marker_key(&words[i + 1]), (Side::Backward, parent));
                    meet = Some(words[i + 1].clone());
                    break;
                }
                seen.insert(words[i + 1].clone(), (Side::Backward, parent));
                bwd_queue.push_back(words[i + 1].clone());
            }
        }
    }

    let mut nodes: u64 = 0;
    let mut succ = Vec::new();
    while meet.is_none() && nodes < budget.max_nodes {
        let side = if bwd_queue.is_empty() && fwd_queue.is_empty() {
            break;
        } else if bwd_queue.is_empty() {
            Side::Forward
        } else if fwd_queue.is_empty() {
            Side::Backward
        } else if fwd_queue.len() <= bwd_queue.len() {
            Side::Forward
        } else {
            Side::Backward
        };
        let cur = match side {
            Side::Forward => fwd_queue.pop_front(),
            Side::Backward => bwd_queue.pop_front(),
        };
        let Some(cur) = cur else { break };
        nodes += 1;
        ctx.successors(&cur, budget.max_len, &mut succ);
        for (next, mv) in succ.drain(..) {
            let status = seen.get(&next).map(|(s, _)| *s);
            match status {
                Some(s) if s == side => {}
                Some(_) => {
                    seen.insert(marker_key(&next), (side, Some((cur.clone(), mv))));
                    meet = Some(next);
                    break;
                }
                None => {
                    seen.insert(next.clone(), (side, Some((cur.clone(), mv))));
                    match side {
                        Side::Forward => fwd_queue.push_back(next),
                        Side::Backward => bwd_queue.push_back(next),
                    }
                }
            }
        }
    }

    let Some(meet) = meet else {
        return (None, nodes);
    };

    // forward half: u -> meet
    let mut words = vec![meet.clone()];
    let mut moves: Vec<CMove> = Vec::new();
    let mut cur = meet.clone();
    while let Some((prev, mv)) = parent_of(&seen, &cur, Side::Forward) {
        moves.push(mv);
        words.push(prev.clone());
        cur = prev;
    }
    words.reverse();
    moves.reverse();

    // backward half: meet -> v, inverting the stored moves
    cur = meet;
    while let Some((prev, mv)) = parent_of(&seen, &cur, Side::Backward) {
        moves.push(ctx.invert(mv, &prev));
        words.push(prev.clone());
        cur = prev;
    }

    let trace = DerivationTrace {
        words: words.iter().map(|w| ctx.name(w)).collect(),
        moves: moves.into_iter().map(|m| ctx.to_public(m)).collect(),
    };
    debug_assert_eq!(trace.start(), u);
    debug_assert_eq!(trace.end(), v);
    (Some(trace), nodes)
}

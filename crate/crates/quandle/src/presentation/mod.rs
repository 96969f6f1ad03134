//! Left-normed quandle words, reduced forms, finitely presented quandles,
//! free products, and the natural map into the associated group.

mod parse;

pub use parse::{parse_term, parse_word, ParseError, Term};

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finite_quandle::FiniteQuandle;

/// A generator name. Identity is by name; free-product factor tags live on
/// the presentation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorSymbol(String);

impl GeneratorSymbol {
    pub fn new(name: impl Into<String>) -> Self {
        GeneratorSymbol(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<&str> for GeneratorSymbol {
    fn from(s: &str) -> Self {
        GeneratorSymbol(s.to_owned())
    }
}

/// Exponent of a single quandle operation: `*` or its dual `/`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i8(self.as_i8())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = i8::deserialize(d)?;
        Sign::from_i8(v).ok_or_else(|| D::Error::custom("sign must be 1 or -1"))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("generator {0} is not declared in the presentation")]
    UnknownGenerator(String),
    #[error("generator {0} declared twice")]
    DuplicateGenerator(String),
    #[error("generator {0} has no assigned element")]
    UnassignedGenerator(String),
    #[error("presentation has relations; not a free quandle")]
    NotFreePresentation,
}

/// A left-normed word `x0 *^{e1} x1 *^{e2} … *^{en} xn`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuandleWord {
    head: GeneratorSymbol,
    tail: Vec<(GeneratorSymbol, Sign)>,
}

impl QuandleWord {
    pub fn generator(head: GeneratorSymbol) -> Self {
        QuandleWord { head, tail: Vec::new() }
    }

    pub fn new(head: GeneratorSymbol, tail: Vec<(GeneratorSymbol, Sign)>) -> Self {
        QuandleWord { head, tail }
    }

    pub fn head(&self) -> &GeneratorSymbol {
        &self.head
    }

    pub fn tail(&self) -> &[(GeneratorSymbol, Sign)] {
        &self.tail
    }

    /// Number of operations in the word (the tail length).
    pub fn len(&self) -> usize {
        self.tail.len()
    }

    pub fn is_empty_tail(&self) -> bool {
        self.tail.is_empty()
    }

    /// Appends one letter: `self *^{sign} g`.
    pub fn push(&mut self, g: GeneratorSymbol, sign: Sign) {
        self.tail.push((g, sign));
    }

    /// All symbols of the word, head first.
    pub fn symbols(&self) -> impl Iterator<Item = &GeneratorSymbol> {
        std::iter::once(&self.head).chain(self.tail.iter().map(|(g, _)| g))
    }

    /// Reduced form: cancels adjacent inverse pairs in the tail and collapses
    /// leading letters equal to the head (idempotency, either sign) until the
    /// word satisfies the reduced-form conditions. Repeated equal letters
    /// with equal signs are kept.
    pub fn reduce(&self) -> QuandleWord {
        let head = self.head.clone();
        let mut tail = self.tail.clone();
        loop {
            let pair = (0..tail.len().saturating_sub(1))
                .find(|&i| tail[i].0 == tail[i + 1].0 && tail[i].1 == tail[i + 1].1.flip());
            if let Some(i) = pair {
                tail.drain(i..i + 2);
                continue;
            }
            if tail.first().is_some_and(|(g, _)| *g == head) {
                tail.remove(0);
                continue;
            }
            break;
        }
        QuandleWord { head, tail }
    }

    /// Whether the word is in reduced form: `x0 != x1`, and equal adjacent
    /// letters carry equal signs.
    pub fn is_reduced(&self) -> bool {
        if self.tail.first().is_some_and(|(g, _)| *g == self.head) {
            return false;
        }
        self.tail
            .windows(2)
            .all(|w| w[0].0 != w[1].0 || w[0].1 == w[1].1)
    }

    /// Applies a symbol substitution to every letter.
    pub fn rename(&self, map: &HashMap<GeneratorSymbol, GeneratorSymbol>) -> QuandleWord {
        let sub = |g: &GeneratorSymbol| map.get(g).cloned().unwrap_or_else(|| g.clone());
        QuandleWord {
            head: sub(&self.head),
            tail: self.tail.iter().map(|(g, s)| (sub(g), *s)).collect(),
        }
    }

    /// Evaluates the word in `q` under `assign`, folding left to right;
    /// negative letters use the dual operation.
    pub fn evaluate(
        &self,
        q: &FiniteQuandle,
        assign: &BTreeMap<GeneratorSymbol, usize>,
    ) -> Result<usize, WordError> {
        let get = |g: &GeneratorSymbol| {
            assign
                .get(g)
                .copied()
                .ok_or_else(|| WordError::UnassignedGenerator(g.name().to_owned()))
        };
        let mut acc = get(&self.head)?;
        for (g, sign) in &self.tail {
            let y = get(g)?;
            acc = match sign {
                Sign::Pos => q.op(acc, y),
                Sign::Neg => q.dual_op(acc, y),
            };
        }
        Ok(acc)
    }
}

impl fmt::Display for QuandleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        for (g, s) in &self.tail {
            match s {
                Sign::Pos => write!(f, " * {g}")?,
                Sign::Neg => write!(f, " / {g}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QuandleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Rewrites an arbitrary operation tree into an equivalent left-normed word
/// using `x *^e (u *^f v) = ((x *^-f v) *^e u) *^f v`, expanding right
/// operands innermost first.
pub fn normalize_left_normed(term: &Term) -> QuandleWord {
    match term {
        Term::Gen(g) => QuandleWord::generator(g.clone()),
        Term::Op(l, sign, r) => {
            let left = normalize_left_normed(l);
            let right = normalize_left_normed(r);
            append_word(left, *sign, right)
        }
    }
}

fn append_word(mut left: QuandleWord, sign: Sign, mut right: QuandleWord) -> QuandleWord {
    match right.tail.pop() {
        None => {
            left.push(right.head, sign);
            left
        }
        Some((v, f)) => {
            left.push(v.clone(), f.flip());
            let mut w = append_word(left, sign, right);
            w.push(v, f);
            w
        }
    }
}

/// The natural image of a quandle word in the associated group:
/// `c^-1 e_{x0} c` with `c = e_{x1}^{e1} … e_{xn}^{en}`, freely reduced.
pub fn eta(w: &QuandleWord) -> GroupWord {
    let mut out = GroupWord::default();
    for (g, s) in w.tail.iter().rev() {
        out.push(g.clone(), s.flip());
    }
    out.push(w.head.clone(), Sign::Pos);
    for (g, s) in &w.tail {
        out.push(g.clone(), *s);
    }
    out
}

/// A freely reduced word in the associated group's generators.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    letters: Vec<(GeneratorSymbol, Sign)>,
}

impl GroupWord {
    /// Appends one letter, cancelling against the last when inverse.
    pub fn push(&mut self, g: GeneratorSymbol, sign: Sign) {
        match self.letters.last() {
            Some((last, s)) if *last == g && *s == sign.flip() => {
                self.letters.pop();
            }
            _ => self.letters.push((g, sign)),
        }
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut out = self.clone();
        for (g, s) in &other.letters {
            out.push(g.clone(), *s);
        }
        out
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().rev().map(|(g, s)| (g.clone(), s.flip())).collect(),
        }
    }

    pub fn letters(&self) -> &[(GeneratorSymbol, Sign)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|(_, s)| i64::from(s.as_i8())).sum()
    }

    /// Letter coding used in JSON: names joined by spaces, inverses with the
    /// first character uppercased (`a1^-1` is written `A1`). Names that do
    /// not start with a lowercase ASCII letter fall back to `name^-1`.
    pub fn letter_coded(&self) -> String {
        self.letters
            .iter()
            .map(|(g, s)| match s {
                Sign::Pos => g.name().to_owned(),
                Sign::Neg => {
                    let mut cs = g.name().chars();
                    match cs.next() {
                        Some(c) if c.is_ascii_lowercase() => {
                            c.to_ascii_uppercase().to_string() + cs.as_str()
                        }
                        _ => format!("{}^-1", g.name()),
                    }
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn as_pairs(&self) -> Vec<(String, i8)> {
        self.letters
            .iter()
            .map(|(g, s)| (g.name().to_owned(), s.as_i8()))
            .collect()
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        f.write_str(&self.letter_coded())
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finitely presented quandle: generators, defining relations, and the
/// free-product factor each generator belongs to.
#[derive(Clone, PartialEq, Eq)]
pub struct QuandlePresentation {
    generators: Vec<GeneratorSymbol>,
    factors: Vec<usize>,
    factor_count: usize,
    relations: Vec<(QuandleWord, QuandleWord)>,
}

impl QuandlePresentation {
    pub fn new(
        generators: Vec<GeneratorSymbol>,
        relations: Vec<(QuandleWord, QuandleWord)>,
    ) -> Result<Self, WordError> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.clone()) {
                return Err(WordError::DuplicateGenerator(g.name().to_owned()));
            }
        }
        for (u, v) in &relations {
            for g in u.symbols().chain(v.symbols()) {
                if !seen.contains(g) {
                    return Err(WordError::UnknownGenerator(g.name().to_owned()));
                }
            }
        }
        let factors = vec![0; generators.len()];
        Ok(QuandlePresentation {
            generators,
            factors,
            factor_count: 1,
            relations,
        })
    }

    /// The free quandle on `n` generators `x1 … xn`, each its own factor.
    pub fn free_quandle(n: usize) -> Self {
        assert!(n >= 1);
        QuandlePresentation {
            generators: (1..=n).map(|i| GeneratorSymbol::new(format!("x{i}"))).collect(),
            factors: (0..n).collect(),
            factor_count: n,
            relations: Vec::new(),
        }
    }

    /// A one-generator, relation-free presentation.
    pub fn point(name: impl Into<String>) -> Self {
        QuandlePresentation {
            generators: vec![GeneratorSymbol::new(name)],
            factors: vec![0],
            factor_count: 1,
            relations: Vec::new(),
        }
    }

    pub fn generators(&self) -> &[GeneratorSymbol] {
        &self.generators
    }

    pub fn relations(&self) -> &[(QuandleWord, QuandleWord)] {
        &self.relations
    }

    pub fn factor_count(&self) -> usize {
        self.factor_count
    }

    /// Free-product factor tag of a generator.
    pub fn factor_of(&self, g: &GeneratorSymbol) -> Option<usize> {
        self.generators.iter().position(|x| x == g).map(|i| self.factors[i])
    }

    pub fn generator_index(&self, g: &GeneratorSymbol) -> Option<usize> {
        self.generators.iter().position(|x| x == g)
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_empty()
    }

    /// Parses a word and checks its symbols against the declared generators.
    pub fn parse_word_checked(&self, text: &str) -> Result<QuandleWord, ParseOrWordError> {
        let word = parse_word(text).map_err(ParseOrWordError::Parse)?;
        for g in word.symbols() {
            if self.generator_index(g).is_none() {
                return Err(ParseOrWordError::Word(WordError::UnknownGenerator(
                    g.name().to_owned(),
                )));
            }
        }
        Ok(word)
    }

    /// The free product: disjoint union of generators and relations. The
    /// right operand's generators are renamed apart (suffix `#<factor>`)
    /// when they collide, and its factor tags are shifted past `self`'s.
    pub fn free_product(&self, other: &QuandlePresentation) -> QuandlePresentation {
        let offset = self.factor_count;
        let mut generators = self.generators.clone();
        let mut factors = self.factors.clone();
        let mut taken: HashSet<GeneratorSymbol> = generators.iter().cloned().collect();
        let mut rename: HashMap<GeneratorSymbol, GeneratorSymbol> = HashMap::new();
        for (g, f) in other.generators.iter().zip(&other.factors) {
            let nf = f + offset;
            let mut fresh = g.clone();
            while taken.contains(&fresh) {
                fresh = GeneratorSymbol::new(format!("{}#{nf}", fresh.name()));
            }
            if fresh != *g {
                rename.insert(g.clone(), fresh.clone());
            }
            taken.insert(fresh.clone());
            generators.push(fresh);
            factors.push(nf);
        }
        let mut relations = self.relations.clone();
        relations.extend(
            other
                .relations
                .iter()
                .map(|(u, v)| (u.rename(&rename), v.rename(&rename))),
        );
        QuandlePresentation {
            generators,
            factors,
            factor_count: offset + other.factor_count,
            relations,
        }
    }

    /// Splits a tagged presentation back into its factor presentations.
    /// Relations of a free product always live inside a single factor.
    pub fn factor_presentations(&self) -> Vec<QuandlePresentation> {
        (0..self.factor_count)
            .map(|f| {
                let generators: Vec<GeneratorSymbol> = self
                    .generators
                    .iter()
                    .zip(&self.factors)
                    .filter(|(_, ff)| **ff == f)
                    .map(|(g, _)| g.clone())
                    .collect();
                let keep: HashSet<GeneratorSymbol> = generators.iter().cloned().collect();
                let relations = self
                    .relations
                    .iter()
                    .filter(|(u, v)| u.symbols().chain(v.symbols()).all(|g| keep.contains(g)))
                    .cloned()
                    .collect();
                QuandlePresentation {
                    factors: vec![0; generators.len()],
                    generators,
                    factor_count: 1,
                    relations,
                }
            })
            .collect()
    }

    /// A deterministic comparison key: sorted `(name, factor)` pairs and
    /// sorted relation strings.
    pub fn canonical_key(&self) -> (Vec<(String, usize)>, Vec<(String, String)>) {
        let mut gens: Vec<(String, usize)> = self
            .generators
            .iter()
            .zip(&self.factors)
            .map(|(g, f)| (g.name().to_owned(), *f))
            .collect();
        gens.sort();
        let mut rels: Vec<(String, String)> = self
            .relations
            .iter()
            .map(|(u, v)| (u.to_string(), v.to_string()))
            .collect();
        rels.sort();
        (gens, rels)
    }
}

impl fmt::Debug for QuandlePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, " | ")?;
        for (i, (u, v)) in self.relations.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u} = {v}")?;
        }
        write!(f, ">")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseOrWordError {
    #[error("{0}")]
    Parse(ParseError),
    #[error("{0}")]
    Word(WordError),
}

/// On-disk form: `{"generators": [...], "relations": [["u", "v"], ...]}`
/// with relation sides in the surface grammar. `factors` is emitted only
/// for free products.
#[derive(Serialize, Deserialize)]
struct PresentationData {
    generators: Vec<String>,
    relations: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    factors: Option<Vec<usize>>,
}

impl Serialize for QuandlePresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let factors = if self.factor_count > 1 {
            Some(self.factors.clone())
        } else {
            None
        };
        PresentationData {
            generators: self.generators.iter().map(|g| g.name().to_owned()).collect(),
            relations: self
                .relations
                .iter()
                .map(|(u, v)| (u.to_string(), v.to_string()))
                .collect(),
            factors,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuandlePresentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PresentationData::deserialize(d)?;
        let mut relations = Vec::with_capacity(raw.relations.len());
        for (u, v) in &raw.relations {
            let pu = parse_word(u).map_err(D::Error::custom)?;
            let pv = parse_word(v).map_err(D::Error::custom)?;
            relations.push((pu, pv));
        }
        let generators = raw.generators.into_iter().map(GeneratorSymbol::new).collect();
        let mut p = QuandlePresentation::new(generators, relations).map_err(D::Error::custom)?;
        if let Some(factors) = raw.factors {
            if factors.len() != p.generators.len() {
                return Err(D::Error::custom("factors length mismatch"));
            }
            p.factor_count = factors.iter().copied().max().map_or(1, |m| m + 1);
            p.factors = factors;
        }
        Ok(p)
    }
}

/// Reads the full multiplication table of a finite quandle off as a
/// presentation: one generator `{prefix}{i}` per element and one relation
/// `gi * gj = g(i*j)` per pair.
pub fn cayley_presentation(q: &FiniteQuandle, prefix: &str) -> QuandlePresentation {
    let n = q.order();
    let gens: Vec<GeneratorSymbol> = (0..n)
        .map(|i| GeneratorSymbol::new(format!("{prefix}{i}")))
        .collect();
    let mut relations = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut lhs = QuandleWord::generator(gens[i].clone());
            lhs.push(gens[j].clone(), Sign::Pos);
            let rhs = QuandleWord::generator(gens[q.op(i, j)].clone());
            relations.push((lhs, rhs));
        }
    }
    QuandlePresentation::new(gens, relations).expect("cayley presentation is well formed")
}

/// Decides equality of two words over a free quandle via their images in the
/// free group: `u = v` iff `eta(u)` and `eta(v)` coincide as freely reduced
/// words.
pub fn free_quandle_equal(
    p: &QuandlePresentation,
    u: &QuandleWord,
    v: &QuandleWord,
) -> Result<bool, WordError> {
    if !p.is_free() {
        return Err(WordError::NotFreePresentation);
    }
    Ok(eta(u) == eta(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: &str) -> GeneratorSymbol {
        GeneratorSymbol::new(n)
    }

    #[test]
    fn display_round_trip() {
        let w = parse_word("a * b / c").unwrap();
        assert_eq!(w.to_string(), "a * b / c");
        assert_eq!(w.head().name(), "a");
        assert_eq!(
            w.tail(),
            &[(g("b"), Sign::Pos), (g("c"), Sign::Neg)]
        );
    }

    #[test]
    fn parenthesized_right_operand_expands() {
        let w = parse_word("t * (a1 * a2)").unwrap();
        assert_eq!(w.to_string(), "t / a2 * a1 * a2");
    }

    #[test]
    fn bare_generator() {
        let w = parse_word("a").unwrap();
        assert!(w.is_empty_tail());
    }

    #[test]
    fn expansion_agrees_with_evaluation_in_r3() {
        // t * (a1 * a2) evaluated as a tree must match its left-normed form
        let q = FiniteQuandle::dihedral(3);
        let term = parse_term("t * (a1 * a2)").unwrap();
        let word = normalize_left_normed(&term);
        for t in 0..3 {
            for a1 in 0..3 {
                for a2 in 0..3 {
                    let assign: BTreeMap<_, _> = [
                        (g("t"), t),
                        (g("a1"), a1),
                        (g("a2"), a2),
                    ]
                    .into();
                    let tree_val = q.op(t, q.op(a1, a2));
                    assert_eq!(word.evaluate(&q, &assign).unwrap(), tree_val);
                }
            }
        }
    }

    #[test]
    fn reduce_examples() {
        let w = parse_word("a * b / b").unwrap();
        assert_eq!(w.reduce().to_string(), "a");
        let w = parse_word("a * a * b").unwrap();
        assert_eq!(w.reduce().to_string(), "a * b");
        let w = parse_word("a * b * b").unwrap();
        assert_eq!(w.reduce(), w);
        assert!(w.is_reduced());
        let w = parse_word("a / a * b").unwrap();
        assert_eq!(w.reduce().to_string(), "a * b");
    }

    #[test]
    fn eta_examples() {
        let w = parse_word("a * b / c").unwrap();
        assert_eq!(eta(&w).to_string(), "c B a b C");
        let bare = parse_word("a").unwrap();
        assert_eq!(eta(&bare).to_string(), "a");
        assert_eq!(eta(&w).exponent_sum(), 1);
    }

    #[test]
    fn eta_is_invariant_under_reduce() {
        for text in ["a * b / b * a", "a * a * b / c * c", "b / b * b"] {
            let w = parse_word(text).unwrap();
            assert_eq!(eta(&w), eta(&w.reduce()), "word {text}");
        }
    }

    #[test]
    fn free_product_counts_and_tags() {
        let t = QuandlePresentation::point("t");
        let r3 = cayley_presentation(&FiniteQuandle::dihedral(3), "a");
        let p = t.free_product(&r3);
        assert_eq!(p.generators().len(), 4);
        assert_eq!(p.relations().len(), 9);
        assert_eq!(p.factor_of(&g("t")), Some(0));
        for i in 0..3 {
            assert_eq!(p.factor_of(&g(&format!("a{i}"))), Some(1));
        }
    }

    #[test]
    fn free_product_renames_collisions() {
        let a = QuandlePresentation::point("a");
        let also_a = QuandlePresentation::point("a");
        let p = a.free_product(&also_a);
        let names: Vec<_> = p.generators().iter().map(|g| g.name().to_owned()).collect();
        assert_eq!(names, vec!["a", "a#1"]);
    }

    #[test]
    fn free_quandle_is_iterated_free_product_of_points() {
        let fq3 = QuandlePresentation::free_quandle(3);
        let built = QuandlePresentation::point("x1")
            .free_product(&QuandlePresentation::point("x2"))
            .free_product(&QuandlePresentation::point("x3"));
        assert_eq!(fq3.canonical_key(), built.canonical_key());
        assert_eq!(fq3.factor_count(), 3);
    }

    #[test]
    fn free_quandle_equal_examples() {
        let p = QuandlePresentation::free_quandle(2);
        let a = parse_word("x1").unwrap();
        let ab = parse_word("x1 * x2").unwrap();
        let abb = parse_word("x1 * x2 / x2").unwrap();
        assert!(!free_quandle_equal(&p, &a, &ab).unwrap());
        assert!(free_quandle_equal(&p, &abb, &a).unwrap());
        let with_rel = cayley_presentation(&FiniteQuandle::trivial(2), "q");
        let qw = parse_word("q0").unwrap();
        assert_eq!(
            free_quandle_equal(&with_rel, &qw, &qw).unwrap_err(),
            WordError::NotFreePresentation
        );
    }

    #[test]
    fn evaluate_examples() {
        let q = FiniteQuandle::dihedral(3);
        let w = parse_word("a * b").unwrap();
        let assign: BTreeMap<_, _> = [(g("a"), 0), (g("b"), 1)].into();
        assert_eq!(w.evaluate(&q, &assign).unwrap(), 2);
        let bare = parse_word("a").unwrap();
        assert_eq!(bare.evaluate(&q, &assign).unwrap(), 0);
        let missing = parse_word("a * zz").unwrap();
        assert_eq!(
            missing.evaluate(&q, &assign).unwrap_err(),
            WordError::UnassignedGenerator("zz".into())
        );
    }

    #[test]
    fn presentation_json_round_trip() {
        let t = QuandlePresentation::point("t");
        let r3 = cayley_presentation(&FiniteQuandle::dihedral(3), "a");
        let p = t.free_product(&r3);
        let s = serde_json::to_string(&p).unwrap();
        let back: QuandlePresentation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.factor_count(), 2);
    }

    #[test]
    fn presentation_rejects_undeclared_symbols() {
        let r = QuandlePresentation::new(
            vec![g("a")],
            vec![(parse_word("a * b").unwrap(), parse_word("a").unwrap())],
        );
        assert_eq!(r.unwrap_err(), WordError::UnknownGenerator("b".into()));
    }
}

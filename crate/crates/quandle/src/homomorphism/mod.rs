//! Homomorphism enumeration, coloring counts, separation-witness search, and
//! the interleaved word-problem decision.

mod coset_hom;
mod rewrite;

pub use coset_hom::{quotient_coset_hom, CosetHomError, InducedCosetHom};
pub use rewrite::{prove_equal, DerivationTrace, Move, ReplayError};

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finite_quandle::{Catalog, CensusError, FiniteQuandle};
use crate::presentation::{
    free_quandle_equal, GeneratorSymbol, QuandlePresentation, QuandleWord, Sign, WordError,
};

/// Resource limits for the word-problem semi-procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Cap on word tail length in the rewrite search.
    pub max_len: usize,
    /// Cap on rewrite-graph expansions, and on assignments tried per catalog
    /// member during separation sweeps.
    pub max_nodes: u64,
    /// Largest catalog order the separation search may use.
    pub max_catalog_order: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_len: 48,
            max_nodes: 50_000,
            max_catalog_order: 6,
        }
    }
}

/// What the word problem spent before answering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetReport {
    pub max_len_reached: usize,
    pub catalog_order_reached: usize,
    pub nodes_spent: u64,
    pub note: String,
}

const UNKNOWN_NOTE: &str = "no effective bound is known relating word length to the order of a \
separating finite quandle; the escalation schedule is heuristic and was capped by the budget";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("word uses generator {0} not declared by the presentation")]
    UnknownGenerator(String),
    #[error("budget exhausted: {0:?}")]
    BudgetExhausted(BudgetReport),
    #[error("{0}")]
    Census(#[from] CensusError),
}

/// A quandle homomorphism from a presented quandle to a finite one, as an
/// assignment of target elements to generators (declaration order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    pub source: QuandlePresentation,
    pub target: FiniteQuandle,
    pub assign: Vec<usize>,
}

impl Homomorphism {
    pub fn assignment_map(&self) -> BTreeMap<GeneratorSymbol, usize> {
        self.source
            .generators()
            .iter()
            .cloned()
            .zip(self.assign.iter().copied())
            .collect()
    }

    pub fn apply(&self, w: &QuandleWord) -> Result<usize, WordError> {
        w.evaluate(&self.target, &self.assignment_map())
    }

    /// Checks every defining relation under the assignment.
    pub fn verify(&self) -> bool {
        let map = self.assignment_map();
        self.source.relations().iter().all(|(u, v)| {
            match (u.evaluate(&self.target, &map), v.evaluate(&self.target, &map)) {
                (Ok(a), Ok(b)) => a == b,
                _ => false,
            }
        })
    }
}

/// Which rung of the separation ladder produced a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Heuristic {
    FactorProjection,
    FreeProjection,
    EtaConjugacy,
    Catalog,
}

/// A checkable proof that two words differ: a homomorphism to a finite
/// quandle under which their images differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationWitness {
    pub hom: Homomorphism,
    pub left_image: usize,
    pub right_image: usize,
    pub heuristic: Heuristic,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("witness assignment violates a relation")]
    RelationBroken,
    #[error("image mismatch: recomputed {found}, witness says {claimed}")]
    ImageMismatch { found: usize, claimed: usize },
    #[error("images are equal; nothing separated")]
    ImagesEqual,
    #[error("{0}")]
    Word(#[from] WordError),
}

impl SeparationWitness {
    /// Re-derives everything the witness claims.
    pub fn replay(&self, u: &QuandleWord, v: &QuandleWord) -> Result<(), WitnessError> {
        if !self.hom.verify() {
            return Err(WitnessError::RelationBroken);
        }
        let left = self.hom.apply(u)?;
        if left != self.left_image {
            return Err(WitnessError::ImageMismatch { found: left, claimed: self.left_image });
        }
        let right = self.hom.apply(v)?;
        if right != self.right_image {
            return Err(WitnessError::ImageMismatch { found: right, claimed: self.right_image });
        }
        if self.left_image == self.right_image {
            return Err(WitnessError::ImagesEqual);
        }
        Ok(())
    }
}

impl Serialize for SeparationWitness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SeparationWitness", 5)?;
        st.serialize_field("heuristic", &self.heuristic)?;
        st.serialize_field("target", &self.hom.target)?;
        let assignment: Vec<(String, usize)> = self
            .hom
            .source
            .generators()
            .iter()
            .map(|g| g.name().to_owned())
            .zip(self.hom.assign.iter().copied())
            .collect();
        st.serialize_field("assignment", &assignment)?;
        st.serialize_field("left_image", &self.left_image)?;
        st.serialize_field("right_image", &self.right_image)?;
        st.end()
    }
}

/// Word-problem outcome. `Unknown` is a first-class verdict: budget
/// exhaustion is never converted into a claim.
#[derive(Debug, Clone, PartialEq)]
pub enum WpVerdict {
    Equal(DerivationTrace),
    Distinct(SeparationWitness),
    Unknown(BudgetReport),
}

/// Verdict plus the budgets actually reached, in the CLI-facing JSON shape.
#[derive(Debug, Clone, PartialEq)]
pub struct WpResult {
    pub verdict: WpVerdict,
    pub budgets: BudgetReport,
}

impl Serialize for WpResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("WpResult", 4)?;
        let (outcome, witness, trace) = match &self.verdict {
            WpVerdict::Equal(t) => ("equal", None, Some(t)),
            WpVerdict::Distinct(w) => ("distinct", Some(w), None),
            WpVerdict::Unknown(_) => ("unknown", None, None),
        };
        st.serialize_field("outcome", outcome)?;
        st.serialize_field("witness", &witness)?;
        st.serialize_field("trace", &trace)?;
        st.serialize_field("budgets", &self.budgets)?;
        st.end()
    }
}

/// A word compiled to generator indices for tight evaluation loops.
#[derive(Debug, Clone)]
struct CompiledWord {
    head: usize,
    tail: Vec<(usize, Sign)>,
}

fn compile_word(p: &QuandlePresentation, w: &QuandleWord) -> Result<CompiledWord, HomError> {
    let idx = |g: &GeneratorSymbol| {
        p.generator_index(g)
            .ok_or_else(|| HomError::UnknownGenerator(g.name().to_owned()))
    };
    Ok(CompiledWord {
        head: idx(w.head())?,
        tail: w
            .tail()
            .iter()
            .map(|(g, s)| Ok((idx(g)?, *s)))
            .collect::<Result<_, HomError>>()?,
    })
}

fn eval_compiled(w: &CompiledWord, q: &FiniteQuandle, assign: &[usize]) -> usize {
    let mut acc = assign[w.head];
    for &(g, s) in &w.tail {
        acc = match s {
            Sign::Pos => q.op(acc, assign[g]),
            Sign::Neg => q.dual_op(acc, assign[g]),
        };
    }
    acc
}

/// Relations compiled and grouped by the last generator they mention, so each
/// is checked as soon as all its generators are assigned.
struct CompiledRelations {
    n_gens: usize,
    by_trigger: Vec<Vec<(CompiledWord, CompiledWord)>>,
}

fn compile_relations(p: &QuandlePresentation) -> CompiledRelations {
    let n = p.generators().len();
    let mut by_trigger: Vec<Vec<(CompiledWord, CompiledWord)>> = vec![Vec::new(); n.max(1)];
    for (u, v) in p.relations() {
        let cu = compile_word(p, u).expect("relation symbols are declared");
        let cv = compile_word(p, v).expect("relation symbols are declared");
        let trigger = cu
            .tail
            .iter()
            .map(|&(g, _)| g)
            .chain(cv.tail.iter().map(|&(g, _)| g))
            .chain([cu.head, cv.head])
            .max()
            .unwrap_or(0);
        by_trigger[trigger].push((cu, cv));
    }
    CompiledRelations { n_gens: n, by_trigger }
}

fn backtrack_homs(
    rels: &CompiledRelations,
    target: &FiniteQuandle,
    assign: &mut Vec<usize>,
    level: usize,
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if level == rels.n_gens {
        return visit(assign);
    }
    for v in 0..target.order() {
        assign[level] = v;
        let ok = rels.by_trigger[level]
            .iter()
            .all(|(u, w)| eval_compiled(u, target, assign) == eval_compiled(w, target, assign));
        if ok && !backtrack_homs(rels, target, assign, level + 1, visit) {
            return false;
        }
    }
    true
}

/// All homomorphisms from `p` to `target`, sorted lexicographically by
/// assignment. The search is split over the first generator's value.
pub fn enumerate_homs(p: &QuandlePresentation, target: &FiniteQuandle) -> Vec<Homomorphism> {
    let rels = compile_relations(p);
    if rels.n_gens == 0 {
        return Vec::new();
    }
    let branches: Vec<Vec<Vec<usize>>> = (0..target.order())
        .into_par_iter()
        .map(|first| {
            let mut found = Vec::new();
            let mut assign = vec![0; rels.n_gens];
            assign[0] = first;
            let ok = rels.by_trigger[0]
                .iter()
                .all(|(u, w)| eval_compiled(u, target, &assign) == eval_compiled(w, target, &assign));
            if ok {
                backtrack_homs(&rels, target, &mut assign, 1, &mut |a| {
                    found.push(a.to_vec());
                    true
                });
            }
            found
        })
        .collect();
    branches
        .into_iter()
        .flatten()
        .map(|assign| Homomorphism {
            source: p.clone(),
            target: target.clone(),
            assign,
        })
        .collect()
}

/// `|Hom(p, target)|` without materializing the list.
pub fn count_colorings(p: &QuandlePresentation, target: &FiniteQuandle) -> u64 {
    let rels = compile_relations(p);
    if rels.n_gens == 0 {
        return 0;
    }
    (0..target.order())
        .into_par_iter()
        .map(|first| {
            let mut count = 0u64;
            let mut assign = vec![0; rels.n_gens];
            assign[0] = first;
            let ok = rels.by_trigger[0]
                .iter()
                .all(|(u, w)| eval_compiled(u, target, &assign) == eval_compiled(w, target, &assign));
            if ok {
                backtrack_homs(&rels, target, &mut assign, 1, &mut |_| {
                    count += 1;
                    true
                });
            }
            count
        })
        .sum()
}

/// First assignment (lexicographic) under which `u` and `v` evaluate
/// differently, or `None` if the full space satisfies has none. `Err` means
/// the per-member node budget ran out first.
fn find_separating_assign(
    rels: &CompiledRelations,
    target: &FiniteQuandle,
    u: &CompiledWord,
    v: &CompiledWord,
    max_nodes: u64,
) -> Result<Option<(Vec<usize>, usize, usize)>, u64> {
    let mut assign = vec![0; rels.n_gens];
    let mut nodes = 0u64;
    let mut result = None;
    let complete = backtrack_separating(rels, target, u, v, &mut assign, 0, max_nodes, &mut nodes, &mut result);
    if complete || result.is_some() {
        Ok(result)
    } else {
        Err(nodes)
    }
}

#[allow(clippy::too_many_arguments)]
fn backtrack_separating(
    rels: &CompiledRelations,
    target: &FiniteQuandle,
    u: &CompiledWord,
    v: &CompiledWord,
    assign: &mut Vec<usize>,
    level: usize,
    max_nodes: u64,
    nodes: &mut u64,
    result: &mut Option<(Vec<usize>, usize, usize)>,
) -> bool {
    if level == rels.n_gens {
        let a = eval_compiled(u, target, assign);
        let b = eval_compiled(v, target, assign);
        if a != b {
            *result = Some((assign.clone(), a, b));
            return false;
        }
        return true;
    }
    for val in 0..target.order() {
        *nodes += 1;
        if *nodes > max_nodes {
            return false;
        }
        assign[level] = val;
        let ok = rels.by_trigger[level]
            .iter()
            .all(|(x, y)| eval_compiled(x, target, assign) == eval_compiled(y, target, assign));
        if ok && !backtrack_separating(rels, target, u, v, assign, level + 1, max_nodes, nodes, result)
        {
            return false;
        }
    }
    true
}

/// Searches the heuristic ladder for a witness that `u != v` in `p`:
/// factor projection, free projection, head-factor comparison, then the
/// catalog sweep. The result is deterministic: the catalog is taken in
/// canonical order and assignments lexicographically.
///
/// `Ok(None)` means the sweep completed with no witness at this catalog;
/// `Err(BudgetExhausted)` means the node budget cut a sweep short.
pub fn separate(
    p: &QuandlePresentation,
    u: &QuandleWord,
    v: &QuandleWord,
    catalog: &[FiniteQuandle],
    budget: &Budget,
) -> Result<Option<SeparationWitness>, HomError> {
    let cu = compile_word(p, u)?;
    let cv = compile_word(p, v)?;
    let catalog: Vec<&FiniteQuandle> = catalog
        .iter()
        .filter(|q| q.order() <= budget.max_catalog_order)
        .collect();

    let finish = |hom: Homomorphism, heuristic: Heuristic| -> Option<SeparationWitness> {
        let left = hom.apply(u).ok()?;
        let right = hom.apply(v).ok()?;
        if left == right {
            return None;
        }
        let w = SeparationWitness { hom, left_image: left, right_image: right, heuristic };
        debug_assert!(w.replay(u, v).is_ok());
        Some(w)
    };

    // (1) factor projection: both words reduce into single, distinct factors.
    if p.factor_count() > 1 {
        let fu = uniform_factor(p, &u.reduce());
        let fv = uniform_factor(p, &v.reduce());
        if let (Some(fu), Some(fv)) = (fu, fv) {
            if fu != fv {
                let hom = collapse_factor_hom(p, fu);
                if let Some(w) = finish(hom, Heuristic::FactorProjection) {
                    return Ok(Some(w));
                }
            }
        }
    }

    let mut exhausted = false;

    // (2) free projection: collapse each factor to one free generator and
    // decide there; convert a positive answer into a finite witness by a
    // catalog sweep over the collapsed words.
    if p.factor_count() > 1 {
        let fq = QuandlePresentation::free_quandle(p.factor_count());
        let pu = project_word(p, &fq, u);
        let pv = project_word(p, &fq, v);
        if !free_quandle_equal(&fq, &pu, &pv).expect("projection target is free") {
            let cpu = compile_word(&fq, &pu)?;
            let cpv = compile_word(&fq, &pv)?;
            let free_rels = compile_relations(&fq);
            for q in &catalog {
                match find_separating_assign(&free_rels, q, &cpu, &cpv, budget.max_nodes) {
                    Ok(Some((fassign, _, _))) => {
                        let assign = p
                            .generators()
                            .iter()
                            .map(|g| fassign[p.factor_of(g).expect("tagged")])
                            .collect();
                        let hom = Homomorphism {
                            source: p.clone(),
                            target: (*q).clone(),
                            assign,
                        };
                        if let Some(w) = finish(hom, Heuristic::FreeProjection) {
                            return Ok(Some(w));
                        }
                    }
                    Ok(None) => {}
                    Err(_) => exhausted = true,
                }
            }
        }
    }

    // (3) head factors differ: the eta images conjugate generators from
    // different free factors; certify with the factor-counting quotient.
    if p.factor_count() > 1 {
        let fu = p.factor_of(u.reduce().head());
        let fv = p.factor_of(v.reduce().head());
        if let (Some(fu), Some(fv)) = (fu, fv) {
            if fu != fv {
                let hom = collapse_factor_hom(p, fu);
                if let Some(w) = finish(hom, Heuristic::EtaConjugacy) {
                    return Ok(Some(w));
                }
            }
        }
    }

    // (4) catalog sweep with full relation checking.
    let rels = compile_relations(p);
    let per_member: Vec<Result<Option<(Vec<usize>, usize, usize)>, u64>> = catalog
        .par_iter()
        .map(|q| find_separating_assign(&rels, q, &cu, &cv, budget.max_nodes))
        .collect();
    for (q, res) in catalog.iter().zip(per_member) {
        match res {
            Ok(Some((assign, left, right))) => {
                let hom = Homomorphism {
                    source: p.clone(),
                    target: (*q).clone(),
                    assign,
                };
                let w = SeparationWitness {
                    hom,
                    left_image: left,
                    right_image: right,
                    heuristic: Heuristic::Catalog,
                };
                debug_assert!(w.replay(u, v).is_ok());
                return Ok(Some(w));
            }
            Ok(None) => {}
            Err(_) => exhausted = true,
        }
    }

    if exhausted {
        let top = catalog.iter().map(|q| q.order()).max().unwrap_or(0);
        return Err(HomError::BudgetExhausted(BudgetReport {
            max_len_reached: 0,
            catalog_order_reached: top,
            nodes_spent: budget.max_nodes,
            note: UNKNOWN_NOTE.to_owned(),
        }));
    }
    Ok(None)
}

/// The factor tag shared by every symbol of `w`, if there is one.
fn uniform_factor(p: &QuandlePresentation, w: &QuandleWord) -> Option<usize> {
    let mut it = w.symbols();
    let first = p.factor_of(it.next()?)?;
    for g in it {
        if p.factor_of(g)? != first {
            return None;
        }
    }
    Some(first)
}

/// The two-point collapse: generators of `factor` go to 0, all others to 1,
/// in the trivial quandle of order 2.
fn collapse_factor_hom(p: &QuandlePresentation, factor: usize) -> Homomorphism {
    let assign = p
        .generators()
        .iter()
        .map(|g| usize::from(p.factor_of(g) != Some(factor)))
        .collect();
    Homomorphism {
        source: p.clone(),
        target: FiniteQuandle::trivial(2),
        assign,
    }
}

/// Push a word through the factor collapse `g -> x_{factor(g)+1}`.
fn project_word(
    p: &QuandlePresentation,
    fq: &QuandlePresentation,
    w: &QuandleWord,
) -> QuandleWord {
    let map = |g: &GeneratorSymbol| fq.generators()[p.factor_of(g).expect("tagged")].clone();
    let mut out = QuandleWord::generator(map(w.head()));
    for (g, s) in w.tail() {
        out.push(map(g), *s);
    }
    out
}

/// Rewrites the pair `(u, v)` to `(y, y')` with
/// `y = u *^{-e'_m} b_m … *^{-e'_1} b_1` and `y' = b_0`, where
/// `v = b_0 *^{e'_1} b_1 … *^{e'_m} b_m`. Equality is preserved and
/// reflected: `u = v` iff `y = y'`.
pub fn second_axiom_shift(u: &QuandleWord, v: &QuandleWord) -> (QuandleWord, QuandleWord) {
    let mut y = u.clone();
    for (g, s) in v.tail().iter().rev() {
        y.push(g.clone(), s.flip());
    }
    (y, QuandleWord::generator(v.head().clone()))
}

/// Interleaves the equality prover with the separation search under an
/// escalating budget schedule: the rewrite length and the catalog order are
/// doubled alternately until the budget is exhausted.
pub fn word_problem(
    p: &QuandlePresentation,
    u: &QuandleWord,
    v: &QuandleWord,
    budget: &Budget,
    catalog: &Catalog,
) -> WpResult {
    let base_len = (u.len().max(v.len()) + 4).min(budget.max_len);
    let mut len = base_len;
    let mut order = 3.min(budget.max_catalog_order);
    let mut prove_nodes: u64 = 0; // first round only walks the reduction chains
    let mut spent: u64 = 0;
    let mut len_reached = 0;
    let mut order_reached = 0;

    for round in 0.. {
        // equality attempt
        if spent < budget.max_nodes || prove_nodes == 0 {
            let slice = prove_nodes.min(budget.max_nodes.saturating_sub(spent));
            let sub = Budget { max_len: len, max_nodes: slice, ..*budget };
            len_reached = len_reached.max(len);
            let (trace, used) = prove_equal(p, u, v, &sub);
            spent += used;
            if let Some(trace) = trace {
                debug_assert!(trace.replay(p).is_ok());
                return WpResult {
                    verdict: WpVerdict::Equal(trace),
                    budgets: report(len_reached, order_reached, spent),
                };
            }
        }

        // separation attempt
        if spent < budget.max_nodes {
            let members: Vec<FiniteQuandle> = match catalog.up_to(order) {
                Ok(m) => m,
                Err(_) => Vec::new(),
            };
            order_reached = order_reached.max(order);
            let sub = Budget {
                max_catalog_order: order,
                max_nodes: budget.max_nodes.saturating_sub(spent),
                ..*budget
            };
            match separate(p, u, v, &members, &sub) {
                Ok(Some(w)) => {
                    return WpResult {
                        verdict: WpVerdict::Distinct(w),
                        budgets: report(len_reached, order_reached, spent),
                    };
                }
                Ok(None) => {}
                Err(HomError::BudgetExhausted(_)) => spent = budget.max_nodes,
                Err(_) => {}
            }
        }

        let len_capped = len >= budget.max_len;
        let order_capped = order >= budget.max_catalog_order;
        if (len_capped && order_capped && prove_nodes > 0) || spent >= budget.max_nodes {
            break;
        }
        if prove_nodes == 0 {
            // cheap rounds first: the next round sweeps the full catalog and
            // only then starts paying for graph search
            prove_nodes = 2_000;
            order = (order * 2).min(budget.max_catalog_order);
        } else if round % 2 == 1 {
            len = (len * 2).min(budget.max_len);
            prove_nodes = prove_nodes.saturating_mul(4);
        } else {
            order = (order * 2).min(budget.max_catalog_order);
        }
    }

    WpResult {
        verdict: WpVerdict::Unknown(report(len_reached, order_reached, spent)),
        budgets: report(len_reached, order_reached, spent),
    }
}

fn report(max_len_reached: usize, catalog_order_reached: usize, nodes_spent: u64) -> BudgetReport {
    BudgetReport {
        max_len_reached,
        catalog_order_reached,
        nodes_spent,
        note: UNKNOWN_NOTE.to_owned(),
    }
}

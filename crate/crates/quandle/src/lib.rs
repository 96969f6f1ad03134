//! A workbench for computing with quandles: validated Cayley tables and the
//! group-derived constructions, a census of small quandles up to
//! isomorphism, the word calculus of finitely presented quandles and their
//! free products, associated groups, link quandles read off braid words or
//! PD codes, and a word-problem procedure that interleaves a rewrite-graph
//! equality prover with a separation search over finite quandles.
//!
//! Everything is deterministic: censuses are canonically ordered, searches
//! sweep assignments lexicographically, and parallel runs merge in a fixed
//! order, so repeated runs give identical results.

pub mod associated_group;
pub mod finite_quandle;
pub mod homomorphism;
pub mod link;
pub mod presentation;

pub use finite_quandle::{
    canonical_form, disjoint_union_coset, enumerate_quandles, enumerate_quandles_bounded,
    AxiomViolation, Catalog, CensusError, CosetError, CosetQuandle, FiniteGroup, FiniteQuandle,
    Perm, PermutationGroup, ValidateError, DEFAULT_CATALOG_BOUND,
};
pub use presentation::{
    cayley_presentation, eta, free_quandle_equal, normalize_left_normed, parse_term, parse_word,
    GeneratorSymbol, GroupWord, ParseError, QuandlePresentation, QuandleWord, Sign, Term,
    WordError,
};
pub use associated_group::{
    abelianization_rank, abelianization_rank_finite, act, as_free_product_check, associated_group,
    psi_image, GroupPresentation,
};
pub use homomorphism::{
    count_colorings, enumerate_homs, prove_equal, quotient_coset_hom, second_axiom_shift,
    separate, word_problem, Budget, BudgetReport, DerivationTrace, Heuristic, HomError,
    Homomorphism, Move, SeparationWitness, WpResult, WpVerdict,
};
pub use link::{
    braid_closure, link_group, parse_braid, parse_pd, split_union, wirtinger_quandle, BraidWord,
    Crossing, LinkDiagram,
};

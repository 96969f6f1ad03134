//! Model-theoretic soundness of the word calculus at desk scale, plus
//! property tests over random words and presentations.

use std::collections::BTreeMap;

use proptest::prelude::*;
use quandle::{
    as_free_product_check, cayley_presentation, enumerate_quandles, eta, free_quandle_equal,
    normalize_left_normed, parse_word, FiniteQuandle, GeneratorSymbol, QuandlePresentation,
    QuandleWord, Sign, Term,
};

fn catalog_up_to_4() -> Vec<FiniteQuandle> {
    (1..=4)
        .flat_map(|n| enumerate_quandles(n, true).unwrap())
        .collect()
}

/// All operation trees with exactly `ops` operations over the given symbols.
fn all_terms(ops: usize, symbols: &[GeneratorSymbol]) -> Vec<Term> {
    if ops == 0 {
        return symbols.iter().map(|g| Term::Gen(g.clone())).collect();
    }
    let mut out = Vec::new();
    for left_ops in 0..ops {
        let lefts = all_terms(left_ops, symbols);
        let rights = all_terms(ops - 1 - left_ops, symbols);
        for l in &lefts {
            for r in &rights {
                for sign in [Sign::Pos, Sign::Neg] {
                    out.push(Term::op(l.clone(), sign, r.clone()));
                }
            }
        }
    }
    out
}

fn eval_term(
    t: &Term,
    q: &FiniteQuandle,
    assign: &BTreeMap<GeneratorSymbol, usize>,
) -> usize {
    match t {
        Term::Gen(g) => assign[g],
        Term::Op(l, s, r) => {
            let a = eval_term(l, q, assign);
            let b = eval_term(r, q, assign);
            match s {
                Sign::Pos => q.op(a, b),
                Sign::Neg => q.dual_op(a, b),
            }
        }
    }
}

fn assignments(
    symbols: &[GeneratorSymbol],
    order: usize,
) -> Vec<BTreeMap<GeneratorSymbol, usize>> {
    let mut out = Vec::new();
    let mut vals = vec![0usize; symbols.len()];
    loop {
        out.push(symbols.iter().cloned().zip(vals.iter().copied()).collect());
        let mut i = 0;
        loop {
            if i == vals.len() {
                return out;
            }
            vals[i] += 1;
            if vals[i] < order {
                break;
            }
            vals[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn normalization_preserves_evaluation_for_small_trees() {
    let symbols = [GeneratorSymbol::new("a"), GeneratorSymbol::new("b")];
    let terms: Vec<Term> = (0..=3).flat_map(|k| all_terms(k, &symbols)).collect();
    for q in catalog_up_to_4() {
        for assign in assignments(&symbols, q.order()) {
            for t in &terms {
                let word = normalize_left_normed(t);
                assert_eq!(
                    word.evaluate(&q, &assign).unwrap(),
                    eval_term(t, &q, &assign),
                    "tree {t} in {q:?}"
                );
            }
        }
    }
}

#[test]
fn the_paper_expansion_example_holds_everywhere() {
    let lhs = parse_word("t * (a1 * a2)").unwrap();
    assert_eq!(lhs.to_string(), "t / a2 * a1 * a2");
    let symbols = [
        GeneratorSymbol::new("t"),
        GeneratorSymbol::new("a1"),
        GeneratorSymbol::new("a2"),
    ];
    for q in catalog_up_to_4() {
        for assign in assignments(&symbols, q.order()) {
            let direct = q.op(
                assign[&symbols[0]],
                q.op(assign[&symbols[1]], assign[&symbols[2]]),
            );
            assert_eq!(lhs.evaluate(&q, &assign).unwrap(), direct);
        }
    }
}

// ---- property tests over random words ----

fn arb_sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Pos), Just(Sign::Neg)]
}

fn arb_word(max_len: usize, gens: usize) -> impl Strategy<Value = QuandleWord> {
    let letter = (0..gens, arb_sign());
    (0..gens, proptest::collection::vec(letter, 0..=max_len)).prop_map(|(head, tail)| {
        QuandleWord::new(
            GeneratorSymbol::new(format!("g{head}")),
            tail.into_iter()
                .map(|(g, s)| (GeneratorSymbol::new(format!("g{g}")), s))
                .collect(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn eta_exponent_sum_is_one(w in arb_word(8, 3)) {
        prop_assert_eq!(eta(&w).exponent_sum(), 1);
    }
}

proptest! {
    #[test]
    fn reduce_is_sound_and_stable(w in arb_word(6, 3)) {
        let r = w.reduce();
        prop_assert!(r.is_reduced());
        prop_assert_eq!(r.reduce(), r.clone());
        prop_assert_eq!(eta(&w), eta(&r));
        // evaluation agreement in a couple of fixed models
        let symbols: Vec<GeneratorSymbol> =
            (0..3).map(|i| GeneratorSymbol::new(format!("g{i}"))).collect();
        for q in [FiniteQuandle::dihedral(5), FiniteQuandle::trivial(3)] {
            for assign in assignments(&symbols, q.order()).into_iter().step_by(7) {
                prop_assert_eq!(
                    w.evaluate(&q, &assign).unwrap(),
                    r.evaluate(&q, &assign).unwrap()
                );
            }
        }
    }

    #[test]
    fn free_words_are_equal_iff_reduced_forms_agree(
        u in arb_word(5, 2),
        v in arb_word(5, 2),
    ) {
        let p = QuandlePresentation::new(
            (0..2).map(|i| GeneratorSymbol::new(format!("g{i}"))).collect(),
            vec![],
        )
        .unwrap();
        let by_eta = free_quandle_equal(&p, &u, &v).unwrap();
        prop_assert_eq!(by_eta, u.reduce() == v.reduce());
    }
}

// ---- free products ----

fn random_presentation(seed: usize, prefix: &str) -> QuandlePresentation {
    // small deterministic family: cyclic Cayley presentations and free points
    match seed % 3 {
        0 => QuandlePresentation::point(format!("{prefix}p")),
        1 => cayley_presentation(&FiniteQuandle::trivial(2), prefix),
        _ => cayley_presentation(&FiniteQuandle::dihedral(3), prefix),
    }
}

#[test]
fn free_product_is_associative_after_sorting() {
    for i in 0..27 {
        let a = random_presentation(i, "a");
        let b = random_presentation(i / 3, "b");
        let c = random_presentation(i / 9, "c");
        let left = a.free_product(&b).free_product(&c);
        let right = a.free_product(&b.free_product(&c));
        assert_eq!(left.canonical_key(), right.canonical_key());
        assert_eq!(left.factor_count(), right.factor_count());
    }
}

#[test]
fn associated_group_splits_over_free_products() {
    for i in 0..9 {
        let a = random_presentation(i, "a");
        let b = random_presentation(i / 3, "b");
        assert!(as_free_product_check(&a, &b));
    }
}

//! The acceptance gate: one test per criterion, each printing a pass/fail
//! line and asserting both the checked values and the stated time limit.
//! Criteria run serialized so the timings are honest.

mod common;

use std::collections::BTreeMap;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use quandle::{
    abelianization_rank, as_free_product_check, braid_closure, cayley_presentation,
    count_colorings, enumerate_quandles, eta, free_quandle_equal, normalize_left_normed,
    parse_braid, parse_word, quotient_coset_hom, separate, split_union, wirtinger_quandle,
    word_problem, Budget, Catalog, FiniteGroup, FiniteQuandle, GeneratorSymbol, LinkDiagram,
    QuandlePresentation, QuandleWord, Sign, Term, WpVerdict,
};

static GATE: Mutex<()> = Mutex::new(());

fn criterion(name: &str, limit: Duration, body: impl FnOnce() -> Result<(), String>) {
    let _g = GATE.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let verdict = if result.is_ok() && in_time { "pass" } else { "FAIL" };
    println!("acceptance {name}: {verdict} ({elapsed:.2?}, limit {limit:?})");
    if let Err(msg) = result {
        panic!("criterion {name} failed: {msg}");
    }
    assert!(in_time, "criterion {name} exceeded {limit:?}: took {elapsed:.2?}");
}

fn t_star_r3() -> QuandlePresentation {
    QuandlePresentation::point("t")
        .free_product(&cayley_presentation(&FiniteQuandle::dihedral(3), "a"))
}

fn trefoil() -> LinkDiagram {
    braid_closure(&parse_braid("s1 s1 s1", None).unwrap())
}

#[test]
fn criterion_1_paper_equality_example() {
    criterion("1 (free-product equality example)", Duration::from_secs(5), || {
        let p = t_star_r3();
        let u = parse_word("(t * a1) * a2").map_err(|e| e.to_string())?;
        let v = parse_word("(t * a2) * a0").map_err(|e| e.to_string())?;
        let catalog = Catalog::new(6);
        let r = word_problem(&p, &u, &v, &Budget::default(), &catalog);
        match r.verdict {
            WpVerdict::Equal(trace) => {
                trace.replay(&p).map_err(|e| format!("trace does not replay: {e}"))?;
                if trace.start() != &u || trace.end() != &v {
                    return Err("trace endpoints differ from the input words".into());
                }
            }
            other => return Err(format!("expected Equal, got {other:?}")),
        }
        let members = catalog.up_to(6).map_err(|e| e.to_string())?;
        match separate(&p, &u, &v, &members, &Budget::default()) {
            Ok(None) => Ok(()),
            Ok(Some(w)) => Err(format!("spurious witness {w:?}")),
            Err(e) => Err(format!("separation did not complete: {e}")),
        }
    });
}

#[test]
fn criterion_2_census_counts() {
    criterion("2a (census oracle, n <= 4)", Duration::from_secs(60), || {
        let expected = [(1, 1), (1, 1), (5, 3), (36, 7)];
        for n in 1..=4 {
            let (labeled, classes) = common::oracle_census_counts(n);
            if (labeled, classes) != expected[n - 1] {
                return Err(format!(
                    "oracle at order {n}: got {:?}, expected {:?}",
                    (labeled, classes),
                    expected[n - 1]
                ));
            }
        }
        Ok(())
    });
    criterion("2b (optimized census, n <= 5)", Duration::from_secs(300), || {
        let expected = [1usize, 1, 3, 7, 22];
        for n in 1..=5 {
            let got = enumerate_quandles(n, true).map_err(|e| e.to_string())?.len();
            if got != expected[n - 1] {
                return Err(format!("order {n}: got {got}, expected {}", expected[n - 1]));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_3_coloring_counts() {
    let cases: [(&str, FiniteQuandle, u64); 3] = [
        ("trefoil x dihedral(3)", FiniteQuandle::dihedral(3), 9),
        ("figure-eight x dihedral(5)", FiniteQuandle::dihedral(5), 25),
        ("hopf x trivial(2)", FiniteQuandle::trivial(2), 4),
    ];
    let braids = ["s1 s1 s1", "s1 s2^-1 s1 s2^-1", "s1 s1"];
    for ((name, target, expected), braid) in cases.into_iter().zip(braids) {
        criterion(&format!("3 ({name})"), Duration::from_secs(1), || {
            let d = braid_closure(&parse_braid(braid, None).unwrap());
            let p = wirtinger_quandle(&d);
            let fast = count_colorings(&p, &target);
            let oracle = common::oracle_count_colorings(&p, &target);
            if fast != expected || oracle != expected {
                return Err(format!(
                    "got {fast} (oracle {oracle}), expected {expected}"
                ));
            }
            Ok(())
        });
    }
}

fn fuzz_word(rng: &mut ChaCha8Rng, p: &QuandlePresentation, max_len: usize) -> QuandleWord {
    let gens = p.generators();
    let mut w = QuandleWord::generator(gens[rng.gen_range(0..gens.len())].clone());
    for _ in 0..rng.gen_range(0..=max_len) {
        let g = gens[rng.gen_range(0..gens.len())].clone();
        let s = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
        w.push(g, s);
    }
    w
}

#[test]
fn criterion_4_separation_soundness_and_determinism() {
    criterion("4 (fuzzed separation)", Duration::from_secs(120), || {
        let catalog = Catalog::new(6);
        catalog.order(6).map_err(|e| e.to_string())?;
        let budget = Budget::default();
        let fq2 = QuandlePresentation::free_quandle(2);
        let split = split_union(&[trefoil(), LinkDiagram::unknot()]);

        let run = |tag: u64| -> Result<String, String> {
            let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0000 + tag);
            let mut log = String::new();
            for case in 0..200 {
                let p = if case % 2 == 0 { &fq2 } else { &split };
                let u = fuzz_word(&mut rng, p, 3);
                let v = fuzz_word(&mut rng, p, 3);
                let r = word_problem(p, &u, &v, &budget, &catalog);
                match &r.verdict {
                    WpVerdict::Distinct(w) => {
                        w.replay(&u, &v).map_err(|e| format!("{u} vs {v}: {e}"))?;
                    }
                    WpVerdict::Equal(t) => {
                        t.replay(p).map_err(|e| format!("{u} vs {v}: {e}"))?;
                    }
                    WpVerdict::Unknown(_) => {
                        if case % 2 == 0 {
                            return Err(format!("Unknown on the free quandle: {u} vs {v}"));
                        }
                    }
                }
                if case % 2 == 0 {
                    let expect = free_quandle_equal(&fq2, &u, &v).unwrap();
                    let agree = match &r.verdict {
                        WpVerdict::Equal(_) => expect,
                        WpVerdict::Distinct(_) => !expect,
                        WpVerdict::Unknown(_) => false,
                    };
                    if !agree {
                        return Err(format!("verdict disagrees with eta on {u} vs {v}"));
                    }
                }
                log.push_str(&serde_json::to_string(&r).unwrap());
                log.push('\n');
            }
            Ok(log)
        };
        let first = run(7)?;
        let second = run(7)?;
        if first != second {
            return Err("repeated runs differ".into());
        }
        Ok(())
    });
}

#[test]
fn criterion_5_structural_theorems() {
    criterion("5 (structural theorems)", Duration::from_secs(60), || {
        // associated groups split over free products: 100 fuzzed pairs
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0005);
        let pool: Vec<FiniteQuandle> = (1..=3)
            .flat_map(|n| enumerate_quandles(n, true).unwrap())
            .collect();
        for i in 0..100 {
            let pick = |rng: &mut ChaCha8Rng, prefix: &str| {
                if rng.gen_bool(0.3) {
                    QuandlePresentation::point(format!("{prefix}pt"))
                } else {
                    let q = &pool[rng.gen_range(0..pool.len())];
                    cayley_presentation(q, prefix)
                }
            };
            let a = pick(&mut rng, "l");
            let b = pick(&mut rng, "r");
            if !as_free_product_check(&a, &b) {
                return Err(format!("free-product check failed on fuzz case {i}"));
            }
        }
        // eta exponent sum: 1000 fuzzed words
        let gens = QuandlePresentation::free_quandle(4);
        for _ in 0..1000 {
            let w = fuzz_word(&mut rng, &gens, 10);
            if eta(&w).exponent_sum() != 1 {
                return Err(format!("eta exponent sum != 1 on {w}"));
            }
        }
        // abelianization rank = component count
        let hopf = braid_closure(&parse_braid("s1 s1", None).unwrap());
        let cases = [
            (wirtinger_quandle(&trefoil()), 1usize, "trefoil"),
            (wirtinger_quandle(&hopf), 2, "hopf"),
            (split_union(&[trefoil(), LinkDiagram::unknot()]), 2, "trefoil + unknot"),
        ];
        for (p, expected, name) in cases {
            let got = abelianization_rank(&p);
            if got != expected {
                return Err(format!("{name}: rank {got}, expected {expected}"));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_6_word_calculus_soundness() {
    criterion("6 (exhaustive word-calculus model check)", Duration::from_secs(120), || {
        let symbols: Vec<GeneratorSymbol> =
            (0..3).map(|i| GeneratorSymbol::new(format!("g{i}"))).collect();
        let catalog: Vec<FiniteQuandle> = (1..=4)
            .flat_map(|n| enumerate_quandles(n, true).unwrap())
            .collect();

        // every word with tail length <= 4 over three generators
        let letters: Vec<(GeneratorSymbol, Sign)> = symbols
            .iter()
            .flat_map(|g| [(g.clone(), Sign::Pos), (g.clone(), Sign::Neg)])
            .collect();
        let mut words: Vec<QuandleWord> =
            symbols.iter().cloned().map(QuandleWord::generator).collect();
        let mut layer = words.clone();
        for _ in 0..4 {
            layer = layer
                .iter()
                .flat_map(|w| {
                    letters.iter().map(move |(g, s)| {
                        let mut next = w.clone();
                        next.push(g.clone(), *s);
                        next
                    })
                })
                .collect();
            words.extend(layer.iter().cloned());
        }
        let reduced: Vec<QuandleWord> = words.iter().map(QuandleWord::reduce).collect();

        // every operation tree with <= 4 operations, with normal forms
        let trees: Vec<Term> = (0..=4).flat_map(|k| all_terms(k, &symbols)).collect();
        let normals: Vec<QuandleWord> = trees.iter().map(normalize_left_normed).collect();

        // all (quandle, assignment) contexts over the order <= 4 catalog
        let contexts: Vec<(&FiniteQuandle, Vec<usize>)> = catalog
            .iter()
            .flat_map(|q| {
                let n = q.order();
                (0..n * n * n).map(move |code| {
                    (q, vec![code % n, code / n % n, code / (n * n)])
                })
            })
            .collect();

        let failures: Vec<String> = contexts
            .par_iter()
            .flat_map_iter(|(q, vals)| {
                let assign: BTreeMap<GeneratorSymbol, usize> = symbols
                    .iter()
                    .cloned()
                    .zip(vals.iter().copied())
                    .collect();
                let mut bad = Vec::new();
                let val: Vec<usize> = words
                    .iter()
                    .map(|w| w.evaluate(q, &assign).unwrap())
                    .collect();

                // reduce preserves evaluation
                for (w, r) in val.iter().zip(&reduced) {
                    if *w != r.evaluate(q, &assign).unwrap() {
                        bad.push(format!("reduce broke a word in {q:?}"));
                    }
                }
                // normalization agrees with direct tree evaluation
                for (t, w) in trees.iter().zip(&normals) {
                    if eval_term(t, q, &assign) != w.evaluate(q, &assign).unwrap() {
                        bad.push(format!("normalize broke {t} in {q:?}"));
                    }
                }
                // the shift preserves and reflects equality: for every target
                // word v and every possible left value x,
                //   x = eval(v)  iff  shifting x back through v's tail
                //                     lands on eval of v's bare head
                for (v, vv) in words.iter().zip(&val) {
                    let head_val = assign[v.head()];
                    for x in 0..q.order() {
                        let mut shifted = x;
                        for (g, s) in v.tail().iter().rev() {
                            let y = assign[g];
                            shifted = match s {
                                Sign::Pos => q.dual_op(shifted, y),
                                Sign::Neg => q.op(shifted, y),
                            };
                        }
                        if (x == *vv) != (shifted == head_val) {
                            bad.push(format!("shift broke {v} at x={x} in {q:?}"));
                        }
                    }
                }
                bad
            })
            .collect();
        if failures.is_empty() {
            Ok(())
        } else {
            Err(format!("{} failures, first: {}", failures.len(), failures[0]))
        }
    });
}

fn all_terms(ops: usize, symbols: &[GeneratorSymbol]) -> Vec<Term> {
    if ops == 0 {
        return symbols.iter().map(|g| Term::Gen(g.clone())).collect();
    }
    let mut out = Vec::new();
    for left_ops in 0..ops {
        for l in all_terms(left_ops, symbols) {
            for r in all_terms(ops - 1 - left_ops, symbols) {
                for sign in [Sign::Pos, Sign::Neg] {
                    out.push(Term::op(l.clone(), sign, r.clone()));
                }
            }
        }
    }
    out
}

fn eval_term(t: &Term, q: &FiniteQuandle, assign: &BTreeMap<GeneratorSymbol, usize>) -> usize {
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

#[test]
fn criterion_7_coset_quotient_homomorphisms() {
    criterion("7 (coset quotient homomorphisms)", Duration::from_secs(1), || {
        // C6 -> C3 with H = {id}, z = 1
        let c6 = FiniteGroup::cyclic(6);
        let c3 = FiniteGroup::cyclic(3);
        let phi: Vec<usize> = (0..6).map(|x| x % 3).collect();
        let hom = quotient_coset_hom(&c6, &[(vec![c6.id()], 1)], &c3, &phi)
            .map_err(|e| e.to_string())?;
        for v in 0..hom.target.quandle.order() {
            if hom.map.iter().filter(|&&m| m == v).count() != 2 {
                return Err("C6 -> C3 induced map is not 2-to-1".into());
            }
        }

        // S3 -> S3/A3 (realized as C2 via the sign map), two parts
        let s3 = FiniteGroup::symmetric(3);
        let c2 = FiniteGroup::cyclic(2);
        let t = FiniteGroup::symmetric_index(3, &[1, 0, 2]).unwrap();
        let r = FiniteGroup::symmetric_index(3, &[1, 2, 0]).unwrap();
        let parts = vec![(s3.cyclic_subgroup(t), t), (s3.cyclic_subgroup(r), r)];
        let even = [
            FiniteGroup::symmetric_index(3, &[0, 1, 2]).unwrap(),
            FiniteGroup::symmetric_index(3, &[1, 2, 0]).unwrap(),
            FiniteGroup::symmetric_index(3, &[2, 0, 1]).unwrap(),
        ];
        let sign: Vec<usize> = (0..6).map(|x| usize::from(!even.contains(&x))).collect();
        let hom = quotient_coset_hom(&s3, &parts, &c2, &sign).map_err(|e| e.to_string())?;
        for (i, label) in hom.source.elements.iter().enumerate() {
            if hom.target.elements[hom.map[i]].part != label.part {
                return Err(format!("part tag broken at source element {i}"));
            }
        }
        Ok(())
    });
}

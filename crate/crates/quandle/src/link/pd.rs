//! PD-code input: `X(a,b,c,d)` tuples over edge labels.
//!
//! Convention: the under-strand enters at `a` and leaves at `c`; `b` and `d`
//! are the over-strand edges, which belong to the same arc. Edge labels
//! increase along the orientation, so the crossing is positive when the over
//! strand runs `d -> b` (`b = d + 1`, or wrapped: `d - b > 1`) and negative
//! when it runs `b -> d`.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{Crossing, DiagramError, LinkDiagram};
use crate::presentation::Sign;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PdError {
    #[error("bad PD syntax at byte {position}: expected {expected}")]
    SyntaxError { position: usize, expected: &'static str },
    #[error("edge label {label} appears {count} times; every edge must appear exactly twice")]
    InconsistentArcs { label: usize, count: usize },
    #[error("{0}")]
    Diagram(#[from] DiagramError),
}

/// Parses PD notation. Empty input yields the crossingless unknot by
/// convention (the CLI warns when that happens).
pub fn parse_pd(text: &str) -> Result<LinkDiagram, PdError> {
    let tuples = scan_tuples(text)?;
    if tuples.is_empty() {
        return Ok(LinkDiagram::unknot());
    }

    let mut label_count: BTreeMap<usize, usize> = BTreeMap::new();
    for t in &tuples {
        for &l in t {
            *label_count.entry(l).or_insert(0) += 1;
        }
    }
    if let Some((&label, &count)) = label_count.iter().find(|(_, &c)| c != 2) {
        return Err(PdError::InconsistentArcs { label, count });
    }

    // merge the over-strand edges b and d of each crossing into arcs
    let labels: Vec<usize> = label_count.keys().copied().collect();
    let index_of = |l: usize| labels.binary_search(&l).expect("label known");
    let mut uf: Vec<usize> = (0..labels.len()).collect();
    fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for &[_, b, _, d] in &tuples {
        let (rb, rd) = (find(&mut uf, index_of(b)), find(&mut uf, index_of(d)));
        if rb != rd {
            uf[rb] = rd;
        }
    }
    let mut reps: Vec<usize> = (0..labels.len()).map(|i| find(&mut uf, i)).collect();
    let mut sorted_reps = reps.clone();
    sorted_reps.sort_unstable();
    sorted_reps.dedup();
    for r in reps.iter_mut() {
        *r = sorted_reps.binary_search(r).expect("rep present");
    }
    let arcs = sorted_reps.len();
    let arc_of = |label: usize| reps[index_of(label)];

    let crossings: Vec<Crossing> = tuples
        .iter()
        .map(|&[a, b, c, d]| {
            let sign = if b == d + 1 || (d > b && d - b > 1) {
                Sign::Pos
            } else {
                Sign::Neg
            };
            Crossing {
                over: arc_of(b),
                under_in: arc_of(a),
                under_out: arc_of(c),
                sign,
            }
        })
        .collect();

    // components: under-strand continuity joins arcs across crossings
    let mut cf: Vec<usize> = (0..arcs).collect();
    for c in &crossings {
        let (ra, rc) = (find(&mut cf, c.under_in), find(&mut cf, c.under_out));
        if ra != rc {
            cf[ra] = rc;
        }
    }
    let mut components: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for arc in 0..arcs {
        components.entry(find(&mut cf, arc)).or_default().push(arc);
    }
    let components: Vec<Vec<usize>> = components.into_values().collect();

    Ok(LinkDiagram::new(arcs, crossings, components)?)
}

fn scan_tuples(text: &str) -> Result<Vec<[usize; 4]>, PdError> {
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    let mut out = Vec::new();
    // commas are allowed between tuples but are significant inside them
    let skip_sep = |i: &mut usize| {
        while *i < bytes.len() && (bytes[*i].1.is_whitespace() || bytes[*i].1 == ',') {
            *i += 1;
        }
    };
    let skip_space = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].1.is_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip_sep(&mut i);
        if i >= bytes.len() {
            return Ok(out);
        }
        let (pos, c) = bytes[i];
        if c != 'X' {
            return Err(PdError::SyntaxError { position: pos, expected: "'X'" });
        }
        i += 1;
        skip_space(&mut i);
        if i >= bytes.len() || bytes[i].1 != '(' {
            let position = bytes.get(i).map_or(text.len(), |&(p, _)| p);
            return Err(PdError::SyntaxError { position, expected: "'('" });
        }
        i += 1;
        let mut tuple = [0usize; 4];
        for (slot, entry) in tuple.iter_mut().enumerate() {
            skip_space(&mut i);
            let start = i;
            while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                i += 1;
            }
            if i == start {
                let position = bytes.get(i).map_or(text.len(), |&(p, _)| p);
                return Err(PdError::SyntaxError { position, expected: "an edge label" });
            }
            let digits: String = bytes[start..i].iter().map(|&(_, c)| c).collect();
            *entry = digits.parse().map_err(|_| PdError::SyntaxError {
                position: bytes[start].0,
                expected: "an edge label",
            })?;
            skip_space(&mut i);
            let want = if slot == 3 { ')' } else { ',' };
            match bytes.get(i) {
                Some(&(_, c)) if c == want => i += 1,
                other => {
                    let position = other.map_or(text.len(), |&(p, _)| p);
                    return Err(PdError::SyntaxError {
                        position,
                        expected: if slot == 3 { "')'" } else { "','" },
                    });
                }
            }
        }
        out.push(tuple);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_quandle::FiniteQuandle;
    use crate::homomorphism::count_colorings;
    use crate::link::wirtinger_quandle;

    const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

    #[test]
    fn trefoil_pd_shape_and_colorings() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.arcs(), 3);
        assert_eq!(d.crossings().len(), 3);
        assert_eq!(d.components().len(), 1);
        assert!(d.crossings().iter().all(|c| c.sign == Sign::Neg));
        let p = wirtinger_quandle(&d);
        assert_eq!(count_colorings(&p, &FiniteQuandle::dihedral(3)), 9);
    }

    #[test]
    fn repeated_labels_are_rejected() {
        assert_eq!(
            parse_pd("X(1,1,1,1)").unwrap_err(),
            PdError::InconsistentArcs { label: 1, count: 4 }
        );
        assert_eq!(
            parse_pd("X(1,2,3,4)").unwrap_err(),
            PdError::InconsistentArcs { label: 1, count: 1 }
        );
    }

    #[test]
    fn empty_input_is_the_unknot() {
        assert_eq!(parse_pd("").unwrap(), LinkDiagram::unknot());
        assert_eq!(parse_pd("  \n ").unwrap(), LinkDiagram::unknot());
    }

    #[test]
    fn kinked_unknot() {
        let d = parse_pd("X(1,1,2,2)").unwrap();
        assert_eq!(d.arcs(), 1);
        assert_eq!(d.crossings().len(), 1);
        let p = wirtinger_quandle(&d);
        assert_eq!(count_colorings(&p, &FiniteQuandle::dihedral(5)), 5);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(
            parse_pd("Y(1,2,3,4)").unwrap_err(),
            PdError::SyntaxError { position: 0, .. }
        ));
        assert!(matches!(
            parse_pd("X(1,2,3)").unwrap_err(),
            PdError::SyntaxError { .. }
        ));
        assert!(matches!(
            parse_pd("X(1,2,3,x)").unwrap_err(),
            PdError::SyntaxError { .. }
        ));
    }

    #[test]
    fn mirrored_trefoil_pd_has_positive_crossings() {
        // swapping b and d in every tuple mirrors the diagram
        let d = parse_pd("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)").unwrap();
        assert!(d.crossings().iter().all(|c| c.sign == Sign::Pos));
        let p = wirtinger_quandle(&d);
        assert_eq!(count_colorings(&p, &FiniteQuandle::dihedral(3)), 9);
    }
}

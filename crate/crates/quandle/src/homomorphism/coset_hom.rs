//! Quandle homomorphisms between disjoint-union coset quandles induced by a
//! group homomorphism: `H_i x -> phi(H_i) phi(x)`, part by part.

use thiserror::Error;

use crate::finite_quandle::{disjoint_union_coset, CosetError, CosetQuandle, FiniteGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosetHomError {
    #[error("phi image vector has wrong length or out-of-range values")]
    BadMap,
    #[error("phi is not a homomorphism: phi({x} {y}) != phi({x}) phi({y})")]
    NotHomomorphism { x: usize, y: usize },
    #[error("{0}")]
    Coset(#[from] CosetError),
    #[error("induced map fails to be a quandle homomorphism at ({x}, {y})")]
    InducedMapBroken { x: usize, y: usize },
}

/// The induced map between `⊔(G, H_i, z_i)` and `⊔(F, phi(H_i), phi(z_i))`,
/// verified on the tables.
#[derive(Debug, Clone)]
pub struct InducedCosetHom {
    pub source: CosetQuandle,
    pub target: CosetQuandle,
    /// Element-wise images, source index to target index.
    pub map: Vec<usize>,
}

/// Builds the source and target disjoint-union coset quandles and the
/// induced quandle homomorphism between them, checking `phi` on the group
/// tables first.
pub fn quotient_coset_hom(
    g: &FiniteGroup,
    parts: &[(Vec<usize>, usize)],
    f: &FiniteGroup,
    phi: &[usize],
) -> Result<InducedCosetHom, CosetHomError> {
    if phi.len() != g.order() || phi.iter().any(|&v| v >= f.order()) {
        return Err(CosetHomError::BadMap);
    }
    g.check_homomorphism(f, phi)
        .map_err(|(x, y)| CosetHomError::NotHomomorphism { x, y })?;

    let source = disjoint_union_coset(g, parts)?;
    let target_parts: Vec<(Vec<usize>, usize)> = parts
        .iter()
        .map(|(h, z)| {
            let mut hbar: Vec<usize> = h.iter().map(|&e| phi[e]).collect();
            hbar.sort_unstable();
            hbar.dedup();
            (hbar, phi[*z])
        })
        .collect();
    let target = disjoint_union_coset(f, &target_parts)?;

    let map: Vec<usize> = source
        .elements
        .iter()
        .map(|label| {
            let hbar = &target_parts[label.part].0;
            target.element_of(f, hbar, label.part, phi[label.rep])
        })
        .collect();

    // verify the induced map on the quandle tables
    let n = source.quandle.order();
    for x in 0..n {
        for y in 0..n {
            if target.quandle.op(map[x], map[y]) != map[source.quandle.op(x, y)] {
                return Err(CosetHomError::InducedMapBroken { x, y });
            }
        }
    }
    Ok(InducedCosetHom { source, target, map })
}

//! Combinatorial link diagrams and the presentations read off them: the
//! link quandle (arc generators, one Cayley-shaped relation per crossing)
//! and the link group (its associated group).

mod braid;
mod pd;

pub use braid::{braid_closure, parse_braid, BraidError, BraidWord};
pub use pd::{parse_pd, PdError};

use serde::de::Error as _;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::associated_group::{associated_group, GroupPresentation};
use crate::presentation::{GeneratorSymbol, QuandlePresentation, QuandleWord, Sign};

/// One crossing: the arc passing over, the under-strand arcs entering and
/// leaving, and the crossing sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: Sign,
}

impl Serialize for Crossing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.over, self.under_in, self.under_out, self.sign.as_i8()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Crossing {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (over, under_in, under_out, s) = <(usize, usize, usize, i8)>::deserialize(d)?;
        Ok(Crossing {
            over,
            under_in,
            under_out,
            sign: Sign::from_i8(s).ok_or_else(|| D::Error::custom("sign must be 1 or -1"))?,
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("crossing refers to arc {arc} but there are only {arcs} arcs")]
    ArcOutOfRange { arc: usize, arcs: usize },
    #[error("components do not partition the arc set")]
    BadComponents,
    #[error("arc {arc} enters {ins} crossings as under-strand but leaves {outs}")]
    UnbalancedArc { arc: usize, ins: usize, outs: usize },
    #[error("component {component} mixes closed arcs with under-passing arcs")]
    MixedComponent { component: usize },
}

/// A link diagram with arcs numbered `0..arcs`, split at under-crossings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkDiagram {
    arcs: usize,
    crossings: Vec<Crossing>,
    components: Vec<Vec<usize>>,
}

impl LinkDiagram {
    pub fn new(
        arcs: usize,
        crossings: Vec<Crossing>,
        components: Vec<Vec<usize>>,
    ) -> Result<Self, DiagramError> {
        let d = LinkDiagram { arcs, crossings, components };
        d.validate()?;
        Ok(d)
    }

    /// A crossingless unknot.
    pub fn unknot() -> Self {
        LinkDiagram {
            arcs: 1,
            crossings: Vec::new(),
            components: vec![vec![0]],
        }
    }

    pub fn arcs(&self) -> usize {
        self.arcs
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// The same diagram with every crossing sign flipped; the induced
    /// presentation swaps the operation and its dual in every relation.
    pub fn mirror(&self) -> LinkDiagram {
        LinkDiagram {
            arcs: self.arcs,
            crossings: self
                .crossings
                .iter()
                .map(|c| Crossing { sign: c.sign.flip(), ..*c })
                .collect(),
            components: self.components.clone(),
        }
    }

    /// Diagram consistency: components partition the arcs; every arc enters
    /// as many crossings under as it leaves (at most one of each); closed
    /// arcs (never passing under) are alone in their component.
    pub fn validate(&self) -> Result<(), DiagramError> {
        for c in &self.crossings {
            for arc in [c.over, c.under_in, c.under_out] {
                if arc >= self.arcs {
                    return Err(DiagramError::ArcOutOfRange { arc, arcs: self.arcs });
                }
            }
        }
        let mut seen = vec![false; self.arcs];
        for comp in &self.components {
            for &a in comp {
                if a >= self.arcs || seen[a] {
                    return Err(DiagramError::BadComponents);
                }
                seen[a] = true;
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(DiagramError::BadComponents);
        }
        let mut ins = vec![0usize; self.arcs];
        let mut outs = vec![0usize; self.arcs];
        for c in &self.crossings {
            ins[c.under_in] += 1;
            outs[c.under_out] += 1;
        }
        for arc in 0..self.arcs {
            if ins[arc] != outs[arc] || ins[arc] > 1 {
                return Err(DiagramError::UnbalancedArc {
                    arc,
                    ins: ins[arc],
                    outs: outs[arc],
                });
            }
        }
        for (component, comp) in self.components.iter().enumerate() {
            let closed = comp.iter().filter(|&&a| ins[a] == 0).count();
            if closed > 0 && comp.len() > 1 {
                return Err(DiagramError::MixedComponent { component });
            }
        }
        Ok(())
    }
}

impl<'de> Deserialize<'de> for LinkDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            arcs: usize,
            crossings: Vec<Crossing>,
            components: Vec<Vec<usize>>,
        }
        let raw = Raw::deserialize(d)?;
        LinkDiagram::new(raw.arcs, raw.crossings, raw.components).map_err(D::Error::custom)
    }
}

/// The arc presentation of the link quandle: one generator per arc, one
/// relation `under_out = under_in *^{sign} over` per crossing. All relations
/// are in Cayley shape.
pub fn wirtinger_quandle(d: &LinkDiagram) -> QuandlePresentation {
    let gens: Vec<GeneratorSymbol> = (0..d.arcs())
        .map(|i| GeneratorSymbol::new(format!("a{i}")))
        .collect();
    let relations = d
        .crossings()
        .iter()
        .map(|c| {
            let lhs = QuandleWord::generator(gens[c.under_out].clone());
            let mut rhs = QuandleWord::generator(gens[c.under_in].clone());
            rhs.push(gens[c.over].clone(), c.sign);
            (lhs, rhs)
        })
        .collect();
    QuandlePresentation::new(gens, relations).expect("arc presentation is well formed")
}

/// The link group: the associated group of the link quandle, i.e. the
/// Wirtinger presentation.
pub fn link_group(d: &LinkDiagram) -> GroupPresentation {
    associated_group(&wirtinger_quandle(d))
}

/// The split union of several diagrams: the free product of their link
/// quandle presentations, factor-tagged in input order.
pub fn split_union(ds: &[LinkDiagram]) -> QuandlePresentation {
    let mut parts = ds.iter().map(wirtinger_quandle);
    let first = parts.next().expect("at least one diagram");
    parts.fold(first, |acc, p| acc.free_product(&p))
}

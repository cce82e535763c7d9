//! Closed covers by stars and their nerves.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{ComplexError, Simplex, SimplicialComplex, Vertex};
use crate::homology;

/// Subcomplexes of one ambient complex whose union is the whole complex.
///
/// A cover built from closed stars remembers its centers. Its intersections
/// are then taken on the open stars and closed afterwards, which is what
/// intersecting the pieces as closures of open sets means: for centers
/// `σ₁..σₖ` the result is `Star(σ₁ ∪ .. ∪ σₖ)` if that union is a simplex and
/// empty otherwise. The raw set-theoretic intersection of the closed pieces is
/// available as [`ClosedCover::literal_intersection`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedCover {
    ambient: SimplicialComplex,
    pieces: Vec<SimplicialComplex>,
    centers: Option<Vec<Simplex>>,
}

impl ClosedCover {
    pub fn new(ambient: SimplicialComplex, pieces: Vec<SimplicialComplex>) -> Result<Self, ComplexError> {
        for p in &pieces {
            if let Some(s) = p.simplices().find(|s| !ambient.contains(s)) {
                return Err(ComplexError::NotASubcomplex(s.clone()));
            }
        }
        for s in ambient.simplices() {
            if !pieces.iter().any(|p| p.contains(s)) {
                return Err(ComplexError::NotACover(s.clone()));
            }
        }
        Ok(ClosedCover { ambient, pieces, centers: None })
    }

    pub fn ambient(&self) -> &SimplicialComplex {
        &self.ambient
    }

    pub fn pieces(&self) -> &[SimplicialComplex] {
        &self.pieces
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn centers(&self) -> Option<&[Simplex]> {
        self.centers.as_deref()
    }

    /// Intersection of the pieces with the given indices (open-star rule for star covers).
    pub fn intersection(&self, indices: &[usize]) -> SimplicialComplex {
        match &self.centers {
            Some(centers) if !indices.is_empty() => {
                let union = indices.iter().skip(1).fold(centers[indices[0]].clone(), |u, &j| u.union(&centers[j]));
                self.ambient.closed_star(&union).unwrap_or_default()
            }
            _ => self.literal_intersection(indices),
        }
    }

    /// Set-theoretic intersection of the closed pieces.
    pub fn literal_intersection(&self, indices: &[usize]) -> SimplicialComplex {
        let mut it = indices.iter();
        let Some(&first) = it.next() else {
            return self.ambient.clone();
        };
        it.fold(self.pieces[first].clone(), |acc, &j| acc.intersect(&self.pieces[j]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoverBasis {
    Vertices,
    AllSimplices,
}

/// Closed stars of every vertex (or every simplex), in lexicographic order of the centers.
pub fn closed_star_cover(k: &SimplicialComplex, over: CoverBasis) -> ClosedCover {
    let centers: Vec<Simplex> = match over {
        CoverBasis::Vertices => k.vertices().map(Simplex::vertex).collect(),
        CoverBasis::AllSimplices => k.simplices().cloned().collect(),
    };
    let pieces = centers.iter().map(|c| k.closed_star(c).expect("center is a simplex")).collect();
    ClosedCover { ambient: k.clone(), pieces, centers: Some(centers) }
}

/// Complex on `0..m` with a simplex for every set of pieces meeting in a nonempty set.
pub fn nerve(cover: &ClosedCover) -> SimplicialComplex {
    let m = cover.pieces.len();
    let mut simplices = BTreeSet::new();
    // Depth-first over increasing index sets; supersets of an empty
    // intersection are never explored.
    let mut stack: Vec<Vec<usize>> = (0..m).rev().filter(|&i| !cover.pieces[i].is_empty()).map(|i| vec![i]).collect();
    while let Some(idx) = stack.pop() {
        let last = *idx.last().expect("nonempty");
        simplices.insert(Simplex::from_sorted(idx.iter().map(|&i| i as Vertex).collect()));
        for j in (last + 1..m).rev() {
            let mut nidx = idx.clone();
            nidx.push(j);
            if !cover.intersection(&nidx).is_empty() {
                stack.push(nidx);
            }
        }
    }
    SimplicialComplex::from_closed_set(simplices)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionCheck {
    pub pieces: Vec<usize>,
    pub empty: bool,
    pub acyclic: bool,
}

impl IntersectionCheck {
    /// Empty or acyclic, the homological shadow of "empty or contractible".
    pub fn passes(&self) -> bool {
        self.empty || self.acyclic
    }
}

/// Acyclicity of every piece and of every nonempty intersection of up to
/// `max_arity` pieces. This is a necessary condition for a good cover; it
/// does not certify contractibility.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    pub piece_acyclic: Vec<bool>,
    pub intersections: Vec<IntersectionCheck>,
}

impl CoverCertificate {
    pub fn holds(&self) -> bool {
        self.piece_acyclic.iter().all(|&a| a) && self.intersections.iter().all(IntersectionCheck::passes)
    }
}

pub fn certify_cover(cover: &ClosedCover, max_arity: usize) -> CoverCertificate {
    let piece_acyclic = cover.pieces.iter().map(homology::is_acyclic).collect();
    let m = cover.pieces.len();
    let mut intersections = Vec::new();
    let mut frontier: Vec<Vec<usize>> = (0..m).map(|i| vec![i]).collect();
    for _arity in 2..=max_arity {
        let mut next = Vec::new();
        for idx in &frontier {
            let last = *idx.last().expect("nonempty");
            for j in last + 1..m {
                let mut nidx = idx.clone();
                nidx.push(j);
                let k = cover.intersection(&nidx);
                let empty = k.is_empty();
                intersections.push(IntersectionCheck {
                    pieces: nidx.clone(),
                    empty,
                    acyclic: !empty && homology::is_acyclic(&k),
                });
                if !empty {
                    next.push(nidx);
                }
            }
        }
        frontier = next;
    }
    CoverCertificate { piece_acyclic, intersections }
}

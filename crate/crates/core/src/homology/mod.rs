//! Integral simplicial chains and homology via Smith normal form.

mod chain;
mod snf;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use chain::{mapping_cone, ChainComplex, ChainMap};
pub use snf::{invariant_factors, rank, smith_normal_form, solve_integral, SmithForm};

use crate::complex::{Simplex, SimplicialComplex};
use crate::ring::{IntegerMatrix, Integers, Matrix};
use crate::simpmap::SimplicialMap;

pub type ChainComplexZ = ChainComplex<Integers>;
pub type ChainMapZ = ChainMap<Integers>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("d∘d is nonzero out of degree {degree}")]
    NotAComplex { degree: i32 },
    #[error("map does not commute with the boundary in degree {degree}")]
    NotAChainMap { degree: i32 },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// A finitely generated abelian group `Z^betti ⊕ ⊕ Z/t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        HomologyGroup { betti, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology in all degrees; only nonzero groups are stored.
/// Serialized as a list of `{degree, group}` entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(from = "Vec<DegreeGroup>", into = "Vec<DegreeGroup>")]
pub struct Homology {
    pub groups: BTreeMap<i32, HomologyGroup>,
}

#[derive(Serialize, Deserialize)]
struct DegreeGroup {
    degree: i32,
    #[serde(flatten)]
    group: HomologyGroup,
}

impl From<Vec<DegreeGroup>> for Homology {
    fn from(v: Vec<DegreeGroup>) -> Self {
        Homology { groups: v.into_iter().filter(|e| !e.group.is_zero()).map(|e| (e.degree, e.group)).collect() }
    }
}

impl From<Homology> for Vec<DegreeGroup> {
    fn from(h: Homology) -> Self {
        h.groups.into_iter().map(|(degree, group)| DegreeGroup { degree, group }).collect()
    }
}

impl Homology {
    pub fn get(&self, degree: i32) -> HomologyGroup {
        self.groups.get(&degree).cloned().unwrap_or_default()
    }

    pub fn betti(&self, degree: i32) -> usize {
        self.get(degree).betti
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    /// Lowest degree with nonzero homology.
    pub fn first_nonzero(&self) -> Option<(i32, &HomologyGroup)> {
        self.groups.iter().next().map(|(&i, g)| (i, g))
    }
}

impl fmt::Display for Homology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.groups.iter().map(|(i, g)| format!("H{i}={g}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Homology of a complex of free abelian groups.
pub fn homology_of(c: &ChainComplexZ) -> Result<Homology, HomologyError> {
    c.check_square_zero()?;
    Ok(homology_unchecked(c))
}

/// Homology without the `d² = 0` check, for complexes known to be valid.
pub fn homology_unchecked(c: &ChainComplexZ) -> Homology {
    let mut factors: BTreeMap<i32, Vec<BigInt>> = BTreeMap::new();
    for i in c.degrees() {
        factors.insert(i, invariant_factors(&c.d(i)));
    }
    let rank_of = |i: i32| factors.get(&i).map_or(0, Vec::len);
    let mut groups = BTreeMap::new();
    for i in c.degrees() {
        let betti = c.rank(i) - rank_of(i) - rank_of(i + 1);
        let torsion: Vec<BigInt> =
            factors.get(&(i + 1)).map_or_else(Vec::new, |f| f.iter().filter(|t| !t.is_one()).cloned().collect());
        let g = HomologyGroup { betti, torsion };
        if !g.is_zero() {
            groups.insert(i, g);
        }
    }
    Homology { groups }
}

/// Simplices of dimension `k`, in lexicographic order: the basis of `C_k`.
pub fn chain_basis(k: &SimplicialComplex) -> Vec<Vec<Simplex>> {
    k.graded()
}

fn index_of(basis: &[Simplex], s: &Simplex) -> usize {
    basis.binary_search(s).expect("face lies in the complex")
}

/// Simplicial chain complex with the alternating-face boundary. The reduced
/// version has an extra generator `∅` in degree -1 hit by every vertex.
pub fn chain_complex(k: &SimplicialComplex, reduced: bool) -> ChainComplexZ {
    let basis = chain_basis(k);
    let mut labels = Vec::new();
    let mut boundaries = Vec::new();
    if reduced {
        labels.push(vec!["∅".to_string()]);
        boundaries.push(Matrix::zeros(&Integers, 0, 1));
    }
    for (dim, cells) in basis.iter().enumerate() {
        labels.push(cells.iter().map(Simplex::to_string).collect());
        let d = if dim == 0 {
            if reduced {
                Matrix::filled(1, cells.len(), BigInt::one())
            } else {
                Matrix::zeros(&Integers, 0, cells.len())
            }
        } else {
            let below = &basis[dim - 1];
            let mut m = IntegerMatrix::filled(below.len(), cells.len(), BigInt::zero());
            for (j, s) in cells.iter().enumerate() {
                for (i, face) in s.facets().iter().enumerate() {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    m.set(index_of(below, face), j, BigInt::from(sign));
                }
            }
            m
        };
        boundaries.push(d);
    }
    let min_degree = if reduced { -1 } else { 0 };
    ChainComplex::new(Integers, min_degree, labels, boundaries).expect("simplicial boundary shapes agree")
}

/// Induced map on oriented chains: degenerate simplices go to zero.
pub fn induced_chain_map(f: &SimplicialMap, reduced: bool) -> ChainMapZ {
    let source = chain_complex(f.source(), reduced);
    let target = chain_complex(f.target(), reduced);
    let sb = chain_basis(f.source());
    let tb = chain_basis(f.target());
    let mut components = BTreeMap::new();
    if reduced {
        components.insert(-1, IntegerMatrix::from_i64_rows(&[&[1]]));
    }
    for (dim, cells) in sb.iter().enumerate() {
        let rows = tb.get(dim).map_or(0, Vec::len);
        let mut m = IntegerMatrix::filled(rows, cells.len(), BigInt::zero());
        for (j, s) in cells.iter().enumerate() {
            if let Some((img, sign)) = f.oriented_image(s) {
                m.set(index_of(&tb[dim], &img), j, BigInt::from(sign));
            }
        }
        components.insert(dim as i32, m);
    }
    ChainMap::new(source, target, components).expect("shapes agree")
}

pub fn homology(k: &SimplicialComplex) -> Homology {
    homology_unchecked(&chain_complex(k, false))
}

/// Reduced homology. The empty complex has `Z` in degree -1.
pub fn reduced_homology(k: &SimplicialComplex) -> Homology {
    homology_unchecked(&chain_complex(k, true))
}

/// Vanishing reduced homology. The empty complex is not acyclic.
pub fn is_acyclic(k: &SimplicialComplex) -> bool {
    reduced_homology(k).is_zero()
}

//! Finite abstract simplicial complexes.
//!
//! A complex is stored as the set of its simplices, each a strictly
//! increasing list of integer vertex ids. Vertices are opaque labels; no
//! geometric realization is ever built.

mod scx;
mod star;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use scx::{parse_scx, write_scx, ScxError};
pub use star::{certify_cover, closed_star_cover, nerve, ClosedCover, CoverBasis, CoverCertificate, IntersectionCheck};

pub type Vertex = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),
    #[error("{0} is not a simplex of the complex")]
    NotASimplex(Simplex),
    #[error("not a subcomplex: {0} is missing from the ambient complex")]
    NotASubcomplex(Simplex),
    #[error("cover does not contain {0}")]
    NotACover(Simplex),
}

/// A nonempty set of vertices, stored sorted without repetition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct Simplex(Vec<Vertex>);

impl TryFrom<Vec<Vertex>> for Simplex {
    type Error = ComplexError;
    fn try_from(v: Vec<Vertex>) -> Result<Self, ComplexError> {
        Simplex::new(v)
    }
}

impl From<Simplex> for Vec<Vertex> {
    fn from(s: Simplex) -> Self {
        s.0
    }
}

impl Simplex {
    /// Sorts and deduplicates; fails only on an empty vertex list.
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Result<Self, ComplexError> {
        let mut v: Vec<Vertex> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Err(ComplexError::InvalidSimplex("empty vertex set".into()));
        }
        Ok(Simplex(v))
    }

    pub fn vertex(v: Vertex) -> Self {
        Simplex(vec![v])
    }

    /// Caller guarantees the slice is nonempty and strictly increasing.
    pub(crate) fn from_sorted(v: Vec<Vertex>) -> Self {
        debug_assert!(!v.is_empty() && v.windows(2).all(|w| w[0] < w[1]));
        Simplex(v)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn min_vertex(&self) -> Vertex {
        self.0[0]
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let set: BTreeSet<Vertex> = self.0.iter().chain(&other.0).copied().collect();
        Simplex(set.into_iter().collect())
    }

    pub fn intersection(&self, other: &Simplex) -> Option<Simplex> {
        let v: Vec<Vertex> = self.0.iter().copied().filter(|x| other.contains_vertex(*x)).collect();
        (!v.is_empty()).then_some(Simplex(v))
    }

    pub fn with_vertex(&self, v: Vertex) -> Simplex {
        let mut w = self.0.clone();
        if let Err(pos) = w.binary_search(&v) {
            w.insert(pos, v);
        }
        Simplex(w)
    }

    /// Codimension-one faces; the `i`-th entry drops the `i`-th vertex.
    /// Empty for a vertex.
    pub fn facets(&self) -> Vec<Simplex> {
        if self.0.len() == 1 {
            return Vec::new();
        }
        (0..self.0.len())
            .map(|i| {
                let mut w = self.0.clone();
                w.remove(i);
                Simplex(w)
            })
            .collect()
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let k = self.0.len();
        assert!(k < 32, "simplex too large to enumerate faces");
        (1u32..(1 << k))
            .map(|mask| Simplex((0..k).filter(|i| mask & (1 << i) != 0).map(|i| self.0[i]).collect()))
            .collect()
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite downward-closed family of simplices.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    simplices: BTreeSet<Simplex>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Smallest complex containing every given vertex set.
    pub fn close_downward<I, S>(maximal: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = Vertex>,
    {
        let mut simplices = BTreeSet::new();
        for s in maximal {
            let s = Simplex::new(s)?;
            if simplices.contains(&s) {
                continue;
            }
            simplices.extend(s.faces());
        }
        Ok(SimplicialComplex { simplices })
    }

    /// Closure of a family of simplices already in `Simplex` form.
    pub fn closure_of<'a>(simplices: impl IntoIterator<Item = &'a Simplex>) -> Self {
        let mut out = BTreeSet::new();
        for s in simplices {
            if !out.contains(s) {
                out.extend(s.faces());
            }
        }
        SimplicialComplex { simplices: out }
    }

    /// Wraps a set the caller knows to be downward closed.
    pub(crate) fn from_closed_set(simplices: BTreeSet<Simplex>) -> Self {
        let k = SimplicialComplex { simplices };
        debug_assert!(k.is_downward_closed());
        k
    }

    /// The full simplex on vertices `0..=n`.
    pub fn full_simplex(n: usize) -> Self {
        Self::close_downward([(0..=n as Vertex).collect::<Vec<_>>()]).expect("nonempty")
    }

    /// The boundary of the `n`-simplex on vertices `0..=n` (a sphere of dimension `n - 1`).
    pub fn simplex_boundary(n: usize) -> Self {
        let full = Self::full_simplex(n);
        let top = Simplex((0..=n as Vertex).collect());
        let mut s = full.simplices;
        s.remove(&top);
        SimplicialComplex { simplices: s }
    }

    pub fn is_downward_closed(&self) -> bool {
        self.simplices.iter().all(|s| s.facets().iter().all(|f| self.simplices.contains(f)))
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.simplices.contains(&Simplex::vertex(v))
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.simplices.iter()
    }

    pub fn simplex_set(&self) -> &BTreeSet<Simplex> {
        &self.simplices
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.simplices.iter().filter(|s| s.0.len() == 1).map(|s| s.0[0])
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices().count()
    }

    /// Total number of simplices.
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(Simplex::dim).max()
    }

    /// Simplices grouped by dimension, each group in lexicographic order.
    pub fn graded(&self) -> Vec<Vec<Simplex>> {
        let mut out: Vec<Vec<Simplex>> = vec![Vec::new(); self.dim().map_or(0, |d| d + 1)];
        for s in &self.simplices {
            out[s.dim()].push(s.clone());
        }
        out
    }

    pub fn simplices_of_dim(&self, k: usize) -> Vec<Simplex> {
        self.simplices.iter().filter(|s| s.dim() == k).cloned().collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.graded().iter().map(Vec::len).collect()
    }

    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut has_coface: BTreeSet<&Simplex> = BTreeSet::new();
        for s in &self.simplices {
            for f in s.facets() {
                if let Some(stored) = self.simplices.get(&f) {
                    has_coface.insert(stored);
                }
            }
        }
        self.simplices.iter().filter(|s| !has_coface.contains(s)).cloned().collect()
    }

    /// Strict cofaces of `s` (simplices properly containing it).
    pub fn cofaces(&self, s: &Simplex) -> Vec<Simplex> {
        self.simplices.iter().filter(|t| t.0.len() > s.0.len() && s.is_face_of(t)).cloned().collect()
    }

    /// All cofaces of `s` (including `s`); not a subcomplex in general.
    pub fn open_star(&self, s: &Simplex) -> BTreeSet<Simplex> {
        self.simplices.iter().filter(|t| s.is_face_of(t)).cloned().collect()
    }

    /// All simplices `t` with `s ∪ t` in the complex.
    pub fn closed_star(&self, s: &Simplex) -> Result<SimplicialComplex, ComplexError> {
        if !self.contains(s) {
            return Err(ComplexError::NotASimplex(s.clone()));
        }
        let simplices = self.simplices.iter().filter(|t| self.contains(&s.union(t))).cloned().collect();
        Ok(SimplicialComplex::from_closed_set(simplices))
    }

    pub fn intersect(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let simplices = self.simplices.intersection(&other.simplices).cloned().collect();
        SimplicialComplex { simplices }
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let simplices = self.simplices.union(&other.simplices).cloned().collect();
        SimplicialComplex { simplices }
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.simplices.is_subset(&other.simplices)
    }

    /// Subcomplex of the simplices satisfying a downward-closed predicate.
    pub fn filter(&self, mut keep: impl FnMut(&Simplex) -> bool) -> SimplicialComplex {
        SimplicialComplex::from_closed_set(self.simplices.iter().filter(|s| keep(s)).cloned().collect())
    }

    /// Removes simplices without any closure check. Used by collapses.
    pub(crate) fn without(&self, drop: &[&Simplex]) -> SimplicialComplex {
        let mut simplices = self.simplices.clone();
        for s in drop {
            simplices.remove(*s);
        }
        SimplicialComplex { simplices }
    }

    pub(crate) fn with(&self, add: &[&Simplex]) -> SimplicialComplex {
        let mut simplices = self.simplices.clone();
        simplices.extend(add.iter().map(|s| (*s).clone()));
        SimplicialComplex { simplices }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().map(|s| if s.dim() % 2 == 0 { 1 } else { -1 }).sum()
    }

    /// Vertices adjacent to `v` along edges.
    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.simplices
            .iter()
            .filter(|s| s.0.len() == 2 && s.contains_vertex(v))
            .map(|s| if s.0[0] == v { s.0[1] } else { s.0[0] })
            .collect()
    }

    /// Connected components of the 1-skeleton, as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut adj: BTreeMap<Vertex, Vec<Vertex>> = self.vertices().map(|v| (v, Vec::new())).collect();
        for s in self.simplices.iter().filter(|s| s.0.len() == 2) {
            adj.get_mut(&s.0[0]).expect("vertex").push(s.0[1]);
            adj.get_mut(&s.0[1]).expect("vertex").push(s.0[0]);
        }
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        for &start in adj.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[&u] {
                    if seen.insert(w) {
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Nonempty with a connected 1-skeleton.
    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Barycentric subdivision. New vertex `i` stands for the `i`-th simplex
    /// of `self` in lexicographic order; the dictionary records that.
    pub fn barycentric_subdivision(&self) -> (SimplicialComplex, BTreeMap<Vertex, Simplex>) {
        let index: BTreeMap<&Simplex, Vertex> =
            self.simplices.iter().enumerate().map(|(i, s)| (s, i as Vertex)).collect();
        // Complete flags descending from maximal simplices; every flag is a face of one.
        fn descend(
            k: &SimplicialComplex,
            index: &BTreeMap<&Simplex, Vertex>,
            top: &Simplex,
            chain: &mut Vec<Vertex>,
            out: &mut Vec<Simplex>,
        ) {
            chain.push(index[top]);
            let facets = top.facets();
            if facets.is_empty() {
                let mut sorted = chain.clone();
                sorted.sort_unstable();
                out.push(Simplex(sorted));
            }
            for f in facets {
                let stored = k.simplices.get(&f).expect("downward closed");
                descend(k, index, stored, chain, out);
            }
            chain.pop();
        }
        let mut flags = Vec::new();
        for s in self.maximal_simplices() {
            descend(self, &index, &s, &mut Vec::new(), &mut flags);
        }
        let subdivided = SimplicialComplex::closure_of(&flags);
        let dictionary = index.iter().map(|(s, &i)| (i, (*s).clone())).collect();
        (subdivided, dictionary)
    }

    /// Applies a vertex relabeling (must be injective on the vertices).
    pub fn relabel(&self, map: impl Fn(Vertex) -> Vertex) -> SimplicialComplex {
        let simplices: BTreeSet<Simplex> =
            self.simplices.iter().map(|s| Simplex::new(s.0.iter().map(|&v| map(v))).expect("nonempty")).collect();
        assert_eq!(simplices.len(), self.simplices.len(), "relabeling must be injective");
        SimplicialComplex { simplices }
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex(max = {:?})", self.maximal_simplices())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(max: &[&[Vertex]]) -> SimplicialComplex {
        SimplicialComplex::close_downward(max.iter().map(|s| s.to_vec())).unwrap()
    }

    fn sx(v: &[Vertex]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    // a=0, b=1, c=2, d=3
    #[test]
    fn close_downward_examples() {
        assert_eq!(cx(&[&[0, 1, 2]]).len(), 7);
        assert_eq!(cx(&[&[0, 1], &[1, 2], &[2, 0]]).len(), 6);
        // triangle closure (7) plus cd and d
        let k = cx(&[&[0, 1, 2], &[2, 3]]);
        assert_eq!(k.len(), 9);
        assert!(k.contains(&sx(&[2, 3])) && k.contains(&sx(&[3])));
    }

    #[test]
    fn close_downward_rejects_empty_simplex() {
        let r = SimplicialComplex::close_downward(vec![vec![0u32, 1], vec![]]);
        assert!(matches!(r, Err(ComplexError::InvalidSimplex(_))));
    }

    #[test]
    fn closed_star_examples() {
        let k = cx(&[&[0, 1, 2], &[2, 3]]);
        assert_eq!(k.closed_star(&sx(&[2])).unwrap(), k);
        let circle = SimplicialComplex::simplex_boundary(2);
        assert_eq!(circle.closed_star(&sx(&[0])).unwrap(), cx(&[&[0, 1], &[0, 2]]));
        let d3 = SimplicialComplex::full_simplex(3);
        assert_eq!(d3.closed_star(&sx(&[0, 1])).unwrap(), d3);
        assert_eq!(circle.closed_star(&sx(&[0, 1, 2])), Err(ComplexError::NotASimplex(sx(&[0, 1, 2]))));
    }

    #[test]
    fn intersect_examples() {
        let d3 = SimplicialComplex::full_simplex(3);
        let a = d3.closed_star(&sx(&[0])).unwrap();
        let b = d3.closed_star(&sx(&[1])).unwrap();
        assert_eq!(a.intersect(&b), d3.closed_star(&sx(&[0, 1])).unwrap());
        assert_eq!(a.intersect(&a), a);
        let c = SimplicialComplex::simplex_boundary(2);
        let stars: Vec<_> = (0..3).map(|v| c.closed_star(&sx(&[v])).unwrap()).collect();
        // closed stars of the three vertices of a hollow triangle all contain every vertex
        assert_eq!(stars[0].intersect(&stars[1]).intersect(&stars[2]).f_vector(), vec![3]);
        let open: Vec<_> = (0..3).map(|v| c.open_star(&sx(&[v]))).collect();
        assert!(open[0].intersection(&open[1]).any(|s| s == &sx(&[0, 1])));
        assert_eq!(open[0].iter().filter(|s| open[1].contains(*s) && open[2].contains(*s)).count(), 0);
    }

    #[test]
    fn subdivision_examples() {
        let (sd, dict) = SimplicialComplex::full_simplex(1).barycentric_subdivision();
        assert_eq!(sd.f_vector(), vec![3, 2]);
        assert_eq!(dict.len(), 3);
        let (pt, _) = cx(&[&[7]]).barycentric_subdivision();
        assert_eq!(pt.len(), 1);
        let s2 = SimplicialComplex::simplex_boundary(3);
        let (sd, _) = s2.barycentric_subdivision();
        assert_eq!(s2.euler_characteristic(), 2);
        assert_eq!(sd.euler_characteristic(), 2);
        assert_eq!(sd.f_vector(), vec![14, 36, 24]);
    }

    #[test]
    fn subdivision_chains_are_flags() {
        let k = cx(&[&[0, 1, 2], &[2, 3]]);
        let (sd, dict) = k.barycentric_subdivision();
        for s in sd.simplices() {
            let mut flag: Vec<&Simplex> = s.vertices().iter().map(|v| &dict[v]).collect();
            flag.sort_by_key(|x| x.dim());
            assert!(flag.windows(2).all(|w| w[0].is_face_of(w[1]) && w[0] != w[1]));
        }
    }

    #[test]
    fn euler_characteristic_examples() {
        assert_eq!(cx(&[&[5]]).euler_characteristic(), 1);
        assert_eq!(SimplicialComplex::simplex_boundary(2).euler_characteristic(), 0);
        assert_eq!(SimplicialComplex::simplex_boundary(3).euler_characteristic(), 2);
    }

    #[test]
    fn maximal_and_components() {
        let k = cx(&[&[0, 1, 2], &[2, 3], &[7]]);
        assert_eq!(k.maximal_simplices(), vec![sx(&[0, 1, 2]), sx(&[2, 3]), sx(&[7])]);
        assert_eq!(k.components(), vec![vec![0, 1, 2, 3], vec![7]]);
        assert!(!k.is_connected());
        assert!(!SimplicialComplex::empty().is_connected());
    }
}

//! Simplicial maps, their fibers over target simplices, and the SMAP format.
//!
//! The fiber over a target simplex `σ` is `{τ : f(τ) ⊆ σ}`. For a point in
//! the open cell of `τ`, its barycentric image has support exactly the
//! vertex set `f(τ)`, so this subcomplex is the full point-set preimage of the
//! closed simplex `|σ|`; no subdivision is needed.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::complex::{Simplex, SimplicialComplex, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("vertex {0} of the source has no image")]
    MissingVertex(Vertex),
    #[error("vertex {0} is mapped but is not a vertex of the source")]
    UnknownVertex(Vertex),
    #[error("image vertex {0} is not a vertex of the target")]
    ImageOutsideTarget(Vertex),
    #[error("image of {simplex} is {image}, which is not a simplex of the target")]
    NotSimplicial { simplex: Simplex, image: Simplex },
    #[error("{0} is not a simplex of the target")]
    NotASimplex(Simplex),
    #[error("not a subcomplex of the target: contains {0}")]
    NotASubcomplex(Simplex),
    #[error("maps are not composable: target of the first differs from source of the second")]
    CompositionMismatch,
}

/// The first source simplex whose image is not a target simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub simplex: Simplex,
    pub image: Simplex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    vertex_map: BTreeMap<Vertex, Vertex>,
}

impl SimplicialMap {
    /// Checks totality and simpliciality.
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        vertex_map: BTreeMap<Vertex, Vertex>,
    ) -> Result<Self, MapError> {
        let f = Self::new_unchecked(source, target, vertex_map)?;
        match f.validate() {
            Ok(()) => Ok(f),
            Err(v) => Err(MapError::NotSimplicial { simplex: v.simplex, image: v.image }),
        }
    }

    /// Checks only that the vertex map is total on the source and lands in
    /// target vertices; simpliciality is left to [`SimplicialMap::validate`].
    pub fn new_unchecked(
        source: SimplicialComplex,
        target: SimplicialComplex,
        vertex_map: BTreeMap<Vertex, Vertex>,
    ) -> Result<Self, MapError> {
        for v in source.vertices() {
            if !vertex_map.contains_key(&v) {
                return Err(MapError::MissingVertex(v));
            }
        }
        for (&v, &w) in &vertex_map {
            if !source.contains_vertex(v) {
                return Err(MapError::UnknownVertex(v));
            }
            if !target.contains_vertex(w) {
                return Err(MapError::ImageOutsideTarget(w));
            }
        }
        Ok(SimplicialMap { source, target, vertex_map })
    }

    pub fn from_pairs(
        source: SimplicialComplex,
        target: SimplicialComplex,
        pairs: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, MapError> {
        Self::new(source, target, pairs.into_iter().collect())
    }

    pub fn identity(k: &SimplicialComplex) -> Self {
        let vertex_map = k.vertices().map(|v| (v, v)).collect();
        SimplicialMap { source: k.clone(), target: k.clone(), vertex_map }
    }

    /// Inclusion of a subcomplex.
    pub fn inclusion(sub: &SimplicialComplex, ambient: &SimplicialComplex) -> Result<Self, MapError> {
        if let Some(s) = sub.simplices().find(|s| !ambient.contains(s)) {
            return Err(MapError::NotASubcomplex(s.clone()));
        }
        let vertex_map = sub.vertices().map(|v| (v, v)).collect();
        Ok(SimplicialMap { source: sub.clone(), target: ambient.clone(), vertex_map })
    }

    /// Sends every barycenter of `sd(K)` to the largest vertex of its simplex.
    pub fn last_vertex(k: &SimplicialComplex) -> Self {
        let (sd, dict) = k.barycentric_subdivision();
        let vertex_map = dict.iter().map(|(&b, s)| (b, *s.vertices().last().expect("nonempty"))).collect();
        SimplicialMap { source: sd, target: k.clone(), vertex_map }
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn vertex_map(&self) -> &BTreeMap<Vertex, Vertex> {
        &self.vertex_map
    }

    pub fn apply_vertex(&self, v: Vertex) -> Vertex {
        self.vertex_map[&v]
    }

    /// Image vertex set of a source simplex.
    pub fn image(&self, s: &Simplex) -> Simplex {
        Simplex::new(s.vertices().iter().map(|v| self.vertex_map[v])).expect("nonempty")
    }

    /// Image with the sign of the permutation sorting `[f(w0), .., f(wk)]`;
    /// `None` when `f` identifies two vertices of the simplex.
    pub fn oriented_image(&self, s: &Simplex) -> Option<(Simplex, i64)> {
        let mut imgs: Vec<Vertex> = s.vertices().iter().map(|v| self.vertex_map[v]).collect();
        let mut sign = 1;
        // insertion sort, counting transpositions
        for i in 1..imgs.len() {
            let mut j = i;
            while j > 0 && imgs[j - 1] > imgs[j] {
                imgs.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if imgs.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((Simplex::from_sorted(imgs), sign))
    }

    pub fn validate(&self) -> Result<(), Violation> {
        for s in self.source.simplices() {
            let image = self.image(s);
            if !self.target.contains(&image) {
                return Err(Violation { simplex: s.clone(), image });
            }
        }
        Ok(())
    }

    pub fn fiber_subcomplex(&self, sigma: &Simplex) -> Result<SimplicialComplex, MapError> {
        if !self.target.contains(sigma) {
            return Err(MapError::NotASimplex(sigma.clone()));
        }
        Ok(self.source.filter(|t| t.vertices().iter().all(|v| sigma.contains_vertex(self.vertex_map[v]))))
    }

    /// `self ∘ g`: first `g`, then `self`.
    pub fn compose_after(&self, g: &SimplicialMap) -> Result<SimplicialMap, MapError> {
        if g.target != self.source {
            return Err(MapError::CompositionMismatch);
        }
        let vertex_map = g.vertex_map.iter().map(|(&z, y)| (z, self.vertex_map[y])).collect();
        SimplicialMap::new(g.source.clone(), self.target.clone(), vertex_map)
    }

    /// Restriction to the preimage of a target subcomplex.
    pub fn restrict(&self, a: &SimplicialComplex) -> Result<SimplicialMap, MapError> {
        if let Some(s) = a.simplices().find(|s| !self.target.contains(s)) {
            return Err(MapError::NotASubcomplex(s.clone()));
        }
        // f(τ) ⊆ σ ∈ A forces f(τ) ∈ A, so the union of fibers is this filter.
        let source = self.source.filter(|t| a.contains(&self.image(t)));
        let vertex_map = source.vertices().map(|v| (v, self.vertex_map[&v])).collect();
        Ok(SimplicialMap { source, target: a.clone(), vertex_map })
    }
}

/// `g` then `f`.
pub fn compose(f: &SimplicialMap, g: &SimplicialMap) -> Result<SimplicialMap, MapError> {
    f.compose_after(g)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct SmapError {
    pub line: usize,
    pub message: String,
}

/// Parses `y -> x` lines into a vertex assignment. Each source vertex may
/// appear only once; totality is checked when the map is built.
pub fn parse_smap(text: &str) -> Result<BTreeMap<Vertex, Vertex>, SmapError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| SmapError { line: i + 1, message };
        let (lhs, rhs) = line.split_once("->").ok_or_else(|| err(format!("expected `y -> x`, got {line:?}")))?;
        let y: Vertex = lhs.trim().parse().map_err(|e| err(format!("bad source vertex: {e}")))?;
        let x: Vertex = rhs.trim().parse().map_err(|e| err(format!("bad target vertex: {e}")))?;
        if map.insert(y, x).is_some() {
            return Err(err(format!("vertex {y} assigned twice")));
        }
    }
    Ok(map)
}

pub fn write_smap(f: &SimplicialMap) -> String {
    f.vertex_map.iter().map(|(y, x)| format!("{y} -> {x}\n")).collect()
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

    // ∂Δ² on a=0,b=1,c=2 onto the edge u=10, v=11 with a↦u, b↦v, c↦v.
    fn circle_to_edge() -> SimplicialMap {
        SimplicialMap::from_pairs(SimplicialComplex::simplex_boundary(2), cx(&[&[10, 11]]), [(0, 10), (1, 11), (2, 11)])
            .unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(circle_to_edge().validate().is_ok());
        let bad = SimplicialMap::new_unchecked(cx(&[&[0, 1]]), cx(&[&[10], &[12]]), [(0, 10), (1, 12)].into()).unwrap();
        assert_eq!(bad.validate(), Err(Violation { simplex: sx(&[0, 1]), image: sx(&[10, 12]) }));
        let k = cx(&[&[0, 1, 2], &[2, 3]]);
        assert!(SimplicialMap::identity(&k).validate().is_ok());
    }

    #[test]
    fn missing_vertex_rejected() {
        let r = SimplicialMap::from_pairs(cx(&[&[0, 1]]), cx(&[&[5]]), [(0, 5)]);
        assert_eq!(r, Err(MapError::MissingVertex(1)));
    }

    #[test]
    fn fiber_examples() {
        let f = circle_to_edge();
        assert_eq!(f.fiber_subcomplex(&sx(&[10, 11])).unwrap(), *f.source());
        assert_eq!(f.fiber_subcomplex(&sx(&[11])).unwrap(), cx(&[&[1, 2]]));
        assert_eq!(f.fiber_subcomplex(&sx(&[10])).unwrap(), cx(&[&[0]]));
        assert!(matches!(f.fiber_subcomplex(&sx(&[12])), Err(MapError::NotASimplex(_))));
    }

    #[test]
    fn composition_examples() {
        let f = circle_to_edge();
        assert_eq!(compose(&SimplicialMap::identity(f.target()), &f).unwrap(), f);
        assert_eq!(compose(&f, &SimplicialMap::identity(f.source())).unwrap(), f);
        let point = cx(&[&[99]]);
        let to_point = SimplicialMap::from_pairs(f.target().clone(), point.clone(), [(10, 99), (11, 99)]).unwrap();
        let c = compose(&to_point, &f).unwrap();
        assert!(c.vertex_map().values().all(|&x| x == 99));
        assert_eq!(compose(&f, &f), Err(MapError::CompositionMismatch));
    }

    #[test]
    fn restriction_examples() {
        let f = circle_to_edge();
        assert_eq!(f.restrict(f.target()).unwrap(), f);
        let r = f.restrict(&cx(&[&[11]])).unwrap();
        assert_eq!(*r.source(), cx(&[&[1, 2]]));
        let e = f.restrict(&SimplicialComplex::empty()).unwrap();
        assert!(e.source().is_empty() && e.target().is_empty());
        assert!(matches!(f.restrict(&cx(&[&[10, 12]])), Err(MapError::NotASubcomplex(_))));
    }

    #[test]
    fn last_vertex_map_is_simplicial() {
        let k = cx(&[&[0, 1, 2], &[2, 3]]);
        let f = SimplicialMap::last_vertex(&k);
        assert!(f.validate().is_ok());
    }

    #[test]
    fn smap_parsing() {
        let m = parse_smap("# map\n0 -> 10\n1->11\n2 -> 11 # tail\n").unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(parse_smap("0 -> 1\n0 -> 2\n").unwrap_err().line, 2);
        assert_eq!(parse_smap("0 1\n").unwrap_err().line, 1);
        let f = circle_to_edge();
        assert_eq!(parse_smap(&write_smap(&f)).unwrap(), *f.vertex_map());
    }
}

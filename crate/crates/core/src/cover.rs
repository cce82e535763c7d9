//! Cyclic covers given by `Z/n`-valued edge cocycles, and the twisted chain
//! complexes of free `Z[Z/n]`-modules they determine.
//!
//! A generator `[v0, .., vk]` stands for the lift of the simplex that starts on
//! sheet 0 over its least vertex. Walking from `v0` to `v1` moves `ω(v0, v1)`
//! sheets, so the face opposite `v0` enters the boundary with `t^ω(v0,v1)`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::groupring::{GroupRing, GroupRingElement};
use crate::homology::{chain_basis, ChainComplex, ChainComplexZ, ChainMap, ChainMapZ};
use crate::ring::{IntegerMatrix, Integers, Matrix, Ring};
use crate::simpmap::SimplicialMap;

pub type ChainComplexZG = ChainComplex<GroupRing>;
pub type ChainMapZG = ChainMap<GroupRing>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelingViolation {
    NotAnEdge(Vertex, Vertex),
    Antisymmetry(Vertex, Vertex),
    Cocycle(Simplex),
}

impl std::fmt::Display for LabelingViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LabelingViolation::NotAnEdge(u, v) => write!(f, "{{{u},{v}}} is not an edge"),
            LabelingViolation::Antisymmetry(u, v) => write!(f, "ω({v},{u}) ≠ -ω({u},{v})"),
            LabelingViolation::Cocycle(s) => write!(f, "cocycle identity fails on {s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("invalid labeling: {0}")]
    InvalidLabeling(LabelingViolation),
    #[error("no labeling with these values satisfies the cocycle identity on {0}")]
    NotACocycle(Simplex),
    #[error("complex is not connected")]
    NotConnected,
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(usize, usize),
    #[error("labeling lives on a different complex")]
    WrongComplex,
    #[error("a reduced twisted complex needs the zero labeling (augmentation is not a chain map otherwise)")]
    ReducedNeedsTrivialLabels,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// `ω` on ordered pairs of adjacent vertices, with values in `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicCoverLabeling {
    complex: SimplicialComplex,
    n: usize,
    omega: BTreeMap<(Vertex, Vertex), u64>,
}

impl CyclicCoverLabeling {
    /// All labels zero.
    pub fn zero(complex: &SimplicialComplex, n: usize) -> Result<Self, CoverError> {
        if n == 0 {
            return Err(CoverError::ZeroModulus);
        }
        let mut omega = BTreeMap::new();
        for e in complex.simplices_of_dim(1) {
            let (u, v) = (e.vertices()[0], e.vertices()[1]);
            omega.insert((u, v), 0);
            omega.insert((v, u), 0);
        }
        Ok(CyclicCoverLabeling { complex: complex.clone(), n, omega })
    }

    /// Labels from `(u, v, g)` triples. A pair given in one orientation gets
    /// the negated value on the reverse; a pair given in both orientations is
    /// stored as given (so [`validate_labeling`] can report antisymmetry).
    pub fn from_entries(
        complex: &SimplicialComplex,
        n: usize,
        entries: impl IntoIterator<Item = (Vertex, Vertex, i64)>,
    ) -> Result<Self, CoverError> {
        let mut lab = Self::zero(complex, n)?;
        let mut explicit = BTreeSet::new();
        for (u, v, g) in entries {
            if !lab.omega.contains_key(&(u, v)) {
                return Err(CoverError::InvalidLabeling(LabelingViolation::NotAnEdge(u, v)));
            }
            let g = lab.reduce(g);
            lab.omega.insert((u, v), g);
            explicit.insert((u, v));
            if !explicit.contains(&(v, u)) {
                lab.omega.insert((v, u), lab.reduce(-(g as i64)));
            }
        }
        Ok(lab)
    }

    fn reduce(&self, g: i64) -> u64 {
        g.rem_euclid(self.n as i64) as u64
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    /// `ω(u, v)` in `0..n`; `None` if `{u, v}` is not an edge.
    pub fn get(&self, u: Vertex, v: Vertex) -> Option<u64> {
        self.omega.get(&(u, v)).copied()
    }

    /// Sets `ω(u, v) = g` and `ω(v, u) = -g`.
    pub fn set(&mut self, u: Vertex, v: Vertex, g: i64) -> Result<(), CoverError> {
        if !self.omega.contains_key(&(u, v)) {
            return Err(CoverError::InvalidLabeling(LabelingViolation::NotAnEdge(u, v)));
        }
        self.omega.insert((u, v), self.reduce(g));
        self.omega.insert((v, u), self.reduce(-g));
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.omega.values().all(|&g| g == 0)
    }

    /// `ω + δφ`: `ω'(u, v) = ω(u, v) + φ(v) - φ(u)`. Missing potentials are 0.
    pub fn add_coboundary(&self, potential: &BTreeMap<Vertex, i64>) -> Self {
        let phi = |v: &Vertex| potential.get(v).copied().unwrap_or(0);
        let omega = self.omega.iter().map(|(&(u, v), &g)| ((u, v), self.reduce(g as i64 + phi(&v) - phi(&u)))).collect();
        CyclicCoverLabeling { complex: self.complex.clone(), n: self.n, omega }
    }

    /// Nonzero labels with `u < v`.
    pub fn entries(&self) -> Vec<(Vertex, Vertex, u64)> {
        self.omega.iter().filter(|(&(u, v), &g)| u < v && g != 0).map(|(&(u, v), &g)| (u, v, g)).collect()
    }

    pub fn ring(&self) -> GroupRing {
        GroupRing { n: self.n }
    }
}

pub fn validate_labeling(lab: &CyclicCoverLabeling) -> Result<(), LabelingViolation> {
    for (&(u, v), &g) in &lab.omega {
        if u < v && lab.omega[&(v, u)] != lab.reduce(-(g as i64)) {
            return Err(LabelingViolation::Antisymmetry(u, v));
        }
    }
    for s in lab.complex.simplices_of_dim(2) {
        let [a, b, c] = [s.vertices()[0], s.vertices()[1], s.vertices()[2]];
        let lhs = lab.omega[&(a, b)] + lab.omega[&(b, c)];
        if lhs % lab.n as u64 != lab.omega[&(a, c)] {
            return Err(LabelingViolation::Cocycle(s));
        }
    }
    Ok(())
}

fn index_of(basis: &[Simplex], s: &Simplex) -> usize {
    basis.binary_search(s).expect("simplex in basis")
}

/// One free generator per simplex; see the module docs for the boundary.
/// The reduced version (augmented to a degree -1 generator) exists only for
/// the zero labeling.
pub fn twisted_chain_complex(lab: &CyclicCoverLabeling, reduced: bool) -> Result<ChainComplexZG, CoverError> {
    validate_labeling(lab).map_err(CoverError::InvalidLabeling)?;
    if reduced && !lab.is_zero() {
        return Err(CoverError::ReducedNeedsTrivialLabels);
    }
    let ring = lab.ring();
    let basis = chain_basis(&lab.complex);
    let mut labels = Vec::new();
    let mut boundaries = Vec::new();
    if reduced {
        labels.push(vec!["∅".to_string()]);
        boundaries.push(Matrix::zeros(&ring, 0, 1));
    }
    for (dim, cells) in basis.iter().enumerate() {
        labels.push(cells.iter().map(Simplex::to_string).collect());
        let rows = if dim == 0 { usize::from(reduced) } else { basis[dim - 1].len() };
        let mut d = Matrix::zeros(&ring, rows, cells.len());
        for (j, s) in cells.iter().enumerate() {
            if dim == 0 {
                if reduced {
                    d.set(0, j, ring.one());
                }
                continue;
            }
            let v = s.vertices();
            for (i, face) in s.facets().into_iter().enumerate() {
                let coeff = if i == 0 {
                    ring.t_pow(lab.omega[&(v[0], v[1])] as i64)
                } else {
                    ring.from_int(if i % 2 == 0 { 1 } else { -1 })
                };
                d.set(index_of(&basis[dim - 1], &face), j, coeff);
            }
        }
        boundaries.push(d);
    }
    let min = if reduced { -1 } else { 0 };
    Ok(ChainComplex::new(ring, min, labels, boundaries).expect("shapes agree"))
}

/// `ω'(u, v) = ω(f u, f v)`; collapsed edges get 0.
pub fn pullback_labeling(f: &SimplicialMap, lab: &CyclicCoverLabeling) -> Result<CyclicCoverLabeling, CoverError> {
    if f.target() != &lab.complex {
        return Err(CoverError::WrongComplex);
    }
    let mut out = CyclicCoverLabeling::zero(f.source(), lab.n)?;
    for (&(u, v), g) in out.omega.iter_mut() {
        let (fu, fv) = (f.apply_vertex(u), f.apply_vertex(v));
        *g = if fu == fv { 0 } else { lab.omega[&(fu, fv)] };
    }
    Ok(out)
}

/// Lift of `f` to the covers: `τ = [w0..wk]` goes to
/// `sign · t^ω(f w0, min f τ) · [sorted f τ]`, or 0 when `f` is not injective on `τ`.
/// The source is twisted by the pulled-back labeling.
pub fn twisted_chain_map(f: &SimplicialMap, lab: &CyclicCoverLabeling) -> Result<ChainMapZG, CoverError> {
    let pulled = pullback_labeling(f, lab)?;
    let source = twisted_chain_complex(&pulled, false)?;
    let target = twisted_chain_complex(lab, false)?;
    let ring = lab.ring();
    let sb = chain_basis(f.source());
    let tb = chain_basis(f.target());
    let mut components = BTreeMap::new();
    for (dim, cells) in sb.iter().enumerate() {
        let rows = tb.get(dim).map_or(0, Vec::len);
        let mut m = Matrix::zeros(&ring, rows, cells.len());
        for (j, s) in cells.iter().enumerate() {
            if let Some((img, sign)) = f.oriented_image(s) {
                let f0 = f.apply_vertex(s.vertices()[0]);
                let m0 = img.min_vertex();
                let shift = if f0 == m0 { 0 } else { lab.omega[&(f0, m0)] as i64 };
                let coeff = GroupRingElement::monomial(lab.n, shift, sign);
                m.set(index_of(&tb[dim], &img), j, coeff);
            }
        }
        components.insert(dim as i32, m);
    }
    Ok(ChainMap::new(source, target, components).expect("shapes agree"))
}

fn expand_matrix(m: &Matrix<GroupRingElement>, n: usize) -> IntegerMatrix {
    let mut out = Matrix::zeros(&Integers, m.rows() * n, m.cols() * n);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let e = m.get(i, j);
            if e.is_zero() {
                continue;
            }
            let block = e.circulant();
            for a in 0..n {
                for b in 0..n {
                    out.set(i * n + a, j * n + b, block.get(a, b).clone());
                }
            }
        }
    }
    out
}

/// Forgets the `Z/n`-action: generator `x` becomes `x·t^0, .., x·t^{n-1}`
/// and each entry its `n × n` circulant block.
pub fn integral_expansion(c: &ChainComplexZG) -> ChainComplexZ {
    let n = c.ring().n;
    let mut labels = Vec::new();
    let mut boundaries = Vec::new();
    for i in c.degrees() {
        labels.push(c.labels(i).iter().flat_map(|x| (0..n).map(move |k| format!("{x}·t^{k}"))).collect());
        boundaries.push(expand_matrix(&c.d(i), n));
    }
    ChainComplex::new(Integers, c.min_degree(), labels, boundaries).expect("shapes scale by n")
}

pub fn integral_expansion_map(f: &ChainMapZG) -> ChainMapZ {
    let n = f.source().ring().n;
    let components = f.source().degrees().map(|i| (i, expand_matrix(&f.component(i), n))).collect();
    ChainMap::new(integral_expansion(f.source()), integral_expansion(f.target()), components).expect("shapes agree")
}

/// Labeling that is 0 on a breadth-first spanning tree of the 1-skeleton
/// (rooted at the least vertex) and takes the prescribed values on the
/// remaining edges (0 where unspecified).
pub fn labeling_from_tree(
    k: &SimplicialComplex,
    n: usize,
    generator_values: &BTreeMap<(Vertex, Vertex), i64>,
) -> Result<CyclicCoverLabeling, CoverError> {
    if !k.is_connected() {
        return Err(CoverError::NotConnected);
    }
    let mut lab = CyclicCoverLabeling::zero(k, n)?;
    let tree = spanning_tree(k);
    for (&(u, v), &g) in generator_values {
        let e = (u.min(v), u.max(v));
        if tree.contains(&e) {
            continue;
        }
        lab.set(u, v, g)?;
    }
    match validate_labeling(&lab) {
        Ok(()) => Ok(lab),
        Err(LabelingViolation::Cocycle(s)) => Err(CoverError::NotACocycle(s)),
        Err(other) => Err(CoverError::InvalidLabeling(other)),
    }
}

/// Edges `(u, v)` with `u < v` of a breadth-first spanning tree.
pub fn spanning_tree(k: &SimplicialComplex) -> BTreeSet<(Vertex, Vertex)> {
    let mut tree = BTreeSet::new();
    let Some(root) = k.vertices().next() else {
        return tree;
    };
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for w in k.neighbors(u) {
            if seen.insert(w) {
                tree.insert((u.min(w), u.max(w)));
                queue.push_back(w);
            }
        }
    }
    tree
}

pub type SlabEntries = Vec<(Vertex, Vertex, i64)>;

/// SLAB text: `mod n`, then `u v g` lines.
pub fn parse_slab(text: &str) -> Result<(usize, SlabEntries), CoverError> {
    let mut n = None;
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| CoverError::Parse { line: i + 1, message };
        let toks: Vec<&str> = line.split_whitespace().collect();
        match n {
            None => {
                if toks.len() != 2 || toks[0] != "mod" {
                    return Err(err(format!("expected `mod n`, got {line:?}")));
                }
                let m: usize = toks[1].parse().map_err(|e| err(format!("bad modulus: {e}")))?;
                if m == 0 {
                    return Err(err("modulus must be at least 1".into()));
                }
                n = Some(m);
            }
            Some(_) => {
                if toks.len() != 3 {
                    return Err(err(format!("expected `u v g`, got {line:?}")));
                }
                let u = toks[0].parse().map_err(|e| err(format!("bad vertex: {e}")))?;
                let v = toks[1].parse().map_err(|e| err(format!("bad vertex: {e}")))?;
                let g = toks[2].parse().map_err(|e| err(format!("bad label: {e}")))?;
                entries.push((u, v, g));
            }
        }
    }
    let n = n.ok_or(CoverError::Parse { line: 0, message: "missing `mod n` line".into() })?;
    Ok((n, entries))
}

pub fn write_slab(lab: &CyclicCoverLabeling) -> String {
    let mut out = format!("mod {}\n", lab.n);
    for (u, v, g) in lab.entries() {
        out.push_str(&format!("{u} {v} {g}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{chain_complex, homology_of};

    fn cx(max: &[&[Vertex]]) -> SimplicialComplex {
        SimplicialComplex::close_downward(max.iter().map(|s| s.to_vec())).unwrap()
    }

    // a=0, b=1, c=2
    #[test]
    fn validate_examples() {
        let tri = SimplicialComplex::full_simplex(2);
        let ok = CyclicCoverLabeling::from_entries(&tri, 5, [(0, 1, 1), (1, 2, 1), (0, 2, 2)]).unwrap();
        assert!(validate_labeling(&ok).is_ok());
        let bad = CyclicCoverLabeling::from_entries(&tri, 5, [(0, 1, 1), (1, 2, 1), (0, 2, 0)]).unwrap();
        assert_eq!(validate_labeling(&bad), Err(LabelingViolation::Cocycle(Simplex::new([0, 1, 2]).unwrap())));
        assert!(validate_labeling(&CyclicCoverLabeling::zero(&tri, 1).unwrap()).is_ok());
        let asym = CyclicCoverLabeling::from_entries(&tri, 5, [(0, 1, 1), (1, 0, 1)]).unwrap();
        assert_eq!(validate_labeling(&asym), Err(LabelingViolation::Antisymmetry(0, 1)));
    }

    #[test]
    fn n_one_matches_integral_complex() {
        let k = cx(&[&[0, 1, 2], &[2, 3], &[1, 3]]);
        let tw = twisted_chain_complex(&CyclicCoverLabeling::zero(&k, 1).unwrap(), false).unwrap();
        let ex = integral_expansion(&tw);
        let plain = chain_complex(&k, false);
        for i in plain.degrees() {
            assert_eq!(ex.d(i), plain.d(i));
        }
    }

    /// The labeling 1, 1, 2 on the hollow triangle has holonomy 1 + 1 - 2 = 0,
    /// so its 5-fold cover is five disjoint circles.
    #[test]
    fn zero_holonomy_circle_gives_five_circles() {
        let c = SimplicialComplex::simplex_boundary(2);
        let lab = CyclicCoverLabeling::from_entries(&c, 5, [(0, 1, 1), (1, 2, 1), (0, 2, 2)]).unwrap();
        let ex = integral_expansion(&twisted_chain_complex(&lab, false).unwrap());
        assert_eq!((ex.rank(0), ex.rank(1)), (15, 15));
        assert_eq!(homology_of(&ex).unwrap().to_string(), "H0=Z^5 H1=Z^5");
    }

    #[test]
    fn tree_labeling_gives_connected_cover() {
        let c = SimplicialComplex::simplex_boundary(2);
        let lab = labeling_from_tree(&c, 5, &BTreeMap::from([((1, 2), 1)])).unwrap();
        assert_eq!(lab.get(1, 2), Some(1));
        assert_eq!(lab.get(2, 1), Some(4));
        assert_eq!(lab.get(0, 1), Some(0));
        let ex = integral_expansion(&twisted_chain_complex(&lab, false).unwrap());
        assert_eq!((ex.rank(0), ex.rank(1)), (15, 15));
        assert_eq!(homology_of(&ex).unwrap().to_string(), "H0=Z H1=Z");
    }

    #[test]
    fn tree_labeling_errors() {
        let d2 = SimplicialComplex::full_simplex(2);
        assert!(matches!(
            labeling_from_tree(&d2, 5, &BTreeMap::from([((1, 2), 1)])),
            Err(CoverError::NotACocycle(_))
        ));
        assert!(labeling_from_tree(&d2, 5, &BTreeMap::new()).unwrap().is_zero());
        let two = cx(&[&[0], &[1]]);
        assert_eq!(labeling_from_tree(&two, 3, &BTreeMap::new()), Err(CoverError::NotConnected));
    }

    #[test]
    fn pullback_example() {
        let src = SimplicialComplex::simplex_boundary(2);
        let tgt = cx(&[&[10, 11]]);
        let f = SimplicialMap::from_pairs(src, tgt.clone(), [(0, 10), (1, 11), (2, 11)]).unwrap();
        let lab = CyclicCoverLabeling::from_entries(&tgt, 5, [(10, 11, 3)]).unwrap();
        let p = pullback_labeling(&f, &lab).unwrap();
        assert_eq!((p.get(0, 1), p.get(0, 2), p.get(1, 2)), (Some(3), Some(3), Some(0)));
        let id = pullback_labeling(&SimplicialMap::identity(&tgt), &lab).unwrap();
        assert_eq!(id, lab);
    }

    #[test]
    fn expansion_of_t_is_cyclic_permutation() {
        let m = Matrix::from_rows(vec![vec![GroupRingElement::t_pow(3, 1)]]);
        assert_eq!(expand_matrix(&m, 3), IntegerMatrix::from_i64_rows(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]));
    }

    #[test]
    fn twisted_map_commutes_with_boundary() {
        let c = SimplicialComplex::simplex_boundary(2);
        let lab = labeling_from_tree(&c, 5, &BTreeMap::from([((1, 2), 1)])).unwrap();
        let (sd, _) = c.barycentric_subdivision();
        let lv = SimplicialMap::last_vertex(&c);
        assert_eq!(lv.source(), &sd);
        let phi = twisted_chain_map(&lv, &lab).unwrap();
        phi.check_commutes().unwrap();
        let flip = SimplicialMap::from_pairs(c.clone(), c.clone(), [(0, 1), (1, 0), (2, 2)]).unwrap();
        let lab2 = labeling_from_tree(&c, 4, &BTreeMap::from([((1, 2), 3)])).unwrap();
        twisted_chain_map(&flip, &lab2).unwrap().check_commutes().unwrap();
    }

    #[test]
    fn reduced_requires_zero_labels() {
        let c = SimplicialComplex::simplex_boundary(2);
        let lab = labeling_from_tree(&c, 5, &BTreeMap::from([((1, 2), 1)])).unwrap();
        assert_eq!(twisted_chain_complex(&lab, true), Err(CoverError::ReducedNeedsTrivialLabels));
        let z = twisted_chain_complex(&CyclicCoverLabeling::zero(&c, 3).unwrap(), true).unwrap();
        assert!(z.check_square_zero().is_ok());
    }

    #[test]
    fn slab_round_trip() {
        let c = SimplicialComplex::simplex_boundary(2);
        let lab = labeling_from_tree(&c, 5, &BTreeMap::from([((1, 2), 1)])).unwrap();
        let text = write_slab(&lab);
        assert_eq!(text, "mod 5\n1 2 1\n");
        let (n, e) = parse_slab(&text).unwrap();
        assert_eq!(CyclicCoverLabeling::from_entries(&c, n, e).unwrap(), lab);
        assert!(matches!(parse_slab("1 2 3\n"), Err(CoverError::Parse { line: 1, .. })));
        let (_, rev) = parse_slab("mod 5\n2 1 4\n").unwrap();
        assert_eq!(CyclicCoverLabeling::from_entries(&c, 5, rev).unwrap(), lab);
    }
}

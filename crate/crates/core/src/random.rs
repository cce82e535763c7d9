//! Seeded generators for test corpora. Every function is a pure function of
//! the generator state, so a fixed seed reproduces the same corpus.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::collapse::{expansion_inclusion, free_faces};
use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::cover::{spanning_tree, validate_labeling, CyclicCoverLabeling};
use crate::groupring::{GroupRing, GroupRingElement};
use crate::homology::ChainComplex;
use crate::ring::Matrix;
use crate::simpmap::SimplicialMap;

pub const DEFAULT_SEED: u64 = 0x5eed;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Closure of a few random simplices on vertices `0..n` (`n ≤ 9`), each of
/// dimension at most `max_dim`. Never empty.
pub fn random_complex(r: &mut impl Rng, max_vertices: usize, max_dim: usize) -> SimplicialComplex {
    let n = r.gen_range(1..=max_vertices.clamp(1, 9));
    let count = r.gen_range(1..=n + 2);
    let verts: Vec<Vertex> = (0..n as Vertex).collect();
    let mut maximal: Vec<Vec<Vertex>> = (0..count)
        .map(|_| {
            let k = r.gen_range(1..=(max_dim + 1).min(n));
            verts.choose_multiple(r, k).copied().collect()
        })
        .collect();
    maximal.push(vec![verts[0]]);
    SimplicialComplex::close_downward(maximal).expect("nonempty simplices")
}

/// As [`random_complex`], with extra edges joining the components.
pub fn random_connected_complex(r: &mut impl Rng, max_vertices: usize, max_dim: usize) -> SimplicialComplex {
    let k = random_complex(r, max_vertices, max_dim);
    let comps = k.components();
    let bridges: Vec<Vec<Vertex>> = comps.windows(2).map(|w| vec![w[0][0], w[1][0]]).collect();
    let mut all: Vec<Vec<Vertex>> = k.maximal_simplices().iter().map(|s| s.vertices().to_vec()).collect();
    all.extend(bridges);
    SimplicialComplex::close_downward(all).expect("nonempty simplices")
}

/// Connected graph on `n ≤ 9` vertices: a path plus each other edge with
/// probability `p`. Rich in cycles, so labelings usually carry holonomy.
pub fn random_graph(r: &mut impl Rng, max_vertices: usize, p: f64) -> SimplicialComplex {
    let n = r.gen_range(2..=max_vertices.clamp(2, 9)) as Vertex;
    let mut edges: Vec<Vec<Vertex>> = (1..n).map(|v| vec![v - 1, v]).collect();
    for u in 0..n {
        for v in u + 2..n {
            if r.gen_bool(p) {
                edges.push(vec![u, v]);
            }
        }
    }
    SimplicialComplex::close_downward(edges).expect("nonempty simplices")
}

/// Random vertex map out of a random source; the target is the image closure
/// plus some random extra simplices on the target vertices.
pub fn random_map(r: &mut impl Rng, max_vertices: usize, max_dim: usize) -> SimplicialMap {
    let source = random_complex(r, max_vertices, max_dim);
    random_map_from(r, source, max_vertices, max_dim)
}

pub fn random_map_from(r: &mut impl Rng, source: SimplicialComplex, max_vertices: usize, max_dim: usize) -> SimplicialMap {
    let m = r.gen_range(1..=max_vertices.clamp(1, 9)) as Vertex;
    let vm: BTreeMap<Vertex, Vertex> = source.vertices().map(|v| (v, r.gen_range(0..m))).collect();
    let images: Vec<Vec<Vertex>> =
        source.maximal_simplices().iter().map(|s| s.vertices().iter().map(|v| vm[v]).collect()).collect();
    let extra = random_complex(r, m as usize, max_dim);
    let mut all: Vec<Vec<Vertex>> = extra.maximal_simplices().iter().map(|s| s.vertices().to_vec()).collect();
    all.extend(images);
    let target = SimplicialComplex::close_downward(all).expect("nonempty simplices");
    SimplicialMap::new(source, target, vm).expect("images are simplices of the target")
}

/// Composable pair `(g: Z → Y, f: Y → X)`.
pub fn random_composable(r: &mut impl Rng, max_vertices: usize, max_dim: usize) -> (SimplicialMap, SimplicialMap) {
    let g = random_map(r, max_vertices, max_dim);
    let f = random_map_from(r, g.target().clone(), max_vertices, max_dim);
    (g, f)
}

/// Closed 2-piece cover: each maximal simplex goes to one or both pieces.
pub fn random_cover(r: &mut impl Rng, x: &SimplicialComplex) -> (SimplicialComplex, SimplicialComplex) {
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for s in x.maximal_simplices() {
        match r.gen_range(0..3) {
            0 => a.push(s),
            1 => b.push(s),
            _ => {
                a.push(s.clone());
                b.push(s);
            }
        }
    }
    (SimplicialComplex::closure_of(&a), SimplicialComplex::closure_of(&b))
}

/// Valid `Z/n` labeling on a connected complex: zero on a spanning tree,
/// random on the other edges unless a triangle forces the value, then a
/// random coboundary on top. Falls back to a pure coboundary if the greedy
/// choice is inconsistent.
pub fn random_labeling(r: &mut impl Rng, k: &SimplicialComplex, n: usize) -> CyclicCoverLabeling {
    let mut lab = CyclicCoverLabeling::zero(k, n).expect("nonzero modulus");
    let mut known: BTreeSet<(Vertex, Vertex)> = spanning_tree(k);
    let triangles = k.simplices_of_dim(2);
    for e in k.simplices_of_dim(1) {
        let (u, v) = (e.vertices()[0], e.vertices()[1]);
        if known.contains(&(u, v)) {
            continue;
        }
        let key = |a: Vertex, b: Vertex| (a.min(b), a.max(b));
        // ω(u, v) = ω(u, w) + ω(w, v)
        let forced = triangles
            .iter()
            .filter(|t| t.contains_vertex(u) && t.contains_vertex(v))
            .filter_map(|t| t.vertices().iter().copied().find(|&w| w != u && w != v))
            .find(|&w| known.contains(&key(u, w)) && known.contains(&key(w, v)))
            .map(|w| lab.get(u, w).expect("edge") as i64 + lab.get(w, v).expect("edge") as i64);
        let g = forced.unwrap_or_else(|| r.gen_range(0..n as i64));
        lab.set(u, v, g).expect("edge");
        known.insert((u, v));
    }
    if validate_labeling(&lab).is_err() {
        lab = CyclicCoverLabeling::zero(k, n).expect("nonzero modulus");
    }
    let potential: BTreeMap<Vertex, i64> = k.vertices().map(|v| (v, r.gen_range(0..n as i64))).collect();
    lab.add_coboundary(&potential)
}

/// An elementary expansion `K ↪ K'`, obtained by removing a random free pair
/// from a random connected complex `K'` whose removal keeps `K` nonempty.
pub fn random_expansion(r: &mut impl Rng, max_vertices: usize, max_dim: usize) -> (SimplicialComplex, SimplicialMap) {
    loop {
        let big = random_connected_complex(r, max_vertices, max_dim);
        let pairs = free_faces(&big);
        let Some((s, t)) = pairs.choose(r).cloned() else { continue };
        let small = big.filter(|x| x != &s && x != &t);
        if small.is_empty() {
            continue;
        }
        let (_, inc) = expansion_inclusion(&small, &s, &t).expect("inverse of a free pair");
        return (small, inc);
    }
}

/// A random degree +2 map `η` on a twisted complex, with small coefficients.
pub fn random_eta(
    r: &mut impl Rng,
    c: &ChainComplex<GroupRing>,
) -> BTreeMap<i32, Matrix<GroupRingElement>> {
    let n = c.ring().n;
    c.degrees()
        .map(|i| {
            let m = Matrix::from_fn(c.rank(i + 2), c.rank(i), |_, _| {
                let coeffs: Vec<i64> = (0..n).map(|_| r.gen_range(-2..=2)).collect();
                GroupRingElement::from_i64s(n, &coeffs)
            });
            (i, m)
        })
        .collect()
}

/// A random simplex of `k`.
pub fn random_simplex(r: &mut impl Rng, k: &SimplicialComplex) -> Simplex {
    let all: Vec<&Simplex> = k.simplices().collect();
    (*all.choose(r).expect("nonempty complex")).clone()
}

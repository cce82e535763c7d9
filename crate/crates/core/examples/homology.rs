//! Integral homology of spheres, the projective plane and a subdivision.

use simple_torsion::complex::SimplicialComplex;
use simple_torsion::homology::{homology, reduced_homology};

fn main() {
    for d in 1..=4 {
        let s = SimplicialComplex::simplex_boundary(d + 1);
        println!("S^{d}: H = {}, reduced = {}", homology(&s), reduced_homology(&s));
    }
    let rp2 = SimplicialComplex::close_downward([
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
        [1, 2, 4], [2, 3, 5], [1, 3, 4], [1, 3, 5], [2, 4, 5],
    ])
    .unwrap();
    println!("RP^2 (f-vector {:?}): H = {}", rp2.f_vector(), homology(&rp2));
    let (sd, _) = rp2.barycentric_subdivision();
    println!("sd(RP^2) (f-vector {:?}): H = {}", sd.f_vector(), homology(&sd));
}

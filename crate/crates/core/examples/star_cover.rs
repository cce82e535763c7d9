//! Vertex-star covers, their nerves, and the acyclicity certificate.

use simple_torsion::complex::{certify_cover, closed_star_cover, nerve, CoverBasis, SimplicialComplex};
use simple_torsion::homology::homology;

fn main() {
    let examples = [
        ("circle", SimplicialComplex::simplex_boundary(2)),
        ("tetrahedron", SimplicialComplex::full_simplex(3)),
        ("triangle with tail", SimplicialComplex::close_downward([vec![0, 1, 2], vec![2, 3]]).unwrap()),
    ];
    for (name, k) in examples {
        let cover = closed_star_cover(&k, CoverBasis::Vertices);
        let cert = certify_cover(&cover, 3);
        let n = nerve(&cover);
        println!("{name}: {} pieces, certificate holds: {}", cover.len(), cert.holds());
        println!("  nerve f-vector {:?}, H(nerve) = {}, H(K) = {}", n.f_vector(), homology(&n), homology(&k));
    }
}

//! Whitehead torsion of maps and of based acyclic complexes.

use simple_torsion::collapse::expansion_inclusion;
use simple_torsion::complex::{Simplex, SimplicialComplex};
use simple_torsion::cover::CyclicCoverLabeling;
use simple_torsion::groupring::GroupRingElement;
use simple_torsion::simpmap::SimplicialMap;
use simple_torsion::torsion::{torsion_of_based_acyclic, whitehead_torsion, whitehead_torsion_trivial, BasedAcyclicComplex};

fn main() {
    let circle = SimplicialComplex::simplex_boundary(2);
    let lab = CyclicCoverLabeling::from_entries(&circle, 5, [(0, 1, 1), (1, 2, 1), (0, 2, 2)]).unwrap();
    println!("identity of the circle, Z/5: {}", whitehead_torsion(&SimplicialMap::identity(&circle), &lab).unwrap());

    let base = SimplicialComplex::close_downward([[0, 2], [1, 2]]).unwrap();
    let (_, inc) = expansion_inclusion(&base, &Simplex::new([0, 1]).unwrap(), &Simplex::new([0, 1, 2]).unwrap()).unwrap();
    println!("elementary expansion: {}", whitehead_torsion_trivial(&inc).unwrap());

    let to_point = SimplicialMap::from_pairs(circle.clone(), SimplicialComplex::full_simplex(0), [(0, 0), (1, 0), (2, 0)]).unwrap();
    println!("circle -> point: {}", whitehead_torsion_trivial(&to_point).unwrap_err());

    let u = GroupRingElement::from_i64s(5, &[-1, 1, 0, 0, 1]);
    let c = BasedAcyclicComplex::two_term(&u, 0).unwrap();
    println!("two-term complex with d = {u}: {}", torsion_of_based_acyclic(&c).unwrap());
}

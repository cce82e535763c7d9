//! Fiber-wise profile of a simplicial map and the local acyclicity verdict.

use simple_torsion::complex::SimplicialComplex;
use simple_torsion::localprofile::{is_locally_acyclic, local_profile, LocalVerdict};
use simple_torsion::simpmap::SimplicialMap;

fn main() {
    // a -> u, b -> v, c -> v
    let edge = SimplicialComplex::close_downward([[10, 11]]).unwrap();
    let f = SimplicialMap::from_pairs(SimplicialComplex::simplex_boundary(2), edge, [(0, 10), (1, 11), (2, 11)]).unwrap();
    println!("circle -> edge\n{}", local_profile(&f).render_table());
    println!("verdict: {}\n", verdict(&f));

    let k = SimplicialComplex::close_downward([vec![0, 1, 2], vec![2, 3]]).unwrap();
    let lv = SimplicialMap::last_vertex(&k);
    println!("last-vertex map sd(K) -> K\n{}", local_profile(&lv).render_table());
    println!("verdict: {}", verdict(&lv));
}

fn verdict(f: &SimplicialMap) -> String {
    match is_locally_acyclic(f) {
        LocalVerdict::LocallyAcyclic => "locally acyclic".into(),
        LocalVerdict::Fails { simplex, fiber_reduced_homology } => format!("fails at {simplex} (fiber {fiber_reduced_homology})"),
    }
}

//! Chain-level checks of the sum and composition formulas for mapping cones.

use simple_torsion::complex::SimplicialComplex;
use simple_torsion::localprofile::{check_composition_formula, check_sum_formula};
use simple_torsion::random::{random_composable, random_cover, random_map, rng, DEFAULT_SEED};
use simple_torsion::simpmap::SimplicialMap;

fn main() {
    let edge = SimplicialComplex::close_downward([[10, 11]]).unwrap();
    let f = SimplicialMap::from_pairs(SimplicialComplex::simplex_boundary(2), edge.clone(), [(0, 10), (1, 11), (2, 11)]).unwrap();
    let u = SimplicialComplex::close_downward([[10]]).unwrap();
    let r = check_sum_formula(&f, &edge, &u).unwrap();
    println!("circle -> edge over the cover (edge, u): holds = {}, Euler {:?}", r.holds(), r.euler.terms);

    let mut g = rng(DEFAULT_SEED);
    let (mut sums, mut comps) = (0, 0);
    for _ in 0..20 {
        let f = random_map(&mut g, 7, 2);
        let (x0, x1) = random_cover(&mut g, f.target());
        sums += usize::from(check_sum_formula(&f, &x0, &x1).unwrap().holds());
        let (gm, fm) = random_composable(&mut g, 6, 2);
        comps += usize::from(check_composition_formula(&gm, &fm).unwrap().holds());
    }
    println!("random instances: sum formula {sums}/20, composition formula {comps}/20");
}

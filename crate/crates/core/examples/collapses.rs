//! Free faces, greedy collapse, bounded collapsibility search and expansions.

use simple_torsion::collapse::{free_faces, greedy_collapse, is_collapsible, Collapsibility};
use simple_torsion::complex::SimplicialComplex;

fn main() {
    for n in 1..=5 {
        let (rest, seq) = greedy_collapse(&SimplicialComplex::full_simplex(n));
        println!("simplex {n}: {} moves, {} simplex left", seq.len(), rest.len());
    }
    let circle = SimplicialComplex::simplex_boundary(2);
    println!("circle free faces: {:?}", free_faces(&circle));
    let disc = SimplicialComplex::close_downward([
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 6], [0, 6, 1], [1, 2, 7],
    ])
    .unwrap();
    match is_collapsible(&disc, 100_000) {
        Collapsibility::Yes(seq) => print!("8-vertex disc collapses in {} moves:\n{seq}", seq.len()),
        other => println!("8-vertex disc: {other:?}"),
    }
    let (_, seq) = greedy_collapse(&SimplicialComplex::full_simplex(2));
    print!("triangle sequence:\n{seq}");
}

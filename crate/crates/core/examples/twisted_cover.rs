//! Cyclic covers from edge labelings: the twisted complex and its integral expansion.

use std::collections::BTreeMap;

use simple_torsion::complex::SimplicialComplex;
use simple_torsion::cover::{integral_expansion, labeling_from_tree, twisted_chain_complex};
use simple_torsion::homology::homology_of;

fn main() {
    let circle = SimplicialComplex::simplex_boundary(2);
    for n in [1, 2, 5] {
        // generator on the non-tree edge {1,2}
        let lab = labeling_from_tree(&circle, n, &BTreeMap::from([((1, 2), 1)])).unwrap();
        let c = twisted_chain_complex(&lab, false).unwrap();
        let cover = integral_expansion(&c);
        println!(
            "n = {n}: entries {:?}, ranks over Z {:?}, H(cover) = {}",
            lab.entries(),
            cover.degrees().map(|i| cover.rank(i)).collect::<Vec<_>>(),
            homology_of(&cover).unwrap()
        );
    }
}

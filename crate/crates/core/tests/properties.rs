use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

use simple_torsion::collapse::{collapse_step, expansion_inclusion, free_faces, greedy_collapse};
use simple_torsion::complex::{parse_scx, write_scx, SimplicialComplex};
use simple_torsion::cover::{parse_slab, write_slab, CyclicCoverLabeling};
use simple_torsion::homology::{homology, smith_normal_form};
use simple_torsion::localprofile::{is_locally_acyclic, local_profile};
use simple_torsion::random::{
    random_complex, random_connected_complex, random_expansion, random_graph, random_labeling, random_map, rng,
};
use simple_torsion::ring::{IntegerMatrix, Integers};
use simple_torsion::simpmap::{parse_smap, write_smap, SimplicialMap};
use simple_torsion::torsion::{whitehead_torsion, whitehead_torsion_trivial};

fn small_matrix() -> impl Strategy<Value = IntegerMatrix> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(-6i64..=6, r * c)
            .prop_map(move |v| IntegerMatrix::from_row_major(r, c, v.into_iter().map(BigInt::from).collect()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(m in small_matrix()) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.left.mul_in(&Integers, &m).mul_in(&Integers, &s.right), s.diagonal.clone());
        prop_assert!(s.left.determinant().abs().is_one());
        prop_assert!(s.right.determinant().abs().is_one());
        let d = s.invariant_factors();
        prop_assert!(d.iter().all(|x| x.is_positive()));
        prop_assert!(d.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        for i in 0..s.diagonal.rows() {
            for j in 0..s.diagonal.cols() {
                prop_assert!(i == j || s.diagonal.get(i, j).is_zero());
            }
        }
    }

    #[test]
    fn euler_characteristic_matches_betti_numbers(seed in any::<u64>()) {
        let k = random_complex(&mut rng(seed), 8, 3);
        let h = homology(&k);
        let chi: i64 = h.groups.iter().map(|(d, g)| if d % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) }).sum();
        prop_assert_eq!(chi, k.euler_characteristic());
    }

    #[test]
    fn subdivision_preserves_homology(seed in any::<u64>()) {
        let k = random_complex(&mut rng(seed), 6, 2);
        let (sd, _) = k.barycentric_subdivision();
        prop_assert_eq!(homology(&sd), homology(&k));
    }

    #[test]
    fn greedy_collapse_replays_and_preserves_homology(seed in any::<u64>()) {
        let k = random_complex(&mut rng(seed), 8, 3);
        let (rest, seq) = greedy_collapse(&k);
        prop_assert_eq!(seq.replay(&k).unwrap(), rest.clone());
        prop_assert!(free_faces(&rest).is_empty());
        prop_assert_eq!(homology(&rest), homology(&k));
    }

    #[test]
    fn expansion_then_collapse_is_identity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (small, inc) = random_expansion(&mut r, 7, 3);
        let added: Vec<_> = inc.target().simplices().filter(|s| !small.contains(s)).cloned().collect();
        prop_assert_eq!(added.len(), 2);
        let (sigma, tau) = if added[0].dim() < added[1].dim() { (&added[0], &added[1]) } else { (&added[1], &added[0]) };
        let (big, _) = expansion_inclusion(&small, sigma, tau).unwrap();
        prop_assert_eq!(&big, inc.target());
        prop_assert_eq!(collapse_step(&big, sigma, tau).unwrap(), small);
    }

    #[test]
    fn fibers_are_monotone_and_restrictions_agree(seed in any::<u64>()) {
        let f = random_map(&mut rng(seed), 7, 2);
        for sigma in f.target().simplices() {
            let fiber = f.fiber_subcomplex(sigma).unwrap();
            for face in sigma.faces() {
                prop_assert!(f.fiber_subcomplex(&face).unwrap().is_subcomplex_of(&fiber));
            }
            let closed = SimplicialComplex::closure_of([sigma]);
            let restricted = f.restrict(&closed).unwrap();
            prop_assert_eq!(restricted.source(), &fiber);
        }
        prop_assert_eq!(local_profile(&f).entries.len(), f.target().len());
    }

    #[test]
    fn text_formats_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_map(&mut r, 8, 3);
        prop_assert_eq!(&parse_scx(&write_scx(f.source())).unwrap(), f.source());
        prop_assert_eq!(&parse_smap(&write_smap(&f)).unwrap(), f.vertex_map());
        let k = random_connected_complex(&mut r, 8, 2);
        let n = r.gen_range(1..=8);
        let lab = random_labeling(&mut r, &k, n);
        let (m, entries) = parse_slab(&write_slab(&lab)).unwrap();
        prop_assert_eq!(CyclicCoverLabeling::from_entries(&k, m, entries).unwrap(), lab);
    }
}

/// Locally acyclic maps have trivial torsion for every labeling of the target.
#[test]
fn locally_acyclic_maps_have_trivial_torsion() {
    let mut r = rng(77);
    let mut checked = 0;
    for i in 0..12 {
        let k = if i % 2 == 0 { random_graph(&mut r, 5, 0.5) } else { random_connected_complex(&mut r, 5, 2) };
        let lv = SimplicialMap::last_vertex(&k);
        assert!(is_locally_acyclic(&lv).holds());
        for n in [1, 2, 3, 4] {
            let lab = random_labeling(&mut r, &k, n);
            assert!(whitehead_torsion(&lv, &lab).unwrap().is_trivial());
            checked += 1;
        }
    }
    assert_eq!(checked, 48);
}

/// Expansions are simple, yet their inclusions need not be locally acyclic:
/// the fiber over a new simplex is a proper face and can be empty or a sphere.
#[test]
fn expansion_inclusions_do_not_need_local_acyclicity() {
    let mut r = rng(91);
    let mut not_local = 0;
    for _ in 0..25 {
        let (_, inc) = random_expansion(&mut r, 7, 3);
        assert!(whitehead_torsion_trivial(&inc).unwrap().is_trivial());
        if !is_locally_acyclic(&inc).holds() {
            not_local += 1;
        }
    }
    assert!(not_local > 0);
}

//! Acceptance criteria 1–11. Each criterion prints one `[PASS]`/`[FAIL]` line
//! straight to stderr so the lines survive test-output capture.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::time::Instant;

use rand::Rng;
use simple_torsion::collapse::{collapse_step, free_faces, greedy_collapse};
use simple_torsion::complex::{closed_star_cover, CoverBasis, Simplex, SimplicialComplex, Vertex};
use simple_torsion::cover::{twisted_chain_complex, validate_labeling, CyclicCoverLabeling};
use simple_torsion::groupring::{wh_equal, GroupRingElement, WhiteheadClass};
use simple_torsion::homology::{homology, reduced_homology, HomologyGroup};
use simple_torsion::localprofile::{check_composition_formula, check_sum_formula, is_locally_acyclic, LocalVerdict};
use simple_torsion::random::{
    random_complex, random_composable, random_connected_complex, random_cover, random_eta, random_expansion,
    random_graph, random_labeling, random_map, random_map_from, rng,
};
use simple_torsion::simpmap::SimplicialMap;
use simple_torsion::torsion::{
    chain_contraction_rational, mapping_cone_zg, torsion_of_based_acyclic, torsion_with_contraction,
    whitehead_torsion, whitehead_torsion_trivial, BasedAcyclicComplex, TorsionError,
};

type Verdict = Result<String, String>;

fn cx(max: &[&[Vertex]]) -> SimplicialComplex {
    SimplicialComplex::close_downward(max.iter().map(|s| s.to_vec())).unwrap()
}

fn s(v: &[Vertex]) -> Simplex {
    Simplex::new(v.iter().copied()).unwrap()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn rp2() -> SimplicialComplex {
    cx(&[
        &[0, 1, 2],
        &[0, 2, 3],
        &[0, 3, 4],
        &[0, 4, 5],
        &[0, 1, 5],
        &[1, 2, 4],
        &[2, 3, 5],
        &[1, 3, 4],
        &[1, 3, 5],
        &[2, 4, 5],
    ])
}

fn ac1_homology_oracle() -> Verdict {
    let t = Instant::now();
    for d in 0..=5usize {
        let h = reduced_homology(&SimplicialComplex::simplex_boundary(d + 1));
        let expected: BTreeMap<i32, HomologyGroup> = [(d as i32, HomologyGroup::free(1))].into();
        ensure(h.groups == expected, format!("boundary of the {}-simplex: {h}", d + 1))?;
    }
    let h = homology(&rp2());
    ensure(h.get(1).to_string() == "Z/2" && h.get(2).is_zero(), format!("RP2: {h}"))?;
    let secs = t.elapsed().as_secs_f64();
    ensure(secs < 5.0, format!("took {secs:.2}s"))?;
    Ok(format!("spheres d<=5 and RP2 exact in {secs:.2}s"))
}

/// Star law for open stars: `∩ St°(σᵢ) = St°(∪σᵢ)` if the union is a simplex,
/// else empty. Closed-star intersections of the star cover follow by closure.
fn ac2_star_intersection_law() -> Verdict {
    let mut r = rng(2);
    let (mut tuples, mut literal_mismatch) = (0usize, 0usize);
    for trial in 0..100 {
        let k = random_complex(&mut r, 9, 2);
        let all: Vec<Simplex> = k.simplices().cloned().collect();
        let stars: Vec<BTreeSet<Simplex>> = all.iter().map(|x| k.open_star(x)).collect();
        let cover = closed_star_cover(&k, CoverBasis::AllSimplices);
        let m = all.len();
        let mut check = |idx: &[usize]| -> Result<(), String> {
            tuples += 1;
            let mut actual = stars[idx[0]].clone();
            for &i in &idx[1..] {
                actual = actual.intersection(&stars[i]).cloned().collect();
            }
            let union = idx.iter().skip(1).fold(all[idx[0]].clone(), |u, &i| u.union(&all[i]));
            let predicted = if k.contains(&union) { k.open_star(&union) } else { BTreeSet::new() };
            ensure(actual == predicted, format!("complex #{trial}: tuple {idx:?}"))?;
            let closed = SimplicialComplex::closure_of(&actual);
            ensure(cover.intersection(idx) == closed, format!("complex #{trial}: cover intersection {idx:?}"))?;
            if cover.literal_intersection(idx) != closed {
                literal_mismatch += 1;
            }
            Ok(())
        };
        for i in 0..m {
            for j in i + 1..m {
                check(&[i, j])?;
                for l in j + 1..m {
                    check(&[i, j, l])?;
                }
            }
        }
    }
    Ok(format!(
        "100 complexes, {tuples} pairs/triples, 0 failures ({literal_mismatch} tuples where raw closed-star intersections are larger)"
    ))
}

fn ac3_twisted_square_zero() -> Verdict {
    let mut r = rng(3);
    let mut nontrivial = 0;
    for trial in 0..100 {
        let k = match trial % 3 {
            0 => random_graph(&mut r, 9, 0.4),
            i => random_connected_complex(&mut r, 9, i + 1),
        };
        let n = r.gen_range(1..=8);
        let lab = random_labeling(&mut r, &k, n);
        ensure(validate_labeling(&lab).is_ok(), format!("#{trial}: invalid labeling"))?;
        let c = twisted_chain_complex(&lab, false).map_err(|e| format!("#{trial}: {e}"))?;
        ensure(c.check_square_zero().is_ok(), format!("#{trial}: d^2 != 0 (n = {n})"))?;
        // nonzero holonomy means the labeling is not a coboundary
        let cover = simple_torsion::cover::integral_expansion(&c);
        if homology(&k).betti(0) * n != simple_torsion::homology::homology_of(&cover).unwrap().betti(0) {
            nontrivial += 1;
        }
    }
    Ok(format!("100 labeled complexes, d^2 = 0 on all ({nontrivial} with nontrivial holonomy)"))
}

fn ac4_group_ring_unit() -> Verdict {
    let u = GroupRingElement::from_i64s(5, &[-1, 1, 0, 0, 1]);
    let v = GroupRingElement::from_i64s(5, &[-1, 0, 1, 1, 0]);
    ensure(u.mul(&v).unwrap().is_one(), "product is not 1")?;
    ensure(u.inverse().unwrap() == v, "inverse() does not recover t^2+t^3-1")?;
    ensure(!wh_equal(&u, &GroupRingElement::one(5)).unwrap(), "t+t^4-1 is Wh-equal to 1")?;
    Ok("(t+t^4-1)(t^2+t^3-1) = 1, inverse recovered, class nontrivial".into())
}

/// Accepted cones and their labels, shared by criteria 5, 6 and 11.
fn torsion_corpus() -> Vec<(String, BasedAcyclicComplex)> {
    let mut r = rng(5);
    let mut out = Vec::new();
    for &n in &[1usize, 2, 3, 5, 6] {
        for j in 0..3 {
            let k = if j == 0 { random_graph(&mut r, 6, 0.4) } else { random_connected_complex(&mut r, 6, 2) };
            let lab = random_labeling(&mut r, &k, n);
            let cone = mapping_cone_zg(&SimplicialMap::identity(&k), &lab).unwrap();
            out.push((format!("identity n={n}"), BasedAcyclicComplex::new(cone).unwrap()));
        }
    }
    for i in 0..20 {
        let (_, inc) = random_expansion(&mut r, 7, 3);
        let cone = mapping_cone_zg(&inc, &CyclicCoverLabeling::zero(inc.target(), 1).unwrap()).unwrap();
        out.push((format!("expansion #{i}"), BasedAcyclicComplex::new(cone).unwrap()));
    }
    out
}

fn ac5_torsion_sanity() -> Verdict {
    let t = Instant::now();
    let corpus = torsion_corpus();
    for (name, c) in &corpus {
        let w = torsion_of_based_acyclic(c).map_err(|e| format!("{name}: {e}"))?;
        ensure(w.is_trivial(), format!("{name}: class {w}"))?;
    }
    let u = GroupRingElement::from_i64s(5, &[-1, 1, 0, 0, 1]);
    let w = torsion_of_based_acyclic(&BasedAcyclicComplex::two_term(&u, 0).unwrap()).map_err(|e| e.to_string())?;
    let target = WhiteheadClass::new(u.clone()).unwrap();
    ensure(w == target || w == target.inverse(), format!("two-term class {w}"))?;
    let secs = t.elapsed().as_secs_f64();
    ensure(secs < 10.0, format!("took {secs:.2}s"))?;
    Ok(format!("{} identity/expansion cones trivial, two-term class {w}, {secs:.2}s", corpus.len()))
}

fn ac6_contraction_independence() -> Verdict {
    let mut r = rng(6);
    let mut corpus = torsion_corpus();
    let u = GroupRingElement::from_i64s(5, &[-1, 1, 0, 0, 1]);
    corpus.push(("two-term".into(), BasedAcyclicComplex::two_term(&u, 0).unwrap()));
    let mut runs = 0;
    for (name, c) in &corpus {
        let base = chain_contraction_rational(c).map_err(|e| format!("{name}: {e}"))?;
        let w0 = torsion_with_contraction(c, &base).map_err(|e| format!("{name}: {e}"))?;
        for _ in 0..10 {
            let eta = random_eta(&mut r, c.complex());
            let p = base.perturbed(&eta);
            let w = torsion_with_contraction(c, &p).map_err(|e| format!("{name}: perturbed: {e}"))?;
            ensure(w == w0, format!("{name}: {w} != {w0}"))?;
            runs += 1;
        }
    }
    Ok(format!("{} cones x 10 perturbations ({runs} runs), identical classes", corpus.len()))
}

fn ac7_local_criterion() -> Verdict {
    for k in [SimplicialComplex::full_simplex(2), SimplicialComplex::simplex_boundary(3), cx(&[&[0, 1, 2], &[2, 3]])] {
        let lv = SimplicialMap::last_vertex(&k);
        ensure(is_locally_acyclic(&lv).holds(), format!("last-vertex map of {:?} not locally acyclic", k.f_vector()))?;
        let w = whitehead_torsion_trivial(&lv).map_err(|e| e.to_string())?;
        ensure(w.is_trivial(), format!("last-vertex torsion {w}"))?;
    }
    let f = SimplicialMap::from_pairs(SimplicialComplex::simplex_boundary(2), cx(&[&[10, 11]]), [(0, 10), (1, 11), (2, 11)])
        .unwrap();
    match is_locally_acyclic(&f) {
        LocalVerdict::Fails { simplex, .. } if simplex == s(&[10, 11]) => {}
        v => return Err(format!("circle -> edge: {v:?}")),
    }
    Ok("3 last-vertex maps locally acyclic with trivial torsion; circle -> edge fails at {u,v}".into())
}

fn ac8_sum_formula() -> Verdict {
    let mut r = rng(8);
    for trial in 0..100 {
        let f = random_map(&mut r, 8, 2);
        let (x0, x1) = random_cover(&mut r, f.target());
        let rep = check_sum_formula(&f, &x0, &x1).map_err(|e| format!("#{trial}: {e}"))?;
        ensure(rep.chain_maps, format!("#{trial}: maps do not commute"))?;
        ensure(rep.degrees.iter().all(|d| d.exact), format!("#{trial}: not exact: {:?}", rep.degrees))?;
        ensure(rep.euler.holds, format!("#{trial}: Euler {:?}", rep.euler.terms))?;
    }
    Ok("100 (map, cover) instances exact in every degree, Euler identity exact".into())
}

fn ac9_composition_formula() -> Verdict {
    let mut r = rng(9);
    for trial in 0..50 {
        let (g, f) = random_composable(&mut r, 7, 2);
        let rep = check_composition_formula(&g, &f).map_err(|e| format!("#{trial}: {e}"))?;
        ensure(rep.euler.holds, format!("#{trial}: Euler {:?}", rep.euler.terms))?;
        ensure(rep.holds(), format!("#{trial}: chain-level check failed"))?;
    }
    Ok("50 composable pairs: chi(cone fg) = chi(cone f) + chi(cone g), octahedral check exact".into())
}

fn ac10_collapse_engine() -> Verdict {
    for n in 0..=5usize {
        let (rest, seq) = greedy_collapse(&SimplicialComplex::full_simplex(n));
        let want = ((1usize << (n + 1)) - 2) / 2;
        ensure(rest.len() == 1 && seq.len() == want, format!("simplex {n}: {} moves, {} left", seq.len(), rest.len()))?;
    }
    ensure(free_faces(&SimplicialComplex::simplex_boundary(2)).is_empty(), "circle has free faces")?;
    let mut r = rng(10);
    let mut moves = 0;
    for trial in 0..50 {
        let k = random_complex(&mut r, 8, 3);
        let h = homology(&k);
        let (_, seq) = greedy_collapse(&k);
        let mut cur = k.clone();
        for (a, b) in &seq.moves {
            cur = collapse_step(&cur, a, b).map_err(|e| format!("#{trial}: {e}"))?;
            ensure(homology(&cur) == h, format!("#{trial}: homology changed after ({a} ; {b})"))?;
            moves += 1;
        }
    }
    Ok(format!("simplex move counts exact for n<=5, circle has no free faces, {moves} corpus moves preserve homology"))
}

fn ac11_euler_precondition() -> Verdict {
    let mut accepted = 0;
    for (name, c) in torsion_corpus() {
        let (even, odd) = c.complex().parity_ranks();
        ensure(even == odd, format!("{name}: ranks {even} vs {odd}"))?;
        accepted += 1;
    }
    let mut r = rng(11);
    let mut rejected = 0;
    let mut tried = 0;
    while tried < 60 {
        let dim = 1 + tried % 2;
        let src = random_connected_complex(&mut r, 6, dim);
        let f = random_map_from(&mut r, src, 6, dim);
        if !f.target().is_connected() {
            continue;
        }
        tried += 1;
        let n = r.gen_range(1..=4);
        let lab = random_labeling(&mut r, f.target(), n);
        match whitehead_torsion(&f, &lab) {
            Ok(_) => {
                let (even, odd) = mapping_cone_zg(&f, &lab).unwrap().parity_ranks();
                ensure(even == odd, format!("accepted map with ranks {even} vs {odd}"))?;
                accepted += 1;
            }
            Err(TorsionError::NotAPiHomologyEquivalence { degree, group }) => {
                ensure(!group.is_zero(), format!("rejected with zero witness in degree {degree}"))?;
                rejected += 1;
            }
            Err(e) => return Err(format!("unexpected rejection: {e}")),
        }
    }
    Ok(format!("{accepted} accepted cones balanced, {rejected} rejections each with a nonzero cone homology witness"))
}

#[test]
fn acceptance_criteria() {
    type Criterion = (&'static str, fn() -> Verdict);
    let criteria: [Criterion; 11] = [
        ("homology oracle", ac1_homology_oracle),
        ("star-intersection law", ac2_star_intersection_law),
        ("twisted d^2 = 0", ac3_twisted_square_zero),
        ("group-ring unit", ac4_group_ring_unit),
        ("torsion pipeline sanity", ac5_torsion_sanity),
        ("contraction independence", ac6_contraction_independence),
        ("local acyclicity criterion", ac7_local_criterion),
        ("sum formula", ac8_sum_formula),
        ("composition formula", ac9_composition_formula),
        ("collapse engine", ac10_collapse_engine),
        ("Euler precondition", ac11_euler_precondition),
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let line = match check() {
            Ok(detail) => format!("[PASS] AC-{} {name}: {detail}", i + 1),
            Err(detail) => {
                failed.push(i + 1);
                format!("[FAIL] AC-{} {name}: {detail}", i + 1)
            }
        };
        writeln!(err, "{line}").unwrap();
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}

//! Per-simplex fiber homology of a simplicial map, the local acyclicity
//! criterion, and chain-level checks of the sum and composition formulas.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Simplex, SimplicialComplex};
use crate::homology::{
    homology_of, homology_unchecked, induced_chain_map, invariant_factors, mapping_cone, reduced_homology,
    ChainComplexZ, ChainMapZ, Homology,
};
use crate::ring::{IntegerMatrix, Integers, Matrix};
use crate::simpmap::{MapError, SimplicialMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("the two pieces do not cover the target; {0} is missing")]
    NotACover(Simplex),
    #[error("{0} is not a subcomplex of the target")]
    NotASubcomplex(Simplex),
    #[error("maps are not composable")]
    CompositionMismatch,
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub simplex: Simplex,
    pub fiber_size: usize,
    pub fiber_reduced_homology: Homology,
    /// Homology of the cone of `C(f⁻¹σ) → C(σ̄)`.
    pub cone_homology: Homology,
}

impl ProfileEntry {
    pub fn is_trivial(&self) -> bool {
        self.cone_homology.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalTorsionProfile {
    pub entries: Vec<ProfileEntry>,
}

impl LocalTorsionProfile {
    pub fn render_table(&self) -> String {
        let mut rows = vec![[
            "simplex".to_string(),
            "fiber size".to_string(),
            "fiber reduced H".to_string(),
            "cone H".to_string(),
            "verdict".to_string(),
        ]];
        for e in &self.entries {
            rows.push([
                e.simplex.to_string(),
                e.fiber_size.to_string(),
                e.fiber_reduced_homology.to_string(),
                e.cone_homology.to_string(),
                if e.is_trivial() { "ok" } else { "FAIL" }.to_string(),
            ]);
        }
        let widths: Vec<usize> = (0..5).map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for r in &rows {
            let cells: Vec<String> =
                r.iter().zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

/// `f` restricted to the fiber over `σ`, as a map into the closed simplex.
fn fiber_map(f: &SimplicialMap, sigma: &Simplex) -> Result<SimplicialMap, MapError> {
    let fiber = f.fiber_subcomplex(sigma)?;
    let closed = SimplicialComplex::closure_of([sigma]);
    let vm = fiber.vertices().map(|v| (v, f.apply_vertex(v))).collect();
    SimplicialMap::new(fiber, closed, vm)
}

pub fn local_profile(f: &SimplicialMap) -> LocalTorsionProfile {
    let entries = f
        .target()
        .simplices()
        .map(|sigma| {
            let g = fiber_map(f, sigma).expect("fibers of a valid map");
            let cone = mapping_cone(&induced_chain_map(&g, false)).expect("induced maps are chain maps");
            ProfileEntry {
                simplex: sigma.clone(),
                fiber_size: g.source().len(),
                fiber_reduced_homology: reduced_homology(g.source()),
                cone_homology: homology_unchecked(&cone),
            }
        })
        .collect();
    LocalTorsionProfile { entries }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum LocalVerdict {
    LocallyAcyclic,
    /// First target simplex (in lexicographic order) with a non-acyclic fiber.
    Fails { simplex: Simplex, fiber_reduced_homology: Homology },
}

impl LocalVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, LocalVerdict::LocallyAcyclic)
    }
}

/// Every fiber `f⁻¹(σ)` nonempty with vanishing reduced homology.
pub fn is_locally_acyclic(f: &SimplicialMap) -> LocalVerdict {
    for sigma in f.target().simplices() {
        let fiber = f.fiber_subcomplex(sigma).expect("σ is in the target");
        let h = reduced_homology(&fiber);
        if !h.is_zero() {
            return LocalVerdict::Fails { simplex: sigma.clone(), fiber_reduced_homology: h };
        }
    }
    LocalVerdict::LocallyAcyclic
}

/// Exactness data for one degree of `0 → A → B → C → 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeExactness {
    pub degree: i32,
    pub dims: (usize, usize, usize),
    pub rank_in: usize,
    pub rank_out: usize,
    pub exact: bool,
}

/// Index of each basis label of a complex, per degree.
fn label_index(c: &ChainComplexZ, i: i32) -> BTreeMap<&str, usize> {
    c.labels(i).iter().enumerate().map(|(k, l)| (l.as_str(), k)).collect()
}

fn all_unit_factors(m: &IntegerMatrix) -> bool {
    invariant_factors(m).iter().all(|d| d.magnitude().is_one())
}

/// Checks `0 → A -α→ B -β→ C → 0` in one degree: injective and saturated
/// `α`, surjective `β` over the integers, `βα = 0` and matching ranks.
fn degree_exactness(degree: i32, alpha: &IntegerMatrix, beta: &IntegerMatrix) -> DegreeExactness {
    let (b, a) = alpha.shape();
    let c = beta.rows();
    let ra = invariant_factors(alpha).len();
    let rb = invariant_factors(beta).len();
    let composite_zero = beta.mul_in(&Integers, alpha).is_zero_in(&Integers);
    let exact = composite_zero
        && ra == a
        && rb == c
        && ra + rb == b
        && all_unit_factors(alpha)
        && all_unit_factors(beta);
    DegreeExactness { degree, dims: (a, b, c), rank_in: ra, rank_out: rb, exact }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerIdentity {
    pub terms: Vec<(String, i64)>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumFormulaReport {
    pub degrees: Vec<DegreeExactness>,
    pub chain_maps: bool,
    pub euler: EulerIdentity,
}

impl SumFormulaReport {
    pub fn holds(&self) -> bool {
        self.chain_maps && self.euler.holds && self.degrees.iter().all(|d| d.exact)
    }
}

fn cone_of(f: &SimplicialMap) -> ChainComplexZ {
    mapping_cone(&induced_chain_map(f, false)).expect("induced maps are chain maps")
}

/// Matrix sending basis label `l` of `from` to `sign * l` in `to`, when present.
fn label_inclusion(from: &ChainComplexZ, to: &ChainComplexZ, i: i32, sign: i64) -> IntegerMatrix {
    let idx = label_index(to, i);
    let mut m = IntegerMatrix::filled(to.rank(i), from.rank(i), BigInt::zero());
    for (j, l) in from.labels(i).iter().enumerate() {
        if let Some(&r) = idx.get(l.as_str()) {
            m.set(r, j, BigInt::from(sign));
        }
    }
    m
}

fn stack_rows(a: &IntegerMatrix, b: &IntegerMatrix) -> IntegerMatrix {
    Matrix::block2x2(a, &Matrix::zeros(&Integers, a.rows(), 0), b, &Matrix::zeros(&Integers, b.rows(), 0))
}

fn join_cols(a: &IntegerMatrix, b: &IntegerMatrix) -> IntegerMatrix {
    Matrix::block2x2(a, b, &Matrix::zeros(&Integers, 0, a.cols()), &Matrix::zeros(&Integers, 0, b.cols()))
}

fn direct_sum(a: &ChainComplexZ, b: &ChainComplexZ) -> ChainComplexZ {
    let lo = a.min_degree().min(b.min_degree());
    let hi = a.end_degree().max(b.end_degree());
    let mut labels = Vec::new();
    let mut ds = Vec::new();
    for i in lo..hi {
        let mut l: Vec<String> = a.labels(i).iter().map(|x| format!("0:{x}")).collect();
        l.extend(b.labels(i).iter().map(|x| format!("1:{x}")));
        labels.push(l);
        let zr = Matrix::zeros(&Integers, a.rank(i - 1), b.rank(i));
        let zl = Matrix::zeros(&Integers, b.rank(i - 1), a.rank(i));
        ds.push(Matrix::block2x2(&a.d(i), &zr, &zl, &b.d(i)));
    }
    crate::homology::ChainComplex::new(Integers, lo, labels, ds).expect("block shapes")
}

fn chain_map(s: &ChainComplexZ, t: &ChainComplexZ, comp: impl Fn(i32) -> IntegerMatrix) -> ChainMapZ {
    let lo = s.min_degree().min(t.min_degree());
    let hi = s.end_degree().max(t.end_degree());
    let components = (lo..hi).map(|i| (i, comp(i))).collect();
    ChainMapZ::new(s.clone(), t.clone(), components).expect("shapes")
}

/// Mayer–Vietoris for the cones over a closed 2-piece cover `X₀ ∪ X₁` of the target.
pub fn check_sum_formula(
    f: &SimplicialMap,
    x0: &SimplicialComplex,
    x1: &SimplicialComplex,
) -> Result<SumFormulaReport, ProfileError> {
    for x in [x0, x1] {
        if let Some(s) = x.simplices().find(|s| !f.target().contains(s)) {
            return Err(ProfileError::NotASubcomplex(s.clone()));
        }
    }
    if let Some(s) = f.target().simplices().find(|s| !x0.contains(s) && !x1.contains(s)) {
        return Err(ProfileError::NotACover(s.clone()));
    }
    let x01 = x0.intersect(x1);
    let (f0, f1, f01) = (f.restrict(x0)?, f.restrict(x1)?, f.restrict(&x01)?);
    let (c, c0, c1, c01) = (cone_of(f), cone_of(&f0), cone_of(&f1), cone_of(&f01));
    let mid = direct_sum(&c0, &c1);
    let alpha = chain_map(&c01, &mid, |i| {
        stack_rows(&label_inclusion(&c01, &c0, i, 1), &label_inclusion(&c01, &c1, i, -1))
    });
    let beta = chain_map(&mid, &c, |i| join_cols(&label_inclusion(&c0, &c, i, 1), &label_inclusion(&c1, &c, i, 1)));
    let chain_maps = alpha.check_commutes().is_ok() && beta.check_commutes().is_ok();
    let degrees = c.degrees().map(|i| degree_exactness(i, &alpha.component(i), &beta.component(i))).collect();
    let chi = [
        ("cone f".to_string(), c.euler_characteristic()),
        ("cone f0".to_string(), c0.euler_characteristic()),
        ("cone f1".to_string(), c1.euler_characteristic()),
        ("cone f01".to_string(), c01.euler_characteristic()),
    ];
    let holds = chi[0].1 == chi[1].1 + chi[2].1 - chi[3].1;
    Ok(SumFormulaReport { degrees, chain_maps, euler: EulerIdentity { terms: chi.to_vec(), holds } })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionReport {
    /// `0 → cone(fg) → cone(a) → cone(g)[1] → 0`, degree by degree.
    pub degrees: Vec<DegreeExactness>,
    /// The comparison `cone(a) → cone(f)` commutes with the boundary.
    pub comparison_is_chain_map: bool,
    /// ... is onto in every degree ...
    pub comparison_surjective: bool,
    /// ... and has acyclic kernel, so it is a quasi-isomorphism.
    pub comparison_kernel_acyclic: bool,
    pub cone_a_homology: Homology,
    pub cone_f_homology: Homology,
    pub euler: EulerIdentity,
}

impl CompositionReport {
    pub fn holds(&self) -> bool {
        self.degrees.iter().all(|d| d.exact)
            && self.comparison_is_chain_map
            && self.comparison_surjective
            && self.comparison_kernel_acyclic
            && self.cone_a_homology == self.cone_f_homology
            && self.euler.holds
    }
}

/// For `Z -g→ Y -f→ X`: with `a: cone(g) → cone(fg)`, `(z, y) ↦ (z, f y)`,
/// checks the split sequence `0 → cone(fg) → cone(a) → cone(g)[1] → 0`, the
/// quasi-isomorphism `cone(a) → cone(f)`, `(z', y, z, x) ↦ (y + g z, x)`, and
/// `χ(cone fg) = χ(cone f) + χ(cone g)`.
pub fn check_composition_formula(g: &SimplicialMap, f: &SimplicialMap) -> Result<CompositionReport, ProfileError> {
    if g.target() != f.source() {
        return Err(ProfileError::CompositionMismatch);
    }
    let fg = f.compose_after(g)?;
    let phi_g = induced_chain_map(g, false);
    let phi_f = induced_chain_map(f, false);
    let (cg, cf, cfg) = (cone_of(g), cone_of(f), cone_of(&fg));

    // a: cone(g) → cone(fg)
    let a = chain_map(&cg, &cfg, |i| {
        let nz = phi_g.source().rank(i - 1);
        let ident = Matrix::identity(&Integers, nz);
        let zero_zy = Matrix::zeros(&Integers, nz, phi_f.source().rank(i));
        let zero_xz = Matrix::zeros(&Integers, phi_f.target().rank(i), nz);
        Matrix::block2x2(&ident, &zero_zy, &zero_xz, &phi_f.component(i))
    });
    let ca = mapping_cone(&a).expect("a commutes with the boundary");

    // inclusion of cone(fg) and projection onto cone(g)[1]
    let degrees = ca
        .degrees()
        .map(|i| {
            let (s, t) = (cg.rank(i - 1), cfg.rank(i));
            let incl = Matrix::block2x2(
                &Matrix::zeros(&Integers, s, 0),
                &Matrix::zeros(&Integers, s, t),
                &Matrix::zeros(&Integers, t, 0),
                &Matrix::identity(&Integers, t),
            );
            let proj = Matrix::block2x2(
                &Matrix::identity(&Integers, s),
                &Matrix::zeros(&Integers, s, t),
                &Matrix::zeros(&Integers, 0, s),
                &Matrix::zeros(&Integers, 0, t),
            );
            degree_exactness(i, &incl, &proj)
        })
        .collect();

    // q: cone(a) → cone(f). Labels of cone(a) are s:s:z', s:t:y, t:s:z, t:t:x.
    let q = chain_map(&ca, &cf, |i| {
        let idx = label_index(&cf, i);
        let mut m = IntegerMatrix::filled(cf.rank(i), ca.rank(i), BigInt::zero());
        let gi = phi_g.component(i - 1);
        let ys = phi_g.target().labels(i - 1);
        let zs = label_index(phi_g.source(), i - 1);
        for (col, l) in ca.labels(i).iter().enumerate() {
            if let Some(y) = l.strip_prefix("s:t:") {
                m.set(idx[format!("s:{y}").as_str()], col, BigInt::one());
            } else if let Some(x) = l.strip_prefix("t:t:") {
                m.set(idx[format!("t:{x}").as_str()], col, BigInt::one());
            } else if let Some(z) = l.strip_prefix("t:s:") {
                let zc = zs[z];
                for (r, y) in ys.iter().enumerate() {
                    let v = gi.get(r, zc);
                    if !v.is_zero() {
                        m.set(idx[format!("s:{y}").as_str()], col, v.clone());
                    }
                }
            }
        }
        m
    });
    let comparison_is_chain_map = q.check_commutes().is_ok();
    let comparison_surjective = cf.degrees().all(|i| {
        let m = q.component(i);
        invariant_factors(&m).len() == cf.rank(i) && all_unit_factors(&m)
    });
    let kernel = comparison_kernel(&ca, &phi_g);
    let comparison_kernel_acyclic = homology_of(&kernel).map(|h| h.is_zero()).unwrap_or(false);

    let chi = [
        ("cone fg".to_string(), cfg.euler_characteristic()),
        ("cone f".to_string(), cf.euler_characteristic()),
        ("cone g".to_string(), cg.euler_characteristic()),
    ];
    let holds = chi[0].1 == chi[1].1 + chi[2].1;
    Ok(CompositionReport {
        degrees,
        comparison_is_chain_map,
        comparison_surjective,
        comparison_kernel_acyclic,
        cone_a_homology: homology_unchecked(&ca),
        cone_f_homology: homology_unchecked(&cf),
        euler: EulerIdentity { terms: chi.to_vec(), holds },
    })
}

/// Kernel of `q`, with basis `s:s:z'` and `t:s:z - g(z)`; coordinates are
/// read off the `s:s` and `t:s` entries.
fn comparison_kernel(ca: &ChainComplexZ, phi_g: &ChainMapZ) -> ChainComplexZ {
    let keep = |i: i32| -> Vec<usize> {
        ca.labels(i).iter().enumerate().filter(|(_, l)| l.starts_with("s:s:") || l.starts_with("t:s:")).map(|(k, _)| k).collect()
    };
    let basis_vectors = |i: i32| -> IntegerMatrix {
        let idx = label_index(ca, i);
        let kept = keep(i);
        let gi = phi_g.component(i - 1);
        let ys = phi_g.target().labels(i - 1);
        let zs = label_index(phi_g.source(), i - 1);
        let mut m = IntegerMatrix::filled(ca.rank(i), kept.len(), BigInt::zero());
        for (col, &k) in kept.iter().enumerate() {
            m.set(k, col, BigInt::one());
            if let Some(z) = ca.labels(i)[k].strip_prefix("t:s:") {
                let zc = zs[z];
                for (r, y) in ys.iter().enumerate() {
                    let v = gi.get(r, zc);
                    if !v.is_zero() {
                        m.set(idx[format!("s:t:{y}").as_str()], col, -v.clone());
                    }
                }
            }
        }
        m
    };
    let mut labels = Vec::new();
    let mut ds = Vec::new();
    for i in ca.degrees() {
        let kept = keep(i);
        labels.push(kept.iter().map(|&k| ca.labels(i)[k].clone()).collect());
        let image = ca.d(i).mul_in(&Integers, &basis_vectors(i));
        let rows = if i == ca.min_degree() { Vec::new() } else { keep(i - 1) };
        ds.push(image.select(&rows, &(0..kept.len()).collect::<Vec<_>>()));
    }
    crate::homology::ChainComplex::new(Integers, ca.min_degree(), labels, ds).expect("kernel shapes")
}

//! Whitehead torsion of maps, computed as the determinant torsion of the
//! based acyclic mapping cone over `Z[Z/n]`.
//!
//! The rational group ring `Q[Z/n]` splits as the product of the fields
//! `Q[x]/Φ_d` over `d | n`. On each factor a chain contraction `δ` is built
//! by exact linear algebra and `det(d + δ : C_odd → C_even)` is taken. The
//! factor determinants are glued back by the Chinese remainder theorem; the
//! result must be an integral unit of `Z[Z/n]`, and its class modulo `±t^k`
//! is the torsion.
//!
//! Convention: for `Z[Z/n] --u--> Z[Z/n]` concentrated in degrees 1 and 0 the
//! torsion is the class of `u`; shifted to degrees 2 and 1 it is `u^{-1}`.

pub mod cyclotomic;
pub mod linalg;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cover::{integral_expansion, twisted_chain_map, ChainComplexZG, CoverError, CyclicCoverLabeling};
use crate::groupring::{GroupRing, GroupRingElement, WhiteheadClass};
use crate::homology::{homology_of, mapping_cone, ChainComplex, HomologyError, HomologyGroup};
use crate::ring::Matrix;
use crate::simpmap::SimplicialMap;
use cyclotomic::{chinese_remainder, divisors, to_group_ring, CyclotomicField, RatPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorsionError {
    #[error("source and target must be connected and nonempty")]
    NotConnected,
    #[error("not a homology equivalence with these coefficients: cone H{degree} = {group}")]
    NotAPiHomologyEquivalence { degree: i32, group: HomologyGroup },
    #[error("complex is not acyclic: H{degree} = {group}")]
    NotAcyclic { degree: i32, group: HomologyGroup },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// A free `Z[Z/n]` complex, with its stored basis, whose underlying abelian
/// complex is acyclic.
#[derive(Debug, Clone, PartialEq)]
pub struct BasedAcyclicComplex {
    complex: ChainComplexZG,
}

impl BasedAcyclicComplex {
    pub fn new(complex: ChainComplexZG) -> Result<Self, TorsionError> {
        complex.check_square_zero()?;
        let h = homology_of(&integral_expansion(&complex))?;
        if let Some((degree, group)) = h.first_nonzero() {
            return Err(TorsionError::NotAcyclic { degree, group: group.clone() });
        }
        let (even, odd) = complex.parity_ranks();
        if even != odd {
            return Err(TorsionError::InternalInconsistency(format!(
                "acyclic complex with even rank {even} and odd rank {odd}"
            )));
        }
        Ok(BasedAcyclicComplex { complex })
    }

    /// `Z[Z/n] --u--> Z[Z/n]` from degree `low + 1` to degree `low`.
    pub fn two_term(u: &GroupRingElement, low: i32) -> Result<Self, TorsionError> {
        let ring = GroupRing { n: u.modulus() };
        let c = ChainComplex::new(
            ring,
            low,
            vec![vec!["x".into()], vec!["y".into()]],
            vec![Matrix::zeros(&ring, 0, 1), Matrix::from_rows(vec![vec![u.clone()]])],
        )?;
        Self::new(c)
    }

    pub fn complex(&self) -> &ChainComplexZG {
        &self.complex
    }

    pub fn modulus(&self) -> usize {
        self.complex.ring().n
    }
}

/// The complex and a contraction over one field factor.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorContraction {
    pub field: CyclotomicField,
    pub complex: ChainComplex<CyclotomicField>,
    /// `delta[i]` maps degree `i` to degree `i + 1`.
    pub delta: BTreeMap<i32, Matrix<RatPoly>>,
}

impl FactorContraction {
    pub fn delta(&self, i: i32) -> Matrix<RatPoly> {
        self.delta.get(&i).cloned().unwrap_or_else(|| {
            Matrix::zeros(&self.field, self.complex.rank(i + 1), self.complex.rank(i))
        })
    }

    /// First degree where `dδ + δd ≠ id`.
    pub fn check(&self) -> Result<(), i32> {
        let f = &self.field;
        let c = &self.complex;
        for i in c.degrees() {
            let lhs = c.d(i + 1).mul_in(f, &self.delta(i)).add_in(f, &self.delta(i - 1).mul_in(f, &c.d(i)));
            if lhs != Matrix::identity(f, c.rank(i)) {
                return Err(i);
            }
        }
        Ok(())
    }
}

/// Chain contractions of `C ⊗ Q[x]/Φ_d` for every `d | n`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalContraction {
    n: usize,
    factors: Vec<FactorContraction>,
}

impl RationalContraction {
    pub fn factors(&self) -> &[FactorContraction] {
        &self.factors
    }

    pub fn check(&self) -> Result<(), TorsionError> {
        for fc in &self.factors {
            fc.check().map_err(|i| {
                TorsionError::InternalInconsistency(format!(
                    "dδ + δd ≠ id in degree {i} over Q[x]/Φ_{}",
                    fc.field.order()
                ))
            })?;
        }
        Ok(())
    }

    /// `δ + dη - ηd` for a degree +2 map `η` (`eta[i]` maps degree `i` to
    /// `i + 2`). This is again a contraction.
    pub fn perturbed(&self, eta: &BTreeMap<i32, Matrix<GroupRingElement>>) -> Self {
        let factors = self
            .factors
            .iter()
            .map(|fc| {
                let f = &fc.field;
                let c = &fc.complex;
                let eta_f = |i: i32| {
                    eta.get(&i)
                        .map(|m| m.map(|e| f.project(e)))
                        .unwrap_or_else(|| Matrix::zeros(f, c.rank(i + 2), c.rank(i)))
                };
                let delta = c
                    .degrees()
                    .map(|i| {
                        let new = fc
                            .delta(i)
                            .add_in(f, &c.d(i + 2).mul_in(f, &eta_f(i)))
                            .sub_in(f, &eta_f(i - 1).mul_in(f, &c.d(i)));
                        (i, new)
                    })
                    .collect();
                FactorContraction { field: f.clone(), complex: c.clone(), delta }
            })
            .collect();
        RationalContraction { n: self.n, factors }
    }
}

fn contract_factor(c: &ChainComplexZG, field: CyclotomicField) -> Result<FactorContraction, TorsionError> {
    let complex = c.map_ring(field.clone(), |e| field.project(e));
    let mut fc = FactorContraction { field, complex, delta: BTreeMap::new() };
    for i in fc.complex.degrees() {
        let f = &fc.field;
        // solve d_{i+1} δ_i = id - δ_{i-1} d_i
        let rhs = Matrix::identity(f, fc.complex.rank(i)).sub_in(f, &fc.delta(i - 1).mul_in(f, &fc.complex.d(i)));
        let x = linalg::solve(f, &fc.complex.d(i + 1), &rhs).ok_or_else(|| {
            TorsionError::InternalInconsistency(format!(
                "no contraction in degree {i} over Q[x]/Φ_{}",
                f.order()
            ))
        })?;
        fc.delta.insert(i, x);
    }
    Ok(fc)
}

pub fn chain_contraction_rational(c: &BasedAcyclicComplex) -> Result<RationalContraction, TorsionError> {
    let n = c.modulus();
    let factors = divisors(n)
        .into_iter()
        .map(|d| contract_factor(&c.complex, CyclotomicField::new(d)))
        .collect::<Result<Vec<_>, _>>()?;
    let rc = RationalContraction { n, factors };
    rc.check()?;
    Ok(rc)
}

/// `d + δ` restricted to odd degrees, as a square matrix to even degrees.
fn odd_to_even(fc: &FactorContraction) -> Matrix<RatPoly> {
    let c = &fc.complex;
    let odd: Vec<i32> = c.degrees().filter(|i| i.rem_euclid(2) == 1).collect();
    let even: Vec<i32> = c.degrees().filter(|i| i.rem_euclid(2) == 0).collect();
    let offsets = |degs: &[i32]| {
        let mut acc = 0;
        degs.iter()
            .map(|&i| {
                let o = acc;
                acc += c.rank(i);
                (i, o)
            })
            .collect::<BTreeMap<i32, usize>>()
    };
    let (oo, eo) = (offsets(&odd), offsets(&even));
    let (rows, cols) = c.parity_ranks();
    let mut m = Matrix::zeros(&fc.field, rows, cols);
    for (&i, &col0) in &oo {
        for (j, block) in [(i - 1, c.d(i)), (i + 1, fc.delta(i))] {
            let Some(&row0) = eo.get(&j) else { continue };
            for a in 0..block.rows() {
                for b in 0..block.cols() {
                    m.set(row0 + a, col0 + b, block.get(a, b).clone());
                }
            }
        }
    }
    m
}

pub fn torsion_with_contraction(
    c: &BasedAcyclicComplex,
    contraction: &RationalContraction,
) -> Result<WhiteheadClass, TorsionError> {
    contraction.check()?;
    let n = c.modulus();
    let residues: Vec<(CyclotomicField, RatPoly)> = contraction
        .factors
        .iter()
        .map(|fc| (fc.field.clone(), linalg::determinant(&fc.field, &odd_to_even(fc))))
        .collect();
    let det = chinese_remainder(n, &residues);
    let u = to_group_ring(n, &det)
        .ok_or_else(|| TorsionError::InternalInconsistency(format!("determinant {det:?} is not integral")))?;
    WhiteheadClass::new(u).map_err(|e| TorsionError::InternalInconsistency(e.to_string()))
}

pub fn torsion_of_based_acyclic(c: &BasedAcyclicComplex) -> Result<WhiteheadClass, TorsionError> {
    torsion_with_contraction(c, &chain_contraction_rational(c)?)
}

/// Cone of the lifted chain map `C(source; f*ω) → C(target; ω)`.
pub fn mapping_cone_zg(f: &SimplicialMap, lab: &CyclicCoverLabeling) -> Result<ChainComplexZG, TorsionError> {
    for k in [f.source(), f.target()] {
        if !k.is_connected() {
            return Err(TorsionError::NotConnected);
        }
    }
    Ok(mapping_cone(&twisted_chain_map(f, lab)?)?)
}

/// The torsion of `f` with coefficients in `Z[Z/n]` given by `ω` on the target.
pub fn whitehead_torsion(f: &SimplicialMap, lab: &CyclicCoverLabeling) -> Result<WhiteheadClass, TorsionError> {
    let cone = mapping_cone_zg(f, lab)?;
    let based = BasedAcyclicComplex::new(cone).map_err(|e| match e {
        TorsionError::NotAcyclic { degree, group } => TorsionError::NotAPiHomologyEquivalence { degree, group },
        other => other,
    })?;
    torsion_of_based_acyclic(&based)
}

/// [`whitehead_torsion`] with the trivial group (`n = 1`).
pub fn whitehead_torsion_trivial(f: &SimplicialMap) -> Result<WhiteheadClass, TorsionError> {
    whitehead_torsion(f, &CyclicCoverLabeling::zero(f.target(), 1)?)
}

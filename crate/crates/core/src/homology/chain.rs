//! Bounded chain complexes of finitely generated free modules.

use std::collections::BTreeMap;

use super::HomologyError;
use crate::ring::{Matrix, Ring};

/// Free chain complex over a ring, supported in `min_degree..min_degree + len`.
/// The boundary `d(i)` maps degree `i` to degree `i - 1`; a matrix has one
/// column per basis element of the source and one row per basis element of
/// the target.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainComplex<R: Ring> {
    ring: R,
    min_degree: i32,
    labels: Vec<Vec<String>>,
    boundaries: Vec<Matrix<R::Elem>>,
}

impl<R: Ring> ChainComplex<R> {
    /// `boundaries[k]` is the boundary out of degree `min_degree + k`. Shapes are
    /// checked; `d² = 0` is not (see [`ChainComplex::check_square_zero`]).
    pub fn new(
        ring: R,
        min_degree: i32,
        labels: Vec<Vec<String>>,
        boundaries: Vec<Matrix<R::Elem>>,
    ) -> Result<Self, HomologyError> {
        if labels.len() != boundaries.len() {
            return Err(HomologyError::Shape("one boundary per degree required".into()));
        }
        for (k, d) in boundaries.iter().enumerate() {
            let below = if k == 0 { 0 } else { labels[k - 1].len() };
            if d.shape() != (below, labels[k].len()) {
                return Err(HomologyError::Shape(format!(
                    "boundary out of degree {} has shape {:?}, expected {:?}",
                    min_degree + k as i32,
                    d.shape(),
                    (below, labels[k].len())
                )));
            }
        }
        Ok(ChainComplex { ring, min_degree, labels, boundaries })
    }

    pub fn zero(ring: R) -> Self {
        ChainComplex { ring, min_degree: 0, labels: Vec::new(), boundaries: Vec::new() }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn min_degree(&self) -> i32 {
        self.min_degree
    }

    /// One past the top degree.
    pub fn end_degree(&self) -> i32 {
        self.min_degree + self.labels.len() as i32
    }

    pub fn degrees(&self) -> std::ops::Range<i32> {
        self.min_degree..self.end_degree()
    }

    fn slot(&self, i: i32) -> Option<usize> {
        (self.degrees().contains(&i)).then(|| (i - self.min_degree) as usize)
    }

    pub fn rank(&self, i: i32) -> usize {
        self.slot(i).map_or(0, |k| self.labels[k].len())
    }

    pub fn labels(&self, i: i32) -> &[String] {
        self.slot(i).map_or(&[], |k| &self.labels[k])
    }

    /// Boundary out of degree `i`, a zero matrix of the right shape outside the support.
    pub fn d(&self, i: i32) -> Matrix<R::Elem> {
        match self.slot(i) {
            Some(k) => self.boundaries[k].clone(),
            None => Matrix::zeros(&self.ring, self.rank(i - 1), self.rank(i)),
        }
    }

    pub fn boundary_ref(&self, i: i32) -> Option<&Matrix<R::Elem>> {
        self.slot(i).map(|k| &self.boundaries[k])
    }

    /// First degree `i` with `d(i-1) ∘ d(i) ≠ 0`.
    pub fn check_square_zero(&self) -> Result<(), HomologyError> {
        for i in self.degrees() {
            if self.rank(i - 2) == 0 {
                continue;
            }
            if !self.d(i - 1).mul_in(&self.ring, &self.d(i)).is_zero_in(&self.ring) {
                return Err(HomologyError::NotAComplex { degree: i });
            }
        }
        Ok(())
    }

    pub fn total_rank(&self) -> usize {
        self.labels.iter().map(Vec::len).sum()
    }

    /// Summed ranks of even and of odd degrees.
    pub fn parity_ranks(&self) -> (usize, usize) {
        let mut even = 0;
        let mut odd = 0;
        for i in self.degrees() {
            if i.rem_euclid(2) == 0 {
                even += self.rank(i);
            } else {
                odd += self.rank(i);
            }
        }
        (even, odd)
    }

    /// Alternating rank sum.
    pub fn euler_characteristic(&self) -> i64 {
        let (even, odd) = self.parity_ranks();
        even as i64 - odd as i64
    }

    /// Entry-wise image under a ring homomorphism.
    pub fn map_ring<S: Ring>(&self, target: S, f: impl Fn(&R::Elem) -> S::Elem) -> ChainComplex<S> {
        ChainComplex {
            ring: target,
            min_degree: self.min_degree,
            labels: self.labels.clone(),
            boundaries: self.boundaries.iter().map(|m| m.map(&f)).collect(),
        }
    }

    /// The same complex with all degrees raised by `k`. Boundaries are not re-signed.
    pub fn shifted(&self, k: i32) -> Self {
        ChainComplex { min_degree: self.min_degree + k, ..self.clone() }
    }
}

/// Degree-preserving module map between two complexes over the same ring.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainMap<R: Ring> {
    source: ChainComplex<R>,
    target: ChainComplex<R>,
    components: BTreeMap<i32, Matrix<R::Elem>>,
}

impl<R: Ring> ChainMap<R> {
    /// Components missing from the map are zero.
    pub fn new(
        source: ChainComplex<R>,
        target: ChainComplex<R>,
        components: BTreeMap<i32, Matrix<R::Elem>>,
    ) -> Result<Self, HomologyError> {
        if source.ring != target.ring {
            return Err(HomologyError::Shape("source and target over different rings".into()));
        }
        for (&i, m) in &components {
            if m.shape() != (target.rank(i), source.rank(i)) {
                return Err(HomologyError::Shape(format!("chain map component in degree {i} has wrong shape")));
            }
        }
        Ok(ChainMap { source, target, components })
    }

    pub fn identity(c: &ChainComplex<R>) -> Self {
        let components = c.degrees().map(|i| (i, Matrix::identity(&c.ring, c.rank(i)))).collect();
        ChainMap { source: c.clone(), target: c.clone(), components }
    }

    pub fn source(&self) -> &ChainComplex<R> {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex<R> {
        &self.target
    }

    pub fn component(&self, i: i32) -> Matrix<R::Elem> {
        self.components
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(&self.source.ring, self.target.rank(i), self.source.rank(i)))
    }

    /// `d ∘ f = f ∘ d` in every degree; otherwise the first failing degree.
    pub fn check_commutes(&self) -> Result<(), HomologyError> {
        let ring = &self.source.ring;
        let lo = self.source.min_degree.min(self.target.min_degree);
        let hi = self.source.end_degree().max(self.target.end_degree());
        for i in lo..hi {
            let lhs = self.target.d(i).mul_in(ring, &self.component(i));
            let rhs = self.component(i - 1).mul_in(ring, &self.source.d(i));
            if lhs != rhs {
                return Err(HomologyError::NotAChainMap { degree: i });
            }
        }
        Ok(())
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ChainMap<R>) -> Result<ChainMap<R>, HomologyError> {
        if self.target != g.source {
            return Err(HomologyError::Shape("chain maps are not composable".into()));
        }
        let ring = &self.source.ring;
        let components =
            self.source.degrees().map(|i| (i, g.component(i).mul_in(ring, &self.component(i)))).collect();
        ChainMap::new(self.source.clone(), g.target.clone(), components)
    }
}

/// Mapping cone: `C_i = S_{i-1} ⊕ T_i` with boundary `[[-d_S, 0], [f, d_T]]`.
/// Basis labels are the shifted source labels followed by the target labels.
pub fn mapping_cone<R: Ring>(f: &ChainMap<R>) -> Result<ChainComplex<R>, HomologyError> {
    f.check_commutes()?;
    let (s, t) = (&f.source, &f.target);
    let ring = s.ring.clone();
    let lo = (s.min_degree + 1).min(t.min_degree);
    let hi = (s.end_degree() + 1).max(t.end_degree());
    let (lo, hi) = if s.labels.is_empty() && t.labels.is_empty() { (0, 0) } else { (lo, hi) };
    let mut labels = Vec::new();
    let mut boundaries = Vec::new();
    for i in lo..hi {
        let mut l: Vec<String> = s.labels(i - 1).iter().map(|x| format!("s:{x}")).collect();
        l.extend(t.labels(i).iter().map(|x| format!("t:{x}")));
        labels.push(l);
        let top_left = s.d(i - 1).neg_in(&ring);
        let top_right = Matrix::zeros(&ring, s.rank(i - 2), t.rank(i));
        let bottom_left = f.component(i - 1);
        let bottom_right = t.d(i);
        boundaries.push(Matrix::block2x2(&top_left, &top_right, &bottom_left, &bottom_right));
    }
    Ok(ChainComplex { ring, min_degree: lo, labels, boundaries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{IntegerMatrix, Integers};

    fn point() -> ChainComplex<Integers> {
        ChainComplex::new(Integers, 0, vec![vec!["p".into()]], vec![Matrix::zeros(&Integers, 0, 1)]).unwrap()
    }

    #[test]
    fn shape_mismatch_rejected() {
        let r = ChainComplex::new(
            Integers,
            0,
            vec![vec!["a".into()], vec!["e".into()]],
            vec![Matrix::zeros(&Integers, 0, 1), Matrix::zeros(&Integers, 2, 1)],
        );
        assert!(matches!(r, Err(HomologyError::Shape(_))));
    }

    #[test]
    fn square_zero_violation_detected() {
        let c = ChainComplex::new(
            Integers,
            0,
            vec![vec!["a".into()], vec!["b".into()], vec!["c".into()]],
            vec![
                Matrix::zeros(&Integers, 0, 1),
                IntegerMatrix::from_i64_rows(&[&[1]]),
                IntegerMatrix::from_i64_rows(&[&[1]]),
            ],
        )
        .unwrap();
        assert_eq!(c.check_square_zero(), Err(HomologyError::NotAComplex { degree: 2 }));
    }

    #[test]
    fn cone_of_identity_on_point_has_two_generators() {
        let cone = mapping_cone(&ChainMap::identity(&point())).unwrap();
        assert_eq!(cone.degrees(), 0..2);
        assert_eq!(cone.labels(1), ["s:p".to_string()]);
        assert_eq!(cone.d(1), IntegerMatrix::from_i64_rows(&[&[1]]));
        assert!(cone.check_square_zero().is_ok());
    }

    #[test]
    fn non_chain_map_rejected() {
        let p = point();
        let two = ChainComplex::new(
            Integers,
            0,
            vec![vec!["a".into(), "b".into()], vec!["e".into()]],
            vec![Matrix::zeros(&Integers, 0, 2), IntegerMatrix::from_i64_rows(&[&[-1], &[1]])],
        )
        .unwrap();
        // Sends the edge to zero but keeps only one endpoint: not a chain map.
        let mut comps = BTreeMap::new();
        comps.insert(0, IntegerMatrix::from_i64_rows(&[&[1, 0]]));
        comps.insert(1, Matrix::zeros(&Integers, 0, 1));
        let bad = ChainMap::new(two, p, comps).unwrap();
        assert_eq!(mapping_cone(&bad), Err(HomologyError::NotAChainMap { degree: 1 }));
    }
}

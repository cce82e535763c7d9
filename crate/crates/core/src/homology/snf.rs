//! Smith normal form over the integers.
//!
//! Pivoting always takes the smallest nonzero absolute value in the active
//! block, which keeps entries small on boundary matrices. Invariant factors
//! are first attempted in `i64` with overflow checks and recomputed with
//! `BigInt` when any intermediate overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ring::{IntegerMatrix, Integers, Matrix};

/// `diagonal = left * m * right`, with `left` and `right` unimodular and the
/// nonzero diagonal entries positive and forming a divisibility chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: IntegerMatrix,
    pub left: IntegerMatrix,
    pub right: IntegerMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.diagonal.rows().min(self.diagonal.cols());
        (0..k).map(|i| self.diagonal.get(i, i).clone()).filter(|d| !d.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

mod work {
    use super::*;

    pub(super) trait Scalar: Clone + PartialEq {
        fn one() -> Self;
        fn is_zero(&self) -> bool;
        fn abs_cmp_lt(&self, other: &Self) -> bool;
        /// Truncated quotient `a / b`.
        fn quot(a: &Self, b: &Self) -> Self;
        fn is_multiple_of(a: &Self, b: &Self) -> bool;
        /// `a - q * b`, `None` on overflow.
        fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self>;
        fn abs(&self) -> Option<Self>;
        fn neg(&self) -> Option<Self>;
    }

    impl Scalar for i64 {
        fn one() -> Self {
            1
        }
        fn is_zero(&self) -> bool {
            *self == 0
        }
        fn abs_cmp_lt(&self, other: &Self) -> bool {
            self.unsigned_abs() < other.unsigned_abs()
        }
        fn quot(a: &Self, b: &Self) -> Self {
            a / b
        }
        fn is_multiple_of(a: &Self, b: &Self) -> bool {
            a % b == 0
        }
        fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self> {
            a.checked_sub(q.checked_mul(*b)?)
        }
        fn abs(&self) -> Option<Self> {
            self.checked_abs()
        }
        fn neg(&self) -> Option<Self> {
            self.checked_neg()
        }
    }

    impl Scalar for BigInt {
        fn one() -> Self {
            One::one()
        }
        fn is_zero(&self) -> bool {
            Zero::is_zero(self)
        }
        fn abs_cmp_lt(&self, other: &Self) -> bool {
            self.magnitude() < other.magnitude()
        }
        fn quot(a: &Self, b: &Self) -> Self {
            a / b
        }
        fn is_multiple_of(a: &Self, b: &Self) -> bool {
            Integer::is_multiple_of(a, b)
        }
        fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self> {
            Some(a - q * b)
        }
        fn abs(&self) -> Option<Self> {
            Some(Signed::abs(self))
        }
        fn neg(&self) -> Option<Self> {
            Some(-self)
        }
    }

    /// Dense working matrix plus optional transform bookkeeping.
    pub(super) struct Work<T> {
        pub(super) m: Vec<Vec<T>>,
        pub(super) left: Option<Vec<Vec<T>>>,
        pub(super) right: Option<Vec<Vec<T>>>,
    }

    impl<T: Scalar> Work<T> {
        fn rows(&self) -> usize {
            self.m.len()
        }

        fn cols(&self) -> usize {
            self.m.first().map_or(0, Vec::len)
        }

        fn swap_rows(&mut self, a: usize, b: usize) {
            self.m.swap(a, b);
            if let Some(l) = &mut self.left {
                l.swap(a, b);
            }
        }

        fn swap_cols(&mut self, a: usize, b: usize) {
            for row in &mut self.m {
                row.swap(a, b);
            }
            if let Some(r) = &mut self.right {
                for row in r.iter_mut() {
                    row.swap(a, b);
                }
            }
        }

        /// row[target] -= q * row[src]
        fn row_op(&mut self, target: usize, src: usize, q: &T) -> Option<()> {
            fn apply<T: Scalar>(m: &mut [Vec<T>], target: usize, src: usize, q: &T) -> Option<()> {
                for j in 0..m[target].len() {
                    if !m[src][j].is_zero() {
                        let v = T::sub_mul(&m[target][j], q, &m[src][j])?;
                        m[target][j] = v;
                    }
                }
                Some(())
            }
            apply(&mut self.m, target, src, q)?;
            if let Some(l) = &mut self.left {
                apply(l, target, src, q)?;
            }
            Some(())
        }

        /// col[target] -= q * col[src]
        fn col_op(&mut self, target: usize, src: usize, q: &T) -> Option<()> {
            fn apply<T: Scalar>(m: &mut [Vec<T>], target: usize, src: usize, q: &T) -> Option<()> {
                for row in m.iter_mut() {
                    if !row[src].is_zero() {
                        let v = T::sub_mul(&row[target], q, &row[src])?;
                        row[target] = v;
                    }
                }
                Some(())
            }
            apply(&mut self.m, target, src, q)?;
            if let Some(r) = &mut self.right {
                apply(r, target, src, q)?;
            }
            Some(())
        }

        fn negate_row(&mut self, i: usize) -> Option<()> {
            for v in self.m[i].iter_mut() {
                *v = v.neg()?;
            }
            if let Some(l) = &mut self.left {
                for v in l[i].iter_mut() {
                    *v = v.neg()?;
                }
            }
            Some(())
        }

        fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
            let mut best: Option<(usize, usize)> = None;
            for i in t..self.rows() {
                for j in t..self.cols() {
                    let v = &self.m[i][j];
                    if v.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if !v.abs_cmp_lt(&self.m[bi][bj]) => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            best
        }

        /// Full reduction; `None` means an intermediate overflowed.
        pub(super) fn reduce(&mut self) -> Option<()> {
            let k = self.rows().min(self.cols());
            for t in 0..k {
                let Some((pi, pj)) = self.smallest_in_block(t) else { break };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                loop {
                    let mut clean = true;
                    for i in t + 1..self.rows() {
                        if self.m[i][t].is_zero() {
                            continue;
                        }
                        let q = T::quot(&self.m[i][t], &self.m[t][t]);
                        self.row_op(i, t, &q)?;
                        if !self.m[i][t].is_zero() {
                            clean = false;
                        }
                    }
                    for j in t + 1..self.cols() {
                        if self.m[t][j].is_zero() {
                            continue;
                        }
                        let q = T::quot(&self.m[t][j], &self.m[t][t]);
                        self.col_op(j, t, &q)?;
                        if !self.m[t][j].is_zero() {
                            clean = false;
                        }
                    }
                    if !clean {
                        // A remainder is now smaller than the pivot; bring the
                        // smallest entry of row t / column t to the corner.
                        let mut best = (t, t);
                        for i in t + 1..self.rows() {
                            let v = &self.m[i][t];
                            if !v.is_zero() && v.abs_cmp_lt(&self.m[best.0][best.1]) {
                                best = (i, t);
                            }
                        }
                        for j in t + 1..self.cols() {
                            let v = &self.m[t][j];
                            if !v.is_zero() && v.abs_cmp_lt(&self.m[best.0][best.1]) {
                                best = (t, j);
                            }
                        }
                        self.swap_rows(t, best.0);
                        self.swap_cols(t, best.1);
                        continue;
                    }
                    // Row and column are clear; enforce divisibility of the rest.
                    let pivot = self.m[t][t].clone();
                    let offender = (t + 1..self.rows()).find(|&i| {
                        (t + 1..self.cols()).any(|j| !T::is_multiple_of(&self.m[i][j], &pivot))
                    });
                    match offender {
                        Some(i) => {
                            // row t += row i
                            let minus_one = T::one().neg()?;
                            self.row_op(t, i, &minus_one)?;
                        }
                        None => break,
                    }
                }
                if self.m[t][t].abs()? != self.m[t][t] {
                    self.negate_row(t)?;
                }
            }
            Some(())
        }
    }
}

use work::Work;

fn to_rows(m: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn from_rows(rows: Vec<Vec<BigInt>>, r: usize, c: usize) -> IntegerMatrix {
    if r == 0 || c == 0 {
        return Matrix::zeros(&Integers, r, c);
    }
    Matrix::from_rows(rows)
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (r, c) = m.shape();
    let mut w = Work { m: to_rows(m), left: Some(identity_rows(r)), right: Some(identity_rows(c)) };
    if r > 0 && c > 0 {
        w.reduce().expect("BigInt arithmetic does not overflow");
    }
    SmithForm {
        diagonal: from_rows(w.m, r, c),
        left: from_rows(w.left.expect("tracked"), r, r),
        right: from_rows(w.right.expect("tracked"), c, c),
    }
}

/// Nonzero invariant factors, in divisibility order, without transforms.
pub fn invariant_factors(m: &IntegerMatrix) -> Vec<BigInt> {
    let (r, c) = m.shape();
    if r == 0 || c == 0 {
        return Vec::new();
    }
    let small: Option<Vec<Vec<i64>>> =
        (0..r).map(|i| m.row(i).iter().map(ToPrimitive::to_i64).collect::<Option<Vec<_>>>()).collect();
    if let Some(rows) = small {
        let mut w = Work { m: rows, left: None, right: None };
        if w.reduce().is_some() {
            return (0..r.min(c)).map(|i| w.m[i][i]).filter(|&d| d != 0).map(BigInt::from).collect();
        }
    }
    let mut w = Work { m: to_rows(m), left: None, right: None };
    w.reduce().expect("BigInt arithmetic does not overflow");
    (0..r.min(c)).map(|i| w.m[i][i].clone()).filter(|d| !d.is_zero()).collect()
}

pub fn rank(m: &IntegerMatrix) -> usize {
    invariant_factors(m).len()
}

/// An integral solution of `m x = b`, if one exists.
pub fn solve_integral(m: &IntegerMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(m.rows(), b.len());
    let snf = smith_normal_form(m);
    // D y = U b, x = V y
    let ub: Vec<BigInt> =
        (0..m.rows()).map(|i| snf.left.row(i).iter().zip(b).map(|(u, x)| u * x).sum()).collect();
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, rhs) in ub.iter().enumerate() {
        let d = if i < m.cols() { snf.diagonal.get(i, i).clone() } else { BigInt::zero() };
        if d.is_zero() {
            if !rhs.is_zero() {
                return None;
            }
        } else {
            if !Integer::is_multiple_of(rhs, &d) {
                return None;
            }
            y[i] = rhs / d;
        }
    }
    Some((0..m.cols()).map(|i| snf.right.row(i).iter().zip(&y).map(|(v, t)| v * t).sum()).collect())
}

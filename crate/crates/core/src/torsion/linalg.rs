//! Gaussian elimination over an exact field.

#![allow(clippy::needless_range_loop)]

use crate::ring::{Field, Matrix};

/// Some `X` with `a X = b`, or `None` if the system is inconsistent.
/// Free variables are set to zero.
pub fn solve<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    assert_eq!(a.rows(), b.rows());
    let (r, c, k) = (a.rows(), a.cols(), b.cols());
    let mut m: Vec<Vec<F::Elem>> =
        (0..r).map(|i| a.row(i).iter().chain(b.row(i).iter()).cloned().collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..c {
        let Some(p) = (row..r).find(|&i| !field.is_zero(&m[i][col])) else {
            continue;
        };
        m.swap(row, p);
        let inv = field.inv(&m[row][col]).expect("nonzero element of a field");
        for x in m[row].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for i in 0..r {
            if i != row && !field.is_zero(&m[i][col]) {
                let factor = m[i][col].clone();
                for j in col..c + k {
                    let t = field.mul(&factor, &m[row][j]);
                    m[i][j] = field.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == r {
            break;
        }
    }
    if m[row..].iter().any(|line| line[c..].iter().any(|x| !field.is_zero(x))) {
        return None;
    }
    let mut x = Matrix::zeros(field, c, k);
    for (i, &col) in pivots.iter().enumerate() {
        for j in 0..k {
            x.set(col, j, m[i][c + j].clone());
        }
    }
    Some(x)
}

pub fn determinant<F: Field>(field: &F, a: &Matrix<F::Elem>) -> F::Elem {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    let n = a.rows();
    let mut m: Vec<Vec<F::Elem>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut det = field.one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !field.is_zero(&m[i][col])) else {
            return field.zero();
        };
        if p != col {
            m.swap(p, col);
            det = field.neg(&det);
        }
        det = field.mul(&det, &m[col][col]);
        let inv = field.inv(&m[col][col]).expect("nonzero");
        for i in col + 1..n {
            if field.is_zero(&m[i][col]) {
                continue;
            }
            let factor = field.mul(&m[i][col], &inv);
            for j in col..n {
                let t = field.mul(&factor, &m[col][j]);
                m[i][j] = field.sub(&m[i][j], &t);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use crate::torsion::cyclotomic::{CyclotomicField, RatPoly};

    fn q(rows: &[&[i64]]) -> Matrix<RatPoly> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| RatPoly::from_ints(&[x])).collect()).collect())
    }

    #[test]
    fn rational_solve_and_det() {
        let f = CyclotomicField::new(1);
        let a = q(&[&[2, 1], &[4, 3]]);
        assert_eq!(determinant(&f, &a), RatPoly::from_ints(&[2]));
        let b = q(&[&[3], &[7]]);
        let x = solve(&f, &a, &b).unwrap();
        assert_eq!(a.mul_in(&f, &x), b);
        let sing = q(&[&[1, 1], &[1, 1]]);
        assert!(solve(&f, &sing, &q(&[&[1], &[0]])).is_none());
        assert!(solve(&f, &sing, &q(&[&[2], &[2]])).is_some());
        assert_eq!(determinant(&f, &sing), f.zero());
    }

    #[test]
    fn det_over_cyclotomic_field() {
        let f = CyclotomicField::new(3);
        let x = RatPoly::from_ints(&[0, 1]);
        // det [[x, 1], [1, x]] = x^2 - 1 = -x - 2 mod x^2 + x + 1
        let a = Matrix::from_rows(vec![vec![x.clone(), f.one()], vec![f.one(), x]]);
        assert_eq!(determinant(&f, &a), RatPoly::from_ints(&[-2, -1]));
    }
}

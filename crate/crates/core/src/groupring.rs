//! The integral group ring of a cyclic group, `Z[t]/(t^n - 1)`, and Whitehead
//! classes of its units modulo the trivial units `±t^k`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology::solve_integral;
use crate::ring::{IntegerMatrix, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupRingError {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(usize, usize),
    #[error("{0} is not a unit")]
    NotAUnit(GroupRingElement),
    #[error("modulus must be at least 1")]
    ZeroModulus,
}

/// `sum coeffs[k] t^k` in `Z[Z/n]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupRingElement {
    n: usize,
    coeffs: Vec<BigInt>,
}

impl GroupRingElement {
    /// Coefficients beyond index `n - 1` wrap around; missing ones are zero.
    pub fn new(n: usize, coeffs: impl IntoIterator<Item = BigInt>) -> Result<Self, GroupRingError> {
        if n == 0 {
            return Err(GroupRingError::ZeroModulus);
        }
        let mut c = vec![BigInt::zero(); n];
        for (k, x) in coeffs.into_iter().enumerate() {
            c[k % n] += x;
        }
        Ok(GroupRingElement { n, coeffs: c })
    }

    pub fn from_i64s(n: usize, coeffs: &[i64]) -> Self {
        Self::new(n, coeffs.iter().map(|&c| BigInt::from(c))).expect("n >= 1")
    }

    pub fn zero(n: usize) -> Self {
        Self::from_i64s(n, &[])
    }

    pub fn one(n: usize) -> Self {
        Self::from_i64s(n, &[1])
    }

    /// `c t^k`, exponent taken mod `n`.
    pub fn monomial(n: usize, k: i64, c: i64) -> Self {
        let mut e = Self::zero(n);
        e.coeffs[k.rem_euclid(n as i64) as usize] = BigInt::from(c);
        e
    }

    pub fn t_pow(n: usize, k: i64) -> Self {
        Self::monomial(n, k, 1)
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<(), GroupRingError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(GroupRingError::ModulusMismatch(self.n, other.n))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupRingError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(GroupRingElement { n: self.n, coeffs })
    }

    pub fn neg(&self) -> Self {
        GroupRingElement { n: self.n, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    /// Cyclic convolution.
    pub fn mul(&self, other: &Self) -> Result<Self, GroupRingError> {
        self.check(other)?;
        let n = self.n;
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out[(i + j) % n] += a * b;
            }
        }
        Ok(GroupRingElement { n, coeffs: out })
    }

    /// Multiplication by `±t^k`, a coefficient rotation.
    pub fn times_trivial_unit(&self, k: usize, negate: bool) -> Self {
        let n = self.n;
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[(i + k) % n] = if negate { -a } else { a.clone() };
        }
        GroupRingElement { n, coeffs: out }
    }

    /// Image under `t ↦ 1`.
    pub fn augmentation(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Image under `t ↦ t^{-1}`.
    pub fn conjugate(&self) -> Self {
        let n = self.n;
        let coeffs = (0..n).map(|k| self.coeffs[(n - k) % n].clone()).collect();
        GroupRingElement { n, coeffs }
    }

    /// Matrix of `x ↦ self * x` on coefficient vectors: entry `(i, j)` is `a_{i-j}`.
    pub fn circulant(&self) -> IntegerMatrix {
        let n = self.n;
        IntegerMatrix::from_fn(n, n, |i, j| self.coeffs[(i + n - j) % n].clone())
    }

    pub fn inverse(&self) -> Result<Self, GroupRingError> {
        let aug = self.augmentation();
        if aug.abs() != BigInt::one() {
            return Err(GroupRingError::NotAUnit(self.clone()));
        }
        let rhs = Self::one(self.n).coeffs;
        let x = solve_integral(&self.circulant(), &rhs).ok_or_else(|| GroupRingError::NotAUnit(self.clone()))?;
        let inv = GroupRingElement { n: self.n, coeffs: x };
        debug_assert!(self.mul(&inv).map(|p| p.is_one()).unwrap_or(false));
        Ok(inv)
    }

    pub fn is_unit(&self) -> bool {
        self.inverse().is_ok()
    }

    pub fn is_trivial_unit(&self) -> bool {
        let nonzero: Vec<&BigInt> = self.coeffs.iter().filter(|c| !c.is_zero()).collect();
        nonzero.len() == 1 && nonzero[0].abs().is_one()
    }

    /// Polynomial text without the modulus suffix.
    pub fn poly_string(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}{mono}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let modulus = if self.n == 1 { "t - 1".to_string() } else { format!("t^{} - 1", self.n) };
        write!(f, "{} (mod {modulus})", self.poly_string())
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `u = ±t^k v` for some `k`, by checking all `2n` trivial units.
pub fn wh_equal(u: &GroupRingElement, v: &GroupRingElement) -> Result<bool, GroupRingError> {
    u.check(v)?;
    for w in [u, v] {
        if !w.is_unit() {
            return Err(GroupRingError::NotAUnit(w.clone()));
        }
    }
    Ok(trivial_multiples(v).any(|c| &c == u))
}

fn trivial_multiples(v: &GroupRingElement) -> impl Iterator<Item = GroupRingElement> + '_ {
    (0..v.n).flat_map(move |k| [false, true].into_iter().map(move |neg| v.times_trivial_unit(k, neg)))
}

/// The ring context `Z[Z/n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupRing {
    pub n: usize,
}

impl GroupRing {
    pub fn new(n: usize) -> Result<Self, GroupRingError> {
        if n == 0 {
            Err(GroupRingError::ZeroModulus)
        } else {
            Ok(GroupRing { n })
        }
    }

    pub fn t_pow(&self, k: i64) -> GroupRingElement {
        GroupRingElement::t_pow(self.n, k)
    }
}

impl Ring for GroupRing {
    type Elem = GroupRingElement;

    fn zero(&self) -> GroupRingElement {
        GroupRingElement::zero(self.n)
    }
    fn one(&self) -> GroupRingElement {
        GroupRingElement::one(self.n)
    }
    fn add(&self, a: &GroupRingElement, b: &GroupRingElement) -> GroupRingElement {
        a.add(b).expect("elements of this ring")
    }
    fn neg(&self, a: &GroupRingElement) -> GroupRingElement {
        a.neg()
    }
    fn mul(&self, a: &GroupRingElement, b: &GroupRingElement) -> GroupRingElement {
        a.mul(b).expect("elements of this ring")
    }
    fn from_int(&self, k: i64) -> GroupRingElement {
        GroupRingElement::monomial(self.n, 0, k)
    }
    fn is_zero(&self, a: &GroupRingElement) -> bool {
        a.is_zero()
    }
}

/// A unit of `Z[Z/n]` up to multiplication by `±t^k`.
#[derive(Clone, Serialize, Deserialize)]
pub struct WhiteheadClass {
    representative: GroupRingElement,
}

impl WhiteheadClass {
    pub fn new(u: GroupRingElement) -> Result<Self, GroupRingError> {
        if !u.is_unit() {
            return Err(GroupRingError::NotAUnit(u));
        }
        Ok(WhiteheadClass { representative: u })
    }

    pub fn trivial(n: usize) -> Self {
        WhiteheadClass { representative: GroupRingElement::one(n) }
    }

    pub fn modulus(&self) -> usize {
        self.representative.n
    }

    pub fn representative(&self) -> &GroupRingElement {
        &self.representative
    }

    /// The representative among `±t^k u` whose coefficient vector is
    /// lexicographically largest; the trivial class gives `1`.
    pub fn canonical(&self) -> GroupRingElement {
        trivial_multiples(&self.representative).max_by(|a, b| a.coeffs.cmp(&b.coeffs)).expect("n >= 1")
    }

    pub fn is_trivial(&self) -> bool {
        self.representative.is_trivial_unit()
    }

    pub fn mul(&self, other: &Self) -> Result<Self, GroupRingError> {
        Ok(WhiteheadClass { representative: self.representative.mul(&other.representative)? })
    }

    pub fn inverse(&self) -> Self {
        WhiteheadClass { representative: self.representative.inverse().expect("representative is a unit") }
    }
}

impl PartialEq for WhiteheadClass {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && trivial_multiples(&other.representative).any(|c| c == self.representative)
    }
}

impl Eq for WhiteheadClass {}

impl fmt::Display for WhiteheadClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.canonical())
    }
}

impl fmt::Debug for WhiteheadClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

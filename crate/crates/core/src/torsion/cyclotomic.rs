//! Exact arithmetic in `Q[x]` and in the cyclotomic fields `Q[x]/Φ_d`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::groupring::GroupRingElement;
use crate::ring::{Field, Ring};

/// Dense rational polynomial, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly(Vec<BigRational>);

impl RatPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        RatPoly(c)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `x^k - 1`.
    pub fn x_pow_minus_one(k: usize) -> Self {
        let mut c = vec![BigRational::zero(); k + 1];
        c[0] = -BigRational::one();
        c[k] = BigRational::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn add(&self, o: &Self) -> Self {
        let len = self.0.len().max(o.0.len());
        let z = BigRational::zero();
        Self::new((0..len).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect())
    }

    pub fn neg(&self) -> Self {
        RatPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return RatPoly::default();
        }
        let mut c = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.0.iter().map(|c| c * s).collect())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut r = self.0.clone();
        let mut q = vec![BigRational::zero(); self.0.len().saturating_sub(dd)];
        let lead = d.lead().clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().expect("nonempty") / &lead;
            for (i, dc) in d.0.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// `(g, s)` with `g = gcd(self, m)` monic and `s * self ≡ g (mod m)`.
    fn gcd_cofactor(&self, m: &Self) -> (Self, Self) {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (RatPoly::default(), RatPoly::constant(BigRational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.is_zero() {
            return (r0, s0);
        }
        let inv = BigRational::one() / r0.lead();
        (r0.scale(&inv), s0.scale(&inv))
    }

    /// Inverse modulo `m`, if `self` and `m` are coprime.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let (g, s) = self.gcd_cofactor(m);
        (g.degree() == Some(0)).then(|| s.rem(m))
    }

    /// Integer coefficients, if all are integral.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.0.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }
}

/// The `d`-th cyclotomic polynomial, from `x^d - 1 = prod_{e | d} Φ_e`.
pub fn cyclotomic_polynomial(d: usize) -> RatPoly {
    assert!(d >= 1);
    let mut p = RatPoly::x_pow_minus_one(d);
    for e in divisors(d).into_iter().filter(|&e| e < d) {
        let (q, r) = p.div_rem(&cyclotomic_polynomial(e));
        debug_assert!(r.is_zero());
        p = q;
    }
    p
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// `Q[x]/Φ_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicField {
    d: usize,
    phi: RatPoly,
}

impl CyclotomicField {
    pub fn new(d: usize) -> Self {
        CyclotomicField { d, phi: cyclotomic_polynomial(d) }
    }

    pub fn order(&self) -> usize {
        self.d
    }

    pub fn modulus(&self) -> &RatPoly {
        &self.phi
    }

    pub fn reduce(&self, p: &RatPoly) -> RatPoly {
        p.rem(&self.phi)
    }

    /// Image of a group-ring element under `t ↦ x`.
    pub fn project(&self, e: &GroupRingElement) -> RatPoly {
        let c = e.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect();
        self.reduce(&RatPoly::new(c))
    }
}

impl Ring for CyclotomicField {
    type Elem = RatPoly;

    fn zero(&self) -> RatPoly {
        RatPoly::default()
    }
    fn one(&self) -> RatPoly {
        RatPoly::constant(BigRational::one())
    }
    fn add(&self, a: &RatPoly, b: &RatPoly) -> RatPoly {
        a.add(b)
    }
    fn neg(&self, a: &RatPoly) -> RatPoly {
        a.neg()
    }
    fn mul(&self, a: &RatPoly, b: &RatPoly) -> RatPoly {
        self.reduce(&a.mul(b))
    }
    fn from_int(&self, k: i64) -> RatPoly {
        RatPoly::from_ints(&[k])
    }
    fn is_zero(&self, a: &RatPoly) -> bool {
        a.is_zero()
    }
}

impl Field for CyclotomicField {
    fn inv(&self, a: &RatPoly) -> Option<RatPoly> {
        if a.is_zero() {
            None
        } else {
            a.inverse_mod(&self.phi)
        }
    }
}

/// Recombines residues `a_d ∈ Q[x]/Φ_d` for all `d | n` into `Q[x]/(x^n - 1)`.
pub fn chinese_remainder(n: usize, residues: &[(CyclotomicField, RatPoly)]) -> RatPoly {
    let big = RatPoly::x_pow_minus_one(n);
    let mut acc = RatPoly::default();
    for (field, a) in residues {
        let m = big.div_rem(field.modulus()).0;
        let m_inv = m.inverse_mod(field.modulus()).expect("distinct cyclotomic factors are coprime");
        let idempotent = m.mul(&m_inv);
        acc = acc.add(&a.mul(&idempotent));
    }
    acc.rem(&big)
}

/// Rational polynomial mod `x^n - 1` as a group-ring element, if integral.
pub fn to_group_ring(n: usize, p: &RatPoly) -> Option<GroupRingElement> {
    let ints = p.to_integers()?;
    GroupRingElement::new(n, ints).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), RatPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), RatPoly::from_ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), RatPoly::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(5), RatPoly::from_ints(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(6), RatPoly::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), RatPoly::from_ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn field_inverse() {
        let f = CyclotomicField::new(5);
        let u = f.project(&GroupRingElement::from_i64s(5, &[-1, 1, 0, 0, 1]));
        let v = f.inv(&u).unwrap();
        assert_eq!(f.mul(&u, &v), f.one());
        assert_eq!(CyclotomicField::new(1).inv(&RatPoly::from_ints(&[3])), Some(RatPoly::new(vec![BigRational::new(1.into(), 3.into())])));
    }

    #[test]
    fn crt_recovers_element() {
        let n = 6;
        let e = GroupRingElement::from_i64s(n, &[2, -1, 0, 5, 0, 3]);
        let residues: Vec<_> = divisors(n)
            .into_iter()
            .map(|d| {
                let f = CyclotomicField::new(d);
                let r = f.project(&e);
                (f, r)
            })
            .collect();
        let back = chinese_remainder(n, &residues);
        assert_eq!(to_group_ring(n, &back), Some(e));
    }
}

//! The Clifford algebra Cl(n) with `c(eᵢ)c(eⱼ) + c(eⱼ)c(eᵢ) = -2δᵢⱼ` over a
//! pluggable commutative coefficient ring.
//!
//! Elements are sparse maps from canonical ascending-index basis monomials
//! (bitmask blades) to coefficients; no matrix representation of the spinor
//! space is ever built. The spinor trace is combinatorial: `tr[id] = 2^{n/2}`
//! and every non-scalar basis monomial is traceless, so the trace of an
//! element is `2^{n/2}` times its scalar part.

use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliffordError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("trace needs even n, got {0}")]
    OddDimension(usize),
}

/// Commutative coefficient ring for multivectors.
pub trait Ring: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn is_zero(&self) -> bool;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// In-place accumulation; override when cloning the accumulator is
    /// expensive.
    fn accumulate(&mut self, rhs: &Self) {
        *self = self.add(rhs);
    }
}

impl Ring for crate::scalar::GaussianRational {
    fn zero() -> Self {
        crate::scalar::GaussianRational::zero()
    }
    fn one() -> Self {
        crate::scalar::GaussianRational::one()
    }
    fn from_int(v: i64) -> Self {
        crate::scalar::GaussianRational::from_int(v)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn is_zero(&self) -> bool {
        crate::scalar::GaussianRational::is_zero(self)
    }
}

impl Ring for crate::ratfun::PoleRational {
    fn zero() -> Self {
        crate::ratfun::PoleRational::zero()
    }
    fn one() -> Self {
        crate::ratfun::PoleRational::one()
    }
    fn from_int(v: i64) -> Self {
        crate::ratfun::PoleRational::constant(crate::scalar::GaussianRational::from_int(v))
    }
    fn add(&self, rhs: &Self) -> Self {
        crate::ratfun::PoleRational::add(self, rhs)
    }
    fn neg(&self) -> Self {
        crate::ratfun::PoleRational::neg(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        crate::ratfun::PoleRational::mul(self, rhs)
    }
    fn is_zero(&self) -> bool {
        crate::ratfun::PoleRational::is_zero(self)
    }
}

/// Product of two basis blades: sign from generator transpositions plus the
/// contraction `eᵢeᵢ = -1`.
pub fn blade_mul(a: u32, b: u32) -> (i32, u32) {
    let mut sign = 1i32;
    let mut acc = a;
    let mut rest = b;
    while rest != 0 {
        let g = rest.trailing_zeros();
        rest &= rest - 1;
        let above = (acc >> (g + 1)).count_ones();
        if above % 2 == 1 {
            sign = -sign;
        }
        if acc & (1 << g) != 0 {
            acc &= !(1 << g);
            sign = -sign;
        } else {
            acc |= 1 << g;
        }
    }
    (sign, acc)
}

/// Sparse multivector in Cl(n) over the ring `R`.
#[derive(Clone, PartialEq, Eq)]
pub struct Multivector<R: Ring> {
    n: usize,
    terms: BTreeMap<u32, R>,
}

impl<R: Ring> Multivector<R> {
    pub fn zero(n: usize) -> Self {
        Multivector { n, terms: BTreeMap::new() }
    }

    pub fn scalar(n: usize, c: R) -> Self {
        let mut m = Self::zero(n);
        m.insert(0, c);
        m
    }

    /// The generator `c(e_h)` for a 1-based index `h <= n`.
    pub fn generator(n: usize, h: usize) -> Self {
        assert!(h >= 1 && h <= n, "generator index out of range");
        let mut m = Self::zero(n);
        m.insert(1 << (h - 1), R::one());
        m
    }

    /// `Σₕ vₕ c(e_h)` for a length-n coefficient vector.
    pub fn from_covector(n: usize, v: &[R]) -> Self {
        assert_eq!(v.len(), n);
        let mut m = Self::zero(n);
        for (h, c) in v.iter().enumerate() {
            m.insert(1 << h, c.clone());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, blade: u32) -> R {
        self.terms.get(&blade).cloned().unwrap_or_else(R::zero)
    }

    pub fn insert(&mut self, blade: u32, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(blade) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().accumulate(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        for (b, c) in rhs.terms.iter() {
            out.insert(*b, c.clone());
        }
        out
    }

    /// In-place sum, for accumulation loops.
    pub fn add_assign(&mut self, rhs: &Self) {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        for (b, c) in rhs.terms.iter() {
            self.insert(*b, c.clone());
        }
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (b, c) in self.terms.iter() {
            out.terms.insert(*b, c.neg());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(self.n);
        for (b, a) in self.terms.iter() {
            out.insert(*b, a.mul(c));
        }
        out
    }

    /// Clifford product; errors when the dimensions differ.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self, CliffordError> {
        if self.n != rhs.n {
            return Err(CliffordError::DimensionMismatch(self.n, rhs.n));
        }
        let mut out = Self::zero(self.n);
        for (ba, ca) in self.terms.iter() {
            for (bb, cb) in rhs.terms.iter() {
                let (sign, blade) = blade_mul(*ba, *bb);
                let mut c = ca.mul(cb);
                if sign < 0 {
                    c = c.neg();
                }
                out.insert(blade, c);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("multivector dimension mismatch")
    }

    /// Map the coefficients into another ring.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Multivector<S> {
        let mut out = Multivector::zero(self.n);
        for (b, c) in self.terms.iter() {
            out.insert(*b, f(c));
        }
        out
    }

    /// Spinor trace: `2^{n/2}` times the scalar part. Needs even n.
    pub fn trace(&self) -> Result<R, CliffordError> {
        if self.n % 2 != 0 {
            return Err(CliffordError::OddDimension(self.n));
        }
        let dim = R::from_int(1i64 << (self.n / 2));
        Ok(self.coeff(0).mul(&dim))
    }

    /// Scalar part of `self * rhs` without forming the product: blades pair
    /// only with themselves, with sign `(-1)^{k(k+1)/2}` for grade k.
    pub fn scalar_part_of_product(&self, rhs: &Self) -> Result<R, CliffordError> {
        if self.n != rhs.n {
            return Err(CliffordError::DimensionMismatch(self.n, rhs.n));
        }
        let mut acc = R::zero();
        for (b, ca) in self.terms.iter() {
            if let Some(cb) = rhs.terms.get(b) {
                let k = b.count_ones();
                let mut t = ca.mul(cb);
                if (k * (k + 1) / 2) % 2 == 1 {
                    t = t.neg();
                }
                acc = acc.add(&t);
            }
        }
        Ok(acc)
    }

    /// `tr(self * rhs)` through the scalar-part shortcut.
    pub fn trace_of_product(&self, rhs: &Self) -> Result<R, CliffordError> {
        if self.n % 2 != 0 {
            return Err(CliffordError::OddDimension(self.n));
        }
        let dim = R::from_int(1i64 << (self.n / 2));
        Ok(self.scalar_part_of_product(rhs)?.mul(&dim))
    }
}

impl<R: Ring + std::fmt::Debug> std::fmt::Debug for Multivector<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (b, c) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c:?})")?;
            for h in 0..self.n {
                if b & (1 << h) != 0 {
                    write!(f, "·e{}", h + 1)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as G;

    fn e(n: usize, h: usize) -> Multivector<G> {
        Multivector::generator(n, h)
    }

    #[test]
    fn generator_squares_to_minus_one() {
        let m = e(6, 1).mul(&e(6, 1));
        assert_eq!(m, Multivector::scalar(6, G::from_int(-1)));
    }

    #[test]
    fn contraction_through_a_bivector() {
        // (e1 e2) e1 = e2
        let m = e(6, 1).mul(&e(6, 2)).mul(&e(6, 1));
        assert_eq!(m, e(6, 2));
        // (e1 e2)(e1 e2) = -1
        let b = e(6, 1).mul(&e(6, 2));
        assert_eq!(b.mul(&b), Multivector::scalar(6, G::from_int(-1)));
    }

    #[test]
    fn anticommutation() {
        for i in 1..=4usize {
            for j in 1..=4usize {
                let lhs = e(4, i).mul(&e(4, j)).add(&e(4, j).mul(&e(4, i)));
                let want = if i == j {
                    Multivector::scalar(4, G::from_int(-2))
                } else {
                    Multivector::zero(4)
                };
                assert_eq!(lhs, want);
            }
        }
    }

    #[test]
    fn traces() {
        let one: Multivector<G> = Multivector::scalar(6, G::one());
        assert_eq!(one.trace().unwrap(), G::from_int(8));
        assert_eq!(e(6, 1).mul(&e(6, 2)).trace().unwrap(), G::zero());
        assert_eq!(e(6, 1).mul(&e(6, 1)).trace().unwrap(), G::from_int(-8));
        assert!(Multivector::<G>::scalar(5, G::one()).trace().is_err());
    }

    #[test]
    fn covector_squares_to_minus_norm() {
        let v: Vec<G> = (1..=6).map(G::from_int).collect();
        let m = Multivector::from_covector(6, &v);
        let norm: i64 = (1..=6i64).map(|x| x * x).sum();
        assert_eq!(m.mul(&m), Multivector::scalar(6, G::from_int(-norm)));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = e(4, 1);
        let b = e(6, 1);
        assert!(matches!(a.try_mul(&b), Err(CliffordError::DimensionMismatch(4, 6))));
    }

    #[test]
    fn scalar_part_shortcut_matches_full_product() {
        let a = e(8, 1).mul(&e(8, 3)).add(&e(8, 2).scale(&G::from_int(3)));
        let b = e(8, 3).mul(&e(8, 1)).add(&e(8, 2)).add(&e(8, 5).mul(&e(8, 6)));
        let full = a.mul(&b).trace().unwrap();
        let quick = a.trace_of_product(&b).unwrap();
        assert_eq!(full, quick);
    }
}

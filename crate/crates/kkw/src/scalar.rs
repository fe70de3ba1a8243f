//! Exact scalar arithmetic: arbitrary-precision rationals and Gaussian rationals.
//!
//! [`GaussianRational`] is the field Q(i) with componentwise-canonical
//! representation: both parts are reduced fractions with positive denominator,
//! so structural equality is field equality. Every scalar in the engine lives
//! here; there is no floating point on any evaluation path.

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use thiserror::Error;

pub use num::BigRational;

/// Errors from scalar-level operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("binomial arguments out of range: C({0}, {1})")]
    BinomialOutOfRange(i64, i64),
}

/// Shorthand for an integer-valued rational.
pub fn rat_int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Shorthand for the reduced fraction `p/q`. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Exact `k!` as a rational.
pub fn factorial(k: u64) -> BigRational {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= BigInt::from(i);
    }
    BigRational::from_integer(acc)
}

/// Exact binomial coefficient `C(m, k)`; requires `0 <= k <= m`.
pub fn binomial(m: i64, k: i64) -> Result<BigRational, ScalarError> {
    if k < 0 || m < 0 || k > m {
        return Err(ScalarError::BinomialOutOfRange(m, k));
    }
    let mut acc = BigRational::one();
    for j in 0..k {
        acc *= BigRational::new(BigInt::from(m - j), BigInt::from(j + 1));
    }
    Ok(acc)
}

/// Exact `(2k-1)!! = 1*3*...*(2k-1)` for the argument `2k-1`; `(-1)!! = 1`.
pub fn double_factorial(k: i64) -> BigRational {
    let mut acc = BigInt::one();
    let mut i = k;
    while i > 1 {
        acc *= BigInt::from(i);
        i -= 2;
    }
    BigRational::from_integer(acc)
}

/// An element of Q(i), componentwise canonical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        GaussianRational { re: BigRational::one(), im: BigRational::zero() }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(v: i64) -> Self {
        GaussianRational { re: rat_int(v), im: BigRational::zero() }
    }

    pub fn from_rational(re: BigRational) -> Self {
        GaussianRational { re, im: BigRational::zero() }
    }

    /// `p/q` as a real Gaussian rational. Panics if `q == 0`.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(rat(p, q))
    }

    /// `(a + b i)` from integer parts.
    pub fn from_parts(a: i64, b: i64) -> Self {
        GaussianRational { re: rat_int(a), im: rat_int(b) }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Squared modulus `a^2 + b^2` as a rational.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm_sq();
        Ok(GaussianRational { re: &self.re / &n, im: -&self.im / &n })
    }

    /// Exact division; errors when the divisor is zero.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inverse()?)
    }

    /// Integer power with negative exponents through the inverse.
    pub fn int_pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Scale by a plain rational.
    pub fn scale(&self, c: &BigRational) -> Self {
        GaussianRational { re: &self.re * c, im: &self.im * c }
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

macro_rules! forward_value_ops {
    ($($t:ident :: $f:ident),*) => {$(
        impl $t for GaussianRational {
            type Output = GaussianRational;
            fn $f(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_value_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl Div for GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: GaussianRational) -> GaussianRational {
        self.checked_div(&rhs).expect("division by zero")
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parse a rational in the serialized `p/q` form (`q` omitted when 1).
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    s.trim().parse::<BigRational>().map_err(|e| format!("invalid rational {s:?}: {e}"))
}

/// Serialize a rational in the `p/q` form (`q` omitted when 1).
pub fn rational_string(r: &BigRational) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_addition() {
        assert_eq!(rat(1, 2) + rat(1, 3), rat(5, 6));
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_int(-1));
    }

    #[test]
    fn inverse_of_three_plus_four_i() {
        // Independent route: multiply by conjugate and divide by |z|^2, then
        // verify z * z^-1 == 1.
        let z = GaussianRational::from_parts(3, 4);
        let byhand = z.conj().scale(&z.norm_sq().recip());
        assert_eq!(byhand, GaussianRational::new(rat(3, 25), rat(-4, 25)));
        let inv = z.inverse().unwrap();
        assert_eq!(inv, byhand);
        assert_eq!(&z * &inv, GaussianRational::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let z = GaussianRational::from_int(1);
        assert_eq!(z.checked_div(&GaussianRational::zero()), Err(ScalarError::DivisionByZero));
        assert_eq!(GaussianRational::zero().int_pow(-1), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), rat_int(1));
        assert_eq!(factorial(5), rat_int(120));
        // (n-3)! for n = 8
        assert_eq!(factorial(5), rat_int(120));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2).unwrap(), rat_int(6));
        assert_eq!(binomial(7, 0).unwrap(), rat_int(1));
        assert!(binomial(3, 5).is_err());
        assert!(binomial(3, -1).is_err());
        // Pascal-triangle oracle for C(10, 5)
        let mut row = vec![BigRational::one()];
        for _ in 0..10 {
            let mut next = vec![BigRational::one()];
            for w in row.windows(2) {
                next.push(&w[0] + &w[1]);
            }
            next.push(BigRational::one());
            row = next;
        }
        assert_eq!(binomial(10, 5).unwrap(), row[5]);
        assert_eq!(binomial(10, 5).unwrap(), rat_int(252));
    }

    #[test]
    fn int_pow_matches_repeated_multiplication() {
        let z = GaussianRational::new(rat(2, 3), rat(-1, 5));
        let mut acc = GaussianRational::one();
        for _ in 0..7 {
            acc = &acc * &z;
        }
        assert_eq!(z.int_pow(7).unwrap(), acc);
        assert_eq!(z.int_pow(-7).unwrap(), acc.inverse().unwrap());
    }
}

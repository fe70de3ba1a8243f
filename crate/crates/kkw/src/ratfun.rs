//! Rational functions of a single variable with poles confined to ±i.
//!
//! [`PoleRational`] represents `N(x) / ((x-i)^p (x+i)^q)` with a dense
//! numerator over [`GaussianRational`]. The representation is canonical:
//! when `p > 0` the numerator is not divisible by `(x-i)`, likewise for `q`
//! and `(x+i)`, and the numerator has no trailing zero coefficients.
//!
//! On top of the arithmetic this module provides the upper-half-plane
//! projection `pi_plus`, real-line integration by residues, and exact
//! high-order derivative evaluation at `x = i` — the machinery behind every
//! bracket constant of the boundary computation.

use crate::scalar::{factorial, GaussianRational};
use std::fmt;
use thiserror::Error;

/// Errors from rational-function operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatFunError {
    #[error("pi_plus requires a function vanishing at infinity (deg N = {deg}, pole order {pole})")]
    NonDecaying { deg: usize, pole: u32 },
    #[error("integrand is not absolutely integrable (deg N = {deg}, pole order {pole})")]
    NonIntegrable { deg: usize, pole: u32 },
    #[error("derivative_at requires a function with no pole at +i (p = {0})")]
    PoleAtEvaluationPoint(u32),
}

/// Dense polynomial in one variable over the Gaussian rationals.
///
/// Coefficients are stored in ascending degree order; the vector is empty for
/// the zero polynomial and otherwise ends in a nonzero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct XiPoly {
    coeffs: Vec<GaussianRational>,
}

impl XiPoly {
    pub fn zero() -> Self {
        XiPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        XiPoly { coeffs: vec![GaussianRational::one()] }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `c * x^deg`.
    pub fn monomial(c: GaussianRational, deg: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(coeffs: Vec<GaussianRational>) -> Self {
        let mut p = XiPoly { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> GaussianRational {
        self.coeffs.get(i).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] = &coeffs[i] + c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] = &coeffs[i] + c;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        XiPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut coeffs =
            vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &GaussianRational::from_int(i as i64))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Exact quotient by the monic linear factor `(x - root)`, if divisible.
    fn div_linear(&self, root: &GaussianRational) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut quo = vec![GaussianRational::zero(); self.coeffs.len() - 1];
        let mut carry = GaussianRational::zero();
        for i in (0..self.coeffs.len()).rev() {
            let v = &self.coeffs[i] + &(&carry * root);
            if i == 0 {
                if !v.is_zero() {
                    return None;
                }
            } else {
                quo[i - 1] = v.clone();
                carry = v;
            }
        }
        Some(Self::from_coeffs(quo))
    }

    /// Multiply by `(x - root)^k`.
    fn mul_linear_pow(&self, root: &GaussianRational, k: u32) -> Self {
        let lin = Self::from_coeffs(vec![-root, GaussianRational::one()]);
        let mut acc = self.clone();
        for _ in 0..k {
            acc = acc.mul(&lin);
        }
        acc
    }
}

impl fmt::Debug for XiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if i == 0 { format!("({c})") } else { format!("({c})*x^{i}") })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `N(x) / ((x-i)^p (x+i)^q)` in canonical (fully cancelled) form.
#[derive(Clone, PartialEq, Eq)]
pub struct PoleRational {
    num: XiPoly,
    p: u32,
    q: u32,
}

impl PoleRational {
    pub fn zero() -> Self {
        PoleRational { num: XiPoly::zero(), p: 0, q: 0 }
    }

    pub fn one() -> Self {
        PoleRational { num: XiPoly::one(), p: 0, q: 0 }
    }

    pub fn constant(c: GaussianRational) -> Self {
        PoleRational { num: XiPoly::constant(c), p: 0, q: 0 }
    }

    pub fn from_poly(num: XiPoly) -> Self {
        PoleRational { num, p: 0, q: 0 }
    }

    /// Build `num / ((x-i)^p (x+i)^q)` and cancel to canonical form.
    pub fn new(num: XiPoly, p: u32, q: u32) -> Self {
        let mut r = PoleRational { num, p, q };
        r.canonicalize();
        r
    }

    /// `1 / (1 + x^2)^k`, the restricted inverse-metric power.
    pub fn inv_one_plus_sq_pow(k: u32) -> Self {
        Self::new(XiPoly::one(), k, k)
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.p = 0;
            self.q = 0;
            return;
        }
        let i = GaussianRational::i();
        while self.p > 0 {
            match self.num.div_linear(&i) {
                Some(q) => {
                    self.num = q;
                    self.p -= 1;
                }
                None => break,
            }
        }
        let mi = -&GaussianRational::i();
        while self.q > 0 {
            match self.num.div_linear(&mi) {
                Some(q) => {
                    self.num = q;
                    self.q -= 1;
                }
                None => break,
            }
        }
    }

    pub fn num(&self) -> &XiPoly {
        &self.num
    }

    pub fn pole_order_plus_i(&self) -> u32 {
        self.p
    }

    pub fn pole_order_minus_i(&self) -> u32 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.p.max(rhs.p);
        let q = self.q.max(rhs.q);
        let i = GaussianRational::i();
        let mi = -&i;
        let a = self.num.mul_linear_pow(&i, p - self.p).mul_linear_pow(&mi, q - self.q);
        let b = rhs.num.mul_linear_pow(&i, p - rhs.p).mul_linear_pow(&mi, q - rhs.q);
        Self::new(a.add(&b), p, q)
    }

    pub fn neg(&self) -> Self {
        PoleRational { num: self.num.neg(), p: self.p, q: self.q }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(self.num.mul(&rhs.num), self.p + rhs.p, self.q + rhs.q)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PoleRational { num: self.num.scale(c), p: self.p, q: self.q }
    }

    /// Exact `d/dx`; pole orders grow by at most one.
    pub fn differentiate(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        // (N/D)' = [N' (x-i)(x+i) - N (p (x+i) + q (x-i))] / ((x-i)^{p+1} (x+i)^{q+1})
        let i = GaussianRational::i();
        let mi = -&i;
        if self.p == 0 && self.q == 0 {
            return Self::from_poly(self.num.derivative());
        }
        let dpart = self.num.derivative().mul_linear_pow(&i, 1).mul_linear_pow(&mi, 1);
        // p*(x+i) + q*(x-i) = (p+q) x + (p-q) i
        let mix = XiPoly::from_coeffs(vec![
            GaussianRational::i().scale(&crate::scalar::rat_int(self.p as i64 - self.q as i64)),
            GaussianRational::from_int((self.p + self.q) as i64),
        ]);
        Self::new(dpart.sub(&self.num.mul(&mix)), self.p + 1, self.q + 1)
    }

    /// Evaluate at a point that is not a pole of the canonical form.
    pub fn eval(&self, x: &GaussianRational) -> Result<GaussianRational, RatFunError> {
        let i = GaussianRational::i();
        let mi = -&i;
        if (self.p > 0 && *x == i) || (self.q > 0 && *x == mi) {
            return Err(RatFunError::PoleAtEvaluationPoint(self.p));
        }
        let mut den = GaussianRational::one();
        for _ in 0..self.p {
            den = &den * &(x - &i);
        }
        for _ in 0..self.q {
            den = &den * &(x - &mi);
        }
        Ok(self.num.eval(x).checked_div(&den).expect("nonzero denominator"))
    }

    /// Degree of the numerator minus degree of the denominator (None if zero).
    fn decay(&self) -> Option<i64> {
        self.num.degree().map(|d| d as i64 - (self.p + self.q) as i64)
    }

    /// Projection onto the part holomorphic in the lower half-plane: the
    /// principal part at the pole `+i`. Requires decay at infinity.
    pub fn pi_plus(&self) -> Result<Self, RatFunError> {
        match self.decay() {
            None => return Ok(Self::zero()),
            Some(d) if d >= 0 => {
                return Err(RatFunError::NonDecaying {
                    deg: self.num.degree().unwrap_or(0),
                    pole: self.p + self.q,
                })
            }
            _ => {}
        }
        if self.p == 0 {
            return Ok(Self::zero());
        }
        // g(x) = N(x)/(x+i)^q; principal part sum_{k=1..p} g^{(p-k)}(i)/(p-k)! / (x-i)^k.
        let g = PoleRational { num: self.num.clone(), p: 0, q: self.q };
        let i = GaussianRational::i();
        let mut acc = XiPoly::zero();
        let mut gd = g;
        // Build sum_k c_k (x-i)^{p-k} over the common denominator (x-i)^p.
        for k in (1..=self.p).rev() {
            // at this point gd = g^{(p-k)}
            let ck = gd
                .eval(&i)
                .expect("no pole at +i by construction")
                .scale(&factorial((self.p - k) as u64).recip());
            acc = acc.add(&XiPoly::constant(ck).mul_linear_pow(&i, self.p - k));
            gd = gd.differentiate();
        }
        Ok(Self::new(acc, self.p, 0))
    }

    /// The complementary part with poles only at `-i`; `pi_plus + pi_minus = self`.
    pub fn pi_minus_remainder(&self) -> Result<Self, RatFunError> {
        Ok(self.sub(&self.pi_plus()?))
    }

    /// Residue at `x = i`: `(1/(p-1)!) d^{p-1}/dx^{p-1} [(x-i)^p f]` at `i`.
    pub fn residue_at_i(&self) -> GaussianRational {
        if self.p == 0 {
            return GaussianRational::zero();
        }
        let mut g = PoleRational { num: self.num.clone(), p: 0, q: self.q };
        for _ in 0..self.p - 1 {
            g = g.differentiate();
        }
        g.eval(&GaussianRational::i())
            .expect("no pole at +i by construction")
            .scale(&factorial((self.p - 1) as u64).recip())
    }

    /// Real-line integral as the coefficient `r` in `∫ f dx = r * π`,
    /// evaluated by closing the contour around the pole at `+i`.
    pub fn integrate_real_line(&self) -> Result<GaussianRational, RatFunError> {
        match self.decay() {
            None => return Ok(GaussianRational::zero()),
            Some(d) if d >= -1 => {
                return Err(RatFunError::NonIntegrable {
                    deg: self.num.degree().unwrap_or(0),
                    pole: self.p + self.q,
                })
            }
            _ => {}
        }
        // ∫ = 2 pi i Res_{+i}, so r = 2 i Res.
        let two_i = GaussianRational::new(
            crate::scalar::rat_int(0),
            crate::scalar::rat_int(2),
        );
        Ok(&two_i * &self.residue_at_i())
    }

    /// Exact m-th derivative at `x = i` for a function with `p = 0`.
    pub fn derivative_at_plus_i(&self, m: u32) -> Result<GaussianRational, RatFunError> {
        if self.p != 0 {
            return Err(RatFunError::PoleAtEvaluationPoint(self.p));
        }
        let mut g = self.clone();
        for _ in 0..m {
            g = g.differentiate();
        }
        Ok(g.eval(&GaussianRational::i()).expect("p stays zero under differentiation"))
    }
}

impl fmt::Debug for PoleRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}] / ((x-i)^{} (x+i)^{})", self.num, self.p, self.q)
    }
}

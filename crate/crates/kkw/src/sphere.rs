//! Exact moments of ξ′-monomials over the unit sphere S^{n-2}.
//!
//! All results are rational multiples of the total volume Vol(S^{n-2}),
//! which is kept as a symbolic unit throughout and never expanded into
//! Γ-function values.

use crate::scalar::{double_factorial, rat_int, BigRational};
use num::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SphereError {
    #[error("exponent vector has length {got}, expected n-1 = {want}")]
    WrongLength { got: usize, want: usize },
    #[error("sphere moments need even n >= 4, got {0}")]
    BadDimension(usize),
}

/// Moment of `ξ₁^{α₁} ··· ξ_{n-1}^{α_{n-1}}` over S^{n-2}, as the coefficient
/// of Vol(S^{n-2}).
///
/// Odd moments vanish; for even exponents the value is
/// `∏ᵢ (αᵢ-1)!! / ∏_{k=0}^{|α|/2-1} (n-1+2k)`.
pub fn moment(alpha: &[u32], n: usize) -> Result<BigRational, SphereError> {
    if n < 4 || n % 2 != 0 {
        return Err(SphereError::BadDimension(n));
    }
    if alpha.len() != n - 1 {
        return Err(SphereError::WrongLength { got: alpha.len(), want: n - 1 });
    }
    if alpha.iter().any(|&a| a % 2 == 1) {
        return Ok(BigRational::zero());
    }
    let total: u32 = alpha.iter().sum();
    let mut num = BigRational::from_integer(1.into());
    for &a in alpha {
        if a > 0 {
            num *= double_factorial(a as i64 - 1);
        }
    }
    let mut den = BigRational::from_integer(1.into());
    for k in 0..(total / 2) {
        den *= rat_int((n - 1) as i64 + 2 * k as i64);
    }
    Ok(num / den)
}

/// Independent route to the same moment through Γ-function ratios: with
/// `d = n-1`, the moment is `∏ᵢ Γ((αᵢ+1)/2) · Γ(d/2) / (Γ((|α|+d)/2) · Γ(1/2)^{…})`
/// where every ratio of half-integer Γ values is computed by the recursion
/// `Γ(x+1) = x Γ(x)` from a symbolic `Γ(1/2)`. Shares no code with the
/// double-factorial product formula.
pub fn gamma_ratio_moment(alpha: &[u32], n: usize) -> Result<BigRational, SphereError> {
    if n < 4 || n % 2 != 0 {
        return Err(SphereError::BadDimension(n));
    }
    if alpha.len() != n - 1 {
        return Err(SphereError::WrongLength { got: alpha.len(), want: n - 1 });
    }
    if alpha.iter().any(|&a| a % 2 == 1) {
        return Ok(BigRational::zero());
    }
    // Γ(j + base) as (rational coefficient, count of Γ(1/2) factors), with
    // base ∈ {1/2 (odd twice-argument), 1 (even)} tracked via twice-argument.
    // gamma2(t) = Γ(t/2) represented as c · Γ(1/2)^e with e ∈ {0, 1}.
    fn gamma2(t: u32) -> (BigRational, u32) {
        assert!(t >= 1);
        if t == 1 {
            return (BigRational::from_integer(1.into()), 1);
        }
        if t == 2 {
            return (BigRational::from_integer(1.into()), 0);
        }
        let (c, e) = gamma2(t - 2);
        (c * BigRational::new((t as i64 - 2).into(), 2.into()), e)
    }
    let d = (n - 1) as u32;
    let total: u32 = alpha.iter().sum();
    let mut num = BigRational::from_integer(1.into());
    let mut num_halves = 0u32;
    for &a in alpha {
        let (c, e) = gamma2(a + 1);
        num *= c;
        num_halves += e;
    }
    let (cd, ed) = gamma2(d);
    num *= cd;
    num_halves += ed;
    let (den, eden) = gamma2(total + d);
    let mut den_halves = eden;
    // divide by Γ(1/2)^{d}: Vol(S^{d-1}) carries π^{d/2} = Γ(1/2)^d
    den_halves += d;
    // the Γ(1/2) exponents must cancel exactly for the ratio to be rational
    let common = num_halves.min(den_halves);
    num_halves -= common;
    den_halves -= common;
    debug_assert_eq!(num_halves, den_halves);
    let _ = (num_halves, den_halves);
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn odd_moments_vanish() {
        let mut a = vec![0u32; 5];
        a[0] = 1;
        assert!(moment(&a, 6).unwrap().is_zero());
        a[0] = 3;
        a[2] = 2;
        assert!(moment(&a, 6).unwrap().is_zero());
    }

    #[test]
    fn quadratic_moment() {
        for n in [6usize, 8, 10] {
            let mut a = vec![0u32; n - 1];
            a[1] = 2;
            assert_eq!(moment(&a, n).unwrap(), rat(1, (n - 1) as i64));
        }
    }

    #[test]
    fn quartic_moment() {
        // Gaussian-integral ratio: ∫x⁴e^{-|x|²} gives 3/((n-1)(n+1)).
        for n in [6usize, 8, 14] {
            let mut a = vec![0u32; n - 1];
            a[0] = 4;
            assert_eq!(moment(&a, n).unwrap(), rat(3, ((n - 1) * (n + 1)) as i64));
        }
    }

    #[test]
    fn sum_of_squares_integrates_to_one() {
        // Σᵢ ξᵢ² = |ξ′|² = 1 on the sphere.
        let n = 8usize;
        let mut acc = BigRational::zero();
        for i in 0..n - 1 {
            let mut a = vec![0u32; n - 1];
            a[i] = 2;
            acc += moment(&a, n).unwrap();
        }
        assert_eq!(acc, BigRational::from_integer(1.into()));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(moment(&[0, 0], 6).is_err());
        assert!(moment(&[0, 0, 0, 0], 5).is_err());
        assert!(moment(&[0, 0], 2).is_err());
    }
}

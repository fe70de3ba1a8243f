//! High-precision Cauchy-integral quadrature, used as an independent check
//! on the residue-constant evaluations.
//!
//! The m-th derivative at +i is recomputed as the contour integral
//! `m!/(2πi) ∮ g(ξ)/(ξ-i)^{m+1} dξ` over the circle |ξ - i| = 1/2 with the
//! N-point trapezoid rule. The integrand is analytic in the annulus up to
//! the only other singularity at -i (distance 2), so the rule converges like
//! `4^{-N}`; with N = 64 and 60-digit fixed-point arithmetic the result
//! carries far more than the 20 digits the acceptance threshold demands.
//! The route shares no code with the exact derivative evaluation: polynomial
//! Horner evaluation at numeric points against repeated symbolic
//! differentiation.

use crate::ratfun::PoleRational;
use crate::scalar::{factorial, BigRational, GaussianRational};
use num::bigint::BigInt;
use num::{One, Signed, Zero};

/// Working precision in decimal digits.
const SCALE_DIGITS: u32 = 60;
/// Quadrature points.
const POINTS: usize = 64;

/// 80 digits of π after the decimal point, as a fixed-point literal source.
const PI_DIGITS: &str =
    "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899";

fn scale() -> &'static BigInt {
    static SCALE: std::sync::OnceLock<BigInt> = std::sync::OnceLock::new();
    SCALE.get_or_init(|| BigInt::from(10u32).pow(SCALE_DIGITS))
}

/// Fixed-point real: value = mantissa / 10^SCALE_DIGITS.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fix(BigInt);

impl Fix {
    fn zero() -> Self {
        Fix(BigInt::zero())
    }

    fn from_rational(r: &BigRational) -> Self {
        Fix((r.numer() * scale()) / r.denom())
    }

    fn from_decimal_literal(s: &str) -> Self {
        let (int_part, frac_part) = s.split_once('.').expect("decimal literal");
        let mut digits = frac_part.to_string();
        digits.truncate(SCALE_DIGITS as usize);
        while digits.len() < SCALE_DIGITS as usize {
            digits.push('0');
        }
        let mantissa: BigInt = format!("{int_part}{digits}").parse().expect("digits");
        Fix(mantissa)
    }

    fn add(&self, o: &Self) -> Self {
        Fix(&self.0 + &o.0)
    }

    fn sub(&self, o: &Self) -> Self {
        Fix(&self.0 - &o.0)
    }

    fn mul(&self, o: &Self) -> Self {
        Fix((&self.0 * &o.0) / scale())
    }

    fn div(&self, o: &Self) -> Self {
        Fix((&self.0 * scale()) / &o.0)
    }

    fn neg(&self) -> Self {
        Fix(-&self.0)
    }

    fn abs_lt_ulps(&self, ulps: u64) -> bool {
        self.0.abs() < BigInt::from(ulps)
    }

    /// Exact rational value of the fixed-point number.
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.0.clone(), scale().clone())
    }
}

/// Fixed-point complex number.
#[derive(Clone, Debug)]
pub struct FixComplex {
    pub re: Fix,
    pub im: Fix,
}

impl FixComplex {
    fn zero() -> Self {
        FixComplex { re: Fix::zero(), im: Fix::zero() }
    }

    fn one() -> Self {
        FixComplex { re: Fix::from_rational(&BigRational::one()), im: Fix::zero() }
    }

    fn from_gaussian(g: &GaussianRational) -> Self {
        FixComplex { re: Fix::from_rational(g.re()), im: Fix::from_rational(g.im()) }
    }

    fn add(&self, o: &Self) -> Self {
        FixComplex { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    fn mul(&self, o: &Self) -> Self {
        FixComplex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    fn div(&self, o: &Self) -> Self {
        let den = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        let num = self.mul(&FixComplex { re: o.re.clone(), im: o.im.neg() });
        FixComplex { re: num.re.div(&den), im: num.im.div(&den) }
    }

    fn scale_rational(&self, r: &BigRational) -> Self {
        let f = Fix::from_rational(r);
        FixComplex { re: self.re.mul(&f), im: self.im.mul(&f) }
    }
}

/// `e^{iθ}` by Taylor series; θ given as an exact rational multiple of π.
fn unit_phase(theta_over_pi: &BigRational) -> FixComplex {
    let pi = Fix::from_decimal_literal(PI_DIGITS);
    let theta = pi.mul(&Fix::from_rational(theta_over_pi));
    let i_theta = FixComplex { re: Fix::zero(), im: theta };
    let mut term = FixComplex::one();
    let mut acc = FixComplex::one();
    let mut j = 1u64;
    loop {
        term = term.mul(&i_theta);
        term = term.scale_rational(&BigRational::new(BigInt::one(), BigInt::from(j)));
        acc = acc.add(&term);
        if term.re.abs_lt_ulps(2) && term.im.abs_lt_ulps(2) {
            break;
        }
        j += 1;
        assert!(j < 500, "phase series failed to converge");
    }
    acc
}

/// Evaluate a pole-rational function at a numeric complex point.
fn eval_at(f: &PoleRational, x: &FixComplex) -> FixComplex {
    let mut num = FixComplex::zero();
    for c in f.num().coeffs().iter().rev() {
        num = num.mul(x).add(&FixComplex::from_gaussian(c));
    }
    let i = FixComplex::from_gaussian(&GaussianRational::i());
    let x_minus_i = x.add(&FixComplex { re: i.re.clone(), im: i.im.neg() });
    let x_plus_i = x.add(&i);
    let mut den = FixComplex::one();
    for _ in 0..f.pole_order_plus_i() {
        den = den.mul(&x_minus_i);
    }
    for _ in 0..f.pole_order_minus_i() {
        den = den.mul(&x_plus_i);
    }
    num.div(&den)
}

/// m-th derivative of `g` at +i by Cauchy-integral quadrature. `g` must be
/// analytic at +i (no pole there).
pub fn derivative_at_plus_i_quadrature(g: &PoleRational, m: u32) -> FixComplex {
    assert_eq!(g.pole_order_plus_i(), 0, "quadrature needs an analytic function at +i");
    let radius = BigRational::new(BigInt::one(), BigInt::from(2));
    let i_pt = FixComplex::from_gaussian(&GaussianRational::i());
    // ω^j for j = 0..N
    let base = unit_phase(&BigRational::new(BigInt::from(2), BigInt::from(POINTS)));
    let mut powers = Vec::with_capacity(POINTS);
    let mut cur = FixComplex::one();
    for _ in 0..POINTS {
        powers.push(cur.clone());
        cur = cur.mul(&base);
    }
    let mut acc = FixComplex::zero();
    for (k, w) in powers.iter().enumerate() {
        let x = i_pt.add(&w.scale_rational(&radius));
        let gx = eval_at(g, &x);
        // ω_k^{-m} = ω^{(N - (m k mod N)) mod N}, an exact table index
        let idx = (POINTS - (m as usize * k) % POINTS) % POINTS;
        acc = acc.add(&gx.mul(&powers[idx]));
    }
    // m! / (N r^m)
    let r_pow = {
        let mut p = BigRational::one();
        for _ in 0..m {
            p *= &radius;
        }
        p
    };
    let pref = factorial(m as u64) / (BigRational::from_integer(BigInt::from(POINTS)) * r_pow);
    acc.scale_rational(&pref)
}

/// Relative-error check `|approx - exact| <= tol · max(|exact|, 1)`,
/// evaluated exactly on squared moduli.
pub fn within_relative(approx: &FixComplex, exact: &GaussianRational, tol: &BigRational) -> bool {
    let dre = approx.re.to_rational() - exact.re();
    let dim = approx.im.to_rational() - exact.im();
    let diff_sq = &dre * &dre + &dim * &dim;
    let mag_sq = exact.norm_sq();
    let floor = BigRational::one();
    let bound = if mag_sq > floor { mag_sq } else { floor };
    diff_sq <= tol * tol * bound
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::XiPoly;
    use crate::scalar::rat;

    fn tol20() -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(10u64).pow(20))
    }

    #[test]
    fn quadrature_matches_simple_derivatives() {
        // g = 1/(x+i): g'(i) = 1/4, g''(i) = -2/(2i)^3 = -i/4... check a few
        // orders against the exact route.
        let f = PoleRational::new(XiPoly::one(), 0, 1);
        for m in 0..6u32 {
            let exact = f.derivative_at_plus_i(m).unwrap();
            let approx = derivative_at_plus_i_quadrature(&f, m);
            assert!(within_relative(&approx, &exact, &tol20()), "order {m}");
        }
    }

    #[test]
    fn quadrature_detects_wrong_values() {
        let f = PoleRational::new(XiPoly::one(), 0, 1);
        let approx = derivative_at_plus_i_quadrature(&f, 1);
        let wrong = GaussianRational::from_ratio(1, 4) + GaussianRational::from_ratio(1, 1_000_000);
        assert!(!within_relative(&approx, &wrong, &tol20()));
    }

    #[test]
    fn quadrature_handles_polynomial_numerators() {
        // x³/(x+i)⁵ with a Gaussian coefficient mix
        let num = XiPoly::from_coeffs(vec![
            GaussianRational::from_parts(1, 2),
            GaussianRational::zero(),
            GaussianRational::from_ratio(-3, 7),
            GaussianRational::i().scale(&rat(5, 3)),
        ]);
        let f = PoleRational::new(num, 0, 5);
        for m in [0u32, 3, 7, 10] {
            let exact = f.derivative_at_plus_i(m).unwrap();
            let approx = derivative_at_plus_i_quadrature(&f, m);
            assert!(within_relative(&approx, &exact, &tol20()), "order {m}");
        }
    }
}

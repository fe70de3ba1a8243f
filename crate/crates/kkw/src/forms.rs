//! Direct evaluators for the displayed closed forms: the 31 residue
//! constants, the per-case coefficient formulas, the combined nine-constant
//! form, the final four-term form, the geometric boundary integrand of the
//! main theorem, and the interior density evaluator.
//!
//! The constant table is transcribed input; every downstream equality the
//! verifier checks is a statement about the displayed formulas, not about
//! this transcription. Each entry records the numerator polynomial in ξₙ,
//! a constant denominator factor, the pole order at -i, and the derivative
//! order of the evaluation bracket `[N(ξₙ)/(c (ξₙ+i)^k)]^{(m)} |_{ξₙ=i}`.

use crate::jets::{jet_scalars, JJet};
use crate::pipeline::PiVolScalar;
use crate::ratfun::{PoleRational, RatFunError, XiPoly};
use crate::scalar::{factorial, rat, rat_int, BigRational, GaussianRational};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormsError {
    #[error("unknown constant name {0:?}")]
    UnknownConstant(String),
    #[error("closed forms need even n >= 6, got {0}")]
    BadDimension(usize),
    #[error("closed form produced a non-real density {0}")]
    NonReal(GaussianRational),
    #[error(transparent)]
    RatFun(#[from] RatFunError),
}

/// All residue-constant names, in table order. Four of the a-case entries
/// are displayed combinations of earlier ones and two later entries alias
/// earlier definitions, so the list of distinct definitions is shorter than
/// the list of names.
pub const CONSTANT_NAMES: [&str; 37] = [
    "A0", "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9", "A10", "A11", "A12", "A13",
    "A14", "B0", "B1", "B2", "B3", "B4", "B5", "C0", "C1", "C2", "C3", "C4", "C5", "C6",
    "D0", "D1", "D2", "D3", "D4", "D5", "D6", "D7", "D8",
];

/// Defining data of one residue constant for a concrete even n.
#[derive(Clone, Debug)]
pub struct ConstantSpec {
    pub name: &'static str,
    /// Numerator polynomial N(ξₙ).
    pub numerator: XiPoly,
    /// Constant denominator factor c.
    pub denominator: BigRational,
    /// Pole order k of (ξₙ+i)^k.
    pub pole_order: u32,
    /// Derivative order m of the evaluation bracket.
    pub derivative_order: u32,
}

impl ConstantSpec {
    /// The rational function `N(ξₙ) / (c (ξₙ+i)^k)`.
    pub fn function(&self) -> PoleRational {
        let scaled = self
            .numerator
            .scale(&GaussianRational::from_rational(self.denominator.recip()));
        PoleRational::new(scaled, 0, self.pole_order)
    }
}

/// Numerator coefficients as (re, im) integer pairs in ascending degree.
fn poly(coeffs: &[(i64, i64)]) -> XiPoly {
    XiPoly::from_coeffs(coeffs.iter().map(|(a, b)| GaussianRational::from_parts(*a, *b)).collect())
}

/// Table lookup for the named constant at even `n >= 6`.
pub fn constant_spec(name: &str, n: usize) -> Result<ConstantSpec, FormsError> {
    if n < 6 || n % 2 != 0 {
        return Err(FormsError::BadDimension(n));
    }
    let m = n as i64;
    let h = (n / 2) as u32;
    let (name, numerator, denominator, pole_order, derivative_order): (
        &'static str,
        XiPoly,
        i64,
        u32,
        u32,
    ) = match name {
        // -- constants of case a-I --
        "A0" => ("A0", poly(&[(0, 1), (0, 0), (0, -(m - 3))]), 2, h, h),
        "A1" => ("A1", poly(&[(-2, 0), (0, -1), (2 * (m - 3), 0), (0, m - 3)]), 2, h, h + 1),
        "A2" => ("A2", poly(&[(0, 0), (0, m - 2)]), 2, h, h + 1),
        // -- constants of case a-II --
        "A3" => ("A3", poly(&[(0, -(m - 2)), (0, 0), (0, m * m - 3 * m + 2)]), 8, h + 1, h + 1),
        "A4" => {
            ("A4", poly(&[(0, 0), (3 * (m - 2), 0), (0, 0), (-(m * m - 5 * m + 6), 0)]), 8, h + 1, h + 1)
        }
        "A5" => (
            "A5",
            poly(&[
                (2 * (m - 2), 0),
                (0, m - 2),
                (-2 * (m * m - 3 * m + 2), 0),
                (0, -(m * m - 3 * m + 2)),
            ]),
            8,
            h + 1,
            h + 2,
        ),
        "A6" => ("A6", poly(&[(0, 0), (0, 3 * (m - 2)), (0, 0), (0, -(m * m - 5 * m + 6))]), 8, h + 1, h + 2),
        // -- constants of case a-III --
        "A7" => ("A7", poly(&[(0, 0), (0, m - 2)]), 8, h, h + 1),
        "A8" => ("A8", poly(&[(0, 0), (0, -m * (m - 2))]), 8, h + 1, h + 2),
        "A9" => ("A9", poly(&[(1, 0), (0, 0), (-(m - 3), 0)]), 8, h, h + 1),
        "A10" => ("A10", poly(&[(-(m - 2), 0), (0, 0), (m * m - 3 * m + 2, 0)]), 8, h + 1, h + 2),
        // -- combinations of the three a-cases --
        "A11" => ("A11", poly(&[(0, -(m - 2)), (-(m - 2), 0), (0, m * (m - 2))]), 8, h + 1, h + 1),
        "A12" => (
            "A12",
            poly(&[(0, 1), (3 * m - 5, 0), (0, -(m - 3)), (-(m * m - 4 * m + 3), 0)]),
            8,
            h + 1,
            h + 1,
        ),
        "A13" => (
            "A13",
            poly(&[
                (2 * (m - 2), 0),
                (0, -(m * m - 3 * m + 2)),
                (-2 * (m * m - 3 * m + 2), 0),
                (0, -(m * m - 3 * m + 2)),
            ]),
            8,
            h + 1,
            h + 2,
        ),
        "A14" => {
            ("A14", poly(&[(0, m - 2), (2 * (m - 2), 0), (0, -(m * m - 5 * m + 6))]), 8, h, h + 2)
        }
        // -- constants of case b --
        "B0" => ("B0", poly(&[(-(m - 2), 0), (0, -(m - 2))]), 8, h, h + 1),
        "B1" => ("B1", poly(&[(-1, 0)]), 8, h - 1, h),
        "B2" => (
            "B2",
            poly(&[(0, 0), (0, 0), (-(2 * m * m - 5 * m + 2), 0), (0, 0), (-(m * m - 3 * m + 2), 0)]),
            8,
            h + 1,
            h + 2,
        ),
        "B3" => ("B3", poly(&[(0, 0), (0, 0), (m - 2, 0)]), 4, h, h + 1),
        "B4" => (
            "B4",
            poly(&[(0, 0), (0, 2 * m * m - 5 * m + 2), (0, 0), (0, m * m - 3 * m + 2)]),
            8,
            h + 1,
            h + 2,
        ),
        "B5" => ("B5", poly(&[(0, 0), (0, -(m - 2))]), 4, h, h + 1),
        // -- constants of case c --
        "C0" => ("C0", poly(&[(0, 0), (0, -1), (0, 0), (0, m - 3)]), 4, h, h + 1),
        "C1" => ("C1", poly(&[(0, 0), (0, m - 2)]), 4, h, h + 1),
        "C2" => {
            ("C2", poly(&[(-2, 0), (0, -(2 * m - 3)), (2 * (m - 3), 0), (0, m - 3)]), 16, h, h + 1)
        }
        "C3" => {
            ("C3", poly(&[(2, 0), (0, m - 1), (-2 * (m - 3), 0), (0, -(m - 3))]), 4, h, h + 1)
        }
        "C4" => {
            ("C4", poly(&[(0, 0), (3, 0), (0, 1), (-3 * (m - 3), 0), (0, -(m - 3))]), 16, h, h + 2)
        }
        "C5" => (
            "C5",
            poly(&[
                (0, 8),
                (-3 * (2 * m - 1), 0),
                (0, -5 * (2 * m - 5)),
                (9 * (m - 3), 0),
                (0, 3 * (m - 3)),
            ]),
            16,
            h,
            h + 2,
        ),
        "C6" => {
            ("C6", poly(&[(2, 0), (0, 4 * m - 7), (-2 * (m - 3), 0), (0, -(m - 3))]), 16, h, h + 1)
        }
        // -- constants of the combined form --
        "D0" => (
            "D0",
            poly(&[
                (m - 6, 0),
                (0, m * m - 2 * m + 1),
                (-(3 * m * m - 10 * m + 14), 0),
                (0, -(m * m - 3 * m + 2)),
                (-(m * m - 5 * m + 8), 0),
                (0, m - 3),
            ]),
            8,
            h + 1,
            h + 2,
        ),
        "D1" => ("D1", poly(&[(0, 1), (0, 0), (0, -(m - 3))]), 2, h, h),
        "D2" => (
            "D2",
            poly(&[(-2 * m + 2, 0), (0, m * m - 7 * m + 8), (2 * (m - 3), 0), (0, m * (m - 3))]),
            4 * (m - 1),
            h,
            h + 1,
        ),
        "D3" => (
            "D3",
            poly(&[
                (0, 4 - m),
                (1, 0),
                (0, m * m - 5 * m + 9),
                (-(m - 3), 0),
                (0, -(m - 3)),
            ]),
            8 * (m - 1),
            h + 1,
            h + 1,
        ),
        "D4" => ("D4", poly(&[(-1, 0)]), 8, h - 1, h),
        "D5" => (
            "D5",
            poly(&[
                (0, m),
                (m * m - 1, 0),
                (0, 2 * m * m - 6 * m + 5),
                (-(m * m * m - 5 * m * m + 5 * m - 1), 0),
                (0, m * m - 4 * m + 3),
            ]),
            8 * (m - 1),
            h + 1,
            h + 1,
        ),
        "D6" => (
            "D6",
            poly(&[(-1, 0), (0, -(m * m - 4 * m + 4)), (m * m - 4 * m + 3, 0)]),
            8 * (m - 1),
            h,
            h + 1,
        ),
        "D7" => ("D7", poly(&[(-(m - 2), 0), (0, -(m - 2))]), 4 * (m - 1), h, h + 1),
        "D8" => {
            ("D8", poly(&[(0, 0), (0, -5 * (m - 2)), (m * m - 3 * m + 2, 0)]), 4 * (m - 1), h, h + 1)
        }
        other => return Err(FormsError::UnknownConstant(other.to_string())),
    };
    Ok(ConstantSpec {
        name,
        numerator,
        denominator: rat_int(denominator),
        pole_order,
        derivative_order,
    })
}

/// Exact value of a named constant through the derivative bracket.
pub fn eval_constant(name: &str, n: usize) -> Result<GaussianRational, FormsError> {
    let spec = constant_spec(name, n)?;
    Ok(spec.function().derivative_at_plus_i(spec.derivative_order)?)
}

/// `2^e` as an exact rational, for any sign of e.
fn pow2(e: i64) -> BigRational {
    let two = rat_int(2);
    let mut acc = rat_int(1);
    for _ in 0..e.unsigned_abs() {
        acc *= &two;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

fn real_part(v: GaussianRational) -> Result<PiVolScalar, FormsError> {
    if !v.is_real() {
        return Err(FormsError::NonReal(v));
    }
    Ok(PiVolScalar { q: v.re().clone() })
}

/// One displayed term: `scalar · moment · tr[id] · (2πi / m!) · const`, as
/// the coefficient of `π · Vol(S^{n-2})`.
struct TermBuilder {
    n: usize,
    acc: GaussianRational,
}

impl TermBuilder {
    fn new(n: usize) -> Self {
        TermBuilder { n, acc: GaussianRational::zero() }
    }

    fn add(&mut self, scalar: &BigRational, unit_fraction: bool, m_offset: i64, value: GaussianRational) {
        // 2 i / m! · tr[id] with m = n/2 + m_offset
        let m = (self.n as i64 / 2 + m_offset) as u64;
        let mut c = GaussianRational::new(rat_int(0), rat_int(2));
        c = c.scale(&factorial(m).recip());
        c = c.scale(&pow2(self.n as i64 / 2));
        let mut coef = scalar.clone();
        if unit_fraction {
            coef /= rat_int(self.n as i64 - 1);
        }
        self.acc = &self.acc + &(&value.scale(&coef) * &c);
    }

    fn finish(self) -> Result<PiVolScalar, FormsError> {
        real_part(self.acc)
    }
}

fn check_n(n: usize) -> Result<(), FormsError> {
    if n < 6 || n % 2 != 0 {
        return Err(FormsError::BadDimension(n));
    }
    Ok(())
}

/// The displayed coefficient formula for one boundary case.
pub fn phi_case_form(case: crate::pipeline::CaseId, n: usize, jet: &JJet) -> Result<PiVolScalar, FormsError> {
    use crate::pipeline::CaseId;
    check_n(n)?;
    if jet.n != n {
        return Err(FormsError::BadDimension(jet.n));
    }
    let s = jet_scalars(jet);
    let hp = &jet.hprime;
    let c = |name: &str| eval_constant(name, n);
    let mut t = TermBuilder::new(n);
    match case {
        CaseId::AI => {
            t.add(&s.mixed_da_normal, false, 0, c("A0")?);
            t.add(&s.mixed_da_normal, true, 1, c("A1")?);
            t.add(&s.normal_da_tangential, true, 1, c("A2")?);
        }
        CaseId::AII => {
            t.add(&(hp * &s.tan_tan_sq), true, 1, c("A3")?);
            t.add(&(hp * &s.normal_row_tan_sq), false, 1, c("A4")?);
            t.add(&(hp * &s.all_rows_tan_sq), true, 2, c("A5")?);
            t.add(&(hp * &s.normal_col_sq), false, 2, c("A6")?);
        }
        CaseId::AIII => {
            t.add(&(hp * &s.tan_tan_sq), true, 1, c("A7")?);
            t.add(&(hp * &s.all_rows_tan_sq), true, 2, c("A8")?);
            t.add(&(hp * &s.normal_row_tan_sq), false, 1, c("A9")?);
            t.add(&(hp * &s.normal_col_sq), false, 2, c("A10")?);
        }
        CaseId::B => {
            let b0 = c("B0")?;
            let b1 = c("B1")?;
            let b3 = c("B3")?;
            let b5 = c("B5")?;
            t.add(&(hp * &s.normal_row_tan_sq), true, 1, b0.clone());
            t.add(&(hp * &s.normal_row_tan_sq), false, 0, b1.clone());
            t.add(&(hp * &s.diag_cross), true, 1, -&b0);
            t.add(&(hp * &s.diag_cross), false, 0, -&b1);
            t.add(&(hp * &s.normal_col_sq), false, 2, c("B2")?);
            t.add(&(hp * &s.normal_row_tan_sq), false, 1, b3.clone());
            t.add(&(hp * &s.all_rows_tan_sq), true, 2, c("B4")?);
            t.add(&(hp * &s.tan_tan_sq), true, 1, b5.clone());
            t.add(&(&s.all_rows_tan_sq * &s.nabla_full_contraction), true, 1, b5);
            t.add(&s.nabla_normal_direction, true, 1, -&b0.scale(&rat_int(2)));
            t.add(&s.nabla_divergence_normal, true, 1, b0.scale(&rat_int(2)));
            t.add(&(&s.normal_col_sq * &s.nabla_full_contraction), false, 1, b3);
            t.add(&s.mixed_da_normal, true, 1, b0.scale(&rat_int(4)));
        }
        CaseId::C => {
            let c0 = c("C0")?;
            let c3 = c("C3")?;
            t.add(&(&s.normal_col_sq * &s.mixed_da_normal_all), false, 1, c0.clone());
            t.add(&(&s.all_rows_tan_sq * &s.mixed_da_normal_all), true, 1, c("C1")?);
            t.add(&(hp * &(&s.normal_col_sq * &s.diag_cross)), false, 1, c0.scale(&rat(-1, 4)));
            t.add(&(hp * &(&s.all_rows_tan_sq * &s.diag_cross)), true, 1, c("C2")?);
            t.add(&s.mixed_da_normal_all, true, 1, c3.clone());
            t.add(&(hp * &(&s.normal_col_sq * &s.normal_col_sq)), false, 2, c("C4")?);
            t.add(&(hp * &(&s.normal_col_sq * &s.all_rows_tan_sq)), true, 2, c("C5")?);
            t.add(&(hp * &(&s.normal_row_tan_sq * &s.normal_col_sq)), false, 1, c0.scale(&rat(3, 4)));
            t.add(&(hp * &(&s.normal_row_tan_sq * &s.all_rows_tan_sq)), true, 1, c("C6")?);
            t.add(&(hp * &(&s.tan_tan_sq * &s.normal_col_sq)), true, 1, c3.scale(&rat(1, 2)));
        }
    }
    t.finish()
}

/// Sum of the five displayed case formulas.
pub fn phi_case_form_total(n: usize, jet: &JJet) -> Result<PiVolScalar, FormsError> {
    let mut q = BigRational::from_integer(0.into());
    for case in crate::pipeline::CaseId::ALL {
        q += &phi_case_form(case, n, jet)?.q;
    }
    Ok(PiVolScalar { q })
}

/// The combined nine-constant display for the full boundary density.
pub fn phi_d_form(n: usize, jet: &JJet) -> Result<PiVolScalar, FormsError> {
    check_n(n)?;
    let s = jet_scalars(jet);
    let hp = &jet.hprime;
    let c = |name: &str| eval_constant(name, n);
    let mut t = TermBuilder::new(n);
    t.add(&hp.clone(), false, 2, c("D0")?);
    t.add(&s.mixed_da_normal, false, 0, c("D1")?);
    t.add(&s.mixed_da_normal, false, 1, c("D2")?);
    t.add(&(hp * &s.tan_tan_sq), false, 1, c("D3")?);
    let d4 = c("D4")?;
    t.add(&(hp * &s.normal_row_tan_sq), false, 0, d4.clone());
    t.add(&(hp * &s.normal_row_tan_sq), false, 1, c("D5")?);
    t.add(&(hp * &s.diag_cross), false, 0, -&d4);
    t.add(&(hp * &s.diag_cross), false, 1, c("D6")?);
    t.add(&s.nabla_tangential_contraction, false, 1, -&c("D7")?);
    t.add(&s.nabla_tangential_contraction, false, 1, c("D8")?);
    t.finish()
}

/// The final four-term closed form in `h'(0)`, the two frame-norm scalars,
/// and the tangential ∇J contraction; coefficient of `π · Vol(S^{n-2})`.
pub fn phi_final_form(n: usize, jet: &JJet) -> Result<PiVolScalar, FormsError> {
    check_n(n)?;
    let s = jet_scalars(jet);
    let hp = &jet.hprime;
    let m = n as i64;
    let h = (n / 2) as u64;
    let tr_id = pow2(m / 2);
    let t1 = -(hp
        * &(rat_int(m * (m * m * m * m - 5 * m * m * m - 16 * m * m + 68 * m - 48))
            * pow2(-4 - m)
            * factorial((n - 3) as u64)
            / (factorial(h + 2) * factorial(h))));
    let t2 = hp
        * &s.tan_tan_sq
        * rat_int(m * (m * m - 8 * m + 12))
        * pow2(-3 - m)
        * factorial((n - 3) as u64)
        / (factorial(h + 1) * factorial(h));
    let t3 = hp
        * &s.normal_row_tan_sq
        * rat(-2 * m * m + 7 * m - 2, m + 2)
        * pow2(-m)
        * factorial((n - 3) as u64)
        / (factorial(h) * factorial(h - 2));
    let t4 = -(&s.nabla_tangential_contraction
        * rat_int(m * m - 8 * m + 12)
        * pow2(-1 - m)
        * factorial((n - 2) as u64)
        / (factorial(h + 1) * factorial(h - 1)));
    Ok(PiVolScalar { q: tr_id * (t1 + t2 + t3 + t4) })
}

/// The geometric boundary integrand of the main theorem: extrinsic curvature
/// and frame angles substituted for the raw jet scalars; coefficient of
/// `π · Vol(S^{n-2})`.
pub fn theorem_boundary_integrand(n: usize, jet: &JJet) -> Result<PiVolScalar, FormsError> {
    check_n(n)?;
    let s = jet_scalars(jet);
    let m = n as i64;
    let h = (n / 2) as u64;
    let k = rat(-(m - 1), 2) * &jet.hprime;
    let (t1, t2, t3) = theorem_bracket_terms(n, jet)?;
    let t4 = rat_int(m * m - 8 * m + 12) * factorial((n - 2) as u64)
        / (factorial(h + 1) * factorial(h - 1));
    let bracket = pow2(2 - m / 2) * &k * (t1 + t2 - t3)
        - pow2(-1 - m / 2) * &s.nabla_tangential_contraction * t4;
    Ok(PiVolScalar { q: bracket })
}

/// The three terms inside the extrinsic-curvature bracket of the theorem
/// integrand, as coefficients of π: the mean-curvature weight, the
/// frame-angle sum weight, and the normal-angle weight. Their alternating
/// sum is the factor multiplying `2^{(4-n)/2} K`.
pub fn theorem_bracket_terms(
    n: usize,
    jet: &JJet,
) -> Result<(BigRational, BigRational, BigRational), FormsError> {
    check_n(n)?;
    let m = n as i64;
    let h = (n / 2) as u64;
    let mut sum_jin_sq = BigRational::from_integer(0.into());
    for i in 0..n {
        sum_jin_sq += jet.a.get(i, n - 1) * jet.a.get(i, n - 1);
    }
    let jnn_sq = jet.a.get(n - 1, n - 1) * jet.a.get(n - 1, n - 1);
    let t1 = rat((m - 2) * (m - 2), m * m + m - 2) * factorial((n - 3) as u64)
        / (factorial(h) * factorial(h - 2));
    let t2 = sum_jin_sq
        * rat(m * (m * m - 8 * m + 12), 8 * (m - 1))
        * factorial((n - 3) as u64)
        / (factorial(h + 1) * factorial(h));
    let t3 = jnn_sq
        * rat(m * m - 3 * m - 2, m * m + m - 2)
        * factorial((n - 3) as u64)
        / (factorial(h) * factorial(h - 2));
    Ok((t1, t2, t3))
}

/// User-supplied interior curvature invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteriorInvariants {
    pub rjj: BigRational,
    pub g1: BigRational,
    pub g2: BigRational,
    pub g3: BigRational,
    pub g4: BigRational,
    pub g5: BigRational,
    pub s: BigRational,
}

impl InteriorInvariants {
    pub fn zero() -> Self {
        let z = BigRational::from_integer(0.into());
        InteriorInvariants {
            rjj: z.clone(),
            g1: z.clone(),
            g2: z.clone(),
            g3: z.clone(),
            g4: z.clone(),
            g5: z.clone(),
            s: z,
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        let get = |key: &str| -> Result<BigRational, String> {
            let s = v
                .get(key)
                .and_then(|x| x.as_str())
                .ok_or_else(|| format!("missing or non-string field {key:?}"))?;
            crate::scalar::parse_rational(s)
        };
        Ok(InteriorInvariants {
            rjj: get("RJJ")?,
            g1: get("G1")?,
            g2: get("G2")?,
            g3: get("G3")?,
            g4: get("G4")?,
            g5: get("G5")?,
            s: get("s")?,
        })
    }
}

/// Interior density: the scalar bracket times `2^{n/2} (n-2)/((n/2-1)!)`,
/// as the exact coefficient of `π^{n/2}` per unit volume.
pub fn interior_integrand(inv: &InteriorInvariants, n: usize) -> Result<BigRational, FormsError> {
    check_n(n)?;
    let quarter = rat(1, 4);
    let half = rat(1, 2);
    let bracket = &quarter * &inv.rjj - &half * &inv.g1 - &half * &inv.g2 - &quarter * &inv.g3
        - &quarter * &inv.g4
        + &quarter * &inv.g5
        - rat(5, 12) * &inv.s;
    let pref = pow2(n as i64 / 2) * rat_int(n as i64 - 2) / factorial((n / 2 - 1) as u64);
    Ok(pref * bracket)
}

/// Hard identities among constants: the four a-case combinations as exact
/// rational-function identities over the common denominator, plus the
/// aliasing of the normal-row constant between the b-case and the combined
/// form; returns the list of failures.
pub fn combination_identity_failures(n: usize) -> Result<Vec<String>, FormsError> {
    let mut failures = Vec::new();
    // As functions over (ξₙ+i)^{n/2+1}: lift the lower-order side.
    for (sum, a, b) in [("A11", "A3", "A7"), ("A12", "A4", "A9"), ("A13", "A5", "A8"), ("A14", "A6", "A10")] {
        let fs = constant_spec(sum, n)?;
        let fa = constant_spec(a, n)?;
        let fb = constant_spec(b, n)?;
        if fs.function() != fa.function().add(&fb.function()) {
            failures.push(format!("{sum} != {a} + {b} as rational functions at n = {n}"));
        }
        let va = eval_constant(a, n)?;
        let vb = eval_constant(b, n)?;
        let vs = eval_constant(sum, n)?;
        if vs != &va + &vb {
            failures.push(format!("{sum} != {a} + {b} as bracket values at n = {n}"));
        }
    }
    if eval_constant("D4", n)? != eval_constant("B1", n)? {
        failures.push(format!("D4 != B1 at n = {n}"));
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num::Zero;

    fn gr(p: i64, q: i64) -> GaussianRational {
        GaussianRational::new(rat(0, 1), rat(p, q))
    }

    #[test]
    fn frozen_constant_values_n6() {
        // Independent symbolic-differentiation oracle values, fixed before
        // the build.
        let cases = [
            ("A0", gr(3, 16)),
            ("A1", gr(-15, 8)),
            ("A2", gr(15, 8)),
            ("A7", gr(15, 32)),
            ("B0", gr(-15, 8)),
            ("B1", gr(-3, 32)),
            ("C5", gr(-735, 64)),
            ("D0", gr(0, 1)),
            ("D2", gr(-3, 4)),
            ("D8", gr(-3, 4)),
        ];
        for (name, want) in cases {
            assert_eq!(eval_constant(name, 6).unwrap(), want, "constant {name}");
        }
    }

    #[test]
    fn frozen_constant_values_n8_n10() {
        let cases8 = [
            ("A0", gr(15, 32)),
            ("A5", gr(2835, 64)),
            ("B2", gr(-945, 16)),
            ("C0", gr(15, 16)),
            ("D5", gr(195, 32)),
        ];
        for (name, want) in cases8 {
            assert_eq!(eval_constant(name, 8).unwrap(), want, "constant {name} at n=8");
        }
        let cases10 = [("A8", gr(-51975, 64)), ("B4", gr(55755, 32)), ("C6", gr(8505, 256))];
        for (name, want) in cases10 {
            assert_eq!(eval_constant(name, 10).unwrap(), want, "constant {name} at n=10");
        }
    }

    #[test]
    fn zero_numerator_evaluates_to_zero() {
        let spec = ConstantSpec {
            name: "test",
            numerator: XiPoly::zero(),
            denominator: rat(8, 1),
            pole_order: 3,
            derivative_order: 4,
        };
        assert!(spec.function().derivative_at_plus_i(4).unwrap().is_zero());
    }

    #[test]
    fn unknown_name_is_an_error() {
        assert!(matches!(eval_constant("A15", 6), Err(FormsError::UnknownConstant(_))));
        assert!(matches!(eval_constant("A0", 7), Err(FormsError::BadDimension(7))));
        assert!(matches!(eval_constant("A0", 4), Err(FormsError::BadDimension(4))));
    }

    #[test]
    fn combination_identities_hold() {
        for n in [6usize, 8, 10, 12, 14, 16] {
            assert!(combination_identity_failures(n).unwrap().is_empty());
        }
    }

    #[test]
    fn interior_examples() {
        let mut inv = InteriorInvariants::zero();
        assert!(interior_integrand(&inv, 8).unwrap().is_zero());
        // constructed cancellation: RJJ = 5s/3 with all G zero
        inv.s = rat(3, 1);
        inv.rjj = rat(5, 1);
        assert!(interior_integrand(&inv, 10).unwrap().is_zero());
        // RJJ-only at n = 6: 2^3 · 1/4 · 4 / 2! = 4 (coefficient of π³)
        let mut inv2 = InteriorInvariants::zero();
        inv2.rjj = rat(1, 1);
        assert_eq!(interior_integrand(&inv2, 6).unwrap(), rat(4, 1));
    }

    #[test]
    fn interior_json_parsing() {
        let v: serde_json::Value = serde_json::json!({
            "RJJ": "5/3", "G1": "0", "G2": "1", "G3": "0", "G4": "-2/7", "G5": "0", "s": "1"
        });
        let inv = InteriorInvariants::from_json(&v).unwrap();
        assert_eq!(inv.g4, rat(-2, 7));
        assert!(InteriorInvariants::from_json(&serde_json::json!({"RJJ": "x"})).is_err());
    }
}

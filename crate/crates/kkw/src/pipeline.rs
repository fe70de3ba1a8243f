//! The five boundary cases: trace, sphere integration, π⁺ projection, ξₙ
//! residue integration and the combinatorial prefactors.
//!
//! Each case pairs a π⁺-projected derivative pattern of a symbol of the
//! inverse operator with a derivative pattern of a symbol of the (3-n)-power,
//! under the index constraint `r + l - k - |α| - j - 1 = -n`. The prefactor
//! `(-i)^{|α|+j+k+1} / (α! (j+k+1)!)` is computed from the case data rather
//! than hard-coded. Every case value is an exact rational multiple of
//! `π · Vol(S^{n-2})`.

use crate::jets::JJet;
use crate::ratfun::{PoleRational, RatFunError};
use crate::scalar::{factorial, BigRational, GaussianRational};
use crate::sphere::SphereError;
use crate::symbols::{
    d_x, d_xi, d_xin, d_xin_value, pi_plus, restrict, value, RPoly, RestrictedSymbol,
    SymbolContext,
};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("ξₙ integrand failed in case {case}: {source}")]
    Integrand {
        case: CaseId,
        #[source]
        source: RatFunError,
    },
    #[error("π⁺ projection failed in case {case}: {source}")]
    Projection {
        case: CaseId,
        #[source]
        source: RatFunError,
    },
    #[error("sphere integration failed in case {case}: {source}")]
    Sphere {
        case: CaseId,
        #[source]
        source: SphereError,
    },
    #[error("case {case} produced a non-real density {value}")]
    NonRealResult { case: CaseId, value: GaussianRational },
    #[error(transparent)]
    Jet(#[from] crate::jets::JetError),
}

/// The five boundary cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum CaseId {
    #[serde(rename = "a-I")]
    AI,
    #[serde(rename = "a-II")]
    AII,
    #[serde(rename = "a-III")]
    AIII,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "c")]
    C,
}

impl CaseId {
    pub const ALL: [CaseId; 5] = [CaseId::AI, CaseId::AII, CaseId::AIII, CaseId::B, CaseId::C];

    /// `(r, l, k, j, |α|)` for the case, with `l` written relative to n as
    /// `l = -n + l_off`.
    pub fn indices(self, n: usize) -> CaseIndices {
        let n = n as i64;
        match self {
            CaseId::AI => CaseIndices { r: -1, l: -n + 3, k: 0, j: 0, alpha: 1 },
            CaseId::AII => CaseIndices { r: -1, l: -n + 3, k: 0, j: 1, alpha: 0 },
            CaseId::AIII => CaseIndices { r: -1, l: -n + 3, k: 1, j: 0, alpha: 0 },
            CaseId::B => CaseIndices { r: -1, l: -n + 2, k: 0, j: 0, alpha: 0 },
            CaseId::C => CaseIndices { r: -2, l: -n + 3, k: 0, j: 0, alpha: 0 },
        }
    }
}

impl std::fmt::Display for CaseId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaseId::AI => "a-I",
            CaseId::AII => "a-II",
            CaseId::AIII => "a-III",
            CaseId::B => "b",
            CaseId::C => "c",
        };
        f.write_str(s)
    }
}

/// Index data of one case of the sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CaseIndices {
    pub r: i64,
    pub l: i64,
    pub k: u32,
    pub j: u32,
    pub alpha: u32,
}

impl CaseIndices {
    /// The case lives on the degree surface `r + l - k - |α| - j - 1 = -n`.
    pub fn degree_balance(&self) -> i64 {
        self.r + self.l - self.k as i64 - self.alpha as i64 - self.j as i64 - 1
    }

    /// `(-i)^{|α|+j+k+1} / (α! (j+k+1)!)`; here |α| <= 1 so α! = 1.
    pub fn prefactor(&self) -> GaussianRational {
        let e = (self.alpha + self.j + self.k + 1) as i64;
        let minus_i = -&GaussianRational::i();
        let pow = minus_i.int_pow(e).expect("nonzero base");
        pow.scale(&factorial((self.j + self.k + 1) as u64).recip())
    }
}

/// An exact multiple of `π · Vol(S^{n-2})` per unit boundary volume.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiVolScalar {
    pub q: BigRational,
}

impl PiVolScalar {
    pub fn zero() -> Self {
        PiVolScalar { q: BigRational::from_integer(0.into()) }
    }

    pub fn is_zero(&self) -> bool {
        use num::Zero;
        self.q.is_zero()
    }

    fn from_exact(case: CaseId, value: GaussianRational) -> Result<Self, PipelineError> {
        if !value.is_real() {
            return Err(PipelineError::NonRealResult { case, value });
        }
        Ok(PiVolScalar { q: value.re().clone() })
    }
}

/// Full record of one executed case.
#[derive(Clone, Debug)]
pub struct CaseReport {
    pub case: CaseId,
    pub indices: CaseIndices,
    pub prefactor: GaussianRational,
    /// Scalar trace polynomial in ξ′ over ξₙ-rational functions, before
    /// sphere integration (summed over the tangential index for case a-I).
    pub trace_poly: RPoly,
    /// ξₙ-integrand after sphere integration, as coefficient of Vol(S^{n-2}).
    pub post_sphere: PoleRational,
    /// Number of ξ′-monomials annihilated by odd sphere moments.
    pub odd_monomials_killed: usize,
    pub value: PiVolScalar,
}

fn pi_plus_in(case: CaseId, s: &RestrictedSymbol) -> Result<RestrictedSymbol, PipelineError> {
    pi_plus(s).map_err(|source| PipelineError::Projection { case, source })
}

/// Execute one boundary case for the given jet.
pub fn phi_case(case: CaseId, jet: &JJet) -> Result<CaseReport, PipelineError> {
    jet.validate()?;
    let ctx = SymbolContext::new(jet);
    let n = ctx.n;
    let indices = case.indices(n);
    debug_assert_eq!(indices.degree_balance(), -(n as i64));
    let prefactor = indices.prefactor();

    // Build the scalar trace polynomial tr[op1 × op2] for the case.
    let trace_poly: RPoly = match case {
        CaseId::AI => {
            // Σ_{i<n} tr[∂_{ξᵢ} π⁺ σ₋₁ × ∂_{xᵢ} ∂_{ξₙ} σ₋ₙ₊₃]
            let sm1 = ctx.sigma_m1_dj_inv();
            let smn3_dxin = d_xin(&ctx.sigma_mn3());
            let mut acc = RPoly::zero();
            for i in 1..n {
                let op1 = pi_plus_in(case, &restrict(&value(&d_xi(&sm1, i as u8))))?;
                let op2 = restrict(&d_x(&smn3_dxin, i as u8));
                let t = op1.trace_of_product(&op2).expect("same dimension");
                acc.add_assign(&t);
            }
            acc
        }
        CaseId::AII => {
            // tr[∂_{xₙ} π⁺ σ₋₁ × ∂²_{ξₙ} σ₋ₙ₊₃]
            let op1 = pi_plus_in(case, &restrict(&d_x(&ctx.sigma_m1_dj_inv(), n as u8)))?;
            let op2 = restrict(&d_xin_value(&d_xin_value(&value(&ctx.sigma_mn3()))));
            op1.trace_of_product(&op2).expect("same dimension")
        }
        CaseId::AIII => {
            // tr[∂_{ξₙ} π⁺ σ₋₁ × ∂_{ξₙ} ∂_{xₙ} σ₋ₙ₊₃]
            let op1 =
                pi_plus_in(case, &restrict(&d_xin_value(&value(&ctx.sigma_m1_dj_inv()))))?;
            let op2 = restrict(&d_xin_value(&d_x(&ctx.sigma_mn3(), n as u8)));
            op1.trace_of_product(&op2).expect("same dimension")
        }
        CaseId::B => {
            // tr[π⁺ σ₋₁ × ∂_{ξₙ} σ₋ₙ₊₂]
            let op1 = pi_plus_in(case, &restrict(&value(&ctx.sigma_m1_dj_inv())))?;
            let op2 = restrict(&d_xin_value(&ctx.sigma_mn2()));
            op1.trace_of_product(&op2).expect("same dimension")
        }
        CaseId::C => {
            // tr[π⁺ σ₋₂ × ∂_{ξₙ} σ₋ₙ₊₃]
            let op1 = pi_plus_in(case, &restrict(&ctx.sigma_m2_dj_inv()))?;
            let op2 = restrict(&d_xin_value(&value(&ctx.sigma_mn3())));
            op1.trace_of_product(&op2).expect("same dimension")
        }
    };

    let (post_sphere, odd_monomials_killed) = trace_poly
        .sphere_integrate(n)
        .map_err(|source| PipelineError::Sphere { case, source })?;

    // ∫ dξₙ as a multiple of π, then the case prefactor.
    let r = post_sphere
        .integrate_real_line()
        .map_err(|source| PipelineError::Integrand { case, source })?;
    let value = PiVolScalar::from_exact(case, &prefactor * &r)?;

    Ok(CaseReport {
        case,
        indices,
        prefactor,
        trace_poly,
        post_sphere,
        odd_monomials_killed,
        value,
    })
}

/// Execute all five cases and sum them.
pub fn phi_total(jet: &JJet) -> Result<(PiVolScalar, Vec<CaseReport>), PipelineError> {
    let mut reports = Vec::with_capacity(5);
    let mut q = BigRational::from_integer(0.into());
    for case in CaseId::ALL {
        let rep = phi_case(case, jet)?;
        q += &rep.value.q;
        reports.push(rep);
    }
    Ok((PiVolScalar { q }, reports))
}

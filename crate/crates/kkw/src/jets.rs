//! First-order jets of the almost-product structure at a boundary point.
//!
//! A [`JJet`] is the full input of the boundary computation: the structure
//! matrix `A = (a_h^p)` at the base point, its first spatial derivatives
//! `DA[j] = ∂_{x_j} A`, and the normal metric derivative `h'(0)`. The matrix
//! is symmetric, orthogonal and involutive; each `DA[j]` is symmetric and
//! anticommutes with `A`. Those constraints are everything the five boundary
//! cases consume.

use crate::scalar::{parse_rational, rat, rational_string, BigRational};
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JetError {
    #[error("jet dimension must be even and >= 6, got {0}")]
    BadDimension(usize),
    #[error("matrix is not {0}x{0}")]
    BadShape(usize),
    #[error("A is not symmetric at entry ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("A^2 != I at entry ({0}, {1})")]
    NotInvolutive(usize, usize),
    #[error("DA[{0}] is not symmetric at entry ({1}, {2})")]
    DerivativeNotSymmetric(usize, usize, usize),
    #[error("DA[{0}] does not anticommute with A at entry ({1}, {2})")]
    DerivativeNotAnticommuting(usize, usize, usize),
    #[error("jet file field {0}: {1}")]
    Parse(String, String),
}

/// Dense square matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMat {
    n: usize,
    a: Vec<BigRational>,
}

impl RatMat {
    pub fn zeros(n: usize) -> Self {
        RatMat { n, a: vec![BigRational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.a[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.a[r * self.n + c] = v;
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let a = self.a.iter().zip(rhs.a.iter()).map(|(x, y)| x + y).collect();
        RatMat { n: self.n, a }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let a = self.a.iter().zip(rhs.a.iter()).map(|(x, y)| x - y).collect();
        RatMat { n: self.n, a }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let v = self.get(r, k);
                if v.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let cur = out.get(r, c) + &(v * rhs.get(k, c));
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }
}

impl fmt::Debug for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Jet-generation profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JetProfile {
    /// `A = diag(±1)`, derivative support where the signs disagree.
    Diagonal,
    /// A diagonal instance conjugated by an exact rational rotation.
    Conjugated,
}

impl std::str::FromStr for JetProfile {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "diagonal" => Ok(JetProfile::Diagonal),
            "conjugated" => Ok(JetProfile::Conjugated),
            other => Err(format!("unknown profile {other:?} (expected diagonal|conjugated)")),
        }
    }
}

/// Exact first-order jet of the almost-product structure at the base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JJet {
    pub n: usize,
    /// `A[h][p] = a_h^p` at the base point; symmetric with `A² = I`.
    pub a: RatMat,
    /// `DA[j][h][p] = ∂_{x_j} a_h^p` at the base point (j is 0-based here).
    pub da: Vec<RatMat>,
    /// Normal derivative `h'(0)` of the collar metric factor.
    pub hprime: BigRational,
}

impl JJet {
    /// The identity-structure jet (A = I forces DA = 0).
    pub fn identity(n: usize, hprime: BigRational) -> Self {
        JJet { n, a: RatMat::identity(n), da: vec![RatMat::zeros(n); n], hprime }
    }

    /// Entry `a_h^p` with 1-based indices.
    pub fn a_entry(&self, h: usize, p: usize) -> &BigRational {
        self.a.get(h - 1, p - 1)
    }

    /// Entry `∂_{x_j} a_h^p` with 1-based indices.
    pub fn da_entry(&self, j: usize, h: usize, p: usize) -> &BigRational {
        self.da[j - 1].get(h - 1, p - 1)
    }

    pub fn is_trivial(&self) -> bool {
        self.hprime.is_zero() && self.da.iter().all(|m| m.is_zero())
    }

    /// Check every structural invariant exactly.
    pub fn validate(&self) -> Result<(), JetError> {
        let n = self.n;
        if n < 6 || n % 2 != 0 {
            return Err(JetError::BadDimension(n));
        }
        if self.a.n() != n || self.da.len() != n || self.da.iter().any(|m| m.n() != n) {
            return Err(JetError::BadShape(n));
        }
        for r in 0..n {
            for c in 0..n {
                if self.a.get(r, c) != self.a.get(c, r) {
                    return Err(JetError::NotSymmetric(r, c));
                }
            }
        }
        let sq = self.a.mul(&self.a);
        let id = RatMat::identity(n);
        for r in 0..n {
            for c in 0..n {
                if sq.get(r, c) != id.get(r, c) {
                    return Err(JetError::NotInvolutive(r, c));
                }
            }
        }
        for (j, d) in self.da.iter().enumerate() {
            for r in 0..n {
                for c in 0..n {
                    if d.get(r, c) != d.get(c, r) {
                        return Err(JetError::DerivativeNotSymmetric(j, r, c));
                    }
                }
            }
            let anti = d.mul(&self.a).add(&self.a.mul(d));
            for r in 0..n {
                for c in 0..n {
                    if !anti.get(r, c).is_zero() {
                        return Err(JetError::DerivativeNotAnticommuting(j, r, c));
                    }
                }
            }
        }
        Ok(())
    }
}

fn small_rational(rng: &mut ChaCha8Rng) -> BigRational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

/// Deterministic random jet for the given `(n, seed, profile)`.
pub fn random_jjet(n: usize, seed: u64, profile: JetProfile) -> Result<JJet, JetError> {
    if n < 6 || n % 2 != 0 {
        return Err(JetError::BadDimension(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eps: Vec<i64> = (0..n).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect();
    let mut a = RatMat::zeros(n);
    for i in 0..n {
        a.set(i, i, rat(eps[i], 1));
    }
    let mut da = Vec::with_capacity(n);
    for _ in 0..n {
        let mut m = RatMat::zeros(n);
        for i in 0..n {
            for k in (i + 1)..n {
                if eps[i] == -eps[k] {
                    let v = small_rational(&mut rng);
                    m.set(i, k, v.clone());
                    m.set(k, i, v);
                }
            }
        }
        da.push(m);
    }
    let hprime = small_rational(&mut rng);
    let mut jet = JJet { n, a, da, hprime };

    if profile == JetProfile::Conjugated {
        // Exact rational orthogonal conjugation from Pythagorean-triple
        // Givens rotations; preserves all jet invariants.
        let triples = [(3i64, 4, 5), (5, 12, 13), (8, 15, 17)];
        let mut q = RatMat::identity(n);
        for _ in 0..3 {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i == j {
                continue;
            }
            let (x, y, z) = triples[rng.gen_range(0..triples.len())];
            let mut g = RatMat::identity(n);
            g.set(i, i, rat(x, z));
            g.set(j, j, rat(x, z));
            g.set(i, j, rat(-y, z));
            g.set(j, i, rat(y, z));
            q = q.mul(&g);
        }
        let qt = q.transpose();
        jet.a = q.mul(&jet.a).mul(&qt);
        jet.da = jet.da.iter().map(|m| q.mul(m).mul(&qt)).collect();
    }

    debug_assert!(jet.validate().is_ok());
    Ok(jet)
}

/// Connection data at the base point induced by the collar metric.
#[derive(Clone, PartialEq, Eq)]
pub struct ConnectionJet {
    pub n: usize,
    /// `omega[i][s][t] = ω_{s,t}(e_{i+1})`; antisymmetric in (s, t).
    pub omega: Vec<RatMat>,
    /// Contracted Christoffel values `Γ^k`: zero below the normal index,
    /// `(n-1) h'(0) / 2` at it.
    pub gamma_contracted: Vec<BigRational>,
    hprime: BigRational,
}

impl ConnectionJet {
    /// The nonzero connection tables scaled by `h'(0)`.
    pub fn new(hprime: &BigRational, n: usize) -> Self {
        let half = rat(1, 2) * hprime;
        let mut omega = Vec::with_capacity(n);
        for i in 0..n {
            let mut m = RatMat::zeros(n);
            if i < n - 1 {
                m.set(n - 1, i, half.clone());
                m.set(i, n - 1, -half.clone());
            }
            omega.push(m);
        }
        let mut gamma_contracted = vec![BigRational::zero(); n];
        gamma_contracted[n - 1] = rat((n - 1) as i64, 2) * hprime;
        ConnectionJet { n, omega, gamma_contracted, hprime: hprime.clone() }
    }

    /// Christoffel symbol `Γ^k_{st}` at the base point, 1-based indices.
    pub fn christoffel(&self, k: usize, s: usize, t: usize) -> BigRational {
        let n = self.n;
        let half = rat(1, 2) * &self.hprime;
        if k == n && s == t && s < n {
            half
        } else if k < n && ((s == n && t == k) || (s == k && t == n)) {
            -half
        } else {
            BigRational::zero()
        }
    }

    /// Trace of the second fundamental form, `K(x₀) = -Σ_{i<n} Γ^n_{ii}`.
    pub fn extrinsic_curvature_trace(&self) -> BigRational {
        let mut acc = BigRational::zero();
        for i in 1..self.n {
            acc -= self.christoffel(self.n, i, i);
        }
        acc
    }
}

/// `N_α[γ][β] = g((∇_{e_α}J) e_β, e_γ)` at the base point, as
/// `N_α = DA[α] + [ω_α, A]`; the index convention is pinned by the
/// vanishing and sign identities checked in the test suite.
pub fn nabla_j(jet: &JJet, alpha: usize) -> RatMat {
    let conn = ConnectionJet::new(&jet.hprime, jet.n);
    let om = &conn.omega[alpha - 1];
    jet.da[alpha - 1].add(&om.mul(&jet.a)).sub(&jet.a.mul(om))
}

// ---- jet-derived scalar contractions used by the closed forms ----

/// The scalar invariants of a jet consumed by the displayed closed forms.
/// All sums run over 1-based frame indices; `n` marks the normal direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetScalars {
    /// Σ_{h≤n, i<n} a_h^i ∂_{x_i}(a_h^n)
    pub mixed_da_normal: BigRational,
    /// Σ_{h≤n, i<n} a_h^n ∂_{x_i}(a_h^i)
    pub normal_da_tangential: BigRational,
    /// Σ_{h,i<n} (a_h^i)²
    pub tan_tan_sq: BigRational,
    /// Σ_{i<n} (a_n^i)²
    pub normal_row_tan_sq: BigRational,
    /// Σ_{h≤n, i<n} (a_h^i)²
    pub all_rows_tan_sq: BigRational,
    /// Σ_{h≤n} (a_h^n)²
    pub normal_col_sq: BigRational,
    /// Σ_{i<n} a_i^i a_n^n
    pub diag_cross: BigRational,
    /// Σ_{l,j≤n} a_l^j ∂_{x_j}(a_l^n)
    pub mixed_da_normal_all: BigRational,
    /// Σ_{α≤n} g(J(dx_α), (∇_{e_α}J) e_n)
    pub nabla_full_contraction: BigRational,
    /// Σ_{i<n} g(J(dx_i), (∇_{e_n}J) e_i)
    pub nabla_normal_direction: BigRational,
    /// Σ_{i<n} g(J(dx_n), (∇_{e_i}J) e_i)
    pub nabla_divergence_normal: BigRational,
    /// Σ_{i<n} g(J(e_i), (∇_{e_i}J) e_n)
    pub nabla_tangential_contraction: BigRational,
}

pub fn jet_scalars(jet: &JJet) -> JetScalars {
    let n = jet.n;
    let nm: Vec<RatMat> = (1..=n).map(|al| nabla_j(jet, al)).collect();
    let a = &jet.a;
    let mut s = JetScalars {
        mixed_da_normal: BigRational::zero(),
        normal_da_tangential: BigRational::zero(),
        tan_tan_sq: BigRational::zero(),
        normal_row_tan_sq: BigRational::zero(),
        all_rows_tan_sq: BigRational::zero(),
        normal_col_sq: BigRational::zero(),
        diag_cross: BigRational::zero(),
        mixed_da_normal_all: BigRational::zero(),
        nabla_full_contraction: BigRational::zero(),
        nabla_normal_direction: BigRational::zero(),
        nabla_divergence_normal: BigRational::zero(),
        nabla_tangential_contraction: BigRational::zero(),
    };
    for h in 0..n {
        for i in 0..n - 1 {
            s.mixed_da_normal += a.get(h, i) * jet.da[i].get(h, n - 1);
            s.normal_da_tangential += a.get(h, n - 1) * jet.da[i].get(h, i);
            s.all_rows_tan_sq += a.get(h, i) * a.get(h, i);
            if h < n - 1 {
                s.tan_tan_sq += a.get(h, i) * a.get(h, i);
            }
        }
        s.normal_col_sq += a.get(h, n - 1) * a.get(h, n - 1);
    }
    for i in 0..n - 1 {
        s.normal_row_tan_sq += a.get(n - 1, i) * a.get(n - 1, i);
        s.diag_cross += a.get(i, i) * a.get(n - 1, n - 1);
    }
    for l in 0..n {
        for j in 0..n {
            s.mixed_da_normal_all += a.get(l, j) * jet.da[j].get(l, n - 1);
        }
    }
    for al in 0..n {
        for g in 0..n {
            s.nabla_full_contraction += a.get(g, al) * nm[al].get(g, n - 1);
        }
    }
    for i in 0..n - 1 {
        for g in 0..n {
            s.nabla_normal_direction += a.get(g, i) * nm[n - 1].get(g, i);
            s.nabla_divergence_normal += a.get(g, n - 1) * nm[i].get(g, i);
            s.nabla_tangential_contraction += a.get(i, g) * nm[i].get(g, n - 1);
        }
    }
    s
}

// ---- JSON jet files ----

#[derive(Serialize, Deserialize)]
struct JetFile {
    n: usize,
    #[serde(rename = "A")]
    a: Vec<Vec<String>>,
    #[serde(rename = "DA")]
    da: Vec<Vec<Vec<String>>>,
    hprime: String,
}

fn mat_from_strings(n: usize, rows: &[Vec<String>], field: &str) -> Result<RatMat, JetError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(JetError::Parse(field.into(), format!("expected {n}x{n} matrix")));
    }
    let mut m = RatMat::zeros(n);
    for (r, row) in rows.iter().enumerate() {
        for (c, s) in row.iter().enumerate() {
            let v = parse_rational(s)
                .map_err(|e| JetError::Parse(format!("{field}[{r}][{c}]"), e))?;
            m.set(r, c, v);
        }
    }
    Ok(m)
}

fn mat_to_strings(m: &RatMat) -> Vec<Vec<String>> {
    (0..m.n())
        .map(|r| (0..m.n()).map(|c| rational_string(m.get(r, c))).collect())
        .collect()
}

pub fn jet_to_json(jet: &JJet) -> serde_json::Value {
    serde_json::to_value(JetFile {
        n: jet.n,
        a: mat_to_strings(&jet.a),
        da: jet.da.iter().map(mat_to_strings).collect(),
        hprime: rational_string(&jet.hprime),
    })
    .expect("jet serialization cannot fail")
}

pub fn jet_from_json(v: &serde_json::Value) -> Result<JJet, JetError> {
    let file: JetFile = serde_json::from_value(v.clone())
        .map_err(|e| JetError::Parse("jet".into(), e.to_string()))?;
    let n = file.n;
    if n < 6 || n % 2 != 0 {
        return Err(JetError::BadDimension(n));
    }
    if file.da.len() != n {
        return Err(JetError::Parse("DA".into(), format!("expected {n} matrices")));
    }
    let a = mat_from_strings(n, &file.a, "A")?;
    let mut da = Vec::with_capacity(n);
    for (j, rows) in file.da.iter().enumerate() {
        da.push(mat_from_strings(n, rows, &format!("DA[{j}]"))?);
    }
    let hprime = parse_rational(&file.hprime)
        .map_err(|e| JetError::Parse("hprime".into(), e))?;
    let jet = JJet { n, a, da, hprime };
    jet.validate()?;
    Ok(jet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    #[test]
    fn connection_tables() {
        let c = ConnectionJet::new(&rat_int(1), 6);
        // ω_{6,2}(e_2) = 1/2, ω_{2,6}(e_2) = -1/2
        assert_eq!(*c.omega[1].get(5, 1), rat(1, 2));
        assert_eq!(*c.omega[1].get(1, 5), rat(-1, 2));
        assert_eq!(c.gamma_contracted[5], rat(5, 2));
        assert_eq!(c.gamma_contracted[2], rat_int(0));
        assert_eq!(c.christoffel(6, 3, 3), rat(1, 2));
        assert_eq!(c.christoffel(3, 6, 3), rat(-1, 2));
        assert_eq!(c.christoffel(3, 3, 6), rat(-1, 2));
        assert_eq!(c.christoffel(4, 3, 3), rat_int(0));
        // K(x0) = -(n-1) h'(0) / 2
        assert_eq!(c.extrinsic_curvature_trace(), rat(-5, 2));
        let zero = ConnectionJet::new(&rat_int(0), 6);
        assert!(zero.omega.iter().all(|m| m.is_zero()));
        assert_eq!(zero.extrinsic_curvature_trace(), rat_int(0));
    }

    #[test]
    fn generated_jets_satisfy_invariants() {
        for n in [6usize, 8, 10] {
            for seed in 0..6u64 {
                for profile in [JetProfile::Diagonal, JetProfile::Conjugated] {
                    let jet = random_jjet(n, seed, profile).unwrap();
                    jet.validate().unwrap();
                }
            }
        }
    }

    #[test]
    fn seed_determinism() {
        let a = random_jjet(8, 17, JetProfile::Conjugated).unwrap();
        let b = random_jjet(8, 17, JetProfile::Conjugated).unwrap();
        assert_eq!(a, b);
        let c = random_jjet(8, 18, JetProfile::Conjugated).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn identity_jet_has_zero_derivatives() {
        let jet = JJet::identity(6, rat_int(1));
        jet.validate().unwrap();
        assert!(jet.da.iter().all(|m| m.is_zero()));
        // diagonal recipe with an all-plus sign vector has empty support
        for seed in 0..200u64 {
            let jet = random_jjet(6, seed, JetProfile::Diagonal).unwrap();
            if jet.a == RatMat::identity(6) {
                assert!(jet.da.iter().all(|m| m.is_zero()));
            }
        }
    }

    #[test]
    fn trivial_flags() {
        assert!(JJet::identity(6, rat_int(0)).is_trivial());
        assert!(!JJet::identity(6, rat_int(2)).is_trivial());
    }

    #[test]
    fn orthogonality_derivative_identities() {
        // Σ_h a_h^i ∂_{x_j}(a_h^i) = 0 and Σ_h a_h^n ∂_{x_j}(a_h^n) = 0.
        for profile in [JetProfile::Diagonal, JetProfile::Conjugated] {
            let jet = random_jjet(8, 3, profile).unwrap();
            let n = jet.n;
            for j in 0..n {
                for i in 0..n {
                    let mut acc = BigRational::zero();
                    for h in 0..n {
                        acc += jet.a.get(h, i) * jet.da[j].get(h, i);
                    }
                    assert!(acc.is_zero());
                }
            }
        }
    }

    #[test]
    fn frame_norm_substitution_identities() {
        // Σ_{ν≤n,i<n}(a_ν^i)² = n - 2Σ_{i≤n}⟨Je_i,e_n⟩² + ⟨Je_n,e_n⟩²
        // Σ_{i<n}(a_n^i)² = 1 - ⟨Je_n,e_n⟩²
        for profile in [JetProfile::Diagonal, JetProfile::Conjugated] {
            let jet = random_jjet(10, 11, profile).unwrap();
            let n = jet.n;
            let s = jet_scalars(&jet);
            let jnn_sq = jet.a.get(n - 1, n - 1) * jet.a.get(n - 1, n - 1);
            let mut sum_jin_sq = BigRational::zero();
            for i in 0..n {
                sum_jin_sq += jet.a.get(i, n - 1) * jet.a.get(i, n - 1);
            }
            assert_eq!(
                s.all_rows_tan_sq,
                rat_int(n as i64) - rat_int(2) * &sum_jin_sq + &jnn_sq
            );
            assert_eq!(s.normal_row_tan_sq, rat_int(1) - &jnn_sq);
        }
    }

    #[test]
    fn nabla_identities() {
        for (n, seed, profile) in
            [(6, 1, JetProfile::Diagonal), (8, 2, JetProfile::Conjugated), (10, 3, JetProfile::Diagonal)]
        {
            let jet = random_jjet(n, seed, profile).unwrap();
            let s = jet_scalars(&jet);
            // Σ_{i<n} g(Je_i, (∇_{e_n}J)e_i) = 0
            assert!(s.nabla_normal_direction.is_zero());
            // Σ_{i<n} g(J(dx_n), (∇_{e_i}J)e_i) = -Σ_{i<n} g(Je_i, (∇_{e_i}J)e_n)
            assert_eq!(s.nabla_divergence_normal, -s.nabla_tangential_contraction.clone());
            // full contraction reduces to the tangential one
            assert_eq!(s.nabla_full_contraction, s.nabla_tangential_contraction);
        }
    }

    #[test]
    fn nabla_vanishes_for_flat_data() {
        let jet = JJet::identity(6, rat_int(0));
        for al in 1..=6 {
            assert!(nabla_j(&jet, al).is_zero());
        }
        // A = I with nonzero h'(0): the commutator with I still vanishes
        let jet = JJet::identity(6, rat_int(3));
        for al in 1..=6 {
            assert!(nabla_j(&jet, al).is_zero());
        }
    }

    #[test]
    fn json_round_trip() {
        let jet = random_jjet(6, 5, JetProfile::Conjugated).unwrap();
        let v = jet_to_json(&jet);
        let back = jet_from_json(&v).unwrap();
        assert_eq!(jet, back);
    }

    #[test]
    fn json_rejects_invalid() {
        let jet = random_jjet(6, 5, JetProfile::Diagonal).unwrap();
        let mut v = jet_to_json(&jet);
        v["A"][0][1] = serde_json::Value::String("1/2".into());
        assert!(jet_from_json(&v).is_err());
        let mut v2 = jet_to_json(&jet);
        v2["hprime"] = serde_json::Value::String("not-a-number".into());
        assert!(matches!(jet_from_json(&v2), Err(JetError::Parse(f, _)) if f == "hprime"));
    }
}

//! Exact verification engine for the boundary term of the noncommutative
//! residue of a twisted Dirac operator on even-dimensional manifolds with
//! boundary.
//!
//! The crate re-executes the five-case boundary computation with exact
//! arithmetic (arbitrary-precision Gaussian rationals end to end), evaluates
//! every displayed closed form independently, and cross-checks the two routes.
//! All boundary densities are exact rational multiples of the common unit
//! `π · Vol(S^{n-2})`.
//!
//! Module map:
//! - [`scalar`]: rationals and Gaussian rationals.
//! - [`ratfun`]: rational functions of ξₙ with poles only at ±i; π⁺,
//!   residues, real-line integrals, high-order derivatives at +i.
//! - [`sphere`]: exact monomial moments over the unit sphere S^{n-2}.
//! - [`clifford`]: the Clifford algebra Cl(n) over a pluggable coefficient ring.
//! - [`jets`]: first-order jets of the almost-product structure at a boundary
//!   point, plus the boundary connection tables.
//! - [`symbols`]: Clifford-valued symbol expressions in (ξ′, u, ξₙ) with the
//!   normal-coordinate derivation rules and the restriction |ξ′| = 1.
//! - [`reference`]: transcribed expected forms of the intermediate expressions,
//!   used as cross-checks against the engine.
//! - [`pipeline`]: the five boundary cases (trace → sphere moments → residue).
//! - [`forms`]: the named residue constants and every displayed closed form.
//! - [`oracle`]: high-precision Cauchy-integral quadrature used as an
//!   independent check on the residue constants.
//! - [`verify`]: campaign runner producing deterministic reports.

pub mod clifford;
pub mod forms;
pub mod jets;
pub mod oracle;
pub mod pipeline;
pub mod ratfun;
pub mod reference;
pub mod scalar;
pub mod sphere;
pub mod symbols;
pub mod verify;

pub use scalar::{BigRational, GaussianRational};

//! Expected intermediate forms, transcribed term by term, against which the
//! engine's computed expressions are compared exactly.
//!
//! Everything here is restricted to |ξ′| = 1 and written directly over
//! [`PoleRational`] coefficients, independent of the symbol engine's
//! derivation machinery: these constructions only use the jet entries, the
//! ∇J matrices and explicit rational functions of ξₙ, so an exact match with
//! the engine validates the whole derivation route for a given jet.

use crate::clifford::Multivector;
use crate::jets::{nabla_j, JJet, RatMat};
use crate::ratfun::{PoleRational, XiPoly};
use crate::scalar::{rat, GaussianRational};
use num::Zero;
use crate::symbols::{RPoly, RestrictedSymbol, XiMono};

fn gi(p: i64, q: i64) -> GaussianRational {
    GaussianRational::new(rat(0, 1), rat(p, q))
}

fn gr(p: i64, q: i64) -> GaussianRational {
    GaussianRational::from_ratio(p, q)
}

/// `Σ cᵢ ξₙ^i / (ξₙ - i)^p` with q = 0.
fn upper(coeffs: Vec<GaussianRational>, p: u32) -> PoleRational {
    PoleRational::new(XiPoly::from_coeffs(coeffs), p, 0)
}

/// `Σ cᵢ ξₙ^i / (1 + ξₙ²)^k`.
fn both(coeffs: Vec<GaussianRational>, k: u32) -> PoleRational {
    PoleRational::new(XiPoly::from_coeffs(coeffs), k, k)
}

fn rp(c: PoleRational) -> RPoly {
    RPoly::constant(c)
}

fn rp_xi(i: usize, c: PoleRational) -> RPoly {
    let mut out = RPoly::zero();
    out.insert(XiMono::var(i as u8), c);
    out
}

fn rp_xi2(i: usize, q: usize, c: PoleRational) -> RPoly {
    let mut out = RPoly::zero();
    out.insert(XiMono::var(i as u8).mul(&XiMono::var(q as u8)), c);
    out
}

fn gen(n: usize, h: usize) -> RestrictedSymbol {
    Multivector::generator(n, h)
}

fn scaled(m: &RestrictedSymbol, c: &RPoly) -> RestrictedSymbol {
    m.scale(c)
}

fn a(jet: &JJet, h: usize, p: usize) -> GaussianRational {
    GaussianRational::from_rational(jet.a_entry(h, p).clone())
}

fn da(jet: &JJet, j: usize, h: usize, p: usize) -> GaussianRational {
    GaussianRational::from_rational(jet.da_entry(j, h, p).clone())
}

fn hp(jet: &JJet) -> GaussianRational {
    GaussianRational::from_rational(jet.hprime.clone())
}

/// Weight-bucket accumulator: constant-coefficient Clifford/ξ′ sums per
/// rational weight, scaled by the weight once at the end. Keeps the huge
/// index sums of the transcriptions cheap without reordering their terms.
struct WeightedSum {
    n: usize,
    buckets: Vec<(PoleRational, RestrictedSymbol)>,
}

impl WeightedSum {
    fn new(n: usize, weights: Vec<PoleRational>) -> Self {
        WeightedSum {
            n,
            buckets: weights.into_iter().map(|w| (w, RestrictedSymbol::zero(n))).collect(),
        }
    }

    /// Add `coeff · mono · blades` into bucket `w`.
    fn push(&mut self, w: usize, blades: &RestrictedSymbol, mono: XiMono, coeff: GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        let mut rp = RPoly::zero();
        rp.insert(mono, PoleRational::constant(coeff));
        self.buckets[w].1.add_assign(&blades.scale(&rp));
    }

    fn finish(self) -> RestrictedSymbol {
        let mut out = RestrictedSymbol::zero(self.n);
        for (w, acc) in self.buckets {
            out.add_assign(&acc.map(|rp| rp.scale(&w)));
        }
        out
    }
}

/// `c[(∇_{e_α}J)(ξ*)]` restricted: Clifford vector with coefficients linear
/// in (ξ′, ξₙ).
fn c_nabla_xistar(nm: &RatMat, n: usize) -> RestrictedSymbol {
    let mut out = RestrictedSymbol::zero(n);
    for gamma in 1..=n {
        let mut coeff = RPoly::zero();
        for b in 1..n {
            let v = nm.get(gamma - 1, b - 1);
            if !v.is_zero() {
                coeff.insert(
                    XiMono::var(b as u8),
                    PoleRational::constant(GaussianRational::from_rational(v.clone())),
                );
            }
        }
        let vn = nm.get(gamma - 1, n - 1);
        if !vn.is_zero() {
            coeff.insert(
                XiMono::one(),
                PoleRational::from_poly(XiPoly::monomial(
                    GaussianRational::from_rational(vn.clone()),
                    1,
                )),
            );
        }
        out.add_assign(&scaled(&gen(n, gamma), &coeff));
    }
    out
}

/// Expected `π⁺ ∂_{ξᵢ} σ₋₁` for a tangential index i < n: the three-term
/// projected derivative of the leading inverse symbol.
pub fn pi_plus_dxi_inverse_symbol(jet: &JJet, i: usize) -> RestrictedSymbol {
    let n = jet.n;
    let f1 = upper(vec![gr(1, 2)], 1);
    let f2 = upper(vec![gi(1, 1), gr(-1, 2)], 2); // (2i - ξₙ)/2
    let f3 = upper(vec![gr(-1, 2)], 2);
    let mut out = RestrictedSymbol::zero(n);
    for alpha in 1..=n {
        out.add_assign(&scaled(&gen(n, alpha), &rp(f1.scale(&a(jet, alpha, i)))));
    }
    for beta in 1..=n {
        for q in 1..n {
            out.add_assign(&scaled(
                &gen(n, beta),
                &rp_xi2(i, q, f2.scale(&a(jet, beta, q))),
            ));
        }
    }
    for gamma in 1..=n {
        out.add_assign(&scaled(
            &gen(n, gamma),
            &rp_xi(i, f3.scale(&a(jet, gamma, n))),
        ));
    }
    out
}

/// Expected `π⁺ ∂_{xₙ} σ₋₁`: the six-term projected normal derivative.
pub fn pi_plus_dxn_inverse_symbol(jet: &JJet) -> RestrictedSymbol {
    let n = jet.n;
    let h1 = upper(vec![gr(1, 2)], 1);
    let h2 = upper(vec![gi(1, 2)], 1);
    let h5 = upper(vec![gi(1, 2), gr(-1, 4)], 2); // (2i-ξₙ)/4
    let h6 = upper(vec![gr(-1, 4)], 2);
    let hpv = hp(jet);
    let half_hp = hpv.scale(&rat(1, 2));
    let mut out = RestrictedSymbol::zero(n);
    for h in 1..=n {
        for p in 1..n {
            out.add_assign(&scaled(
                &gen(n, h),
                &rp_xi(p, h1.scale(&da(jet, n, h, p))),
            ));
        }
        out.add_assign(&scaled(&gen(n, h), &rp(h2.scale(&da(jet, n, h, n)))));
    }
    for h in 1..n {
        for p in 1..n {
            out.add_assign(&scaled(
                &gen(n, h),
                &rp_xi(p, h1.scale(&(&a(jet, h, p) * &half_hp))),
            ));
        }
        out.add_assign(&scaled(
            &gen(n, h),
            &rp(h2.scale(&(&a(jet, h, n) * &half_hp))),
        ));
    }
    for h in 1..=n {
        for p in 1..n {
            out.add_assign(&scaled(
                &gen(n, h),
                &rp_xi(p, h5.scale(&(&a(jet, h, p) * &hpv))),
            ));
        }
        out.add_assign(&scaled(&gen(n, h), &rp(h6.scale(&(&a(jet, h, n) * &hpv)))));
    }
    out
}

/// Expected `π⁺ ∂_{ξₙ} σ₋₁`: the two-term projected ξₙ-derivative.
pub fn pi_plus_dxin_inverse_symbol(jet: &JJet) -> RestrictedSymbol {
    let n = jet.n;
    let f = upper(vec![gr(-1, 2)], 2);
    let fi = upper(vec![gi(-1, 2)], 2);
    let mut out = RestrictedSymbol::zero(n);
    for beta in 1..=n {
        for i in 1..n {
            out.add_assign(&scaled(&gen(n, beta), &rp_xi(i, f.scale(&a(jet, beta, i)))));
        }
        out.add_assign(&scaled(&gen(n, beta), &rp(fi.scale(&a(jet, beta, n)))));
    }
    out
}

/// Expected restricted `σ₋ₙ₊₂` of the (3-n)-power: the twelve-term display.
pub fn order_mn2_symbol(jet: &JJet) -> RestrictedSymbol {
    let n = jet.n;
    let m = n as i64;
    let h = (n / 2) as u32;
    let hpv = hp(jet);
    let half_hp = hpv.scale(&rat(1, 2));
    let nabla: Vec<RatMat> = (1..=n).map(|al| nabla_j(jet, al)).collect();
    let mut out = RestrictedSymbol::zero(n);

    // connection block: -h'/(4 (1+ξₙ²)^{n/2-1}) Σ a_ν^μ c(dx_μ)c(dxₙ)c(dx_ν)
    let t1 = both(vec![gr(-1, 4)], h - 1);
    for mu in 1..=n {
        for nu in 1..n {
            let blades = gen(n, mu).mul(&gen(n, n)).mul(&gen(n, nu));
            out.add_assign(&scaled(&blades, &rp(t1.scale(&(&a(jet, nu, mu) * &hpv)))));
        }
    }

    // Γ/σ scalar block against the leading symbol
    let t2 = both(vec![gr(-(m - 2), 4)], h);
    let t3 = both(vec![GaussianRational::zero(), gr(-(m - 2), 4)], h);
    for omega in 1..=n {
        for lam in 1..n {
            for k in 1..n {
                let blades = gen(n, k).mul(&gen(n, n)).mul(&gen(n, omega));
                out.add_assign(&scaled(
                    &blades,
                    &rp_xi2(k, lam, t2.scale(&(&a(jet, omega, lam) * &hpv))),
                ));
            }
        }
        for k in 1..n {
            let blades = gen(n, k).mul(&gen(n, n)).mul(&gen(n, omega));
            out.add_assign(&scaled(
                &blades,
                &rp_xi(k, t3.scale(&(&a(jet, omega, n) * &hpv))),
            ));
        }
    }

    // contracted-Γ and metric-variation multiples of the leading symbol
    let t4 = both(
        vec![
            GaussianRational::zero(),
            gr(2 * m * m - 5 * m + 2, 4),
            GaussianRational::zero(),
            gr(m * m - 3 * m + 2, 4),
        ],
        h + 1,
    );
    let t5 = both(
        vec![
            GaussianRational::zero(),
            GaussianRational::zero(),
            gr(2 * m * m - 5 * m + 2, 4),
            GaussianRational::zero(),
            gr(m * m - 3 * m + 2, 4),
        ],
        h + 1,
    );
    for omega in 1..=n {
        for lam in 1..n {
            out.add_assign(&scaled(
                &gen(n, omega),
                &rp_xi(lam, t4.scale(&(&a(jet, omega, lam) * &hpv))),
            ));
        }
        out.add_assign(&scaled(&gen(n, omega), &rp(t5.scale(&(&a(jet, omega, n) * &hpv)))));
    }

    // ∇J block
    let t6 = both(vec![gr(m - 2, 2)], h);
    let t7 = both(vec![GaussianRational::zero(), gr(m - 2, 2)], h);
    for alpha in 1..=n {
        let cn = c_nabla_xistar(&nabla[alpha - 1], n);
        for beta in 1..=n {
            for omega in 1..=n {
                let blades = gen(n, beta).mul(&cn).mul(&gen(n, omega));
                for lam in 1..n {
                    out.add_assign(&scaled(
                        &blades,
                        &rp_xi(
                            lam,
                            t6.scale(&(&a(jet, alpha, beta) * &a(jet, omega, lam))),
                        ),
                    ));
                }
                out.add_assign(&scaled(
                    &blades,
                    &rp(t7.scale(&(&a(jet, alpha, beta) * &a(jet, omega, n)))),
                ));
            }
        }
    }

    // derivative block from the leading-symbol composition
    let s0 = both(vec![gr(-(m - 2), 1)], h);
    let s1 = both(vec![GaussianRational::zero(), gr(-(m - 2), 1)], h);
    let s2 = both(
        vec![GaussianRational::zero(), GaussianRational::zero(), gr(-(m - 2), 1)],
        h,
    );
    for hh in 1..=n {
        for j in 1..n {
            for p in 1..n {
                out.add_assign(&scaled(
                    &gen(n, hh),
                    &rp_xi2(j, p, s0.scale(&da(jet, j, hh, p))),
                ));
            }
            out.add_assign(&scaled(&gen(n, hh), &rp_xi(j, s1.scale(&da(jet, j, hh, n)))));
        }
        for p in 1..n {
            out.add_assign(&scaled(&gen(n, hh), &rp_xi(p, s1.scale(&da(jet, n, hh, p)))));
        }
        out.add_assign(&scaled(&gen(n, hh), &rp(s2.scale(&da(jet, n, hh, n)))));
    }
    for hh in 1..n {
        for p in 1..n {
            out.add_assign(&scaled(
                &gen(n, hh),
                &rp_xi(p, s1.scale(&(&a(jet, hh, p) * &half_hp))),
            ));
        }
        out.add_assign(&scaled(&gen(n, hh), &rp(s2.scale(&(&a(jet, hh, n) * &half_hp)))));
    }
    out
}

/// Expected `π⁺` of the first inverse-subleading piece (structure conjugated
/// by the leading covector against the connection term).
pub fn pi_plus_a1(jet: &JJet) -> RestrictedSymbol {
    let n = jet.n;
    let hpv = hp(jet);
    let w1 = upper(vec![GaussianRational::zero(), gi(1, 16)], 2);
    let w2 = upper(vec![gi(1, 16)], 2);
    let w4 = upper(vec![gr(2, 16), gi(1, 16)], 2); // (iξₙ+2)/16
    let mut acc = WeightedSum::new(n, vec![w1, w2, w4]);
    for l in 1..=n {
        for gamma in 1..=n {
            for mu in 1..=n {
                for nu in 1..n {
                    let blades = gen(n, l)
                        .mul(&gen(n, mu))
                        .mul(&gen(n, n))
                        .mul(&gen(n, nu))
                        .mul(&gen(n, gamma));
                    let base = &a(jet, nu, mu) * &hpv;
                    acc.push(
                        0,
                        &blades,
                        XiMono::one(),
                        &(&a(jet, l, n) * &a(jet, gamma, n)) * &base,
                    );
                    for q in 1..n {
                        acc.push(
                            1,
                            &blades,
                            XiMono::var(q as u8),
                            &(&a(jet, l, q) * &a(jet, gamma, n)) * &base,
                        );
                        acc.push(
                            1,
                            &blades,
                            XiMono::var(q as u8),
                            &(&a(jet, l, n) * &a(jet, gamma, q)) * &base,
                        );
                    }
                    for q in 1..n {
                        for al in 1..n {
                            acc.push(
                                2,
                                &blades,
                                XiMono::var(q as u8).mul(&XiMono::var(al as u8)),
                                &(&a(jet, l, q) * &a(jet, gamma, al)) * &base,
                            );
                        }
                    }
                }
            }
        }
    }
    acc.finish()
}

/// Expected `π⁺` of the derivative piece of the inverse-subleading symbol.
pub fn pi_plus_a2(jet: &JJet) -> RestrictedSymbol {
    let n = jet.n;
    let hpv = hp(jet);
    let v1 = upper(vec![GaussianRational::zero(), gi(-1, 4)], 2);
    let v2 = upper(vec![gi(-1, 4)], 2);
    let v4 = upper(vec![gr(-2, 4), gi(-1, 4)], 2); // -(iξₙ+2)/4
    let w1 = upper(vec![GaussianRational::zero(), gi(-1, 8)], 2);
    let w2 = upper(vec![gi(-1, 8)], 2);
    let w4 = upper(vec![gr(-2, 8), gi(-1, 8)], 2);
    let mut acc = WeightedSum::new(n, vec![v1, v2, v4, w1, w2, w4]);
    for l in 1..=n {
        for j in 1..=n {
            for hh in 1..=n {
                for y in 1..=n {
                    let blades = gen(n, l).mul(&gen(n, y)).mul(&gen(n, hh));
                    let ay = a(jet, y, j);
                    acc.push(
                        0,
                        &blades,
                        XiMono::one(),
                        &(&a(jet, l, n) * &ay) * &da(jet, j, hh, n),
                    );
                    for q in 1..n {
                        acc.push(
                            1,
                            &blades,
                            XiMono::var(q as u8),
                            &(&a(jet, l, q) * &ay) * &da(jet, j, hh, n),
                        );
                        acc.push(
                            1,
                            &blades,
                            XiMono::var(q as u8),
                            &(&a(jet, l, n) * &ay) * &da(jet, j, hh, q),
                        );
                    }
                    for q in 1..n {
                        for pp in 1..n {
                            acc.push(
                                2,
                                &blades,
                                XiMono::var(q as u8).mul(&XiMono::var(pp as u8)),
                                &(&a(jet, l, q) * &ay) * &da(jet, j, hh, pp),
                            );
                        }
                    }
                }
            }
        }
        for z in 1..=n {
            for hh in 1..n {
                let blades = gen(n, l).mul(&gen(n, z)).mul(&gen(n, hh));
                let az = &a(jet, z, n) * &hpv;
                acc.push(
                    3,
                    &blades,
                    XiMono::one(),
                    &(&a(jet, l, n) * &a(jet, hh, n)) * &az,
                );
                for q in 1..n {
                    acc.push(
                        4,
                        &blades,
                        XiMono::var(q as u8),
                        &(&a(jet, l, q) * &a(jet, hh, n)) * &az,
                    );
                    acc.push(
                        4,
                        &blades,
                        XiMono::var(q as u8),
                        &(&a(jet, l, n) * &a(jet, hh, q)) * &az,
                    );
                }
                for q in 1..n {
                    for pp in 1..n {
                        acc.push(
                            5,
                            &blades,
                            XiMono::var(q as u8).mul(&XiMono::var(pp as u8)),
                            &(&a(jet, l, q) * &a(jet, hh, pp)) * &az,
                        );
                    }
                }
            }
        }
    }
    acc.finish()
}

/// Expected `-h'(0) π⁺` of the metric-variation piece of the
/// inverse-subleading symbol.
pub fn minus_hp_pi_plus_a3(jet: &JJet) -> RestrictedSymbol {
    let n = jet.n;
    let hpv = hp(jet);
    // (3ξₙ + iξₙ²)/16, (iξₙ + 3)/16, (-8i + 9ξₙ + 3iξₙ²)/16 over (ξₙ-i)³
    let u1 = upper(vec![GaussianRational::zero(), gr(3, 16), gi(1, 16)], 3);
    let u2 = upper(vec![gr(3, 16), gi(1, 16)], 3);
    let u4 = upper(vec![gi(-8, 16), gr(9, 16), gi(3, 16)], 3);
    let mut acc = WeightedSum::new(n, vec![u1, u2, u4]);
    for l in 1..=n {
        for w in 1..=n {
            for gamma in 1..=n {
                let blades = gen(n, l).mul(&gen(n, w)).mul(&gen(n, gamma));
                let awn = &a(jet, w, n) * &hpv;
                acc.push(
                    0,
                    &blades,
                    XiMono::one(),
                    &(&a(jet, l, n) * &awn) * &a(jet, gamma, n),
                );
                for q in 1..n {
                    acc.push(
                        1,
                        &blades,
                        XiMono::var(q as u8),
                        &(&a(jet, l, q) * &awn) * &a(jet, gamma, n),
                    );
                    acc.push(
                        1,
                        &blades,
                        XiMono::var(q as u8),
                        &(&a(jet, l, n) * &awn) * &a(jet, gamma, q),
                    );
                }
                for q in 1..n {
                    for al in 1..n {
                        acc.push(
                            2,
                            &blades,
                            XiMono::var(q as u8).mul(&XiMono::var(al as u8)),
                            &(&a(jet, l, q) * &awn) * &a(jet, gamma, al),
                        );
                    }
                }
            }
        }
    }
    acc.finish()
}

/// Expected `π⁺ σ₋₂` of the inverse: sum of the three projected pieces.
pub fn pi_plus_sigma_m2(jet: &JJet) -> RestrictedSymbol {
    pi_plus_a1(jet).add(&pi_plus_a2(jet)).add(&minus_hp_pi_plus_a3(jet))
}

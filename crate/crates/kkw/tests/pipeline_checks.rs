//! Integration checks on the boundary pipeline: frozen spot values,
//! structural properties of the case execution, and cross-route identities.

use kkw::forms;
use kkw::jets::{random_jjet, JetProfile, JJet, RatMat};
use kkw::pipeline::{phi_case, phi_total, CaseId};
use kkw::scalar::{rat, rat_int, BigRational};
use kkw::symbols::{d_xin_value, pi_plus, restrict, value, SymbolContext};
use num::Zero;

fn scaled_jet(jet: &JJet, lambda: &BigRational) -> JJet {
    let n = jet.n;
    let mut da = Vec::with_capacity(n);
    for m in &jet.da {
        let mut s = RatMat::zeros(n);
        for r in 0..n {
            for c in 0..n {
                s.set(r, c, m.get(r, c) * lambda);
            }
        }
        da.push(s);
    }
    JJet { n, a: jet.a.clone(), da, hprime: &jet.hprime * lambda }
}

#[test]
fn identity_structure_case_values() {
    // Frozen values for the identity structure with h'(0) = 1; the five
    // cases are individually nonzero but their sum vanishes.
    let expect6 = [rat_int(0), rat(-15, 16), rat(25, 16), rat(-65, 16), rat(55, 16)];
    let expect8 = [rat_int(0), rat(-63, 32), rat(147, 32), rat(-357, 32), rat(273, 32)];
    for (n, expect) in [(6usize, expect6), (8usize, expect8)] {
        let jet = JJet::identity(n, rat_int(1));
        let mut total = BigRational::zero();
        for (case, want) in CaseId::ALL.iter().zip(expect.iter()) {
            let rep = phi_case(*case, &jet).unwrap();
            assert_eq!(&rep.value.q, want, "case {case} at n={n}");
            total += &rep.value.q;
        }
        assert!(total.is_zero(), "total must vanish for the identity structure");
        let (tot, _) = phi_total(&jet).unwrap();
        assert!(tot.is_zero());
    }
}

#[test]
fn pipeline_matches_displayed_forms_n6_both_profiles() {
    for profile in [JetProfile::Diagonal, JetProfile::Conjugated] {
        let jet = random_jjet(6, 1234, profile).unwrap();
        for case in CaseId::ALL {
            let rep = phi_case(case, &jet).unwrap();
            let form = forms::phi_case_form(case, 6, &jet).unwrap();
            assert_eq!(rep.value.q, form.q, "case {case} profile {profile:?}");
        }
    }
}

#[test]
fn sphere_integrator_sees_and_kills_odd_monomials() {
    let jet = random_jjet(6, 5, JetProfile::Diagonal).unwrap();
    let rep = phi_case(CaseId::AI, &jet).unwrap();
    assert!(rep.odd_monomials_killed > 0, "expected odd monomials in the raw trace");
    // the killed monomials are genuinely odd: re-integrating the trace
    // polynomial drops exactly those terms
    let (_, killed) = rep.trace_poly.sphere_integrate(6).unwrap();
    assert_eq!(killed, rep.odd_monomials_killed);
}

#[test]
fn jet_scaling_decomposition() {
    // Φ(λ) with DA and h'(0) scaled by λ must fit Φ = λ·L + λ²·Q; the fit
    // from λ ∈ {1, 2} must predict λ = 3 exactly.
    let jet = random_jjet(6, 77, JetProfile::Conjugated).unwrap();
    let phi = |j: &JJet| phi_total(j).unwrap().0.q;
    let p1 = phi(&jet);
    let p2 = phi(&scaled_jet(&jet, &rat_int(2)));
    let p3 = phi(&scaled_jet(&jet, &rat_int(3)));
    // p1 = L + Q, p2 = 2L + 4Q  =>  Q = (p2 - 2 p1)/2, L = p1 - Q
    let q = (&p2 - &(&p1 * rat_int(2))) / rat_int(2);
    let l = &p1 - &q;
    assert_eq!(p3, &l * rat_int(3) + &q * rat_int(9));
}

#[test]
fn case_b_integration_by_parts_route() {
    // -i ∫ tr[π⁺σ₋₁ ∂_{ξₙ}σ₋ₙ₊₂] = +i ∫ tr[∂_{ξₙ}π⁺σ₋₁ σ₋ₙ₊₂]: the residue
    // integral of a total ξₙ-derivative of a decaying product vanishes.
    let jet = random_jjet(8, 3, JetProfile::Conjugated).unwrap();
    let ctx = SymbolContext::new(&jet);
    let n = 8usize;

    let direct = phi_case(CaseId::B, &jet).unwrap().value.q;

    let op1 = pi_plus(&restrict(&d_xin_value(&value(&ctx.sigma_m1_dj_inv())))).unwrap();
    let op2 = restrict(&ctx.sigma_mn2());
    let tr = op1.trace_of_product(&op2).unwrap();
    let (post, _) = tr.sphere_integrate(n).unwrap();
    let r = post.integrate_real_line().unwrap();
    let by_parts = &kkw::GaussianRational::i() * &r;
    assert!(by_parts.is_real());
    assert_eq!(by_parts.re(), &direct);
}

#[test]
fn case_c_projected_operand_matches_transcription_n6() {
    let jet = random_jjet(6, 9, JetProfile::Conjugated).unwrap();
    let ctx = SymbolContext::new(&jet);
    let engine = pi_plus(&restrict(&ctx.sigma_m2_dj_inv())).unwrap();
    let expected = kkw::reference::pi_plus_sigma_m2(&jet);
    assert_eq!(engine, expected);
}

#[test]
fn trivial_jet_zeroes_every_route() {
    let jet = JJet::identity(8, rat_int(0));
    let (tot, reports) = phi_total(&jet).unwrap();
    assert!(tot.is_zero());
    for rep in &reports {
        assert!(rep.value.is_zero());
        assert!(forms::phi_case_form(rep.case, 8, &jet).unwrap().is_zero());
    }
    assert!(forms::phi_d_form(8, &jet).unwrap().is_zero());
    assert!(forms::phi_final_form(8, &jet).unwrap().is_zero());
    assert!(forms::theorem_boundary_integrand(8, &jet).unwrap().is_zero());
}

#[test]
fn theorem_equals_final_form_on_random_jets() {
    // The geometric substitution identities turn the final closed form into
    // the theorem bracket exactly, jet by jet.
    for (n, seed, profile) in [
        (6usize, 2u64, JetProfile::Diagonal),
        (6, 3, JetProfile::Conjugated),
        (8, 4, JetProfile::Conjugated),
        (10, 5, JetProfile::Diagonal),
    ] {
        let jet = random_jjet(n, seed, profile).unwrap();
        assert_eq!(
            forms::phi_final_form(n, &jet).unwrap().q,
            forms::theorem_boundary_integrand(n, &jet).unwrap().q,
            "n={n} seed={seed}"
        );
    }
}

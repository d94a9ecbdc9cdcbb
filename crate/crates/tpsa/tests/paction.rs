use std::sync::Arc;

use tpsa::canonical;
use tpsa::paction::{
    check_axioms, enveloping_via_decomposition, is_finite_type, quotient_action,
    restrict_global, verify_enveloping, Origin, Window,
};
use tpsa::report::Status;
use tpsa::ringcore::{enumerate_ideals, IdealSet, RingMorphism, RingOps};

#[test]
fn shift2_restriction_data() {
    let act = canonical::shift2();
    let r = &*act.ring;
    assert_eq!(r.card(), 4);
    assert_eq!(act.window, Window::Periodic { period: 3 });
    // D_1 and D_{-1} are the two one-dimensional corners, D_0 = R
    assert_eq!(act.one_at(0), r.one());
    assert_eq!(act.domain_ideal(1).len(), 2);
    assert_eq!(act.domain_ideal(-1).len(), 2);
    assert_ne!(act.one_at(1), act.one_at(-1));
    assert_eq!(act.one_at(2), act.one_at(-1));
    // periodicity of accessors
    assert_eq!(act.one_at(4), act.one_at(1));
    assert_eq!(act.one_at(-4), act.one_at(-1));
}

#[test]
fn axioms_pass_on_builtin_actions() {
    for act in [
        canonical::shift2(),
        canonical::shift5_twisted(),
        canonical::swap2(),
        canonical::swap5(),
        canonical::global_swap(),
        canonical::trivial_on(4, 1),
    ] {
        let rep = check_axioms(&act);
        assert_eq!(rep.status, Status::Pass, "items: {:?}", rep.items);
    }
}

#[test]
fn twisted_cocycle_window_is_one_period() {
    let act = canonical::shift5_twisted();
    // lcm(order of the shift, order of the cocycle base) = lcm(3, 4)
    assert_eq!(act.window, Window::Periodic { period: 12 });
    let r = &*act.ring;
    // the corner 1_1 * 1_2 vanishes, so w_{1,1} = 0 despite the twist
    assert_eq!(r.mul(act.one_at(1), act.one_at(2)), 0);
    assert_eq!(act.w(1, 1), 0);
    // at (3,3) the corner is the identity of the restricted ring and the
    // unit factor is the cocycle base itself, so the twist is visible
    let corner = r.mul(act.one_at(3), act.one_at(6));
    assert_eq!(corner, r.one());
    assert_ne!(act.w(3, 3), corner, "cocycle twists the unit");
}

#[test]
fn injected_defects_are_caught() {
    let act = canonical::shift2();
    let r = &*act.ring;

    // axiom (i): D_0 must be the whole ring
    let bad = act.with_idem(0, act.one_at(1));
    let rep = check_axioms(&bad);
    assert!(rep.items.iter().any(|i| i.name == "axiom:i" && i.status == Status::Fail));

    // w made non-invertible where the corner is nonzero
    let bad = act.with_w(1, 2, 0);
    assert_ne!(r.mul(act.one_at(1), act.one_at(0)), 0);
    let rep = check_axioms(&bad);
    assert!(rep
        .items
        .iter()
        .any(|i| i.name == "typing:w-invertible" && i.status == Status::Fail));

    // normalization broken: w_{1,0} != 1_1
    let bad = act.with_w(1, 0, 0);
    let rep = check_axioms(&bad);
    assert!(rep.items.iter().any(|i| i.name == "axiom:iv" && i.status == Status::Fail));

    // alpha table corrupted at a domain point
    let x = act.domain_ideal(-1)[1];
    let bad = act.with_alpha_entry(1, x, 0);
    let rep = check_axioms(&bad);
    assert!(rep
        .items
        .iter()
        .any(|i| i.name == "typing:alpha-iso" && i.status == Status::Fail));
}

#[test]
fn finite_type_detection() {
    let act = canonical::shift2();
    let (ok, witness, _) = is_finite_type(&act, 2);
    assert!(ok);
    assert_eq!(witness, Some(vec![0, 1]));

    let act = canonical::swap2();
    let (ok, witness, why) = is_finite_type(&act, 2);
    assert!(!ok);
    assert!(witness.is_none());
    assert!(why.contains("vanishes"));

    let act = canonical::global_swap();
    let (ok, witness, _) = is_finite_type(&act, 2);
    assert!(ok);
    assert_eq!(witness, Some(vec![0]));
}

#[test]
fn quotient_actions_pass_axioms() {
    let act = canonical::shift2();
    let lattice = enumerate_ideals(&*act.ring, 4096).unwrap();
    let mut checked = 0;
    for ideal in &lattice {
        if !tpsa::ideals::is_alpha_invariant(&act, ideal) {
            continue;
        }
        let (q, _) = quotient_action(&act, ideal).unwrap();
        let rep = check_axioms(&q);
        assert_eq!(rep.status, Status::Pass, "quotient by {:?}", ideal.members);
        checked += 1;
    }
    assert!(checked >= 2, "zero and whole ideals are always invariant");
}

#[test]
fn quotient_rejects_non_invariant_ideal() {
    let act = canonical::swap2();
    // D_1 is an ideal but not alpha-invariant
    let d1 = IdealSet { members: act.domain_ideal(1), generators: vec![act.one_at(1)] };
    assert!(matches!(
        quotient_action(&act, &d1),
        Err(tpsa::Error::NotAlphaInvariant)
    ));
}

#[test]
fn enveloping_verification() {
    let act = canonical::shift2();
    let (global, sub) = match &act.origin {
        Origin::RestrictedGlobal { global, sub, .. } => (global.clone(), sub.clone()),
        _ => unreachable!(),
    };
    let embed = RingMorphism { map: (0..sub.card()).map(|x| sub.to_parent(x)).collect() };
    let rep = verify_enveloping(&act, &global, &embed).unwrap();
    assert_eq!(rep.status, Status::Pass, "items: {:?}", rep.items);

    let rep = enveloping_via_decomposition(&act);
    assert_eq!(rep.status, Status::Pass);
    assert_eq!(rep.params["indecomposable_summands"], serde_json::json!(2));

    // finite-support actions fail the finite-type hypothesis: reported only
    let rep = enveloping_via_decomposition(&canonical::swap2());
    assert_eq!(rep.status, Status::Reported);
}

#[test]
fn enveloping_defect_detected() {
    // wrong global action for swap2-shaped data: identity automorphism on
    // the same ring cannot satisfy the intersection condition
    let act = canonical::shift2();
    let (global, sub) = match &act.origin {
        Origin::RestrictedGlobal { global, sub, .. } => (global.clone(), sub.clone()),
        _ => unreachable!(),
    };
    let wrong = tpsa::paction::GlobalTwistedAction::new(
        global.ring.clone(),
        RingMorphism::identity(global.ring.card()),
        None,
    )
    .unwrap();
    let embed = RingMorphism { map: (0..sub.card()).map(|x| sub.to_parent(x)).collect() };
    let rep = verify_enveloping(&act, &wrong, &embed).unwrap();
    assert_eq!(rep.status, Status::Fail);
}

#[test]
fn restriction_at_identity_recovers_global() {
    let act = canonical::global_swap();
    let r = &*act.ring;
    for i in act.window_reps() {
        assert_eq!(act.one_at(i), r.one());
    }
    let rep = check_axioms(&act);
    assert_eq!(rep.status, Status::Pass);
}

#[test]
fn alpha_inverse_composition_via_axiom_instance() {
    // alpha_i . alpha_{-i} equals conjugation by w_{i,-i} on D_i, the
    // literal axiom (iii) instance with j = -i
    let act = canonical::shift5_twisted();
    let r = &*act.ring;
    for i in act.window_reps() {
        let corner = r.mul(act.one_at(i), act.one_at(0));
        let w = act.w(i, -i);
        let winv = tpsa::ringcore::inverse_in_corner(r, corner, w).unwrap();
        for a in act.domain_ideal(i) {
            let lhs = act.apply(i, act.apply(-i, a));
            let rhs = r.mul(r.mul(w, act.apply(0, a)), winv);
            assert_eq!(lhs, rhs, "i = {i}");
        }
    }
}

#[test]
fn malformed_tables_rejected() {
    use tpsa::paction::FiniteSupportTables;
    let r = tpsa::ringcore::FiniteRing::product(&[
        tpsa::ringcore::FactorSpec::Cyclic { modulus: 2 },
        tpsa::ringcore::FactorSpec::Cyclic { modulus: 2 },
    ])
    .unwrap();
    // e_0 not the identity
    let bad = FiniteSupportTables {
        bound: 0,
        idem: vec![2],
        alpha_pairs: vec![],
        w_entries: vec![],
    };
    assert!(matches!(
        tpsa::paction::make_finite_support(r.clone(), bad),
        Err(tpsa::Error::MalformedTable(_))
    ));
    // missing alpha table for a nonzero domain
    let bad = FiniteSupportTables {
        bound: 1,
        idem: vec![1, 3, 2],
        alpha_pairs: vec![],
        w_entries: vec![],
    };
    assert!(matches!(
        tpsa::paction::make_finite_support(r.clone(), bad),
        Err(tpsa::Error::MalformedTable(_))
    ));
}

#[test]
fn randomized_restrictions_pass_axioms() {
    // restriction of a shift action over varying moduli and idempotents
    use tpsa::ringcore::{FactorSpec, FiniteRing};
    let mut count = 0;
    for modulus in [2u64, 3, 5] {
        let t = FiniteRing::product(&[
            FactorSpec::Cyclic { modulus },
            FactorSpec::Cyclic { modulus },
            FactorSpec::Cyclic { modulus },
        ])
        .unwrap();
        let beta = RingMorphism::from_factor_permutation(&t, &[2, 0, 1]).unwrap();
        let g = tpsa::paction::GlobalTwistedAction::new(t.clone(), beta, None).unwrap();
        for e in tpsa::ringcore::central_idempotents(&*t) {
            let act = Arc::new(restrict_global(&g, e).unwrap());
            let rep = check_axioms(&act);
            assert_eq!(rep.status, Status::Pass);
            count += 1;
        }
    }
    assert!(count >= 20);
}

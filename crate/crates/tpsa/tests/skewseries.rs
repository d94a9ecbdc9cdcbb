use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tpsa::canonical;
use tpsa::report::Status;
use tpsa::ringcore::RingOps;
use tpsa::skewseries::{
    ideal_extension_materialized, in_coefficient_extension, lemma31_divide, materialize_finite,
    monomial, morita_ring, morita_verify, quotient_iso_check, random_series, semiprime_witness,
    series_add, series_eq, series_make, series_mul, series_one, series_zero, solve_decomposition,
    Flavor, SeriesRingHandle,
};

#[test]
fn monomial_rule_small_cases() {
    let act = canonical::swap2();
    let r = act.ring.clone();
    let h = SeriesRingHandle::new(act.clone(), Flavor::Laurent, 3).unwrap();
    let e1 = act.one_at(1);
    let em1 = act.one_at(-1);

    // (e_1 x)(e_1 x) = 0: the inner product lands in D_1 D_{-1} = 0
    let f = monomial(&h, 1, e1).unwrap();
    let sq = series_mul(&f, &f).unwrap();
    assert!(sq.is_zero());

    // (e_1 x)(e_{-1} x^{-1}) = alpha_1(e_{-1} e_{-1}) w_{1,-1} = e_1
    let g = monomial(&h, -1, em1).unwrap();
    let p = series_mul(&f, &g).unwrap();
    assert_eq!(p.support(), vec![0]);
    assert_eq!(p.coeff(0), e1);

    // the other order gives e_{-1}
    let q = series_mul(&g, &f).unwrap();
    assert_eq!(q.support(), vec![0]);
    assert_eq!(q.coeff(0), em1);
    drop(r);
}

#[test]
fn twisted_product_uses_the_cocycle() {
    // swap5 has w_{1,-1} = (2,0); compare against the untwisted value
    let act = canonical::swap5();
    let r = &*act.ring.clone();
    let h = SeriesRingHandle::new(act.clone(), Flavor::Laurent, 2).unwrap();
    let e1 = act.one_at(1);
    let em1 = act.one_at(-1);
    let f = monomial(&h, 1, e1).unwrap();
    let g = monomial(&h, -1, em1).unwrap();
    let p = series_mul(&f, &g).unwrap();
    assert_eq!(p.support(), vec![0]);
    assert_eq!(p.coeff(0), act.w(1, -1));
    assert_ne!(p.coeff(0), e1, "the unit 2 shows up in the product");
    // and it is invertible in its corner: (e_1 x)(e_{-1} x^{-1}) generates e_1 D_1
    let winv = tpsa::ringcore::inverse_in_corner(r, e1, act.w(1, -1)).unwrap();
    assert_eq!(r.mul(p.coeff(0), winv), e1);
}

#[test]
fn ring_laws_sampled() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for act in [
        canonical::shift2(),
        canonical::shift5_twisted(),
        canonical::swap2(),
        canonical::swap5(),
        canonical::global_swap(),
    ] {
        for flavor in [Flavor::Power, Flavor::Laurent] {
            // headroom: triple products of supports in [-3,3) stay below 9,
            // so nothing is truncated and the laws must hold exactly (with
            // truncation, a dropped Laurent term can reappear lower down)
            let h = SeriesRingHandle::new(act.clone(), flavor, 9).unwrap();
            let one = series_one(&h);
            for _ in 0..25 {
                let f = random_series(&h, &mut rng, -3, 3);
                let g = random_series(&h, &mut rng, -3, 3);
                let k = random_series(&h, &mut rng, -3, 3);
                // identity
                assert!(series_eq(&series_mul(&one, &f).unwrap(), &f).unwrap());
                assert!(series_eq(&series_mul(&f, &one).unwrap(), &f).unwrap());
                // associativity
                let l = series_mul(&series_mul(&f, &g).unwrap(), &k).unwrap();
                let r = series_mul(&f, &series_mul(&g, &k).unwrap()).unwrap();
                assert!(series_eq(&l, &r).unwrap(), "assoc failed: {}", f.describe());
                // distributivity
                let l = series_mul(&f, &series_add(&g, &k).unwrap()).unwrap();
                let r =
                    series_add(&series_mul(&f, &g).unwrap(), &series_mul(&f, &k).unwrap()).unwrap();
                assert!(series_eq(&l, &r).unwrap());
            }
        }
    }
}

#[test]
fn coefficient_typing_enforced() {
    let act = canonical::swap2();
    let h = SeriesRingHandle::new(act.clone(), Flavor::Power, 3).unwrap();
    // (1,1) is not in D_1
    let full = act.ring.one();
    assert!(matches!(
        series_make(&h, &[(1, full)]),
        Err(tpsa::Error::CoefficientOutsideDomainIdeal { degree: 1, .. })
    ));
    // negative degrees rejected in the power flavor
    assert!(series_make(&h, &[(-1, act.one_at(-1))]).is_err());
    // degrees at or above truncation rejected
    assert!(series_make(&h, &[(3, 0)]).is_err());
}

#[test]
fn handle_mismatch_detected() {
    let act = canonical::swap2();
    let h1 = SeriesRingHandle::new(act.clone(), Flavor::Power, 3).unwrap();
    let h2 = SeriesRingHandle::new(act, Flavor::Power, 3).unwrap();
    let f = series_one(&h1);
    let g = series_one(&h2);
    assert!(matches!(series_mul(&f, &g), Err(tpsa::Error::HandleMismatch)));
}

#[test]
fn materialization_cardinalities() {
    let act = canonical::swap2();
    // |D_0| * |D_1| = 4 * 2
    let m = materialize_finite(&act, Flavor::Power, 4096).unwrap();
    assert_eq!(m.ring.card(), 8);
    // |D_{-1}| * |D_0| * |D_1| = 2 * 4 * 2
    let m = materialize_finite(&act, Flavor::Laurent, 4096).unwrap();
    assert_eq!(m.ring.card(), 16);

    let act = canonical::swap5();
    let m = materialize_finite(&act, Flavor::Laurent, 4096).unwrap();
    assert_eq!(m.ring.card(), 625);

    assert!(matches!(
        materialize_finite(&canonical::swap5(), Flavor::Laurent, 100),
        Err(tpsa::Error::CapExceeded { .. })
    ));
    assert!(matches!(
        materialize_finite(&canonical::shift2(), Flavor::Power, 4096),
        Err(tpsa::Error::NotFiniteSupport)
    ));
}

#[test]
fn materialization_is_exact() {
    // encode/decode round-trips and the table product equals the series product
    let act = canonical::swap2();
    let m = materialize_finite(&act, Flavor::Laurent, 4096).unwrap();
    for i in 0..m.ring.card() {
        let f = m.decode_series(i);
        assert_eq!(m.encode_series(&f).unwrap(), i);
        for j in 0..m.ring.card() {
            let g = m.decode_series(j);
            let p = series_mul(&f, &g).unwrap();
            assert_eq!(m.ring.mul(i, j), m.encode_series(&p).unwrap());
        }
    }
    // the base ring embeds at degree 0 as a (non-unital) subring
    let r = &*act.ring;
    for a in 0..r.card() {
        for b in 0..r.card() {
            assert_eq!(
                m.ring.mul(m.embed_base(a), m.embed_base(b)),
                m.embed_base(r.mul(a, b))
            );
            assert_eq!(
                m.ring.add(m.embed_base(a), m.embed_base(b)),
                m.embed_base(r.add(a, b))
            );
        }
    }
}

#[test]
fn division_recursion_shift2() {
    let act = canonical::shift2();
    let r = act.ring.clone();
    let h = SeriesRingHandle::new(act, Flavor::Power, 6).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    for _ in 0..60 {
        let mut f = random_series(&h, &mut rng, 1, 6);
        f = series_add(&f, &series_one(&h)).unwrap();
        if f.coeff(0) != r.one() {
            continue;
        }
        let dec = solve_decomposition(&f).expect("unit constant term always divides");
        let g = lemma31_divide(&f, &dec).unwrap();
        assert_eq!(g.coeff(0), r.one());
        let prod = series_mul(&f, &g).unwrap();
        let v0 = monomial(&h, 0, f.coeff(0)).unwrap();
        assert!(series_eq(&prod, &v0).unwrap(), "f = {}, g = {}", f.describe(), g.describe());
        checked += 1;
    }
    assert!(checked >= 40);
}

#[test]
fn division_recursion_idempotent_leading_term() {
    // constant coefficient a corner idempotent rather than a unit
    let act = canonical::swap2();
    let r = act.ring.clone();
    let e1 = act.one_at(1);
    let h = SeriesRingHandle::new(act, Flavor::Power, 2).unwrap();
    let f = series_make(&h, &[(0, e1), (1, e1)]).unwrap();
    let dec = solve_decomposition(&f).unwrap();
    let g = lemma31_divide(&f, &dec).unwrap();
    let prod = series_mul(&f, &g).unwrap();
    let v0 = monomial(&h, 0, e1).unwrap();
    assert!(series_eq(&prod, &v0).unwrap());
    drop(r);
}

#[test]
fn division_rejects_bad_decomposition() {
    let act = canonical::shift2();
    let r = act.ring.clone();
    let h = SeriesRingHandle::new(act.clone(), Flavor::Power, 3).unwrap();
    let f = series_make(&h, &[(0, r.one()), (1, act.one_at(1))]).unwrap();
    let mut bad = BTreeMap::new();
    bad.insert(1i64, act.one_at(-1));
    assert!(matches!(
        lemma31_divide(&f, &bad),
        Err(tpsa::Error::DecompositionInvalid(1))
    ));
    // zero constant coefficient rejected
    let f = series_make(&h, &[(1, act.one_at(1))]).unwrap();
    assert!(lemma31_divide(&f, &BTreeMap::new()).is_err());
}

#[test]
fn semiprime_witness_found_for_laurent_elements() {
    let act = canonical::swap2();
    let h = SeriesRingHandle::new(act.clone(), Flavor::Laurent, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut found = 0;
    for _ in 0..40 {
        let f = random_series(&h, &mut rng, -1, 2);
        if f.is_zero() {
            continue;
        }
        let w = semiprime_witness(&f).unwrap();
        let w = w.expect("the Laurent ring over a semiprime base is semiprime");
        let prod = series_mul(&series_mul(&f, &w).unwrap(), &f).unwrap();
        assert!(!prod.is_zero());
        found += 1;
    }
    assert!(found >= 20);
    assert!(semiprime_witness(&series_zero(&h)).is_err());
}

#[test]
fn quotient_iso_exact_on_finite_support() {
    let act = canonical::swap2();
    let zero = tpsa::ringcore::IdealSet { members: vec![0], generators: vec![0] };
    let rep = quotient_iso_check(&act, &zero, 2, 0, 0).unwrap();
    assert_eq!(rep.status, Status::Pass, "items: {:?}", rep.items);
    // swap5 with the zero ideal, exercising the twisted tables
    let act = canonical::swap5();
    let rep = quotient_iso_check(&act, &zero, 2, 0, 0).unwrap();
    assert_eq!(rep.status, Status::Pass);
}

#[test]
fn quotient_iso_sampled_on_periodic() {
    let act = canonical::shift5_twisted();
    let lattice = tpsa::ringcore::enumerate_ideals(&*act.ring, 4096).unwrap();
    let mut checked = 0;
    for ideal in &lattice {
        if ideal.is_whole(&*act.ring) || !tpsa::ideals::is_alpha_invariant(&act, ideal) {
            continue;
        }
        let rep = quotient_iso_check(&act, ideal, 5, 30, 17).unwrap();
        assert_eq!(rep.status, Status::Pass, "ideal {:?}: {:?}", ideal.members, rep.items);
        checked += 1;
    }
    assert!(checked >= 1);
}

/// Swap-shaped finite-support action over Z_4 x Z_4; the ideal
/// `2Z_4 x 2Z_4` is invariant under it.
fn swap4() -> std::sync::Arc<tpsa::paction::TwistedPartialAction> {
    use tpsa::paction::{make_finite_support, FiniteSupportTables};
    use tpsa::ringcore::{FactorSpec, FiniteRing};
    let r = FiniteRing::product(&[
        FactorSpec::Cyclic { modulus: 4 },
        FactorSpec::Cyclic { modulus: 4 },
    ])
    .unwrap();
    let enc = |a: usize, b: usize| a * 4 + b;
    let fwd: Vec<(usize, usize)> = (0..4).map(|a| (enc(0, a), enc(a, 0))).collect();
    let bwd: Vec<(usize, usize)> = (0..4).map(|a| (enc(a, 0), enc(0, a))).collect();
    let tables = FiniteSupportTables {
        bound: 1,
        idem: vec![enc(0, 1), enc(1, 1), enc(1, 0)],
        alpha_pairs: vec![(1, fwd), (-1, bwd)],
        w_entries: vec![],
    };
    std::sync::Arc::new(make_finite_support(r, tables).unwrap())
}

#[test]
fn ideal_extension_matches_membership_predicate() {
    let act = swap4();
    let m = materialize_finite(&act, Flavor::Laurent, 4096).unwrap();
    // invariant ideal 2Z_4 x 2Z_4: its extension is an ideal of the series ring
    let s = tpsa::ringcore::ideal_closure(&*act.ring, &[2 * 4 + 2]);
    assert!(tpsa::ideals::is_alpha_invariant(&act, &s));
    let ext = ideal_extension_materialized(&m, &s);
    assert!(tpsa::ringcore::is_ideal(&*m.ring, &ext.members));
    for i in 0..m.ring.card() {
        assert_eq!(
            ext.contains(i),
            in_coefficient_extension(&m.decode_series(i), &s)
        );
    }
    // a non-invariant ideal does not extend to an ideal
    let act = canonical::swap2();
    let m = materialize_finite(&act, Flavor::Laurent, 4096).unwrap();
    let d1 = tpsa::ringcore::IdealSet {
        members: act.domain_ideal(1),
        generators: vec![act.one_at(1)],
    };
    assert!(!tpsa::ideals::is_alpha_invariant(&act, &d1));
    let ext = ideal_extension_materialized(&m, &d1);
    assert!(!tpsa::ringcore::is_ideal(&*m.ring, &ext.members));
}

#[test]
fn morita_context_verifies() {
    for act in [canonical::shift2(), canonical::shift5_twisted()] {
        let ctx = morita_ring(&act, 7).unwrap();
        let id = ctx.identity();
        assert!(ctx.in_ring(&id));
        let rep = morita_verify(&ctx, 30, 23);
        assert_eq!(rep.status, Status::Pass, "items: {:?}", rep.items);
    }
    assert!(matches!(
        morita_ring(&canonical::swap2(), 3),
        Err(tpsa::Error::NoEnvelopingData)
    ));
}

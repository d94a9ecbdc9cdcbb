use tpsa::canonical;
use tpsa::ideals::{
    alpha_invariant_closure, alpha_prime_witness, is_alpha_ideal, is_alpha_invariant,
    is_alpha_prime, is_alpha_prime_by_ideals, is_prime_ideal, is_strongly_alpha_prime,
    is_strongly_alpha_prime_by_ideals, laurent_radical_formula, powerseries_radical_formula,
    prime_radical, prime_witness, radicals, strongly_alpha_prime_witness, FormulaBacking,
};
use tpsa::ringcore::{
    enumerate_ideals, ideal_closure, FactorSpec, FiniteRing, IdealSet, RingOps,
};
use tpsa::skewseries::{materialize_finite, Flavor};

fn z(n: u64) -> std::sync::Arc<FiniteRing> {
    FiniteRing::product(&[FactorSpec::Cyclic { modulus: n }]).unwrap()
}

#[test]
fn primes_of_small_cyclic_rings() {
    let r = z(6);
    let (primes, nil) = prime_radical(&*r, 4096).unwrap();
    // (2) and (3)
    assert_eq!(primes.len(), 2);
    assert_eq!(nil.members, vec![0]);
    // 2 Z6 3 = 0 witnesses failure of primality for the zero ideal
    let zero = IdealSet { members: vec![0], generators: vec![0] };
    let (a, b) = prime_witness(&*r, &zero).unwrap().unwrap();
    assert_ne!(a, 0);
    assert_ne!(b, 0);
    for s in 0..r.card() {
        assert_eq!(r.mul(r.mul(a, s), b), 0);
    }

    let r = z(4);
    let (primes, nil) = prime_radical(&*r, 4096).unwrap();
    assert_eq!(primes.len(), 1);
    assert_eq!(nil.members, vec![0, 2]);
    assert!(is_prime_ideal(&*r, &primes[0]).unwrap());
}

#[test]
fn whole_ideal_is_never_prime() {
    let r = z(4);
    let whole = ideal_closure(&*r, &[1]);
    assert!(matches!(
        prime_witness(&*r, &whole),
        Err(tpsa::Error::NotProper)
    ));
}

#[test]
fn alpha_ideal_vs_alpha_invariant() {
    let act = canonical::swap2();
    let d1 = IdealSet { members: act.domain_ideal(1), generators: vec![act.one_at(1)] };
    let dm1 = IdealSet { members: act.domain_ideal(-1), generators: vec![act.one_at(-1)] };
    // D_1 absorbs the forward translates vacuously but is not invariant
    assert!(is_alpha_ideal(&act, &d1));
    assert!(!is_alpha_invariant(&act, &d1));
    // D_{-1} is pushed out of itself by alpha_1
    assert!(!is_alpha_ideal(&act, &dm1));
    let zero = IdealSet { members: vec![0], generators: vec![0] };
    assert!(is_alpha_invariant(&act, &zero));
}

#[test]
fn invariant_closure_is_smallest_invariant_ideal() {
    let act = canonical::swap2();
    let e1 = act.one_at(1);
    let c = alpha_invariant_closure(&act, e1);
    assert!(c.contains(e1));
    assert!(is_alpha_invariant(&act, &c));
    // here the translates of e_1 already generate everything
    assert!(c.is_whole(&*act.ring));
    // and in general it is the smallest: every invariant ideal containing
    // the element contains the closure
    for i in enumerate_ideals(&*act.ring, 4096).unwrap() {
        if i.contains(e1) && is_alpha_invariant(&act, &i) {
            assert!(c.members.iter().all(|m| i.contains(*m)));
        }
    }
}

#[test]
fn swap2_radical_bundle() {
    let act = canonical::swap2();
    let b = radicals(&act, 4096).unwrap();
    // base primes: the two coordinate corners
    assert_eq!(b.prime_list.len(), 2);
    assert_eq!(b.nil_star.members, vec![0]);
    // the zero ideal is alpha-prime (any two orbits meet in a coordinate)
    assert_eq!(b.alpha_prime_list.len(), 1);
    assert_eq!(b.nil_alpha.members, vec![0]);
    // but not strongly alpha-prime: e_{-1} R alpha_j(e_1 1_{-j}) = 0 for j >= 0
    assert!(b.strongly_alpha_prime_list.is_empty());
    assert!(b.n_alpha_strong.is_whole(&*act.ring));
    let zero = IdealSet { members: vec![0], generators: vec![0] };
    let (a, c) = strongly_alpha_prime_witness(&act, &zero).unwrap().unwrap();
    assert_ne!(a, 0);
    assert_ne!(c, 0);
}

#[test]
fn element_criteria_match_ideal_pair_definitions() {
    for act in [
        canonical::swap2(),
        canonical::swap5(),
        canonical::shift2(),
        canonical::trivial_on(4, 1),
        canonical::trivial_on(6, 1),
    ] {
        let lattice = enumerate_ideals(&*act.ring, 4096).unwrap();
        for p in &lattice {
            if p.is_whole(&*act.ring) || !is_alpha_invariant(&act, p) {
                continue;
            }
            assert_eq!(
                is_alpha_prime(&act, p).unwrap(),
                is_alpha_prime_by_ideals(&act, p, &lattice).unwrap(),
                "alpha-prime mismatch at {:?}",
                p.members
            );
            assert_eq!(
                is_strongly_alpha_prime(&act, p).unwrap(),
                is_strongly_alpha_prime_by_ideals(&act, p, &lattice).unwrap(),
                "strong mismatch at {:?}",
                p.members
            );
        }
    }
}

#[test]
fn strongly_alpha_prime_implies_alpha_prime() {
    for act in [canonical::swap2(), canonical::shift2(), canonical::trivial_on(8, 1)] {
        let b = radicals(&act, 4096).unwrap();
        for p in &b.strongly_alpha_prime_list {
            assert!(is_alpha_prime(&act, p).unwrap());
        }
        // hence Nil_alpha is contained in N_alpha
        assert!(b
            .nil_alpha
            .members
            .iter()
            .all(|&m| b.n_alpha_strong.contains(m)));
    }
}

#[test]
fn trivial_action_collapses_the_hierarchy() {
    // with the identity automorphism every notion reduces to primality
    let act = canonical::trivial_on(4, 1);
    let b = radicals(&act, 4096).unwrap();
    assert_eq!(b.prime_list.len(), b.alpha_prime_list.len());
    assert_eq!(b.prime_list.len(), b.strongly_alpha_prime_list.len());
    assert_eq!(b.nil_star.members, b.nil_alpha.members);
    assert_eq!(b.nil_star.members, b.n_alpha_strong.members);
    assert_eq!(b.nil_star.members, vec![0, 2]);
}

#[test]
fn witnesses_require_invariant_proper_input() {
    let act = canonical::swap2();
    let d1 = IdealSet { members: act.domain_ideal(1), generators: vec![act.one_at(1)] };
    assert!(matches!(
        alpha_prime_witness(&act, &d1),
        Err(tpsa::Error::NotAlphaInvariant)
    ));
    let whole = ideal_closure(&*act.ring, &[act.ring.one()]);
    assert!(matches!(
        strongly_alpha_prime_witness(&act, &whole),
        Err(tpsa::Error::NotProper)
    ));
}

#[test]
fn formula_backing_tracks_enveloping_data() {
    let act = canonical::trivial_on(4, 1);
    let b = radicals(&act, 4096).unwrap();
    let f = powerseries_radical_formula(&act, &b);
    assert_eq!(f.backing, FormulaBacking::TheoremBacked);

    let act = canonical::swap2();
    let b = radicals(&act, 4096).unwrap();
    let f = powerseries_radical_formula(&act, &b);
    assert_eq!(f.backing, FormulaBacking::Conjectural);
}

#[test]
fn formula_coefficient_sets_trivial_action() {
    let act = canonical::trivial_on(4, 1);
    let b = radicals(&act, 4096).unwrap();
    let lf = laurent_radical_formula(&act, &b);
    assert!(lf.allows(0, 2) && lf.allows(5, 2) && lf.allows(-3, 2));
    assert!(!lf.allows(0, 1) && !lf.allows(2, 3));
    let pf = powerseries_radical_formula(&act, &b);
    assert!(pf.allows(0, 2) && pf.allows(1, 2));
    assert!(!pf.allows(0, 1));
    // power series have no negative coefficients at all
    assert!(pf.allows(-1, 0) && !pf.allows(-1, 2));
}

#[test]
fn formula_is_periodic_on_periodic_windows() {
    let act = canonical::shift2();
    let b = radicals(&act, 4096).unwrap();
    let f = laurent_radical_formula(&act, &b);
    for d in 1..=3i64 {
        assert_eq!(f.coefficient_set(d), f.coefficient_set(d + 3));
        assert_eq!(f.coefficient_set(d), f.coefficient_set(d - 3));
    }
}

#[test]
fn laurent_formula_matches_brute_force() {
    // exact cross-check on the materialized Laurent ring of swap2:
    // Nil_alpha(R) is zero, so the Laurent ring must be semiprime
    let act = canonical::swap2();
    let b = radicals(&act, 4096).unwrap();
    let f = laurent_radical_formula(&act, &b);
    let m = materialize_finite(&act, Flavor::Laurent, 4096).unwrap();
    let (_, nil) = prime_radical(&*m.ring, 65536).unwrap();
    for i in 0..m.ring.card() {
        let s = m.decode_series(i);
        let predicted = (-1..=1i64).all(|d| f.allows(d, s.coeff(d)));
        assert_eq!(nil.contains(i), predicted, "element {}", s.describe());
    }
}

#[test]
fn power_formula_matches_brute_force() {
    // swap2: the conjectural description still agrees with brute force here;
    // the predicted radical is D_1 x
    let act = canonical::swap2();
    let b = radicals(&act, 4096).unwrap();
    let f = powerseries_radical_formula(&act, &b);
    assert_eq!(f.backing, FormulaBacking::Conjectural);
    let m = materialize_finite(&act, Flavor::Power, 4096).unwrap();
    let (_, nil) = prime_radical(&*m.ring, 65536).unwrap();
    assert_eq!(nil.len(), 2);
    for i in 0..m.ring.card() {
        let s = m.decode_series(i);
        let predicted = (0..=1i64).all(|d| f.allows(d, s.coeff(d)));
        assert_eq!(nil.contains(i), predicted, "element {}", s.describe());
    }
}

#[test]
fn twisted_laurent_formula_matches_brute_force() {
    // same cross-check on the twisted swap5 Laurent ring (625 elements)
    let act = canonical::swap5();
    let b = radicals(&act, 4096).unwrap();
    let f = laurent_radical_formula(&act, &b);
    let m = materialize_finite(&act, Flavor::Laurent, 4096).unwrap();
    let (_, nil) = prime_radical(&*m.ring, 65536).unwrap();
    for i in 0..m.ring.card() {
        let s = m.decode_series(i);
        let predicted = (-1..=1i64).all(|d| f.allows(d, s.coeff(d)));
        assert_eq!(nil.contains(i), predicted, "element {}", s.describe());
    }
}

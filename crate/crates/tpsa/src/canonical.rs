//! Built-in example actions exercised throughout the test-suite and usable
//! as references for writing fixture files.

use std::sync::Arc;

use crate::paction::{
    make_finite_support, restrict_global, FiniteSupportTables, GlobalTwistedAction,
    TwistedPartialAction,
};
use crate::ringcore::{Coord, FactorSpec, FiniteRing, RingElement, RingMorphism, RingOps};

fn idx(ring: &FiniteRing, coords: &[u64]) -> usize {
    let e = RingElement { coords: coords.iter().map(|&c| Coord::Scalar(c)).collect() };
    ring.encode(&e).expect("coordinates are reduced")
}

fn cyclic_product(modulus: u64, n: usize) -> Arc<FiniteRing> {
    let factors: Vec<FactorSpec> = (0..n).map(|_| FactorSpec::Cyclic { modulus }).collect();
    FiniteRing::product(&factors).expect("small product ring")
}

/// Three copies of Z_2, coordinate shift of order 3, trivial cocycle,
/// restricted to the ideal of `(1,1,0)`.
pub fn shift2() -> Arc<TwistedPartialAction> {
    let t = cyclic_product(2, 3);
    let beta = RingMorphism::from_factor_permutation(&t, &[2, 0, 1]).expect("shift");
    let g = GlobalTwistedAction::new(t.clone(), beta, None).expect("valid global action");
    Arc::new(restrict_global(&g, idx(&t, &[1, 1, 0])).expect("central idempotent"))
}

/// Three copies of Z_5, coordinate shift, product cocycle with base
/// `(2,2,2)` (order 4, so the window is one period of length 12),
/// restricted to the ideal of `(1,1,0)`.
pub fn shift5_twisted() -> Arc<TwistedPartialAction> {
    let t = cyclic_product(5, 3);
    let beta = RingMorphism::from_factor_permutation(&t, &[2, 0, 1]).expect("shift");
    let lambda = idx(&t, &[2, 2, 2]);
    let g = GlobalTwistedAction::new(t.clone(), beta, Some(lambda)).expect("valid global action");
    Arc::new(restrict_global(&g, idx(&t, &[1, 1, 0])).expect("central idempotent"))
}

/// Finite-support action on Z_2 x Z_2 with support bound 1:
/// `e_1 = (1,0)`, `e_{-1} = (0,1)`, `alpha_1((0,a)) = (a,0)`.
pub fn swap2() -> Arc<TwistedPartialAction> {
    let r = cyclic_product(2, 2);
    let e1 = idx(&r, &[1, 0]);
    let em1 = idx(&r, &[0, 1]);
    let tables = FiniteSupportTables {
        bound: 1,
        idem: vec![em1, r.one(), e1],
        alpha_pairs: vec![
            (1, vec![(0, 0), (idx(&r, &[0, 1]), idx(&r, &[1, 0]))]),
            (-1, vec![(0, 0), (idx(&r, &[1, 0]), idx(&r, &[0, 1]))]),
        ],
        w_entries: vec![],
    };
    Arc::new(make_finite_support(r, tables).expect("well-typed tables"))
}

/// The same shape over Z_5 x Z_5, with a genuinely twisted unit pair:
/// `w_{1,-1} = (2,0)` and `w_{-1,1} = (0,2)` (the only nonzero corners).
pub fn swap5() -> Arc<TwistedPartialAction> {
    let r = cyclic_product(5, 2);
    let e1 = idx(&r, &[1, 0]);
    let em1 = idx(&r, &[0, 1]);
    let fwd: Vec<(usize, usize)> =
        (0..5).map(|a| (idx(&r, &[0, a]), idx(&r, &[a, 0]))).collect();
    let bwd: Vec<(usize, usize)> =
        (0..5).map(|c| (idx(&r, &[c, 0]), idx(&r, &[0, c]))).collect();
    let tables = FiniteSupportTables {
        bound: 1,
        idem: vec![em1, r.one(), e1],
        alpha_pairs: vec![(1, fwd), (-1, bwd)],
        w_entries: vec![(1, -1, idx(&r, &[2, 0])), (-1, 1, idx(&r, &[0, 2]))],
    };
    Arc::new(make_finite_support(r, tables).expect("well-typed tables"))
}

/// A global action presented as a partial action: Z_2 x Z_2 with the
/// coordinate swap, restricted at the identity (so every `D_i = R`).
pub fn global_swap() -> Arc<TwistedPartialAction> {
    let t = cyclic_product(2, 2);
    let beta = RingMorphism::from_factor_permutation(&t, &[1, 0]).expect("swap");
    let g = GlobalTwistedAction::new(t.clone(), beta, None).expect("valid global action");
    Arc::new(restrict_global(&g, t.one()).expect("identity is central idempotent"))
}

/// Trivial action (identity automorphism, trivial cocycle) on an arbitrary
/// cyclic product, restricted at the identity.
pub fn trivial_on(modulus: u64, n: usize) -> Arc<TwistedPartialAction> {
    let t = cyclic_product(modulus, n);
    let beta = RingMorphism::identity(t.card());
    let g = GlobalTwistedAction::new(t.clone(), beta, None).expect("identity action");
    Arc::new(restrict_global(&g, t.one()).expect("identity idempotent"))
}

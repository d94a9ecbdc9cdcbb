//! Ideal-theoretic predicates relative to a twisted partial action:
//! alpha-ideals and alpha-invariance, prime / alpha-prime / strongly
//! alpha-prime ideals (element criteria and ideal-pair definitions), and
//! the radicals Nil_*, Nil_alpha and N_alpha with their closed-form
//! descriptions for the series rings.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::paction::{Origin, TwistedPartialAction, Window};
use crate::ringcore::{
    enumerate_ideals, ideal_closure, ideal_product, intersect_all, IdealSet, RingOps,
};

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Classical element criterion: P is prime iff for all a, b outside P some
/// a r b stays outside P.  The whole ring is rejected, never called prime.
pub fn is_prime_ideal<R: RingOps + ?Sized>(ring: &R, p: &IdealSet) -> Result<bool> {
    Ok(prime_witness(ring, p)?.is_none())
}

/// Witness pair (a, b) with aRb inside P and a, b outside P, if any.
pub fn prime_witness<R: RingOps + ?Sized>(
    ring: &R,
    p: &IdealSet,
) -> Result<Option<(usize, usize)>> {
    if p.is_whole(ring) {
        return Err(Error::NotProper);
    }
    let n = ring.card();
    for a in 0..n {
        if p.contains(a) {
            continue;
        }
        'pair: for b in 0..n {
            if p.contains(b) {
                continue;
            }
            for r in 0..n {
                if !p.contains(ring.mul(ring.mul(a, r), b)) {
                    continue 'pair;
                }
            }
            return Ok(Some((a, b)));
        }
    }
    Ok(None)
}

/// All primes of the ring's ideal lattice, and their intersection.
pub fn prime_radical<R: RingOps + ?Sized>(
    ring: &R,
    cap: usize,
) -> Result<(Vec<IdealSet>, IdealSet)> {
    let lattice = enumerate_ideals(ring, cap)?;
    let mut primes = Vec::new();
    for i in lattice {
        if !i.is_whole(ring) && is_prime_ideal(ring, &i)? {
            primes.push(i);
        }
    }
    let refs: Vec<&IdealSet> = primes.iter().collect();
    let nil = intersect_all(ring, &refs);
    Ok((primes, nil))
}

/// `alpha_i(S ∩ D_{-i}) ⊆ S ∩ D_i` for all i >= 0.
pub fn is_alpha_ideal(act: &TwistedPartialAction, s: &IdealSet) -> bool {
    let r = &*act.ring;
    for i in act.nonneg_window_reps() {
        let one_neg = act.one_at(-i);
        for &x in &s.members {
            if r.mul(x, one_neg) == x && !s.contains(act.apply(i, x)) {
                return false;
            }
        }
    }
    true
}

/// `alpha_i(S ∩ D_{-i}) = S ∩ D_i` for all i.
pub fn is_alpha_invariant(act: &TwistedPartialAction, s: &IdealSet) -> bool {
    let r = &*act.ring;
    for i in act.window_reps() {
        let one_neg = act.one_at(-i);
        let one_pos = act.one_at(i);
        let mut image: Vec<usize> = s
            .members
            .iter()
            .copied()
            .filter(|&x| r.mul(x, one_neg) == x)
            .map(|x| act.apply(i, x))
            .collect();
        image.sort_unstable();
        image.dedup();
        let target: Vec<usize> = s
            .members
            .iter()
            .copied()
            .filter(|&x| r.mul(x, one_pos) == x)
            .collect();
        if image != target {
            return false;
        }
    }
    true
}

/// The alpha-invariant ideal generated by one element:
/// the ideal generated by all translates `alpha_i(a 1_{-i})`.
pub fn alpha_invariant_closure(act: &TwistedPartialAction, a: usize) -> IdealSet {
    let gens: Vec<usize> = act.window_reps().iter().map(|&i| act.apply(i, a)).collect();
    ideal_closure(&*act.ring, &gens)
}

fn require_invariant_proper(act: &TwistedPartialAction, p: &IdealSet) -> Result<()> {
    if p.is_whole(&*act.ring) {
        return Err(Error::NotProper);
    }
    if !is_alpha_invariant(act, p) {
        return Err(Error::NotAlphaInvariant);
    }
    Ok(())
}

/// Witness pair (a, b) outside P with `alpha_j(a 1_{-j}) R alpha_i(b 1_{-i})`
/// inside P for all window i, j — exhibits failure of alpha-primality.
pub fn alpha_prime_witness(
    act: &TwistedPartialAction,
    p: &IdealSet,
) -> Result<Option<(usize, usize)>> {
    require_invariant_proper(act, p)?;
    let r = &*act.ring;
    let n = r.card();
    let reps = act.window_reps();
    let translates = |a: usize| -> Vec<usize> {
        let mut v: Vec<usize> = reps.iter().map(|&j| act.apply(j, a)).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    for a in 0..n {
        if p.contains(a) {
            continue;
        }
        let ta = translates(a);
        'pair: for b in 0..n {
            if p.contains(b) {
                continue;
            }
            let tb = translates(b);
            for &u in &ta {
                for &v in &tb {
                    for s in 0..n {
                        if !p.contains(r.mul(r.mul(u, s), v)) {
                            continue 'pair;
                        }
                    }
                }
            }
            return Ok(Some((a, b)));
        }
    }
    Ok(None)
}

pub fn is_alpha_prime(act: &TwistedPartialAction, p: &IdealSet) -> Result<bool> {
    Ok(alpha_prime_witness(act, p)?.is_none())
}

/// Witness pair (a, b) outside P with `a R alpha_j(b 1_{-j})` inside P for
/// all j >= 0 — exhibits failure of strong alpha-primality.
pub fn strongly_alpha_prime_witness(
    act: &TwistedPartialAction,
    p: &IdealSet,
) -> Result<Option<(usize, usize)>> {
    require_invariant_proper(act, p)?;
    let r = &*act.ring;
    let n = r.card();
    let reps = act.nonneg_window_reps();
    for a in 0..n {
        if p.contains(a) {
            continue;
        }
        'pair: for b in 0..n {
            if p.contains(b) {
                continue;
            }
            for &j in &reps {
                let v = act.apply(j, b);
                for s in 0..n {
                    if !p.contains(r.mul(r.mul(a, s), v)) {
                        continue 'pair;
                    }
                }
            }
            return Ok(Some((a, b)));
        }
    }
    Ok(None)
}

pub fn is_strongly_alpha_prime(act: &TwistedPartialAction, p: &IdealSet) -> Result<bool> {
    Ok(strongly_alpha_prime_witness(act, p)?.is_none())
}

/// Ideal-pair form of alpha-primality: no pair of alpha-invariant ideals
/// J, K outside P has JK inside P.  Used to cross-check the element
/// criterion against the definition on small lattices.
pub fn is_alpha_prime_by_ideals(
    act: &TwistedPartialAction,
    p: &IdealSet,
    lattice: &[IdealSet],
) -> Result<bool> {
    require_invariant_proper(act, p)?;
    let r = &*act.ring;
    let invariant: Vec<&IdealSet> =
        lattice.iter().filter(|i| is_alpha_invariant(act, i)).collect();
    for j in &invariant {
        if is_subset(&j.members, &p.members) {
            continue;
        }
        for k in &invariant {
            if is_subset(&k.members, &p.members) {
                continue;
            }
            let prod = ideal_product(r, j, k);
            if is_subset(&prod.members, &p.members) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Ideal-pair form of strong alpha-primality: no ideal M and alpha-ideal N
/// outside P with MN inside P.
pub fn is_strongly_alpha_prime_by_ideals(
    act: &TwistedPartialAction,
    p: &IdealSet,
    lattice: &[IdealSet],
) -> Result<bool> {
    require_invariant_proper(act, p)?;
    let r = &*act.ring;
    let alpha_ideals: Vec<&IdealSet> =
        lattice.iter().filter(|i| is_alpha_ideal(act, i)).collect();
    for m in lattice {
        if is_subset(&m.members, &p.members) {
            continue;
        }
        for n in &alpha_ideals {
            if is_subset(&n.members, &p.members) {
                continue;
            }
            let prod = ideal_product(r, m, n);
            if is_subset(&prod.members, &p.members) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The three radicals of the base ring together with the prime lists that
/// define them.  Empty prime lists intersect to the whole ring.
pub struct RadicalBundle {
    pub nil_star: IdealSet,
    pub nil_alpha: IdealSet,
    pub n_alpha_strong: IdealSet,
    pub prime_list: Vec<IdealSet>,
    pub alpha_prime_list: Vec<IdealSet>,
    pub strongly_alpha_prime_list: Vec<IdealSet>,
}

pub fn radicals(act: &TwistedPartialAction, lattice_cap: usize) -> Result<RadicalBundle> {
    let r = &*act.ring;
    let lattice = enumerate_ideals(r, lattice_cap)?;
    let mut prime_list = Vec::new();
    let mut alpha_prime_list = Vec::new();
    let mut strongly_alpha_prime_list = Vec::new();
    for i in &lattice {
        if i.is_whole(r) {
            continue;
        }
        if is_prime_ideal(r, i)? {
            prime_list.push(i.clone());
        }
        if is_alpha_invariant(act, i) {
            if is_alpha_prime(act, i)? {
                alpha_prime_list.push(i.clone());
            }
            if is_strongly_alpha_prime(act, i)? {
                strongly_alpha_prime_list.push(i.clone());
            }
        }
    }
    let inter = |list: &[IdealSet]| {
        let refs: Vec<&IdealSet> = list.iter().collect();
        intersect_all(r, &refs)
    };
    Ok(RadicalBundle {
        nil_star: inter(&prime_list),
        nil_alpha: inter(&alpha_prime_list),
        n_alpha_strong: inter(&strongly_alpha_prime_list),
        prime_list,
        alpha_prime_list,
        strongly_alpha_prime_list,
    })
}

/// Whether a closed-form series-ring radical description is asserted by a
/// theorem for the given action, or only compared as a conjecture.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaBacking {
    TheoremBacked,
    Conjectural,
}

/// Coefficientwise description of a radical of a series ring: an allowed
/// coefficient set at degree 0 and per-degree sets elsewhere (stored on the
/// window; periodic or vanishing outside it).
pub struct SeriesRadicalFormula {
    pub backing: FormulaBacking,
    /// true for the two-sided Laurent shape, false for power series
    pub laurent: bool,
    window: Window,
    zero_set: Vec<usize>,
    nonzero: BTreeMap<i64, Vec<usize>>,
}

impl SeriesRadicalFormula {
    /// Allowed coefficient set at a given degree.
    pub fn coefficient_set(&self, degree: i64) -> &[usize] {
        if degree == 0 {
            return &self.zero_set;
        }
        let rep = match self.window {
            Window::Periodic { period } => {
                let r = degree.rem_euclid(period as i64);
                // nonzero multiples of the period share D_0 = R but keep the
                // nonzero-degree coefficient constraint, stored at key period
                if r == 0 { period as i64 } else { r }
            }
            Window::Support { .. } => degree,
        };
        match self.nonzero.get(&rep) {
            Some(v) => v.as_slice(),
            None => &self.nonzero[&i64::MAX],
        }
    }

    pub fn allows(&self, degree: i64, coeff: usize) -> bool {
        if degree < 0 && !self.laurent {
            return coeff == 0;
        }
        self.coefficient_set(degree).binary_search(&coeff).is_ok()
    }
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

fn formula_from_sets(
    act: &TwistedPartialAction,
    backing: FormulaBacking,
    laurent: bool,
    zero_set: Vec<usize>,
    coeff_ideal: &IdealSet,
) -> SeriesRadicalFormula {
    let mut nonzero = BTreeMap::new();
    let degrees: Vec<i64> = match act.window {
        Window::Periodic { period } => (1..=period as i64).collect(),
        Window::Support { bound } => {
            if laurent {
                (-bound..=bound).filter(|&d| d != 0).collect()
            } else {
                (1..=bound).collect()
            }
        }
    };
    for d in degrees {
        nonzero.insert(d, intersect_sorted(&coeff_ideal.members, &act.domain_ideal(d)));
    }
    // out-of-window fallback: the zero ideal
    nonzero.insert(i64::MAX, vec![0]);
    SeriesRadicalFormula { backing, laurent, window: act.window, zero_set, nonzero }
}

/// Right-hand side of the Laurent radical description:
/// `Nil_alpha(R)` coefficients in every degree (cut with `D_i`).
pub fn laurent_radical_formula(
    act: &TwistedPartialAction,
    bundle: &RadicalBundle,
) -> SeriesRadicalFormula {
    formula_from_sets(
        act,
        FormulaBacking::TheoremBacked,
        true,
        bundle.nil_alpha.members.clone(),
        &bundle.nil_alpha,
    )
}

/// Right-hand side of the power-series radical description:
/// `(N_alpha ∩ Nil_*)` at degree 0 and `N_alpha ∩ D_i` at degree i >= 1.
/// Theorem-backed when the action has enveloping data (restricted-global
/// presentations); otherwise a conjecture, compared but never asserted.
pub fn powerseries_radical_formula(
    act: &TwistedPartialAction,
    bundle: &RadicalBundle,
) -> SeriesRadicalFormula {
    let backing = match act.origin {
        Origin::RestrictedGlobal { .. } => FormulaBacking::TheoremBacked,
        _ => FormulaBacking::Conjectural,
    };
    let zero = intersect_sorted(&bundle.n_alpha_strong.members, &bundle.nil_star.members);
    formula_from_sets(act, backing, false, zero, &bundle.n_alpha_strong)
}

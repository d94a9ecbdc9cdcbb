//! Right-module structure of finite rings: simple right ideals, the right
//! socle, uniform dimension (computed as socle length, which is exact for
//! finite rings since the socle is essential), uniformity of right ideals,
//! the descending-chain description of `V R[[x;alpha,w]]` for simple V, and
//! the rank comparison between a base ring and its series rings.

use std::sync::Arc;

use rand::SeedableRng;

use crate::error::{Error, Result};
use crate::paction::{TwistedPartialAction, Window};
use crate::report::VerificationReport;
use crate::ringcore::RingOps;
use crate::skewseries::{
    materialize_finite, monomial, random_series, series_eq, series_make, series_mul, Flavor,
    SeriesRingHandle, SkewSeries,
};

/// Right ideal of a finite ring: closed under addition and right
/// multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightIdealSet {
    pub members: Vec<usize>,
    pub generators: Vec<usize>,
}

impl RightIdealSet {
    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.members == [0]
    }
}

/// Smallest right ideal containing the generators.
pub fn right_ideal_closure<R: RingOps + ?Sized>(ring: &R, gens: &[usize]) -> RightIdealSet {
    let n = ring.card();
    let mut in_set = vec![false; n];
    in_set[0] = true;
    let mut frontier: Vec<usize> = vec![0];
    for &g in gens {
        for s in 0..n {
            let x = ring.mul(g, s);
            if !in_set[x] {
                in_set[x] = true;
                frontier.push(x);
            }
        }
    }
    // additive closure
    let mut i = 0;
    while i < frontier.len() {
        let x = frontier[i];
        for j in 0..frontier.len() {
            let s = ring.add(x, frontier[j]);
            if !in_set[s] {
                in_set[s] = true;
                frontier.push(s);
            }
        }
        i += 1;
    }
    let mut members: Vec<usize> = (0..n).filter(|&x| in_set[x]).collect();
    members.sort_unstable();
    RightIdealSet { members, generators: gens.to_vec() }
}

pub fn principal_right_ideal<R: RingOps + ?Sized>(ring: &R, a: usize) -> RightIdealSet {
    right_ideal_closure(ring, &[a])
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// All minimal nonzero right ideals, found among the principal ones (every
/// nonzero right ideal contains a nonzero principal one).
pub fn simple_right_ideals<R: RingOps + ?Sized>(
    ring: &R,
    cap: usize,
) -> Result<Vec<RightIdealSet>> {
    let n = ring.card();
    if n > cap {
        return Err(Error::CapExceeded { got: n, cap });
    }
    let mut principal: Vec<RightIdealSet> = Vec::new();
    for a in 1..n {
        let p = principal_right_ideal(ring, a);
        if !principal.iter().any(|q| q.members == p.members) {
            principal.push(p);
        }
    }
    let minimal: Vec<RightIdealSet> = principal
        .iter()
        .filter(|p| {
            !principal
                .iter()
                .any(|q| q.members.len() < p.members.len() && is_subset(&q.members, &p.members))
        })
        .cloned()
        .collect();
    Ok(minimal)
}

/// True iff V is a minimal nonzero right ideal: every nonzero element of V
/// generates all of V.
pub fn is_simple_right_ideal<R: RingOps + ?Sized>(ring: &R, v: &RightIdealSet) -> bool {
    if v.is_zero() || v.is_empty() {
        return false;
    }
    v.members
        .iter()
        .filter(|&&a| a != 0)
        .all(|&a| principal_right_ideal(ring, a).members == v.members)
}

/// Sum of all simple right ideals.
pub fn right_socle<R: RingOps + ?Sized>(ring: &R, cap: usize) -> Result<RightIdealSet> {
    let simples = simple_right_ideals(ring, cap)?;
    let gens: Vec<usize> = simples.iter().flat_map(|s| s.members.iter().copied()).collect();
    Ok(right_ideal_closure(ring, &gens))
}

/// Uniform dimension with its justifying decomposition.
pub struct RankCertificate {
    pub rank: usize,
    pub socle_decomposition: Vec<RightIdealSet>,
    pub socle: RightIdealSet,
    /// why socle length equals the uniform dimension here
    pub justification: &'static str,
}

/// Uniform dimension of a finite ring, computed as the length of its right
/// socle: every nonzero right ideal of a finite ring contains a simple one,
/// so the socle is essential and an independent family of simples inside it
/// realizes the rank.
pub fn uniform_dim<R: RingOps + ?Sized>(ring: &R, cap: usize) -> Result<RankCertificate> {
    let simples = simple_right_ideals(ring, cap)?;
    let socle = right_socle(ring, cap)?;
    let mut chosen: Vec<RightIdealSet> = Vec::new();
    let mut sum = RightIdealSet { members: vec![0], generators: vec![] };
    for s in &simples {
        let meets_sum = s.members.iter().any(|&x| x != 0 && sum.contains(x));
        if meets_sum {
            continue;
        }
        let mut gens = sum.generators.clone();
        gens.extend(s.members.iter().copied());
        sum = right_ideal_closure(ring, &gens);
        chosen.push(s.clone());
    }
    debug_assert_eq!(sum.members, socle.members, "independent simples exhaust the socle");
    Ok(RankCertificate {
        rank: chosen.len(),
        socle_decomposition: chosen,
        socle,
        justification:
            "socle is essential in a finite ring, so its length is the uniform dimension",
    })
}

/// Uniformity over principal subideals: any nonzero right ideal contains a
/// principal one, so checking principal pairs suffices.
pub fn is_uniform_right_ideal<R: RingOps + ?Sized>(ring: &R, i: &RightIdealSet) -> bool {
    if i.is_zero() || i.is_empty() {
        return false;
    }
    let nonzero: Vec<usize> = i.members.iter().copied().filter(|&x| x != 0).collect();
    for (pos, &a) in nonzero.iter().enumerate() {
        let pa = principal_right_ideal(ring, a);
        for &b in &nonzero[pos..] {
            let pb = principal_right_ideal(ring, b);
            if !pa.members.iter().any(|&x| x != 0 && pb.contains(x)) {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// the chain of V R[[x;alpha,w]]

fn require_simple(act: &TwistedPartialAction, v: &RightIdealSet) -> Result<()> {
    if is_simple_right_ideal(&*act.ring, v) {
        Ok(())
    } else {
        Err(Error::NotSimple)
    }
}

/// Coefficient of a chain member: every coefficient in `V ∩ D_d`, zero
/// below degree k.
fn in_chain_member(v: &RightIdealSet, f: &SkewSeries, k: i64) -> bool {
    f.support().iter().all(|&d| d >= k && v.contains(f.coeff(d)))
}

/// Scan for b with `(v_k x^k)(b x^{d-k}) = u x^d`.
fn reach_monomial(
    act: &TwistedPartialAction,
    vk: usize,
    k: i64,
    u: usize,
    d: i64,
) -> Option<usize> {
    let r = &*act.ring;
    (0..r.card()).find(|&b| {
        let inner = r.mul(r.mul(act.apply_inv(k, vk), b), act.one_at(-k));
        r.mul(act.apply(k, inner), act.w(k, d - k)) == u
    })
}

/// Verify that the right-submodule structure of `V R[[x;alpha,w]]` is the
/// descending chain by leading degree.  Finite-support actions are checked
/// by full right-ideal enumeration of the materialized power ring; periodic
/// actions are checked at truncation `n` on `samples` random cyclic
/// generators, using the division recursion to pull each generator back to
/// its leading monomial.
pub fn uniform_chain_check(
    act: &Arc<TwistedPartialAction>,
    v: &RightIdealSet,
    n: i64,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    require_simple(act, v)?;
    let mut rep = VerificationReport::new("", "CHAIN-3.1");
    rep.param("truncation", n);
    rep.param("samples", samples as u64);
    rep.param("seed", seed);
    match act.window {
        Window::Support { bound } => chain_check_exact(act, v, bound, &mut rep)?,
        Window::Periodic { .. } => chain_check_sampled(act, v, n, samples, seed, &mut rep)?,
    }
    Ok(rep)
}

fn chain_check_exact(
    act: &Arc<TwistedPartialAction>,
    v: &RightIdealSet,
    bound: i64,
    rep: &mut VerificationReport,
) -> Result<()> {
    let m = materialize_finite(act, Flavor::Power, crate::ringcore::DEFAULT_RING_CAP)?;
    // chain members C_k = { f : all coefficients in V ∩ D_d, degrees >= k }
    let chain: Vec<Vec<usize>> = (0..=bound + 1)
        .map(|k| {
            (0..m.ring.card())
                .filter(|&i| in_chain_member(v, &m.decode_series(i), k))
                .collect()
        })
        .collect();
    for w in chain.windows(2) {
        if !is_subset(&w[1], &w[0]) {
            rep.fail("chain:descending", "chain members not nested", serde_json::json!({}));
            return Ok(());
        }
    }
    rep.pass("chain:descending", format!("{} nested members", chain.len()));
    // every right subideal of C_0 is one of the chain members
    let c0 = &chain[0];
    let mut sub_ideals: Vec<Vec<usize>> = Vec::new();
    // right ideals of the materialized ring contained in C_0: closures of
    // subsets of C_0; generated from single elements and joins
    let mut pending: Vec<Vec<usize>> = c0
        .iter()
        .map(|&a| principal_right_ideal(&*m.ring, a).members)
        .filter(|mem| is_subset(mem, c0))
        .collect();
    while let Some(cur) = pending.pop() {
        if sub_ideals.contains(&cur) {
            continue;
        }
        for other in sub_ideals.clone() {
            let mut gens = cur.clone();
            gens.extend(other);
            let join = right_ideal_closure(&*m.ring, &gens).members;
            if is_subset(&join, c0) && !sub_ideals.contains(&join) && join != cur {
                pending.push(join);
            }
        }
        sub_ideals.push(cur);
    }
    sub_ideals.sort();
    let mut expected: Vec<Vec<usize>> = chain.clone();
    expected.sort();
    expected.dedup();
    if sub_ideals == expected {
        rep.pass(
            "chain:lattice",
            format!("submodule lattice is exactly the chain ({} members)", expected.len()),
        );
    } else {
        rep.fail(
            "chain:lattice",
            format!("{} submodules vs {} chain members", sub_ideals.len(), expected.len()),
            serde_json::json!({"submodules": sub_ideals.len(), "chain": expected.len()}),
        );
    }
    Ok(())
}

fn chain_check_sampled(
    act: &Arc<TwistedPartialAction>,
    v: &RightIdealSet,
    n: i64,
    samples: usize,
    seed: u64,
    rep: &mut VerificationReport,
) -> Result<()> {
    let r = &*act.ring.clone();
    let h = SeriesRingHandle::new(act.clone(), Flavor::Power, n)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0usize;
    for _ in 0..samples {
        // random element of V R[[x]]: coefficients cut into V ∩ D_d
        let raw = random_series(&h, &mut rng, 0, n);
        let cut: Vec<(i64, usize)> = raw
            .support()
            .iter()
            .map(|&d| {
                let c = raw.coeff(d);
                let vc = v.members[c % v.members.len()];
                (d, r.mul(vc, act.one_at(d)))
            })
            .collect();
        let f = series_make(&h, &cut)?;
        let k = match f.lower_degree() {
            Some(k) => k,
            None => continue,
        };
        let vk = f.coeff(k);
        // membership: f lies in the chain member of its leading degree
        if !in_chain_member(v, &f, k) {
            rep.fail(
                "chain:membership",
                "sampled element escapes its chain member",
                serde_json::json!({"f": f.describe()}),
            );
            return Ok(());
        }
        // pull f back to its leading monomial: find g with f g = v_k x^k
        let g = match shifted_divide(&f) {
            Some(g) => g,
            None => {
                rep.fail(
                    "chain:division",
                    "no right factor recovers the leading monomial",
                    serde_json::json!({"f": f.describe()}),
                );
                return Ok(());
            }
        };
        let lead = monomial(&h, k, vk)?;
        if !series_eq(&series_mul(&f, &g)?, &lead)? {
            rep.fail(
                "chain:division",
                "division identity failed",
                serde_json::json!({"f": f.describe(), "g": g.describe()}),
            );
            return Ok(());
        }
        // the leading monomial reaches every monomial of the chain member
        for d in k..n {
            for &u in &v.members {
                let u = r.mul(u, act.one_at(d));
                if u != 0 && reach_monomial(act, vk, k, u, d).is_none() {
                    rep.fail(
                        "chain:generation",
                        format!("monomial at degree {d} unreachable"),
                        serde_json::json!({"u": r.label(u), "d": d, "f": f.describe()}),
                    );
                    return Ok(());
                }
            }
        }
        checked += 1;
    }
    rep.pass(
        "chain:sampled",
        format!("{checked} cyclic generators match their chain member at truncation"),
    );
    Ok(())
}

/// For `f` with leading coefficient `v_k` at degree `k`, find `g` with
/// `f g = v_k x^k` at the truncation, solving coefficient by coefficient.
fn shifted_divide(f: &SkewSeries) -> Option<SkewSeries> {
    let h = &f.handle;
    let act = &h.action;
    let r = &*act.ring;
    let k = f.lower_degree()?;
    let vk = f.coeff(k);
    let n = h.trunc;
    let mut g: Vec<usize> = vec![0; (n - k) as usize];
    g[0] = r.one();
    for m in 1..(n - k) {
        // the x^{k+m} coefficient of f g must vanish; the unknown g_m enters
        // through the i = k term
        let mut fixed = 0usize;
        for i in (k + 1)..=(k + m) {
            let j = k + m - i;
            let a = f.coeff(i);
            if a == 0 || g[j as usize] == 0 {
                continue;
            }
            let term = r.mul(
                act.apply(i, r.mul(act.apply_inv(i, a), g[j as usize])),
                act.w(i, j),
            );
            fixed = r.add(fixed, term);
        }
        let target = r.neg(fixed);
        let gm = (0..r.card()).find(|&b| {
            r.mul(act.apply(k, r.mul(act.apply_inv(k, vk), b)), act.w(k, m)) == target
        })?;
        g[m as usize] = gm;
    }
    let coeffs: Vec<(i64, usize)> = g
        .iter()
        .enumerate()
        .map(|(m, &c)| (m as i64, r.mul(c, act.one_at(m as i64))))
        .collect();
    // the solved coefficients may stick out of D_m; cutting is harmless for
    // the product against f, whose coefficients absorb the corner
    series_make(h, &coeffs).ok()
}

// ---------------------------------------------------------------------------
// rank comparison

/// Compare the uniform dimension of the base ring with its series rings.
/// Finite-support actions are compared exactly on both materialized rings;
/// restricted-global actions get the decomposition-mode certificate: the
/// base splits into simple summands and each summand's extension is checked
/// uniform through the chain description.
pub fn rank_comparison(
    act: &Arc<TwistedPartialAction>,
    n: i64,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let r = &*act.ring;
    let (_, nil) = crate::ideals::prime_radical(r, crate::ringcore::DEFAULT_LATTICE_CAP)?;
    if nil.members != [0] {
        return Err(Error::NotSemiprime);
    }
    let mut rep = VerificationReport::new("", "RANK-3.3");
    let base = uniform_dim(r, crate::ringcore::DEFAULT_RING_CAP)?;
    rep.param("rank_base", base.rank as u64);
    match act.window {
        Window::Support { .. } => {
            let mut ranks = vec![base.rank];
            for flavor in [Flavor::Power, Flavor::Laurent] {
                let tag = if flavor == Flavor::Power { "power" } else { "laurent" };
                let m = materialize_finite(act, flavor, crate::ringcore::DEFAULT_RING_CAP)?;
                let cert = uniform_dim(&*m.ring, crate::ringcore::DEFAULT_RING_CAP)?;
                rep.param(&format!("rank_{tag}"), cert.rank as u64);
                ranks.push(cert.rank);
            }
            if ranks.iter().all(|&x| x == base.rank) {
                rep.pass(
                    "rank:equality",
                    format!("rank {} in the base and both series rings", base.rank),
                );
            } else {
                rep.fail(
                    "rank:equality",
                    format!("ranks diverge: {ranks:?}"),
                    serde_json::json!({"ranks": ranks}),
                );
            }
        }
        Window::Periodic { .. } => {
            rep.param("mode", "decomposition");
            rep.param("summands", base.rank as u64);
            let mut all_ok = true;
            for (idx, vi) in base.socle_decomposition.iter().enumerate() {
                let sub =
                    uniform_chain_check(act, vi, n, samples, seed.wrapping_add(idx as u64))?;
                let ok = sub.passed();
                all_ok &= ok;
                rep.push_item(
                    &format!("summand:{idx}"),
                    if ok { crate::report::Status::Pass } else { crate::report::Status::Fail },
                    format!("extension of a simple summand of size {}", vi.len()),
                );
            }
            if all_ok {
                rep.pass(
                    "rank:certificate",
                    format!("{} uniform summand extensions", base.rank),
                );
            } else {
                rep.fail(
                    "rank:certificate",
                    "a summand extension failed its chain check",
                    serde_json::json!({}),
                );
            }
        }
    }
    Ok(rep)
}

//! Truncated arithmetic in the twisted partial skew power-series and
//! Laurent-series rings, exact finite materialization for finite-support
//! actions, the leading-coefficient division recursion, coefficientwise
//! ideal extensions, the quotient isomorphism check, and the Morita
//! context ring against the enveloping global action.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::paction::{quotient_action, Origin, TwistedPartialAction, Window};
use crate::report::VerificationReport;
use crate::ringcore::{IdealSet, RingOps, TableRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Power,
    Laurent,
}

/// A truncated series ring over a fixed action: coefficients are kept for
/// degrees below `trunc` (and at or above 0 for the power flavor; the lower
/// side of Laurent series is exact).
pub struct SeriesRingHandle {
    pub action: Arc<TwistedPartialAction>,
    pub flavor: Flavor,
    pub trunc: i64,
}

impl SeriesRingHandle {
    pub fn new(
        action: Arc<TwistedPartialAction>,
        flavor: Flavor,
        trunc: i64,
    ) -> Result<Arc<SeriesRingHandle>> {
        if trunc < 1 {
            return Err(Error::Invalid("truncation must be at least 1".into()));
        }
        Ok(Arc::new(SeriesRingHandle { action, flavor, trunc }))
    }

    fn degree_ok(&self, d: i64) -> bool {
        d < self.trunc && (self.flavor == Flavor::Laurent || d >= 0)
    }
}

/// Element of a series ring: finitely many nonzero coefficients, each in
/// its domain ideal `D_i`.
#[derive(Clone)]
pub struct SkewSeries {
    pub handle: Arc<SeriesRingHandle>,
    coeffs: BTreeMap<i64, usize>,
}

impl SkewSeries {
    pub fn coeff(&self, d: i64) -> usize {
        self.coeffs.get(&d).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the lowest nonzero coefficient.
    pub fn lower_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn support(&self) -> Vec<i64> {
        self.coeffs.keys().copied().collect()
    }

    pub fn describe(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let r = &*self.handle.action.ring;
        self.coeffs
            .iter()
            .map(|(&d, &c)| {
                if d == 0 {
                    r.label(c)
                } else {
                    format!("{}x^{}", r.label(c), d)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn same_handle(f: &SkewSeries, g: &SkewSeries) -> Result<()> {
    if Arc::ptr_eq(&f.handle, &g.handle) {
        Ok(())
    } else {
        Err(Error::HandleMismatch)
    }
}

pub fn series_make(h: &Arc<SeriesRingHandle>, coeffs: &[(i64, usize)]) -> Result<SkewSeries> {
    let act = &h.action;
    let r = &*act.ring;
    let mut map = BTreeMap::new();
    for &(d, c) in coeffs {
        if !h.degree_ok(d) {
            return Err(Error::Invalid(format!("degree {d} outside the ring's window")));
        }
        if r.mul(c, act.one_at(d)) != c {
            return Err(Error::CoefficientOutsideDomainIdeal {
                degree: d,
                coeff: r.label(c),
            });
        }
        if c != 0 && map.insert(d, c).is_some() {
            return Err(Error::Invalid(format!("duplicate coefficient at degree {d}")));
        }
    }
    Ok(SkewSeries { handle: h.clone(), coeffs: map })
}

pub fn series_zero(h: &Arc<SeriesRingHandle>) -> SkewSeries {
    SkewSeries { handle: h.clone(), coeffs: BTreeMap::new() }
}

pub fn series_one(h: &Arc<SeriesRingHandle>) -> SkewSeries {
    let one = h.action.ring.one();
    series_make(h, &[(0, one)]).expect("identity coefficient is in D_0")
}

pub fn monomial(h: &Arc<SeriesRingHandle>, d: i64, c: usize) -> Result<SkewSeries> {
    series_make(h, &[(d, c)])
}

pub fn series_add(f: &SkewSeries, g: &SkewSeries) -> Result<SkewSeries> {
    same_handle(f, g)?;
    let r = &*f.handle.action.ring;
    let mut out = f.coeffs.clone();
    for (&d, &c) in &g.coeffs {
        let v = r.add(out.get(&d).copied().unwrap_or(0), c);
        if v == 0 {
            out.remove(&d);
        } else {
            out.insert(d, v);
        }
    }
    Ok(SkewSeries { handle: f.handle.clone(), coeffs: out })
}

pub fn series_neg(f: &SkewSeries) -> SkewSeries {
    let r = &*f.handle.action.ring;
    let coeffs = f.coeffs.iter().map(|(&d, &c)| (d, r.neg(c))).collect();
    SkewSeries { handle: f.handle.clone(), coeffs }
}

pub fn series_eq(f: &SkewSeries, g: &SkewSeries) -> Result<bool> {
    same_handle(f, g)?;
    Ok(f.coeffs == g.coeffs)
}

/// Bilinear extension of the monomial rule
/// `(a x^i)(b x^j) = alpha_i(alpha_i^{-1}(a) b) w_{i,j} x^{i+j}`,
/// truncated above.
pub fn series_mul(f: &SkewSeries, g: &SkewSeries) -> Result<SkewSeries> {
    same_handle(f, g)?;
    let h = &f.handle;
    let act = &h.action;
    let r = &*act.ring;
    let mut out: BTreeMap<i64, usize> = BTreeMap::new();
    for (&i, &a) in &f.coeffs {
        for (&j, &b) in &g.coeffs {
            let d = i + j;
            if d >= h.trunc {
                continue;
            }
            let term = r.mul(act.apply(i, r.mul(act.apply_inv(i, a), b)), act.w(i, j));
            if term == 0 {
                continue;
            }
            let v = r.add(out.get(&d).copied().unwrap_or(0), term);
            if v == 0 {
                out.remove(&d);
            } else {
                out.insert(d, v);
            }
        }
    }
    Ok(SkewSeries { handle: h.clone(), coeffs: out })
}

/// Random series with coefficients drawn from the domain ideals, support in
/// `[lower, upper)` clipped to the ring's window.
pub fn random_series<T: Rng>(
    h: &Arc<SeriesRingHandle>,
    rng: &mut T,
    lower: i64,
    upper: i64,
) -> SkewSeries {
    let act = &h.action;
    let r = &*act.ring;
    let lo = if h.flavor == Flavor::Power { lower.max(0) } else { lower };
    let hi = upper.min(h.trunc);
    let mut coeffs = BTreeMap::new();
    for d in lo..hi {
        let c = r.mul(rng.gen_range(0..r.card()), act.one_at(d));
        if c != 0 {
            coeffs.insert(d, c);
        }
    }
    SkewSeries { handle: h.clone(), coeffs }
}

/// All coefficients of `f` lie in `s` (used for the symbolic form of the
/// coefficientwise ideal extension `S[[x]]` / `S<x>`).
pub fn in_coefficient_extension(f: &SkewSeries, s: &IdealSet) -> bool {
    f.coeffs.values().all(|&c| s.contains(c))
}

// ---------------------------------------------------------------------------
// finite materialization

/// Exact finite ring carrying a series ring of a finite-support action:
/// one coefficient slot per in-window degree, multiplication delegated to
/// `series_mul` (exact, since all products beyond the support vanish).
pub struct Materialized {
    pub ring: Arc<TableRing>,
    pub handle: Arc<SeriesRingHandle>,
    slots: Vec<(i64, Vec<usize>)>,
}

impl Materialized {
    pub fn decode_series(&self, mut idx: usize) -> SkewSeries {
        let mut coeffs = BTreeMap::new();
        for (d, dom) in self.slots.iter().rev() {
            let c = dom[idx % dom.len()];
            idx /= dom.len();
            if c != 0 {
                coeffs.insert(*d, c);
            }
        }
        SkewSeries { handle: self.handle.clone(), coeffs }
    }

    pub fn encode_series(&self, f: &SkewSeries) -> Result<usize> {
        if !Arc::ptr_eq(&f.handle, &self.handle) {
            return Err(Error::HandleMismatch);
        }
        let mut idx = 0usize;
        for (d, dom) in &self.slots {
            let pos = dom
                .binary_search(&f.coeff(*d))
                .map_err(|_| Error::Invalid(format!("coefficient at degree {d} not in D_{d}")))?;
            idx = idx * dom.len() + pos;
        }
        Ok(idx)
    }

    /// Index of `a x^0`.
    pub fn embed_base(&self, a: usize) -> usize {
        let f = monomial(&self.handle, 0, a).expect("base elements lie in D_0");
        self.encode_series(&f).expect("embedding is total")
    }

    /// `{a in R : a x^0 in K}` for a member set K of the materialized ring.
    pub fn contract_to_base(&self, members: &[usize]) -> Vec<usize> {
        let n = self.handle.action.ring.card();
        (0..n).filter(|&a| members.binary_search(&self.embed_base(a)).is_ok()).collect()
    }
}

pub fn materialize_finite(
    action: &Arc<TwistedPartialAction>,
    flavor: Flavor,
    cap: usize,
) -> Result<Materialized> {
    let bound = match action.window {
        Window::Support { bound } => bound,
        Window::Periodic { .. } => return Err(Error::NotFiniteSupport),
    };
    let handle = SeriesRingHandle::new(action.clone(), flavor, bound + 1)?;
    let degrees: Vec<i64> = match flavor {
        Flavor::Power => (0..=bound).collect(),
        Flavor::Laurent => (-bound..=bound).collect(),
    };
    let slots: Vec<(i64, Vec<usize>)> =
        degrees.into_iter().map(|d| (d, action.domain_ideal(d))).collect();
    let mut card = 1usize;
    for (_, dom) in &slots {
        card = card
            .checked_mul(dom.len())
            .ok_or(Error::CapExceeded { got: usize::MAX, cap })?;
        if card > cap {
            return Err(Error::CapExceeded { got: card, cap });
        }
    }
    let shell = Materialized { ring: TableRing::build(1, 0, vec!["0".into()], |_, _| 0, |_, _| 0, |_| 0), handle, slots };
    let one_idx = shell.encode_series(&series_one(&shell.handle))?;
    let labels: Vec<String> = (0..card).map(|i| shell.decode_series(i).describe()).collect();
    let ring = TableRing::build(
        card,
        one_idx,
        labels,
        |a, b| {
            let f = shell.decode_series(a);
            let g = shell.decode_series(b);
            shell.encode_series(&series_add(&f, &g).unwrap()).unwrap()
        },
        |a, b| {
            let f = shell.decode_series(a);
            let g = shell.decode_series(b);
            shell.encode_series(&series_mul(&f, &g).unwrap()).unwrap()
        },
        |a| {
            let f = shell.decode_series(a);
            shell.encode_series(&series_neg(&f)).unwrap()
        },
    );
    Ok(Materialized { ring, handle: shell.handle, slots: shell.slots })
}

/// Coefficientwise extension of an ideal of the base ring, as an explicit
/// ideal of the materialized series ring.
pub fn ideal_extension_materialized(m: &Materialized, s: &IdealSet) -> IdealSet {
    let members: Vec<usize> = (0..m.ring.card())
        .filter(|&idx| in_coefficient_extension(&m.decode_series(idx), s))
        .collect();
    IdealSet { generators: members.clone(), members }
}

// ---------------------------------------------------------------------------
// division recursion

/// Given a power series `f = v_0 + v_0 a_1 x + v_0 a_2 x^2 + ...` with
/// nonzero constant coefficient and the decomposition `a_i` supplied by the
/// caller, produce `g = 1 + u_1 x + ...` with `f g = v_0` modulo `x^N`,
/// via the recursion `u_n = -a_n - sum_i a_i alpha_i(u_{n-i} 1_{-i}) w_{i,n-i}`.
pub fn lemma31_divide(
    f: &SkewSeries,
    decomposition: &BTreeMap<i64, usize>,
) -> Result<SkewSeries> {
    let h = &f.handle;
    if h.flavor != Flavor::Power {
        return Err(Error::Invalid("division recursion applies to power series".into()));
    }
    let act = &h.action;
    let r = &*act.ring;
    let v0 = f.coeff(0);
    if v0 == 0 {
        return Err(Error::Invalid("constant coefficient must be nonzero".into()));
    }
    let n = h.trunc;
    // validate, then cut each a_i into D_i (harmless: v_0 a_i = v_0 a_i 1_i)
    let mut a = vec![0usize; n as usize];
    for d in 1..n {
        let ad = decomposition.get(&d).copied().unwrap_or(0);
        if r.mul(v0, ad) != f.coeff(d) {
            return Err(Error::DecompositionInvalid(d));
        }
        a[d as usize] = r.mul(ad, act.one_at(d));
    }
    let mut u = vec![0usize; n as usize];
    for m in 1..n {
        let mut acc = a[m as usize];
        for i in 1..m {
            let term = r.mul(
                r.mul(a[i as usize], act.apply(i, u[(m - i) as usize])),
                act.w(i, m - i),
            );
            acc = r.add(acc, term);
        }
        u[m as usize] = r.neg(acc);
    }
    let mut coeffs: Vec<(i64, usize)> = vec![(0, r.one())];
    for d in 1..n {
        coeffs.push((d, u[d as usize]));
    }
    series_make(h, &coeffs)
}

/// Search decomposition coefficients `a_i` with `v_i = v_0 a_i` by linear
/// scan over the ring; `None` when some coefficient is not divisible.
pub fn solve_decomposition(f: &SkewSeries) -> Option<BTreeMap<i64, usize>> {
    let h = &f.handle;
    let r = &*h.action.ring;
    let v0 = f.coeff(0);
    let mut out = BTreeMap::new();
    for d in 1..h.trunc {
        let vd = f.coeff(d);
        let ad = (0..r.card()).find(|&x| r.mul(v0, x) == vd)?;
        if ad != 0 {
            out.insert(d, ad);
        }
    }
    Some(out)
}

/// Witness search from the semiprimality argument: for nonzero Laurent `f`
/// with lowest degree `s`, find `b in D_{-s}` with `f (b x^{-s}) f != 0`.
pub fn semiprime_witness(f: &SkewSeries) -> Result<Option<SkewSeries>> {
    let s = match f.lower_degree() {
        Some(s) => s,
        None => return Err(Error::Invalid("witness search needs a nonzero series".into())),
    };
    let h = &f.handle;
    if h.flavor == Flavor::Power && s > 0 {
        return Err(Error::Invalid("witness search runs in the Laurent ring".into()));
    }
    for b in h.action.domain_ideal(-s) {
        let g = monomial(h, -s, b)?;
        let prod = series_mul(&series_mul(f, &g)?, f)?;
        if !prod.is_zero() {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// quotient isomorphism

fn project_series(
    f: &SkewSeries,
    qh: &Arc<SeriesRingHandle>,
    q: &Arc<crate::ringcore::QuotientRing>,
) -> SkewSeries {
    let coeffs: Vec<(i64, usize)> =
        f.coeffs.iter().map(|(&d, &c)| (d, q.project(c))).collect();
    series_make(qh, &coeffs).expect("projection preserves domain ideals")
}

/// Check that coefficientwise projection realizes
/// `R[[x]]/I[[x]] ~ (R/I)[[x]]` (and the Laurent analogue): exact on
/// materialized finite-support fixtures, sampled at truncation otherwise.
pub fn quotient_iso_check(
    act: &Arc<TwistedPartialAction>,
    ideal: &IdealSet,
    trunc: i64,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let (qact, q) = quotient_action(act, ideal)?;
    let qact = Arc::new(qact);
    let mut rep = VerificationReport::new("", "ISO-2.1");
    rep.param("truncation", trunc);
    rep.param("samples", samples as u64);
    rep.param("seed", seed);
    match act.window {
        Window::Support { .. } => {
            for flavor in [Flavor::Power, Flavor::Laurent] {
                let tag = if flavor == Flavor::Power { "power" } else { "laurent" };
                let m = materialize_finite(act, flavor, crate::ringcore::DEFAULT_LATTICE_CAP)?;
                let mq = materialize_finite(&qact, flavor, crate::ringcore::DEFAULT_LATTICE_CAP)?;
                let phi: Vec<usize> = (0..m.ring.card())
                    .map(|idx| {
                        let pf = project_series(&m.decode_series(idx), &mq.handle, &q);
                        mq.encode_series(&pf).expect("projected series encodes")
                    })
                    .collect();
                let mut ok = true;
                for x in 0..m.ring.card() {
                    for y in 0..m.ring.card() {
                        if phi[m.ring.add(x, y)] != mq.ring.add(phi[x], phi[y])
                            || phi[m.ring.mul(x, y)] != mq.ring.mul(phi[x], phi[y])
                        {
                            ok = false;
                            rep.fail(
                                &format!("{tag}:homomorphism"),
                                "projection is not a ring homomorphism",
                                serde_json::json!({"x": m.ring.label(x), "y": m.ring.label(y)}),
                            );
                        }
                    }
                }
                if ok {
                    rep.pass(&format!("{tag}:homomorphism"), "projection is a ring homomorphism");
                }
                let mut image: Vec<usize> = phi.clone();
                image.sort_unstable();
                image.dedup();
                if image.len() == mq.ring.card() {
                    rep.pass(&format!("{tag}:surjective"), "projection is onto");
                } else {
                    rep.fail(
                        &format!("{tag}:surjective"),
                        format!("image has {} of {} classes", image.len(), mq.ring.card()),
                        serde_json::json!({"image": image.len(), "card": mq.ring.card()}),
                    );
                }
                let kernel: Vec<usize> =
                    (0..m.ring.card()).filter(|&i| phi[i] == mq.ring.zero()).collect();
                let ext = ideal_extension_materialized(&m, ideal);
                if kernel == ext.members {
                    rep.pass(
                        &format!("{tag}:kernel"),
                        "kernel is the coefficientwise extension of I",
                    );
                } else {
                    rep.fail(
                        &format!("{tag}:kernel"),
                        "kernel differs from the coefficientwise extension",
                        serde_json::json!({"kernel": kernel.len(), "extension": ext.len()}),
                    );
                }
            }
        }
        Window::Periodic { .. } => {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let h = SeriesRingHandle::new(act.clone(), Flavor::Power, trunc)?;
            let qh = SeriesRingHandle::new(qact.clone(), Flavor::Power, trunc)?;
            let mut ok = true;
            for _ in 0..samples {
                let f = random_series(&h, &mut rng, 0, trunc);
                let g = random_series(&h, &mut rng, 0, trunc);
                let hom_add = series_eq(
                    &project_series(&series_add(&f, &g)?, &qh, &q),
                    &series_add(&project_series(&f, &qh, &q), &project_series(&g, &qh, &q))?,
                )?;
                let hom_mul = series_eq(
                    &project_series(&series_mul(&f, &g)?, &qh, &q),
                    &series_mul(&project_series(&f, &qh, &q), &project_series(&g, &qh, &q))?,
                )?;
                if !(hom_add && hom_mul) {
                    ok = false;
                    rep.fail(
                        "sampled:homomorphism",
                        "projection failed on a sampled pair",
                        serde_json::json!({"f": f.describe(), "g": g.describe()}),
                    );
                    break;
                }
            }
            if ok {
                rep.pass("sampled:homomorphism", format!("{samples} sampled pairs"));
            }
            // surjectivity via coefficientwise lifting
            let mut ok = true;
            for _ in 0..samples.min(1000) {
                let target = random_series(&qh, &mut rng, 0, trunc);
                let lifted: Vec<(i64, usize)> = target
                    .coeffs
                    .iter()
                    .map(|(&d, &c)| {
                        (d, act.ring.mul(q.rep(c), act.one_at(d)))
                    })
                    .collect();
                let lift = series_make(&h, &lifted)?;
                if !series_eq(&project_series(&lift, &qh, &q), &target)? {
                    ok = false;
                    rep.fail(
                        "sampled:lift",
                        "coefficientwise lift failed",
                        serde_json::json!({"target": target.describe()}),
                    );
                    break;
                }
            }
            if ok {
                rep.pass("sampled:lift", "every sampled quotient series lifts");
            }
            // kernel direction: series with coefficients in I project to zero
            let mut ok = true;
            for _ in 0..samples.min(1000) {
                // random element of the coefficientwise extension of I:
                // a member of I pushed into D_d at each degree
                let cut: Vec<(i64, usize)> = (0..trunc)
                    .map(|d| {
                        let m = ideal.members[rng.gen_range(0..ideal.members.len())];
                        (d, act.ring.mul(m, act.one_at(d)))
                    })
                    .collect();
                let g = series_make(&h, &cut)?;
                if !in_coefficient_extension(&g, ideal)
                    || !project_series(&g, &qh, &q).is_zero()
                {
                    ok = false;
                    rep.fail(
                        "sampled:kernel",
                        "extension element did not project to zero",
                        serde_json::json!({"g": g.describe()}),
                    );
                    break;
                }
            }
            if ok {
                rep.pass("sampled:kernel", "coefficientwise extension lies in the kernel");
            }
        }
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Morita context

/// The formal 2x2 array ring over the Laurent series ring of the enveloping
/// global action: diagonal entries from the partial-side and global-side
/// series rings, off-diagonal entries from the bimodules U (coefficients in
/// R) and V (coefficients in `beta_i(R)`).  All four entries are stored as
/// series over the global ring; the partial-side product computed there
/// agrees with the partial series ring's own product by the enveloping
/// compatibility conditions.
pub struct MoritaContextRing {
    pub global_handle: Arc<SeriesRingHandle>,
    /// idempotent generating R, as an element of the series ring's base
    e: usize,
    global: Arc<crate::paction::GlobalTwistedAction>,
    /// relabeling between the series ring's base and the global ring
    parent_of: Vec<usize>,
    local_of: Vec<usize>,
}

/// One element of the array ring, in the layout
/// `[[partial, U], [V, global]]` so that every block product is typed by
/// the bimodule structure (U is a partial-global bimodule, V the reverse).
#[derive(Clone)]
pub struct MoritaElement {
    /// partial-side entry (coefficients in `e beta^i(e) T`)
    pub a: SkewSeries,
    /// U entry (coefficients in `e T = R`)
    pub u: SkewSeries,
    /// V entry (coefficients in `beta^i(e) T`)
    pub v: SkewSeries,
    /// global-side entry
    pub b: SkewSeries,
}

impl MoritaContextRing {
    fn ring(&self) -> &Arc<dyn RingOps> {
        &self.global_handle.action.ring
    }

    fn idem_partial(&self, i: i64) -> usize {
        let t = self.ring();
        let be = self.beta_e(i);
        t.mul(self.e, be)
    }

    fn beta_e(&self, i: i64) -> usize {
        let parent = self.global.beta_pow(i, self.parent_of[self.e]);
        self.local_of[parent]
    }

    pub fn in_partial_side(&self, f: &SkewSeries) -> bool {
        let t = self.ring();
        f.support().iter().all(|&d| {
            let c = f.coeff(d);
            t.mul(c, self.idem_partial(d)) == c
        })
    }

    pub fn in_u(&self, f: &SkewSeries) -> bool {
        let t = self.ring();
        f.support().iter().all(|&d| {
            let c = f.coeff(d);
            t.mul(c, self.e) == c
        })
    }

    pub fn in_v(&self, f: &SkewSeries) -> bool {
        let t = self.ring();
        f.support().iter().all(|&d| {
            let c = f.coeff(d);
            t.mul(c, self.beta_e(d)) == c
        })
    }

    pub fn zero(&self) -> MoritaElement {
        let z = series_zero(&self.global_handle);
        MoritaElement { a: z.clone(), v: z.clone(), u: z.clone(), b: z }
    }

    pub fn identity(&self) -> MoritaElement {
        let z = series_zero(&self.global_handle);
        let a = monomial(&self.global_handle, 0, self.e).expect("e lies in T");
        let b = series_one(&self.global_handle);
        MoritaElement { a, v: z.clone(), u: z, b }
    }

    pub fn add(&self, x: &MoritaElement, y: &MoritaElement) -> Result<MoritaElement> {
        Ok(MoritaElement {
            a: series_add(&x.a, &y.a)?,
            v: series_add(&x.v, &y.v)?,
            u: series_add(&x.u, &y.u)?,
            b: series_add(&x.b, &y.b)?,
        })
    }

    pub fn mul(&self, x: &MoritaElement, y: &MoritaElement) -> Result<MoritaElement> {
        let s = |p: &SkewSeries, q: &SkewSeries| series_mul(p, q);
        Ok(MoritaElement {
            a: series_add(&s(&x.a, &y.a)?, &s(&x.u, &y.v)?)?,
            u: series_add(&s(&x.a, &y.u)?, &s(&x.u, &y.b)?)?,
            v: series_add(&s(&x.v, &y.a)?, &s(&x.b, &y.v)?)?,
            b: series_add(&s(&x.v, &y.u)?, &s(&x.b, &y.b)?)?,
        })
    }

    pub fn eq(&self, x: &MoritaElement, y: &MoritaElement) -> Result<bool> {
        Ok(series_eq(&x.a, &y.a)?
            && series_eq(&x.v, &y.v)?
            && series_eq(&x.u, &y.u)?
            && series_eq(&x.b, &y.b)?)
    }

    pub fn in_ring(&self, x: &MoritaElement) -> bool {
        self.in_partial_side(&x.a) && self.in_v(&x.v) && self.in_u(&x.u)
    }

    /// Random element with block supports in `[lower, upper)`.  Callers that
    /// check multiplicative relations should keep `upper` small enough that
    /// iterated products stay below the truncation, since dropped high-degree
    /// terms can reappear at lower degrees after a negative shift.
    pub fn random_element<T: Rng>(&self, rng: &mut T, lower: i64, upper: i64) -> MoritaElement {
        let t = self.ring();
        let h = &self.global_handle;
        let cut = |f: SkewSeries, idem_at: &dyn Fn(i64) -> usize| -> SkewSeries {
            let coeffs: Vec<(i64, usize)> = f
                .support()
                .iter()
                .map(|&d| (d, t.mul(f.coeff(d), idem_at(d))))
                .collect();
            series_make(h, &coeffs).expect("corner cut stays in the ring")
        };
        let f_a = random_series(h, rng, lower, upper);
        let f_u = random_series(h, rng, lower, upper);
        let f_v = random_series(h, rng, lower, upper);
        let f_b = random_series(h, rng, lower, upper);
        MoritaElement {
            a: cut(f_a, &|d| self.idem_partial(d)),
            u: cut(f_u, &|_| self.e),
            v: cut(f_v, &|d| self.beta_e(d)),
            b: f_b,
        }
    }
}

/// Assemble the Morita context ring of a restricted-global action at the
/// given truncation.
pub fn morita_ring(act: &Arc<TwistedPartialAction>, trunc: i64) -> Result<MoritaContextRing> {
    let (global, e_parent) = match &act.origin {
        Origin::RestrictedGlobal { global, e, .. } => (global.clone(), *e),
        _ => return Err(Error::NoEnvelopingData),
    };
    let whole = Arc::new(crate::paction::restrict_global(&global, global.ring.one())?);
    let parent_of: Vec<usize> = match &whole.origin {
        Origin::RestrictedGlobal { sub, .. } => {
            (0..sub.card()).map(|x| sub.to_parent(x)).collect()
        }
        _ => unreachable!("restriction preserves its origin"),
    };
    let mut local_of = vec![0usize; global.ring.card()];
    for (local, &parent) in parent_of.iter().enumerate() {
        local_of[parent] = local;
    }
    let e_local = local_of[e_parent];
    let global_handle = SeriesRingHandle::new(whole, Flavor::Laurent, trunc)?;
    Ok(MoritaContextRing { global_handle, e: e_local, global, parent_of, local_of })
}

/// Sampled verification of the Morita context: bimodule absorption,
/// closure of all four blocks under the array product, associativity, and
/// the two-sided identity.
pub fn morita_verify(ctx: &MoritaContextRing, samples: usize, seed: u64) -> VerificationReport {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut rep = VerificationReport::new("", "MORITA-3.6");
    rep.param("samples", samples as u64);
    rep.param("seed", seed);
    rep.param("truncation", ctx.global_handle.trunc);
    let lower = -ctx.global_handle.trunc;
    // triple products must stay below the truncation (negative degrees are
    // exact, so only the upper end needs the headroom)
    let upper = (ctx.global_handle.trunc - 1) / 3 + 1;
    let run = |rep: &mut VerificationReport,
               name: &str,
               rng: &mut rand_chacha::ChaCha8Rng,
               f: &mut dyn FnMut(&mut rand_chacha::ChaCha8Rng) -> std::result::Result<bool, Error>| {
        for k in 0..samples {
            match f(rng) {
                Ok(true) => {}
                Ok(false) => {
                    rep.fail(name, format!("sample {k} violated the relation"), serde_json::json!({"sample": k}));
                    return;
                }
                Err(e) => {
                    rep.fail(name, format!("sample {k} errored: {e}"), serde_json::json!({"sample": k}));
                    return;
                }
            }
        }
        rep.pass(name, format!("{samples} samples"));
    };
    run(&mut rep, "closure", &mut rng, &mut |rng| {
        let x = ctx.random_element(rng, lower, upper);
        let y = ctx.random_element(rng, lower, upper);
        if !(ctx.in_ring(&x) && ctx.in_ring(&y)) {
            return Ok(false);
        }
        let p = ctx.mul(&x, &y)?;
        Ok(ctx.in_ring(&p))
    });
    run(&mut rep, "absorption", &mut rng, &mut |rng| {
        let x = ctx.random_element(rng, lower, upper);
        let y = ctx.random_element(rng, lower, upper);
        // U T<x> ⊆ U, T<x> V ⊆ V, R<x> U ⊆ U, V R<x> ⊆ V
        Ok(ctx.in_u(&series_mul(&x.u, &y.b)?)
            && ctx.in_v(&series_mul(&x.b, &y.v)?)
            && ctx.in_u(&series_mul(&x.a, &y.u)?)
            && ctx.in_v(&series_mul(&x.v, &y.a)?))
    });
    run(&mut rep, "associativity", &mut rng, &mut |rng| {
        let x = ctx.random_element(rng, lower, upper);
        let y = ctx.random_element(rng, lower, upper);
        let z = ctx.random_element(rng, lower, upper);
        let l = ctx.mul(&ctx.mul(&x, &y)?, &z)?;
        let r = ctx.mul(&x, &ctx.mul(&y, &z)?)?;
        ctx.eq(&l, &r)
    });
    run(&mut rep, "distributivity", &mut rng, &mut |rng| {
        let x = ctx.random_element(rng, lower, upper);
        let y = ctx.random_element(rng, lower, upper);
        let z = ctx.random_element(rng, lower, upper);
        let l = ctx.mul(&x, &ctx.add(&y, &z)?)?;
        let r = ctx.add(&ctx.mul(&x, &y)?, &ctx.mul(&x, &z)?)?;
        ctx.eq(&l, &r)
    });
    run(&mut rep, "identity", &mut rng, &mut |rng| {
        let x = ctx.random_element(rng, lower, upper);
        let id = ctx.identity();
        Ok(ctx.eq(&ctx.mul(&id, &x)?, &x)? && ctx.eq(&ctx.mul(&x, &id)?, &x)?)
    });
    rep
}

//! Exact arithmetic, idempotent and ideal machinery for finite rings.
//!
//! Base rings are finite products of cyclic rings `Z_m` and matrix rings
//! `M_k(Z_p)`.  Everything downstream (quotients, subrings generated by a
//! central idempotent, materialized series rings) is driven through the
//! [`RingOps`] trait, which exposes a finite ring as indexed elements
//! `0..card` with exact operations.  Element ordering is the lexicographic
//! order of the index encoding; all enumerations and reports use it.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on ring cardinality for construction.
pub const DEFAULT_RING_CAP: usize = 65536;
/// Default cap on ring cardinality for full ideal-lattice enumeration.
pub const DEFAULT_LATTICE_CAP: usize = 4096;

/// A finite ring viewed as indexed elements `0..card()` with exact
/// operations.  Index `0` is always the zero element.
pub trait RingOps: Send + Sync {
    fn card(&self) -> usize;
    fn zero(&self) -> usize {
        0
    }
    fn one(&self) -> usize;
    fn add(&self, a: usize, b: usize) -> usize;
    fn neg(&self, a: usize) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    /// Human-readable label for an element, stable across runs.
    fn label(&self, a: usize) -> String;

    fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }
}

pub fn is_idempotent<R: RingOps + ?Sized>(r: &R, a: usize) -> bool {
    r.mul(a, a) == a
}

pub fn is_central<R: RingOps + ?Sized>(r: &R, a: usize) -> bool {
    (0..r.card()).all(|x| r.mul(a, x) == r.mul(x, a))
}

pub fn is_central_idempotent<R: RingOps + ?Sized>(r: &R, a: usize) -> bool {
    is_idempotent(r, a) && is_central(r, a)
}

/// All central idempotents, in element order.
pub fn central_idempotents<R: RingOps + ?Sized>(r: &R) -> Vec<usize> {
    (0..r.card())
        .filter(|&e| is_idempotent(r, e))
        .filter(|&e| is_central(r, e))
        .collect()
}

/// Orthogonal primitive central idempotents summing to 1, obtained by
/// repeatedly splitting any summand that dominates a smaller nonzero
/// central idempotent.  Empty for the zero ring.
pub fn primitive_central_decomposition<R: RingOps + ?Sized>(r: &R) -> Vec<usize> {
    if r.card() == 1 {
        return Vec::new();
    }
    let cents = central_idempotents(r);
    let mut parts = vec![r.one()];
    loop {
        let mut split = None;
        'outer: for (k, &e) in parts.iter().enumerate() {
            for &f in &cents {
                if f != r.zero() && f != e && r.mul(e, f) == f {
                    split = Some((k, e, f));
                    break 'outer;
                }
            }
        }
        match split {
            Some((k, e, f)) => {
                parts.remove(k);
                parts.push(f);
                parts.push(r.sub(e, f));
            }
            None => break,
        }
    }
    parts.sort_unstable();
    parts
}

/// The two-sided ideal generated by a central idempotent: `eR = {e r}`.
pub fn idempotent_ideal<R: RingOps + ?Sized>(r: &R, e: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..r.card()).map(|x| r.mul(e, x)).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Inverse of `x` inside the corner ring `eR` (identity `e`), if any.
pub fn inverse_in_corner<R: RingOps + ?Sized>(r: &R, e: usize, x: usize) -> Option<usize> {
    idempotent_ideal(r, e)
        .into_iter()
        .find(|&v| r.mul(x, v) == e && r.mul(v, x) == e)
}

/// Multiplicative order of a unit, or None if not a unit.
pub fn unit_order<R: RingOps + ?Sized>(r: &R, x: usize) -> Option<usize> {
    let mut p = x;
    for k in 1..=r.card() {
        if p == r.one() {
            return Some(k);
        }
        p = r.mul(p, x);
    }
    None
}

// ---------------------------------------------------------------------------
// Structured product rings
// ---------------------------------------------------------------------------

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// One direct factor of a structured finite ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FactorSpec {
    Cyclic { modulus: u64 },
    Matrix { size: usize, prime: u64 },
}

impl FactorSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FactorSpec::Cyclic { modulus } if modulus < 2 => Err(Error::SchemaError(format!(
                "cyclic modulus must be >= 2, got {modulus}"
            ))),
            FactorSpec::Matrix { size, prime } => {
                if size < 1 {
                    return Err(Error::SchemaError("matrix size must be >= 1".into()));
                }
                if !is_prime_u64(prime) {
                    return Err(Error::SchemaError(format!("{prime} is not prime")));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn cardinality(&self) -> Option<usize> {
        match *self {
            FactorSpec::Cyclic { modulus } => Some(modulus as usize),
            FactorSpec::Matrix { size, prime } => {
                let mut c: usize = 1;
                for _ in 0..size * size {
                    c = c.checked_mul(prime as usize)?;
                }
                Some(c)
            }
        }
    }
}

/// One coordinate of a [`RingElement`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coord {
    Scalar(u64),
    /// Row-major `size x size` entries mod the factor prime.
    Matrix { size: usize, entries: Vec<u64> },
}

/// A structural element of a [`FiniteRing`]: one coordinate per factor,
/// each reduced modulo its factor's modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    pub coords: Vec<Coord>,
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            match c {
                Coord::Scalar(v) => write!(f, "{v}")?,
                Coord::Matrix { size, entries } => {
                    write!(f, "[")?;
                    for r in 0..*size {
                        if r > 0 {
                            write!(f, ";")?;
                        }
                        for c2 in 0..*size {
                            if c2 > 0 {
                                write!(f, " ")?;
                            }
                            write!(f, "{}", entries[r * size + c2])?;
                        }
                    }
                    write!(f, "]")?;
                }
            }
        }
        write!(f, ")")
    }
}

/// Finite product of cyclic and matrix factors with componentwise operations.
#[derive(Debug, Clone)]
pub struct FiniteRing {
    factors: Vec<FactorSpec>,
    factor_cards: Vec<usize>,
    card: usize,
}

impl FiniteRing {
    pub fn product(factors: &[FactorSpec]) -> Result<Arc<FiniteRing>> {
        Self::product_with_cap(factors, DEFAULT_RING_CAP)
    }

    pub fn product_with_cap(factors: &[FactorSpec], cap: usize) -> Result<Arc<FiniteRing>> {
        if factors.is_empty() {
            return Err(Error::SchemaError("factor list must be nonempty".into()));
        }
        let mut cards = Vec::with_capacity(factors.len());
        let mut card: usize = 1;
        for f in factors {
            f.validate()?;
            let c = f
                .cardinality()
                .ok_or(Error::CapExceeded { got: usize::MAX, cap })?;
            cards.push(c);
            card = card
                .checked_mul(c)
                .ok_or(Error::CapExceeded { got: usize::MAX, cap })?;
            if card > cap {
                return Err(Error::CapExceeded { got: card, cap });
            }
        }
        Ok(Arc::new(FiniteRing {
            factors: factors.to_vec(),
            factor_cards: cards,
            card,
        }))
    }

    pub fn factors(&self) -> &[FactorSpec] {
        &self.factors
    }

    /// Per-factor value indices (factor 0 most significant).
    fn digits(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0usize; self.factors.len()];
        for k in (0..self.factors.len()).rev() {
            out[k] = idx % self.factor_cards[k];
            idx /= self.factor_cards[k];
        }
        out
    }

    fn undigits(&self, digits: &[usize]) -> usize {
        let mut idx = 0usize;
        for (k, &d) in digits.iter().enumerate() {
            idx = idx * self.factor_cards[k] + d;
        }
        idx
    }

    fn coord_of_digit(&self, k: usize, d: usize) -> Coord {
        match self.factors[k] {
            FactorSpec::Cyclic { .. } => Coord::Scalar(d as u64),
            FactorSpec::Matrix { size, prime } => {
                let mut entries = vec![0u64; size * size];
                let mut v = d;
                for e in (0..size * size).rev() {
                    entries[e] = (v % prime as usize) as u64;
                    v /= prime as usize;
                }
                Coord::Matrix { size, entries }
            }
        }
    }

    fn digit_of_coord(&self, k: usize, c: &Coord) -> Result<usize> {
        match (&self.factors[k], c) {
            (FactorSpec::Cyclic { modulus }, Coord::Scalar(v)) => {
                Ok((v % modulus) as usize)
            }
            (FactorSpec::Matrix { size, prime }, Coord::Matrix { size: s2, entries })
                if size == s2 && entries.len() == size * size =>
            {
                let mut d = 0usize;
                for &e in entries {
                    d = d * (*prime as usize) + (e % prime) as usize;
                }
                Ok(d)
            }
            _ => Err(Error::SchemaError(format!(
                "coordinate {k} does not match factor shape"
            ))),
        }
    }

    pub fn decode(&self, idx: usize) -> RingElement {
        let digits = self.digits(idx);
        RingElement {
            coords: (0..self.factors.len())
                .map(|k| self.coord_of_digit(k, digits[k]))
                .collect(),
        }
    }

    pub fn encode(&self, e: &RingElement) -> Result<usize> {
        if e.coords.len() != self.factors.len() {
            return Err(Error::SchemaError(format!(
                "element has {} coordinates, ring has {} factors",
                e.coords.len(),
                self.factors.len()
            )));
        }
        let mut digits = Vec::with_capacity(self.factors.len());
        for (k, c) in e.coords.iter().enumerate() {
            digits.push(self.digit_of_coord(k, c)?);
        }
        Ok(self.undigits(&digits))
    }

    fn factor_add(&self, k: usize, a: usize, b: usize) -> usize {
        match self.factors[k] {
            FactorSpec::Cyclic { modulus } => (a + b) % modulus as usize,
            FactorSpec::Matrix { size, prime } => {
                let p = prime as usize;
                let (ea, eb) = (self.mat_entries(k, a, size, p), self.mat_entries(k, b, size, p));
                let sum: Vec<usize> = ea.iter().zip(&eb).map(|(x, y)| (x + y) % p).collect();
                self.mat_index(&sum, p)
            }
        }
    }

    fn factor_neg(&self, k: usize, a: usize) -> usize {
        match self.factors[k] {
            FactorSpec::Cyclic { modulus } => {
                let m = modulus as usize;
                (m - a % m) % m
            }
            FactorSpec::Matrix { size, prime } => {
                let p = prime as usize;
                let ea = self.mat_entries(k, a, size, p);
                let neg: Vec<usize> = ea.iter().map(|x| (p - x % p) % p).collect();
                self.mat_index(&neg, p)
            }
        }
    }

    fn factor_mul(&self, k: usize, a: usize, b: usize) -> usize {
        match self.factors[k] {
            FactorSpec::Cyclic { modulus } => (a * b) % modulus as usize,
            FactorSpec::Matrix { size, prime } => {
                let p = prime as usize;
                let (ea, eb) = (self.mat_entries(k, a, size, p), self.mat_entries(k, b, size, p));
                let mut prod = vec![0usize; size * size];
                for r in 0..size {
                    for c in 0..size {
                        let mut acc = 0usize;
                        for t in 0..size {
                            acc = (acc + ea[r * size + t] * eb[t * size + c]) % p;
                        }
                        prod[r * size + c] = acc;
                    }
                }
                self.mat_index(&prod, p)
            }
        }
    }

    fn mat_entries(&self, _k: usize, mut d: usize, size: usize, p: usize) -> Vec<usize> {
        let mut entries = vec![0usize; size * size];
        for e in (0..size * size).rev() {
            entries[e] = d % p;
            d /= p;
        }
        entries
    }

    fn mat_index(&self, entries: &[usize], p: usize) -> usize {
        entries.iter().fold(0usize, |acc, &e| acc * p + e)
    }

    fn factor_one(&self, k: usize) -> usize {
        match self.factors[k] {
            FactorSpec::Cyclic { .. } => 1,
            FactorSpec::Matrix { size, prime } => {
                let p = prime as usize;
                let mut entries = vec![0usize; size * size];
                for d in 0..size {
                    entries[d * size + d] = 1;
                }
                self.mat_index(&entries, p)
            }
        }
    }
}

impl RingOps for FiniteRing {
    fn card(&self) -> usize {
        self.card
    }

    fn one(&self) -> usize {
        let digits: Vec<usize> = (0..self.factors.len()).map(|k| self.factor_one(k)).collect();
        self.undigits(&digits)
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.digits(a), self.digits(b));
        let out: Vec<usize> = (0..self.factors.len())
            .map(|k| self.factor_add(k, da[k], db[k]))
            .collect();
        self.undigits(&out)
    }

    fn neg(&self, a: usize) -> usize {
        let da = self.digits(a);
        let out: Vec<usize> = (0..self.factors.len())
            .map(|k| self.factor_neg(k, da[k]))
            .collect();
        self.undigits(&out)
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.digits(a), self.digits(b));
        let out: Vec<usize> = (0..self.factors.len())
            .map(|k| self.factor_mul(k, da[k], db[k]))
            .collect();
        self.undigits(&out)
    }

    fn label(&self, a: usize) -> String {
        self.decode(a).to_string()
    }
}

// ---------------------------------------------------------------------------
// Ring morphisms
// ---------------------------------------------------------------------------

/// A map between finite rings, stored as an explicit image table over
/// source element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMorphism {
    pub map: Vec<usize>,
}

impl RingMorphism {
    pub fn identity(n: usize) -> Self {
        RingMorphism { map: (0..n).collect() }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// Coordinate permutation morphism on a structured product ring:
    /// target coordinate `i` is taken from source coordinate `perm[i]`.
    /// The permuted factor shapes must match.
    pub fn from_factor_permutation(ring: &FiniteRing, perm: &[usize]) -> Result<Self> {
        let nf = ring.factors.len();
        if perm.len() != nf {
            return Err(Error::SchemaError("permutation length mismatch".into()));
        }
        let mut seen = vec![false; nf];
        for &p in perm {
            if p >= nf || seen[p] {
                return Err(Error::SchemaError("not a permutation".into()));
            }
            seen[p] = true;
        }
        for i in 0..nf {
            if ring.factors[i] != ring.factors[perm[i]] {
                return Err(Error::SchemaError(
                    "permutation moves a factor onto a different shape".into(),
                ));
            }
        }
        let map = (0..ring.card())
            .map(|idx| {
                let d = ring.digits(idx);
                let out: Vec<usize> = (0..nf).map(|i| d[perm[i]]).collect();
                ring.undigits(&out)
            })
            .collect();
        Ok(RingMorphism { map })
    }

    /// Inner automorphism `x -> u x u^{-1}` for a unit `u`.
    pub fn conjugation<R: RingOps + ?Sized>(ring: &R, u: usize) -> Result<Self> {
        let uinv = inverse_in_corner(ring, ring.one(), u)
            .ok_or_else(|| Error::Invalid(format!("{} is not a unit", ring.label(u))))?;
        Ok(RingMorphism {
            map: (0..ring.card()).map(|x| ring.mul(ring.mul(u, x), uinv)).collect(),
        })
    }

    /// `self` after `other`: `x -> self(other(x))`.
    pub fn compose(&self, other: &RingMorphism) -> Self {
        RingMorphism {
            map: other.map.iter().map(|&x| self.map[x]).collect(),
        }
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.map.len()];
        for &y in &self.map {
            if y >= seen.len() || seen[y] {
                return false;
            }
            seen[y] = true;
        }
        true
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0usize; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(RingMorphism { map: inv })
    }

    /// Smallest `m >= 1` with `self^m = id`, for bijective endomaps.
    pub fn order(&self) -> Option<usize> {
        if !self.is_bijective() {
            return None;
        }
        let id = RingMorphism::identity(self.map.len());
        let mut p = self.clone();
        for m in 1..=self.map.len() * 2 {
            if p == id {
                return Some(m);
            }
            p = self.compose(&p);
        }
        None
    }

    /// Additive and multiplicative homomorphism check: exhaustive below the
    /// pair cap, sampled above it.
    pub fn is_ring_hom<S: RingOps + ?Sized, T: RingOps + ?Sized>(
        &self,
        src: &S,
        tgt: &T,
        pair_cap: usize,
    ) -> bool {
        let n = src.card();
        if self.map.len() != n {
            return false;
        }
        let check = |a: usize, b: usize| {
            self.map[src.add(a, b)] == tgt.add(self.map[a], self.map[b])
                && self.map[src.mul(a, b)] == tgt.mul(self.map[a], self.map[b])
        };
        if n.saturating_mul(n) <= pair_cap {
            (0..n).all(|a| (0..n).all(|b| check(a, b)))
        } else {
            // deterministic LCG-driven sample
            let mut s: u64 = 0x9e3779b97f4a7c15;
            (0..pair_cap).all(|_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let a = (s >> 33) as usize % n;
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let b = (s >> 33) as usize % n;
                check(a, b)
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Subrings and quotients
// ---------------------------------------------------------------------------

/// The ideal `eT` of a parent ring, generated by a central idempotent `e`,
/// viewed as a ring with identity `e`.
pub struct SubRing {
    parent: Arc<dyn RingOps>,
    elems: Vec<usize>,
    pos: HashMap<usize, usize>,
    one: usize,
}

impl SubRing {
    pub fn new(parent: Arc<dyn RingOps>, e: usize) -> Result<Arc<SubRing>> {
        if !is_central_idempotent(&*parent, e) {
            return Err(Error::NotCentralIdempotent(parent.label(e)));
        }
        let elems = idempotent_ideal(&*parent, e);
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let one = pos[&e];
        debug_assert_eq!(elems[0], parent.zero());
        Ok(Arc::new(SubRing { parent, elems, pos, one }))
    }

    pub fn parent(&self) -> &Arc<dyn RingOps> {
        &self.parent
    }

    pub fn to_parent(&self, local: usize) -> usize {
        self.elems[local]
    }

    pub fn from_parent(&self, parent_idx: usize) -> Option<usize> {
        self.pos.get(&parent_idx).copied()
    }
}

impl RingOps for SubRing {
    fn card(&self) -> usize {
        self.elems.len()
    }
    fn one(&self) -> usize {
        self.one
    }
    fn add(&self, a: usize, b: usize) -> usize {
        self.pos[&self.parent.add(self.elems[a], self.elems[b])]
    }
    fn neg(&self, a: usize) -> usize {
        self.pos[&self.parent.neg(self.elems[a])]
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.pos[&self.parent.mul(self.elems[a], self.elems[b])]
    }
    fn label(&self, a: usize) -> String {
        self.parent.label(self.elems[a])
    }
}

/// Coset ring of a two-sided ideal.  Class 0 is the ideal itself; class
/// representatives are the smallest coset members, in element order.
pub struct QuotientRing {
    parent: Arc<dyn RingOps>,
    class_of: Vec<usize>,
    reps: Vec<usize>,
}

impl QuotientRing {
    pub fn new(parent: Arc<dyn RingOps>, ideal: &IdealSet) -> Result<Arc<QuotientRing>> {
        if !is_ideal(&*parent, &ideal.members) {
            return Err(Error::NotAnIdeal);
        }
        let n = parent.card();
        let mut class_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &m in &ideal.members {
                class_of[parent.add(x, m)] = id;
            }
        }
        Ok(Arc::new(QuotientRing { parent, class_of, reps }))
    }

    /// Projection table: parent element index -> class index.
    pub fn projection(&self) -> &[usize] {
        &self.class_of
    }

    pub fn project(&self, parent_idx: usize) -> usize {
        self.class_of[parent_idx]
    }

    pub fn rep(&self, class: usize) -> usize {
        self.reps[class]
    }
}

impl RingOps for QuotientRing {
    fn card(&self) -> usize {
        self.reps.len()
    }
    fn one(&self) -> usize {
        self.class_of[self.parent.one()]
    }
    fn add(&self, a: usize, b: usize) -> usize {
        self.class_of[self.parent.add(self.reps[a], self.reps[b])]
    }
    fn neg(&self, a: usize) -> usize {
        self.class_of[self.parent.neg(self.reps[a])]
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.class_of[self.parent.mul(self.reps[a], self.reps[b])]
    }
    fn label(&self, a: usize) -> String {
        format!("[{}]", self.parent.label(self.reps[a]))
    }
}

/// A finite ring with fully tabulated operations; used for materialized
/// series rings.  Zero is index 0 by construction.
pub struct TableRing {
    n: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    one: usize,
    labels: Vec<String>,
}

impl TableRing {
    pub fn build(
        n: usize,
        one: usize,
        labels: Vec<String>,
        mut addf: impl FnMut(usize, usize) -> usize,
        mut mulf: impl FnMut(usize, usize) -> usize,
        mut negf: impl FnMut(usize) -> usize,
    ) -> Arc<TableRing> {
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        let mut neg = vec![0u32; n];
        for a in 0..n {
            neg[a] = negf(a) as u32;
            for b in 0..n {
                add[a * n + b] = addf(a, b) as u32;
                mul[a * n + b] = mulf(a, b) as u32;
            }
        }
        Arc::new(TableRing { n, add, mul, neg, one, labels })
    }
}

impl RingOps for TableRing {
    fn card(&self) -> usize {
        self.n
    }
    fn one(&self) -> usize {
        self.one
    }
    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }
    fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }
    fn label(&self, a: usize) -> String {
        self.labels[a].clone()
    }
}

// ---------------------------------------------------------------------------
// Ideals
// ---------------------------------------------------------------------------

/// An explicit two-sided ideal: sorted member list plus generator provenance.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct IdealSet {
    pub members: Vec<usize>,
    pub generators: Vec<usize>,
}

impl IdealSet {
    pub fn zero() -> IdealSet {
        IdealSet { members: vec![0], generators: vec![] }
    }

    pub fn whole<R: RingOps + ?Sized>(ring: &R) -> IdealSet {
        IdealSet {
            members: (0..ring.card()).collect(),
            generators: vec![ring.one()],
        }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_zero(&self) -> bool {
        self.members == [0]
    }

    pub fn is_whole<R: RingOps + ?Sized>(&self, ring: &R) -> bool {
        self.members.len() == ring.card()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// True iff the sorted element set is a two-sided ideal.
pub fn is_ideal<R: RingOps + ?Sized>(ring: &R, members: &[usize]) -> bool {
    let contains = |x: usize| members.binary_search(&x).is_ok();
    if !contains(ring.zero()) {
        return false;
    }
    for &a in members {
        if !contains(ring.neg(a)) {
            return false;
        }
        for &b in members {
            if !contains(ring.add(a, b)) {
                return false;
            }
        }
        for r in 0..ring.card() {
            if !contains(ring.mul(r, a)) || !contains(ring.mul(a, r)) {
                return false;
            }
        }
    }
    true
}

fn saturate<R: RingOps + ?Sized>(
    ring: &R,
    seed: &[usize],
    two_sided_mult: bool,
) -> Vec<usize> {
    let n = ring.card();
    let mut in_set = vec![false; n];
    let mut members: Vec<usize> = Vec::new();
    let push = |x: usize, in_set: &mut Vec<bool>, members: &mut Vec<usize>| {
        if !in_set[x] {
            in_set[x] = true;
            members.push(x);
        }
    };
    push(ring.zero(), &mut in_set, &mut members);
    for &g in seed {
        push(g, &mut in_set, &mut members);
    }
    loop {
        let before = members.len();
        let snapshot = members.clone();
        for &x in &snapshot {
            for &y in &snapshot {
                push(ring.add(x, y), &mut in_set, &mut members);
            }
            if two_sided_mult {
                for r in 0..n {
                    push(ring.mul(r, x), &mut in_set, &mut members);
                    push(ring.mul(x, r), &mut in_set, &mut members);
                }
            }
        }
        if members.len() == before {
            break;
        }
    }
    members.sort_unstable();
    members
}

/// Smallest two-sided ideal containing the generators.
pub fn ideal_closure<R: RingOps + ?Sized>(ring: &R, gens: &[usize]) -> IdealSet {
    IdealSet {
        members: saturate(ring, gens, true),
        generators: gens.to_vec(),
    }
}

/// Additive closure of a set (used for ideal sums, which are automatically
/// absorbing when the summands are).
pub fn additive_closure<R: RingOps + ?Sized>(ring: &R, seed: &[usize]) -> Vec<usize> {
    saturate(ring, seed, false)
}

pub fn ideal_sum<R: RingOps + ?Sized>(ring: &R, a: &IdealSet, b: &IdealSet) -> IdealSet {
    let mut seed = a.members.clone();
    seed.extend_from_slice(&b.members);
    let mut gens = a.generators.clone();
    gens.extend_from_slice(&b.generators);
    IdealSet { members: additive_closure(ring, &seed), generators: gens }
}

pub fn ideal_intersection(a: &IdealSet, b: &IdealSet) -> IdealSet {
    IdealSet {
        members: a.members.iter().copied().filter(|&x| b.contains(x)).collect(),
        generators: vec![],
    }
}

/// The ideal generated by all pairwise products `ab`, `a` in `a`, `b` in `b`.
pub fn ideal_product<R: RingOps + ?Sized>(ring: &R, a: &IdealSet, b: &IdealSet) -> IdealSet {
    let mut gens = Vec::new();
    for &x in &a.members {
        for &y in &b.members {
            gens.push(ring.mul(x, y));
        }
    }
    gens.sort_unstable();
    gens.dedup();
    ideal_closure(ring, &gens)
}

/// Intersection of a list of ideals; the empty intersection is the whole ring.
pub fn intersect_all<R: RingOps + ?Sized>(ring: &R, ideals: &[&IdealSet]) -> IdealSet {
    let mut acc = IdealSet::whole(ring);
    for i in ideals {
        acc = ideal_intersection(&acc, i);
    }
    acc
}

/// All distinct two-sided ideals: closures of principal ideals, then
/// saturation under pairwise sums.
pub fn enumerate_ideals<R: RingOps + ?Sized>(ring: &R, cap: usize) -> Result<Vec<IdealSet>> {
    if ring.card() > cap {
        return Err(Error::CapExceeded { got: ring.card(), cap });
    }
    let mut ideals: Vec<IdealSet> = Vec::new();
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
    for a in 0..ring.card() {
        let i = ideal_closure(ring, &[a]);
        if seen.insert(i.members.clone(), ()).is_none() {
            ideals.push(i);
        }
    }
    loop {
        let before = ideals.len();
        let snapshot = ideals.clone();
        for a in &snapshot {
            for b in &snapshot {
                let s = ideal_sum(ring, a, b);
                if seen.insert(s.members.clone(), ()).is_none() {
                    ideals.push(s);
                }
            }
        }
        if ideals.len() == before {
            break;
        }
    }
    ideals.sort();
    Ok(ideals)
}

/// Coset ring plus projection table.
pub fn quotient_ring(
    ring: Arc<dyn RingOps>,
    ideal: &IdealSet,
) -> Result<(Arc<QuotientRing>, Vec<usize>)> {
    let q = QuotientRing::new(ring, ideal)?;
    let proj = q.projection().to_vec();
    Ok((q, proj))
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u64) -> FactorSpec {
        FactorSpec::Cyclic { modulus: m }
    }

    fn ring(factors: &[FactorSpec]) -> Arc<FiniteRing> {
        FiniteRing::product(factors).unwrap()
    }

    #[test]
    fn product_cardinalities() {
        assert_eq!(ring(&[z(2), z(2), z(2)]).card(), 8);
        assert_eq!(ring(&[z(5), z(5), z(5)]).card(), 125);
        assert_eq!(
            ring(&[FactorSpec::Matrix { size: 2, prime: 2 }]).card(),
            16
        );
    }

    #[test]
    fn cap_exceeded_is_loud() {
        let r = FiniteRing::product_with_cap(&[z(100), z(100), z(100)], 65536);
        assert!(matches!(r, Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn ring_axioms_hold_on_all_triples_of_small_rings() {
        for r in [
            ring(&[z(4)]),
            ring(&[z(2), z(3)]),
            ring(&[FactorSpec::Matrix { size: 2, prime: 2 }]),
        ] {
            let n = r.card();
            assert!(n <= 512);
            for a in 0..n {
                assert_eq!(r.add(a, r.neg(a)), r.zero());
                assert_eq!(r.mul(a, r.one()), a);
                assert_eq!(r.mul(r.one(), a), a);
                for b in 0..n {
                    assert_eq!(r.add(a, b), r.add(b, a));
                    for c in 0..n {
                        assert_eq!(r.add(r.add(a, b), c), r.add(a, r.add(b, c)));
                        assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
                        assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
                        assert_eq!(r.mul(r.add(a, b), c), r.add(r.mul(a, c), r.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn central_idempotents_examples() {
        let r = ring(&[z(2), z(2)]);
        assert_eq!(central_idempotents(&*r).len(), 4);

        let m = ring(&[FactorSpec::Matrix { size: 2, prime: 2 }]);
        let ci = central_idempotents(&*m);
        assert_eq!(ci, vec![m.zero(), m.one()]);

        let z4 = ring(&[z(4)]);
        assert_eq!(central_idempotents(&*z4), vec![0, 1]);
    }

    #[test]
    fn central_idempotents_closed_under_complement_and_product() {
        for r in [ring(&[z(2), z(2)]), ring(&[z(6)]), ring(&[z(4), z(3)])] {
            let ci = central_idempotents(&*r);
            for &e in &ci {
                let comp = r.sub(r.one(), e);
                assert!(ci.contains(&comp));
                for &f in &ci {
                    assert!(ci.contains(&r.mul(e, f)));
                }
            }
        }
    }

    #[test]
    fn primitive_decomposition_examples() {
        let r = ring(&[z(2), z(2), z(2)]);
        let parts = primitive_central_decomposition(&*r);
        assert_eq!(parts.len(), 3);
        let total = parts.iter().fold(r.zero(), |acc, &e| r.add(acc, e));
        assert_eq!(total, r.one());
        for (i, &e) in parts.iter().enumerate() {
            for (j, &f) in parts.iter().enumerate() {
                if i != j {
                    assert_eq!(r.mul(e, f), r.zero());
                }
            }
            // each summand has exactly two central idempotents under e
            let under: Vec<usize> = central_idempotents(&*r)
                .into_iter()
                .filter(|&f| r.mul(e, f) == f)
                .collect();
            assert_eq!(under.len(), 2);
        }

        let m = ring(&[FactorSpec::Matrix { size: 2, prime: 2 }]);
        assert_eq!(primitive_central_decomposition(&*m), vec![m.one()]);

        // CRT idempotents of Z_6
        let z6 = ring(&[z(6)]);
        assert_eq!(primitive_central_decomposition(&*z6), vec![3, 4]);
    }

    #[test]
    fn ideal_closure_examples() {
        let r = ring(&[z(2), z(2)]);
        let e10 = r.encode(&RingElement { coords: vec![Coord::Scalar(1), Coord::Scalar(0)] }).unwrap();
        let i = ideal_closure(&*r, &[e10]);
        assert_eq!(i.members.len(), 2);

        let z4 = ring(&[z(4)]);
        let i = ideal_closure(&*z4, &[2]);
        assert_eq!(i.members, vec![0, 2]);

        let empty = ideal_closure(&*r, &[]);
        assert_eq!(empty.members, vec![0]);
    }

    #[test]
    fn enumerate_ideals_examples() {
        let r = ring(&[z(2), z(2)]);
        assert_eq!(enumerate_ideals(&*r, 4096).unwrap().len(), 4);

        let z4 = ring(&[z(4)]);
        assert_eq!(enumerate_ideals(&*z4, 4096).unwrap().len(), 3);

        let m = ring(&[FactorSpec::Matrix { size: 2, prime: 2 }]);
        assert_eq!(enumerate_ideals(&*m, 4096).unwrap().len(), 2);
    }

    #[test]
    fn ideal_lattice_closed_under_sum_and_intersection() {
        let r = ring(&[z(4), z(2)]);
        let ideals = enumerate_ideals(&*r, 4096).unwrap();
        let member_sets: Vec<&Vec<usize>> = ideals.iter().map(|i| &i.members).collect();
        for a in &ideals {
            for b in &ideals {
                let s = ideal_sum(&*r, a, b);
                assert!(member_sets.contains(&&s.members));
                let i = ideal_intersection(a, b);
                assert!(member_sets.contains(&&i.members));
            }
        }
    }

    #[test]
    fn quotient_ring_examples() {
        let z4 = ring(&[z(4)]);
        let i = ideal_closure(&*z4, &[2]);
        let (q, proj) = quotient_ring(z4.clone() as Arc<dyn RingOps>, &i).unwrap();
        assert_eq!(q.card(), 2);
        // projection is a surjective hom with kernel I
        for a in 0..z4.card() {
            for b in 0..z4.card() {
                assert_eq!(proj[z4.add(a, b)], q.add(proj[a], proj[b]));
                assert_eq!(proj[z4.mul(a, b)], q.mul(proj[a], proj[b]));
            }
            assert_eq!(proj[a] == q.zero(), i.contains(a));
        }

        let r = ring(&[z(2), z(2)]);
        let e10 = r.encode(&RingElement { coords: vec![Coord::Scalar(1), Coord::Scalar(0)] }).unwrap();
        let i = ideal_closure(&*r, &[e10]);
        let (q, _) = quotient_ring(r.clone() as Arc<dyn RingOps>, &i).unwrap();
        assert_eq!(q.card(), 2);

        let zero = IdealSet::zero();
        let (q, _) = quotient_ring(r.clone() as Arc<dyn RingOps>, &zero).unwrap();
        assert_eq!(q.card(), r.card());
    }

    #[test]
    fn quotient_rejects_non_ideal() {
        let z4 = ring(&[z(4)]);
        let not_ideal = IdealSet { members: vec![0, 1], generators: vec![1] };
        assert!(matches!(
            QuotientRing::new(z4 as Arc<dyn RingOps>, &not_ideal),
            Err(Error::NotAnIdeal)
        ));
    }

    #[test]
    fn subring_of_central_idempotent() {
        let t = ring(&[z(2), z(2), z(2)]);
        let e = t
            .encode(&RingElement {
                coords: vec![Coord::Scalar(1), Coord::Scalar(1), Coord::Scalar(0)],
            })
            .unwrap();
        let s = SubRing::new(t.clone() as Arc<dyn RingOps>, e).unwrap();
        assert_eq!(s.card(), 4);
        assert_eq!(s.to_parent(s.one()), e);
        assert_eq!(s.zero(), 0);
    }

    #[test]
    fn factor_permutation_morphism_is_automorphism() {
        let t = ring(&[z(2), z(2), z(2)]);
        let beta = RingMorphism::from_factor_permutation(&t, &[2, 0, 1]).unwrap();
        assert!(beta.is_bijective());
        assert!(beta.is_ring_hom(&*t, &*t, 1 << 20));
        assert_eq!(beta.order(), Some(3));
        // shift sends (1,1,0) to (0,1,1)
        let e110 = t
            .encode(&RingElement {
                coords: vec![Coord::Scalar(1), Coord::Scalar(1), Coord::Scalar(0)],
            })
            .unwrap();
        let img = beta.apply(e110);
        assert_eq!(t.label(img), "(0,1,1)");
    }

    #[test]
    fn morphism_conjugation_in_matrix_ring() {
        let m = ring(&[FactorSpec::Matrix { size: 2, prime: 2 }]);
        // pick any unit and conjugate
        let u = (0..m.card())
            .find(|&x| x != m.one() && inverse_in_corner(&*m, m.one(), x).is_some())
            .unwrap();
        let c = RingMorphism::conjugation(&*m, u).unwrap();
        assert!(c.is_bijective());
        assert!(c.is_ring_hom(&*m, &*m, 1 << 20));
    }

    #[test]
    fn unit_order_examples() {
        let z5 = ring(&[z(5)]);
        assert_eq!(unit_order(&*z5, 2), Some(4));
        assert_eq!(unit_order(&*z5, 1), Some(1));
        assert_eq!(unit_order(&*z5, 0), None);
    }
}

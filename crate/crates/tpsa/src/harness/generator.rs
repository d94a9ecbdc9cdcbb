//! Seeded fixture stream for property tests and open-question searches.
//! Candidates mix restricted-global data (random factor lists, rotation
//! automorphisms, optional conjugant and product cocycle, random
//! restriction idempotent) with finite-support line-shift tables (optional
//! twisting, occasional deliberate noise).  Everything is filtered through
//! the axiom checker; rejection statistics are kept.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::harness::fixture::{
    AlphaTableSpec, AutomorphismSpec, CocycleSpec, CoordSpec, ElementSpec, Fixture, PairSpec,
    Presentation, RingSpec, SupportSpec, WEntrySpec,
};
use crate::paction::{check_axioms, TwistedPartialAction};
use crate::report::Status;
use crate::ringcore::{central_idempotents, inverse_in_corner, FactorSpec, RingOps};

#[derive(Debug, Clone)]
pub struct GeneratorCaps {
    pub max_factors: usize,
    pub moduli: Vec<u64>,
    pub allow_matrix: bool,
    /// Longest finite-support line (support bound = length - 1, at most 3).
    pub max_line: usize,
    pub max_base_card: usize,
}

impl Default for GeneratorCaps {
    fn default() -> Self {
        GeneratorCaps {
            max_factors: 3,
            moduli: vec![2, 3, 5],
            allow_matrix: true,
            max_line: 4,
            max_base_card: 128,
        }
    }
}

pub struct FixtureGenerator {
    rng: ChaCha8Rng,
    caps: GeneratorCaps,
    emitted: usize,
    pub attempts: usize,
    pub rejected: usize,
}

fn scalar_elem(coords: &[u64]) -> ElementSpec {
    coords.iter().map(|&c| CoordSpec::Scalar(c)).collect()
}

fn mult_order(lambda: u64, modulus: u64) -> Option<u64> {
    let mut v = lambda % modulus;
    for k in 1..=modulus {
        if v == 1 {
            return Some(k);
        }
        v = v * lambda % modulus;
    }
    None
}

fn pow_mod(base: u64, exp: u64, modulus: u64) -> u64 {
    let mut out = 1u64 % modulus;
    for _ in 0..exp {
        out = out * base % modulus;
    }
    out
}

impl FixtureGenerator {
    pub fn new(seed: u64, caps: GeneratorCaps) -> FixtureGenerator {
        FixtureGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            caps,
            emitted: 0,
            attempts: 0,
            rejected: 0,
        }
    }

    /// Next fixture passing the axiom checker, together with its rebuilt
    /// action.  Loops over candidates, counting rejections.
    pub fn next_fixture(&mut self) -> (Fixture, Arc<TwistedPartialAction>) {
        loop {
            self.attempts += 1;
            let candidate = if self.rng.gen_bool(0.5) {
                self.restricted_global_candidate()
            } else {
                self.finite_support_candidate()
            };
            let fixture = match candidate {
                Some(f) => f,
                None => {
                    self.rejected += 1;
                    continue;
                }
            };
            match fixture.to_action() {
                Ok(act) => {
                    if check_axioms(&act).status == Status::Pass {
                        self.emitted += 1;
                        return (fixture, act);
                    }
                    self.rejected += 1;
                }
                Err(_) => self.rejected += 1,
            }
        }
    }

    /// Next finite-support fixture only (used by the materialization
    /// searches).
    pub fn next_finite_support(&mut self) -> (Fixture, Arc<TwistedPartialAction>) {
        loop {
            let (f, act) = self.next_fixture();
            if f.presentation == Presentation::FiniteSupport {
                return (f, act);
            }
        }
    }

    fn name(&self, tag: &str) -> String {
        format!("gen-{tag}-{:04}", self.emitted)
    }

    fn restricted_global_candidate(&mut self) -> Option<Fixture> {
        let rng = &mut self.rng;
        if self.caps.allow_matrix && rng.gen_bool(0.15) {
            // single 2x2 matrix factor; the twist comes from a conjugant
            let factors = vec![FactorSpec::Matrix { size: 2, prime: 2 }];
            let ring = crate::ringcore::FiniteRing::product(&factors).ok()?;
            let u = rng.gen_range(0..ring.card());
            let conjugant = if inverse_in_corner(&*ring, ring.one(), u).is_some() {
                Some(Fixture::describe_element(&ring, u))
            } else {
                None
            };
            return Some(Fixture {
                name: self.name("mat"),
                presentation: Presentation::RestrictedGlobal,
                ring: RingSpec { factors },
                automorphism: Some(AutomorphismSpec { permutation: vec![0], conjugant }),
                cocycle: None,
                e: Some(vec![CoordSpec::Entries(vec![1, 0, 0, 1])]),
                support: None,
                caps: None,
                seed: None,
            });
        }
        let m = self.caps.moduli[rng.gen_range(0..self.caps.moduli.len())];
        let mut n = rng.gen_range(1..=self.caps.max_factors);
        while (m as usize).pow(n as u32) > self.caps.max_base_card && n > 1 {
            n -= 1;
        }
        let factors: Vec<FactorSpec> = (0..n).map(|_| FactorSpec::Cyclic { modulus: m }).collect();
        let rot = rng.gen_range(0..n);
        let permutation: Vec<usize> = (0..n).map(|i| (i + rot) % n).collect();
        let cocycle = if rng.gen_bool(0.3) && m > 2 {
            let lambda = rng.gen_range(2..m);
            if mult_order(lambda, m).is_some() {
                Some(CocycleSpec {
                    kind: "product".into(),
                    lambda: Some(scalar_elem(&vec![lambda; n])),
                })
            } else {
                None
            }
        } else {
            None
        };
        let ring = crate::ringcore::FiniteRing::product(&factors).ok()?;
        let idems = central_idempotents(&*ring);
        let nonzero: Vec<usize> = idems.into_iter().filter(|&e| e != 0).collect();
        let e = nonzero[rng.gen_range(0..nonzero.len())];
        let conjugant = if rng.gen_bool(0.2) {
            let u = rng.gen_range(0..ring.card());
            if inverse_in_corner(&*ring, ring.one(), u).is_some() {
                Some(Fixture::describe_element(&ring, u))
            } else {
                None
            }
        } else {
            None
        };
        Some(Fixture {
            name: self.name("rg"),
            presentation: Presentation::RestrictedGlobal,
            ring: RingSpec { factors },
            automorphism: Some(AutomorphismSpec { permutation, conjugant }),
            cocycle,
            e: Some(Fixture::describe_element(&ring, e)),
            support: None,
            caps: None,
            seed: None,
        })
    }

    /// Partial line shift: coordinates `0..k-1` over one modulus, the
    /// action moves coordinate `c` to `c + i`, plus optional spectator
    /// coordinates living only in `D_0`, an optional product-style twist,
    /// and occasional deliberate noise in one twisting unit.
    fn finite_support_candidate(&mut self) -> Option<Fixture> {
        let rng = &mut self.rng;
        let m = self.caps.moduli[rng.gen_range(0..self.caps.moduli.len())];
        let max_k = self.caps.max_line.min(4).max(2);
        let mut k = rng.gen_range(2..=max_k);
        let spectators = if rng.gen_bool(0.3) { 1usize } else { 0 };
        while (m as usize).pow((k + spectators) as u32) > self.caps.max_base_card && k > 2 {
            k -= 1;
        }
        let width = k + spectators;
        let bound = (k - 1) as i64;
        let in_domain = |i: i64, c: usize| -> bool {
            if c >= k {
                return i == 0;
            }
            if i >= 0 {
                c >= i as usize
            } else {
                c < (k as i64 + i) as usize
            }
        };
        let idem_at = |i: i64| -> ElementSpec {
            (0..width)
                .map(|c| CoordSpec::Scalar(if in_domain(i, c) { 1 } else { 0 }))
                .collect()
        };
        let idempotents: Vec<ElementSpec> = (-bound..=bound).map(idem_at).collect();
        // alpha_i: enumerate D_{-i} and shift the line coordinates by i
        let mut alpha = Vec::new();
        for i in (-bound..=bound).filter(|&i| i != 0) {
            let dom_coords: Vec<usize> = (0..width).filter(|&c| in_domain(-i, c)).collect();
            let mut pairs = Vec::new();
            let mut counter = vec![0u64; dom_coords.len()];
            loop {
                let mut from = vec![0u64; width];
                let mut to = vec![0u64; width];
                for (slot, &c) in dom_coords.iter().enumerate() {
                    from[c] = counter[slot];
                    to[(c as i64 + i) as usize] = counter[slot];
                }
                pairs.push(PairSpec { from: scalar_elem(&from), to: scalar_elem(&to) });
                let mut carry = 0usize;
                loop {
                    if carry == counter.len() {
                        break;
                    }
                    counter[carry] += 1;
                    if counter[carry] < m {
                        break;
                    }
                    counter[carry] = 0;
                    carry += 1;
                }
                if carry == counter.len() {
                    break;
                }
                if counter.iter().all(|&d| d == 0) {
                    break;
                }
            }
            alpha.push(AlphaTableSpec { shift: i, pairs });
        }
        let mut w = Vec::new();
        if m > 2 && rng.gen_bool(0.4) {
            // product-style twist lambda^{ij} on every corner
            let lambda = rng.gen_range(2..m);
            let ord = mult_order(lambda, m)?;
            for i in -bound..=bound {
                for j in -bound..=bound {
                    let exp = (i * j).rem_euclid(ord as i64) as u64;
                    let v = pow_mod(lambda, exp, m);
                    let value: ElementSpec = (0..width)
                        .map(|c| {
                            CoordSpec::Scalar(
                                if in_domain(i, c) && in_domain(i + j, c) { v } else { 0 },
                            )
                        })
                        .collect();
                    w.push(WEntrySpec { i, j, value });
                }
            }
        } else if rng.gen_bool(0.15) {
            // deliberate noise: a random override that usually breaks an
            // axiom and feeds the rejection statistics
            let i = rng.gen_range(-bound..=bound);
            let j = rng.gen_range(-bound..=bound);
            let value: ElementSpec =
                (0..width).map(|_| CoordSpec::Scalar(rng.gen_range(0..m))).collect();
            w.push(WEntrySpec { i, j, value });
        }
        Some(Fixture {
            name: self.name("fs"),
            presentation: Presentation::FiniteSupport,
            ring: RingSpec {
                factors: (0..width).map(|_| FactorSpec::Cyclic { modulus: m }).collect(),
            },
            automorphism: None,
            cocycle: None,
            e: None,
            support: Some(SupportSpec { bound, idempotents, alpha, w }),
            caps: None,
            seed: None,
        })
    }
}

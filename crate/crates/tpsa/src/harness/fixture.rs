//! Fixture files: a fully explicit JSON description of a twisted partial
//! action, deserialized and rebuilt into a [`TwistedPartialAction`].
//!
//! Nothing is ambient: the ring is a factor list, elements are coordinate
//! vectors, and the action is either a restricted global action
//! (permutation automorphism, optional conjugant and cocycle, restriction
//! idempotent) or explicit finite-support tables.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::paction::{
    make_finite_support, restrict_global, FiniteSupportTables, GlobalTwistedAction,
    TwistedPartialAction,
};
use crate::ringcore::{Coord, FactorSpec, FiniteRing, RingElement, RingMorphism};

/// One coordinate of a ring element: a scalar residue for a cyclic factor,
/// or a row-major entry list for a matrix factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoordSpec {
    Scalar(u64),
    Entries(Vec<u64>),
}

/// A ring element as one coordinate per factor.
pub type ElementSpec = Vec<CoordSpec>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Presentation {
    RestrictedGlobal,
    FiniteSupport,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub factors: Vec<FactorSpec>,
}

/// Automorphism of the product ring: a permutation of the factor list
/// composed with conjugation by a unit (identity when absent).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismSpec {
    pub permutation: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugant: Option<ElementSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<ElementSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaTableSpec {
    pub shift: i64,
    pub pairs: Vec<PairSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    pub from: ElementSpec,
    pub to: ElementSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WEntrySpec {
    pub i: i64,
    pub j: i64,
    pub value: ElementSpec,
}

/// Finite-support tables: idempotents for `-bound..=bound` in ascending
/// index order, bijection tables per nonzero shift, twisting-unit
/// overrides (defaulting to the corner idempotents).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupportSpec {
    pub bound: i64,
    pub idempotents: Vec<ElementSpec>,
    #[serde(default)]
    pub alpha: Vec<AlphaTableSpec>,
    #[serde(default)]
    pub w: Vec<WEntrySpec>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub name: String,
    pub presentation: Presentation,
    pub ring: RingSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub automorphism: Option<AutomorphismSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<CocycleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<ElementSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<SupportSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caps: Option<CapsSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn coord_to_ring(spec: &CoordSpec, factor: &FactorSpec) -> Result<Coord> {
    match (spec, factor) {
        (CoordSpec::Scalar(v), FactorSpec::Cyclic { .. }) => Ok(Coord::Scalar(*v)),
        (CoordSpec::Entries(es), FactorSpec::Matrix { size, .. }) => {
            if es.len() != size * size {
                return Err(Error::SchemaError(format!(
                    "matrix coordinate needs {} entries, got {}",
                    size * size,
                    es.len()
                )));
            }
            Ok(Coord::Matrix { size: *size, entries: es.clone() })
        }
        (CoordSpec::Scalar(_), FactorSpec::Matrix { .. }) => Err(Error::SchemaError(
            "scalar coordinate given for a matrix factor".into(),
        )),
        (CoordSpec::Entries(_), FactorSpec::Cyclic { .. }) => Err(Error::SchemaError(
            "entry-list coordinate given for a cyclic factor".into(),
        )),
    }
}

fn coord_from_ring(c: &Coord) -> CoordSpec {
    match c {
        Coord::Scalar(v) => CoordSpec::Scalar(*v),
        Coord::Matrix { entries, .. } => CoordSpec::Entries(entries.clone()),
    }
}

impl Fixture {
    /// Encode an element spec in the fixture's ring.
    pub fn encode_element(&self, ring: &FiniteRing, spec: &ElementSpec) -> Result<usize> {
        if spec.len() != self.ring.factors.len() {
            return Err(Error::SchemaError(format!(
                "element has {} coordinates, ring has {} factors",
                spec.len(),
                self.ring.factors.len()
            )));
        }
        let coords: Result<Vec<Coord>> = spec
            .iter()
            .zip(self.ring.factors.iter())
            .map(|(c, f)| coord_to_ring(c, f))
            .collect();
        ring.encode(&RingElement { coords: coords? })
    }

    /// Express a ring element index as an element spec.
    pub fn describe_element(ring: &FiniteRing, idx: usize) -> ElementSpec {
        ring.decode(idx).coords.iter().map(coord_from_ring).collect()
    }

    /// Structural validation beyond what serde enforces.
    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() {
            return Err(Error::SchemaError("fixture name must be nonempty".into()));
        }
        if self.ring.factors.is_empty() {
            return Err(Error::SchemaError("ring needs at least one factor".into()));
        }
        for f in &self.ring.factors {
            f.validate()?;
        }
        match self.presentation {
            Presentation::RestrictedGlobal => {
                if self.support.is_some() {
                    return Err(Error::SchemaError(
                        "restricted_global fixtures take no support block".into(),
                    ));
                }
                let auto = self
                    .automorphism
                    .as_ref()
                    .ok_or_else(|| Error::SchemaError("missing automorphism block".into()))?;
                if auto.permutation.len() != self.ring.factors.len() {
                    return Err(Error::SchemaError(format!(
                        "permutation has length {}, ring has {} factors",
                        auto.permutation.len(),
                        self.ring.factors.len()
                    )));
                }
                if self.e.is_none() {
                    return Err(Error::SchemaError("missing restriction idempotent e".into()));
                }
                if let Some(c) = &self.cocycle {
                    match c.kind.as_str() {
                        "trivial" => {
                            if c.lambda.is_some() {
                                return Err(Error::SchemaError(
                                    "trivial cocycle takes no lambda".into(),
                                ));
                            }
                        }
                        "product" => {
                            if c.lambda.is_none() {
                                return Err(Error::SchemaError(
                                    "product cocycle needs lambda".into(),
                                ));
                            }
                        }
                        other => {
                            return Err(Error::SchemaError(format!(
                                "unknown cocycle kind {other:?}"
                            )));
                        }
                    }
                }
            }
            Presentation::FiniteSupport => {
                if self.automorphism.is_some() || self.cocycle.is_some() || self.e.is_some() {
                    return Err(Error::SchemaError(
                        "finite_support fixtures take only a support block".into(),
                    ));
                }
                let sup = self
                    .support
                    .as_ref()
                    .ok_or_else(|| Error::SchemaError("missing support block".into()))?;
                if sup.bound < 0 {
                    return Err(Error::SchemaError("support bound must be >= 0".into()));
                }
                let want = 2 * sup.bound as usize + 1;
                if sup.idempotents.len() != want {
                    return Err(Error::SchemaError(format!(
                        "expected {} idempotents for bound {}, got {}",
                        want,
                        sup.bound,
                        sup.idempotents.len()
                    )));
                }
                for t in &sup.alpha {
                    if t.shift == 0 || t.shift.abs() > sup.bound {
                        return Err(Error::SchemaError(format!(
                            "alpha table shift {} out of range",
                            t.shift
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Build the ring described by the fixture.
    pub fn build_ring(&self) -> Result<Arc<FiniteRing>> {
        let cap = self
            .caps
            .and_then(|c| c.ring)
            .unwrap_or(crate::ringcore::DEFAULT_RING_CAP);
        FiniteRing::product_with_cap(&self.ring.factors, cap)
    }

    /// Rebuild the described twisted partial action.  Semantic failures
    /// (non-idempotent `e`, malformed tables, non-automorphism data) are
    /// reported as schema errors.
    pub fn to_action(&self) -> Result<Arc<TwistedPartialAction>> {
        self.validate()?;
        let ring = self.build_ring()?;
        match self.presentation {
            Presentation::RestrictedGlobal => {
                let auto = self.automorphism.as_ref().unwrap();
                let mut beta = RingMorphism::from_factor_permutation(&ring, &auto.permutation)?;
                if let Some(u) = &auto.conjugant {
                    let ue = self.encode_element(&ring, u)?;
                    let conj = RingMorphism::conjugation(&*ring, ue)
                        .map_err(|e| Error::SchemaError(format!("conjugant: {e}")))?;
                    beta = conj.compose(&beta);
                }
                let lambda = match &self.cocycle {
                    Some(c) if c.kind == "product" => {
                        Some(self.encode_element(&ring, c.lambda.as_ref().unwrap())?)
                    }
                    _ => None,
                };
                let global = GlobalTwistedAction::new(ring.clone(), beta, lambda)
                    .map_err(|e| Error::SchemaError(format!("global action: {e}")))?;
                let e = self.encode_element(&ring, self.e.as_ref().unwrap())?;
                let act = restrict_global(&global, e).map_err(|e| match e {
                    Error::NotCentralIdempotent(l) => Error::SchemaError(format!(
                        "restriction element {l} is not a central idempotent"
                    )),
                    other => other,
                })?;
                Ok(Arc::new(act))
            }
            Presentation::FiniteSupport => {
                let sup = self.support.as_ref().unwrap();
                let idem: Result<Vec<usize>> = sup
                    .idempotents
                    .iter()
                    .map(|e| self.encode_element(&ring, e))
                    .collect();
                let mut alpha_pairs = Vec::new();
                for t in &sup.alpha {
                    let pairs: Result<Vec<(usize, usize)>> = t
                        .pairs
                        .iter()
                        .map(|p| {
                            Ok((
                                self.encode_element(&ring, &p.from)?,
                                self.encode_element(&ring, &p.to)?,
                            ))
                        })
                        .collect();
                    alpha_pairs.push((t.shift, pairs?));
                }
                let mut w_entries = Vec::new();
                for w in &sup.w {
                    w_entries.push((w.i, w.j, self.encode_element(&ring, &w.value)?));
                }
                let tables = FiniteSupportTables {
                    bound: sup.bound,
                    idem: idem?,
                    alpha_pairs,
                    w_entries,
                };
                let act = make_finite_support(ring, tables).map_err(|e| match e {
                    Error::MalformedTable(m) => Error::SchemaError(m),
                    other => other,
                })?;
                Ok(Arc::new(act))
            }
        }
    }

    /// Canonical serialized form (field order is fixed by the struct), used
    /// as the cache-key base.
    pub fn canonical_form(&self) -> String {
        serde_json::to_string(self).expect("fixture serializes")
    }

    /// Content hash of the canonical form.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.canonical_form().as_bytes());
        hex::encode(h.finalize())
    }
}

/// The built-in example fixtures, mirroring the files under `fixtures/`
/// and the constructors in [`crate::canonical`].
pub fn canonical_fixtures() -> Vec<Fixture> {
    let scalar = |cs: &[u64]| -> ElementSpec { cs.iter().map(|&c| CoordSpec::Scalar(c)).collect() };
    let cyclic = |m: u64, n: usize| RingSpec {
        factors: (0..n).map(|_| FactorSpec::Cyclic { modulus: m }).collect(),
    };
    let shift2 = Fixture {
        name: "shift2".into(),
        presentation: Presentation::RestrictedGlobal,
        ring: cyclic(2, 3),
        automorphism: Some(AutomorphismSpec { permutation: vec![2, 0, 1], conjugant: None }),
        cocycle: None,
        e: Some(scalar(&[1, 1, 0])),
        support: None,
        caps: None,
        seed: None,
    };
    let shift5 = Fixture {
        name: "shift5_twisted".into(),
        presentation: Presentation::RestrictedGlobal,
        ring: cyclic(5, 3),
        automorphism: Some(AutomorphismSpec { permutation: vec![2, 0, 1], conjugant: None }),
        cocycle: Some(CocycleSpec { kind: "product".into(), lambda: Some(scalar(&[2, 2, 2])) }),
        e: Some(scalar(&[1, 1, 0])),
        support: None,
        caps: None,
        seed: None,
    };
    let swap2 = Fixture {
        name: "swap2".into(),
        presentation: Presentation::FiniteSupport,
        ring: cyclic(2, 2),
        automorphism: None,
        cocycle: None,
        e: None,
        support: Some(SupportSpec {
            bound: 1,
            idempotents: vec![scalar(&[0, 1]), scalar(&[1, 1]), scalar(&[1, 0])],
            alpha: vec![
                AlphaTableSpec {
                    shift: 1,
                    pairs: vec![
                        PairSpec { from: scalar(&[0, 0]), to: scalar(&[0, 0]) },
                        PairSpec { from: scalar(&[0, 1]), to: scalar(&[1, 0]) },
                    ],
                },
                AlphaTableSpec {
                    shift: -1,
                    pairs: vec![
                        PairSpec { from: scalar(&[0, 0]), to: scalar(&[0, 0]) },
                        PairSpec { from: scalar(&[1, 0]), to: scalar(&[0, 1]) },
                    ],
                },
            ],
            w: vec![],
        }),
        caps: None,
        seed: None,
    };
    let swap5 = Fixture {
        name: "swap5".into(),
        presentation: Presentation::FiniteSupport,
        ring: cyclic(5, 2),
        automorphism: None,
        cocycle: None,
        e: None,
        support: Some(SupportSpec {
            bound: 1,
            idempotents: vec![scalar(&[0, 1]), scalar(&[1, 1]), scalar(&[1, 0])],
            alpha: vec![
                AlphaTableSpec {
                    shift: 1,
                    pairs: (0..5)
                        .map(|a| PairSpec { from: scalar(&[0, a]), to: scalar(&[a, 0]) })
                        .collect(),
                },
                AlphaTableSpec {
                    shift: -1,
                    pairs: (0..5)
                        .map(|c| PairSpec { from: scalar(&[c, 0]), to: scalar(&[0, c]) })
                        .collect(),
                },
            ],
            w: vec![
                WEntrySpec { i: 1, j: -1, value: scalar(&[2, 0]) },
                WEntrySpec { i: -1, j: 1, value: scalar(&[0, 2]) },
            ],
        }),
        caps: None,
        seed: None,
    };
    let trivial = Fixture {
        name: "trivial_z6".into(),
        presentation: Presentation::RestrictedGlobal,
        ring: cyclic(6, 1),
        automorphism: Some(AutomorphismSpec { permutation: vec![0], conjugant: None }),
        cocycle: None,
        e: Some(scalar(&[1])),
        support: None,
        caps: None,
        seed: None,
    };
    vec![shift2, shift5, swap2, swap5, trivial]
}

/// Load and validate a fixture file.  JSON syntax problems surface as
/// `ParseError` with line/column; shape and semantic problems as
/// `SchemaError`.
pub fn load_fixture(path: &Path) -> Result<Fixture> {
    let text = std::fs::read_to_string(path)?;
    let fixture: Fixture = serde_json::from_str(&text).map_err(|e| {
        // serde_json already appends "at line L column C"
        if e.is_syntax() || e.is_eof() {
            Error::ParseError(e.to_string())
        } else {
            Error::SchemaError(e.to_string())
        }
    })?;
    fixture.validate()?;
    Ok(fixture)
}

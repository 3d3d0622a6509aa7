//! Fans of smooth simplicial cones: construction, validation and the JSON
//! file format.
//!
//! Only rays and maximal cones are stored. Lower dimensional cones are the
//! faces of maximal ones and are never materialized.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::exact_linalg::{self, check_dim, LatticeVector};
use crate::{Error, Result};

/// A fan given by its primitive ray generators and maximal cones.
///
/// Ray order is significant: it is the tie-break order for every downstream
/// choice (active sets, greedy bases).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<LatticeVector>,
    max_cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Checks the structural invariants; does not check smoothness or
    /// completeness (see [`validate`]).
    pub fn new(dim: usize, rays: Vec<LatticeVector>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Structure("dimension must be at least 1".into()));
        }
        check_dim(dim)?;
        let mut seen = BTreeSet::new();
        for r in &rays {
            if r.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.dim(),
                });
            }
            if r.is_zero() {
                return Err(Error::ZeroRay);
            }
            if !r.is_primitive() {
                return Err(Error::NonPrimitiveRay(r.clone()));
            }
            if !seen.insert(r.clone()) {
                return Err(Error::Structure(format!("duplicate ray {r}")));
            }
        }
        let mut cone_keys = BTreeSet::new();
        for (ci, cone) in max_cones.iter().enumerate() {
            if cone.len() != dim {
                return Err(Error::Structure(format!(
                    "cone {ci} has {} rays, expected {dim}",
                    cone.len()
                )));
            }
            if let Some(&bad) = cone.iter().find(|&&t| t >= rays.len()) {
                return Err(Error::Structure(format!(
                    "cone {ci} references missing ray {bad}"
                )));
            }
            let key: BTreeSet<usize> = cone.iter().copied().collect();
            if key.len() != cone.len() {
                return Err(Error::Structure(format!(
                    "cone {ci} has repeated ray indices"
                )));
            }
            if !cone_keys.insert(key) {
                return Err(Error::Structure(format!("cone {ci} is listed twice")));
            }
        }
        Ok(Fan {
            dim,
            rays,
            max_cones,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, t: usize) -> &LatticeVector {
        &self.rays[t]
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn cone_rays(&self, cone: usize) -> Vec<LatticeVector> {
        self.max_cones[cone]
            .iter()
            .map(|&t| self.rays[t].clone())
            .collect()
    }

    /// Applies a lattice automorphism `U` (given by rows) to every ray,
    /// `e ↦ U e`. Fails if `U` is not square of the fan's dimension; the
    /// caller is responsible for `det U = ±1`.
    pub fn transformed(&self, u: &[LatticeVector]) -> Result<Fan> {
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: u.len(),
            });
        }
        let rays = self
            .rays
            .iter()
            .map(|r| LatticeVector::new(u.iter().map(|row| row.dot(r)).collect()))
            .collect();
        Fan::new(self.dim, rays, self.max_cones.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    /// Index of the offending maximal cone, when there is one.
    pub cone: Option<usize>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub smooth: bool,
    pub complete: bool,
    pub diagnostics: Vec<Diagnostic>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.smooth && self.complete
    }
}

/// Smoothness: every maximal cone's ray matrix has determinant ±1.
pub fn validate_smooth(fan: &Fan) -> (bool, Vec<Diagnostic>) {
    let mut diags = Vec::new();
    for (ci, _) in fan.max_cones.iter().enumerate() {
        let det = exact_linalg::determinant(&fan.cone_rays(ci)).expect("square by construction");
        if !exact_linalg::matrix_is_unit(&det) {
            diags.push(Diagnostic {
                cone: Some(ci),
                reason: format!("cone not smooth: |det| = {}", num_traits::Signed::abs(&det)),
            });
        }
    }
    (diags.is_empty(), diags)
}

/// Completeness of a simplicial fan, decided combinatorially: every ridge
/// lies in exactly two maximal cones and the dual graph is connected.
pub fn validate_complete(fan: &Fan) -> (bool, Vec<Diagnostic>) {
    let mut diags = Vec::new();
    if fan.dim == 1 {
        let mut coords: Vec<i64> = fan.rays.iter().map(|r| r[0]).collect();
        coords.sort_unstable();
        if coords != [-1, 1] || fan.max_cones.len() != 2 {
            diags.push(Diagnostic {
                cone: None,
                reason: "a complete fan in dimension 1 has rays +1 and -1 and two cones".into(),
            });
        }
        return (diags.is_empty(), diags);
    }
    if fan.max_cones.is_empty() {
        diags.push(Diagnostic {
            cone: None,
            reason: "no maximal cones".into(),
        });
        return (false, diags);
    }

    let mut ridges: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (ci, cone) in fan.max_cones.iter().enumerate() {
        let mut sorted = cone.clone();
        sorted.sort_unstable();
        for skip in 0..sorted.len() {
            let ridge: Vec<usize> = sorted
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &t)| t)
                .collect();
            ridges.entry(ridge).or_default().push(ci);
        }
    }
    let mut adjacency = vec![Vec::new(); fan.max_cones.len()];
    for (ridge, cones) in &ridges {
        match cones.as_slice() {
            [a, b] => {
                adjacency[*a].push(*b);
                adjacency[*b].push(*a);
            }
            [a] => diags.push(Diagnostic {
                cone: Some(*a),
                reason: format!("ridge {ridge:?} in one cone"),
            }),
            many => diags.push(Diagnostic {
                cone: Some(many[0]),
                reason: format!("ridge {ridge:?} in {} cones", many.len()),
            }),
        }
    }

    let mut reached = vec![false; fan.max_cones.len()];
    let mut queue = VecDeque::from([0usize]);
    reached[0] = true;
    while let Some(c) = queue.pop_front() {
        for &d in &adjacency[c] {
            if !reached[d] {
                reached[d] = true;
                queue.push_back(d);
            }
        }
    }
    if let Some(lost) = reached.iter().position(|r| !r) {
        diags.push(Diagnostic {
            cone: Some(lost),
            reason: "dual graph disconnected".into(),
        });
    }
    (diags.is_empty(), diags)
}

pub fn validate(fan: &Fan) -> ValidationReport {
    let (smooth, mut diagnostics) = validate_smooth(fan);
    let (complete, more) = validate_complete(fan);
    diagnostics.extend(more);
    ValidationReport {
        smooth,
        complete,
        diagnostics,
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FanDocument {
    dim: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    normalize: bool,
}

/// Parses the JSON fan format. Non-primitive rays are an error unless the
/// document sets `"normalize": true`.
pub fn parse_fan(text: &[u8]) -> Result<Fan> {
    let doc: FanDocument =
        serde_json::from_slice(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let mut rays = Vec::with_capacity(doc.rays.len());
    for r in doc.rays {
        if r.len() != doc.dim {
            return Err(Error::DimensionMismatch {
                expected: doc.dim,
                found: r.len(),
            });
        }
        let v = LatticeVector::new(r);
        rays.push(if doc.normalize { v.primitive()? } else { v });
    }
    Fan::new(doc.dim, rays, doc.max_cones)
}

/// Same as [`parse_fan`] but forces normalization on.
pub fn parse_fan_normalized(text: &[u8]) -> Result<Fan> {
    let mut doc: serde_json::Value =
        serde_json::from_slice(text).map_err(|e| Error::Malformed(e.to_string()))?;
    if let Some(obj) = doc.as_object_mut() {
        obj.insert("normalize".into(), serde_json::Value::Bool(true));
    }
    parse_fan(doc.to_string().as_bytes())
}

pub fn serialize_fan(fan: &Fan) -> Vec<u8> {
    let doc = FanDocument {
        dim: fan.dim,
        rays: fan.rays.iter().map(|r| r.coords().to_vec()).collect(),
        max_cones: fan.max_cones.clone(),
        normalize: false,
    };
    let mut out = serde_json::to_vec(&doc).expect("fan document serializes");
    out.push(b'\n');
    out
}

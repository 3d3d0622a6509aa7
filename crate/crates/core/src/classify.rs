//! Per-point data of the polytope: which rays are tight, the rank of the
//! tight set, and the resulting stratification by face codimension.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::exact_linalg::{self, LatticeVector};
use crate::fan::Fan;
use crate::polytope::LatticePointSet;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointClass {
    pub point: LatticeVector,
    /// Indices `t` with `<I, e_t> = -1`, ascending.
    pub active: Vec<usize>,
    /// Rank of the active rays; the codimension of the face containing `I`
    /// in its relative interior.
    pub rank: usize,
    /// Greedy smallest-index independent subset of `active` spanning the
    /// same space.
    pub basis_idx: Vec<usize>,
    /// Standard basis vectors completing `basis_idx` rays to a basis of `Q^n`.
    pub complement: Vec<LatticeVector>,
}

impl PointClass {
    pub fn basis_rays(&self, fan: &Fan) -> Vec<LatticeVector> {
        self.basis_idx.iter().map(|&t| fan.ray(t).clone()).collect()
    }

    pub fn active_rays(&self, fan: &Fan) -> Vec<LatticeVector> {
        self.active.iter().map(|&t| fan.ray(t).clone()).collect()
    }
}

pub fn classify_point(fan: &Fan, point: &LatticeVector) -> Result<PointClass> {
    let n = fan.dim();
    if point.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: point.dim(),
        });
    }
    let mut active = Vec::new();
    for (t, e) in fan.rays().iter().enumerate() {
        match point.dot(e) {
            p if p < -1 => return Err(Error::NotInPolytope(point.clone())),
            -1 => active.push(t),
            _ => {}
        }
    }

    let mut basis_idx = Vec::new();
    let mut basis_rays: Vec<LatticeVector> = Vec::new();
    for &t in &active {
        if basis_rays.len() == n {
            break;
        }
        basis_rays.push(fan.ray(t).clone());
        if exact_linalg::rank_of_rows(n, &basis_rays)? == basis_rays.len() {
            basis_idx.push(t);
        } else {
            basis_rays.pop();
        }
    }
    let rank = basis_idx.len();
    let complement = exact_linalg::extend_to_basis(n, &basis_rays)?;
    Ok(PointClass {
        point: point.clone(),
        active,
        rank,
        basis_idx,
        complement,
    })
}

/// Points of the polytope grouped by rank and by active set.
#[derive(Debug, Clone, Serialize)]
pub struct Stratification {
    dim: usize,
    by_rank: BTreeMap<usize, Vec<PointClass>>,
    face_groups: BTreeMap<Vec<usize>, Vec<LatticeVector>>,
    #[serde(skip)]
    index: BTreeMap<LatticeVector, (usize, usize)>,
}

impl Stratification {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The points of codimension-`i` face interiors, lexicographic.
    pub fn stratum(&self, i: usize) -> &[PointClass] {
        self.by_rank.get(&i).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `|S(i)|` for `i = 0..=n`.
    pub fn stratum_sizes(&self) -> Vec<usize> {
        (0..=self.dim).map(|i| self.stratum(i).len()).collect()
    }

    /// Active set ↦ points whose tight set is exactly that; one group per
    /// face whose relative interior meets the lattice.
    pub fn face_groups(&self) -> &BTreeMap<Vec<usize>, Vec<LatticeVector>> {
        &self.face_groups
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn class_of(&self, point: &LatticeVector) -> Option<&PointClass> {
        self.index
            .get(point)
            .map(|&(i, pos)| &self.by_rank[&i][pos])
    }

    /// All classes, stratum by stratum.
    pub fn iter(&self) -> impl Iterator<Item = &PointClass> {
        self.by_rank.values().flatten()
    }

    /// `S_k = S(0) ∪ ... ∪ S(k)`, strata concatenated in order.
    pub fn s_k(&self, k: usize) -> Result<Vec<&PointClass>> {
        if k > self.dim {
            return Err(Error::KOutOfRange { k, n: self.dim });
        }
        Ok((0..=k).flat_map(|i| self.stratum(i)).collect())
    }
}

pub fn stratify(fan: &Fan, pts: &LatticePointSet) -> Result<Stratification> {
    let n = fan.dim();
    let mut by_rank: BTreeMap<usize, Vec<PointClass>> = (0..=n).map(|i| (i, Vec::new())).collect();
    let mut face_groups: BTreeMap<Vec<usize>, Vec<LatticeVector>> = BTreeMap::new();
    let mut index = BTreeMap::new();
    for p in pts.points() {
        let pc = classify_point(fan, p)?;
        face_groups
            .entry(pc.active.clone())
            .or_default()
            .push(p.clone());
        let bucket = by_rank.get_mut(&pc.rank).expect("rank ≤ n");
        index.insert(p.clone(), (pc.rank, bucket.len()));
        bucket.push(pc);
    }
    Ok(Stratification {
        dim: n,
        by_rank,
        face_groups,
        index,
    })
}

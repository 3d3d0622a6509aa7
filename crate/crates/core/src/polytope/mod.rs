//! The polytope `P = {I : <I, e_t> ≥ -1 for every ray e_t}` and its lattice
//! points.

mod simplex;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

pub use simplex::{maximize, LpOutcome};

use crate::exact_linalg::LatticeVector;
use crate::fan::Fan;
use crate::{Error, Result};

/// Rows `<·, normal_t> ≥ -1`, one per ray and in ray order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfspaceSystem {
    dim: usize,
    normals: Vec<LatticeVector>,
}

impl HalfspaceSystem {
    pub fn new(dim: usize, normals: Vec<LatticeVector>) -> Self {
        HalfspaceSystem { dim, normals }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> &[LatticeVector] {
        &self.normals
    }

    /// Right-hand side shared by every row.
    pub fn rhs(&self) -> i64 {
        -1
    }

    pub fn contains(&self, point: &LatticeVector) -> bool {
        self.normals.iter().all(|e| point.dot(e) >= -1)
    }
}

pub fn build_halfspaces(fan: &Fan) -> HalfspaceSystem {
    HalfspaceSystem::new(fan.dim(), fan.rays().to_vec())
}

/// The rows of a single maximal cone: the (unbounded) polyhedron of that cone.
pub fn cone_halfspaces(fan: &Fan, cone: usize) -> HalfspaceSystem {
    HalfspaceSystem::new(fan.dim(), fan.cone_rays(cone))
}

/// Inclusive integer box containing the polytope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundingBox {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl BoundingBox {
    pub fn inflated(&self, margin: i64) -> BoundingBox {
        BoundingBox {
            lo: self.lo.iter().map(|v| v - margin).collect(),
            hi: self.hi.iter().map(|v| v + margin).collect(),
        }
    }

    pub fn volume(&self) -> u64 {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (h - l + 1).max(0) as u64)
            .product()
    }

    /// All integer points of the box in lexicographic order.
    pub fn points(&self) -> BoxPoints {
        let empty = self.lo.iter().zip(&self.hi).any(|(l, h)| l > h);
        BoxPoints {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            next: (!empty).then(|| self.lo.clone()),
        }
    }
}

pub struct BoxPoints {
    lo: Vec<i64>,
    hi: Vec<i64>,
    next: Option<Vec<i64>>,
}

impl Iterator for BoxPoints {
    type Item = LatticeVector;

    fn next(&mut self) -> Option<LatticeVector> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut j = succ.len();
        self.next = loop {
            if j == 0 {
                break None;
            }
            j -= 1;
            if succ[j] < self.hi[j] {
                succ[j] += 1;
                break Some(succ);
            }
            succ[j] = self.lo[j];
        };
        Some(LatticeVector::new(cur))
    }
}

/// Maximizes and minimizes each coordinate over the polytope by exact LP
/// and rounds inward to integers.
pub fn bounding_box(hs: &HalfspaceSystem) -> Result<BoundingBox> {
    let n = hs.dim;
    let q = |v: i64| BigRational::from_integer(v.into());
    // x = x⁺ - x⁻;   <x, e> ≥ -1  ⇔  -<x⁺, e> + <x⁻, e> ≤ 1
    let a: Vec<Vec<BigRational>> = hs
        .normals
        .iter()
        .map(|e| {
            e.coords()
                .iter()
                .map(|&c| q(-c))
                .chain(e.coords().iter().map(|&c| q(c)))
                .collect()
        })
        .collect();
    let b = vec![BigRational::one(); a.len()];

    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    for j in 0..n {
        let mut c = vec![BigRational::zero(); 2 * n];
        c[j] = q(1);
        c[n + j] = q(-1);
        let LpOutcome::Optimal(max) = maximize(&a, &b, &c) else {
            return Err(Error::Unbounded);
        };
        let neg: Vec<BigRational> = c.iter().map(|v| -v).collect();
        let LpOutcome::Optimal(neg_min) = maximize(&a, &b, &neg) else {
            return Err(Error::Unbounded);
        };
        hi.push(to_i64(max.floor()));
        lo.push(to_i64((-neg_min).ceil()));
    }
    Ok(BoundingBox { lo, hi })
}

fn to_i64(v: BigRational) -> i64 {
    use num_traits::ToPrimitive;
    v.to_integer()
        .to_i64()
        .expect("bounding box coordinate fits in i64")
}

/// Lattice points of the polytope, lexicographically sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LatticePointSet {
    points: Vec<LatticeVector>,
}

impl LatticePointSet {
    pub fn points(&self) -> &[LatticeVector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &LatticeVector) -> bool {
        self.points.binary_search(p).is_ok()
    }
}

pub fn enumerate_lattice_points(hs: &HalfspaceSystem, bbox: &BoundingBox) -> LatticePointSet {
    // box order is already lexicographic
    let points = bbox.points().filter(|p| hs.contains(p)).collect();
    LatticePointSet { points }
}

/// Convenience: halfspaces, box and points of a fan in one go.
pub fn lattice_points(fan: &Fan) -> Result<(HalfspaceSystem, BoundingBox, LatticePointSet)> {
    let hs = build_halfspaces(fan);
    let bbox = bounding_box(&hs)?;
    let pts = enumerate_lattice_points(&hs, &bbox);
    Ok((hs, bbox, pts))
}

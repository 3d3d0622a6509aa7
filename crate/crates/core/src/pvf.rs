//! Weight-space bases and dimensions of holomorphic `k`-vector fields.
//!
//! A weight is recorded as the lattice point `I`; the field it labels is
//! `χ^I · ρ(x)` and the torus acts on it through the character `-I`.

use serde::Serialize;

use crate::classify::{PointClass, Stratification};
use crate::exact_linalg::{binomial, k_subsets, LatticeVector, Multivector};
use crate::fan::Fan;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightSpaceBasis {
    /// `I`; the field is `χ^I · ρ(x)`.
    #[serde(rename = "I")]
    pub weight: LatticeVector,
    /// The torus character `-I`.
    pub character: LatticeVector,
    pub rank: usize,
    pub grade: usize,
    pub dim: usize,
    pub generators: Vec<Multivector>,
}

/// Basis of the weight space at `pc.point` in degree `k`.
///
/// Rank `i > k` gives the zero space. Otherwise the generators are the wedge
/// of the point's greedy basis rays followed by each `(k-i)`-subset of its
/// completion vectors, subsets in lexicographic order. For `i = 0` the
/// completion is the standard basis and these are the monomials `e_S`.
pub fn weight_space(fan: &Fan, pc: &PointClass, k: usize) -> Result<WeightSpaceBasis> {
    let n = fan.dim();
    if k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    let i = pc.rank;
    let mut generators = Vec::new();
    if i <= k {
        let normal = Multivector::wedge_all(n, &pc.basis_rays(fan))?;
        for subset in k_subsets(pc.complement.len(), k - i) {
            let mut g = normal.clone();
            for &s in &subset {
                g = g.wedge(&pc.complement[s])?;
            }
            generators.push(g);
        }
    }
    Ok(WeightSpaceBasis {
        weight: pc.point.clone(),
        character: -&pc.point,
        rank: i,
        grade: k,
        dim: generators.len(),
        generators,
    })
}

/// One summand `C(n-i, k-i) · |S(i)|` of the face formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumTerm {
    pub rank: usize,
    /// Number of codimension-`rank` faces whose interior holds lattice points.
    pub faces: usize,
    pub count: usize,
    pub binomial: usize,
    pub product: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimEntry {
    pub k: usize,
    pub total: usize,
    pub terms: Vec<StratumTerm>,
}

/// `dim H^0(∧^k T) = Σ_{i ≤ k} C(n-i, k-i) · |S(i)|`.
pub fn dims_by_face_formula(strat: &Stratification, k: usize) -> Result<DimEntry> {
    let n = strat.dim();
    if k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    let mut faces = vec![0usize; n + 1];
    for pts in strat.face_groups().values() {
        let rank = strat
            .class_of(&pts[0])
            .expect("grouped point is classified")
            .rank;
        faces[rank] += 1;
    }
    let terms: Vec<StratumTerm> = (0..=k)
        .map(|i| {
            let count = strat.stratum(i).len();
            let b = binomial(n - i, k - i);
            StratumTerm {
                rank: i,
                faces: faces[i],
                count,
                binomial: b,
                product: b * count,
            }
        })
        .collect();
    let total = terms.iter().map(|t| t.product).sum();
    Ok(DimEntry { k, total, terms })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionTable {
    pub n: usize,
    pub entries: Vec<DimEntry>,
}

impl DimensionTable {
    pub fn get(&self, k: usize) -> Option<usize> {
        self.entries.iter().find(|e| e.k == k).map(|e| e.total)
    }

    /// Totals for `k = 0..=n`.
    pub fn totals(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.total).collect()
    }
}

pub fn dimension_table(strat: &Stratification) -> DimensionTable {
    let entries = (0..=strat.dim())
        .map(|k| dims_by_face_formula(strat, k).expect("k in range"))
        .collect();
    DimensionTable {
        n: strat.dim(),
        entries,
    }
}

/// One basis per weight of `S_k`, ordered lexicographically by weight.
pub fn decomposition(fan: &Fan, strat: &Stratification, k: usize) -> Result<Vec<WeightSpaceBasis>> {
    let mut out = strat
        .s_k(k)?
        .into_iter()
        .map(|pc| weight_space(fan, pc, k))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.weight.cmp(&b.weight));
    Ok(out)
}

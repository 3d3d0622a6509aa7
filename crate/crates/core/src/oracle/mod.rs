//! Independent checks of the weight-space dimensions.
//!
//! Two routes, neither of which uses the face formula:
//!
//! * the kernel route: `x ∧ e = 0` for every ray tight at `I`;
//! * the chart route: on each affine chart `U_σ` write `χ^I · ρ(x)` in the
//!   chart coordinates `z_t = χ^{e_t*(σ)}`. Because `ρ(e_t(σ)) = z_t ∂/∂z_t`,
//!   the coefficient of `∂_S` is a single monomial `c_S · z^{m + 1_S}` with
//!   `m_t = <I, e_t(σ)>`, and the field is holomorphic on the chart iff every
//!   nonzero `c_S` has a nonnegative exponent vector.

mod crosscheck;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

pub use crosscheck::{crosscheck, CrosscheckReport, Failure, FailureKind, Totals};

use crate::classify::PointClass;
use crate::exact_linalg::{
    self, binomial, k_subsets, IntMatrix, LatticeVector, Multivector, Subset,
};
use crate::fan::Fan;
use crate::{Error, Result};

/// One affine chart: the rays of a maximal cone and their dual basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChartData {
    pub cone: usize,
    pub rays: Vec<LatticeVector>,
    /// `e_t*(σ)` with `<e_s*, e_t> = δ_st`.
    pub dual_basis: Vec<LatticeVector>,
}

impl ChartData {
    pub fn dim(&self) -> usize {
        self.rays.len()
    }

    /// Chart exponents of `χ^I`: `m_t = <I, e_t(σ)>`.
    pub fn exponents(&self, weight: &LatticeVector) -> Vec<i64> {
        self.rays.iter().map(|e| weight.dot(e)).collect()
    }

    /// `I ∈ S_k(σ)`: all exponents at least -1 and at most `k` equal to -1.
    pub fn admits(&self, weight: &LatticeVector, k: usize) -> bool {
        let m = self.exponents(weight);
        m.iter().all(|&v| v >= -1) && m.iter().filter(|&&v| v == -1).count() <= k
    }

    /// Tight rays of `I` on this chart, as slots into `rays`.
    pub fn tight_slots(&self, weight: &LatticeVector) -> Vec<usize> {
        self.exponents(weight)
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == -1)
            .map(|(s, _)| s)
            .collect()
    }

    /// Matrix whose row `S` is the linear functional `x ↦ c_S(x)`, the
    /// coefficient of `e_S(σ)` when `x` is written in the chart's ray basis.
    /// Entries are the `k × k` minors of the dual basis matrix.
    pub fn coefficient_functionals(&self, k: usize) -> Vec<Vec<BigInt>> {
        let n = self.dim();
        let subsets = k_subsets(n, k);
        subsets
            .iter()
            .map(|rows| {
                subsets
                    .iter()
                    .map(|cols| {
                        let mut m = IntMatrix::new(k);
                        for &r in rows {
                            let d = &self.dual_basis[r];
                            m.push_row(cols.iter().map(|&c| BigInt::from(d[c])).collect())
                                .expect("row width is k");
                        }
                        m.determinant().expect("square minor")
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn chart_data(fan: &Fan, cone_index: usize) -> Result<ChartData> {
    let rays = fan.cone_rays(cone_index);
    let n = fan.dim();
    let inv = exact_linalg::inverse(&rays)?.ok_or(Error::SingularCone(cone_index))?;
    // rows of R are the rays, so the dual basis is the rows of (R^{-1})^T
    let mut dual_basis = Vec::with_capacity(n);
    for s in 0..n {
        let mut coords = Vec::with_capacity(n);
        for row in inv.iter() {
            let v = &row[s];
            if !v.is_integer() {
                return Err(Error::SingularCone(cone_index));
            }
            coords
                .push(num_traits::ToPrimitive::to_i64(&v.to_integer()).expect("small dual entry"));
        }
        dual_basis.push(LatticeVector::new(coords));
    }
    Ok(ChartData {
        cone: cone_index,
        rays,
        dual_basis,
    })
}

/// All charts of a fan, with the coefficient functionals cached per grade.
#[derive(Debug)]
pub struct ChartAtlas {
    dim: usize,
    charts: Vec<ChartData>,
    functionals: Vec<Vec<OnceLock<Vec<Vec<BigInt>>>>>,
}

impl ChartAtlas {
    pub fn new(fan: &Fan) -> Result<Self> {
        let charts = (0..fan.max_cones().len())
            .map(|c| chart_data(fan, c))
            .collect::<Result<Vec<_>>>()?;
        let functionals = charts
            .iter()
            .map(|_| (0..=fan.dim()).map(|_| OnceLock::new()).collect())
            .collect();
        Ok(ChartAtlas {
            dim: fan.dim(),
            charts,
            functionals,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn charts(&self) -> &[ChartData] {
        &self.charts
    }

    fn functionals(&self, chart: usize, k: usize) -> &[Vec<BigInt>] {
        self.functionals[chart][k].get_or_init(|| self.charts[chart].coefficient_functionals(k))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LaurentTerm {
    /// Exponent of `z` in the coefficient of `∂_S`: `m + 1_S`.
    pub exponent: Vec<i64>,
    #[serde(serialize_with = "display_string")]
    pub coeff: BigRational,
}

fn display_string<S: serde::Serializer>(
    v: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// `χ^I · ρ(x)` on one chart: `∂_S ↦ c_S z^{m + 1_S}`, nonzero `c_S` only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LaurentField {
    pub grade: usize,
    pub terms: BTreeMap<Subset, LaurentTerm>,
}

impl LaurentField {
    pub fn is_polynomial(&self) -> bool {
        self.terms
            .values()
            .all(|t| t.exponent.iter().all(|&e| e >= 0))
    }
}

pub fn laurent_field(weight: &LatticeVector, x: &Multivector, chart: &ChartData) -> LaurentField {
    let k = x.grade();
    let m = chart.exponents(weight);
    let coords = x.coordinates();
    let subsets = k_subsets(chart.dim(), k);
    let mut terms = BTreeMap::new();
    for (row, s) in chart.coefficient_functionals(k).iter().zip(subsets) {
        let c: BigRational = row
            .iter()
            .zip(&coords)
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, b)| BigRational::from_integer(a.clone()) * b)
            .fold(BigRational::zero(), |acc, v| acc + v);
        if c.is_zero() {
            continue;
        }
        let mut exponent = m.clone();
        for &t in &s {
            exponent[t] += 1;
        }
        terms.insert(s, LaurentTerm { exponent, coeff: c });
    }
    LaurentField { grade: k, terms }
}

/// Whether `χ^I · ρ(x)` extends holomorphically over the chart.
pub fn is_holomorphic_on_chart(weight: &LatticeVector, x: &Multivector, chart: &ChartData) -> bool {
    laurent_field(weight, x, chart).is_polynomial()
}

/// Kernel route: `dim {x ∈ ∧^k : x ∧ e = 0 for every tight ray e}`.
pub fn weight_space_dim_by_kernel(fan: &Fan, pc: &PointClass, k: usize) -> Result<usize> {
    exact_linalg::kernel_dim_of_wedge_maps(fan.dim(), k, &pc.active_rays(fan))
}

/// Chart route, valid for any weight `I ∈ M`.
///
/// Zero unless `I ∈ S_k(σ)` on every chart. Otherwise every chart
/// contributes the constraints `c_S(x) = 0` for each `S` whose Laurent
/// exponent `m + 1_S` has a negative entry, all charts are stacked into one
/// system, and the result is `C(n, k)` minus its rank.
pub fn weight_space_dim_by_charts(
    atlas: &ChartAtlas,
    weight: &LatticeVector,
    k: usize,
) -> Result<usize> {
    let n = atlas.dim();
    if k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    if weight.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: weight.dim(),
        });
    }
    if !atlas.charts.iter().all(|c| c.admits(weight, k)) {
        return Ok(0);
    }
    let subsets = k_subsets(n, k);
    let mut system = IntMatrix::new(subsets.len());
    for (ci, chart) in atlas.charts.iter().enumerate() {
        let m = chart.exponents(weight);
        let functionals = atlas.functionals(ci, k);
        for (s, row) in subsets.iter().zip(functionals) {
            let pole = m
                .iter()
                .enumerate()
                .any(|(t, &mt)| mt + i64::from(s.contains(&t)) < 0);
            if pole {
                system.push_row(row.clone())?;
            }
        }
    }
    Ok(binomial(n, k) - system.rank())
}

/// A lattice direction that pushes `<I, e_t(σ)>` down by one on `slot` and
/// leaves the other chart exponents alone: `-e_slot*(σ)`.
pub fn outward_shift(chart: &ChartData, slot: usize) -> LatticeVector {
    -&chart.dual_basis[slot]
}

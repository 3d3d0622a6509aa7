use serde::Serialize;

use super::{is_holomorphic_on_chart, weight_space_dim_by_charts, weight_space_dim_by_kernel};
use crate::exact_linalg::{IntMatrix, LatticeVector};
use crate::model::ToricModel;
use crate::pvf::{dims_by_face_formula, weight_space};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    /// Per-weight dimensions disagree between routes.
    DimensionMismatch,
    /// A weight outside `S_k` has a nonzero chart dimension.
    Nonvanishing,
    /// A generator has a pole on some chart.
    NotHolomorphic,
    /// A generator fails `x ∧ e = 0` for a tight ray.
    NotInKernel,
    /// Generators of one weight space are linearly dependent.
    DependentGenerators,
    /// Summed weight spaces disagree with the face formula.
    TotalMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    #[serde(rename = "I")]
    pub weight: Option<LatticeVector>,
    pub kind: FailureKind,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub formula: usize,
    pub kernel: usize,
    pub charts: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub fan_id: String,
    pub k: usize,
    pub margin: i64,
    pub weights_checked: usize,
    pub generators_checked: usize,
    pub totals: Totals,
    pub failures: Vec<Failure>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Sweeps every integer weight of the bounding box inflated by `margin` and
/// compares the face formula, the kernel oracle and the chart oracle, then
/// checks every emitted generator chart by chart.
pub fn crosscheck(model: &ToricModel, k: usize, margin: i64) -> Result<CrosscheckReport> {
    model.check_k(k)?;
    if margin < 1 {
        return Err(Error::Margin(margin));
    }
    let fan = model.fan();
    let strat = model.stratification();
    let atlas = model.atlas();
    let mut failures = Vec::new();
    let mut totals = Totals::default();
    let mut summed_weight_spaces = 0usize;
    let mut weights_checked = 0;
    let mut generators_checked = 0;

    for weight in model.bounding_box().inflated(margin).points() {
        weights_checked += 1;
        let charts = weight_space_dim_by_charts(atlas, &weight, k)?;
        totals.charts += charts;
        let Some(pc) = strat.class_of(&weight) else {
            if charts != 0 {
                failures.push(Failure {
                    weight: Some(weight.clone()),
                    kind: FailureKind::Nonvanishing,
                    detail: format!("outside the polytope but chart dimension {charts}"),
                });
            }
            continue;
        };

        let basis = weight_space(fan, pc, k)?;
        let kernel = weight_space_dim_by_kernel(fan, pc, k)?;
        totals.kernel += kernel;
        summed_weight_spaces += basis.dim;
        if basis.dim != kernel || basis.dim != charts {
            failures.push(Failure {
                weight: Some(weight.clone()),
                kind: FailureKind::DimensionMismatch,
                detail: format!("formula {} kernel {kernel} charts {charts}", basis.dim),
            });
        }
        if pc.rank > k && charts != 0 {
            failures.push(Failure {
                weight: Some(weight.clone()),
                kind: FailureKind::Nonvanishing,
                detail: format!("rank {} > k but chart dimension {charts}", pc.rank),
            });
        }

        let mut coords = IntMatrix::new(crate::exact_linalg::binomial(model.dim(), k));
        for (gi, g) in basis.generators.iter().enumerate() {
            generators_checked += 1;
            for chart in atlas.charts() {
                if !is_holomorphic_on_chart(&weight, g, chart) {
                    failures.push(Failure {
                        weight: Some(weight.clone()),
                        kind: FailureKind::NotHolomorphic,
                        detail: format!("generator {gi} ({g}) has a pole on chart {}", chart.cone),
                    });
                }
            }
            if k < model.dim() {
                for &t in &pc.active {
                    if !g.wedge(fan.ray(t))?.is_zero() {
                        failures.push(Failure {
                            weight: Some(weight.clone()),
                            kind: FailureKind::NotInKernel,
                            detail: format!("generator {gi} ∧ ray {t} ≠ 0"),
                        });
                    }
                }
            }
            coords.push_row(g.integer_coordinates())?;
        }
        if coords.rank() != basis.dim {
            failures.push(Failure {
                weight: Some(weight.clone()),
                kind: FailureKind::DependentGenerators,
                detail: format!("{} generators span rank {}", basis.dim, coords.rank()),
            });
        }
    }

    totals.formula = dims_by_face_formula(strat, k)?.total;
    if summed_weight_spaces != totals.formula {
        failures.push(Failure {
            weight: None,
            kind: FailureKind::TotalMismatch,
            detail: format!(
                "weight spaces sum to {summed_weight_spaces}, face formula gives {}",
                totals.formula
            ),
        });
    }
    for (name, v) in [("kernel", totals.kernel), ("charts", totals.charts)] {
        if v != totals.formula {
            failures.push(Failure {
                weight: None,
                kind: FailureKind::TotalMismatch,
                detail: format!("{name} total {v} != formula total {}", totals.formula),
            });
        }
    }

    Ok(CrosscheckReport {
        fan_id: model.label().to_string(),
        k,
        margin,
        weights_checked,
        generators_checked,
        totals,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Fan;

    #[test]
    fn p2_degree_one() {
        let fan = Fan::new(
            2,
            vec![[1, 0].into(), [0, 1].into(), [-1, -1].into()],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap();
        let model = ToricModel::new(fan).unwrap();
        let r = crosscheck(&model, 1, 2).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(
            r.totals,
            Totals {
                formula: 8,
                kernel: 8,
                charts: 8
            }
        );
        // box [-1,2]^2 inflated by 2
        assert_eq!(r.weights_checked, 64);
        assert_eq!(r.generators_checked, 8);
        assert!(matches!(crosscheck(&model, 1, 0), Err(Error::Margin(0))));
    }

    #[test]
    fn spec_sweeps() {
        use crate::generators::{hirzebruch, projective_space};
        let p3 = ToricModel::new(projective_space(3).unwrap()).unwrap();
        let r = crosscheck(&p3, 2, 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.totals.charts, 45);
        let f2 = ToricModel::new(hirzebruch(2).unwrap()).unwrap();
        let r = crosscheck(&f2, 1, 2).unwrap();
        assert!(r.passed());
        assert_eq!(
            r.totals,
            Totals {
                formula: 7,
                kernel: 7,
                charts: 7
            }
        );
    }
}

use crate::classify::{stratify, Stratification};
use crate::fan::{validate, Fan};
use crate::oracle::ChartAtlas;
use crate::polytope::{lattice_points, BoundingBox, HalfspaceSystem, LatticePointSet};
use crate::pvf::{dimension_table, DimensionTable};
use crate::{Error, Result};

/// A validated fan together with everything derived from it once: the
/// polytope, its lattice points and their stratification, and the charts.
#[derive(Debug)]
pub struct ToricModel {
    label: String,
    fan: Fan,
    halfspaces: HalfspaceSystem,
    bbox: BoundingBox,
    points: LatticePointSet,
    strat: Stratification,
    atlas: ChartAtlas,
}

impl ToricModel {
    /// Fails with [`Error::Invalid`] unless the fan is smooth and complete.
    pub fn new(fan: Fan) -> Result<Self> {
        let report = validate(&fan);
        if !report.is_valid() {
            return Err(Error::Invalid(Box::new(report)));
        }
        let (halfspaces, bbox, points) = lattice_points(&fan)?;
        let strat = stratify(&fan, &points)?;
        let atlas = ChartAtlas::new(&fan)?;
        let label = format!(
            "n{}-r{}-c{}",
            fan.dim(),
            fan.rays().len(),
            fan.max_cones().len()
        );
        Ok(ToricModel {
            label,
            fan,
            halfspaces,
            bbox,
            points,
            strat,
            atlas,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.fan.dim()
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn halfspaces(&self) -> &HalfspaceSystem {
        &self.halfspaces
    }

    pub fn bounding_box(&self) -> &BoundingBox {
        &self.bbox
    }

    pub fn points(&self) -> &LatticePointSet {
        &self.points
    }

    pub fn stratification(&self) -> &Stratification {
        &self.strat
    }

    pub fn atlas(&self) -> &ChartAtlas {
        &self.atlas
    }

    pub fn dimension_table(&self) -> DimensionTable {
        dimension_table(&self.strat)
    }

    pub fn check_k(&self, k: usize) -> Result<()> {
        if k > self.dim() {
            Err(Error::KOutOfRange { k, n: self.dim() })
        } else {
            Ok(())
        }
    }
}

//! Interchangeable ways of computing weight-space dimensions, registered by
//! name.
//!
//! | name      | route                                                      |
//! |-----------|------------------------------------------------------------|
//! | `formula` | `C(n-i, k-i)` from the stratum of the weight               |
//! | `kernel`  | kernel of `x ↦ (x ∧ e)` over the tight rays                |
//! | `charts`  | Laurent exponents of `χ^I ρ(x)` on every affine chart      |

use crate::exact_linalg::{binomial, LatticeVector};
use crate::model::ToricModel;
use crate::oracle::{weight_space_dim_by_charts, weight_space_dim_by_kernel};
use crate::{Error, Result};

pub trait DimensionMethod: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    /// Dimension of the weight space of `weight` in degree `k`.
    fn weight_dim(&self, model: &ToricModel, weight: &LatticeVector, k: usize) -> Result<usize>;

    /// The weights this method needs to visit to account for everything.
    /// `margin` widens the search for methods that do not assume the answer
    /// is supported on the polytope.
    fn support(&self, model: &ToricModel, margin: i64) -> Vec<LatticeVector> {
        let _ = margin;
        model.points().points().to_vec()
    }

    fn total(&self, model: &ToricModel, k: usize, margin: i64) -> Result<usize> {
        self.support(model, margin)
            .iter()
            .map(|w| self.weight_dim(model, w, k))
            .sum()
    }
}

pub struct FaceFormula;

impl DimensionMethod for FaceFormula {
    fn name(&self) -> &'static str {
        "formula"
    }

    fn description(&self) -> &'static str {
        "binomial face formula over the strata of the polytope"
    }

    fn weight_dim(&self, model: &ToricModel, weight: &LatticeVector, k: usize) -> Result<usize> {
        model.check_k(k)?;
        Ok(match model.stratification().class_of(weight) {
            Some(pc) if pc.rank <= k => binomial(model.dim() - pc.rank, k - pc.rank),
            _ => 0,
        })
    }

    fn total(&self, model: &ToricModel, k: usize, _margin: i64) -> Result<usize> {
        Ok(crate::pvf::dims_by_face_formula(model.stratification(), k)?.total)
    }
}

pub struct WedgeKernel;

impl DimensionMethod for WedgeKernel {
    fn name(&self) -> &'static str {
        "kernel"
    }

    fn description(&self) -> &'static str {
        "kernel of wedging with every tight ray"
    }

    fn weight_dim(&self, model: &ToricModel, weight: &LatticeVector, k: usize) -> Result<usize> {
        model.check_k(k)?;
        match model.stratification().class_of(weight) {
            Some(pc) => weight_space_dim_by_kernel(model.fan(), pc, k),
            None => Ok(0),
        }
    }
}

pub struct ChartLaurent;

impl DimensionMethod for ChartLaurent {
    fn name(&self) -> &'static str {
        "charts"
    }

    fn description(&self) -> &'static str {
        "holomorphic extension across every affine chart"
    }

    fn weight_dim(&self, model: &ToricModel, weight: &LatticeVector, k: usize) -> Result<usize> {
        weight_space_dim_by_charts(model.atlas(), weight, k)
    }

    fn support(&self, model: &ToricModel, margin: i64) -> Vec<LatticeVector> {
        model.bounding_box().inflated(margin).points().collect()
    }
}

pub struct MethodRegistry {
    methods: Vec<Box<dyn DimensionMethod>>,
}

impl MethodRegistry {
    pub fn empty() -> Self {
        MethodRegistry {
            methods: Vec::new(),
        }
    }

    /// `formula`, `kernel` and `charts`, in that order.
    pub fn builtin() -> Self {
        let mut r = MethodRegistry::empty();
        r.register(Box::new(FaceFormula));
        r.register(Box::new(WedgeKernel));
        r.register(Box::new(ChartLaurent));
        r
    }

    /// Later registrations replace earlier ones of the same name.
    pub fn register(&mut self, method: Box<dyn DimensionMethod>) {
        self.methods.retain(|m| m.name() != method.name());
        self.methods.push(method);
    }

    pub fn get(&self, name: &str) -> Result<&dyn DimensionMethod> {
        self.methods
            .iter()
            .find(|m| m.name() == name)
            .map(|m| m.as_ref())
            .ok_or_else(|| Error::UnknownMethod(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.methods.iter().map(|m| m.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn DimensionMethod> {
        self.methods.iter().map(|m| m.as_ref())
    }
}

impl Default for MethodRegistry {
    fn default() -> Self {
        MethodRegistry::builtin()
    }
}

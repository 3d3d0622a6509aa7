//! Built-in families of smooth complete fans, looked up by name.

use std::fmt;
use std::str::FromStr;

use crate::exact_linalg::{k_subsets, LatticeVector};
use crate::fan::Fan;
use crate::{Error, Result};

/// Fan of projective `n`-space: rays `e_1, .., e_n, -(e_1 + .. + e_n)`, every
/// `n`-subset a maximal cone.
pub fn projective_space(n: usize) -> Result<Fan> {
    if n < 1 {
        return Err(Error::FamilyParams("projective space needs n >= 1".into()));
    }
    let mut rays: Vec<LatticeVector> = (0..n).map(|j| LatticeVector::unit(n, j)).collect();
    rays.push(LatticeVector::new(vec![-1; n]));
    Fan::new(n, rays, k_subsets(n + 1, n))
}

/// Product of projective spaces of the given dimensions, factors embedded
/// block-diagonally.
pub fn product_projective(dims: &[usize]) -> Result<Fan> {
    if dims.is_empty() {
        return Err(Error::FamilyParams(
            "product needs at least one factor".into(),
        ));
    }
    let factors = dims
        .iter()
        .map(|&d| projective_space(d))
        .collect::<Result<Vec<_>>>()?;
    let total: usize = dims.iter().sum();

    let mut rays = Vec::new();
    let mut offsets = Vec::new();
    let mut ray_offsets = Vec::new();
    let mut shift = 0;
    for f in &factors {
        offsets.push(shift);
        ray_offsets.push(rays.len());
        for r in f.rays() {
            let mut v = vec![0; total];
            v[shift..shift + f.dim()].copy_from_slice(r.coords());
            rays.push(LatticeVector::new(v));
        }
        shift += f.dim();
    }

    let mut cones: Vec<Vec<usize>> = vec![Vec::new()];
    for (f, &ro) in factors.iter().zip(&ray_offsets) {
        cones = cones
            .iter()
            .flat_map(|prefix| {
                f.max_cones().iter().map(move |c| {
                    let mut cone = prefix.clone();
                    cone.extend(c.iter().map(|&t| t + ro));
                    cone
                })
            })
            .collect();
    }
    Fan::new(total, rays, cones)
}

/// The `a`-th Hirzebruch surface: rays `(1,0), (0,1), (-1,a), (0,-1)`.
pub fn hirzebruch(a: i64) -> Result<Fan> {
    if a < 0 {
        return Err(Error::FamilyParams("hirzebruch needs a >= 0".into()));
    }
    Fan::new(
        2,
        vec![[1, 0].into(), [0, 1].into(), [-1, a].into(), [0, -1].into()],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
    )
}

/// A named family together with its integer parameters, written
/// `name:p1,p2,..` (e.g. `projective:3`, `product:1,1`, `hirzebruch:2`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: String,
    pub params: Vec<i64>,
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (family, rest) = s.split_once(':').unwrap_or((s, ""));
        let params = rest
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::FamilyParams(format!("{p}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FamilySpec {
            family: family.trim().to_string(),
            params,
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.params.iter().map(i64::to_string).collect();
        write!(f, "{}:{}", self.family, p.join(","))
    }
}

pub trait FanFamily: Send + Sync {
    fn name(&self) -> &'static str;

    /// Parameter synopsis for help output.
    fn usage(&self) -> &'static str;

    fn build(&self, params: &[i64]) -> Result<Fan>;
}

fn nonneg(params: &[i64]) -> Result<Vec<usize>> {
    params
        .iter()
        .map(|&p| {
            usize::try_from(p).map_err(|_| Error::FamilyParams(format!("negative parameter {p}")))
        })
        .collect()
}

fn exactly_one(name: &str, params: &[i64]) -> Result<i64> {
    match params {
        [p] => Ok(*p),
        _ => Err(Error::FamilyParams(format!(
            "{name} takes exactly one parameter"
        ))),
    }
}

pub struct Projective;

impl FanFamily for Projective {
    fn name(&self) -> &'static str {
        "projective"
    }

    fn usage(&self) -> &'static str {
        "projective:<n>  (n >= 1)"
    }

    fn build(&self, params: &[i64]) -> Result<Fan> {
        let n = exactly_one(self.name(), params)?;
        projective_space(nonneg(&[n])?[0])
    }
}

pub struct Product;

impl FanFamily for Product {
    fn name(&self) -> &'static str {
        "product"
    }

    fn usage(&self) -> &'static str {
        "product:<n1>,<n2>,...  (each >= 1)"
    }

    fn build(&self, params: &[i64]) -> Result<Fan> {
        product_projective(&nonneg(params)?)
    }
}

pub struct Hirzebruch;

impl FanFamily for Hirzebruch {
    fn name(&self) -> &'static str {
        "hirzebruch"
    }

    fn usage(&self) -> &'static str {
        "hirzebruch:<a>  (a >= 0)"
    }

    fn build(&self, params: &[i64]) -> Result<Fan> {
        hirzebruch(exactly_one(self.name(), params)?)
    }
}

pub struct FamilyRegistry {
    families: Vec<Box<dyn FanFamily>>,
}

impl FamilyRegistry {
    pub fn builtin() -> Self {
        FamilyRegistry {
            families: vec![
                Box::new(Projective),
                Box::new(Product),
                Box::new(Hirzebruch),
            ],
        }
    }

    pub fn register(&mut self, family: Box<dyn FanFamily>) {
        self.families.retain(|f| f.name() != family.name());
        self.families.push(family);
    }

    pub fn get(&self, name: &str) -> Result<&dyn FanFamily> {
        self.families
            .iter()
            .find(|f| f.name() == name)
            .map(|f| f.as_ref())
            .ok_or_else(|| Error::UnknownFamily(name.to_string()))
    }

    pub fn build(&self, spec: &FamilySpec) -> Result<Fan> {
        self.get(&spec.family)?.build(&spec.params)
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn FanFamily> {
        self.families.iter().map(|f| f.as_ref())
    }
}

impl Default for FamilyRegistry {
    fn default() -> Self {
        FamilyRegistry::builtin()
    }
}

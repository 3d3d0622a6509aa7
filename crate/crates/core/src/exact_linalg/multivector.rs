use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeMap, Serializer};

use super::{check_dim, IntMatrix, LatticeVector};
use crate::{Error, Result};

/// A strictly increasing list of 0-based basis indices.
pub type Subset = Vec<usize>;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All `k`-subsets of `{0, .., n-1}` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Subset> {
    let mut out = Vec::with_capacity(binomial(n, k));
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // rightmost slot that can still advance
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Sign and result of `e_U ∧ e_j`, or `None` if `j ∈ U`.
fn insert_index(subset: &[usize], j: usize) -> Option<(bool, Subset)> {
    match subset.binary_search(&j) {
        Ok(_) => None,
        Err(pos) => {
            let mut s = subset.to_vec();
            s.insert(pos, j);
            // e_j moves left past every index larger than it
            let negative = (subset.len() - pos) % 2 == 1;
            Some((negative, s))
        }
    }
}

/// An element of `∧^k Q^n` in the basis `e_S`, `S` a lexicographically
/// ordered `k`-subset. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multivector {
    dim: usize,
    grade: usize,
    coeffs: BTreeMap<Subset, BigRational>,
}

impl Multivector {
    pub fn zero(dim: usize, grade: usize) -> Self {
        Multivector {
            dim,
            grade,
            coeffs: BTreeMap::new(),
        }
    }

    /// The grade-0 element `c`.
    pub fn scalar(dim: usize, c: BigRational) -> Self {
        let mut m = Multivector::zero(dim, 0);
        m.add_term(Vec::new(), c);
        m
    }

    pub fn one(dim: usize) -> Self {
        Multivector::scalar(dim, BigRational::one())
    }

    /// The basis monomial `e_S`. `subset` must be strictly increasing.
    pub fn basis(dim: usize, subset: Subset) -> Self {
        debug_assert!(subset.windows(2).all(|w| w[0] < w[1]));
        let mut m = Multivector::zero(dim, subset.len());
        m.add_term(subset, BigRational::one());
        m
    }

    pub fn from_vector(v: &LatticeVector) -> Self {
        let mut m = Multivector::zero(v.dim(), 1);
        for (j, &c) in v.coords().iter().enumerate() {
            m.add_term(vec![j], BigRational::from_integer(c.into()));
        }
        m
    }

    /// `v_1 ∧ ... ∧ v_m`, the scalar 1 for an empty list.
    pub fn wedge_all(dim: usize, vectors: &[LatticeVector]) -> Result<Self> {
        vectors
            .iter()
            .try_fold(Multivector::one(dim), |acc, v| acc.wedge(v))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, subset: &[usize]) -> BigRational {
        self.coeffs
            .get(subset)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Subset, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True if every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    fn add_term(&mut self, subset: Subset, c: BigRational) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(subset) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self ∧ v`.
    pub fn wedge(&self, v: &LatticeVector) -> Result<Multivector> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        if self.grade >= self.dim {
            return Err(Error::GradeOverflow {
                grade: self.grade,
                dim: self.dim,
            });
        }
        let mut out = Multivector::zero(self.dim, self.grade + 1);
        for (subset, c) in &self.coeffs {
            for (j, &vj) in v.coords().iter().enumerate() {
                if vj == 0 {
                    continue;
                }
                if let Some((negative, s)) = insert_index(subset, j) {
                    let mut term = c * BigRational::from_integer(vj.into());
                    if negative {
                        term = -term;
                    }
                    out.add_term(s, term);
                }
            }
        }
        Ok(out)
    }

    /// Coordinates in the lexicographic basis of `∧^grade Q^dim`.
    pub fn coordinates(&self) -> Vec<BigRational> {
        k_subsets(self.dim, self.grade)
            .iter()
            .map(|s| self.coeff(s))
            .collect()
    }

    /// Integer coordinates, assuming [`is_integral`](Self::is_integral).
    pub fn integer_coordinates(&self) -> Vec<BigInt> {
        self.coordinates()
            .into_iter()
            .map(|c| c.to_integer())
            .collect()
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (subset, c)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            if c.is_negative() {
                write!(f, "-")?;
            } else if n > 0 {
                write!(f, "+")?;
            }
            let a = c.abs();
            if subset.is_empty() {
                write!(f, "{a}")?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            let names: Vec<String> = subset.iter().map(|i| format!("e{}", i + 1)).collect();
            write!(f, "{}", names.join("^"))?;
        }
        Ok(())
    }
}

/// Subset key as 1-based, comma separated indices (`""` for the scalar part).
pub(crate) fn subset_key(subset: &[usize]) -> String {
    subset
        .iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Serialized as `{"1,2": -1, ...}`: integral coefficients become JSON
/// integers when they fit in an `i64`, anything else a `"p/q"` string.
impl Serialize for Multivector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (subset, c) in &self.coeffs {
            let key = subset_key(subset);
            match c.is_integer().then(|| c.to_integer().to_i64()).flatten() {
                Some(v) => map.serialize_entry(&key, &v)?,
                None => map.serialize_entry(&key, &c.to_string())?,
            }
        }
        map.end()
    }
}

/// Dimension of `{x ∈ ∧^k Q^n : x ∧ v = 0 for every v}`.
///
/// Stacks the matrices of `x ↦ x ∧ v` and returns `C(n, k)` minus the rank.
pub fn kernel_dim_of_wedge_maps(n: usize, k: usize, vectors: &[LatticeVector]) -> Result<usize> {
    check_dim(n)?;
    if k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    for v in vectors {
        if v.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.dim(),
            });
        }
    }
    let cols = k_subsets(n, k);
    let targets = k_subsets(n, k + 1);
    let target_index: BTreeMap<&Subset, usize> =
        targets.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = IntMatrix::new(cols.len());
    for v in vectors {
        let mut block = vec![vec![BigInt::zero(); cols.len()]; targets.len()];
        for (ci, u) in cols.iter().enumerate() {
            for (j, &vj) in v.coords().iter().enumerate() {
                if vj == 0 {
                    continue;
                }
                if let Some((negative, s)) = insert_index(u, j) {
                    let val = if negative { -vj } else { vj };
                    block[target_index[&s]][ci] += BigInt::from(val);
                }
            }
        }
        for row in block {
            if row.iter().any(|c| !c.is_zero()) {
                m.push_row(row)?;
            }
        }
    }
    Ok(cols.len() - m.rank())
}

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// An element of `N` or `M`, written in a fixed `Z`-basis.
///
/// Coordinates are `i64`; every bulk linear-algebra decision promotes them
/// to big integers first, so only the raw coordinates themselves are bounded.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }

    pub fn zero(dim: usize) -> Self {
        LatticeVector(vec![0; dim])
    }

    /// The standard basis vector `e_j` (0-based `j`).
    pub fn unit(dim: usize, j: usize) -> Self {
        let mut v = vec![0; dim];
        v[j] = 1;
        LatticeVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// The pairing `<self, other>`.
    ///
    /// # Panics
    ///
    /// If the dimensions differ.
    pub fn dot(&self, other: &LatticeVector) -> i64 {
        assert_eq!(
            self.dim(),
            other.dim(),
            "pairing of vectors of different dimension"
        );
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn content(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &c| g.gcd(&c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// Divides out the coordinate gcd.
    pub fn primitive(&self) -> Result<LatticeVector> {
        let g = self.content();
        if g == 0 {
            return Err(Error::ZeroRay);
        }
        Ok(LatticeVector(self.0.iter().map(|c| c / g).collect()))
    }

    pub fn scaled(&self, s: i64) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| c * s).collect())
    }
}

impl Index<usize> for LatticeVector {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

impl<const N: usize> From<[i64; N]> for LatticeVector {
    fn from(v: [i64; N]) -> Self {
        LatticeVector(v.to_vec())
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;

    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.dim(), rhs.dim());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;

    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.dim(), rhs.dim());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;

    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_divides_gcd() {
        assert_eq!(
            LatticeVector::from([2, -4]).primitive().unwrap(),
            LatticeVector::from([1, -2])
        );
        assert_eq!(
            LatticeVector::from([1, 0]).primitive().unwrap(),
            LatticeVector::from([1, 0])
        );
        assert_eq!(
            LatticeVector::from([-3, 0, 6]).primitive().unwrap(),
            LatticeVector::from([-1, 0, 2])
        );
    }

    #[test]
    fn primitive_rejects_zero() {
        assert_eq!(LatticeVector::from([0, 0]).primitive(), Err(Error::ZeroRay));
    }

    #[test]
    fn display() {
        assert_eq!(LatticeVector::from([-1, 2]).to_string(), "(-1,2)");
    }
}

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::LatticeVector;
use crate::{Error, Result};

/// Dense big-integer matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    ncols: usize,
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn new(ncols: usize) -> Self {
        IntMatrix {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn from_lattice_rows(ncols: usize, rows: &[LatticeVector]) -> Result<Self> {
        let mut m = IntMatrix::new(ncols);
        for r in rows {
            m.push_row(r.coords().iter().map(|&c| BigInt::from(c)).collect())?;
        }
        Ok(m)
    }

    pub fn push_row(&mut self, row: Vec<BigInt>) -> Result<()> {
        if row.len() != self.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Rank over `Q` by Bareiss fraction-free elimination.
    pub fn rank(&self) -> usize {
        bareiss(self.rows.clone(), self.ncols).rank
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.nrows() != self.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                found: self.nrows(),
            });
        }
        if self.ncols == 0 {
            return Ok(BigInt::one());
        }
        let r = bareiss(self.rows.clone(), self.ncols);
        if r.rank < self.ncols {
            return Ok(BigInt::zero());
        }
        let last = r.rows[self.ncols - 1][self.ncols - 1].clone();
        Ok(if r.negate { -last } else { last })
    }
}

struct Echelon {
    rank: usize,
    negate: bool,
    rows: Vec<Vec<BigInt>>,
}

// Every intermediate entry is a minor of the input, so the division by the
// previous pivot is exact even when pivot columns are skipped.
fn bareiss(mut a: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let m = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut negate = false;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            for j in c + 1..ncols {
                let v = (&pivot_row[c] * &row[j] - &row[c] * &pivot_row[j]) / &prev;
                row[j] = v;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot_row[c].clone();
        r += 1;
    }
    Echelon {
        rank: r,
        negate,
        rows: a,
    }
}

/// Rank of a list of lattice vectors over `Q`; all must share one length.
pub fn rank(rows: &[LatticeVector]) -> Result<usize> {
    let Some(first) = rows.first() else {
        return Ok(0);
    };
    rank_of_rows(first.dim(), rows)
}

/// Like [`rank`] but with an explicit ambient dimension, so an empty list
/// still type-checks against `n`.
pub fn rank_of_rows(n: usize, rows: &[LatticeVector]) -> Result<usize> {
    Ok(IntMatrix::from_lattice_rows(n, rows)?.rank())
}

/// Determinant of the square matrix whose rows are `rows`.
pub fn determinant(rows: &[LatticeVector]) -> Result<BigInt> {
    IntMatrix::from_lattice_rows(rows.len(), rows)?.determinant()
}

/// Exact inverse over `Q` by Gauss-Jordan; `None` if singular.
pub fn inverse(rows: &[LatticeVector]) -> Result<Option<Vec<Vec<BigRational>>>> {
    let n = rows.len();
    let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    for (i, r) in rows.iter().enumerate() {
        if r.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r.dim(),
            });
        }
        let mut row: Vec<BigRational> = r
            .coords()
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        row.extend((0..n).map(|j| {
            if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        }));
        a.push(row);
    }
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Ok(None);
        };
        a.swap(p, c);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        let pivot = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot) {
                *x -= &f * p;
            }
        }
    }
    Ok(Some(a.into_iter().map(|row| row[n..].to_vec()).collect()))
}

/// Completes a linearly independent family to a basis of `Q^n` with
/// standard basis vectors, taken in index order whenever they raise the rank.
pub fn extend_to_basis(n: usize, independent: &[LatticeVector]) -> Result<Vec<LatticeVector>> {
    let mut m = IntMatrix::from_lattice_rows(n, independent)?;
    let mut r = m.rank();
    if r != independent.len() {
        return Err(Error::Dependent);
    }
    let mut out = Vec::new();
    for j in 0..n {
        if r == n {
            break;
        }
        let e = LatticeVector::unit(n, j);
        let mut trial = m.clone();
        trial.push_row(e.coords().iter().map(|&c| BigInt::from(c)).collect())?;
        let tr = trial.rank();
        if tr > r {
            m = trial;
            r = tr;
            out.push(e);
        }
    }
    Ok(out)
}

pub(crate) fn matrix_is_unit(d: &BigInt) -> bool {
    d.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv<const N: usize>(v: [i64; N]) -> LatticeVector {
        LatticeVector::from(v)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[lv([1, 0]), lv([0, 1])]).unwrap(), 2);
        assert_eq!(rank(&[lv([1, 0]), lv([2, 0])]).unwrap(), 1);
        assert_eq!(rank(&[lv([1, 0]), lv([0, 1]), lv([-1, -1])]).unwrap(), 2);
        assert_eq!(rank(&[]).unwrap(), 0);
    }

    #[test]
    fn rank_skipping_columns() {
        // pivots in columns 0 and 2 only
        let rows = [lv([1, 2, 3]), lv([2, 4, 7]), lv([3, 6, 10])];
        assert_eq!(rank(&rows).unwrap(), 2);
    }

    #[test]
    fn rank_rejects_mismatched_lengths() {
        assert!(matches!(
            rank(&[lv([1, 0]), lv([1, 0, 0])]),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        ));
    }

    #[test]
    fn determinants() {
        assert_eq!(
            determinant(&[lv([1, 0]), lv([1, 2])]).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            determinant(&[lv([0, 1]), lv([1, 0])]).unwrap(),
            BigInt::from(-1)
        );
        assert_eq!(
            determinant(&[lv([0, 1]), lv([-1, -1])]).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            determinant(&[lv([2, 0, 1]), lv([1, 3, 2]), lv([1, 1, 2])]).unwrap(),
            BigInt::from(6)
        );
        assert_eq!(
            determinant(&[lv([1, 2]), lv([2, 4])]).unwrap(),
            BigInt::from(0)
        );
    }

    #[test]
    fn inverse_of_cone_matrix() {
        // rows (0,1), (-1,-1)
        let inv = inverse(&[lv([0, 1]), lv([-1, -1])]).unwrap().unwrap();
        let z = |v: i64| BigRational::from_integer(v.into());
        assert_eq!(inv, vec![vec![z(-1), z(-1)], vec![z(1), z(0)]]);
        assert!(inverse(&[lv([1, 1]), lv([2, 2])]).unwrap().is_none());
    }

    #[test]
    fn extend_examples() {
        assert_eq!(extend_to_basis(2, &[lv([1, 0])]).unwrap(), vec![lv([0, 1])]);
        assert_eq!(
            extend_to_basis(2, &[]).unwrap(),
            vec![lv([1, 0]), lv([0, 1])]
        );
        assert_eq!(extend_to_basis(2, &[lv([1, 1])]).unwrap(), vec![lv([1, 0])]);
        assert_eq!(
            extend_to_basis(2, &[lv([1, 1]), lv([2, 2])]),
            Err(Error::Dependent)
        );
    }
}

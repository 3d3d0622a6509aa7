//! Dense exact simplex for `max c·y  s.t.  A y ≤ b, y ≥ 0` with `b ≥ 0`.
//!
//! The origin is feasible, so the slack basis starts the method and no
//! phase one is needed. Bland's rule guarantees termination.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(BigRational),
    Unbounded,
}

pub fn maximize(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> LpOutcome {
    let m = a.len();
    let nvars = c.len();
    assert_eq!(b.len(), m);
    assert!(
        b.iter().all(|v| !v.is_negative()),
        "origin must be feasible"
    );
    let width = nvars + m + 1;
    let rhs = width - 1;

    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        assert_eq!(row.len(), nvars);
        let mut t = vec![BigRational::zero(); width];
        t[..nvars].clone_from_slice(row);
        t[nvars + i] = num_traits::One::one();
        t[rhs] = b[i].clone();
        tab.push(t);
    }
    // reduced costs; obj[rhs] holds -z
    let mut obj = vec![BigRational::zero(); width];
    obj[..nvars].clone_from_slice(c);
    let mut basis: Vec<usize> = (nvars..nvars + m).collect();

    loop {
        let Some(enter) = (0..rhs).find(|&j| obj[j].is_positive()) else {
            return LpOutcome::Optimal(-obj[rhs].clone());
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            let ratio = &tab[i][rhs] / &tab[i][enter];
            let better = match &leave {
                None => true,
                Some((li, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((row, _)) = leave else {
            return LpOutcome::Unbounded;
        };

        let piv = tab[row][enter].clone();
        for x in tab[row].iter_mut() {
            *x /= &piv;
        }
        let pivot_row = tab[row].clone();
        for (i, t) in tab.iter_mut().enumerate() {
            if i == row || t[enter].is_zero() {
                continue;
            }
            let f = t[enter].clone();
            for (x, p) in t.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        let f = obj[enter].clone();
        for (x, p) in obj.iter_mut().zip(&pivot_row) {
            *x -= &f * p;
        }
        basis[row] = enter;
    }
}

#![allow(dead_code)]

use rand::Rng;
use toric_pvf::exact_linalg::{inverse, LatticeVector};
use toric_pvf::fan::Fan;
use toric_pvf::generators::{hirzebruch, product_projective, projective_space};

/// The fixed family of test fans, with labels.
pub fn test_fans() -> Vec<(String, Fan)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push((format!("P{n}"), projective_space(n).unwrap()));
    }
    for a in 0..=3 {
        out.push((format!("F{a}"), hirzebruch(a).unwrap()));
    }
    out.push(("P1xP1".into(), product_projective(&[1, 1]).unwrap()));
    out.push(("P2xP1".into(), product_projective(&[2, 1]).unwrap()));
    out.push(("P1xP1xP1".into(), product_projective(&[1, 1, 1]).unwrap()));
    out
}

/// A random element of GL(n, Z) as rows: a signed permutation followed by
/// a few elementary row operations with small multipliers.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, ops: usize) -> Vec<LatticeVector> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut rows: Vec<Vec<i64>> = perm
        .iter()
        .map(|&p| {
            let mut r = vec![0; n];
            r[p] = if rng.gen_bool(0.5) { 1 } else { -1 };
            r
        })
        .collect();
    if n > 1 {
        for _ in 0..ops {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let c = [-2, -1, 1, 2][rng.gen_range(0..4)];
            let src = rows[j].clone();
            for (a, b) in rows[i].iter_mut().zip(src) {
                *a += c * b;
            }
        }
    }
    rows.into_iter().map(LatticeVector::new).collect()
}

/// `U^{-T}` for unimodular `U`: the action on `M` that preserves pairings
/// with `N` transformed by `U`.
pub fn inverse_transpose(u: &[LatticeVector]) -> Vec<LatticeVector> {
    let n = u.len();
    let inv = inverse(u).unwrap().expect("unimodular");
    (0..n)
        .map(|i| {
            LatticeVector::new(
                (0..n)
                    .map(|j| {
                        let v = &inv[j][i];
                        assert!(v.is_integer());
                        num_traits::ToPrimitive::to_i64(&v.to_integer()).unwrap()
                    })
                    .collect(),
            )
        })
        .collect()
}

pub fn apply(rows: &[LatticeVector], v: &LatticeVector) -> LatticeVector {
    LatticeVector::new(rows.iter().map(|r| r.dot(v)).collect())
}

/// `C(n, k)` by Pascal's rule, kept separate from the library's binomial.
pub fn pascal(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![1usize; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[k]
}

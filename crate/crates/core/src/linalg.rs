//! Dense exact linear algebra over ℚ(i): row reduction, nullspaces, solves.

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

pub type Matrix = Vec<Vec<GaussianRational>>;

/// Reduced row echelon form in place; returns the pivot columns.
///
/// Rows are eliminated only where the pivot column entry is nonzero, which
/// keeps the sparse Gram and operator matrices used here cheap.
pub fn rref(a: &mut Matrix, cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip().expect("nonzero pivot");
        if !inv.is_one() {
            for x in a[r].iter_mut().skip(c) {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = a[r].clone();
        let nz: Vec<usize> = (c..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                let d = &f * &pivot_row[j];
                row[j] -= &d;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : A x = 0}`, one vector per free column.
pub fn nullspace(a: &Matrix, cols: usize) -> Vec<Vec<GaussianRational>> {
    let mut m = a.clone();
    let pivots = rref(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![GaussianRational::zero(); cols];
            v[f] = GaussianRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[row][f];
            }
            v
        })
        .collect()
}

pub fn rank(a: &Matrix, cols: usize) -> usize {
    let mut m = a.clone();
    rref(&mut m, cols).len()
}

/// Solves `A X = B` for square invertible `A` (n×n) and `B` (n×k).
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let n = a.len();
    if b.len() != n {
        return Err(Error::DimensionMismatch(n, b.len()));
    }
    let k = b.first().map_or(0, |r| r.len());
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| {
            let mut row = ra.clone();
            row.extend(rb.iter().cloned());
            row
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() != n {
        return Err(Error::Singular(format!("rank {} < {}", pivots.len(), n)));
    }
    Ok(aug.into_iter().map(|row| row[n..n + k].to_vec()).collect())
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { GaussianRational::one() } else { GaussianRational::zero() }).collect())
        .collect()
}

pub fn inverse(a: &Matrix) -> Result<Matrix> {
    solve(a, &identity(a.len()))
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![GaussianRational::zero(); k]; n];
    for i in 0..n {
        for (l, bl) in b.iter().enumerate() {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..k {
                if !bl[j].is_zero() {
                    let p = &a[i][l] * &bl[j];
                    out[i][j] += &p;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn inverse_roundtrip() {
        let a = vec![vec![g(2), g(1), g(0)], vec![g(1), g(3), g(1)], vec![g(0), g(1), GaussianRational::i()]];
        let inv = inverse(&a).unwrap();
        assert_eq!(matmul(&a, &inv), identity(3));
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = vec![vec![g(1), g(2), g(3)], vec![g(2), g(4), g(6)]];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let s = &(&v[0] + &(&g(2) * &v[1])) + &(&g(3) * &v[2]);
            assert!(s.is_zero());
        }
        assert!(inverse(&vec![vec![g(1), g(2)], vec![g(2), g(4)]]).is_err());
    }
}
